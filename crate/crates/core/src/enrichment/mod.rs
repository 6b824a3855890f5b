//! XFEM node classification, enriched bases, DOF maps, jumps, averages and
//! the discrete crack width.

mod functions;
mod nodes;
mod space;
mod width;

pub use functions::{
    eval_pressure_tip_functions, eval_tip_functions, tip_function_polar_derivatives, tip_functions,
};
pub use nodes::{classify_nodes, NodeSets};
pub use space::{ElementBasis, EnrichedSpace, Field, ScalarSpace, TraceBasis};
pub use width::{floored, CrackWidthField, B_MIN};
