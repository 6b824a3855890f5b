//! Bilinear forms, coupling terms, loads and Dirichlet elimination.

mod discretization;
mod elasticity;
mod fluid;
mod params;
pub(crate) mod sparse;

pub use discretization::Discretization;
pub use elasticity::{assemble_elasticity, elasticity_constraints, elasticity_matrix, elasticity_rhs};
pub use fluid::{assemble_coupled_fluid, end_widths, fluid_blocks, fluid_constraints, FluidBlocks, EPS_B};
pub use params::{Datum, MaterialParams, ProblemData, ScalarBc, VectorBc};
pub use sparse::{
    apply_dirichlet, apply_dirichlet_exact, Constraints, CsrMatrix, ExactOperator, LowRank, RankOne, SparseSystem, Triplets,
};
