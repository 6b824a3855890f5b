//! Norms, errors against fine-grid references, rate fitting and stress
//! post-processing.

mod errors;
mod norms;
mod rates;
mod report;
mod stress;

pub use errors::{error_between, FieldError, LevelErrors};
pub use norms::{weighted_fracture_norms, GramMatrices, NormKind};
pub use rates::{fit_rates, RateFit};
pub use report::{ConvergenceReport, LevelRecord, Slopes};
pub use stress::{stress, von_mises, von_mises_invariant};
