//! Sparse direct solves and the damped substructuring fixed-point iteration.

mod fixed_point;
mod linear;

pub use fixed_point::{contraction_factor, run_fixed_point, CoupledProblem, CoupledState, IterationHistory, SolverConfig, METRIC};
pub use linear::{solve_sparse, Factorization};
