//! Stationary flow and deformation in a fractured poroelastic medium (2D).
//!
//! Bulk Darcy flow, dimension-reduced fracture Darcy flow and linear
//! poroelasticity are coupled through the fracture aperture `b = [[u]]·ν`.
//! The bulk fields are discretized with XFEM (Heaviside and crack-tip
//! enrichment) on a triangle grid that does not resolve the fracture; the
//! fracture pressure lives on an independent 1D polyline grid. The nonlinear
//! problem is solved by a damped substructuring fixed-point iteration.
//!
//! Module map:
//!
//! * [`geometry`] meshes, fracture polyline, tip frame, cut topology, refinement
//! * [`enrichment`] node sets, enriched bases, DOF maps, jumps and crack width
//! * [`quadrature`] volume rules on uncut/cut/tip elements and interface cells
//! * [`assembly`] bilinear forms, loads and Dirichlet elimination
//! * [`solver`] sparse direct solves and the fixed-point iteration
//! * [`analysis`] norms, reference errors, rate fitting, von Mises stress
//! * [`config`], [`io`], [`run`] configuration, file formats and orchestration

pub mod analysis;
pub mod assembly;
pub mod benchmark;
pub mod config;
pub mod enrichment;
pub mod error;
pub mod geometry;
pub mod io;
pub mod quadrature;
pub mod run;
pub mod solver;
pub mod units;

pub use error::{Error, Result};
pub use geometry::Point2;
