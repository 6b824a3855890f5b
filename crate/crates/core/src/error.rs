use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::Point2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    Mesh(String),

    #[error("fracture geometry: {0}")]
    Geometry(String),

    #[error("point ({x}, {y}) lies on the extended fracture; a side hint is required", x = .0.x, y = .0.y)]
    OnInterface(Point2),

    #[error("evaluation point at arc length {0} is not on the fracture")]
    OffFracture(f64),

    #[error("crack closed: aperture {width:e} m at ({x}, {y})", x = .at.x, y = .at.y)]
    CrackClosed { width: f64, at: Point2 },

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: String, reason: String },

    #[error("missing boundary condition: {0}")]
    Boundary(String),

    #[error("conflicting Dirichlet values on dof {dof}: {first} vs {second}")]
    ConflictingConstraint { dof: usize, first: f64, second: f64 },

    #[error("linear solve failed: {0}")]
    Solve(String),

    #[error("fixed-point iteration diverged after {iterations} iterations (errors: {history:?})")]
    Diverged { iterations: usize, history: Vec<f64> },

    #[error("fixed-point iteration did not converge in {iterations} iterations (last error {last:e})")]
    NotConverged { iterations: usize, last: f64 },

    #[error("analysis: {0}")]
    Analysis(String),

    #[error("config key `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("parse error in {path}: {reason}")]
    Parse { path: PathBuf, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code: 2 for invalid input, 3 for solver failures, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 4,
            Error::Solve(_)
            | Error::Diverged { .. }
            | Error::NotConverged { .. }
            | Error::CrackClosed { .. }
            | Error::Analysis(_)
            | Error::OnInterface(_)
            | Error::OffFracture(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::Parameter { name: name.to_string(), reason: reason.into() }
    }

    pub(crate) fn config(key: &str, reason: impl Into<String>) -> Self {
        Error::Config { key: key.to_string(), reason: reason.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
