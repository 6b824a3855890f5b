//! File formats: mesh input, VTK and CSV output, and the run summary.

mod mesh;
mod summary;
mod tables;
mod vtk;

use std::path::Path;

use crate::{Error, Result};

pub use mesh::{parse_ascii_mesh, parse_msh2, read_mesh, write_ascii_mesh};
pub use summary::{sha256_file, FileRecord};
pub use tables::{fracture_profile_csv, history_csv};
pub use vtk::{bulk_vtk, fracture_vtk};

/// Writes `text` to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
