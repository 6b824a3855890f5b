//! Loads the shipped benchmark configuration, validates it and solves level
//! 0, listing the written files with their digests.
//!
//! cargo run --release --example config_run

use std::path::Path;

use fracflow::config::RunConfig;
use fracflow::run::{run_check, run_solve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/benchmark.toml");
    let mut cfg = RunConfig::load(&path)?;
    cfg.output.directory = std::env::temp_dir().join("fracflow_config_run");
    let check = run_check(&cfg)?;
    println!("check: {} triangles, tags {:?}", check.dofs.triangles, check.boundary_tags);
    let summary = run_solve(&cfg, 0)?;
    println!("solve: {} iterations, contraction {:.3e}", summary.iterations, summary.contraction);
    for f in &summary.files {
        println!("  {}  {}", f.sha256, f.path.display());
    }
    Ok(())
}
