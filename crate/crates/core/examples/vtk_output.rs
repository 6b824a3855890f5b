//! Solves the benchmark on level 0 and writes the bulk fields (nodes doubled
//! along the fracture) and the fracture profile as legacy VTK.
//!
//! cargo run --release --example vtk_output -- target/vtk

use std::path::PathBuf;

use fracflow::config::benchmark_config;
use fracflow::io::{bulk_vtk, fracture_profile_csv, fracture_vtk, write_text};
use fracflow::run::solve_level;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/vtk".into()));
    let cfg = benchmark_config().resolve(std::path::Path::new("."))?;
    let sol = solve_level(&cfg, 0, &cfg.solver)?;
    write_text(&dir.join("bulk.vtk"), &bulk_vtk(&sol.disc, &cfg.material, &sol.state)?)?;
    write_text(&dir.join("fracture.vtk"), &fracture_vtk(&sol.disc, &sol.state)?)?;
    let profile = fracture_profile_csv(&sol.disc, &sol.state)?;
    write_text(&dir.join("fracture.csv"), &profile)?;
    println!("wrote bulk.vtk, fracture.vtk and fracture.csv to {}", dir.display());
    for line in profile.lines().skip(2).step_by(2) {
        println!("  {line}");
    }
    Ok(())
}
