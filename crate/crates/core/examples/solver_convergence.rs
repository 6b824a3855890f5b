//! Fixed-point histories of the benchmark on several levels, each measured
//! against its own 20th iterate, and the resulting contraction factors.
//!
//! cargo run --release --example solver_convergence -- 3

use fracflow::benchmark;
use fracflow::config::benchmark_config;
use fracflow::run::{solve_level, LevelSolution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("FRACFLOW_LOG", "warn")).init();
    let top: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let cfg = benchmark_config().resolve(std::path::Path::new("."))?;
    let solver = benchmark::solver_config();

    let mut rates = Vec::new();
    for level in 0..=top {
        let LevelSolution { disc, history, elapsed_seconds, .. } = solve_level(&cfg, level, &solver)?;
        println!("level {level} (h = {:.1} m, {} triangles, {:.2} s)", disc.geom().bulk.h(), disc.geom().bulk.n_triangles(), elapsed_seconds);
        for (k, e) in history.errors.iter().enumerate().take_while(|(_, &e)| e > 1e-15) {
            println!("  k = {:2}  err = {e:.3e}", k + 1);
        }
        println!("  {} iterations to 1e-8, contraction {:.3e}", history.iterations, history.contraction);
        rates.push(history.contraction);
    }
    let hi = rates.iter().copied().fold(0.0, f64::max);
    let lo = rates.iter().copied().fold(f64::INFINITY, f64::min);
    println!("contraction spread across levels: {:.2}x", hi / lo);
    Ok(())
}
