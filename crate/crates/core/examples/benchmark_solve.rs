//! Solves the reference fracture benchmark on one refinement level and
//! prints the fixed-point history.
//!
//! cargo run --release --example benchmark_solve -- 2

use fracflow::assembly::Discretization;
use fracflow::benchmark;
use fracflow::quadrature::QuadOptions;
use fracflow::solver::{run_fixed_point, CoupledProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("FRACFLOW_LOG", "info")).init();
    let level: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let t0 = std::time::Instant::now();
    let disc = Discretization::new(benchmark::geometry(level)?, benchmark::RADIUS, QuadOptions::default());
    let params = benchmark::material();
    let data = benchmark::problem_data();
    let problem = CoupledProblem::new(&disc, &params, &data)?;
    let (state, history) = run_fixed_point(&problem, &benchmark::solver_config())?;
    println!(
        "level {level}: {} triangles, {} displacement / {} pressure / {} fracture dofs",
        disc.geom().bulk.n_triangles(),
        disc.space.n_displacement_dofs(),
        disc.space.n_pressure_dofs(),
        disc.space.n_fracture_dofs()
    );
    for (k, (e, f)) in history.errors.iter().zip(&history.field_errors).enumerate() {
        println!("k = {:2}  err = {:.3e}  (u {:.2e}, p {:.2e}, pf {:.2e})", k + 1, e, f[0], f[1], f[2]);
    }
    println!("iterations to tolerance: {} (converged: {})", history.iterations, history.converged);
    println!("contraction factor: {:.3e}", history.contraction);
    let w = history.width_range.last().copied().unwrap_or([0.0, 0.0]);
    println!("crack width range: [{:.3e}, {:.3e}] m", w[0], w[1]);
    println!("fracture pressure at mouth / mid: {:.4e} / {:.4e} Pa", state.p_frac[0], state.p_frac[state.p_frac.len() / 2]);
    println!("elapsed: {:.2?}", t0.elapsed());
    Ok(())
}
