//! Discretization errors of the benchmark on levels 0..top−1 against level
//! `top`, with least-squares slopes in log h.
//!
//! cargo run --release --example discretization_rates -- 3

use fracflow::analysis::{error_between, ConvergenceReport, LevelRecord, RateFit};
use fracflow::config::benchmark_config;
use fracflow::run::solve_level;
use fracflow::solver::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("FRACFLOW_LOG", "warn")).init();
    let top: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let cfg = benchmark_config().resolve(std::path::Path::new("."))?;
    let solver = SolverConfig { reference_mode: false, tolerance: 1e-9, ..cfg.solver.clone() };

    let reference = solve_level(&cfg, top, &solver)?;
    let mut records = Vec::new();
    for level in 0..top {
        let s = solve_level(&cfg, level, &solver)?;
        let errors = error_between(&s.disc, &s.state, &reference.disc, &reference.state)?;
        let (u, p, f) = (errors.displacement, errors.bulk_pressure, errors.fracture_pressure);
        println!(
            "level {level}: u {:.3e} / {:.3e}   p {:.3e} / {:.3e}   pf {:.3e} / {:.3e}   (L2 / H1)",
            u.l2, u.h1, p.l2, p.h1, f.l2, f.h1
        );
        records.push(LevelRecord {
            level,
            h_bulk: s.disc.geom().bulk.h(),
            h_fracture: s.disc.geom().fracture.as_ref().map_or(0.0, |f| f.h()),
            reference_level: top,
            errors,
            history: s.history,
        });
    }
    let report = ConvergenceReport::new(records);
    let show = |r: Option<RateFit>| r.map_or("-".into(), |r| format!("{:.2}", r.slope));
    if let Some(s) = report.slopes {
        println!("slopes  u {} / {}   p {} / {}   pf {} / {}", show(s.displacement_l2), show(s.displacement_h1),
            show(s.bulk_pressure_l2), show(s.bulk_pressure_h1), show(s.fracture_pressure_l2), show(s.fracture_pressure_h1));
    } else {
        println!("slopes need at least three levels");
    }
    Ok(())
}
