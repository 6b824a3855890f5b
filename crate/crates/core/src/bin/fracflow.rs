use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracflow::config::{Resolved, RunConfig};
use fracflow::run;

/// Coupled fracture flow and poroelasticity with XFEM.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one refinement level and write fields and history.
    Solve {
        config: PathBuf,
        /// Refinement level (default: the first study level).
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fixed-point histories against a reference iterate on every study level.
    SolverStudy {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Discretization errors against the reference level and fitted rates.
    ConvergenceStudy {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Validate a configuration without solving.
    Check { config: PathBuf },
}

fn load(path: &Path, output: Option<PathBuf>) -> fracflow::Result<Resolved> {
    let mut cfg = RunConfig::load(path)?;
    if let Some(dir) = output {
        cfg.output.directory = dir;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> fracflow::Result<()> {
    match cli.command {
        Command::Solve { config, level, output } => {
            let cfg = load(&config, output)?;
            let level = level.unwrap_or(cfg.levels[0]);
            let s = run::run_solve(&cfg, level)?;
            println!(
                "level {level}: converged in {} iterations (contraction {:.3e}); output in {}",
                s.iterations,
                s.contraction,
                cfg.output.directory.display()
            );
        }
        Command::SolverStudy { config, output } => {
            let cfg = load(&config, output)?;
            let s = run::run_solver_study(&cfg)?;
            for l in &s.levels {
                println!(
                    "level {}: h = {:.3e} m, {} iterations to {:e}, contraction {:.3e}",
                    l.level, l.h, l.history.iterations, s.tolerance, l.history.contraction
                );
            }
            println!("contraction spread: {:.2}", s.contraction_spread);
        }
        Command::ConvergenceStudy { config, output } => {
            let cfg = load(&config, output)?;
            let s = run::run_convergence_study(&cfg)?;
            if let Some(sl) = s.slopes {
                let fmt = |r: Option<fracflow::analysis::RateFit>| r.map_or("n/a".to_string(), |r| format!("{:.2}", r.slope));
                println!("displacement      L2 {}  H1 {}", fmt(sl.displacement_l2), fmt(sl.displacement_h1));
                println!("bulk pressure     L2 {}  H1 {}", fmt(sl.bulk_pressure_l2), fmt(sl.bulk_pressure_h1));
                println!("fracture pressure L2 {}  H1 {}", fmt(sl.fracture_pressure_l2), fmt(sl.fracture_pressure_h1));
            }
            println!("output in {}", cfg.output.directory.display());
        }
        Command::Check { config } => {
            let cfg = load(&config, None)?;
            let r = run::run_check(&cfg)?;
            println!(
                "ok: {} triangles, {} fracture segments, tags {:?}; level 0 has {} displacement, {} pressure, {} fracture dofs",
                r.dofs.triangles,
                r.fracture_segments,
                r.boundary_tags,
                r.dofs.displacement,
                r.dofs.bulk_pressure,
                r.dofs.fracture_pressure
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("FRACFLOW_LOG", "warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
