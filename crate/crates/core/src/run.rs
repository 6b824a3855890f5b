//! Orchestration behind the command-line subcommands.
//!
//! Every run writes a `summary.json` into its output directory listing the
//! files it produced together with their SHA-256 digests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use serde::{Deserialize, Serialize};

use crate::analysis::{error_between, ConvergenceReport, LevelRecord, Slopes};
use crate::assembly::Discretization;
use crate::config::{Format, Resolved};
use crate::io::{self, FileRecord};
use crate::quadrature::QuadOptions;
use crate::solver::{run_fixed_point, CoupledProblem, CoupledState, IterationHistory, SolverConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DofCounts {
    pub triangles: usize,
    pub displacement: usize,
    pub bulk_pressure: usize,
    pub fracture_pressure: usize,
}

impl DofCounts {
    pub fn of(disc: &Discretization) -> Self {
        DofCounts {
            triangles: disc.geom().bulk.n_triangles(),
            displacement: disc.space.n_displacement_dofs(),
            bulk_pressure: disc.space.n_pressure_dofs(),
            fracture_pressure: disc.space.n_fracture_dofs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub command: String,
    pub level: u32,
    pub dofs: DofCounts,
    pub converged: bool,
    pub iterations: usize,
    pub contraction: f64,
    pub metric: String,
    pub history: IterationHistory,
    pub elapsed_seconds: f64,
    pub files: Vec<FileRecord>,
}

/// One level of a solver study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverLevel {
    pub level: u32,
    pub h: f64,
    pub dofs: DofCounts,
    pub history: IterationHistory,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverStudy {
    pub command: String,
    pub tolerance: f64,
    pub levels: Vec<SolverLevel>,
    /// Largest over smallest contraction factor across levels.
    pub contraction_spread: f64,
    pub files: Vec<FileRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSummary {
    pub command: String,
    pub reference_level: u32,
    /// False when a level failed and only the levels before it were written.
    pub complete: bool,
    pub slopes: Option<Slopes>,
    pub report: ConvergenceReport,
    pub files: Vec<FileRecord>,
}

/// Solves one level and keeps the discretization for post-processing.
pub struct LevelSolution {
    pub disc: Discretization,
    pub state: CoupledState,
    pub history: IterationHistory,
    pub elapsed_seconds: f64,
}

pub fn solve_level(cfg: &Resolved, level: u32, solver: &SolverConfig) -> Result<LevelSolution> {
    let t0 = Instant::now();
    let disc = Discretization::new(cfg.geometry(level)?, cfg.radius, QuadOptions::default());
    let problem = CoupledProblem::new(&disc, &cfg.material, &cfg.data)?;
    let (state, history) = run_fixed_point(&problem, solver)?;
    drop(problem);
    let elapsed_seconds = t0.elapsed().as_secs_f64();
    info!("level {level}: {} iterations, contraction {:.3e}, {:.2} s", history.iterations, history.contraction, elapsed_seconds);
    Ok(LevelSolution { disc, state, history, elapsed_seconds })
}

fn write(dir: &Path, name: &str, text: &str, files: &mut Vec<FileRecord>) -> Result<()> {
    let p = dir.join(name);
    io::write_text(&p, text)?;
    files.push(FileRecord::of(&p)?);
    Ok(())
}

fn write_json<T: Serialize>(dir: &Path, value: &T) -> Result<PathBuf> {
    let p = dir.join("summary.json");
    io::write_text(&p, &serde_json::to_string_pretty(value).expect("summary serializes"))?;
    Ok(p)
}

/// `solve`: one level with the configured solver; writes VTK/CSV fields and
/// the summary. A run that stops without meeting the tolerance still writes
/// its files and then reports [`Error::NotConverged`].
pub fn run_solve(cfg: &Resolved, level: u32) -> Result<SolveSummary> {
    let dir = &cfg.output.directory;
    let sol = solve_level(cfg, level, &cfg.solver)?;
    let mut files = Vec::new();
    if cfg.output.formats.contains(&Format::Vtk) {
        write(dir, "bulk.vtk", &io::bulk_vtk(&sol.disc, &cfg.material, &sol.state)?, &mut files)?;
        if sol.disc.geom().fracture.is_some() {
            write(dir, "fracture.vtk", &io::fracture_vtk(&sol.disc, &sol.state)?, &mut files)?;
        }
    }
    if cfg.output.formats.contains(&Format::Csv) {
        write(dir, "history.csv", &io::history_csv(&sol.history), &mut files)?;
        if sol.disc.geom().fracture.is_some() {
            write(dir, "fracture.csv", &io::fracture_profile_csv(&sol.disc, &sol.state)?, &mut files)?;
        }
    }
    let h = &sol.history;
    let summary = SolveSummary {
        command: "solve".into(),
        level,
        dofs: DofCounts::of(&sol.disc),
        converged: h.converged,
        iterations: h.iterations,
        contraction: h.contraction,
        metric: h.metric.clone(),
        history: h.clone(),
        elapsed_seconds: sol.elapsed_seconds,
        files,
    };
    write_json(dir, &summary)?;
    if !h.converged {
        return Err(Error::NotConverged { iterations: h.iterations, last: h.errors.last().copied().unwrap_or(f64::NAN) });
    }
    Ok(summary)
}

/// `solver-study`: reference-mode iteration histories on every study level.
pub fn run_solver_study(cfg: &Resolved) -> Result<SolverStudy> {
    let dir = &cfg.output.directory;
    let solver = SolverConfig { reference_mode: true, ..cfg.solver.clone() };
    let mut levels = Vec::new();
    for &level in &cfg.levels {
        let sol = solve_level(cfg, level, &solver)?;
        levels.push(SolverLevel {
            level,
            h: sol.disc.geom().bulk.h(),
            dofs: DofCounts::of(&sol.disc),
            history: sol.history,
            elapsed_seconds: sol.elapsed_seconds,
        });
    }
    let rates: Vec<f64> = levels.iter().map(|l| l.history.contraction).filter(|&c| c > 0.0).collect();
    let spread = match (rates.iter().copied().reduce(f64::max), rates.iter().copied().reduce(f64::min)) {
        (Some(hi), Some(lo)) => hi / lo,
        _ => f64::NAN,
    };
    let mut files = Vec::new();
    let mut csv = String::new();
    let _ = writeln!(csv, "# err: {} (against iterate {})", crate::solver::METRIC, solver.reference_iterations);
    csv.push_str("# columns: level [-], h [m], iteration [-], err [-], err_u [-], err_p [-], err_pf [-]\n");
    csv.push_str("level,h,iteration,err,err_u,err_p,err_pf\n");
    for l in &levels {
        for (k, (e, f)) in l.history.errors.iter().zip(&l.history.field_errors).enumerate() {
            let _ = writeln!(csv, "{},{:e},{},{:e},{:e},{:e},{:e}", l.level, l.h, k + 1, e, f[0], f[1], f[2]);
        }
    }
    if cfg.output.formats.contains(&Format::Csv) {
        write(dir, "solver_study.csv", &csv, &mut files)?;
    }
    let study = SolverStudy { command: "solver-study".into(), tolerance: solver.tolerance, levels, contraction_spread: spread, files };
    write_json(dir, &study)?;
    Ok(study)
}

/// `convergence-study`: solves the reference level, then every study level,
/// and measures errors against the reference. Results are rewritten after
/// every level, so a failure leaves the completed levels on disk.
pub fn run_convergence_study(cfg: &Resolved) -> Result<ConvergenceSummary> {
    let dir = &cfg.output.directory;
    let reference_level = cfg
        .reference_level
        .ok_or_else(|| Error::config("study.reference_level", "required for a convergence study"))?;
    let solver = SolverConfig { reference_mode: false, tolerance: cfg.study_tolerance, ..cfg.solver.clone() };
    let checked = |sol: LevelSolution, level: u32| -> Result<LevelSolution> {
        if sol.history.converged {
            Ok(sol)
        } else {
            Err(Error::NotConverged {
                iterations: sol.history.iterations,
                last: sol.history.errors.last().copied().unwrap_or(f64::NAN),
            })
            .inspect_err(|_| log::error!("level {level} did not reach the study tolerance"))
        }
    };
    let reference = checked(solve_level(cfg, reference_level, &solver)?, reference_level)?;

    let mut records = Vec::new();
    let save = |records: &Vec<LevelRecord>, complete: bool| -> Result<ConvergenceSummary> {
        let report = ConvergenceReport::new(records.clone());
        let mut files = Vec::new();
        write(dir, "errors.csv", &report.to_csv(), &mut files)?;
        let summary =
            ConvergenceSummary { command: "convergence-study".into(), reference_level, complete, slopes: report.slopes, report, files };
        write_json(dir, &summary)?;
        Ok(summary)
    };
    for &level in &cfg.levels {
        let sol = match solve_level(cfg, level, &solver).and_then(|s| checked(s, level)) {
            Ok(s) => s,
            Err(e) => {
                save(&records, false)?;
                return Err(e);
            }
        };
        let errors = error_between(&sol.disc, &sol.state, &reference.disc, &reference.state)?;
        records.push(LevelRecord {
            level,
            h_bulk: sol.disc.geom().bulk.h(),
            h_fracture: sol.disc.geom().fracture.as_ref().map_or(0.0, |f| f.h()),
            reference_level,
            errors,
            history: sol.history,
        });
        save(&records, false)?;
    }
    save(&records, true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub dofs: DofCounts,
    pub boundary_tags: Vec<String>,
    pub fracture_segments: usize,
    pub output_directory: PathBuf,
}

/// `check`: validates the configuration and builds the level-0 space.
pub fn run_check(cfg: &Resolved) -> Result<CheckReport> {
    let disc = Discretization::new(cfg.geometry.clone(), cfg.radius, QuadOptions::default());
    Ok(CheckReport {
        dofs: DofCounts::of(&disc),
        boundary_tags: cfg.geometry.bulk.tags().into_iter().collect(),
        fracture_segments: cfg.geometry.fracture.as_ref().map_or(0, |f| f.n_segments()),
        output_directory: cfg.output.directory.clone(),
    })
}
