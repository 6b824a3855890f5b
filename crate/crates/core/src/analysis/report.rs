use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::errors::{FieldError, LevelErrors};
use super::rates::{fit_rates, RateFit};
use crate::solver::IterationHistory;
use crate::{Error, Result};

/// One refinement level of a convergence study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: u32,
    pub h_bulk: f64,
    pub h_fracture: f64,
    pub reference_level: u32,
    pub errors: LevelErrors,
    pub history: IterationHistory,
}

/// Fitted slopes per field and norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slopes {
    pub displacement_l2: Option<RateFit>,
    pub displacement_h1: Option<RateFit>,
    pub bulk_pressure_l2: Option<RateFit>,
    pub bulk_pressure_h1: Option<RateFit>,
    pub fracture_pressure_l2: Option<RateFit>,
    pub fracture_pressure_h1: Option<RateFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub levels: Vec<LevelRecord>,
    pub slopes: Option<Slopes>,
    pub norm_note: String,
}

const FIELDS: [&str; 3] = ["displacement", "bulk_pressure", "fracture_pressure"];

fn field(e: &LevelErrors, i: usize) -> FieldError {
    [e.displacement, e.bulk_pressure, e.fracture_pressure][i]
}

impl ConvergenceReport {
    pub fn new(levels: Vec<LevelRecord>) -> Self {
        let slopes = (levels.len() >= 3).then(|| {
            let hs: Vec<f64> = levels.iter().map(|l| l.h_bulk).collect();
            let fit = |i: usize, h1: bool| {
                let e: Vec<f64> = levels.iter().map(|l| field(&l.errors, i)).map(|f| if h1 { f.h1 } else { f.l2 }).collect();
                fit_rates(&hs, &e).ok()
            };
            Slopes {
                displacement_l2: fit(0, false),
                displacement_h1: fit(0, true),
                bulk_pressure_l2: fit(1, false),
                bulk_pressure_h1: fit(1, true),
                fracture_pressure_l2: fit(2, false),
                fracture_pressure_h1: fit(2, true),
            }
        });
        ConvergenceReport {
            levels,
            slopes,
            norm_note: "relative to the reference-level norm of each field; h1 = broken H1 seminorm".into(),
        }
    }

    /// One row per level, field and norm.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str("# columns: level [-], h_bulk [m], h_fracture [m], field, norm (l2|h1), relative_error [-], absolute_error [field unit*m or field unit], reference_level [-]\n");
        s.push_str("level,h_bulk,h_fracture,field,norm,relative_error,absolute_error,reference_level\n");
        for l in &self.levels {
            for (i, name) in FIELDS.iter().enumerate() {
                let f = field(&l.errors, i);
                for (norm, rel, abs) in [("l2", f.l2, f.l2_abs), ("h1", f.h1, f.h1_abs)] {
                    let _ = writeln!(
                        s,
                        "{},{:e},{:e},{},{},{:e},{:e},{}",
                        l.level, l.h_bulk, l.h_fracture, name, norm, rel, abs, l.reference_level
                    );
                }
            }
        }
        s
    }

    /// Parses the CSV written by [`to_csv`](Self::to_csv) back into rows
    /// `(level, h_bulk, h_fracture, field, norm, relative, absolute, reference)`.
    pub fn parse_csv(text: &str) -> Result<Vec<(u32, f64, f64, String, String, f64, f64, u32)>> {
        let bad = |line: &str| Error::Analysis(format!("malformed error row `{line}`"));
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let c: Vec<&str> = line.split(',').collect();
            if c.len() != 8 {
                return Err(bad(line));
            }
            let num = |k: usize| c[k].parse::<f64>().map_err(|_| bad(line));
            let int = |k: usize| c[k].parse::<u32>().map_err(|_| bad(line));
            rows.push((int(0)?, num(1)?, num(2)?, c[3].to_string(), c[4].to_string(), num(5)?, num(6)?, int(7)?));
        }
        Ok(rows)
    }
}
