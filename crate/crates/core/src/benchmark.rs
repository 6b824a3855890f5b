//! The reference setup: a 1 km × 1 km domain with a fracture from the left
//! boundary to the centre, fluid injected at the fracture mouth.

use std::collections::BTreeMap;

use crate::assembly::{Datum, MaterialParams, ProblemData, ScalarBc, VectorBc};
use crate::enrichment::CrackWidthField;
use crate::geometry::{BulkMesh, FractureMesh, Geometry, Point2};
use crate::solver::SolverConfig;
use crate::units::DARCY;
use crate::Result;

/// Enrichment radius R (m).
pub const RADIUS: f64 = 125.0;
/// Fracture mouth pressure (Pa).
pub const INLET_PRESSURE: f64 = 0.5e6;
pub const TIP: Point2 = Point2::new(500.0, 0.0);

/// Row heights of the coarse grid. The band holding the fracture is split
/// 1:2 by y = 0, so no refined vertex ever lands on the fracture line.
const ROWS: [f64; 5] = [-500.0, -875.0 / 3.0, -250.0 / 3.0, 500.0 / 3.0, 500.0];

/// Horizontal offsets of the interior vertices of rows 1–3 of the seed grid,
/// chosen so the tip keeps at least 1/9 of a local mesh size from every edge
/// on the seed grid and its first five refinements.
const JITTER: [[f64; 3]; 3] = [[13.0, 16.0, 15.0], [9.0, -36.0, 39.0], [29.0, 3.0, -40.0]];

/// Level-0 grid: the 32-triangle seed grid refined once (128 triangles), so
/// the coarsest mesh size is comparable to the enrichment radius.
pub fn coarse_mesh() -> BulkMesh {
    let mut m = seed_mesh().refine_uniform();
    m.level = 0;
    m.parents.clear();
    m
}

/// 32-triangle seed grid of 4 × 4 jittered cells.
pub fn seed_mesh() -> BulkMesh {
    let base = [0.0, 250.0, 500.0, 750.0, 1000.0];
    let xs: Vec<Vec<f64>> = (0..5)
        .map(|j| {
            let mut row = base.to_vec();
            if (1..4).contains(&j) {
                for i in 0..3 {
                    row[i + 1] += JITTER[j - 1][i];
                }
            }
            row
        })
        .collect();
    BulkMesh::from_rows(&xs, &ROWS).expect("benchmark mesh is valid")
}

/// Fracture Σ = [0, 500] × {0} with eight segments; `inlet` at x = 0, `tip` at the centre.
pub fn fracture() -> FractureMesh {
    FractureMesh::straight(Point2::new(0.0, 0.0), TIP, 8, true, ["inlet".into(), "tip".into()])
        .expect("benchmark fracture is valid")
}

/// Geometry refined `level` times.
pub fn geometry(level: u32) -> Result<Geometry> {
    let mut g = Geometry::new(coarse_mesh(), Some(fracture()))?;
    for _ in 0..level {
        g = g.refine_uniform()?;
    }
    Ok(g)
}

/// K = 0.1 mD, K^ν = K^τ = 100 D, μ_f = 1 mPa·s, E = 1 GPa, ν = 0.3, ξ = 3/4.
pub fn material() -> MaterialParams {
    MaterialParams::isotropic(0.1e-3 * DARCY, 100.0 * DARCY, 100.0 * DARCY, 1e-3, 1e9, 0.3)
}

/// Bottom clamped and drained; fracture mouth at the inlet pressure; all
/// other boundaries (including the tip) traction- and flux-free.
pub fn problem_data() -> ProblemData {
    let mut elastic = BTreeMap::new();
    let mut bulk_flow = BTreeMap::new();
    for tag in ["bottom", "right", "top", "left"] {
        let (e, f) = if tag == "bottom" {
            (VectorBc::Dirichlet([Datum::ZERO; 2]), ScalarBc::Dirichlet(Datum::ZERO))
        } else {
            (VectorBc::Neumann([Datum::ZERO; 2]), ScalarBc::Neumann(Datum::ZERO))
        };
        elastic.insert(tag.to_string(), e);
        bulk_flow.insert(tag.to_string(), f);
    }
    let mut fracture_flow = BTreeMap::new();
    fracture_flow.insert("inlet".to_string(), ScalarBc::Dirichlet(Datum::constant(INLET_PRESSURE)));
    fracture_flow.insert("tip".to_string(), ScalarBc::Neumann(Datum::ZERO));
    ProblemData { elastic, bulk_flow, fracture_flow, ..ProblemData::default() }
}

/// β = 1, b₀ = 1e−2·√r (r in meters), tolerance 1e−8.
pub fn solver_config() -> SolverConfig {
    SolverConfig {
        beta: 1.0,
        initial_width: CrackWidthField::SqrtProfile { c: 1e-2 },
        tolerance: 1e-8,
        max_iterations: 50,
        reference_mode: true,
        reference_iterations: 20,
    }
}
