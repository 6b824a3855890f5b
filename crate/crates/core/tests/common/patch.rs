//! Patch tests: data for which the discrete solution is exact.

use fracflow::assembly::{assemble_coupled_fluid, assemble_elasticity, Datum, Discretization, ProblemData, VectorBc};
use fracflow::enrichment::CrackWidthField;
use fracflow::geometry::{Geometry, Point2, Side};
use fracflow::solver::solve_sparse;
use rand::{Rng, SeedableRng};

/// Random points inside every element, with the side they fall on.
pub fn samples(disc: &Discretization, per_element: usize, seed: u64) -> Vec<(usize, Point2, Side)> {
    let g = disc.geom();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for e in 0..g.bulk.n_triangles() {
        let c = g.bulk.corners(e);
        for _ in 0..per_element {
            let (mut a, mut b) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            if a + b > 1.0 {
                (a, b) = (1.0 - a, 1.0 - b);
            }
            let x = c[0] + (c[1] - c[0]) * a + (c[2] - c[0]) * b;
            match g.classify_side(x) {
                Side::OnExtension => {}
                s => out.push((e, x, s)),
            }
        }
    }
    out
}

/// Worst deviation from a constant pressure `p` prescribed on every
/// boundary of a fully cut square, over both fields.
pub fn fluid_patch_error() -> f64 {
    let p = 3.7;
    let disc = super::disc(super::fully_cut_geometry(6, 7), 100.0);
    let data = super::all_dirichlet(Datum::constant(p), [Datum::ZERO; 2], &["west", "east"]);
    let sys = assemble_coupled_fluid(&disc, &super::unit_material(), &data, &CrackWidthField::Constant(0.2)).unwrap();
    let x = solve_sparse(&sys).unwrap();
    let np = disc.space.n_pressure_dofs();
    let mut worst: f64 = 0.0;
    for (e, pt, side) in samples(&disc, 4, 1) {
        let (v, g) = disc.space.eval_pressure(&x[..np], e, pt, Some(side)).unwrap();
        worst = worst.max((v - p).abs()).max(g.norm());
    }
    for &pf in &x[np..] {
        worst = worst.max((pf - p).abs());
    }
    worst
}

/// σ = −P·I with p^Σ = P on the crack faces: u = −P/(2(λ+μ))·x.
pub fn elastic_patch(geom: Geometry, neumann: &[&str]) -> f64 {
    let p = 1.3;
    let params = super::unit_material();
    let k = -p / (2.0 * (params.lambda + params.mu));
    let disc = super::disc(geom, 100.0);
    let mut data = ProblemData::default();
    for tag in ["bottom", "right", "top", "left"] {
        let bc = if neumann.contains(&tag) {
            let n = match tag {
                "bottom" => [0.0, -1.0],
                "right" => [1.0, 0.0],
                "top" => [0.0, 1.0],
                _ => [-1.0, 0.0],
            };
            VectorBc::Neumann([Datum::constant(-p * n[0]), Datum::constant(-p * n[1])])
        } else {
            VectorBc::Dirichlet([Datum::affine(0.0, k, 0.0), Datum::affine(0.0, 0.0, k)])
        };
        data.elastic.insert(tag.into(), bc);
    }
    let np = disc.space.n_pressure_dofs();
    let pf = vec![p; disc.space.n_fracture_dofs()];
    let sys = assemble_elasticity(&disc, &params, &data, &vec![0.0; np], &pf).unwrap();
    let u = solve_sparse(&sys).unwrap();
    let mut worst: f64 = 0.0;
    for (e, x, side) in samples(&disc, 4, 2) {
        let (v, _) = disc.space.eval_displacement(&u, e, x, Some(side)).unwrap();
        worst = worst.max((v[0] - k * x.x).abs()).max((v[1] - k * x.y).abs());
    }
    worst / (k.abs() * 1000.0)
}
