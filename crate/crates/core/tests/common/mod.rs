//! Shared builders and reference integrators for the integration tests.
//! Nothing here reuses the library's quadrature.

#![allow(dead_code)]

pub mod patch;
pub mod quad;

use std::collections::BTreeMap;

use fracflow::assembly::{Datum, Discretization, MaterialParams, ProblemData, ScalarBc, VectorBc};
use fracflow::enrichment::EnrichedSpace;
use fracflow::geometry::{BulkMesh, FractureMesh, Geometry, Point2, Side};
use fracflow::quadrature::QuadOptions;
use rand::{Rng, SeedableRng};

/// Gauss–Legendre nodes and weights on [0, 1] by Newton iteration on P_n.
pub fn gauss01(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 + x), 0.5 * w));
    }
    out
}

/// Collapsed (Duffy) product rule on a triangle, collapsed at `t[0]` so a
/// point singularity there is weakened by the Jacobian.
fn triangle_gauss(f: &dyn Fn(Point2) -> f64, t: [Point2; 3], g: &[(f64, f64)]) -> f64 {
    let area2 = (t[1] - t[0]).cross(t[2] - t[0]).abs();
    let mut s = 0.0;
    for &(u, wu) in g {
        for &(v, wv) in g {
            let x = t[0] + ((t[1] - t[0]) * (1.0 - v) + (t[2] - t[0]) * v) * u;
            s += wu * wv * u * f(x);
        }
    }
    s * area2
}

/// Adaptive integration by recursive 4-way subdivision until the parent and
/// children estimates agree to `tol` (absolute). Children get half the
/// tolerance, which keeps a vertex singularity from refining without end.
pub fn adaptive_triangle(f: &dyn Fn(Point2) -> f64, t: [Point2; 3], tol: f64) -> f64 {
    let g = gauss01(8);
    fn rec(f: &dyn Fn(Point2) -> f64, t: [Point2; 3], whole: f64, tol: f64, depth: u32, g: &[(f64, f64)]) -> f64 {
        let m = [t[0].midpoint(t[1]), t[1].midpoint(t[2]), t[2].midpoint(t[0])];
        let kids = [[t[0], m[0], m[2]], [m[0], t[1], m[1]], [m[2], m[1], t[2]], [m[0], m[1], m[2]]];
        let parts: Vec<f64> = kids.iter().map(|k| triangle_gauss(f, *k, g)).collect();
        let sum: f64 = parts.iter().sum();
        if (sum - whole).abs() <= tol || depth >= 40 {
            return sum;
        }
        kids.iter().zip(&parts).map(|(k, &p)| rec(f, *k, p, tol / 2.0, depth + 1, g)).sum()
    }
    rec(f, t, triangle_gauss(f, t, &g), tol, 0, &g)
}

/// Adaptive integral over a convex polygon (fanned from its first vertex).
pub fn adaptive_polygon(f: &dyn Fn(Point2) -> f64, poly: &[Point2], tol: f64) -> f64 {
    (1..poly.len().saturating_sub(1)).map(|k| adaptive_triangle(f, [poly[0], poly[k], poly[k + 1]], tol)).sum()
}

/// Part of a convex polygon where `level(x) ≥ 0`, for affine `level`.
pub fn clip(poly: &[Point2], level: impl Fn(Point2) -> f64) -> Vec<Point2> {
    let n = poly.len();
    let mut out = Vec::new();
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        let (la, lb) = (level(a), level(b));
        if la >= 0.0 {
            out.push(a);
        }
        if (la >= 0.0) != (lb >= 0.0) {
            out.push(a.lerp(b, la / (la - lb)));
        }
    }
    out
}

/// Gauss rule on a segment.
pub fn segment_gauss(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    gauss01(n).iter().map(|&(x, w)| w * (b - a) * f(a + (b - a) * x)).sum()
}

/// 1000 m × 1000 m square on [0, 1000] × [−500, 500], `n × n` cells.
pub fn square(n: usize) -> BulkMesh {
    BulkMesh::rectangle(0.0, 1000.0, -500.0, 500.0, n, n).unwrap()
}

/// Inclined fracture crossing the whole square from `west` to `east`.
pub fn through_fracture(segments: usize) -> FractureMesh {
    FractureMesh::straight(Point2::new(0.0, 37.0), Point2::new(1000.0, -61.0), segments, false, ["west".into(), "east".into()])
        .unwrap()
}

pub fn fully_cut_geometry(n: usize, segments: usize) -> Geometry {
    Geometry::new(square(n), Some(through_fracture(segments))).unwrap()
}

pub fn disc(geom: Geometry, radius: f64) -> Discretization {
    Discretization::new(geom, radius, QuadOptions::default())
}

/// Benchmark-like material with all coefficients of order one in SI, so
/// tolerances stay meaningful.
pub fn unit_material() -> MaterialParams {
    MaterialParams::isotropic(1.0, 2.0, 3.0, 1.0, 10.0, 0.25)
}

/// Constant pressure `p` on every boundary and both fracture ends, clamped
/// displacement `u_d` everywhere.
pub fn all_dirichlet(p: Datum, u_d: [Datum; 2], fracture: &[&str]) -> ProblemData {
    let mut data = ProblemData::default();
    for tag in ["bottom", "right", "top", "left"] {
        data.elastic.insert(tag.into(), VectorBc::Dirichlet(u_d));
        data.bulk_flow.insert(tag.into(), ScalarBc::Dirichlet(p));
    }
    data.fracture_flow = fracture.iter().map(|t| (t.to_string(), ScalarBc::Dirichlet(p))).collect::<BTreeMap<_, _>>();
    data
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Largest deviation between the closed-form jump/average of random
/// pressure and displacement fields and two-sided traces at x ± δν,
/// Richardson-extrapolated from δ and δ/2.
pub fn jump_oracle_error(space: &EnrichedSpace, vectors: usize, points: usize, delta: f64, seed: u64) -> f64 {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let frac = space.geom.fracture.as_ref().unwrap();
    let len = frac.total_length();
    let sample: Vec<f64> = (0..points).map(|_| rng.gen_range(0.001..0.999) * len).collect();
    let np = space.n_pressure_dofs();
    let nu = space.n_displacement_dofs();
    let mut worst: f64 = 0.0;
    for _ in 0..vectors {
        let p: Vec<f64> = (0..np).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let u: Vec<f64> = (0..nu).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for &s in &sample {
            let (e, x, seg, _) = space.locate_on_fracture(s).unwrap();
            let n = frac.normal(seg);
            // one-sided traces, each evaluated in the element that holds the offset point
            let trace = |d: f64| -> (f64, [f64; 2], f64, [f64; 2]) {
                let xp = x + n * d;
                let xm = x + n * (-d);
                let ep = space.geom.bulk.locate(xp).unwrap_or(e);
                let em = space.geom.bulk.locate(xm).unwrap_or(e);
                let (pp, _) = space.eval_pressure(&p, ep, xp, Some(Side::Plus)).unwrap();
                let (pm, _) = space.eval_pressure(&p, em, xm, Some(Side::Minus)).unwrap();
                let (up, _) = space.eval_displacement(&u, ep, xp, Some(Side::Plus)).unwrap();
                let (um, _) = space.eval_displacement(&u, em, xm, Some(Side::Minus)).unwrap();
                (pp - pm, [up[0] - um[0], up[1] - um[1]], 0.5 * (pp + pm), [0.5 * (up[0] + um[0]), 0.5 * (up[1] + um[1])])
            };
            let (j1, uj1, a1, ua1) = trace(delta);
            let (j2, uj2, a2, ua2) = trace(0.5 * delta);
            let rich = |a: f64, b: f64| 2.0 * b - a;
            let (jp, ap) = space.pressure_jump_average(&p, s).unwrap();
            let (ju, au) = space.displacement_jump_average(&u, s).unwrap();
            worst = worst.max((rich(j1, j2) - jp).abs()).max((rich(a1, a2) - ap).abs());
            for c in 0..2 {
                worst = worst.max((rich(uj1[c], uj2[c]) - ju[c]).abs()).max((rich(ua1[c], ua2[c]) - au[c]).abs());
            }
        }
    }
    worst
}
