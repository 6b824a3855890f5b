//! Quadrature checks against independent adaptive integration.

use fracflow::assembly::{fluid_blocks, Discretization, ProblemData};
use fracflow::benchmark;
use fracflow::enrichment::CrackWidthField;
use fracflow::geometry::{Point2, Side};
use fracflow::quadrature::{volume_rule, QuadOptions};

fn integrands() -> Vec<(&'static str, Box<dyn Fn(Point2) -> f64>)> {
    let r = |x: Point2| x.dist(benchmark::TIP);
    vec![
        ("1", Box::new(|_| 1.0)),
        ("x", Box::new(|x: Point2| x.x)),
        ("y", Box::new(|x: Point2| x.y)),
        ("sqrt r", Box::new(move |x| r(x).sqrt())),
        ("1/sqrt r", Box::new(move |x| 1.0 / r(x).sqrt())),
    ]
}

/// Worst relative deviation of the side-wise cut/tip rules from adaptive
/// integrals over the clipped halves of each element.
pub fn worst_cut_rule_error(level: u32) -> f64 {
    let g = benchmark::geometry(level).unwrap();
    let opts = QuadOptions::default();
    let mut worst: f64 = 0.0;
    for e in 0..g.bulk.n_triangles() {
        if g.cut.elements[e].crossings.is_empty() {
            continue;
        }
        let rule = volume_rule(&g, e, opts.cut_order, &opts);
        let tri = g.bulk.corners(e);
        for (side, sign) in [(Side::Plus, 1.0), (Side::Minus, -1.0)] {
            // fan from the tip so the singular point is a collapsed vertex
            let mut half = super::clip(&tri, |x| sign * x.y);
            if let Some(k) = half.iter().position(|v| v.dist(benchmark::TIP) < 1e-9) {
                half.rotate_left(k);
            } else if let Some(k) = (0..half.len()).find(|&k| on_segment(benchmark::TIP, half[k], half[(k + 1) % half.len()])) {
                half.insert(k + 1, benchmark::TIP);
                half.rotate_left(k + 1);
            }
            for (name, f) in integrands() {
                let q: f64 = rule.points.iter().filter(|p| p.side == side).map(|p| p.w * f(p.x)).sum();
                let scale = rule.points.iter().map(|p| p.w * f(p.x).abs()).sum::<f64>();
                let reference = super::adaptive_polygon(&*f, &half, 1e-11 * scale);
                let err = (q - reference).abs() / scale;
                assert!(err.is_finite(), "element {e} {name}");
                worst = worst.max(err);
            }
        }
    }
    worst
}

fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    (b - a).cross(p - a).abs() < 1e-9 * a.dist(b) && (p - a).dot(p - b) < 0.0
}

fn interface_matrix(levels: u32) -> fracflow::assembly::CsrMatrix {
    let opts = QuadOptions { tip_levels: levels, ..QuadOptions::default() };
    let disc = Discretization::new(benchmark::geometry(0).unwrap(), benchmark::RADIUS, opts);
    let b = CrackWidthField::SqrtProfile { c: 1e-2 };
    let w = b.at_points(&disc.space, &disc.interface);
    let blocks = fluid_blocks(&disc, &benchmark::material(), &ProblemData::default(), &w, [0.0; 2]).unwrap();
    let mut t = fracflow::assembly::Triplets::new(blocks.bulk.n_rows, blocks.bulk.n_cols);
    blocks.interface.assemble_into(&mut t);
    fracflow::assembly::CsrMatrix::from_triplets(&t)
}

/// Largest entry-wise change of the interface block under one extra level
/// of tip grading, relative to each entry.
pub fn tip_grading_sensitivity() -> f64 {
    let a = interface_matrix(3);
    let b = interface_matrix(4);
    let floor = 1e-12 * a.max_abs();
    let mut worst: f64 = 0.0;
    for i in 0..a.n_rows {
        for (j, v) in a.row(i) {
            assert!(v.is_finite());
            if v.abs() > floor {
                worst = worst.max((v - b.get(i, j)).abs() / v.abs());
            }
        }
    }
    worst
}
