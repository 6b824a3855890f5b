mod common;

use std::f64::consts::PI;

use fracflow::benchmark;
use fracflow::enrichment::classify_nodes;
use fracflow::geometry::{CutKind, FractureMesh, Geometry, Point2, Side};
use proptest::prelude::*;

#[test]
fn chords_cover_the_fracture_on_every_level() {
    for level in 0..4 {
        let g = benchmark::geometry(level).unwrap();
        let total: f64 = g.cut.chords().iter().map(|(_, c)| c.a.dist(c.b)).sum();
        assert!((total - 500.0).abs() <= 1e-12 * 500.0, "level {level}: {total}");
        // a straight fracture meets every crossed triangle in one connected
        // piece (split into chords only at fracture vertices)
        for (e, cut) in g.cut.elements.iter().enumerate() {
            if cut.kind != CutKind::Uncut {
                assert_eq!(cut.crossings.len(), 1, "level {level}, element {e}");
                for w in cut.chords.windows(2) {
                    assert!(w[0].b.dist(w[1].a) < 1e-9, "level {level}, element {e}");
                }
            }
        }
    }
}

#[test]
fn tip_element_holds_the_chord_ending_at_the_tip() {
    let g = benchmark::geometry(0).unwrap();
    let te = g.cut.tip_element.unwrap();
    assert_eq!(g.cut.elements[te].kind, CutKind::Tip);
    let ch = &g.cut.elements[te].chords[0];
    assert!(ch.ends_at_tip);
    assert!(ch.b.dist(benchmark::TIP) < 1e-9);
}

#[test]
fn no_fracture_means_nothing_is_cut() {
    let g = Geometry::new(benchmark::coarse_mesh(), None).unwrap();
    assert!(g.cut.elements.iter().all(|c| c.kind == CutKind::Uncut));
    assert!(g.cut.tip_element.is_none());
}

#[test]
fn refinement_preserves_area_and_quarters_h_twice() {
    let g0 = benchmark::geometry(0).unwrap();
    let g2 = benchmark::geometry(2).unwrap();
    let a0 = g0.bulk.total_area();
    assert!((g2.bulk.total_area() - a0).abs() <= 1e-14 * a0);
    let ratio = g0.bulk.h() / g2.bulk.h();
    assert!((ratio - 4.0).abs() < 1e-12, "{ratio}");
    assert_eq!(g2.fracture.as_ref().unwrap().n_segments(), 4 * g0.fracture.as_ref().unwrap().n_segments());
}

#[test]
fn nodes_near_the_tip_are_tip_enriched() {
    // brute-force distance scan against the node classification
    let g = benchmark::geometry(0).unwrap();
    let sets = classify_nodes(&g, benchmark::RADIUS);
    assert!(sets.tip.len() >= 3);
    for (i, v) in g.bulk.vertices.iter().enumerate() {
        if v.dist(benchmark::TIP) <= benchmark::RADIUS {
            assert!(sets.tip.contains(&i), "node {i} at {v:?}");
        }
    }
    let te = g.cut.tip_element.unwrap();
    for n in g.bulk.triangles[te] {
        assert!(sets.tip.contains(&n));
    }
}

proptest! {
    #[test]
    fn reflection_across_the_fracture_line_swaps_sides(x in 1.0f64..999.0, y in 1e-3f64..499.0) {
        let g = benchmark::geometry(0).unwrap();
        let up = g.classify_side(Point2::new(x, y));
        let down = g.classify_side(Point2::new(x, -y));
        prop_assert_eq!(up, Side::Plus);
        prop_assert_eq!(down, Side::Minus);
    }

    #[test]
    fn inclined_fracture_reflection(t in 0.05f64..0.95, d in 1e-3f64..40.0) {
        let f = FractureMesh::straight(Point2::new(0.0, -100.0), Point2::new(600.0, 200.0), 5, true, ["a".into(), "b".into()]).unwrap();
        let g = Geometry::new(benchmark::coarse_mesh(), Some(f)).unwrap();
        let base = Point2::new(0.0, -100.0).lerp(Point2::new(600.0, 200.0), t);
        let n = (Point2::new(600.0, 200.0) - Point2::new(0.0, -100.0)).perp().normalized();
        prop_assert_eq!(g.classify_side(base + n * d), Side::Plus);
        prop_assert_eq!(g.classify_side(base + n * (-d)), Side::Minus);
    }

    #[test]
    fn tip_angles(x in 0.0f64..499.0) {
        let frame = benchmark::geometry(0).unwrap().tip_frame().unwrap();
        let p = Point2::new(x, 0.0);
        let (_, up) = frame.coordinates_on_side(p, true);
        let (_, down) = frame.coordinates_on_side(p, false);
        prop_assert!((up - down - 2.0 * PI).abs() < 1e-12);
        let (_, th) = frame.coordinates(Point2::new(x, 1e-3));
        prop_assert!(th.abs() <= PI);
    }
}
