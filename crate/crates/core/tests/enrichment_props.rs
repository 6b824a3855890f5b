mod common;

use fracflow::assembly::Discretization;
use fracflow::benchmark;
use fracflow::enrichment::{CrackWidthField, ElementBasis, EnrichedSpace, Field};
use fracflow::geometry::{FractureMesh, Geometry, Point2, Side};
use fracflow::quadrature::QuadOptions;
use fracflow::solver::{CoupledProblem, CoupledState};
use rand::{Rng, SeedableRng};

fn random_point(space: &EnrichedSpace, e: usize, rng: &mut impl Rng) -> Point2 {
    let c = space.geom.bulk.corners(e);
    let (mut a, mut b) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
    if a + b > 1.0 {
        (a, b) = (1.0 - a, 1.0 - b);
    }
    c[0] + (c[1] - c[0]) * a + (c[2] - c[0]) * b
}

#[test]
fn closed_form_jumps_match_two_sided_traces() {
    let space = EnrichedSpace::new(benchmark::geometry(1).unwrap(), benchmark::RADIUS);
    let err = common::jump_oracle_error(&space, 10, 40, 1e-8, 7);
    assert!(err < 1e-8, "{err:e}");
}

#[test]
fn closed_form_jumps_on_an_inclined_bent_fracture() {
    let f = FractureMesh::new(
        vec![Point2::new(0.0, -40.0), Point2::new(230.0, 20.0), Point2::new(470.0, 110.0)],
        true,
        ["inlet".into(), "tip".into()],
    )
    .unwrap();
    let space = EnrichedSpace::new(Geometry::new(benchmark::coarse_mesh(), Some(f)).unwrap(), 150.0);
    let err = common::jump_oracle_error(&space, 10, 40, 1e-8, 11);
    assert!(err < 1e-8, "{err:e}");
}

#[test]
fn partition_of_unity_and_continuity_of_standard_fields() {
    let space = EnrichedSpace::new(benchmark::geometry(0).unwrap(), benchmark::RADIUS);
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    let mut b = ElementBasis::default();
    let nv = space.geom.bulk.n_vertices();
    for e in 0..space.geom.bulk.n_triangles() {
        let x = random_point(&space, e, &mut rng);
        let side = match space.geom.classify_side(x) {
            Side::OnExtension => Side::Plus,
            s => s,
        };
        space.eval_basis(Field::Pressure, e, x, side, &mut b);
        let sum: f64 = b.dofs.iter().zip(&b.values).filter(|(&d, _)| d < nv).map(|(_, v)| v).sum();
        assert!((sum - 1.0).abs() < 1e-13);
    }
    let mut p = vec![0.0; space.n_pressure_dofs()];
    for v in p.iter_mut().take(nv) {
        *v = rng.gen_range(-1.0..1.0);
    }
    let mut u = vec![0.0; space.n_displacement_dofs()];
    for v in u.iter_mut().take(2 * nv) {
        *v = rng.gen_range(-1.0..1.0);
    }
    for _ in 0..100 {
        let s = rng.gen_range(0.0..500.0);
        let (jp, _) = space.pressure_jump_average(&p, s).unwrap();
        let (ju, _) = space.displacement_jump_average(&u, s).unwrap();
        assert!(jp.abs() < 1e-12 && ju[0].abs() < 1e-12 && ju[1].abs() < 1e-12);
    }
}

#[test]
fn only_the_first_tip_function_jumps() {
    let space = EnrichedSpace::new(benchmark::geometry(0).unwrap(), benchmark::RADIUS);
    let mut p = vec![0.0; space.n_pressure_dofs()];
    let mut u = vec![0.0; space.n_displacement_dofs()];
    for &n in &space.sets.tip {
        let d = space.pressure.tip_dof(n).unwrap();
        p[d + 1] = 1.0;
        let d = space.displacement.tip_dof(n).unwrap();
        for j in 1..4 {
            u[2 * (d + j)] = 1.0;
            u[2 * (d + j) + 1] = -0.5;
        }
    }
    let frame = space.frame.unwrap();
    for k in 1..50 {
        let s = 500.0 - 2.4 * k as f64;
        let (jp, _) = space.pressure_jump_average(&p, s).unwrap();
        let (ju, _) = space.displacement_jump_average(&u, s).unwrap();
        assert_eq!((jp, ju), (0.0, [0.0, 0.0]), "closed form at s = {s}");
        let (e, x, _, _) = space.locate_on_fracture(s).unwrap();
        assert!(x.dist(frame.tip) > 0.0);
        let up = space.eval_pressure(&p, e, x, Some(Side::Plus)).unwrap().0;
        let dn = space.eval_pressure(&p, e, x, Some(Side::Minus)).unwrap().0;
        assert!((up - dn).abs() < 1e-10);
        let up = space.eval_displacement(&u, e, x, Some(Side::Plus)).unwrap().0;
        let dn = space.eval_displacement(&u, e, x, Some(Side::Minus)).unwrap().0;
        assert!((up[0] - dn[0]).abs() < 1e-10 && (up[1] - dn[1]).abs() < 1e-10);
    }
}

#[test]
fn single_heaviside_dof_is_h_times_hat() {
    let space = EnrichedSpace::new(benchmark::geometry(0).unwrap(), benchmark::RADIUS);
    let node = space.sets.heaviside[0];
    let d = space.pressure.heaviside_dof(node).unwrap();
    let mut p = vec![0.0; space.n_pressure_dofs()];
    p[d] = 1.0;
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let patch: Vec<usize> = (0..space.geom.bulk.n_triangles()).filter(|&e| space.geom.bulk.triangles[e].contains(&node)).collect();
    for k in 0..100 {
        let e = patch[k % patch.len()];
        let x = random_point(&space, e, &mut rng);
        let side = space.geom.classify_side(x);
        if side == Side::OnExtension {
            continue;
        }
        let local = space.geom.bulk.triangles[e].iter().position(|&n| n == node).unwrap();
        let phi = space.geom.bulk.barycentric(e, x)[local];
        let (v, _) = space.eval_pressure(&p, e, x, None).unwrap();
        assert!((v - side.heaviside() * phi).abs() < 1e-14);
    }
}

#[test]
fn dof_counts_on_every_level() {
    for level in 0..3 {
        let space = EnrichedSpace::new(benchmark::geometry(level).unwrap(), benchmark::RADIUS);
        let n = space.geom.bulk.n_vertices();
        let (k, j) = (space.sets.heaviside.len(), space.sets.tip.len());
        assert_eq!(space.n_displacement_dofs(), 2 * (n + k + 4 * j));
        assert_eq!(space.n_pressure_dofs(), n + k + 2 * j);
        assert_eq!(space.n_fracture_dofs(), space.geom.fracture.as_ref().unwrap().n_vertices());
    }
}

#[test]
fn initial_width_at_250_m() {
    let space = EnrichedSpace::new(benchmark::geometry(0).unwrap(), benchmark::RADIUS);
    let (e, x, seg, _) = space.locate_on_fracture(250.0).unwrap();
    let b = CrackWidthField::SqrtProfile { c: 1e-2 }.eval(&space, e, x, space.geom.fracture.as_ref().unwrap().normal(seg));
    assert!((b - 250f64.sqrt() * 1e-2).abs() < 1e-15);
    assert!((b - 0.158).abs() < 1e-3);
}

#[test]
fn first_iterate_opens_the_crack_and_closes_at_the_tip() {
    let disc = Discretization::new(benchmark::geometry(0).unwrap(), benchmark::RADIUS, QuadOptions::default());
    let (params, data) = (benchmark::material(), benchmark::problem_data());
    let problem = CoupledProblem::new(&disc, &params, &data).unwrap();
    let s0 = CoupledState::initial(&disc, CrackWidthField::SqrtProfile { c: 1e-2 });
    let s1 = problem.step(&s0, 1.0).unwrap();
    let width = s1.width();
    let b = width.at_points(&disc.space, &disc.interface);
    assert!(b.iter().all(|&w| w >= 0.0), "min {}", b.iter().copied().fold(f64::INFINITY, f64::min));

    // near the tip only tip-enriched nodes carry a jump: |b| ≤ 2√r·max|c₁|
    let te = disc.geom().cut.tip_element.unwrap();
    let c1 = disc.geom().bulk.triangles[te]
        .iter()
        .map(|&n| {
            let d = disc.space.displacement.tip_dof(n).unwrap();
            s1.u[2 * d].abs().max(s1.u[2 * d + 1].abs())
        })
        .fold(0.0, f64::max);
    let (k, q) = disc.interface.points().enumerate().min_by(|a, b| a.1 .1.r.total_cmp(&b.1 .1.r)).map(|(k, (_, q))| (k, q)).unwrap();
    assert!(q.r > 0.0 && b[k] <= 2.0 * c1 * q.r.sqrt() + 1e-15, "b = {}, bound {}", b[k], 2.0 * c1 * q.r.sqrt());
}
