//! Independent check of the enriched elasticity solve: the crack is meshed
//! conformingly as a slit (duplicated nodes along y = 0, x < 500) with the
//! fracture pressure applied as face tractions, using standard P1 only.

use fracflow::assembly::{assemble_elasticity, Datum, Discretization, ProblemData, VectorBc};
use fracflow::benchmark;
use fracflow::geometry::{BulkMesh, Geometry, Point2, Side};
use fracflow::quadrature::QuadOptions;
use fracflow::solver::{solve_sparse, CoupledProblem};

const P: f64 = 5e5;

/// Square mesh with `n` cells per 500 m whose row y = 0 is split for x < 500.
/// Returns the mesh and the lower and upper copies of the mouth vertex.
fn slit_mesh(n: usize) -> (BulkMesh, usize, usize) {
    let (nx, ny, jm) = (2 * n, 2 * n, n);
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut v = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            v.push(Point2::new(1000.0 * i as f64 / nx as f64, -500.0 + 1000.0 * j as f64 / ny as f64));
        }
    }
    let mut dup = vec![usize::MAX; nx + 1];
    for (i, d) in dup.iter_mut().enumerate().take(n) {
        *d = v.len();
        v.push(v[id(i, jm)]);
    }
    let up = |i: usize, j: usize| if j == jm && i < n { dup[i] } else { id(i, j) };
    let mut t = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let f = |ii: usize, jj: usize| if j >= jm { up(ii, jj) } else { id(ii, jj) };
            let (a, b, c, d) = (f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1));
            if (i + j) % 2 == 0 {
                t.extend([[a, b, c], [a, c, d]]);
            } else {
                t.extend([[a, b, d], [b, c, d]]);
            }
        }
    }
    let mut tags = Vec::new();
    for i in 0..nx {
        tags.push(([id(i, 0), id(i + 1, 0)], "bottom".to_string()));
        tags.push(([id(i, ny), id(i + 1, ny)], "top".to_string()));
    }
    for j in 0..ny {
        let l = if j >= jm { [up(0, j), up(0, j + 1)] } else { [id(0, j), id(0, j + 1)] };
        tags.push((l, "left".to_string()));
        tags.push(([id(nx, j), id(nx, j + 1)], "right".to_string()));
    }
    for i in 0..n {
        tags.push(([up(i, jm), up(i + 1, jm)], "crack_plus".to_string()));
        tags.push(([id(i, jm), id(i + 1, jm)], "crack_minus".to_string()));
    }
    (BulkMesh::new(v, t, &tags).unwrap(), id(0, jm), dup[0])
}

fn slit_opening(n: usize) -> f64 {
    let (mesh, lo, hi) = slit_mesh(n);
    let disc = Discretization::new(Geometry::new(mesh, None).unwrap(), 1.0, QuadOptions::default());
    let z = Datum::ZERO;
    let mut data = ProblemData::default();
    data.elastic.insert("bottom".into(), VectorBc::Dirichlet([z; 2]));
    for tag in ["top", "left", "right"] {
        data.elastic.insert(tag.into(), VectorBc::Neumann([z; 2]));
    }
    // the pressure pushes each face away from the crack
    data.elastic.insert("crack_plus".into(), VectorBc::Neumann([z, Datum::constant(P)]));
    data.elastic.insert("crack_minus".into(), VectorBc::Neumann([z, Datum::constant(-P)]));
    let sys = assemble_elasticity(&disc, &benchmark::material(), &data, &vec![0.0; disc.space.n_pressure_dofs()], &[]).unwrap();
    let u = solve_sparse(&sys).unwrap();
    u[2 * hi + 1] - u[2 * lo + 1]
}

fn xfem_opening(level: u32) -> f64 {
    let disc = Discretization::new(benchmark::geometry(level).unwrap(), benchmark::RADIUS, QuadOptions::default());
    let (params, data) = (benchmark::material(), benchmark::problem_data());
    let problem = CoupledProblem::new(&disc, &params, &data).unwrap();
    let u = problem.solve_elasticity(&vec![0.0; disc.space.n_pressure_dofs()], &vec![P; disc.space.n_fracture_dofs()]).unwrap();
    let x = Point2::new(1e-9, 0.0);
    let e = disc.geom().bulk.locate(x).unwrap();
    let (up, _) = disc.space.eval_displacement(&u, e, x, Some(Side::Plus)).unwrap();
    let (um, _) = disc.space.eval_displacement(&u, e, x, Some(Side::Minus)).unwrap();
    up[1] - um[1]
}

#[test]
fn mouth_opening_matches_a_conforming_slit_mesh() {
    let (v16, v32) = (slit_opening(16), slit_opening(32));
    // the slit solution converges at first order toward the tip-dominated limit
    let limit = 2.0 * v32 - v16;
    let xfem: Vec<f64> = (1..=3).map(xfem_opening).collect();
    assert!(v16 < v32 && v32 < limit);
    let rel = |v: f64| (v - limit).abs() / limit;
    assert!(rel(xfem[2]) < 0.015, "{:.4}", rel(xfem[2]));
    // enrichment captures the tip, so even coarse levels beat the slit mesh
    assert!(rel(xfem[1]) < rel(v32), "{} vs {}", rel(xfem[1]), rel(v32));
}
