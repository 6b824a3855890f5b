use super::discretization::Discretization;
use super::params::{MaterialParams, ProblemData, VectorBc};
use super::sparse::{apply_dirichlet, Constraints, CsrMatrix, SparseSystem, Triplets};
use crate::enrichment::{ElementBasis, Field, TraceBasis};
use crate::geometry::Point2;
use crate::{Error, Result};

/// Stiffness matrix of a_E(u, v) = ∫ σ(u) : e(v) over all DOFs (no constraints).
pub fn elasticity_matrix(disc: &Discretization, params: &MaterialParams) -> CsrMatrix {
    let space = &disc.space;
    let n = space.n_displacement_dofs();
    let (lam, mu) = (params.lambda, params.mu);
    let mut t = Triplets::new(n, n);
    let mut basis = ElementBasis::default();
    for (e, rule) in disc.volume.iter().enumerate() {
        let dofs = space.element_dofs(Field::Displacement, e);
        let m = dofs.len();
        let mut local = vec![0.0; 4 * m * m];
        for q in &rule.points {
            space.eval_basis(Field::Displacement, e, q.x, q.side, &mut basis);
            let g = &basis.grads;
            for a in 0..m {
                for b in 0..m {
                    let ga = [g[a].x, g[a].y];
                    let gb = [g[b].x, g[b].y];
                    let dot = g[a].dot(g[b]);
                    for al in 0..2 {
                        for be in 0..2 {
                            let mut v = lam * ga[al] * gb[be] + mu * ga[be] * gb[al];
                            if al == be {
                                v += mu * dot;
                            }
                            local[(2 * a + al) * 2 * m + 2 * b + be] += q.w * v;
                        }
                    }
                }
            }
        }
        for a in 0..m {
            for al in 0..2 {
                for b in 0..m {
                    for be in 0..2 {
                        t.add(2 * dofs[a] + al, 2 * dofs[b] + be, local[(2 * a + al) * 2 * m + 2 * b + be]);
                    }
                }
            }
        }
    }
    CsrMatrix::from_triplets(&t)
}

/// Load vector l_E(v) − ∫ ∇p^Ω·v + ∫_Σ p^Σ [[v]]·ν for given pressures.
pub fn elasticity_rhs(disc: &Discretization, data: &ProblemData, p_bulk: &[f64], p_frac: &[f64]) -> Vec<f64> {
    let space = &disc.space;
    let mut rhs = vec![0.0; space.n_displacement_dofs()];
    let mut basis = ElementBasis::default();
    let mut pb = ElementBasis::default();
    let with_force = data.body_force.iter().any(|d| !d.is_zero());
    let with_pressure = p_bulk.iter().any(|&p| p != 0.0);
    for (e, rule) in disc.volume.iter().enumerate() {
        if !with_force && !with_pressure {
            break;
        }
        for q in &rule.points {
            space.eval_basis(Field::Displacement, e, q.x, q.side, &mut basis);
            let mut load = [data.body_force[0].eval(q.x), data.body_force[1].eval(q.x)];
            if with_pressure {
                space.eval_basis(Field::Pressure, e, q.x, q.side, &mut pb);
                let mut gp = Point2::default();
                for k in 0..pb.dofs.len() {
                    gp += pb.grads[k] * p_bulk[pb.dofs[k]];
                }
                load[0] -= gp.x;
                load[1] -= gp.y;
            }
            for k in 0..basis.dofs.len() {
                for a in 0..2 {
                    rhs[2 * basis.dofs[k] + a] += q.w * load[a] * basis.values[k];
                }
            }
        }
    }

    // tractions
    for (k, edge) in space.geom.bulk.boundary.iter().enumerate() {
        let Some(VectorBc::Neumann(tr)) = data.elastic.get(&edge.tag) else { continue };
        if tr.iter().all(|d| d.is_zero()) {
            continue;
        }
        for q in &disc.boundary[k] {
            space.eval_basis(Field::Displacement, edge.element, q.x, q.side, &mut basis);
            for i in 0..basis.dofs.len() {
                for a in 0..2 {
                    rhs[2 * basis.dofs[i] + a] += q.w * tr[a].eval(q.x) * basis.values[i];
                }
            }
        }
    }

    // fracture pressure opening the crack
    if p_frac.iter().any(|&p| p != 0.0) {
        let mut tb = TraceBasis::default();
        for (cell, q) in disc.interface.points() {
            let p = (1.0 - q.t) * p_frac[cell.segment] + q.t * p_frac[cell.segment + 1];
            space.trace_basis(Field::Displacement, cell.element, q.x, &mut tb);
            for &(d, j) in &tb.jump {
                rhs[2 * d] += q.w * p * j * q.normal.x;
                rhs[2 * d + 1] += q.w * p * j * q.normal.y;
            }
        }
    }
    rhs
}

/// Dirichlet constraints of the elasticity problem: nodal values of u_D on
/// standard DOFs, zero on enrichment DOFs of Dirichlet nodes.
pub fn elasticity_constraints(disc: &Discretization, data: &ProblemData) -> Result<Constraints> {
    let space = &disc.space;
    let bulk = &space.geom.bulk;
    let mut c = Constraints::new();
    for edge in &bulk.boundary {
        let Some(VectorBc::Dirichlet(ud)) = data.elastic.get(&edge.tag) else { continue };
        for &n in &edge.vertices {
            let x = bulk.vertices[n];
            for a in 0..2 {
                c.add(2 * n + a, ud[a].eval(x))?;
            }
            for d in space.displacement.node_dofs(n).into_iter().skip(1) {
                c.add(2 * d, 0.0)?;
                c.add(2 * d + 1, 0.0)?;
            }
        }
    }
    if c.is_empty() {
        return Err(Error::Boundary("elasticity has no Dirichlet DOFs".into()));
    }
    Ok(c)
}

/// Assembled and constrained elasticity system for given pressures.
pub fn assemble_elasticity(
    disc: &Discretization,
    params: &MaterialParams,
    data: &ProblemData,
    p_bulk: &[f64],
    p_frac: &[f64],
) -> Result<SparseSystem> {
    let a = elasticity_matrix(disc, params);
    let b = elasticity_rhs(disc, data, p_bulk, p_frac);
    let c = elasticity_constraints(disc, data)?;
    Ok(apply_dirichlet(&a, &b, &c, true))
}
