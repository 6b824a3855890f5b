use super::discretization::Discretization;
use super::params::{MaterialParams, ProblemData, ScalarBc};
use super::sparse::{apply_dirichlet_exact, Constraints, CsrMatrix, ExactOperator, LowRank, SparseSystem, Triplets};
use crate::enrichment::{floored, CrackWidthField, ElementBasis, Field, TraceBasis};
use crate::{Error, Result};

/// Negative aperture tolerance (m).
pub const EPS_B: f64 = 1e-9;

/// Coupled fluid block system over [p^Ω, p^Σ] (unconstrained). The bulk
/// Darcy form is assembled; every interface and fracture term is kept as a
/// rank-one term per quadrature point.
pub struct FluidBlocks {
    pub bulk: CsrMatrix,
    pub interface: LowRank,
    pub rhs: Vec<f64>,
    pub symmetric: bool,
}

impl FluidBlocks {
    pub fn matrix(&self) -> CsrMatrix {
        self.operator().assemble()
    }

    pub fn operator(&self) -> ExactOperator {
        ExactOperator { base: self.bulk.clone(), low_rank: self.interface.clone(), rhs: self.rhs.clone() }
    }
}

/// Assembles the bulk/fracture flow block system for the crack width `width`
/// given as raw values at the interface quadrature points (cell order).
pub fn fluid_blocks(
    disc: &Discretization,
    params: &MaterialParams,
    data: &ProblemData,
    width: &[f64],
    end_widths: [f64; 2],
) -> Result<FluidBlocks> {
    let space = &disc.space;
    let np = space.n_pressure_dofs();
    let nf = space.n_fracture_dofs();
    let n = np + nf;
    let mut t = Triplets::new(n, n);
    let mut rhs = vec![0.0; n];
    let mut basis = ElementBasis::default();

    for (e, rule) in disc.volume.iter().enumerate() {
        let dofs = space.element_dofs(Field::Pressure, e);
        let m = dofs.len();
        let mut local = vec![0.0; m * m];
        for q in &rule.points {
            space.eval_basis(Field::Pressure, e, q.x, q.side, &mut basis);
            let f = data.bulk_source.eval(q.x);
            for a in 0..m {
                let kg = params.mobility(basis.grads[a]);
                for b in 0..m {
                    local[a * m + b] += q.w * kg.dot(basis.grads[b]);
                }
                rhs[dofs[a]] += q.w * f * basis.values[a];
            }
        }
        for a in 0..m {
            for b in 0..m {
                t.add(dofs[a], dofs[b], local[a * m + b]);
            }
        }
    }

    for (k, edge) in space.geom.bulk.boundary.iter().enumerate() {
        let Some(ScalarBc::Neumann(qn)) = data.bulk_flow.get(&edge.tag) else { continue };
        if qn.is_zero() {
            continue;
        }
        for q in &disc.boundary[k] {
            space.eval_basis(Field::Pressure, edge.element, q.x, q.side, &mut basis);
            for i in 0..basis.dofs.len() {
                rhs[basis.dofs[i]] -= q.w * qn.eval(q.x) * basis.values[i];
            }
        }
    }

    let mut symmetric = true;
    let mut interface = LowRank::default();
    if let Some(frac) = space.geom.fracture.as_ref() {
        let mu_f = params.viscosity;
        let kn = params.k_normal / mu_f;
        let kt = params.k_tangential / mu_f;
        let closure = params.closure_factor();
        let mut tb = TraceBasis::default();
        for (idx, (cell, q)) in disc.interface.points().enumerate() {
            let b = width[idx];
            if b < -EPS_B {
                return Err(Error::CrackClosed { width: b, at: q.x });
            }
            let bd = floored(b);
            let c_avg = closure * 4.0 * kn / bd;
            let c_jump = kn / bd;
            space.trace_basis(Field::Pressure, cell.element, q.x, &mut tb);
            let len = frac.length(cell.segment);
            let fi = [np + cell.segment, np + cell.segment + 1];
            let psi = [1.0 - q.t, q.t];
            // c_avg·(⟨p⟩ − p^Σ)(⟨q⟩ − ψ)
            let mut g = tb.average.clone();
            g.extend([(fi[0], -psi[0]), (fi[1], -psi[1])]);
            interface.push_symmetric(q.w * c_avg, g);
            interface.push_symmetric(q.w * c_jump, tb.jump.clone());
            interface.push_symmetric(q.w * b * kt / (len * len), vec![(fi[0], -1.0), (fi[1], 1.0)]);
            if q.kappa != 0.0 {
                symmetric = false;
                interface.push(-q.w * q.kappa * kn, vec![(fi[0], psi[0]), (fi[1], psi[1])], tb.jump.clone());
            }
            let fs = data.fracture_source.eval(q.x);
            for s in 0..2 {
                rhs[fi[s]] += q.w * b * fs * psi[s];
            }
        }

        // b-weighted Neumann flux at the fracture ends
        for (end, tag) in frac.end_tags.iter().enumerate() {
            let Some(ScalarBc::Neumann(qn)) = data.fracture_flow.get(tag) else { continue };
            let vertex = if end == 0 { 0 } else { frac.n_vertices() - 1 };
            let x = space.geom.cut.fracture_vertices[vertex];
            rhs[np + vertex] -= end_widths[end] * qn.eval(x);
        }
    }
    Ok(FluidBlocks { bulk: CsrMatrix::from_triplets(&t), interface, rhs, symmetric })
}

/// Raw widths at the two fracture ends (zero at a tip).
pub fn end_widths(disc: &Discretization, b: &CrackWidthField) -> [f64; 2] {
    let space = &disc.space;
    let Some(frac) = space.geom.fracture.as_ref() else { return [0.0; 2] };
    let mut out = [0.0; 2];
    for (end, s) in [(0, 0.0), (1, frac.total_length())] {
        if end == 1 && frac.has_tip {
            continue;
        }
        if let Ok((e, x, seg, _)) = space.locate_on_fracture(s) {
            out[end] = b.eval(space, e, x, frac.normal(seg));
        }
    }
    out
}

/// Dirichlet constraints on [p^Ω, p^Σ].
pub fn fluid_constraints(disc: &Discretization, data: &ProblemData) -> Result<Constraints> {
    let space = &disc.space;
    let bulk = &space.geom.bulk;
    let np = space.n_pressure_dofs();
    let mut c = Constraints::new();
    for edge in &bulk.boundary {
        let Some(ScalarBc::Dirichlet(pd)) = data.bulk_flow.get(&edge.tag) else { continue };
        for &n in &edge.vertices {
            c.add(n, pd.eval(bulk.vertices[n]))?;
            for d in space.pressure.node_dofs(n).into_iter().skip(1) {
                c.add(d, 0.0)?;
            }
        }
    }
    if let Some(frac) = space.geom.fracture.as_ref() {
        for (end, tag) in frac.end_tags.iter().enumerate() {
            if let Some(ScalarBc::Dirichlet(pd)) = data.fracture_flow.get(tag) {
                let vertex = if end == 0 { 0 } else { frac.n_vertices() - 1 };
                c.add(np + vertex, pd.eval(frac.vertices[vertex]))?;
            }
        }
    }
    Ok(c)
}

/// Assembled and constrained coupled fluid system for crack width `b`.
pub fn assemble_coupled_fluid(
    disc: &Discretization,
    params: &MaterialParams,
    data: &ProblemData,
    b: &CrackWidthField,
) -> Result<SparseSystem> {
    let width = b.at_points(&disc.space, &disc.interface);
    let blocks = fluid_blocks(disc, params, data, &width, end_widths(disc, b))?;
    let c = fluid_constraints(disc, data)?;
    Ok(apply_dirichlet_exact(blocks.operator(), &c, blocks.symmetric))
}
