use serde::{Deserialize, Serialize};

use crate::assembly::Discretization;
use crate::enrichment::{ElementBasis, Field};
use crate::geometry::Point2;
use crate::solver::CoupledState;
use crate::{Error, Result};

/// Relative L² error and relative broken H¹-seminorm error of one field.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FieldError {
    pub l2: f64,
    pub h1: f64,
    /// Absolute values before normalization.
    pub l2_abs: f64,
    pub h1_abs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LevelErrors {
    pub displacement: FieldError,
    pub bulk_pressure: FieldError,
    pub fracture_pressure: FieldError,
}

#[derive(Default)]
struct Acc {
    e0: f64,
    e1: f64,
    r0: f64,
    r1: f64,
}

impl Acc {
    fn add(&mut self, w: f64, dv: f64, dg: f64, rv: f64, rg: f64) {
        self.e0 += w * dv;
        self.e1 += w * dg;
        self.r0 += w * rv;
        self.r1 += w * rg;
    }

    fn finish(&self) -> FieldError {
        let rel = |e: f64, r: f64| if r > 0.0 { (e / r).sqrt() } else { e.sqrt() };
        FieldError { l2: rel(self.e0, self.r0), h1: rel(self.e1, self.r1), l2_abs: self.e0.sqrt(), h1_abs: self.e1.sqrt() }
    }
}

/// Errors of a coarse solution with respect to a solution on a uniformly
/// refined descendant mesh, integrated with the reference quadrature and
/// normalized by the reference norms.
pub fn error_between(
    coarse: &Discretization,
    coarse_state: &CoupledState,
    reference: &Discretization,
    reference_state: &CoupledState,
) -> Result<LevelErrors> {
    let cb = &coarse.geom().bulk;
    let fb = &reference.geom().bulk;
    if fb.level < cb.level {
        return Err(Error::Analysis("reference level is coarser than the compared level".into()));
    }
    let depth = fb.level - cb.level;
    if fb.n_triangles() != cb.n_triangles() * 4usize.pow(depth) {
        return Err(Error::Analysis("meshes are not a nested refinement hierarchy".into()));
    }
    if depth > 0 && fb.parents.len() != fb.n_triangles() {
        return Err(Error::Analysis("reference mesh carries no parent map".into()));
    }
    // ancestor of each reference element on the coarse level
    let ancestor = ancestors(reference, depth)?;

    let (cs, fs) = (&coarse.space, &reference.space);
    let mut u = Acc::default();
    let mut p = Acc::default();
    let mut cbuf = ElementBasis::default();
    let mut fbuf = ElementBasis::default();
    for (e, rule) in reference.volume.iter().enumerate() {
        let ce = ancestor[e];
        for q in &rule.points {
            let (fp, fg) = eval_p(fs, &reference_state.p_bulk, e, q.x, q.side, &mut fbuf);
            let (cp, cg) = eval_p(cs, &coarse_state.p_bulk, ce, q.x, q.side, &mut cbuf);
            p.add(q.w, (fp - cp).powi(2), (fg - cg).norm_sq(), fp * fp, fg.norm_sq());
            let (fu, fgu) = eval_u(fs, &reference_state.u, e, q.x, q.side, &mut fbuf);
            let (cu, cgu) = eval_u(cs, &coarse_state.u, ce, q.x, q.side, &mut cbuf);
            let dv = (fu[0] - cu[0]).powi(2) + (fu[1] - cu[1]).powi(2);
            let dg = (fgu[0] - cgu[0]).norm_sq() + (fgu[1] - cgu[1]).norm_sq();
            u.add(q.w, dv, dg, fu[0] * fu[0] + fu[1] * fu[1], fgu[0].norm_sq() + fgu[1].norm_sq());
        }
    }

    let mut f = Acc::default();
    if let (Some(ff), Some(cf)) = (reference.geom().fracture.as_ref(), coarse.geom().fracture.as_ref()) {
        for (cell, q) in reference.interface.points() {
            let s = cell.segment;
            let fv = (1.0 - q.t) * reference_state.p_frac[s] + q.t * reference_state.p_frac[s + 1];
            let fd = (reference_state.p_frac[s + 1] - reference_state.p_frac[s]) / ff.length(s);
            let (cseg, ct) = cf.locate(q.s).ok_or(Error::OffFracture(q.s))?;
            let cp = &coarse_state.p_frac;
            let cv = (1.0 - ct) * cp[cseg] + ct * cp[cseg + 1];
            let cd = (cp[cseg + 1] - cp[cseg]) / cf.length(cseg);
            f.add(q.w, (fv - cv).powi(2), (fd - cd).powi(2), fv * fv, fd * fd);
        }
    }
    Ok(LevelErrors { displacement: u.finish(), bulk_pressure: p.finish(), fracture_pressure: f.finish() })
}

fn ancestors(reference: &Discretization, depth: u32) -> Result<Vec<usize>> {
    // the parent map only links consecutive levels; for deeper hierarchies
    // the child numbering 4e + k of uniform refinement is used
    let n = reference.geom().bulk.n_triangles();
    let mut anc: Vec<usize> = (0..n).collect();
    for _ in 0..depth {
        for a in anc.iter_mut() {
            *a /= 4;
        }
    }
    if depth > 0 {
        let parents = &reference.geom().bulk.parents;
        if (0..n).any(|e| parents[e] != e / 4) {
            return Err(Error::Analysis("reference mesh numbering is not a uniform refinement".into()));
        }
    }
    Ok(anc)
}

fn eval_p(
    space: &crate::enrichment::EnrichedSpace,
    c: &[f64],
    e: usize,
    x: Point2,
    side: crate::geometry::Side,
    buf: &mut ElementBasis,
) -> (f64, Point2) {
    space.eval_basis(Field::Pressure, e, x, side, buf);
    let mut v = 0.0;
    let mut g = Point2::default();
    for k in 0..buf.dofs.len() {
        v += c[buf.dofs[k]] * buf.values[k];
        g += buf.grads[k] * c[buf.dofs[k]];
    }
    (v, g)
}

fn eval_u(
    space: &crate::enrichment::EnrichedSpace,
    c: &[f64],
    e: usize,
    x: Point2,
    side: crate::geometry::Side,
    buf: &mut ElementBasis,
) -> ([f64; 2], [Point2; 2]) {
    space.eval_basis(Field::Displacement, e, x, side, buf);
    let mut v = [0.0; 2];
    let mut g = [Point2::default(); 2];
    for k in 0..buf.dofs.len() {
        for a in 0..2 {
            let ck = c[2 * buf.dofs[k] + a];
            v[a] += ck * buf.values[k];
            g[a] += buf.grads[k] * ck;
        }
    }
    (v, g)
}
