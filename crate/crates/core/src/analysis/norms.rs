use crate::assembly::{CsrMatrix, Discretization, Triplets};
use crate::enrichment::{CrackWidthField, ElementBasis, Field};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L2,
    /// Full broken H¹ norm.
    H1,
    /// Broken H¹ seminorm.
    H1Semi,
}

/// Broken (side-aware) mass and stiffness Gram matrices of one level.
#[derive(Debug, Clone)]
pub struct GramMatrices {
    pub pressure_mass: CsrMatrix,
    pub pressure_stiffness: CsrMatrix,
    /// Scalar displacement basis; applied per component.
    pub displacement_mass: CsrMatrix,
    pub displacement_stiffness: CsrMatrix,
    pub fracture_mass: CsrMatrix,
    pub fracture_stiffness: CsrMatrix,
}

fn bulk_gram(disc: &Discretization, field: Field) -> (CsrMatrix, CsrMatrix) {
    let space = &disc.space;
    let n = space.scalar(field).n_dofs;
    let mut m = Triplets::new(n, n);
    let mut k = Triplets::new(n, n);
    let mut basis = ElementBasis::default();
    for (e, rule) in disc.volume.iter().enumerate() {
        let dofs = space.element_dofs(field, e);
        let nl = dofs.len();
        let mut lm = vec![0.0; nl * nl];
        let mut lk = vec![0.0; nl * nl];
        for q in &rule.points {
            space.eval_basis(field, e, q.x, q.side, &mut basis);
            for a in 0..nl {
                for b in 0..nl {
                    lm[a * nl + b] += q.w * basis.values[a] * basis.values[b];
                    lk[a * nl + b] += q.w * basis.grads[a].dot(basis.grads[b]);
                }
            }
        }
        for a in 0..nl {
            for b in 0..nl {
                m.add(dofs[a], dofs[b], lm[a * nl + b]);
                k.add(dofs[a], dofs[b], lk[a * nl + b]);
            }
        }
    }
    (CsrMatrix::from_triplets(&m), CsrMatrix::from_triplets(&k))
}

/// 1D P1 mass and stiffness on the fracture polyline (exact element formulas).
fn fracture_gram(disc: &Discretization) -> (CsrMatrix, CsrMatrix) {
    let n = disc.space.n_fracture_dofs();
    let mut m = Triplets::new(n, n);
    let mut k = Triplets::new(n, n);
    if let Some(f) = disc.geom().fracture.as_ref() {
        for s in 0..f.n_segments() {
            let h = f.length(s);
            for (i, j, mv, kv) in [(s, s, h / 3.0, 1.0 / h), (s + 1, s + 1, h / 3.0, 1.0 / h), (s, s + 1, h / 6.0, -1.0 / h), (s + 1, s, h / 6.0, -1.0 / h)] {
                m.add(i, j, mv);
                k.add(i, j, kv);
            }
        }
    }
    (CsrMatrix::from_triplets(&m), CsrMatrix::from_triplets(&k))
}

fn quadratic(a: &CsrMatrix, x: &[f64]) -> f64 {
    a.matvec(x).iter().zip(x).map(|(p, q)| p * q).sum::<f64>().max(0.0)
}

impl GramMatrices {
    pub fn new(disc: &Discretization) -> Self {
        let (pressure_mass, pressure_stiffness) = bulk_gram(disc, Field::Pressure);
        let (displacement_mass, displacement_stiffness) = bulk_gram(disc, Field::Displacement);
        let (fracture_mass, fracture_stiffness) = fracture_gram(disc);
        GramMatrices { pressure_mass, pressure_stiffness, displacement_mass, displacement_stiffness, fracture_mass, fracture_stiffness }
    }

    fn combine(mass: &CsrMatrix, stiff: &CsrMatrix, x: &[f64], kind: NormKind) -> f64 {
        let l2 = || quadratic(mass, x);
        let h1 = || quadratic(stiff, x);
        match kind {
            NormKind::L2 => l2().sqrt(),
            NormKind::H1Semi => h1().sqrt(),
            NormKind::H1 => (l2() + h1()).sqrt(),
        }
    }

    pub fn pressure_norm(&self, p: &[f64], kind: NormKind) -> f64 {
        Self::combine(&self.pressure_mass, &self.pressure_stiffness, p, kind)
    }

    pub fn fracture_norm(&self, p: &[f64], kind: NormKind) -> f64 {
        Self::combine(&self.fracture_mass, &self.fracture_stiffness, p, kind)
    }

    pub fn displacement_norm(&self, u: &[f64], kind: NormKind) -> f64 {
        let comp = |a: usize| -> Vec<f64> { u.iter().skip(a).step_by(2).copied().collect() };
        let (ux, uy) = (comp(0), comp(1));
        let sq = |x: &[f64]| Self::combine(&self.displacement_mass, &self.displacement_stiffness, x, kind).powi(2);
        (sq(&ux) + sq(&uy)).sqrt()
    }
}

/// Weighted fracture norms (‖v‖_{0,b⁻¹}, ‖∂_s v‖_{0,b}) with the raw width,
/// integrated on the graded interface quadrature.
pub fn weighted_fracture_norms(disc: &Discretization, p: &[f64], b: &CrackWidthField) -> Result<(f64, f64)> {
    let frac = disc.geom().fracture.as_ref().ok_or_else(|| Error::Analysis("no fracture".into()))?;
    let widths = b.at_points(&disc.space, &disc.interface);
    if widths.iter().all(|&w| w == 0.0) {
        return Err(Error::Analysis("weighted norm with identically zero crack width".into()));
    }
    let (mut inv, mut wgt) = (0.0, 0.0);
    for ((cell, q), &w) in disc.interface.points().zip(&widths) {
        let v = (1.0 - q.t) * p[cell.segment] + q.t * p[cell.segment + 1];
        let dv = (p[cell.segment + 1] - p[cell.segment]) / frac.length(cell.segment);
        if w > 0.0 {
            inv += q.w * v * v / w;
        }
        wgt += q.w * w * dv * dv;
    }
    Ok((inv.sqrt(), wgt.sqrt()))
}
