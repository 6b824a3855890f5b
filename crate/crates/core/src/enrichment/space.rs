use super::functions::eval_tip_functions;
use super::nodes::{classify_nodes, NodeSets};
use crate::geometry::{Geometry, Point2, Side, TipFrame};
use crate::{Error, Result};

const NONE: usize = usize::MAX;

/// Which bulk space a scalar basis belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// Displacement: four tip functions per tip node, two components.
    Displacement,
    /// Bulk pressure: two tip functions per tip node.
    Pressure,
}

impl Field {
    pub fn n_tip_functions(self) -> usize {
        match self {
            Field::Displacement => 4,
            Field::Pressure => 2,
        }
    }
}

/// Scalar DOF map: standard DOFs are node indices, followed by one Heaviside
/// DOF per K_R node and `m` tip DOFs per J_R node.
#[derive(Debug, Clone)]
pub struct ScalarSpace {
    pub field: Field,
    pub n_nodes: usize,
    heaviside: Vec<usize>,
    tip: Vec<usize>,
    pub n_dofs: usize,
}

impl ScalarSpace {
    fn new(field: Field, n_nodes: usize, sets: &NodeSets) -> Self {
        let m = field.n_tip_functions();
        let mut heaviside = vec![NONE; n_nodes];
        let mut tip = vec![NONE; n_nodes];
        let mut next = n_nodes;
        for &i in &sets.heaviside {
            heaviside[i] = next;
            next += 1;
        }
        for &i in &sets.tip {
            tip[i] = next;
            next += m;
        }
        ScalarSpace { field, n_nodes, heaviside, tip, n_dofs: next }
    }

    pub fn heaviside_dof(&self, node: usize) -> Option<usize> {
        (self.heaviside[node] != NONE).then_some(self.heaviside[node])
    }

    /// First of the `m` tip DOFs of `node`.
    pub fn tip_dof(&self, node: usize) -> Option<usize> {
        (self.tip[node] != NONE).then_some(self.tip[node])
    }

    /// All scalar DOFs attached to `node`.
    pub fn node_dofs(&self, node: usize) -> Vec<usize> {
        let mut d = vec![node];
        d.extend(self.heaviside_dof(node));
        if let Some(t) = self.tip_dof(node) {
            d.extend(t..t + self.field.n_tip_functions());
        }
        d
    }

    pub fn is_enriched(&self, node: usize) -> bool {
        self.heaviside[node] != NONE || self.tip[node] != NONE
    }
}

/// Basis values on one element at one point, in element-DOF order.
#[derive(Debug, Clone, Default)]
pub struct ElementBasis {
    pub dofs: Vec<usize>,
    pub values: Vec<f64>,
    pub grads: Vec<Point2>,
}

impl ElementBasis {
    fn clear(&mut self) {
        self.dofs.clear();
        self.values.clear();
        self.grads.clear();
    }

    fn push(&mut self, d: usize, v: f64, g: Point2) {
        self.dofs.push(d);
        self.values.push(v);
        self.grads.push(g);
    }
}

/// Jump and average of the basis functions at a point of Σ: `(dof, value)`.
#[derive(Debug, Clone, Default)]
pub struct TraceBasis {
    pub jump: Vec<(usize, f64)>,
    pub average: Vec<(usize, f64)>,
}

/// DOF maps of the enriched displacement and pressure spaces and the P1
/// fracture space.
#[derive(Debug, Clone)]
pub struct EnrichedSpace {
    pub geom: Geometry,
    pub sets: NodeSets,
    pub frame: Option<TipFrame>,
    pub displacement: ScalarSpace,
    pub pressure: ScalarSpace,
    pub n_fracture: usize,
}

impl EnrichedSpace {
    pub fn new(geom: Geometry, radius: f64) -> Self {
        let sets = classify_nodes(&geom, radius);
        let n = geom.bulk.n_vertices();
        let frame = geom.tip_frame();
        let n_fracture = geom.fracture.as_ref().map_or(0, |f| f.n_vertices());
        EnrichedSpace {
            displacement: ScalarSpace::new(Field::Displacement, n, &sets),
            pressure: ScalarSpace::new(Field::Pressure, n, &sets),
            geom,
            sets,
            frame,
            n_fracture,
        }
    }

    pub fn scalar(&self, field: Field) -> &ScalarSpace {
        match field {
            Field::Displacement => &self.displacement,
            Field::Pressure => &self.pressure,
        }
    }

    /// Number of displacement DOFs, 2·(N + |K_R| + 4|J_R|).
    pub fn n_displacement_dofs(&self) -> usize {
        2 * self.displacement.n_dofs
    }

    /// Number of bulk pressure DOFs, N + |K_R| + 2|J_R|.
    pub fn n_pressure_dofs(&self) -> usize {
        self.pressure.n_dofs
    }

    pub fn n_fracture_dofs(&self) -> usize {
        self.n_fracture
    }

    /// Whether any node of element `e` carries enrichment.
    pub fn element_enriched(&self, e: usize) -> bool {
        self.geom.bulk.triangles[e].iter().any(|&n| self.pressure.is_enriched(n))
    }

    /// Scalar DOFs of element `e` in basis order.
    pub fn element_dofs(&self, field: Field, e: usize) -> Vec<usize> {
        self.geom.bulk.triangles[e].iter().flat_map(|&n| self.scalar(field).node_dofs(n)).collect()
    }

    /// Evaluates the scalar basis of `field` on element `e` at `x`, with the
    /// Heaviside value taken from `side`.
    pub fn eval_basis(&self, field: Field, e: usize, x: Point2, side: Side, out: &mut ElementBasis) {
        out.clear();
        let space = self.scalar(field);
        let lam = self.geom.bulk.barycentric(e, x);
        let grads = self.geom.bulk.hat_gradients(e);
        let h = side.heaviside();
        let plus = side != Side::Minus;
        let tipvals = match self.frame {
            Some(f) if self.geom.bulk.triangles[e].iter().any(|&n| space.tip[n] != NONE) => {
                Some(eval_tip_functions(&f, x, plus))
            }
            _ => None,
        };
        for (a, &n) in self.geom.bulk.triangles[e].iter().enumerate() {
            let (phi, dphi) = (lam[a], grads[a]);
            out.push(n, phi, dphi);
            if let Some(d) = space.heaviside_dof(n) {
                out.push(d, h * phi, dphi * h);
            }
            if let (Some(d), Some((f, g))) = (space.tip_dof(n), tipvals.as_ref()) {
                for j in 0..space.field.n_tip_functions() {
                    out.push(d + j, f[j] * phi, dphi * f[j] + g[j] * phi);
                }
            }
        }
    }

    /// Closed-form jump and average of the basis on element `e` at a point of
    /// Σ: Heaviside gives 2φ, the first tip function 2√r·φ, the others no
    /// jump; only standard DOFs contribute to the average.
    pub fn trace_basis(&self, field: Field, e: usize, x: Point2, out: &mut TraceBasis) {
        out.jump.clear();
        out.average.clear();
        let space = self.scalar(field);
        let lam = self.geom.bulk.barycentric(e, x);
        let sr = self.frame.map_or(0.0, |f| x.dist(f.tip).sqrt());
        for (a, &n) in self.geom.bulk.triangles[e].iter().enumerate() {
            out.average.push((n, lam[a]));
            if let Some(d) = space.heaviside_dof(n) {
                out.jump.push((d, 2.0 * lam[a]));
            }
            if let Some(d) = space.tip_dof(n) {
                out.jump.push((d, 2.0 * sr * lam[a]));
            }
        }
    }

    fn resolve_side(&self, x: Point2, side: Option<Side>) -> Result<Side> {
        match side.unwrap_or_else(|| self.geom.classify_side(x)) {
            Side::OnExtension => Err(Error::OnInterface(x)),
            s => Ok(s),
        }
    }

    /// Value and gradient of a bulk pressure field.
    pub fn eval_pressure(&self, coeffs: &[f64], e: usize, x: Point2, side: Option<Side>) -> Result<(f64, Point2)> {
        let side = self.resolve_side(x, side)?;
        let mut b = ElementBasis::default();
        self.eval_basis(Field::Pressure, e, x, side, &mut b);
        let mut v = 0.0;
        let mut g = Point2::default();
        for k in 0..b.dofs.len() {
            let c = coeffs[b.dofs[k]];
            v += c * b.values[k];
            g += b.grads[k] * c;
        }
        Ok((v, g))
    }

    /// Value and gradient (`grad[α] = ∇u_α`) of a displacement field.
    pub fn eval_displacement(
        &self,
        coeffs: &[f64],
        e: usize,
        x: Point2,
        side: Option<Side>,
    ) -> Result<([f64; 2], [Point2; 2])> {
        let side = self.resolve_side(x, side)?;
        let mut b = ElementBasis::default();
        self.eval_basis(Field::Displacement, e, x, side, &mut b);
        let mut v = [0.0; 2];
        let mut g = [Point2::default(); 2];
        for k in 0..b.dofs.len() {
            for a in 0..2 {
                let c = coeffs[2 * b.dofs[k] + a];
                v[a] += c * b.values[k];
                g[a] += b.grads[k] * c;
            }
        }
        Ok((v, g))
    }

    /// Locates the point of Σ at arc length `s`: (element, point, segment, t).
    pub fn locate_on_fracture(&self, s: f64) -> Result<(usize, Point2, usize, f64)> {
        let frac = self.geom.fracture.as_ref().ok_or(Error::OffFracture(s))?;
        let total = frac.total_length();
        let tol = 1e-12 * total;
        if s < -tol || s > total + tol {
            return Err(Error::OffFracture(s));
        }
        let (seg, t) = frac.locate(s).ok_or(Error::OffFracture(s))?;
        let v = &self.geom.cut.fracture_vertices;
        let x = v[seg].lerp(v[seg + 1], t);
        let chords = self.geom.cut.chords();
        let e = chords
            .iter()
            .find(|(_, c)| c.segment == seg && s >= c.s0 - tol && s <= c.s1 + tol)
            .map(|(e, _)| *e)
            .ok_or(Error::OffFracture(s))?;
        Ok((e, x, seg, t))
    }

    /// Jump and average of a pressure field at arc length `s`.
    pub fn pressure_jump_average(&self, coeffs: &[f64], s: f64) -> Result<(f64, f64)> {
        let (e, x, _, _) = self.locate_on_fracture(s)?;
        let mut tb = TraceBasis::default();
        self.trace_basis(Field::Pressure, e, x, &mut tb);
        let jump = tb.jump.iter().map(|(d, v)| coeffs[*d] * v).sum();
        let avg = tb.average.iter().map(|(d, v)| coeffs[*d] * v).sum();
        Ok((jump, avg))
    }

    /// Jump and average vectors of a displacement field at arc length `s`.
    pub fn displacement_jump_average(&self, coeffs: &[f64], s: f64) -> Result<([f64; 2], [f64; 2])> {
        let (e, x, _, _) = self.locate_on_fracture(s)?;
        Ok(self.displacement_trace_at(coeffs, e, x))
    }

    /// Jump and average of a displacement field at a point `x` of Σ in element `e`.
    pub fn displacement_trace_at(&self, coeffs: &[f64], e: usize, x: Point2) -> ([f64; 2], [f64; 2]) {
        let mut tb = TraceBasis::default();
        self.trace_basis(Field::Displacement, e, x, &mut tb);
        let mut jump = [0.0; 2];
        let mut avg = [0.0; 2];
        for a in 0..2 {
            jump[a] = tb.jump.iter().map(|(d, v)| coeffs[2 * d + a] * v).sum();
            avg[a] = tb.average.iter().map(|(d, v)| coeffs[2 * d + a] * v).sum();
        }
        (jump, avg)
    }

    /// Value of a P1 fracture field at arc length `s`.
    pub fn eval_fracture(&self, coeffs: &[f64], s: f64) -> Result<f64> {
        let frac = self.geom.fracture.as_ref().ok_or(Error::OffFracture(s))?;
        let (seg, t) = frac.locate(s).ok_or(Error::OffFracture(s))?;
        Ok((1.0 - t) * coeffs[seg] + t * coeffs[seg + 1])
    }
}
