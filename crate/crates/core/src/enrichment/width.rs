use serde::{Deserialize, Serialize};

use super::space::EnrichedSpace;
use crate::geometry::Point2;
use crate::quadrature::InterfaceQuad;

/// Floor applied where the crack width appears in a denominator.
pub const B_MIN: f64 = 1e-12;

/// Discrete crack width b_h on Σ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CrackWidthField {
    /// b_h = [[u_h]]·ν from displacement coefficients.
    Displacement(Vec<f64>),
    /// b = c·√r with r the distance to the tip in meters.
    SqrtProfile { c: f64 },
    Constant(f64),
}

impl CrackWidthField {
    /// Raw (unfloored) width at point `x` of Σ inside element `e`.
    pub fn eval(&self, space: &EnrichedSpace, e: usize, x: Point2, normal: Point2) -> f64 {
        match self {
            CrackWidthField::Displacement(u) => {
                let (jump, _) = space.displacement_trace_at(u, e, x);
                jump[0] * normal.x + jump[1] * normal.y
            }
            CrackWidthField::SqrtProfile { c } => match space.frame {
                Some(f) => c * x.dist(f.tip).sqrt(),
                None => *c,
            },
            CrackWidthField::Constant(b) => *b,
        }
    }

    /// Raw widths at every interface quadrature point, in cell order.
    pub fn at_points(&self, space: &EnrichedSpace, iq: &InterfaceQuad) -> Vec<f64> {
        iq.points().map(|(c, p)| self.eval(space, c.element, p.x, p.normal)).collect()
    }

    /// Minimum and maximum of the raw width over the interface points.
    pub fn range(&self, space: &EnrichedSpace, iq: &InterfaceQuad) -> (f64, f64) {
        self.at_points(space, iq)
            .into_iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| (lo.min(b), hi.max(b)))
    }
}

/// Width used in denominators.
pub fn floored(b: f64) -> f64 {
    b.max(B_MIN)
}
