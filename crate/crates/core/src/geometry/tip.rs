use std::f64::consts::PI;

use super::point::Point2;

/// Polar frame at the crack tip. Θ = 0 points along the tangential extension
/// of the fracture and Θ = ±π on the two fracture faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TipFrame {
    pub tip: Point2,
    /// Unit tangent of the fracture extension at the tip.
    pub direction: Point2,
}

impl TipFrame {
    pub fn new(tip: Point2, direction: Point2) -> Self {
        TipFrame { tip, direction: direction.normalized() }
    }

    /// Polar coordinates `(r, Θ)` of `p`, Θ ∈ (−π, π]. The tip itself maps to
    /// `(0, 0)`. The branch cut is the ray behind the tip (the fracture side).
    pub fn coordinates(&self, p: Point2) -> (f64, f64) {
        let d = p - self.tip;
        let r = d.norm();
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let along = d.dot(self.direction);
        let across = self.direction.cross(d);
        if across == 0.0 && along < 0.0 {
            // exactly on the cut (including −0.0): report the (−π, π] end
            return (r, PI);
        }
        (r, across.atan2(along))
    }

    /// Polar coordinates with Θ forced onto the given face when the point sits
    /// on the branch cut (`plus` selects Θ = +π).
    pub fn coordinates_on_side(&self, p: Point2, plus: bool) -> (f64, f64) {
        let (r, theta) = self.coordinates(p);
        if theta.abs() > PI - 1e-12 {
            (r, if plus { PI } else { -PI })
        } else {
            (r, theta)
        }
    }

    /// Derivatives of (r, Θ) with respect to Cartesian coordinates.
    pub fn polar_gradients(&self, p: Point2) -> (Point2, Point2) {
        let d = p - self.tip;
        let r2 = d.norm_sq();
        let r = r2.sqrt();
        (d * (1.0 / r), d.perp() * (1.0 / r2))
    }
}
