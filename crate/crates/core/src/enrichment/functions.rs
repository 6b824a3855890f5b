use crate::geometry::{Point2, TipFrame};

/// Values of the four elastic tip functions at polar coordinates (r, Θ):
/// √r·{sin(Θ/2), cos(Θ/2), sin(Θ/2)·sinΘ, cos(Θ/2)·sinΘ}.
pub fn tip_functions(r: f64, theta: f64) -> [f64; 4] {
    let sr = r.sqrt();
    let (s, c) = (0.5 * theta).sin_cos();
    let st = theta.sin();
    [sr * s, sr * c, sr * s * st, sr * c * st]
}

/// Partial derivatives (∂/∂r, ∂/∂Θ) of the four tip functions.
pub fn tip_function_polar_derivatives(r: f64, theta: f64) -> [(f64, f64); 4] {
    let sr = r.sqrt();
    let isr = 0.5 / sr;
    let (s, c) = (0.5 * theta).sin_cos();
    let (st, ct) = theta.sin_cos();
    [
        (isr * s, 0.5 * sr * c),
        (isr * c, -0.5 * sr * s),
        (isr * s * st, sr * (0.5 * c * st + s * ct)),
        (isr * c * st, sr * (-0.5 * s * st + c * ct)),
    ]
}

/// Values and Cartesian gradients of F₁..F₄ at `p`. `plus` selects the face
/// when `p` sits on the branch cut. At the tip the gradients are NaN.
pub fn eval_tip_functions(frame: &TipFrame, p: Point2, plus: bool) -> ([f64; 4], [Point2; 4]) {
    let (r, theta) = frame.coordinates_on_side(p, plus);
    let f = tip_functions(r, theta);
    if r == 0.0 {
        return (f, [Point2::new(f64::NAN, f64::NAN); 4]);
    }
    let (gr, gt) = frame.polar_gradients(p);
    let d = tip_function_polar_derivatives(r, theta);
    (f, d.map(|(dr, dt)| gr * dr + gt * dt))
}

/// Pressure tip functions G₁ = F₁, G₂ = F₂ with gradients.
pub fn eval_pressure_tip_functions(frame: &TipFrame, p: Point2, plus: bool) -> ([f64; 2], [Point2; 2]) {
    let (f, g) = eval_tip_functions(frame, p, plus);
    ([f[0], f[1]], [g[0], g[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reference_values() {
        let f = tip_functions(1.0, PI);
        assert!((f[0] - 1.0).abs() < 1e-15);
        assert!(f[1].abs() < 1e-15 && f[2].abs() < 1e-15 && f[3].abs() < 1e-15);
        let f = tip_functions(4.0, 0.0);
        assert_eq!(f, [0.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn gradients_match_central_differences() {
        let frame = TipFrame::new(Point2::new(0.5, 0.0), Point2::new(1.0, 0.0));
        let theta = PI / 3.0;
        let p = frame.tip + Point2::new(theta.cos(), theta.sin());
        let (_, g) = eval_tip_functions(&frame, p, true);
        let h = 1e-6;
        for j in 0..4 {
            let fd_x = (eval_tip_functions(&frame, p + Point2::new(h, 0.0), true).0[j]
                - eval_tip_functions(&frame, p - Point2::new(h, 0.0), true).0[j])
                / (2.0 * h);
            let fd_y = (eval_tip_functions(&frame, p + Point2::new(0.0, h), true).0[j]
                - eval_tip_functions(&frame, p - Point2::new(0.0, h), true).0[j])
                / (2.0 * h);
            let scale = g[j].norm().max(1e-3);
            assert!((fd_x - g[j].x).abs() < 1e-6 * scale, "F{} x", j + 1);
            assert!((fd_y - g[j].y).abs() < 1e-6 * scale, "F{} y", j + 1);
        }
    }

    #[test]
    fn only_first_function_jumps() {
        for r in [0.01, 0.3, 2.0] {
            let up = tip_functions(r, PI);
            let down = tip_functions(r, -PI);
            assert!((up[0] - down[0] - 2.0 * r.sqrt()).abs() < 1e-14);
            for j in 1..4 {
                assert!((up[j] - down[j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn tip_gradient_is_flagged() {
        let frame = TipFrame::new(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0));
        let (f, g) = eval_tip_functions(&frame, frame.tip, true);
        assert_eq!(f, [0.0, 0.0, 0.0, 0.0]);
        assert!(g.iter().all(|v| !v.x.is_finite()));
    }
}
