use crate::geometry::{signed_area, Point2};

/// Gauss–Legendre rule with `n` points on [0, 1]. Exact for degree 2n − 1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "gauss_legendre needs n > 0");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// Symmetric triangle rule in barycentric form `(l1, l2, l3, w)`, weights
/// summing to one. Orders 1, 2, 4 and 5 are tabulated; higher orders use a
/// collapsed Gauss product rule.
pub fn triangle_rule(order: u32) -> Vec<([f64; 3], f64)> {
    match order {
        0 | 1 => vec![([1.0 / 3.0; 3], 1.0)],
        2 => {
            let (a, b) = (1.0 / 6.0, 2.0 / 3.0);
            vec![([b, a, a], 1.0 / 3.0), ([a, b, a], 1.0 / 3.0), ([a, a, b], 1.0 / 3.0)]
        }
        3 | 4 => {
            let mut r = Vec::with_capacity(6);
            for (a, w) in [(0.445948490915965, 0.223381589678011), (0.091576213509771, 0.109951743655322)] {
                let b = 1.0 - 2.0 * a;
                r.extend_from_slice(&[([b, a, a], w), ([a, b, a], w), ([a, a, b], w)]);
            }
            r
        }
        5 => {
            let mut r = vec![([1.0 / 3.0; 3], 0.225)];
            for (a, w) in [(0.470142064105115, 0.132394152788506), (0.101286507323456, 0.125939180544827)] {
                let b = 1.0 - 2.0 * a;
                r.extend_from_slice(&[([b, a, a], w), ([a, b, a], w), ([a, a, b], w)]);
            }
            r
        }
        _ => {
            let n = (order as usize + 3) / 2;
            let (x, w) = gauss_legendre(n);
            let mut r = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    // (u, v) ∈ [0,1]² -> (1 − u, u(1 − v), uv), Jacobian u
                    let (u, v) = (x[i], x[j]);
                    r.push(([1.0 - u, u * (1.0 - v), u * v], 2.0 * u * w[i] * w[j]));
                }
            }
            r
        }
    }
}

/// Maps a barycentric rule onto the physical triangle.
pub fn map_triangle(rule: &[([f64; 3], f64)], tri: [Point2; 3]) -> impl Iterator<Item = (Point2, f64)> + '_ {
    let area = signed_area(tri[0], tri[1], tri[2]).abs();
    rule.iter().map(move |(l, w)| (tri[0] * l[0] + tri[1] * l[1] + tri[2] * l[2], w * area))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            for d in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
                assert!((q - 1.0 / (d as f64 + 1.0)).abs() < 1e-14, "n={n} d={d}");
            }
        }
    }

    fn monomial_integral(i: i32, j: i32) -> f64 {
        // ∫ over the unit reference triangle of x^i y^j = i! j! / (i + j + 2)!
        let f = |n: i32| (1..=n).map(|k| k as f64).product::<f64>();
        f(i) * f(j) / f(i + j + 2)
    }

    #[test]
    fn triangle_rules_are_exact_to_declared_order() {
        let tri = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)];
        for order in [1, 2, 4, 5, 6, 8, 10] {
            let rule = triangle_rule(order);
            assert!(rule.iter().all(|(_, w)| *w > 0.0));
            for i in 0..=order as i32 {
                for j in 0..=(order as i32 - i) {
                    let q: f64 = map_triangle(&rule, tri).map(|(p, w)| w * p.x.powi(i) * p.y.powi(j)).sum();
                    let exact = monomial_integral(i, j);
                    assert!(((q - exact) / exact).abs() < 1e-13, "order {order} x^{i} y^{j}: {q} vs {exact}");
                }
            }
        }
    }
}
