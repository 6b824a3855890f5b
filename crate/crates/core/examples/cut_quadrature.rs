//! Volume quadrature on the tip element. The gradient of the first tip
//! function has |∇F₁|² = 1/(4r), singular at the tip; its integral over a
//! polygon around the tip has a closed form. The collapsed mapping cancels
//! the 1/r, so the remaining error comes from the angular direction and
//! falls with the rule order.
//!
//! cargo run --example cut_quadrature

use fracflow::benchmark;
use fracflow::geometry::Point2;
use fracflow::quadrature::{volume_rule, QuadOptions};

/// ∫ 1/r over a counter-clockwise polygon containing `tip`: for each edge,
/// d·(asinh(tan φ₁) − asinh(tan φ₀)) with d the distance of the edge line from
/// the tip and φ the angle measured from the foot of the perpendicular.
fn inverse_r_integral(poly: &[Point2], tip: Point2) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|k| {
            let (a, b) = (poly[k] - tip, poly[(k + 1) % n] - tip);
            let t = (b - a).normalized();
            let d = t.cross(a);
            let (s0, s1) = (a.dot(t), b.dot(t));
            d * ((s1 / d).asinh() - (s0 / d).asinh())
        })
        .sum()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = benchmark::geometry(0)?;
    let e = geom.cut.tip_element.expect("benchmark has a tip element");
    let tri = geom.bulk.corners(e);
    let exact = 0.25 * inverse_r_integral(&tri, benchmark::TIP);
    println!("tip element {e}, ∫|∇F1|² = {exact:.12}");
    let opts = QuadOptions::default();
    for order in [1, 2, 4, 6, 8] {
        let rule = volume_rule(&geom, e, order, &opts);
        let approx = rule.integrate(|q| 0.25 / q.x.dist(benchmark::TIP));
        println!("  order {order}: {:4} points, relative error {:.2e}", rule.points.len(), (approx - exact).abs() / exact);
    }
    let area = rule_area(&geom, e);
    println!("area check: rule {:.6} vs triangle {:.6}", area, geom.bulk.area(e));
    Ok(())
}

fn rule_area(geom: &fracflow::geometry::Geometry, e: usize) -> f64 {
    let opts = QuadOptions::default();
    volume_rule(geom, e, opts.cut_order, &opts).total_weight()
}
