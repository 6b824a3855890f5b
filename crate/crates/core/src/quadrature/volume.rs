use std::f64::consts::PI;

use log::{debug, warn};

use super::gauss::{gauss_legendre, map_triangle, triangle_rule};
use super::polygon::{polygon_area, split_polygon, triangulate};
use super::QuadOptions;
use crate::geometry::{segment_distance, signed_area, Geometry, Point2, Side};

/// Volume quadrature point tagged with its side of Σ̃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPoint {
    pub x: Point2,
    pub w: f64,
    pub side: Side,
}

/// Quadrature rule over one bulk element.
#[derive(Debug, Clone, Default)]
pub struct QuadRule {
    pub points: Vec<QuadPoint>,
    /// Polynomial exactness of the underlying sub-triangle rules.
    pub order: u32,
}

impl QuadRule {
    pub fn total_weight(&self) -> f64 {
        self.points.iter().map(|q| q.w).sum()
    }

    pub fn integrate(&self, f: impl Fn(&QuadPoint) -> f64) -> f64 {
        self.points.iter().map(|q| q.w * f(q)).sum()
    }
}

/// Volume rule for element `e`. Elements crossed by Σ̃ are split into
/// sub-polygons, each triangulated and tagged with its side. Sub-triangles
/// touching the crack tip get a graded collapsed rule (no point at r = 0);
/// sub-triangles close to the tip relative to their size are subdivided
/// toward it, so near-singular tip functions stay accurate.
pub fn volume_rule(geom: &Geometry, e: usize, order: u32, opts: &QuadOptions) -> QuadRule {
    let tri = geom.bulk.corners(e);
    let cut = &geom.cut.elements[e];
    let eps = geom.eps();
    let tip = geom.tip_frame().map(|f| f.tip);
    let rules = [triangle_rule(order), triangle_rule(order.max(NEAR_TIP_ORDER))];
    let mut points = Vec::new();
    if cut.crossings.is_empty() {
        let c = (tri[0] + tri[1] + tri[2]) * (1.0 / 3.0);
        let side = match geom.classify_side(c) {
            Side::OnExtension => Side::Plus,
            s => s,
        };
        push_triangle(tri, side, &rules, order, opts, tip, eps, 0, &mut points);
        return QuadRule { points, order };
    }

    let pieces = split_element(geom, e, eps);
    for (poly, side) in pieces {
        let apex = tip.and_then(|t| poly.iter().position(|p| p.dist(t) <= eps));
        for t in triangulate(&poly, apex) {
            let area = signed_area(t[0], t[1], t[2]);
            if area < eps * eps {
                debug!("element {e}: dropping degenerate sub-triangle of area {area:e}");
                continue;
            }
            push_triangle(t, side, &rules, order, opts, tip, eps, 0, &mut points);
        }
    }
    QuadRule { points, order }
}

/// Widest angular piece of a graded tip rule.
const MAX_TIP_ANGLE: f64 = PI / 12.0;

/// Order used on triangles within a few diameters of the tip, where the
/// tip functions are smooth but far from polynomial.
const NEAR_TIP_ORDER: u32 = 12;

/// Subdivision depth limit for triangles near (but not touching) the tip.
const MAX_TIP_DEPTH: u32 = 8;

#[allow(clippy::too_many_arguments)]
fn push_triangle(
    t: [Point2; 3],
    side: Side,
    rules: &[Vec<([f64; 3], f64)>; 2],
    order: u32,
    opts: &QuadOptions,
    tip: Option<Point2>,
    eps: f64,
    depth: u32,
    out: &mut Vec<QuadPoint>,
) {
    let Some(tp) = tip else {
        out.extend(map_triangle(&rules[0], t).map(|(x, w)| QuadPoint { x, w, side }));
        return;
    };
    if let Some(k) = t.iter().position(|p| p.dist(tp) <= eps) {
        let rot = [t[k], t[(k + 1) % 3], t[(k + 2) % 3]];
        out.extend(graded_tip_rule(rot, order, opts.tip_levels).into_iter().map(|(x, w)| QuadPoint { x, w, side }));
        return;
    }
    // tip on an edge: split there so both halves have the tip as a vertex
    if let Some(k) = (0..3).find(|&k| segment_distance(tp, t[k], t[(k + 1) % 3]).0 <= eps) {
        let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
        for half in [[tp, b, c], [tp, c, a]] {
            if signed_area(half[0], half[1], half[2]).abs() > eps * eps {
                push_triangle(half, side, rules, order, opts, tip, eps, depth + 1, out);
            }
        }
        return;
    }
    let diam = t[0].dist(t[1]).max(t[1].dist(t[2])).max(t[2].dist(t[0]));
    let dist = triangle_distance(tp, t);
    if depth >= MAX_TIP_DEPTH || dist >= 2.0 * diam {
        let rule = if dist < 8.0 * diam { &rules[1] } else { &rules[0] };
        out.extend(map_triangle(rule, t).map(|(x, w)| QuadPoint { x, w, side }));
        return;
    }
    let m = [t[0].midpoint(t[1]), t[1].midpoint(t[2]), t[2].midpoint(t[0])];
    for kid in [[t[0], m[0], m[2]], [m[0], t[1], m[1]], [m[2], m[1], t[2]], [m[0], m[1], m[2]]] {
        push_triangle(kid, side, rules, order, opts, tip, eps, depth + 1, out);
    }
}

fn triangle_distance(p: Point2, t: [Point2; 3]) -> f64 {
    let inside = {
        let s = [signed_area(t[0], t[1], p), signed_area(t[1], t[2], p), signed_area(t[2], t[0], p)];
        s.iter().all(|&a| a >= 0.0) || s.iter().all(|&a| a <= 0.0)
    };
    if inside {
        return 0.0;
    }
    (0..3).map(|k| segment_distance(p, t[k], t[(k + 1) % 3]).0).fold(f64::INFINITY, f64::min)
}

/// Splits element `e` along its Σ̃ crossings into side-tagged polygons.
pub fn split_element(geom: &Geometry, e: usize, tol: f64) -> Vec<(Vec<Point2>, Side)> {
    let tri = geom.bulk.corners(e);
    let crossings = &geom.cut.elements[e].crossings;
    if crossings.len() == 1 {
        let (minus, plus) = split_polygon(&tri, &crossings[0], tol);
        return vec![(minus, Side::Minus), (plus, Side::Plus)];
    }
    let mut polys: Vec<Vec<Point2>> = vec![tri.to_vec()];
    for path in crossings {
        let probe = path[0].midpoint(path[1]);
        let Some(k) = polys.iter().position(|p| contains(p, probe, tol)) else {
            warn!("element {e}: crossing not located in any sub-polygon");
            continue;
        };
        let poly = polys.swap_remove(k);
        let (a, b) = split_polygon(&poly, path, tol);
        polys.push(a);
        polys.push(b);
    }
    polys
        .into_iter()
        .filter(|p| p.len() >= 3 && polygon_area(p) > 0.0)
        .map(|p| {
            let side = triangulate(&p, None)
                .into_iter()
                .max_by(|x, y| signed_area(x[0], x[1], x[2]).total_cmp(&signed_area(y[0], y[1], y[2])))
                .map(|t| geom.classify_side((t[0] + t[1] + t[2]) * (1.0 / 3.0)))
                .unwrap_or(Side::Plus);
            let side = if side == Side::OnExtension { Side::Plus } else { side };
            (p, side)
        })
        .collect()
}

fn contains(poly: &[Point2], p: Point2, tol: f64) -> bool {
    // winding test, boundary counts as inside
    let n = poly.len();
    let mut inside = false;
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        if crate::geometry::segment_distance(p, a, b).0 <= tol {
            return true;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Collapsed rule on a triangle with its first vertex at the tip: radial
/// direction graded dyadically `levels` times, each piece mapped with u = w²,
/// angular direction split into pieces of at most π/4.
pub fn graded_tip_rule(tri: [Point2; 3], order: u32, levels: u32) -> Vec<(Point2, f64)> {
    let [v0, v1, v2] = tri;
    let a = v1 - v0;
    let b = v2 - v0;
    let angle = a.cross(b).atan2(a.dot(b)).abs();
    let n_ang = ((angle / MAX_TIP_ANGLE).ceil() as usize).max(1);
    let (gw, ww) = gauss_legendre(order as usize + 2);
    let (gv, wv) = gauss_legendre(order as usize + 2);
    let mut breaks: Vec<f64> = (0..=levels).map(|k| 0.5f64.powi((levels - k) as i32)).collect();
    breaks.insert(0, 0.0);
    let mut out = Vec::new();
    // angular pieces, bisected until each far edge is short compared with
    // its distance to the tip (the far edge may pass close to the tip)
    let mut pieces: Vec<(f64, f64)> = (0..n_ang).map(|j| (angle * j as f64 / n_ang as f64, angle * (j + 1) as f64 / n_ang as f64)).collect();
    let mut k = 0;
    while k < pieces.len() {
        let (a0, a1) = pieces[k];
        let (p1, p2) = (edge_at_angle(v0, v1, v2, a0), edge_at_angle(v0, v1, v2, a1));
        if p1.dist(p2) > 0.5 * p1.dist(v0).min(p2.dist(v0)) && a1 - a0 > MAX_TIP_ANGLE * 0.5f64.powi(MAX_TIP_DEPTH as i32) {
            let m = 0.5 * (a0 + a1);
            pieces[k] = (a0, m);
            pieces.insert(k + 1, (m, a1));
        } else {
            k += 1;
        }
    }
    for (a0, a1) in pieces {
        let p1 = edge_at_angle(v0, v1, v2, a0);
        let p2 = edge_at_angle(v0, v1, v2, a1);
        let area2 = (p1 - v0).cross(p2 - v0);
        if area2 <= 0.0 {
            continue;
        }
        for piece in breaks.windows(2) {
            let (w0, w1) = (piece[0].sqrt(), piece[1].sqrt());
            for (xi, wi) in gw.iter().zip(&ww) {
                let w = w0 + (w1 - w0) * xi;
                let u = w * w;
                let jac_w = 2.0 * w * (w1 - w0) * wi;
                for (vj, wj) in gv.iter().zip(&wv) {
                    let edge = p1.lerp(p2, *vj);
                    let x = v0 + (edge - v0) * u;
                    out.push((x, area2 * u * jac_w * wj));
                }
            }
        }
    }
    out
}

/// Point of edge v1–v2 seen from v0 at angle `phi` from v1.
fn edge_at_angle(v0: Point2, v1: Point2, v2: Point2, phi: f64) -> Point2 {
    let a = v1 - v0;
    let turn = if a.cross(v2 - v0) >= 0.0 { phi } else { -phi };
    let (sin, cos) = turn.sin_cos();
    let d = Point2::new(a.x * cos - a.y * sin, a.x * sin + a.y * cos);
    let denom = (v2 - v1).cross(d);
    if denom == 0.0 {
        return v1;
    }
    let s = (-a.cross(d) / denom).clamp(0.0, 1.0);
    v1.lerp(v2, s)
}
