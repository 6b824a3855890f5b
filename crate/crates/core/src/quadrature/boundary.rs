use super::gauss::gauss_legendre;
use crate::geometry::{Geometry, Point2, Side};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub x: Point2,
    pub w: f64,
    pub side: Side,
}

/// Gauss rule on boundary edge `k`, split where Σ̃ crosses the edge so every
/// point carries an unambiguous side.
pub fn boundary_rule(geom: &Geometry, k: usize, n: usize) -> Vec<BoundaryPoint> {
    let edge = &geom.bulk.boundary[k];
    let a = geom.bulk.vertices[edge.vertices[0]];
    let b = geom.bulk.vertices[edge.vertices[1]];
    let mut breaks = vec![0.0, 1.0];
    let ext = &geom.cut.extended;
    for i in 0..ext.n_segments() {
        let (p, q) = ext.segment(i);
        let d = b - a;
        let e = q - p;
        let den = d.cross(e);
        if den.abs() < 1e-300 {
            continue;
        }
        let t = (p - a).cross(e) / den;
        let u = (p - a).cross(d) / den;
        if t > 0.0 && t < 1.0 && (0.0..=1.0).contains(&u) {
            breaks.push(t);
        }
    }
    breaks.sort_by(f64::total_cmp);
    let (gx, gw) = gauss_legendre(n);
    let len = a.dist(b);
    let mut out = Vec::new();
    for piece in breaks.windows(2) {
        let (t0, t1) = (piece[0], piece[1]);
        if (t1 - t0) * len <= geom.eps() {
            continue;
        }
        let side = match geom.classify_side(a.lerp(b, 0.5 * (t0 + t1))) {
            Side::OnExtension => Side::Plus,
            s => s,
        };
        for (xi, wi) in gx.iter().zip(&gw) {
            out.push(BoundaryPoint { x: a.lerp(b, t0 + (t1 - t0) * xi), w: wi * (t1 - t0) * len, side });
        }
    }
    out
}
