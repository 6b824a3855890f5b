use super::gauss::gauss_legendre;
use super::QuadOptions;
use crate::geometry::{Geometry, Point2};

/// Quadrature point on Σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfacePoint {
    pub x: Point2,
    /// Arc-length coordinate.
    pub s: f64,
    pub w: f64,
    /// Distance to the crack tip (infinite without a tip).
    pub r: f64,
    pub normal: Point2,
    pub kappa: f64,
    /// Local coordinate in the fracture segment, in [0, 1].
    pub t: f64,
}

/// One piece of Σ lying in a single bulk element and a single fracture segment.
#[derive(Debug, Clone)]
pub struct InterfaceCell {
    pub element: usize,
    pub segment: usize,
    pub s0: f64,
    pub s1: f64,
    pub ends_at_tip: bool,
    pub points: Vec<InterfacePoint>,
}

#[derive(Debug, Clone, Default)]
pub struct InterfaceQuad {
    pub cells: Vec<InterfaceCell>,
}

impl InterfaceQuad {
    pub fn total_weight(&self) -> f64 {
        self.cells.iter().flat_map(|c| c.points.iter()).map(|p| p.w).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = (&InterfaceCell, &InterfacePoint)> {
        self.cells.iter().flat_map(|c| c.points.iter().map(move |p| (c, p)))
    }
}

/// Relative gap below which a chord counts as reaching the tip.
const TIP_GAP: f64 = 1e-3;

/// Gauss points on pieces within a few lengths of the tip.
const NEAR_TIP_POINTS: usize = 8;

/// Bisection limit for cells close to the tip.
const MAX_SPLITS: i32 = 10;

/// Interface quadrature over the common refinement of chord endpoints and
/// fracture vertices. The cell ending at the tip is graded toward it with
/// the substitution d = w² on each dyadic piece; other cells near the tip
/// are bisected until each piece is at most half its distance to the tip.
pub fn interface_quadrature(geom: &Geometry, opts: &QuadOptions) -> InterfaceQuad {
    let Some(frac) = geom.fracture.as_ref() else {
        return InterfaceQuad::default();
    };
    let tip = geom.tip_frame().map(|f| f.tip);
    let arc = frac.arc_lengths();
    let kappa = frac.curvature();
    let total = frac.total_length();
    let (gx, gw) = gauss_legendre(opts.interface_points);
    let (nx, nw) = gauss_legendre(opts.interface_points.max(NEAR_TIP_POINTS));
    let mut cells = Vec::new();
    for (e, ch) in geom.cut.chords() {
        let len = ch.length();
        if len <= geom.eps() {
            continue;
        }
        let seg = ch.segment;
        let seg_len = frac.length(seg);
        let normal = frac.normal(seg);
        let (a, b) = (geom.cut.fracture_vertices[seg], geom.cut.fracture_vertices[seg + 1]);
        let make = |s: f64, w: f64| {
            let t = ((s - arc[seg]) / seg_len).clamp(0.0, 1.0);
            let x = a.lerp(b, t);
            InterfacePoint {
                x,
                s,
                w,
                r: tip.map_or(f64::INFINITY, |tp| x.dist(tp)),
                normal,
                kappa: (1.0 - t) * kappa[seg] + t * kappa[seg + 1],
                t,
            }
        };
        let mut points = Vec::new();
        // a chord stopping just short of the tip (tip on an element edge) is
        // graded as if it reached it
        let gap = if tip.is_some() { (total - ch.s1).max(0.0) } else { f64::INFINITY };
        if ch.ends_at_tip && tip.is_some() || gap <= TIP_GAP * len {
            // d = distance to the tip along Σ
            let levels = opts.tip_levels;
            let mut breaks: Vec<f64> = (0..=levels).map(|k| gap + len * 0.5f64.powi((levels - k) as i32)).collect();
            breaks.insert(0, gap);
            for piece in breaks.windows(2) {
                let (w0, w1) = (piece[0].sqrt(), piece[1].sqrt());
                for (xi, wi) in gx.iter().zip(&gw) {
                    let w = w0 + (w1 - w0) * xi;
                    points.push(make(total - w * w, 2.0 * w * (w1 - w0) * wi));
                }
            }
        } else {
            // pieces no longer than half their distance to the tip
            let mut pieces = vec![(ch.s0, ch.s1)];
            if let Some(tp) = tip {
                let mut k = 0;
                while k < pieces.len() {
                    let (s0, s1) = pieces[k];
                    let t0 = ((s0 - arc[seg]) / seg_len).clamp(0.0, 1.0);
                    let t1 = ((s1 - arc[seg]) / seg_len).clamp(0.0, 1.0);
                    let d = crate::geometry::segment_distance(tp, a.lerp(b, t0), a.lerp(b, t1)).0;
                    if s1 - s0 > 0.5 * d && (s1 - s0) > len * 0.5f64.powi(MAX_SPLITS) {
                        let m = 0.5 * (s0 + s1);
                        pieces[k] = (s0, m);
                        pieces.insert(k + 1, (m, s1));
                    } else {
                        k += 1;
                    }
                }
            }
            for (s0, s1) in pieces {
                let near = tip.is_some_and(|tp| {
                    let d = make(s0, 0.0).x.dist(tp).min(make(s1, 0.0).x.dist(tp));
                    d < 8.0 * (s1 - s0)
                });
                let (x, w) = if near { (&nx, &nw) } else { (&gx, &gw) };
                for (xi, wi) in x.iter().zip(w) {
                    points.push(make(s0 + (s1 - s0) * xi, (s1 - s0) * wi));
                }
            }
        }
        cells.push(InterfaceCell { element: e, segment: seg, s0: ch.s0, s1: ch.s1, ends_at_tip: ch.ends_at_tip, points });
    }
    InterfaceQuad { cells }
}
