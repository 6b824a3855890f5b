use log::warn;

use super::fracture::FractureMesh;
use super::mesh::BulkMesh;
use super::point::{segment_distance, Point2};
use super::side::ExtendedFracture;
use crate::{Error, Result};

/// Piece of one fracture segment inside one bulk triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub a: Point2,
    pub b: Point2,
    /// Fracture segment the chord belongs to.
    pub segment: usize,
    /// Arc-length parameters of `a` and `b` (s0 < s1).
    pub s0: f64,
    pub s1: f64,
    pub ends_at_tip: bool,
}

impl Chord {
    pub fn length(&self) -> f64 {
        self.s1 - self.s0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    Uncut,
    Cut,
    Tip,
}

/// Intersection of one bulk triangle with the fracture.
#[derive(Debug, Clone)]
pub struct ElementCut {
    pub kind: CutKind,
    /// Pieces of Σ inside the triangle, ordered by arc length.
    pub chords: Vec<Chord>,
    /// Connected pieces of the extended fracture Σ̃ crossing the triangle,
    /// each running from boundary to boundary; used to split volume rules.
    pub crossings: Vec<Vec<Point2>>,
}

/// Cut topology of a bulk mesh with respect to a fracture.
#[derive(Debug, Clone)]
pub struct CutInfo {
    pub elements: Vec<ElementCut>,
    pub tip_element: Option<usize>,
    /// Extended fracture used for side classification (perturbed if needed).
    pub extended: ExtendedFracture,
    /// Working fracture vertices (perturbed copy of the input).
    pub fracture_vertices: Vec<Point2>,
    /// Translation applied to dodge degenerate intersections.
    pub perturbation: Option<Point2>,
    pub eps: f64,
}

impl CutInfo {
    pub fn tip(&self, fracture: &FractureMesh) -> Option<Point2> {
        fracture.has_tip.then(|| *self.fracture_vertices.last().unwrap())
    }

    /// All chords in arc-length order.
    pub fn chords(&self) -> Vec<(usize, Chord)> {
        let mut all: Vec<(usize, Chord)> =
            self.elements.iter().enumerate().flat_map(|(e, c)| c.chords.iter().map(move |ch| (e, *ch))).collect();
        all.sort_by(|x, y| x.1.s0.total_cmp(&y.1.s0));
        all
    }

    pub fn cut_elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().enumerate().filter(|(_, c)| c.kind != CutKind::Uncut).map(|(e, _)| e)
    }
}

/// Geometric tolerance for a mesh: 1e−10 × domain diameter.
pub fn geometric_tolerance(mesh: &BulkMesh) -> f64 {
    1e-10 * mesh.domain_diameter()
}

/// Parameter interval of segment [a, b] inside the closed triangle, if any.
pub fn clip_segment(a: Point2, b: Point2, tri: [Point2; 3]) -> Option<(f64, f64)> {
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    for k in 0..3 {
        let (p, q) = (tri[k], tri[(k + 1) % 3]);
        let e = q - p;
        let fa = e.cross(a - p);
        let fb = e.cross(b - p);
        if fa < 0.0 && fb < 0.0 {
            return None;
        }
        if fa < 0.0 {
            t0 = t0.max(fa / (fa - fb));
        } else if fb < 0.0 {
            t1 = t1.min(fa / (fa - fb));
        }
    }
    (t0 <= t1).then_some((t0, t1))
}

/// Computes the cut topology. Σ̃ passing within ε of a bulk vertex, or the
/// tip within ε of a bulk edge, triggers a small translation of the working
/// fracture copy (logged and recorded in [`CutInfo::perturbation`]).
pub fn cut_topology(bulk: &BulkMesh, frac: &FractureMesh) -> Result<CutInfo> {
    let eps = geometric_tolerance(bulk);
    let reach = 4.0 * bulk.domain_diameter();
    let base = ExtendedFracture::new(frac, reach, eps);

    for (i, &v) in frac.vertices.iter().enumerate() {
        let inside = (0..bulk.n_triangles()).any(|e| {
            let l = bulk.barycentric(e, v);
            l.iter().all(|&x| x >= -1e-9)
        });
        if !inside {
            return Err(Error::Geometry(format!("fracture vertex {i} ({}, {}) lies outside the bulk mesh", v.x, v.y)));
        }
    }

    let n = frac.normal(0);
    let t = frac.tangent(0);
    let mut offset: Option<Point2> = None;
    for attempt in 0..6 {
        let shift = offset.unwrap_or_default();
        let ext = base.translated(shift);
        let tip = frac.tip().map(|p| p + shift);
        if !is_degenerate(bulk, &ext, tip, eps) {
            if let Some(o) = offset {
                warn!("fracture perturbed by ({:e}, {:e}) to avoid degenerate cuts", o.x, o.y);
            }
            return Ok(build(bulk, frac, ext, shift, offset, eps));
        }
        let mag = 10.0 * eps * 3f64.powi(attempt);
        offset = Some((n + t * 0.37) * mag);
    }
    Err(Error::Geometry("could not resolve degenerate fracture/mesh intersection".into()))
}

fn is_degenerate(bulk: &BulkMesh, ext: &ExtendedFracture, tip: Option<Point2>, eps: f64) -> bool {
    if bulk.vertices.iter().any(|&v| ext.distance(v) <= eps) {
        return true;
    }
    if let Some(tip) = tip {
        for e in 0..bulk.n_triangles() {
            let c = bulk.corners(e);
            for k in 0..3 {
                if segment_distance(tip, c[k], c[(k + 1) % 3]).0 <= eps {
                    return true;
                }
            }
        }
    }
    false
}

fn build(
    bulk: &BulkMesh,
    frac: &FractureMesh,
    extended: ExtendedFracture,
    shift: Point2,
    perturbation: Option<Point2>,
    eps: f64,
) -> CutInfo {
    let verts: Vec<Point2> = frac.vertices.iter().map(|&v| v + shift).collect();
    let arc = frac.arc_lengths();
    let tip = frac.has_tip.then(|| *verts.last().unwrap());
    let tip_element = tip.and_then(|p| (0..bulk.n_triangles()).find(|&e| bulk.contains(e, p, 0.0)));

    let mut elements: Vec<ElementCut> = (0..bulk.n_triangles())
        .map(|_| ElementCut { kind: CutKind::Uncut, chords: Vec::new(), crossings: Vec::new() })
        .collect();

    let bboxes: Vec<(Point2, Point2)> = (0..bulk.n_triangles()).map(|e| bbox(&bulk.corners(e))).collect();
    let last_segment = frac.n_segments() - 1;
    for i in 0..frac.n_segments() {
        let (a, b) = (verts[i], verts[i + 1]);
        let len = frac.length(i);
        let sb = bbox(&[a, b]);
        for (e, bb) in bboxes.iter().enumerate() {
            if !overlaps(bb, &sb) {
                continue;
            }
            if let Some((t0, t1)) = clip_segment(a, b, bulk.corners(e)) {
                if (t1 - t0) * len > eps {
                    elements[e].chords.push(Chord {
                        a: a.lerp(b, t0),
                        b: a.lerp(b, t1),
                        segment: i,
                        s0: arc[i] + t0 * len,
                        s1: arc[i] + t1 * len,
                        ends_at_tip: frac.has_tip && i == last_segment && t1 == 1.0,
                    });
                }
            }
        }
    }

    for (e, bb) in bboxes.iter().enumerate() {
        let cell = &mut elements[e];
        cell.chords.sort_by(|x, y| x.s0.total_cmp(&y.s0));
        if Some(e) == tip_element {
            cell.kind = CutKind::Tip;
        } else if !cell.chords.is_empty() {
            cell.kind = CutKind::Cut;
        }
        let tri = bulk.corners(e);
        let mut pieces: Vec<Vec<Point2>> = Vec::new();
        let mut last_end: Option<usize> = None;
        for s in 0..extended.n_segments() {
            let (a, b) = extended.segment(s);
            if !overlaps(bb, &bbox(&[a, b])) {
                continue;
            }
            if let Some((t0, t1)) = clip_segment(a, b, tri) {
                if (t1 - t0) * a.dist(b) <= eps {
                    continue;
                }
                let (p, q) = (a.lerp(b, t0), a.lerp(b, t1));
                match (pieces.last_mut(), last_end) {
                    (Some(piece), Some(prev)) if prev + 1 == s && t0 == 0.0 => piece.push(q),
                    _ => pieces.push(vec![p, q]),
                }
                last_end = (t1 == 1.0).then_some(s);
                if t1 < 1.0 {
                    last_end = None;
                }
            } else {
                last_end = None;
            }
        }
        cell.crossings = pieces;
    }

    CutInfo { elements, tip_element, extended, fracture_vertices: verts, perturbation, eps }
}

fn bbox(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn overlaps(a: &(Point2, Point2), b: &(Point2, Point2)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

impl CutInfo {
    /// Cut info for a mesh without a fracture: every triangle uncut.
    pub fn empty(bulk: &BulkMesh) -> CutInfo {
        let eps = geometric_tolerance(bulk);
        CutInfo {
            elements: (0..bulk.n_triangles())
                .map(|_| ElementCut { kind: CutKind::Uncut, chords: Vec::new(), crossings: Vec::new() })
                .collect(),
            tip_element: None,
            extended: ExtendedFracture { path: Vec::new(), eps },
            fracture_vertices: Vec::new(),
            perturbation: None,
            eps,
        }
    }
}
