use super::point::{segment_distance, Point2};
use crate::{Error, Result};

/// Polyline discretization of the fracture midsurface.
///
/// Vertices are ordered from the fracture start towards the tip; when the
/// fracture has a tip inside the domain it is the last vertex. The unit normal
/// of a segment is its tangent rotated counter-clockwise, so the `+` side of
/// the fracture lies to the left when walking towards the tip.
#[derive(Debug, Clone)]
pub struct FractureMesh {
    pub vertices: Vec<Point2>,
    /// Whether the last vertex is a crack tip interior to the bulk domain.
    pub has_tip: bool,
    /// Boundary tags of the start and end vertex.
    pub end_tags: [String; 2],
    pub level: u32,
}

impl FractureMesh {
    pub fn new(vertices: Vec<Point2>, has_tip: bool, end_tags: [String; 2]) -> Result<Self> {
        let f = FractureMesh { vertices, has_tip, end_tags, level: 0 };
        f.validate()?;
        Ok(f)
    }

    /// Straight fracture from `a` to `b` split into `n` equal segments.
    pub fn straight(a: Point2, b: Point2, n: usize, has_tip: bool, end_tags: [String; 2]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Geometry("fracture needs at least one segment".into()));
        }
        let vertices = (0..=n).map(|i| a.lerp(b, i as f64 / n as f64)).collect();
        FractureMesh::new(vertices, has_tip, end_tags)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() < 2 {
            return Err(Error::Geometry("fracture polyline needs two vertices".into()));
        }
        for i in 0..self.n_segments() {
            if self.length(i) <= 0.0 {
                return Err(Error::Geometry(format!("fracture segment {i} has zero length")));
            }
        }
        // simple polyline: non-adjacent segments must not intersect
        for i in 0..self.n_segments() {
            for j in i + 2..self.n_segments() {
                let (a, b) = self.segment(i);
                let (c, d) = self.segment(j);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::Geometry(format!("fracture segments {i} and {j} intersect")));
                }
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn segment(&self, i: usize) -> (Point2, Point2) {
        (self.vertices[i], self.vertices[i + 1])
    }

    pub fn length(&self, i: usize) -> f64 {
        self.vertices[i].dist(self.vertices[i + 1])
    }

    pub fn total_length(&self) -> f64 {
        (0..self.n_segments()).map(|i| self.length(i)).sum()
    }

    /// Mesh size h^Σ (longest segment).
    pub fn h(&self) -> f64 {
        (0..self.n_segments()).map(|i| self.length(i)).fold(0.0, f64::max)
    }

    pub fn tangent(&self, i: usize) -> Point2 {
        let (a, b) = self.segment(i);
        (b - a).normalized()
    }

    pub fn normal(&self, i: usize) -> Point2 {
        self.tangent(i).perp()
    }

    /// Cumulative arc length at each vertex.
    pub fn arc_lengths(&self) -> Vec<f64> {
        let mut s = Vec::with_capacity(self.n_vertices());
        let mut acc = 0.0;
        s.push(0.0);
        for i in 0..self.n_segments() {
            acc += self.length(i);
            s.push(acc);
        }
        s
    }

    pub fn tip(&self) -> Option<Point2> {
        self.has_tip.then(|| *self.vertices.last().unwrap())
    }

    /// Discrete curvature κ = div_τ ν at every vertex, from the circle through
    /// each vertex and its two neighbours. End vertices copy their neighbour;
    /// collinear triples give exactly zero.
    pub fn curvature(&self) -> Vec<f64> {
        let n = self.n_vertices();
        let mut k = vec![0.0; n];
        for i in 1..n.saturating_sub(1) {
            let (a, b, c) = (self.vertices[i - 1], self.vertices[i], self.vertices[i + 1]);
            let cr = (b - a).cross(c - b);
            if cr != 0.0 {
                // left normal points to the centre of a left-turning arc, so div ν < 0 there
                k[i] = -2.0 * cr / (a.dist(b) * b.dist(c) * a.dist(c));
            }
        }
        if n > 2 {
            k[0] = k[1];
            k[n - 1] = k[n - 2];
        }
        k
    }

    /// Segment index and local parameter of the point at arc length `s`.
    pub fn locate(&self, s: f64) -> Option<(usize, f64)> {
        let total = self.total_length();
        let tol = 1e-12 * total.max(1.0);
        if s < -tol || s > total + tol {
            return None;
        }
        let mut acc = 0.0;
        for i in 0..self.n_segments() {
            let l = self.length(i);
            if s <= acc + l || i + 1 == self.n_segments() {
                return Some((i, ((s - acc) / l).clamp(0.0, 1.0)));
            }
            acc += l;
        }
        None
    }

    pub fn point_at(&self, s: f64) -> Option<Point2> {
        self.locate(s).map(|(i, t)| {
            let (a, b) = self.segment(i);
            a.lerp(b, t)
        })
    }

    /// Arc length of the closest point on the polyline and the distance to it.
    pub fn project(&self, p: Point2) -> (f64, f64) {
        let s0 = self.arc_lengths();
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..self.n_segments() {
            let (a, b) = self.segment(i);
            let (d, t) = segment_distance(p, a, b);
            if d < best.0 {
                best = (d, s0[i] + t * self.length(i));
            }
        }
        (best.1, best.0)
    }

    /// Splits every segment in two.
    pub fn refine_uniform(&self) -> FractureMesh {
        let mut vertices = Vec::with_capacity(2 * self.n_vertices() - 1);
        for i in 0..self.n_segments() {
            let (a, b) = self.segment(i);
            vertices.push(a);
            vertices.push(a.midpoint(b));
        }
        vertices.push(*self.vertices.last().unwrap());
        FractureMesh { vertices, has_tip: self.has_tip, end_tags: self.end_tags.clone(), level: self.level + 1 }
    }
}

fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o = |p: Point2, q: Point2, r: Point2| (q - p).cross(r - p);
    let (d1, d2, d3, d4) = (o(c, d, a), o(c, d, b), o(a, b, c), o(a, b, d));
    ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0)) && d1 != 0.0 && d2 != 0.0 && d3 != 0.0 && d4 != 0.0
}
