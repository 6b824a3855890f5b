use super::fracture::FractureMesh;
use super::point::{segment_distance, Point2};

/// Side of the extended fracture Σ̃ = Σ ∪ Σ_e.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
    /// Within the geometric tolerance of Σ̃; the caller must pick a side.
    OnExtension,
}

impl Side {
    /// Value of the Heaviside function H (−1 on Ω⁻, +1 elsewhere).
    pub fn heaviside(self) -> f64 {
        match self {
            Side::Minus => -1.0,
            _ => 1.0,
        }
    }

    pub fn from_sign(s: f64) -> Side {
        if s < 0.0 {
            Side::Minus
        } else {
            Side::Plus
        }
    }
}

/// The fracture polyline extended by straight rays past both ends, splitting
/// the domain into Ω⁺ (left of the walking direction) and Ω⁻.
#[derive(Debug, Clone)]
pub struct ExtendedFracture {
    /// Path vertices: ray start, fracture vertices, ray end.
    pub path: Vec<Point2>,
    /// Geometric tolerance ε_geom.
    pub eps: f64,
}

impl ExtendedFracture {
    /// `reach` must exceed the domain diameter so both rays leave the domain.
    pub fn new(fracture: &FractureMesh, reach: f64, eps: f64) -> Self {
        let n = fracture.n_vertices();
        let first = fracture.vertices[0] - fracture.tangent(0) * reach;
        let last = fracture.vertices[n - 1] + fracture.tangent(fracture.n_segments() - 1) * reach;
        let mut path = Vec::with_capacity(n + 2);
        path.push(first);
        path.extend_from_slice(&fracture.vertices);
        path.push(last);
        ExtendedFracture { path, eps }
    }

    pub fn translated(&self, offset: Point2) -> Self {
        ExtendedFracture { path: self.path.iter().map(|&p| p + offset).collect(), eps: self.eps }
    }

    pub fn n_segments(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    pub fn segment(&self, i: usize) -> (Point2, Point2) {
        (self.path[i], self.path[i + 1])
    }

    fn normal(&self, i: usize) -> Point2 {
        let (a, b) = self.segment(i);
        (b - a).normalized().perp()
    }

    /// Distance from `p` to Σ̃.
    pub fn distance(&self, p: Point2) -> f64 {
        (0..self.n_segments())
            .map(|i| {
                let (a, b) = self.segment(i);
                segment_distance(p, a, b).0
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Classifies `p` by the pseudo-normal at its closest point on Σ̃.
    /// Without a fracture every point is on the `+` side.
    pub fn classify(&self, p: Point2) -> Side {
        if self.path.len() < 2 {
            return Side::Plus;
        }
        let mut best = (f64::INFINITY, 0, 0.0);
        for i in 0..self.n_segments() {
            let (a, b) = self.segment(i);
            let (d, t) = segment_distance(p, a, b);
            if d < best.0 {
                best = (d, i, t);
            }
        }
        let (d, i, t) = best;
        if d <= self.eps {
            return Side::OnExtension;
        }
        let (a, b) = self.segment(i);
        let q = a.lerp(b, t);
        let mut n = self.normal(i);
        if t >= 1.0 && i + 1 < self.n_segments() {
            n += self.normal(i + 1);
        } else if t <= 0.0 && i > 0 {
            n += self.normal(i - 1);
        }
        Side::from_sign((p - q).dot(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn benchmark() -> ExtendedFracture {
        let f = FractureMesh::straight(Point2::new(0.0, 0.0), Point2::new(0.5, 0.0), 4, true, ["a".into(), "b".into()])
            .unwrap();
        ExtendedFracture::new(&f, 10.0, 1e-10)
    }

    #[test]
    fn above_and_below() {
        let s = benchmark();
        assert_eq!(s.classify(Point2::new(0.2, 1e-3)), Side::Plus);
        assert_eq!(s.classify(Point2::new(0.2, -1e-3)), Side::Minus);
        assert_eq!(s.classify(Point2::new(0.8, 1e-3)), Side::Plus);
        assert_eq!(s.classify(Point2::new(0.8, 0.0)), Side::OnExtension);
        assert_eq!(s.classify(Point2::new(0.3, 0.0)), Side::OnExtension);
    }

    #[test]
    fn empty_path_is_all_plus() {
        let s = ExtendedFracture { path: Vec::new(), eps: 1e-10 };
        assert_eq!(s.classify(Point2::new(0.3, 0.0)), Side::Plus);
    }

    #[test]
    fn bent_polyline_uses_pseudo_normal() {
        let f = FractureMesh::new(
            vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0)],
            true,
            ["a".into(), "b".into()],
        )
        .unwrap();
        let s = ExtendedFracture::new(&f, 10.0, 1e-10);
        // inside the left turn is the + side
        assert_eq!(s.classify(Point2::new(0.9, 0.1)), Side::Plus);
        assert_eq!(s.classify(Point2::new(1.2, -0.2)), Side::Minus);
        assert_eq!(s.classify(Point2::new(1.1, 0.5)), Side::Minus);
    }
}
