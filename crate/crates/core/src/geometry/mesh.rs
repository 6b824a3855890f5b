use std::collections::{BTreeSet, HashMap};

use super::point::{signed_area, Point2};
use crate::{Error, Result};

/// A boundary edge of the bulk mesh with its owning triangle and tag.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryEdge {
    pub vertices: [usize; 2],
    pub element: usize,
    pub tag: String,
}

/// Conforming triangulation of the uncut polygon.
///
/// The triangulation does not need to resolve the fracture. `parents` maps
/// every triangle to the triangle of the previous refinement level that
/// contains it (empty on a level-0 mesh).
#[derive(Debug, Clone)]
pub struct BulkMesh {
    pub vertices: Vec<Point2>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary: Vec<BoundaryEdge>,
    pub level: u32,
    pub parents: Vec<usize>,
}

pub const UNTAGGED: &str = "untagged";

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl BulkMesh {
    /// Builds a mesh, orienting triangles counter-clockwise and deriving the
    /// boundary edges. Boundary edges absent from `tagged` get [`UNTAGGED`].
    pub fn new(
        vertices: Vec<Point2>,
        mut triangles: Vec<[usize; 3]>,
        tagged: &[([usize; 2], String)],
    ) -> Result<Self> {
        for (e, t) in triangles.iter_mut().enumerate() {
            if t.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::Mesh(format!("triangle {e} references a missing vertex")));
            }
            let a = signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
            if a == 0.0 || !a.is_finite() {
                return Err(Error::Mesh(format!("triangle {e} is degenerate")));
            }
            if a < 0.0 {
                t.swap(1, 2);
            }
        }
        let tags: HashMap<(usize, usize), &String> =
            tagged.iter().map(|(v, tag)| (edge_key(v[0], v[1]), tag)).collect();
        let mut mesh = BulkMesh { vertices, triangles, boundary: Vec::new(), level: 0, parents: Vec::new() };
        let edges = mesh.edge_owners()?;
        let mut boundary = Vec::new();
        for (key, owners) in edges {
            if owners.len() == 1 {
                let (e, local) = owners[0];
                let t = mesh.triangles[e];
                let v = [t[local], t[(local + 1) % 3]];
                let tag = tags.get(&key).map(|s| s.to_string()).unwrap_or_else(|| UNTAGGED.to_string());
                boundary.push(BoundaryEdge { vertices: v, element: e, tag });
            }
        }
        boundary.sort_by_key(|b| (b.element, b.vertices));
        mesh.boundary = boundary;
        Ok(mesh)
    }

    /// Structured-topology mesh from rows of vertices. Row `j` has y-coordinate
    /// `ys[j]` and x-coordinates `xs[j]`; every row must have the same count.
    /// Cells are split along alternating diagonals. Boundary tags are
    /// `bottom`, `right`, `top`, `left`.
    pub fn from_rows(xs: &[Vec<f64>], ys: &[f64]) -> Result<Self> {
        let ny = ys.len();
        if ny < 2 || xs.len() != ny {
            return Err(Error::Mesh("need at least two rows with matching x lists".into()));
        }
        let nx = xs[0].len();
        if nx < 2 || xs.iter().any(|r| r.len() != nx) {
            return Err(Error::Mesh("rows must have equal vertex counts (>= 2)".into()));
        }
        let id = |i: usize, j: usize| j * nx + i;
        let mut vertices = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                vertices.push(Point2::new(xs[j][i], ys[j]));
            }
        }
        let mut triangles = Vec::new();
        for j in 0..ny - 1 {
            for i in 0..nx - 1 {
                let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
                if (i + j) % 2 == 0 {
                    triangles.push([a, b, c]);
                    triangles.push([a, c, d]);
                } else {
                    triangles.push([a, b, d]);
                    triangles.push([b, c, d]);
                }
            }
        }
        let mut tagged = Vec::new();
        for i in 0..nx - 1 {
            tagged.push(([id(i, 0), id(i + 1, 0)], "bottom".to_string()));
            tagged.push(([id(i, ny - 1), id(i + 1, ny - 1)], "top".to_string()));
        }
        for j in 0..ny - 1 {
            tagged.push(([id(0, j), id(0, j + 1)], "left".to_string()));
            tagged.push(([id(nx - 1, j), id(nx - 1, j + 1)], "right".to_string()));
        }
        BulkMesh::new(vertices, triangles, &tagged)
    }

    /// Uniform structured mesh of the rectangle [x0, x1] × [y0, y1].
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Result<Self> {
        let row: Vec<f64> = (0..=nx).map(|i| x0 + (x1 - x0) * i as f64 / nx as f64).collect();
        let ys: Vec<f64> = (0..=ny).map(|j| y0 + (y1 - y0) * j as f64 / ny as f64).collect();
        BulkMesh::from_rows(&vec![row; ny + 1], &ys)
    }

    fn edge_owners(&self) -> Result<Vec<((usize, usize), Vec<(usize, usize)>)>> {
        let mut map: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (e, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                map.entry(edge_key(t[k], t[(k + 1) % 3])).or_default().push((e, k));
            }
        }
        let mut out: Vec<_> = map.into_iter().collect();
        out.sort_by_key(|(k, _)| *k);
        for (k, owners) in &out {
            if owners.len() > 2 {
                return Err(Error::Mesh(format!("edge {k:?} shared by {} triangles", owners.len())));
            }
        }
        Ok(out)
    }

    /// Checks conformity and orientation invariants.
    pub fn validate(&self) -> Result<()> {
        for (e, t) in self.triangles.iter().enumerate() {
            if self.area(e) <= 0.0 {
                return Err(Error::Mesh(format!("triangle {e} {t:?} is not positively oriented")));
            }
        }
        let edges = self.edge_owners()?;
        let n_boundary = edges.iter().filter(|(_, o)| o.len() == 1).count();
        if n_boundary != self.boundary.len() {
            return Err(Error::Mesh("boundary edge list is inconsistent".into()));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn corners(&self, e: usize) -> [Point2; 3] {
        let t = self.triangles[e];
        [self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]]
    }

    pub fn area(&self, e: usize) -> f64 {
        let [a, b, c] = self.corners(e);
        signed_area(a, b, c)
    }

    pub fn total_area(&self) -> f64 {
        (0..self.n_triangles()).map(|e| self.area(e)).sum()
    }

    /// Longest edge of triangle `e`.
    pub fn diameter(&self, e: usize) -> f64 {
        let [a, b, c] = self.corners(e);
        a.dist(b).max(b.dist(c)).max(c.dist(a))
    }

    /// Mesh size h (maximum element diameter).
    pub fn h(&self) -> f64 {
        (0..self.n_triangles()).map(|e| self.diameter(e)).fold(0.0, f64::max)
    }

    /// Domain diameter (bounding-box diagonal).
    pub fn domain_diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Barycentric coordinates of `p` with respect to triangle `e`.
    pub fn barycentric(&self, e: usize, p: Point2) -> [f64; 3] {
        let [a, b, c] = self.corners(e);
        let area = signed_area(a, b, c);
        let l1 = signed_area(p, b, c) / area;
        let l2 = signed_area(a, p, c) / area;
        [l1, l2, 1.0 - l1 - l2]
    }

    /// Gradients of the three P1 hat functions on triangle `e` (constant).
    pub fn hat_gradients(&self, e: usize) -> [Point2; 3] {
        let [a, b, c] = self.corners(e);
        let two_area = 2.0 * signed_area(a, b, c);
        [(b - c).perp() * (-1.0 / two_area), (c - a).perp() * (-1.0 / two_area), (a - b).perp() * (-1.0 / two_area)]
    }

    pub fn contains(&self, e: usize, p: Point2, tol: f64) -> bool {
        self.barycentric(e, p).iter().all(|&l| l >= -tol)
    }

    /// Triangle containing `p` (first match), by linear search.
    pub fn locate(&self, p: Point2) -> Option<usize> {
        let tol = 1e-12;
        (0..self.n_triangles()).find(|&e| self.contains(e, p, tol))
    }

    /// Sorted set of boundary tags.
    pub fn tags(&self) -> BTreeSet<String> {
        self.boundary.iter().map(|b| b.tag.clone()).collect()
    }

    /// Vertices on boundary edges with the given tag.
    pub fn tagged_vertices(&self, tag: &str) -> BTreeSet<usize> {
        self.boundary.iter().filter(|b| b.tag == tag).flat_map(|b| b.vertices).collect()
    }

    /// Splits every triangle into four congruent children via edge midpoints.
    pub fn refine_uniform(&self) -> BulkMesh {
        let mut vertices = self.vertices.clone();
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Point2>| -> usize {
            *mid.entry(edge_key(a, b)).or_insert_with(|| {
                vertices.push(vertices[a].midpoint(vertices[b]));
                vertices.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        let mut parents = Vec::with_capacity(4 * self.triangles.len());
        for (e, &[a, b, c]) in self.triangles.iter().enumerate() {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            triangles.extend_from_slice(&[[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
            parents.extend_from_slice(&[e; 4]);
        }
        let mut boundary = Vec::with_capacity(2 * self.boundary.len());
        for be in &self.boundary {
            let [a, b] = be.vertices;
            let m = mid[&edge_key(a, b)];
            // children 0..3 of the owner hold the corner vertices in order
            let owner = &self.triangles[be.element];
            let child_of = |v: usize| 4 * be.element + owner.iter().position(|&w| w == v).unwrap();
            boundary.push(BoundaryEdge { vertices: [a, m], element: child_of(a), tag: be.tag.clone() });
            boundary.push(BoundaryEdge { vertices: [m, b], element: child_of(b), tag: be.tag.clone() });
        }
        boundary.sort_by_key(|b| (b.element, b.vertices));
        BulkMesh { vertices, triangles, boundary, level: self.level + 1, parents }
    }
}
