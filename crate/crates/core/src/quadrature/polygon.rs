use crate::geometry::{segment_distance, signed_area, Point2};

fn dedup(mut poly: Vec<Point2>, tol: f64) -> Vec<Point2> {
    poly.dedup_by(|a, b| a.dist(*b) <= tol);
    while poly.len() > 1 && poly[0].dist(*poly.last().unwrap()) <= tol {
        poly.pop();
    }
    poly
}

/// Boundary parameter τ = edge index + local parameter of a point on the
/// boundary of a polygon.
fn boundary_param(poly: &[Point2], p: Point2) -> f64 {
    let n = poly.len();
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..n {
        let (d, t) = segment_distance(p, poly[k], poly[(k + 1) % n]);
        if d < best.0 {
            best = (d, k as f64 + t);
        }
    }
    best.1
}

/// Boundary walk from τ_a to τ_b (counter-clockwise, wrapping), returning the
/// polygon vertices strictly passed.
fn walk(poly: &[Point2], ta: f64, tb: f64) -> Vec<Point2> {
    let n = poly.len() as f64;
    let end = if tb > ta { tb } else { tb + n };
    let mut k = ta.floor() + 1.0;
    let mut out = Vec::new();
    while k < end {
        out.push(poly[(k as usize) % poly.len()]);
        k += 1.0;
    }
    out
}

/// Splits a simple counter-clockwise polygon along `path`, whose first and
/// last points lie on the polygon boundary. Returns the two sub-polygons
/// (both counter-clockwise).
pub fn split_polygon(poly: &[Point2], path: &[Point2], tol: f64) -> (Vec<Point2>, Vec<Point2>) {
    let entry = path[0];
    let exit = *path.last().unwrap();
    let te = boundary_param(poly, entry);
    let tx = boundary_param(poly, exit);
    // left: entry -> boundary -> exit -> path reversed
    let mut a = vec![entry];
    a.extend(walk(poly, te, tx));
    a.push(exit);
    a.extend(path[1..path.len() - 1].iter().rev());
    // right: exit -> boundary -> entry -> path forward
    let mut b = vec![exit];
    b.extend(walk(poly, tx, te));
    b.push(entry);
    b.extend(path[1..path.len() - 1].iter());
    (dedup(a, tol), dedup(b, tol))
}

pub fn polygon_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    (0..n).map(|k| poly[k].cross(poly[(k + 1) % n])).sum::<f64>() * 0.5
}

fn is_convex(poly: &[Point2]) -> bool {
    let n = poly.len();
    (0..n).all(|k| (poly[(k + 1) % n] - poly[k]).cross(poly[(k + 2) % n] - poly[(k + 1) % n]) >= 0.0)
}

/// Triangulates a simple counter-clockwise polygon. Convex polygons are fanned
/// from `apex` (a vertex index) when given; others use ear clipping.
pub fn triangulate(poly: &[Point2], apex: Option<usize>) -> Vec<[Point2; 3]> {
    let n = poly.len();
    if n < 3 {
        return Vec::new();
    }
    if is_convex(poly) {
        let a = apex.unwrap_or(0);
        return (1..n - 1).map(|k| [poly[a], poly[(a + k) % n], poly[(a + k + 1) % n]]).collect();
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n - 2);
    let mut guard = 0;
    while idx.len() > 3 && guard < 10 * n {
        guard += 1;
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (i0, i1, i2) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (poly[i0], poly[i1], poly[i2]);
            if signed_area(a, b, c) <= 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                if j == i0 || j == i1 || j == i2 {
                    return false;
                }
                let p = poly[j];
                signed_area(a, b, p) >= 0.0 && signed_area(b, c, p) >= 0.0 && signed_area(c, a, p) >= 0.0
            });
            if !blocked {
                out.push([a, b, c]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        out.push([poly[idx[0]], poly[idx[1]], poly[idx[2]]]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_triangle_by_chord() {
        let tri = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)];
        let path = [Point2::new(0.0, 0.25), Point2::new(0.75, 0.25)];
        let (a, b) = split_polygon(&tri, &path, 1e-14);
        let total = polygon_area(&a) + polygon_area(&b);
        assert!((total - 0.5).abs() < 1e-15);
        assert!(polygon_area(&a) > 0.0 && polygon_area(&b) > 0.0);
        assert!((polygon_area(&b) - 0.5 * 0.75 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn split_with_interior_vertex() {
        let tri = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)];
        let path = [Point2::new(0.0, 0.2), Point2::new(0.3, 0.3), Point2::new(0.6, 0.0)];
        let (a, b) = split_polygon(&tri, &path, 1e-14);
        let ta: f64 = triangulate(&a, None).iter().map(|t| signed_area(t[0], t[1], t[2])).sum();
        let tb: f64 = triangulate(&b, None).iter().map(|t| signed_area(t[0], t[1], t[2])).sum();
        assert!((ta - polygon_area(&a)).abs() < 1e-15);
        assert!((tb - polygon_area(&b)).abs() < 1e-15);
        assert!((ta + tb - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ear_clipping_nonconvex() {
        let poly = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(1.0, 0.5),
            Point2::new(0.0, 2.0),
        ];
        let tris = triangulate(&poly, None);
        assert_eq!(tris.len(), 3);
        let s: f64 = tris.iter().map(|t| signed_area(t[0], t[1], t[2])).sum();
        assert!((s - polygon_area(&poly)).abs() < 1e-14);
        assert!(tris.iter().all(|t| signed_area(t[0], t[1], t[2]) > 0.0));
    }
}
