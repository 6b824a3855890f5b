use crate::assembly::MaterialParams;
use crate::enrichment::EnrichedSpace;
use crate::geometry::{Point2, Side};
use crate::quadrature::{polygon_area, split_element};

/// Plane-strain von Mises stress from the in-plane stress components.
pub fn von_mises_invariant(sxx: f64, syy: f64, sxy: f64, poisson: f64) -> f64 {
    let szz = poisson * (sxx + syy);
    (0.5 * ((sxx - syy).powi(2) + (syy - szz).powi(2) + (szz - sxx).powi(2)) + 3.0 * sxy * sxy).sqrt()
}

/// Stress (σxx, σyy, σxy) of a displacement gradient.
pub fn stress(params: &MaterialParams, grad: [Point2; 2]) -> [f64; 3] {
    let (exx, eyy) = (grad[0].x, grad[1].y);
    let exy = 0.5 * (grad[0].y + grad[1].x);
    let tr = exx + eyy;
    [params.lambda * tr + 2.0 * params.mu * exx, params.lambda * tr + 2.0 * params.mu * eyy, 2.0 * params.mu * exy]
}

fn polygon_centroid(poly: &[Point2]) -> Point2 {
    let n = poly.len();
    let a = polygon_area(poly);
    let mut c = Point2::default();
    for k in 0..n {
        let (p, q) = (poly[k], poly[(k + 1) % n]);
        c += (p + q) * p.cross(q);
    }
    c * (1.0 / (6.0 * a))
}

/// Element-centre von Mises stress averaged to the nodes. Cut elements are
/// evaluated at the centroid of each side and contribute to the nodes on
/// that side.
pub fn von_mises(space: &EnrichedSpace, params: &MaterialParams, u: &[f64]) -> Vec<f64> {
    let geom = &space.geom;
    let n = geom.bulk.n_vertices();
    let mut sum = vec![0.0; n];
    let mut count = vec![0usize; n];
    let eval = |e: usize, x: Point2, side: Side| -> f64 {
        match space.eval_displacement(u, e, x, Some(side)) {
            Ok((_, g)) => {
                let s = stress(params, g);
                von_mises_invariant(s[0], s[1], s[2], params.poisson)
            }
            Err(_) => 0.0,
        }
    };
    for (e, tri) in geom.bulk.triangles.iter().enumerate() {
        if geom.cut.elements[e].crossings.is_empty() {
            let c = geom.bulk.corners(e);
            let x = (c[0] + c[1] + c[2]) * (1.0 / 3.0);
            let side = match geom.classify_side(x) {
                Side::OnExtension => Side::Plus,
                s => s,
            };
            let v = eval(e, x, side);
            for &node in tri {
                sum[node] += v;
                count[node] += 1;
            }
            continue;
        }
        let pieces = split_element(geom, e, geom.eps());
        let values: Vec<(Side, f64)> = pieces.iter().map(|(p, s)| (*s, eval(e, polygon_centroid(p), *s))).collect();
        for &node in tri {
            let side = match geom.classify_side(geom.bulk.vertices[node]) {
                Side::OnExtension => Side::Plus,
                s => s,
            };
            if let Some((_, v)) = values.iter().find(|(s, _)| *s == side) {
                sum[node] += v;
                count[node] += 1;
            }
        }
    }
    sum.iter().zip(&count).map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniaxial_plane_strain() {
        let s = 2.5;
        for nu in [0.0, 0.25, 0.3, 0.45] {
            let vm = von_mises_invariant(s, 0.0, 0.0, nu);
            assert!((vm - s * (1.0 - nu + nu * nu).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn rotation_is_stress_free() {
        let p = MaterialParams::isotropic(1.0, 1.0, 1.0, 1.0, 1e9, 0.3);
        let w = 1e-3;
        let s = stress(&p, [Point2::new(0.0, -w), Point2::new(w, 0.0)]);
        assert!(s.iter().all(|v| v.abs() < 1e-10));
    }
}
