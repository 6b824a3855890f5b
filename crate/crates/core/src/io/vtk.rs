//! Legacy ASCII VTK output.
//!
//! The bulk grid is written with its nodes duplicated along the fracture:
//! every cut element is split into its side pieces, each carrying its own
//! points, so the displacement and pressure jumps show up in a viewer.

use std::fmt::Write as _;

use crate::analysis::stress;
use crate::assembly::{Discretization, MaterialParams};
use crate::geometry::{Point2, Side};
use crate::quadrature::{split_element, triangulate};
use crate::solver::CoupledState;
use crate::Result;

struct Cell {
    points: [usize; 3],
    element: usize,
    side: Side,
    centroid: Point2,
}

fn plain(side: Side) -> Side {
    if side == Side::OnExtension {
        Side::Plus
    } else {
        side
    }
}

/// Unstructured grid with point fields `pressure` and `displacement` and
/// cell fields `von_mises` and `side` (+1/−1).
pub fn bulk_vtk(disc: &Discretization, params: &MaterialParams, state: &CoupledState) -> Result<String> {
    let geom = disc.geom();
    let mesh = &geom.bulk;
    let space = &disc.space;
    // points: mesh vertices first, then the duplicated points of cut pieces
    let mut points: Vec<(Point2, usize, Side)> = Vec::with_capacity(mesh.n_vertices());
    let mut owner = vec![None; mesh.n_vertices()];
    for (e, t) in mesh.triangles.iter().enumerate() {
        let cut = !geom.cut.elements[e].crossings.is_empty();
        for &v in t {
            if owner[v].is_none() || (!cut && owner[v].is_some_and(|(_, c)| c)) {
                owner[v] = Some((e, cut));
            }
        }
    }
    for (v, o) in owner.iter().enumerate() {
        let x = mesh.vertices[v];
        let e = o.map(|(e, _)| e).unwrap_or(0);
        points.push((x, e, plain(geom.classify_side(x))));
    }
    let mut cells = Vec::new();
    for (e, t) in mesh.triangles.iter().enumerate() {
        let c = mesh.corners(e);
        if geom.cut.elements[e].crossings.is_empty() {
            let centroid = (c[0] + c[1] + c[2]) * (1.0 / 3.0);
            cells.push(Cell { points: *t, element: e, side: plain(geom.classify_side(centroid)), centroid });
            continue;
        }
        for (poly, side) in split_element(geom, e, geom.eps()) {
            for tri in triangulate(&poly, None) {
                let base = points.len();
                for &x in &tri {
                    points.push((x, e, side));
                }
                let centroid = (tri[0] + tri[1] + tri[2]) * (1.0 / 3.0);
                cells.push(Cell { points: [base, base + 1, base + 2], element: e, side, centroid });
            }
        }
    }

    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\nbulk fields\nASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {} double", points.len());
    for (x, _, _) in &points {
        let _ = writeln!(s, "{:e} {:e} 0", x.x, x.y);
    }
    let _ = writeln!(s, "CELLS {} {}", cells.len(), 4 * cells.len());
    for c in &cells {
        let _ = writeln!(s, "3 {} {} {}", c.points[0], c.points[1], c.points[2]);
    }
    let _ = writeln!(s, "CELL_TYPES {}", cells.len());
    for _ in &cells {
        s.push_str("5\n");
    }

    let _ = writeln!(s, "POINT_DATA {}", points.len());
    s.push_str("SCALARS pressure double 1\nLOOKUP_TABLE default\n");
    for &(x, e, side) in &points {
        let (p, _) = space.eval_pressure(&state.p_bulk, e, x, Some(side))?;
        let _ = writeln!(s, "{p:e}");
    }
    s.push_str("VECTORS displacement double\n");
    for &(x, e, side) in &points {
        let (u, _) = space.eval_displacement(&state.u, e, x, Some(side))?;
        let _ = writeln!(s, "{:e} {:e} 0", u[0], u[1]);
    }

    let _ = writeln!(s, "CELL_DATA {}", cells.len());
    s.push_str("SCALARS von_mises double 1\nLOOKUP_TABLE default\n");
    for c in &cells {
        let (_, g) = space.eval_displacement(&state.u, c.element, c.centroid, Some(c.side))?;
        let sg = stress(params, g);
        let _ = writeln!(s, "{:e}", crate::analysis::von_mises_invariant(sg[0], sg[1], sg[2], params.poisson));
    }
    s.push_str("SCALARS side int 1\nLOOKUP_TABLE default\n");
    for c in &cells {
        s.push_str(if c.side == Side::Minus { "-1\n" } else { "1\n" });
    }
    Ok(s)
}

/// Fracture polyline with point fields `fracture_pressure` and `width`.
pub fn fracture_vtk(disc: &Discretization, state: &CoupledState) -> Result<String> {
    let rows = super::tables::fracture_profile(disc, state)?;
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\nfracture fields\nASCII\nDATASET POLYDATA\n");
    let _ = writeln!(s, "POINTS {} double", rows.len());
    for r in &rows {
        let _ = writeln!(s, "{:e} {:e} 0", r.x.x, r.x.y);
    }
    let n = rows.len().saturating_sub(1);
    let _ = writeln!(s, "LINES {} {}", n, 3 * n);
    for k in 0..n {
        let _ = writeln!(s, "2 {} {}", k, k + 1);
    }
    let _ = writeln!(s, "POINT_DATA {}", rows.len());
    s.push_str("SCALARS fracture_pressure double 1\nLOOKUP_TABLE default\n");
    for r in &rows {
        let _ = writeln!(s, "{:e}", r.pressure);
    }
    s.push_str("SCALARS width double 1\nLOOKUP_TABLE default\n");
    for r in &rows {
        let _ = writeln!(s, "{:e}", r.width);
    }
    Ok(s)
}
