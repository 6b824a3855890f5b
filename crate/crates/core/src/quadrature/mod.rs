//! Quadrature on uncut, cut and tip elements, on boundary edges and on the
//! merged bulk/fracture interface partition.

mod boundary;
mod gauss;
mod interface;
mod polygon;
mod volume;

pub use boundary::{boundary_rule, BoundaryPoint};
pub use gauss::{gauss_legendre, map_triangle, triangle_rule};
pub use interface::{interface_quadrature, InterfaceCell, InterfacePoint, InterfaceQuad};
pub use polygon::{polygon_area, split_polygon, triangulate};
pub use volume::{graded_tip_rule, split_element, volume_rule, QuadPoint, QuadRule};

/// Quadrature orders and tip grading depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Order on elements without enrichment.
    pub uncut_order: u32,
    /// Order on cut, tip and enriched elements.
    pub cut_order: u32,
    /// Gauss points per interface cell (3 points are exact to degree 5).
    pub interface_points: usize,
    /// Dyadic grading levels toward the tip.
    pub tip_levels: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { uncut_order: 2, cut_order: 4, interface_points: 3, tip_levels: 3 }
    }
}
