use crate::enrichment::EnrichedSpace;
use crate::geometry::Geometry;
use crate::quadrature::{boundary_rule, interface_quadrature, volume_rule, BoundaryPoint, InterfaceQuad, QuadOptions, QuadRule};

/// Enriched spaces together with all quadrature rules of one mesh level.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub space: EnrichedSpace,
    pub volume: Vec<QuadRule>,
    pub interface: InterfaceQuad,
    /// Gauss points per boundary edge (same indexing as `bulk.boundary`).
    pub boundary: Vec<Vec<BoundaryPoint>>,
    pub opts: QuadOptions,
}

impl Discretization {
    pub fn new(geom: Geometry, radius: f64, opts: QuadOptions) -> Self {
        let space = EnrichedSpace::new(geom, radius);
        let g = &space.geom;
        let volume = (0..g.bulk.n_triangles())
            .map(|e| {
                let order = if space.element_enriched(e) { opts.cut_order } else { opts.uncut_order };
                volume_rule(g, e, order, &opts)
            })
            .collect();
        let interface = interface_quadrature(g, &opts);
        let boundary = (0..g.bulk.boundary.len()).map(|k| boundary_rule(g, k, 3)).collect();
        Discretization { space, volume, interface, boundary, opts }
    }

    pub fn geom(&self) -> &Geometry {
        &self.space.geom
    }
}
