use std::collections::BTreeSet;

use crate::geometry::Geometry;

/// Enriched node sets: tip set J_R and Heaviside set K_R.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSets {
    /// Nodes of the tip element or within distance R of the tip (sorted).
    pub tip: Vec<usize>,
    /// Nodes of elements cut by Σ that are not in the tip set (sorted).
    pub heaviside: Vec<usize>,
    pub radius: f64,
}

/// Classifies bulk nodes for enrichment. Nodes at distance exactly R count
/// as tip nodes.
pub fn classify_nodes(geom: &Geometry, radius: f64) -> NodeSets {
    let mut tip = BTreeSet::new();
    if let (Some(frame), Some(te)) = (geom.tip_frame(), geom.cut.tip_element) {
        tip.extend(geom.bulk.triangles[te]);
        for (i, v) in geom.bulk.vertices.iter().enumerate() {
            if v.dist(frame.tip) <= radius {
                tip.insert(i);
            }
        }
    }
    let mut heaviside = BTreeSet::new();
    for (e, c) in geom.cut.elements.iter().enumerate() {
        if !c.chords.is_empty() {
            heaviside.extend(geom.bulk.triangles[e].iter().copied().filter(|n| !tip.contains(n)));
        }
    }
    NodeSets { tip: tip.into_iter().collect(), heaviside: heaviside.into_iter().collect(), radius }
}
