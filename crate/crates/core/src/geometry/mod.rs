//! Meshes, fracture geometry, tip-local coordinates, side classification,
//! cut topology and uniform refinement.

mod cut;
mod fracture;
mod mesh;
mod point;
mod side;
mod tip;

pub use cut::{clip_segment, cut_topology, geometric_tolerance, Chord, CutInfo, CutKind, ElementCut};
pub use fracture::FractureMesh;
pub use mesh::{BoundaryEdge, BulkMesh, UNTAGGED};
pub use point::{segment_distance, signed_area, Point2};
pub use side::{ExtendedFracture, Side};
pub use tip::TipFrame;

use crate::Result;

/// Bulk mesh, optional fracture and their derived cut topology.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub bulk: BulkMesh,
    pub fracture: Option<FractureMesh>,
    pub cut: CutInfo,
}

impl Geometry {
    pub fn new(bulk: BulkMesh, fracture: Option<FractureMesh>) -> Result<Self> {
        bulk.validate()?;
        let cut = match &fracture {
            Some(f) => cut_topology(&bulk, f)?,
            None => CutInfo::empty(&bulk),
        };
        Ok(Geometry { bulk, fracture, cut })
    }

    /// Tip frame of the (possibly perturbed) working fracture.
    pub fn tip_frame(&self) -> Option<TipFrame> {
        let f = self.fracture.as_ref()?;
        let tip = self.cut.tip(f)?;
        Some(TipFrame::new(tip, f.tangent(f.n_segments() - 1)))
    }

    /// Side of Σ̃ containing `p`; without a fracture everything is `Plus`.
    pub fn classify_side(&self, p: Point2) -> Side {
        if self.fracture.is_none() {
            return Side::Plus;
        }
        self.cut.extended.classify(p)
    }

    /// Uniformly refines bulk and fracture meshes and recomputes the cut.
    pub fn refine_uniform(&self) -> Result<Geometry> {
        Geometry::new(self.bulk.refine_uniform(), self.fracture.as_ref().map(|f| f.refine_uniform()))
    }

    pub fn eps(&self) -> f64 {
        self.cut.eps
    }
}
