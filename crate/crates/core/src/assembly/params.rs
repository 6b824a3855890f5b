use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;
use crate::{Error, Result};

/// Physical coefficients in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// Bulk permeability tensor 𝕂 (m²).
    pub permeability: [[f64; 2]; 2],
    /// Fracture normal permeability K^ν (m²).
    pub k_normal: f64,
    /// Fracture tangential permeability K^τ (m²).
    pub k_tangential: f64,
    /// Fluid viscosity μ_f (Pa·s).
    pub viscosity: f64,
    /// Lamé parameters (Pa).
    pub lambda: f64,
    pub mu: f64,
    /// Poisson ratio, kept for the plane-strain out-of-plane stress.
    pub poisson: f64,
    /// Closure parameter ξ ∈ (1/2, 1].
    pub xi: f64,
}

impl MaterialParams {
    /// Plane-strain Lamé parameters from Young's modulus and Poisson ratio.
    pub fn lame_from_young(e: f64, nu: f64) -> (f64, f64) {
        (e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), e / (2.0 * (1.0 + nu)))
    }

    /// Isotropic bulk permeability with the given elastic and fracture data.
    pub fn isotropic(k: f64, k_normal: f64, k_tangential: f64, viscosity: f64, young: f64, poisson: f64) -> Self {
        let (lambda, mu) = Self::lame_from_young(young, poisson);
        MaterialParams {
            permeability: [[k, 0.0], [0.0, k]],
            k_normal,
            k_tangential,
            viscosity,
            lambda,
            mu,
            poisson,
            xi: 0.75,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.permeability;
        if (k[0][1] - k[1][0]).abs() > 1e-12 * (k[0][0].abs() + k[1][1].abs()) {
            return Err(Error::param("permeability", "tensor is not symmetric"));
        }
        if !(k[0][0] > 0.0 && k[0][0] * k[1][1] - k[0][1] * k[1][0] > 0.0) {
            return Err(Error::param("permeability", "tensor is not positive definite"));
        }
        for (name, v) in [("k_normal", self.k_normal), ("k_tangential", self.k_tangential), ("viscosity", self.viscosity)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, format!("must be positive, got {v}")));
            }
        }
        if !(self.mu > 0.0 && self.lambda + 2.0 * self.mu > 0.0) {
            return Err(Error::param("lame", format!("need μ > 0 and λ + 2μ > 0 (λ = {}, μ = {})", self.lambda, self.mu)));
        }
        if !(self.xi > 0.5 && self.xi <= 1.0) {
            return Err(Error::param("xi", format!("must lie in (1/2, 1], got {}", self.xi)));
        }
        Ok(())
    }

    /// Bulk mobility 𝕂/μ_f applied to a vector.
    pub fn mobility(&self, g: Point2) -> Point2 {
        let k = self.permeability;
        Point2::new(k[0][0] * g.x + k[0][1] * g.y, k[1][0] * g.x + k[1][1] * g.y) * (1.0 / self.viscosity)
    }

    /// 1/(2ξ − 1).
    pub fn closure_factor(&self) -> f64 {
        1.0 / (2.0 * self.xi - 1.0)
    }
}

/// Affine datum c + gx·x + gy·y.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Datum {
    pub c: f64,
    pub gx: f64,
    pub gy: f64,
}

impl Datum {
    pub const ZERO: Datum = Datum { c: 0.0, gx: 0.0, gy: 0.0 };

    pub const fn constant(c: f64) -> Self {
        Datum { c, gx: 0.0, gy: 0.0 }
    }

    pub const fn affine(c: f64, gx: f64, gy: f64) -> Self {
        Datum { c, gx, gy }
    }

    pub fn eval(&self, p: Point2) -> f64 {
        self.c + self.gx * p.x + self.gy * p.y
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0.0 && self.gx == 0.0 && self.gy == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScalarBc {
    /// Prescribed pressure (Pa).
    Dirichlet(Datum),
    /// Prescribed outward flux.
    Neumann(Datum),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum VectorBc {
    /// Prescribed displacement (m).
    Dirichlet([Datum; 2]),
    /// Prescribed traction σ_N (Pa).
    Neumann([Datum; 2]),
}

/// Sources and boundary conditions keyed by boundary tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemData {
    pub body_force: [Datum; 2],
    pub bulk_source: Datum,
    pub fracture_source: Datum,
    pub elastic: BTreeMap<String, VectorBc>,
    pub bulk_flow: BTreeMap<String, ScalarBc>,
    /// Conditions at the fracture ends, keyed by the fracture end tags.
    pub fracture_flow: BTreeMap<String, ScalarBc>,
}

impl Default for ProblemData {
    fn default() -> Self {
        ProblemData {
            body_force: [Datum::ZERO; 2],
            bulk_source: Datum::ZERO,
            fracture_source: Datum::ZERO,
            elastic: BTreeMap::new(),
            bulk_flow: BTreeMap::new(),
            fracture_flow: BTreeMap::new(),
        }
    }
}

impl ProblemData {
    /// Checks that every mesh tag and fracture end has exactly one condition
    /// per field and that the elasticity problem has a Dirichlet part.
    pub fn validate(&self, mesh_tags: &[String], fracture_tags: Option<&[String; 2]>) -> Result<()> {
        for tag in mesh_tags {
            if !self.elastic.contains_key(tag) {
                return Err(Error::Boundary(format!("no elasticity condition for boundary `{tag}`")));
            }
            if !self.bulk_flow.contains_key(tag) {
                return Err(Error::Boundary(format!("no bulk flow condition for boundary `{tag}`")));
            }
        }
        let keys: [(Vec<&String>, &str); 2] =
            [(self.elastic.keys().collect(), "elasticity"), (self.bulk_flow.keys().collect(), "bulk flow")];
        for (map, what) in keys {
            for k in map {
                if !mesh_tags.contains(k) {
                    return Err(Error::Boundary(format!("{what} condition for unknown boundary `{k}`")));
                }
            }
        }
        if !mesh_tags.iter().any(|t| matches!(self.elastic.get(t), Some(VectorBc::Dirichlet(_)))) {
            return Err(Error::Boundary("elasticity needs a Dirichlet boundary (rigid body modes)".into()));
        }
        if let Some(tags) = fracture_tags {
            for t in tags {
                if !self.fracture_flow.contains_key(t) {
                    return Err(Error::Boundary(format!("no fracture flow condition for fracture end `{t}`")));
                }
            }
        }
        Ok(())
    }
}
