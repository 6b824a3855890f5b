//! TOML run configuration.
//!
//! Dimensional values are strings with a unit (`"0.1 mD"`, `"1 GPa"`,
//! `"125 m"`); they are converted to SI when the configuration is resolved.
//! Unknown keys are rejected. A complete file for the reference benchmark:
//!
//! ```toml
//! [mesh]
//! kind = "benchmark"
//!
//! [fracture]
//! points = [["0 m", "0 m"], ["500 m", "0 m"]]
//! segments = 8
//! tip = true
//! tags = ["inlet", "tip"]
//!
//! [material]
//! permeability = "0.1 mD"
//! normal_permeability = "100 D"
//! tangential_permeability = "100 D"
//! viscosity = "1 mPa*s"
//! young = "1 GPa"
//! poisson = 0.3
//!
//! [boundary.bottom]
//! elastic = { type = "dirichlet", value = ["0 m", "0 m"] }
//! flow = { type = "dirichlet", value = "0 Pa" }
//!
//! [boundary.left]
//! elastic = { type = "neumann", value = ["0 Pa", "0 Pa"] }
//! flow = { type = "neumann", value = "0 m/s" }
//!
//! # right and top as left
//!
//! [fracture_ends]
//! inlet = { type = "dirichlet", value = "0.5 MPa" }
//! tip = { type = "neumann", value = "0 m/s" }
//!
//! [solver]
//! initial_width = "1e-2 m^0.5"
//!
//! [study]
//! radius = "125 m"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assembly::{Datum, MaterialParams, ProblemData, ScalarBc, VectorBc};
use crate::benchmark;
use crate::enrichment::CrackWidthField;
use crate::geometry::{BulkMesh, FractureMesh, Geometry, Point2};
use crate::solver::SolverConfig;
use crate::units::{parse_quantity, Dimension};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mesh: MeshSection,
    pub fracture: Option<FractureSection>,
    pub material: MaterialSection,
    #[serde(default)]
    pub sources: SourceSection,
    pub boundary: BTreeMap<String, BoundarySection>,
    #[serde(default)]
    pub fracture_ends: BTreeMap<String, ScalarCondition>,
    #[serde(default)]
    pub solver: SolverSection,
    pub study: StudySection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshKind {
    /// The jittered 128-triangle grid of the 1 km × 1 km benchmark.
    Benchmark,
    /// Structured `nx × ny` grid with tags bottom/right/top/left.
    Rectangle,
    /// ASCII mesh or gmsh v2 file (`.msh`).
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSection {
    pub kind: MeshKind,
    pub path: Option<PathBuf>,
    /// Corner coordinates `[x0, y0]`, `[x1, y1]` of a rectangle.
    pub lower: Option<[String; 2]>,
    pub upper: Option<[String; 2]>,
    pub cells: Option<[usize; 2]>,
    /// Uniform refinements applied before level 0.
    #[serde(default)]
    pub refinement: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractureSection {
    /// Polyline vertices from the fracture start towards the tip.
    pub points: Vec<[String; 2]>,
    /// Subdivisions of every polyline edge.
    #[serde(default = "one")]
    pub segments: usize,
    /// Whether the last point is a crack tip inside the domain.
    pub tip: bool,
    pub tags: [String; 2],
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSection {
    pub permeability: String,
    pub normal_permeability: String,
    pub tangential_permeability: String,
    pub viscosity: String,
    pub young: String,
    pub poisson: f64,
    #[serde(default = "default_xi")]
    pub xi: f64,
}

fn default_xi() -> f64 {
    0.75
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSection {
    pub body_force: [String; 2],
    pub bulk: String,
    pub fracture: String,
}

impl Default for SourceSection {
    fn default() -> Self {
        SourceSection { body_force: ["0 N/m3".into(), "0 N/m3".into()], bulk: "0 1/s".into(), fracture: "0 m/s".into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySection {
    pub elastic: VectorCondition,
    pub flow: ScalarCondition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ScalarCondition {
    /// Pressure.
    Dirichlet { value: String },
    /// Outward normal Darcy velocity.
    Neumann { value: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum VectorCondition {
    /// Displacement.
    Dirichlet { value: [String; 2] },
    /// Traction.
    Neumann { value: [String; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub beta: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Coefficient c of the start width b₀ = c·√r.
    pub initial_width: String,
    pub reference_mode: bool,
    pub reference_iterations: usize,
}

impl Default for SolverSection {
    fn default() -> Self {
        SolverSection {
            beta: 1.0,
            tolerance: 1e-8,
            max_iterations: 50,
            initial_width: "1e-2 m^0.5".into(),
            reference_mode: false,
            reference_iterations: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudySection {
    /// Enrichment radius R.
    pub radius: String,
    #[serde(default = "default_levels")]
    pub levels: Vec<u32>,
    pub reference_level: Option<u32>,
    /// Fixed-point tolerance of the convergence study.
    #[serde(default = "default_study_tolerance")]
    pub tolerance: f64,
}

fn default_levels() -> Vec<u32> {
    vec![0]
}

fn default_study_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Vtk,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub directory: PathBuf,
    /// Files besides the JSON summary, which is always written.
    pub formats: Vec<Format>,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { directory: PathBuf::from("output"), formats: vec![Format::Vtk, Format::Csv] }
    }
}

/// A configuration converted to SI and checked for consistency.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub source: RunConfig,
    /// Level-0 geometry.
    pub geometry: Geometry,
    pub material: MaterialParams,
    pub data: ProblemData,
    pub solver: SolverConfig,
    pub radius: f64,
    pub levels: Vec<u32>,
    pub reference_level: Option<u32>,
    pub study_tolerance: f64,
    pub output: OutputSection,
}

impl Resolved {
    /// Geometry refined `level` times.
    pub fn geometry(&self, level: u32) -> Result<Geometry> {
        let mut g = self.geometry.clone();
        for _ in 0..level {
            g = g.refine_uniform()?;
        }
        Ok(g)
    }
}

fn quantity(key: &str, text: &str, dim: Dimension) -> Result<f64> {
    parse_quantity(text, dim).map_err(|e| match e {
        Error::Parameter { reason, .. } => Error::config(key, reason),
        e => e,
    })
}

fn datum(key: &str, text: &str, dim: Dimension) -> Result<Datum> {
    quantity(key, text, dim).map(Datum::constant)
}

fn pair(key: &str, v: &[String; 2], dim: Dimension) -> Result<[f64; 2]> {
    Ok([quantity(&format!("{key}[0]"), &v[0], dim)?, quantity(&format!("{key}[1]"), &v[1], dim)?])
}

fn scalar_bc(key: &str, c: &ScalarCondition) -> Result<ScalarBc> {
    Ok(match c {
        ScalarCondition::Dirichlet { value } => ScalarBc::Dirichlet(datum(key, value, Dimension::Pressure)?),
        ScalarCondition::Neumann { value } => ScalarBc::Neumann(datum(key, value, Dimension::Velocity)?),
    })
}

fn vector_bc(key: &str, c: &VectorCondition) -> Result<VectorBc> {
    Ok(match c {
        VectorCondition::Dirichlet { value } => VectorBc::Dirichlet(pair(key, value, Dimension::Length)?.map(Datum::constant)),
        VectorCondition::Neumann { value } => VectorBc::Neumann(pair(key, value, Dimension::Pressure)?.map(Datum::constant)),
    })
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let key = e.span().map(|s| text[s].trim().to_string()).filter(|k| !k.is_empty()).unwrap_or_else(|| "<root>".into());
            Error::config(&key, e.message().to_string())
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    /// Reads a configuration file and resolves it; relative mesh and output
    /// paths are taken relative to the file.
    pub fn load(path: &Path) -> Result<Resolved> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text)?.resolve(base)
    }

    pub fn resolve(&self, base: &Path) -> Result<Resolved> {
        let mut bulk = self.bulk_mesh(base)?;
        let fracture = self.fracture_mesh()?;
        let mut geometry = Geometry::new(bulk.clone(), fracture.clone())?;
        if self.mesh.refinement > 0 {
            for _ in 0..self.mesh.refinement {
                geometry = geometry.refine_uniform()?;
            }
            bulk = geometry.bulk.clone();
            bulk.level = 0;
            bulk.parents.clear();
            let mut f = geometry.fracture.clone();
            if let Some(f) = f.as_mut() {
                f.level = 0;
            }
            geometry = Geometry::new(bulk, f)?;
        }

        let m = &self.material;
        let (lambda, mu) = MaterialParams::lame_from_young(quantity("material.young", &m.young, Dimension::Pressure)?, m.poisson);
        let k = quantity("material.permeability", &m.permeability, Dimension::Permeability)?;
        let material = MaterialParams {
            permeability: [[k, 0.0], [0.0, k]],
            k_normal: quantity("material.normal_permeability", &m.normal_permeability, Dimension::Permeability)?,
            k_tangential: quantity("material.tangential_permeability", &m.tangential_permeability, Dimension::Permeability)?,
            viscosity: quantity("material.viscosity", &m.viscosity, Dimension::Viscosity)?,
            lambda,
            mu,
            poisson: m.poisson,
            xi: m.xi,
        };
        material.validate().map_err(|e| match e {
            Error::Parameter { name, reason } => Error::config(&format!("material.{name}"), reason),
            e => e,
        })?;

        let s = &self.sources;
        let mut data = ProblemData {
            body_force: pair("sources.body_force", &s.body_force, Dimension::ForceDensity)?.map(Datum::constant),
            bulk_source: datum("sources.bulk", &s.bulk, Dimension::Rate)?,
            fracture_source: datum("sources.fracture", &s.fracture, Dimension::Velocity)?,
            ..ProblemData::default()
        };
        for (tag, b) in &self.boundary {
            data.elastic.insert(tag.clone(), vector_bc(&format!("boundary.{tag}.elastic.value"), &b.elastic)?);
            data.bulk_flow.insert(tag.clone(), scalar_bc(&format!("boundary.{tag}.flow.value"), &b.flow)?);
        }
        for (tag, c) in &self.fracture_ends {
            data.fracture_flow.insert(tag.clone(), scalar_bc(&format!("fracture_ends.{tag}.value"), c)?);
        }
        let tags: Vec<String> = geometry.bulk.tags().into_iter().collect();
        data.validate(&tags, geometry.fracture.as_ref().map(|f| &f.end_tags))
            .map_err(|e| Error::config("boundary", e.to_string()))?;
        if let Some(f) = &geometry.fracture {
            if let Some(k) = self.fracture_ends.keys().find(|k| !f.end_tags.contains(k)) {
                return Err(Error::config(&format!("fracture_ends.{k}"), "not a fracture end tag"));
            }
        }

        let sv = &self.solver;
        let solver = SolverConfig {
            beta: sv.beta,
            initial_width: CrackWidthField::SqrtProfile {
                c: quantity("solver.initial_width", &sv.initial_width, Dimension::SqrtLength)?,
            },
            tolerance: sv.tolerance,
            max_iterations: sv.max_iterations,
            reference_mode: sv.reference_mode,
            reference_iterations: sv.reference_iterations,
        };
        solver.validate().map_err(|e| match e {
            Error::Parameter { name, reason } => Error::config(&format!("solver.{name}"), reason),
            e => e,
        })?;

        let radius = quantity("study.radius", &self.study.radius, Dimension::Length)?;
        if !(radius > 0.0) {
            return Err(Error::config("study.radius", "must be positive"));
        }
        if self.study.levels.is_empty() {
            return Err(Error::config("study.levels", "needs at least one level"));
        }
        if let Some(r) = self.study.reference_level {
            if self.study.levels.iter().any(|&l| l >= r) {
                return Err(Error::config("study.reference_level", "must be finer than every study level"));
            }
        }
        if !(self.study.tolerance > 0.0) {
            return Err(Error::config("study.tolerance", "must be positive"));
        }
        let mut output = self.output.clone();
        if output.directory.is_relative() {
            output.directory = base.join(&output.directory);
        }
        Ok(Resolved {
            source: self.clone(),
            geometry,
            material,
            data,
            solver,
            radius,
            levels: self.study.levels.clone(),
            reference_level: self.study.reference_level,
            study_tolerance: self.study.tolerance,
            output,
        })
    }

    fn bulk_mesh(&self, base: &Path) -> Result<BulkMesh> {
        let m = &self.mesh;
        match m.kind {
            MeshKind::Benchmark => Ok(benchmark::coarse_mesh()),
            MeshKind::Rectangle => {
                let missing = |k: &str| Error::config(&format!("mesh.{k}"), "required for a rectangle mesh");
                let lo = pair("mesh.lower", m.lower.as_ref().ok_or_else(|| missing("lower"))?, Dimension::Length)?;
                let hi = pair("mesh.upper", m.upper.as_ref().ok_or_else(|| missing("upper"))?, Dimension::Length)?;
                let [nx, ny] = m.cells.ok_or_else(|| missing("cells"))?;
                if nx == 0 || ny == 0 || hi[0] <= lo[0] || hi[1] <= lo[1] {
                    return Err(Error::config("mesh.cells", "need a non-empty rectangle and at least one cell per direction"));
                }
                BulkMesh::rectangle(lo[0], hi[0], lo[1], hi[1], nx, ny)
            }
            MeshKind::File => {
                let p = m.path.as_ref().ok_or_else(|| Error::config("mesh.path", "required for a file mesh"))?;
                crate::io::read_mesh(&base.join(p))
            }
        }
    }

    fn fracture_mesh(&self) -> Result<Option<FractureMesh>> {
        let Some(f) = &self.fracture else { return Ok(None) };
        if f.points.len() < 2 {
            return Err(Error::config("fracture.points", "needs at least two points"));
        }
        if f.segments == 0 {
            return Err(Error::config("fracture.segments", "must be at least 1"));
        }
        let pts = f
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| pair(&format!("fracture.points[{i}]"), p, Dimension::Length).map(|[x, y]| Point2::new(x, y)))
            .collect::<Result<Vec<_>>>()?;
        let mut vertices = vec![pts[0]];
        for w in pts.windows(2) {
            for k in 1..=f.segments {
                vertices.push(w[0].lerp(w[1], k as f64 / f.segments as f64));
            }
        }
        FractureMesh::new(vertices, f.tip, f.tags.clone()).map(Some)
    }
}

/// The benchmark as a configuration.
pub fn benchmark_config() -> RunConfig {
    let side = |dirichlet: bool| BoundarySection {
        elastic: if dirichlet {
            VectorCondition::Dirichlet { value: ["0 m".into(), "0 m".into()] }
        } else {
            VectorCondition::Neumann { value: ["0 Pa".into(), "0 Pa".into()] }
        },
        flow: if dirichlet {
            ScalarCondition::Dirichlet { value: "0 Pa".into() }
        } else {
            ScalarCondition::Neumann { value: "0 m/s".into() }
        },
    };
    RunConfig {
        mesh: MeshSection { kind: MeshKind::Benchmark, path: None, lower: None, upper: None, cells: None, refinement: 0 },
        fracture: Some(FractureSection {
            points: vec![["0 m".into(), "0 m".into()], ["500 m".into(), "0 m".into()]],
            segments: 8,
            tip: true,
            tags: ["inlet".into(), "tip".into()],
        }),
        material: MaterialSection {
            permeability: "0.1 mD".into(),
            normal_permeability: "100 D".into(),
            tangential_permeability: "100 D".into(),
            viscosity: "1 mPa*s".into(),
            young: "1 GPa".into(),
            poisson: 0.3,
            xi: 0.75,
        },
        sources: SourceSection::default(),
        boundary: ["bottom", "right", "top", "left"].iter().map(|t| (t.to_string(), side(*t == "bottom"))).collect(),
        fracture_ends: [
            ("inlet".to_string(), ScalarCondition::Dirichlet { value: "0.5 MPa".into() }),
            ("tip".to_string(), ScalarCondition::Neumann { value: "0 m/s".into() }),
        ]
        .into_iter()
        .collect(),
        solver: SolverSection { reference_mode: true, ..SolverSection::default() },
        study: StudySection { radius: "125 m".into(), levels: vec![0, 1, 2, 3], reference_level: Some(4), tolerance: 1e-9 },
        output: OutputSection::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_config_matches_builtin_setup() {
        let r = benchmark_config().resolve(Path::new(".")).unwrap();
        let m = benchmark::material();
        for (a, b) in [(r.material.k_normal, m.k_normal), (r.material.lambda, m.lambda), (r.material.permeability[0][0], m.permeability[0][0])] {
            assert!((a - b).abs() <= 1e-12 * b.abs());
        }
        assert_eq!(r.data, benchmark::problem_data());
        assert_eq!(r.radius, benchmark::RADIUS);
        assert_eq!(r.geometry.fracture.as_ref().unwrap().vertices, benchmark::fracture().vertices);
    }

    #[test]
    fn toml_round_trip() {
        let c = benchmark_config();
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn bad_unit_names_the_key() {
        let mut c = benchmark_config();
        c.material.viscosity = "1 GPa".into();
        match c.resolve(Path::new(".")) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "material.viscosity"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = benchmark_config().to_toml().replace("[mesh]", "[mesh]\ncolour = 3");
        assert!(matches!(RunConfig::from_toml(&text), Err(Error::Config { .. })));
    }

    #[test]
    fn missing_boundary_condition_is_config_error() {
        let mut c = benchmark_config();
        c.boundary.remove("top");
        assert!(matches!(c.resolve(Path::new(".")), Err(Error::Config { .. })));
    }

    #[test]
    fn polyline_subdivision() {
        let mut c = benchmark_config();
        let f = c.fracture.as_mut().unwrap();
        f.points.insert(1, ["250 m".into(), "10 m".into()]);
        f.segments = 3;
        let r = c.resolve(Path::new(".")).unwrap();
        assert_eq!(r.geometry.fracture.unwrap().n_segments(), 6);
    }
}
