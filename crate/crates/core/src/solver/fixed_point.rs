use log::{debug, info, warn};
use serde::{Deserialize, Serialize};

use super::linear::Factorization;
use crate::analysis::{GramMatrices, NormKind};
use crate::assembly::{
    apply_dirichlet, assemble_coupled_fluid, elasticity_constraints, elasticity_matrix, elasticity_rhs, Discretization,
    MaterialParams, ProblemData, SparseSystem,
};
use crate::enrichment::CrackWidthField;
use crate::{Error, Result};

/// Iteration variables (u_k, p_k^Ω, p_k^Σ).
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledState {
    pub u: Vec<f64>,
    pub p_bulk: Vec<f64>,
    pub p_frac: Vec<f64>,
    pub k: usize,
    /// Width used before the first displacement exists.
    pub initial_width: Option<CrackWidthField>,
}

impl CoupledState {
    pub fn initial(disc: &Discretization, width: CrackWidthField) -> Self {
        let s = &disc.space;
        CoupledState {
            u: vec![0.0; s.n_displacement_dofs()],
            p_bulk: vec![0.0; s.n_pressure_dofs()],
            p_frac: vec![0.0; s.n_fracture_dofs()],
            k: 0,
            initial_width: Some(width),
        }
    }

    /// Crack width b_k, regenerated from the current displacement (the
    /// initial width only before the first step).
    pub fn width(&self) -> CrackWidthField {
        match (&self.initial_width, self.k) {
            (Some(w), 0) => w.clone(),
            _ => CrackWidthField::Displacement(self.u.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Damping β ∈ (0, 1].
    pub beta: f64,
    pub initial_width: CrackWidthField,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Compare against a reference obtained by `reference_iterations` steps.
    pub reference_mode: bool,
    pub reference_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            beta: 1.0,
            initial_width: CrackWidthField::SqrtProfile { c: 1e-2 },
            tolerance: 1e-8,
            max_iterations: 50,
            reference_mode: false,
            reference_iterations: 20,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::param("beta", format!("must lie in (0, 1], got {}", self.beta)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::param("tolerance", "must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::param("max_iterations", "must be at least 1"));
        }
        Ok(())
    }
}

/// Per-iteration record of the fixed-point iteration.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IterationHistory {
    /// err_k for k = 1, 2, …: root-sum-of-squares of the per-field broken
    /// H¹-seminorm differences over that of the comparison triple.
    pub errors: Vec<f64>,
    /// Per-field relative errors [u, p^Ω, p^Σ].
    pub field_errors: Vec<[f64; 3]>,
    /// Min/max of the crack width after each iteration.
    pub width_range: Vec<[f64; 2]>,
    pub iterations: usize,
    pub converged: bool,
    /// Geometric mean of err_{k+1}/err_k above the round-off floor.
    pub contraction: f64,
    pub metric: String,
    pub reference_mode: bool,
}

pub const METRIC: &str = "rss of broken H1-seminorm differences over rss of comparison norms";

/// One level's coupled problem with the elasticity factorization cached.
pub struct CoupledProblem<'a> {
    pub disc: &'a Discretization,
    pub params: &'a MaterialParams,
    pub data: &'a ProblemData,
    elastic: Factorization,
    elastic_template: SparseSystem,
    pub gram: GramMatrices,
}

impl<'a> CoupledProblem<'a> {
    pub fn new(disc: &'a Discretization, params: &'a MaterialParams, data: &'a ProblemData) -> Result<Self> {
        params.validate()?;
        let a = elasticity_matrix(disc, params);
        let c = elasticity_constraints(disc, data)?;
        let zero = vec![0.0; a.n_rows];
        let elastic_template = apply_dirichlet(&a, &zero, &c, true);
        let elastic = Factorization::new(&elastic_template.matrix, true)?;
        Ok(CoupledProblem { disc, params, data, elastic, elastic_template, gram: GramMatrices::new(disc) })
    }

    /// Step 1: coupled fluid solve for a given width.
    pub fn solve_fluid(&self, b: &CrackWidthField) -> Result<(Vec<f64>, Vec<f64>)> {
        let sys = assemble_coupled_fluid(self.disc, self.params, self.data, b)?;
        let x = super::linear::solve_sparse(&sys)?;
        let np = self.disc.space.n_pressure_dofs();
        Ok((x[..np].to_vec(), x[np..].to_vec()))
    }

    /// Step 2: elasticity solve for given pressures.
    pub fn solve_elasticity(&self, p_bulk: &[f64], p_frac: &[f64]) -> Result<Vec<f64>> {
        let rhs = elasticity_rhs(self.disc, self.data, p_bulk, p_frac);
        let t = &self.elastic_template;
        let reduced: Vec<f64> = t.free.iter().zip(&t.rhs).map(|(&d, lift)| rhs[d] + lift).collect();
        let x = self.elastic.solve(&reduced)?;
        Ok(t.expand(&x))
    }

    /// Four-step substructuring update with damping β (the very first step,
    /// which starts from a prescribed width rather than a displacement, is
    /// taken undamped).
    pub fn step(&self, state: &CoupledState, beta: f64) -> Result<CoupledState> {
        let (p_bulk, p_frac) = self.solve_fluid(&state.width())?;
        let tilde = self.solve_elasticity(&p_bulk, &p_frac)?;
        let beta = if state.k == 0 && state.initial_width.is_some() { 1.0 } else { beta };
        let u = state.u.iter().zip(&tilde).map(|(old, new)| (1.0 - beta) * old + beta * new).collect();
        Ok(CoupledState { u, p_bulk, p_frac, k: state.k + 1, initial_width: None })
    }

    /// Per-field broken H¹ seminorms of a state.
    pub fn field_norms(&self, s: &CoupledState) -> [f64; 3] {
        [
            self.gram.displacement_norm(&s.u, NormKind::H1Semi),
            self.gram.pressure_norm(&s.p_bulk, NormKind::H1Semi),
            self.gram.fracture_norm(&s.p_frac, NormKind::H1Semi),
        ]
    }

    /// err between two states relative to `reference`: combined and per field.
    pub fn relative_error(&self, s: &CoupledState, reference: &CoupledState) -> (f64, [f64; 3]) {
        let diff = CoupledState {
            u: sub(&s.u, &reference.u),
            p_bulk: sub(&s.p_bulk, &reference.p_bulk),
            p_frac: sub(&s.p_frac, &reference.p_frac),
            k: 0,
            initial_width: None,
        };
        let d = self.field_norms(&diff);
        let r = self.field_norms(reference);
        let rss = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let per = [0, 1, 2].map(|i| if r[i] > 0.0 { d[i] / r[i] } else { d[i] });
        let total = rss(r);
        (if total > 0.0 { rss(d) / total } else { rss(d) }, per)
    }

    fn width_range(&self, s: &CoupledState) -> [f64; 2] {
        let (lo, hi) = s.width().range(&self.disc.space, &self.disc.interface);
        [lo, hi]
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Geometric mean of successive error ratios, ignoring errors at round-off level.
pub fn contraction_factor(errors: &[f64]) -> f64 {
    let floor = 1e-13;
    let usable: Vec<f64> = errors.iter().copied().take_while(|&e| e > floor).collect();
    if usable.len() < 2 {
        return 0.0;
    }
    let n = (usable.len() - 1) as f64;
    (usable[usable.len() - 1] / usable[0]).powf(1.0 / n)
}

fn check_divergence(errors: &[f64]) -> bool {
    errors.len() >= 4 && errors[errors.len() - 4..].windows(2).all(|w| w[1] > w[0])
}

/// Runs the substructuring iteration. In reference mode every iterate is
/// compared with the result of `reference_iterations` steps; otherwise the
/// successive difference is the error measure.
pub fn run_fixed_point(problem: &CoupledProblem, config: &SolverConfig) -> Result<(CoupledState, IterationHistory)> {
    config.validate()?;
    let mut history = IterationHistory { metric: METRIC.to_string(), reference_mode: config.reference_mode, ..Default::default() };
    let mut state = CoupledState::initial(problem.disc, config.initial_width.clone());

    if config.reference_mode {
        let n = config.reference_iterations.max(1);
        let mut iterates = Vec::with_capacity(n);
        for _ in 0..n {
            state = problem.step(&state, config.beta)?;
            history.width_range.push(problem.width_range(&state));
            iterates.push(state.clone());
        }
        let reference = iterates.last().unwrap().clone();
        for s in &iterates[..n - 1] {
            let (e, per) = problem.relative_error(s, &reference);
            history.errors.push(e);
            history.field_errors.push(per);
        }
        history.contraction = contraction_factor(&history.errors);
        match history.errors.iter().position(|&e| e < config.tolerance) {
            Some(k) => {
                history.iterations = k + 1;
                history.converged = true;
            }
            None => history.iterations = n,
        }
        info!(
            "reference run: {} iterations to tolerance {:e}, contraction {:.3e}",
            history.iterations, config.tolerance, history.contraction
        );
        let k = history.iterations;
        let out = if history.converged { iterates[k - 1].clone() } else { reference };
        return Ok((out, history));
    }

    for _ in 0..config.max_iterations {
        let next = problem.step(&state, config.beta)?;
        history.width_range.push(problem.width_range(&next));
        let (e, per) = if state.k == 0 {
            (f64::INFINITY, [f64::INFINITY; 3])
        } else {
            problem.relative_error(&state, &next)
        };
        state = next;
        history.iterations = state.k;
        debug!("iteration {}: err {:e}", state.k, e);
        if state.k > 1 {
            history.errors.push(e);
            history.field_errors.push(per);
        }
        if e < config.tolerance || config.tolerance == f64::INFINITY {
            history.converged = true;
            break;
        }
        if check_divergence(&history.errors) {
            return Err(Error::Diverged { iterations: state.k, history: history.errors.clone() });
        }
    }
    history.contraction = contraction_factor(&history.errors);
    if !history.converged {
        warn!("fixed-point iteration stopped after {} iterations", history.iterations);
    }
    Ok((state, history))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_of_geometric_sequence() {
        let e: Vec<f64> = (0..6).map(|k| 0.1f64.powi(k)).collect();
        assert!((contraction_factor(&e) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn divergence_detection() {
        assert!(check_divergence(&[1.0, 2.0, 3.0, 4.0]));
        assert!(!check_divergence(&[1.0, 2.0, 1.5, 4.0]));
        assert!(!check_divergence(&[1.0, 2.0, 3.0]));
    }
}
