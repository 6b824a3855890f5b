use std::collections::BTreeMap;

use crate::{Error, Result};

/// Coordinate-format accumulator; duplicates are summed on conversion.
#[derive(Debug, Clone, Default)]
pub struct Triplets {
    pub n_rows: usize,
    pub n_cols: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl Triplets {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        Triplets { n_rows, n_cols, entries: Vec::new() }
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        if v != 0.0 {
            self.entries.push((i, j, v));
        }
    }
}

/// Compressed sparse row matrix with sorted, unique column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    pub fn from_triplets(t: &Triplets) -> Self {
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); t.n_rows];
        for &(i, j, v) in &t.entries {
            *rows[i].entry(j).or_insert(0.0) += v;
        }
        let mut row_ptr = Vec::with_capacity(t.n_rows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for r in rows {
            for (j, v) in r {
                col_idx.push(j);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        CsrMatrix { n_rows: t.n_rows, n_cols: t.n_cols, row_ptr, col_idx, values }
    }

    pub fn identity(n: usize) -> Self {
        CsrMatrix { n_rows: n, n_cols: n, row_ptr: (0..=n).collect(), col_idx: (0..n).collect(), values: vec![1.0; n] }
    }

    pub fn from_dense(a: &[Vec<f64>]) -> Self {
        let mut t = Triplets::new(a.len(), a.first().map_or(0, |r| r.len()));
        for (i, row) in a.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t.add(i, j, v);
            }
        }
        CsrMatrix::from_triplets(&t)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (self.col_idx[k], self.values[k]))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let cols = &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]];
        cols.binary_search(&j).map_or(0.0, |k| self.values[self.row_ptr[i] + k])
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    pub fn transpose(&self) -> CsrMatrix {
        let mut t = Triplets::new(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for (j, v) in self.row(i) {
                t.entries.push((j, i, v));
            }
        }
        CsrMatrix::from_triplets(&t)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n_rows).map(|i| self.row(i).map(|(_, v)| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// max |A − Aᵀ| over all entries.
    pub fn asymmetry(&self) -> f64 {
        let t = self.transpose();
        let mut worst = 0.0_f64;
        for i in 0..self.n_rows {
            for (j, v) in self.row(i) {
                worst = worst.max((v - t.get(i, j)).abs());
            }
            for (j, v) in t.row(i) {
                worst = worst.max((v - self.get(i, j)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        self.n_rows == self.n_cols && self.asymmetry() <= rel_tol * self.max_abs()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n_rows.min(self.n_cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n_cols]; self.n_rows];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }
}

/// Dirichlet constraints: DOF → prescribed value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Constraints {
    pub values: BTreeMap<usize, f64>,
}

impl Constraints {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a constraint; a different value on the same DOF is an error.
    pub fn add(&mut self, dof: usize, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::Boundary(format!("non-finite Dirichlet value on dof {dof}")));
        }
        match self.values.get(&dof) {
            Some(&old) if (old - value).abs() > 1e-12 * old.abs().max(value.abs()).max(1e-300) => {
                Err(Error::ConflictingConstraint { dof, first: old, second: value })
            }
            Some(_) => Ok(()),
            None => {
                self.values.insert(dof, value);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One term c·l·(r·x) of a low-rank operator; `right == None` means r = l.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOne {
    pub coef: f64,
    pub left: Vec<(usize, f64)>,
    pub right: Option<Vec<(usize, f64)>>,
}

/// Unassembled sum of rank-one terms. Keeping interface couplings in this
/// form preserves their exact null spaces, which assembly into a matrix
/// destroys at round-off level when the couplings dwarf the bulk terms.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LowRank {
    pub terms: Vec<RankOne>,
}

impl LowRank {
    pub fn push_symmetric(&mut self, coef: f64, v: Vec<(usize, f64)>) {
        if coef != 0.0 {
            self.terms.push(RankOne { coef, left: v, right: None });
        }
    }

    pub fn push(&mut self, coef: f64, left: Vec<(usize, f64)>, right: Vec<(usize, f64)>) {
        if coef != 0.0 {
            self.terms.push(RankOne { coef, left, right: Some(right) });
        }
    }

    pub fn assemble_into(&self, t: &mut Triplets) {
        for term in &self.terms {
            let right = term.right.as_ref().unwrap_or(&term.left);
            for &(i, li) in &term.left {
                for &(j, rj) in right {
                    t.add(i, j, term.coef * li * rj);
                }
            }
        }
    }
}

/// Unconstrained operator `base + low_rank` with its load, kept next to the
/// reduced system so residuals can be evaluated without assembly round-off.
#[derive(Debug, Clone)]
pub struct ExactOperator {
    pub base: CsrMatrix,
    pub low_rank: LowRank,
    pub rhs: Vec<f64>,
}

impl ExactOperator {
    /// rhs − A·x accumulated in double-double arithmetic.
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        let n = self.rhs.len();
        let mut hi = self.rhs.clone();
        let mut lo = vec![0.0; n];
        for i in 0..n {
            for (j, v) in self.base.row(i) {
                accumulate(&mut hi[i], &mut lo[i], -v, x[j]);
            }
        }
        for term in &self.low_rank.terms {
            let right = term.right.as_ref().unwrap_or(&term.left);
            let (mut sh, mut sl) = (0.0, 0.0);
            for &(j, rj) in right {
                accumulate(&mut sh, &mut sl, rj, x[j]);
            }
            let s = -term.coef * (sh + sl);
            for &(i, li) in &term.left {
                accumulate(&mut hi[i], &mut lo[i], s, li);
            }
        }
        hi.iter().zip(&lo).map(|(h, l)| h + l).collect()
    }

    pub fn assemble(&self) -> CsrMatrix {
        let mut t = Triplets::new(self.base.n_rows, self.base.n_cols);
        for i in 0..self.base.n_rows {
            for (j, v) in self.base.row(i) {
                t.entries.push((i, j, v));
            }
        }
        self.low_rank.assemble_into(&mut t);
        CsrMatrix::from_triplets(&t)
    }
}

/// hi + lo += a·b without losing the rounding errors of the product and sum.
#[inline]
pub(crate) fn accumulate(hi: &mut f64, lo: &mut f64, a: f64, b: f64) {
    let p = a * b;
    let pe = a.mul_add(b, -p);
    let s = *hi + p;
    let bb = s - *hi;
    let se = (*hi - (s - bb)) + (p - bb);
    *hi = s;
    *lo += se + pe;
}

/// Linear system over the free DOFs after Dirichlet elimination.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    /// Reduced index → full DOF.
    pub free: Vec<usize>,
    /// Prescribed values per full DOF.
    pub fixed: Vec<Option<f64>>,
    pub symmetric: bool,
    /// Unassembled operator for accurate residuals, when available.
    pub exact: Option<ExactOperator>,
}

impl SparseSystem {
    pub fn n_full(&self) -> usize {
        self.fixed.len()
    }

    /// Residual of the free rows for a reduced iterate, evaluated on the
    /// unassembled operator when one is attached.
    pub fn exact_residual(&self, x: &[f64]) -> Option<Vec<f64>> {
        let op = self.exact.as_ref()?;
        let r = op.residual(&self.expand(x));
        Some(self.free.iter().map(|&d| r[d]).collect())
    }

    /// Full coefficient vector from a reduced solution.
    pub fn expand(&self, x: &[f64]) -> Vec<f64> {
        let mut full: Vec<f64> = self.fixed.iter().map(|v| v.unwrap_or(0.0)).collect();
        for (k, &d) in self.free.iter().enumerate() {
            full[d] = x[k];
        }
        full
    }
}

/// Symmetric elimination of Dirichlet DOFs: constrained rows and columns are
/// removed and their contribution lifted into the right-hand side.
pub fn apply_dirichlet(matrix: &CsrMatrix, rhs: &[f64], constraints: &Constraints, symmetric: bool) -> SparseSystem {
    let n = matrix.n_rows;
    let mut fixed = vec![None; n];
    for (&d, &v) in &constraints.values {
        fixed[d] = Some(v);
    }
    let mut reduced = vec![usize::MAX; n];
    let mut free = Vec::with_capacity(n - constraints.len().min(n));
    for d in 0..n {
        if fixed[d].is_none() {
            reduced[d] = free.len();
            free.push(d);
        }
    }
    let mut t = Triplets::new(free.len(), free.len());
    let mut b = Vec::with_capacity(free.len());
    for &d in &free {
        let mut bi = rhs[d];
        for (j, v) in matrix.row(d) {
            match fixed[j] {
                Some(g) => bi -= v * g,
                None => t.entries.push((reduced[d], reduced[j], v)),
            }
        }
        b.push(bi);
    }
    SparseSystem { matrix: CsrMatrix::from_triplets(&t), rhs: b, free, fixed, symmetric, exact: None }
}

/// Dirichlet elimination of an unassembled operator; the operator stays
/// attached for residual evaluation.
pub fn apply_dirichlet_exact(op: ExactOperator, constraints: &Constraints, symmetric: bool) -> SparseSystem {
    let mut s = apply_dirichlet(&op.assemble(), &op.rhs, constraints, symmetric);
    s.exact = Some(op);
    s
}
