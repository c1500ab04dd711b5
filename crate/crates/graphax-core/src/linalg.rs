//! Dense exact linear algebra over a [`FieldCtx`]: Gaussian elimination with
//! pivot-by-first-nonzero, rank, nullspaces, and an incrementally maintained
//! reduced echelon basis for subspace membership and closure computations.
//!
//! All arithmetic is exact; over the rationals intermediate entries are always
//! reduced fractions. Every routine is deterministic for a fixed input.

use crate::field::{FieldCtx, Scalar};

/// Dense row-major matrix with entries in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ctx: FieldCtx,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            ctx,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(ctx: FieldCtx, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(ctx, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(ctx: FieldCtx, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(ctx, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `self - lambda * I`; square matrices only.
    pub fn minus_scalar_identity(&self, lambda: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let d = m.get(i, i).sub(lambda).expect("same field");
            m.set(i, i, d);
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ctx.zero();
                for (j, coeff) in v.iter().enumerate() {
                    let e = self.get(i, j);
                    if !e.is_zero() && !coeff.is_zero() {
                        acc = acc
                            .add(&e.mul(coeff).expect("same field"))
                            .expect("same field");
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form. Pivot rule: within each column, the first
    /// remaining row with a nonzero entry. Returns the reduced matrix and the
    /// pivot column indices in order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, pr * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv).expect("same field");
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m
                            .get(i, j)
                            .sub(&factor.mul(m.get(r, j)).expect("same field"))
                            .expect("same field");
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right nullspace: one vector per free column,
    /// with a 1 in the free coordinate, ordered by free column index.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_row: std::collections::BTreeMap<usize, usize> = pivots
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![self.ctx.zero(); self.cols];
            v[free] = self.ctx.one();
            for (&pc, &prow) in &pivot_row {
                v[pc] = r.get(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = rhs` exactly; `None` when inconsistent. When the
    /// solution is not unique, free coordinates are set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.ctx, self.rows, self.cols + 1);
        for (i, value) in rhs.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, value.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.ctx.zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Row-major entries rendered as strings, for debug export.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect()
    }

    /// Row-major JSON arrays of scalar strings, for debug export.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.to_string_rows())
    }
}

/// A reduced echelon basis of a subspace of `F^dim`, maintained in RREF so the
/// stored rows are canonical for the span regardless of insertion order.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(_ctx: FieldCtx, dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Pivot coordinates of the stored rows, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after subtracting its projection on the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for j in p..self.dim {
                    if !row[j].is_zero() {
                        v[j] = v[j]
                            .sub(&factor.mul(&row[j]).expect("same field"))
                            .expect("same field");
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v` if independent of the current span; returns whether the
    /// basis grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        let norm: Vec<Scalar> = v.iter().map(|x| x.mul(&inv).expect("same field")).collect();
        // back-substitute to keep the stored rows fully reduced
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for j in 0..self.dim {
                    if !norm[j].is_zero() {
                        row[j] = row[j]
                            .sub(&factor.mul(&norm[j]).expect("same field"))
                            .expect("same field");
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, norm);
        true
    }
}
