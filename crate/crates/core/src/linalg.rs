//! Exact linear algebra over a [`Field`]: dense matrices, reduced row echelon form,
//! kernels, solving, and subspaces kept in canonical echelon form.
//!
//! Pivoting always takes the first nonzero entry scanning top to bottom within a
//! column and normalizes the pivot to 1, so every result is deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::field::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    NoSolution,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Vector = Vec<FieldElement>;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(field: Field, rows: &[Vector]) -> Result<Matrix, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, got: r.len() });
            }
            entries.extend_from_slice(r);
        }
        Ok(Matrix { field, rows: rows.len(), cols, entries })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, got: col.len() });
            }
            for (r, &v) in col.iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    out[(i, j)] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// True when every row and column has exactly one nonzero entry, equal to 1.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let mut col_hits = vec![0usize; self.cols];
        for r in 0..self.rows {
            let mut hits = 0;
            for (c, e) in self.row(r).iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !e.is_one() {
                    return false;
                }
                hits += 1;
                col_hits[c] += 1;
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }

    /// Reduces in place to reduced row echelon form, returning the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self[(r, j)];
                self[(r, j)] = v * inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                self.sub_row_multiple(i, r, factor, c);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, read off the RREF.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, free)];
                }
                v
            })
            .collect()
    }

    /// One solution of `M v = rhs` (free variables set to zero).
    pub fn solve(&self, rhs: &[FieldElement]) -> Result<Vector, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: rhs.len() });
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = rhs[i];
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut v = vec![self.field.zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = aug[(row, self.cols)];
        }
        Ok(v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]`, for columns `from..`.
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: FieldElement, from: usize) {
        let cols = self.cols;
        for j in from..cols {
            let s = self.entries[source * cols + j];
            if !s.is_zero() {
                self.entries[target * cols + j] -= factor * s;
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `field^ambient`, stored as the rows of its reduced echelon basis.
/// Two subspaces are equal iff their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a, I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut s = Subspace::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduced echelon basis, ordered by pivot column.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector length must match the ambient dimension");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            for (wj, &rj) in w.iter_mut().zip(row).skip(p) {
                if !rj.is_zero() {
                    *wj -= c * rj;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        if self.is_full() {
            return false;
        }
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for e in w.iter_mut().skip(p) {
            *e *= inv;
        }
        for row in &mut self.rows {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            for (rj, &wj) in row.iter_mut().zip(&w).skip(p) {
                if !wj.is_zero() {
                    *rj -= c * wj;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Dimension of `self + other`.
    pub fn sum_dim(&self, other: &Subspace) -> usize {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s.dim()
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }
}
