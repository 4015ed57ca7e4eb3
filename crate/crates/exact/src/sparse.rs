//! Sparse matrices stored by columns.

use std::fmt;

use crate::field::Field;
use crate::vector::SparseVec;

/// A `rows x cols` matrix whose `j`-th column is the image of the `j`-th unit
/// vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix<F> {
    rows: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![SparseVec::zero(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.entries().last().is_none_or(|(i, _)| *i < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.columns[j].get(i)
    }

    pub fn set_column(&mut self, j: usize, v: SparseVec<F>) {
        self.columns[j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::len).sum()
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        v.iter().fold(SparseVec::zero(), |acc, (j, c)| acc.add_scaled(&self.columns[*j], c))
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        SparseMatrix { rows: self.rows, columns: rhs.columns.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.sub(b))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&SparseVec<F>, &SparseVec<F>) -> SparseVec<F>) -> Self {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()), "dimension mismatch");
        SparseMatrix { rows: self.rows, columns: self.columns.iter().zip(&rhs.columns).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix { rows: self.rows, columns: self.columns.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[*i].push((j, c.clone()));
            }
        }
        SparseMatrix { rows: self.cols(), columns: rows.into_iter().map(SparseVec::from_pairs).collect() }
    }

    /// Entry-wise conversion; zero images are dropped.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix { rows: self.rows, columns: self.columns.iter().map(|c| c.map(&f)).collect() }
    }

    /// The matrix `P^-1 A P` for the permutation sending old index `k` to
    /// `perm[k]`, i.e. rows and columns relabelled by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut columns = vec![SparseVec::zero(); self.cols()];
        for (j, col) in self.columns.iter().enumerate() {
            columns[perm[j]] = col.reindex(|i| Some(perm[i]));
        }
        SparseMatrix { rows: self.rows, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                out[*i][j] = c.clone();
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for SparseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
