use std::collections::BTreeMap;

use crate::scalar::{Scalar, Tolerance};

/// Dimension-tagged sparse matrix with explicit zeros dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = ((usize, usize), S)>,
    ) -> Self {
        let mut m = SparseMatrix::new(rows, cols);
        for ((r, c), v) in entries {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Accumulates `v` into entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        let slot = self.entries.entry((r, c)).or_insert_with(S::zero);
        *slot = slot.clone() + v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.conj()))
                .collect(),
        }
    }

    pub fn matmul(&self, rhs: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &S)>> = BTreeMap::new();
        for (&(r, c), v) in &rhs.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for (&(r, k), x) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, y) in row {
                    out.add_to(r, c, x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// Block Kronecker product: block `(p, q)` of the result is `self · rhs[p, q]`.
    ///
    /// Entry `(p · self.rows + i, q · self.cols + j)` equals `self[i, j] · rhs[p, q]`.
    pub fn kron(&self, rhs: &SparseMatrix<S>) -> SparseMatrix<S> {
        let mut out = SparseMatrix::new(self.rows * rhs.rows, self.cols * rhs.cols);
        for (&(p, q), b) in &rhs.entries {
            for (&(i, j), a) in &self.entries {
                out.add_to(
                    p * self.rows + i,
                    q * self.cols + j,
                    a.clone() * b.clone(),
                );
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &SparseMatrix<S>, tol: Tolerance) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .all(|&(r, c)| self.get(r, c).approx_eq(&other.get(r, c), tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn m(rows: usize, cols: usize, v: &[i64]) -> SparseMatrix<Q> {
        SparseMatrix::from_entries(
            rows,
            cols,
            v.iter()
                .enumerate()
                .map(|(i, &x)| ((i / cols, i % cols), Q::from_i64(x))),
        )
    }

    #[test]
    fn kron_block_layout() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(1, 2, &[1, 10]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k, m(2, 4, &[1, 2, 10, 20, 3, 4, 30, 40]));
    }

    #[test]
    fn matmul_small() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let id = m(2, 2, &[1, 0, 0, 1]);
        assert_eq!(a.matmul(&id), a);
        assert_eq!(a.matmul(&a), m(2, 2, &[7, 10, 15, 22]));
    }
}
