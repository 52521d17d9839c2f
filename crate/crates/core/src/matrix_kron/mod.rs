//! The ambiguity matrix `K_a`, the Gram-equality partner criterion, Kronecker
//! products of signals and matrices, and strange-partner constructions.
//!
//! `K_a` lives on the lattice `Γ_N = {γ (m, ℓ)ᵀ : 0 ≤ m, ℓ ≤ N}` with
//! `γ = [[-1, 1], [1, 1]]`: the lattice point `(m, ℓ)` sits at difference
//! coordinate `i = ℓ - m ∈ [-N, N]` and sum coordinate `j = ℓ + m ∈ [0, 2N]`
//! and carries the value `a_m a_ℓ`.
//!
//! As a `(2N+1) × (2N+1)` matrix the sum coordinate indexes rows and the
//! difference coordinate (shifted by `N`) indexes columns. With this layout
//! `K_a* K_a` contracts over sums, and `K_a* K_a = K_b* K_b` holds exactly
//! when `a` and `b` are ambiguity partners.

mod constructions;
mod search;
mod sparse;

use std::collections::BTreeMap;

pub use constructions::{interleave, iterated_product, Flip, FlipMode, Interleaved};
pub use search::{strange_search, Certification, SearchCandidate, SearchConfig, SearchReport};
pub use sparse::SparseMatrix;

use crate::error::Result;
use crate::scalar::{Scalar, Tolerance};
use crate::seqcore::Signal;

/// Sparse `K_a`, keyed by lattice pairs `(m, ℓ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbiguityMatrix<S> {
    degree: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> AmbiguityMatrix<S> {
    /// `N`; the matrix view is `(2N+1) × (2N+1)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        2 * self.degree + 1
    }

    /// `(m, ℓ) ↦ a_m a_ℓ`, nonzero entries only.
    pub fn lattice(&self) -> &BTreeMap<(usize, usize), S> {
        &self.entries
    }

    /// Entries in `(i, j) = (ℓ - m, ℓ + m)` coordinates.
    pub fn lattice_entries(&self) -> Vec<((i64, i64), S)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .map(|(&(m, l), x)| ((l as i64 - m as i64, (l + m) as i64), x.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Value at `(i, j)`; zero off the lattice.
    pub fn at(&self, i: i64, j: i64) -> S {
        if (i + j).rem_euclid(2) != 0 || j < i.abs() {
            return S::zero();
        }
        let (m, l) = ((j - i) / 2, (j + i) / 2);
        self.entries
            .get(&(m as usize, l as usize))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Matrix view: row = sum coordinate `j`, column = `i + N`.
    pub fn to_matrix(&self) -> SparseMatrix<S> {
        let n = self.degree;
        SparseMatrix::from_entries(
            self.dim(),
            self.dim(),
            self.entries
                .iter()
                .map(|(&(m, l), x)| ((l + m, l + n - m), x.clone())),
        )
    }

    /// Inverse of [`to_matrix`](Self::to_matrix). `None` when an entry falls
    /// off the lattice or the matrix is not `(2N+1)`-square.
    pub fn from_matrix(degree: usize, mat: &SparseMatrix<S>) -> Option<Self> {
        let dim = 2 * degree + 1;
        if mat.rows() != dim || mat.cols() != dim {
            return None;
        }
        let mut entries = BTreeMap::new();
        for ((j, col), x) in mat.entries() {
            let i = col as i64 - degree as i64;
            let j = j as i64;
            if (i + j).rem_euclid(2) != 0 || j < i.abs() || j - i.abs() > 2 * degree as i64 - 2 * i.abs() {
                return None;
            }
            let (m, l) = ((j - i) / 2, (j + i) / 2);
            if m < 0 || l < 0 || m as usize > degree || l as usize > degree {
                return None;
            }
            entries.insert((m as usize, l as usize), x.clone());
        }
        Some(AmbiguityMatrix { degree, entries })
    }

    /// `K̃_a[m, ℓ] = a_m a_ℓ` as an `(N+1) × (N+1)` matrix.
    pub fn tilde(&self) -> SparseMatrix<S> {
        let n = self.degree + 1;
        SparseMatrix::from_entries(n, n, self.entries.iter().map(|(&k, x)| (k, x.clone())))
    }

    /// `K_a* K_a`, accumulated row by row over the shared sum coordinate.
    pub fn gram(&self) -> SparseMatrix<S> {
        let mut rows: BTreeMap<usize, Vec<(usize, &S)>> = BTreeMap::new();
        for (&(m, l), x) in &self.entries {
            rows.entry(l + m).or_default().push((l + self.degree - m, x));
        }
        let mut g = SparseMatrix::new(self.dim(), self.dim());
        for row in rows.values() {
            for &(c1, x) in row {
                for &(c2, y) in row {
                    g.add_to(c1, c2, x.conj() * y.clone());
                }
            }
        }
        g
    }
}

/// `K_a` of a normalized signal.
pub fn build_k<S: Scalar>(a: &Signal<S>) -> Result<AmbiguityMatrix<S>> {
    a.ensure_normalized()?;
    let c = a.coeffs();
    let mut entries = BTreeMap::new();
    for (m, x) in c.iter().enumerate() {
        for (l, y) in c.iter().enumerate() {
            let v = x.clone() * y.clone();
            if !v.is_zero() {
                entries.insert((m, l), v);
            }
        }
    }
    Ok(AmbiguityMatrix {
        degree: c.len() - 1,
        entries,
    })
}

/// Partner decision through `K_a* K_a = K_b* K_b`.
pub fn gram_equal<S: Scalar>(a: &Signal<S>, b: &Signal<S>, tol: Tolerance) -> Result<bool> {
    let (ka, kb) = (build_k(a)?, build_k(b)?);
    if ka.degree != kb.degree {
        return Ok(false);
    }
    Ok(ka.gram().approx_eq(&kb.gram(), tol))
}

fn strided_product<S: Scalar>(a: &Signal<S>, b: &Signal<S>, stride: usize) -> Result<Signal<S>> {
    a.ensure_normalized()?;
    b.ensure_normalized()?;
    let (na, nb) = (a.coeffs().len(), b.coeffs().len());
    let len = (na - 1) + stride * (nb - 1) + 1;
    let mut c = vec![S::zero(); len];
    for (q, y) in b.coeffs().iter().enumerate() {
        for (p, x) in a.coeffs().iter().enumerate() {
            let idx = p + stride * q;
            c[idx] = c[idx].clone() + x.clone() * y.clone();
        }
    }
    Ok(Signal::from_coeffs(c))
}

/// `a ⊗ b`: coefficients of `P(z) Q(z^{2N+1})`, where `K_{a⊗b} = K_a ⊗ K_b`.
pub fn kron_signal<S: Scalar>(a: &Signal<S>, b: &Signal<S>) -> Result<Signal<S>> {
    let n = a.degree().unwrap_or(0);
    strided_product(a, b, 2 * n + 1)
}

/// Coefficients of `P(z) Q(z^{N+1})`, where `K̃_c = K̃_a ⊗ K̃_b`.
pub fn kron_signal_tight<S: Scalar>(a: &Signal<S>, b: &Signal<S>) -> Result<Signal<S>> {
    let n = a.degree().unwrap_or(0);
    strided_product(a, b, n + 1)
}

/// `K_a ⊗ K_b` as an ambiguity matrix of degree `N + (2N+1) M`.
pub fn kron_matrix<S: Scalar>(ka: &AmbiguityMatrix<S>, kb: &AmbiguityMatrix<S>) -> Option<AmbiguityMatrix<S>> {
    let product = ka.to_matrix().kron(&kb.to_matrix());
    let degree = ka.degree + ka.dim() * kb.degree;
    AmbiguityMatrix::from_matrix(degree, &product)
}
