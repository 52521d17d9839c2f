//! Finite complex sequences, their supports and the coefficient algebra
//! (cross sequences, autocorrelations) shared by the other modules.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// A finitely supported sequence `(a_j)_{j ∈ Z}`.
///
/// `coeffs[i]` is the value at index `offset + i`. Leading and trailing zeros
/// are trimmed on construction, so the zero sequence is the empty list.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal<S> {
    offset: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> Signal<S> {
    /// Builds a sequence starting at `offset`, trimming zero tails.
    pub fn new(offset: i64, coeffs: Vec<S>) -> Self {
        let mut s = Signal { offset, coeffs };
        s.trim();
        s
    }

    /// A sequence indexed from 0.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        Signal::new(0, coeffs)
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Signal::from_coeffs(values.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn zero() -> Self {
        Signal {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.offset = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `N` for a signal in `S(N)`, i.e. the index span; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at absolute index `j` (zero outside the stored window).
    pub fn at(&self, j: i64) -> S {
        let i = j - self.offset;
        if i < 0 || i as usize >= self.coeffs.len() {
            S::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Offset 0 and nonzero end points.
    pub fn is_normalized(&self) -> bool {
        !self.coeffs.is_empty() && self.offset == 0
    }

    /// Requires the signal to be in normalized form.
    pub fn ensure_normalized(&self) -> Result<()> {
        if self.is_empty_signal() {
            return Err(Error::EmptySignal);
        }
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(())
    }

    fn is_empty_signal(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Signal<T> {
        Signal::new(self.offset, self.coeffs.iter().map(f).collect())
    }

    pub fn to_float(&self) -> Signal<num_complex::Complex64> {
        self.map(|c| c.to_complex64())
    }

    /// `Σ |a_j|²`.
    pub fn energy(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, c| acc + c.norm_sqr())
    }

    /// Coefficient-wise comparison (offsets must agree).
    pub fn approx_eq(&self, other: &Signal<S>, tol: Tolerance) -> bool {
        self.offset == other.offset
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(x, y)| x.approx_eq(y, tol))
    }
}

/// Strictly increasing finite set of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SupportSet {
    elems: Vec<i64>,
}

impl SupportSet {
    pub fn new(elems: impl IntoIterator<Item = i64>) -> Self {
        let set: BTreeSet<i64> = elems.into_iter().collect();
        SupportSet {
            elems: set.into_iter().collect(),
        }
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, n: i64) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    pub fn min(&self) -> Option<i64> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elems.last().copied()
    }

    /// `Λ - m`.
    pub fn translate(&self, by: i64) -> SupportSet {
        SupportSet::new(self.elems.iter().map(|&n| n + by))
    }

    /// `m - Λ`.
    pub fn reflect_about(&self, m: i64) -> SupportSet {
        SupportSet::new(self.elems.iter().map(|&n| m - n))
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.elems.iter().all(|&n| other.contains(n))
    }
}

/// Strips zero tails and moves the first nonzero entry to index 0.
///
/// Returns the normalized signal together with the translation applied:
/// `s_j = normalized_{j - shift}`.
pub fn normalize<S: Scalar>(s: &Signal<S>) -> Result<(Signal<S>, i64)> {
    if s.is_zero() {
        return Err(Error::EmptySignal);
    }
    // Signal construction has already trimmed both tails.
    let shift = s.offset;
    Ok((Signal::new(0, s.coeffs.clone()), shift))
}

/// `c_j = a_j · conj(a_{j-k})`, the Fourier coefficients of `𝒜(a)(k, ·)`.
///
/// The list is indexed like `a` (entry `i` is `c_{offset + i}`); it is all zeros
/// when `|k|` exceeds the span of `a`.
pub fn cross_sequence<S: Scalar>(a: &Signal<S>, k: i64) -> Vec<S> {
    let off = a.offset();
    (0..a.coeffs().len() as i64)
        .map(|i| {
            let j = off + i;
            a.coeffs()[i as usize].clone() * a.at(j - k).conj()
        })
        .collect()
}

/// `s_m = Σ_n c_n · conj(c_{n-m})` for `m = -(L-1) ..= L-1`.
///
/// Entry `m + L - 1` of the result holds `s_m`; these are the Fourier
/// coefficients of `|Σ_n c_n e^{iny}|²`.
pub fn autocorrelation<S: Scalar>(c: &[S]) -> Vec<S> {
    let len = c.len();
    if len == 0 {
        return Vec::new();
    }
    let mut out = vec![S::zero(); 2 * len - 1];
    for (m_idx, slot) in out.iter_mut().enumerate() {
        let m = m_idx as i64 - (len as i64 - 1);
        let mut acc = S::zero();
        for n in 0..len as i64 {
            let p = n - m;
            if p >= 0 && (p as usize) < len {
                acc = acc + c[n as usize].clone() * c[p as usize].conj();
            }
        }
        *slot = acc;
    }
    out
}

/// The non-negative lags `s_0, s_1, …, s_{L-1}` of [`autocorrelation`].
pub fn autocorrelation_nonneg<S: Scalar>(c: &[S]) -> Vec<S> {
    let len = c.len();
    (0..len)
        .map(|m| {
            (m..len).fold(S::zero(), |acc, n| {
                acc + c[n].clone() * c[n - m].conj()
            })
        })
        .collect()
}

/// Indices of the nonzero coefficients.
pub fn support<S: Scalar>(a: &Signal<S>) -> SupportSet {
    SupportSet::new(
        a.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| a.offset() + i as i64),
    )
}

/// `Λ - Λ`.
pub fn difference_set(set: &SupportSet) -> SupportSet {
    let e = set.elems();
    SupportSet::new(e.iter().flat_map(|&x| e.iter().map(move |&y| x - y)))
}

/// All sums `n₁ + n₂ + n₃` with `n₁ ≤ n₂ ≤ n₃` in `Λ`, with multiplicity,
/// in the order of the index triples.
pub fn sum3_multiset(set: &SupportSet) -> Vec<i64> {
    let e = set.elems();
    let mut out = Vec::new();
    for i in 0..e.len() {
        for j in i..e.len() {
            for k in j..e.len() {
                out.push(e[i] + e[j] + e[k]);
            }
        }
    }
    out
}
