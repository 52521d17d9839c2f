use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::{Scalar, Tolerance};

/// Univariate polynomial, coefficients in ascending degree. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Poly::new(values.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// `c Z^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut v = vec![S::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c == &S::one())
    }

    pub fn eval(&self, z: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| S::from_i64(k as i64) * c.clone())
                .collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// `P(-Z)`.
    pub fn reflect_argument(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `P̌(Z) = (-1)^n P(-Z)`.
    pub fn check(&self) -> Self {
        let r = self.reflect_argument();
        match self.degree() {
            Some(n) if n % 2 == 1 => -r,
            _ => r,
        }
    }

    /// `P*(Z) = conj(P(conj Z))`: conjugated coefficients.
    pub fn star(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_float(&self) -> Poly<Complex64> {
        self.map(|c| c.to_complex64())
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k).approx_eq(&other.coeff(k), tol))
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// `{Π, Ψ}₋ = Π Ψ̌ − Π̌ Ψ`.
pub fn bracket_minus<S: Scalar>(pi: &Poly<S>, psi: &Poly<S>) -> Poly<S> {
    &(pi * &psi.check()) - &(&pi.check() * psi)
}

/// `{Π, Ψ}₊ = Π Ψ̌ + Π̌ Ψ`.
pub fn bracket_plus<S: Scalar>(pi: &Poly<S>, psi: &Poly<S>) -> Poly<S> {
    &(pi * &psi.check()) + &(&pi.check() * psi)
}

/// Polynomial in two variables; `grid[i][j]` is the coefficient of `z^i w^j`.
/// All rows share one length and no top row or column is entirely zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<S> {
    grid: Vec<Vec<S>>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn new(grid: Vec<Vec<S>>) -> Self {
        let width = grid.iter().map(Vec::len).max().unwrap_or(0);
        let mut grid: Vec<Vec<S>> = grid
            .into_iter()
            .map(|mut row| {
                row.resize(width, S::zero());
                row
            })
            .collect();
        while grid.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            grid.pop();
        }
        let mut width = grid.first().map_or(0, Vec::len);
        while width > 0 && grid.iter().all(|r| r[width - 1].is_zero()) {
            width -= 1;
        }
        for row in &mut grid {
            row.truncate(width);
        }
        if width == 0 {
            grid.clear();
        }
        BiPoly { grid }
    }

    pub fn grid(&self) -> &[Vec<S>] {
        &self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    /// Coefficient of `z^i w^j`.
    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.grid
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn degree_z(&self) -> Option<usize> {
        self.grid.len().checked_sub(1)
    }

    pub fn degree_w(&self) -> Option<usize> {
        self.grid.first().and_then(|r| r.len().checked_sub(1))
    }

    /// The coefficient of `w^j`, a polynomial in `z`.
    pub fn w_coefficient(&self, j: usize) -> Poly<S> {
        Poly::new(self.grid.iter().map(|r| r.get(j).cloned().unwrap_or_else(S::zero)).collect())
    }

    /// `(z, w) ↦ (-z, -w)`.
    pub fn reflect(&self) -> Self {
        BiPoly {
            grid: self
                .grid
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, c)| if (i + j) % 2 == 1 { -c.clone() } else { c.clone() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &BiPoly<S>) -> BiPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly { grid: Vec::new() };
        }
        let (h1, w1) = (self.grid.len(), self.grid[0].len());
        let (h2, w2) = (rhs.grid.len(), rhs.grid[0].len());
        let mut out = vec![vec![S::zero(); w1 + w2 - 1]; h1 + h2 - 1];
        for (i1, r1) in self.grid.iter().enumerate() {
            for (j1, x) in r1.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (i2, r2) in rhs.grid.iter().enumerate() {
                    for (j2, y) in r2.iter().enumerate() {
                        let slot = &mut out[i1 + i2][j1 + j2];
                        *slot = slot.clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        BiPoly::new(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly::new(self.grid.iter().map(|r| r.iter().map(&f).collect()).collect())
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        let h = self.grid.len().max(other.grid.len());
        let w = self.degree_w().max(other.degree_w()).map_or(0, |d| d + 1);
        (0..h).all(|i| (0..w).all(|j| self.coeff(i, j).approx_eq(&other.coeff(i, j), tol)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn p(v: &[i64]) -> Poly<Q> {
        Poly::from_i64s(v)
    }

    #[test]
    fn check_and_star() {
        // Z² + 3Z + 2 → Z² − 3Z + 2
        assert_eq!(p(&[2, 3, 1]).check(), p(&[2, -3, 1]));
        // Z³ + Z + 5 → −(−Z³ − Z + 5) = Z³ + Z − 5
        assert_eq!(p(&[5, 1, 0, 1]).check(), p(&[-5, 1, 0, 1]));
        assert!(p(&[7, -2, 4, 1]).check().is_monic());
        let z = Poly::new(vec![crate::scalar::gaussian((1, 1), (2, 1)), Q::from_i64(1)]);
        assert_eq!(z.star().coeffs()[0], crate::scalar::gaussian((1, 1), (-2, 1)));
    }

    #[test]
    fn check_commutes_with_derivative() {
        let a = p(&[3, -1, 4, 1, -5, 9]);
        assert_eq!(a.derivative().check(), a.check().derivative());
    }

    #[test]
    fn brackets() {
        let a = p(&[1, 0, 1]);
        assert!(bracket_minus(&a.derivative(), &a).is_zero());
        let b = p(&[2, 1, 1]);
        assert!(bracket_minus(&b, &b).is_zero());
        assert!(!bracket_minus(&b.derivative(), &b).is_zero());
        let c = p(&[1, 4, 0, -2]);
        assert_eq!(bracket_minus(&b, &c), -bracket_minus(&c, &b));
        assert_eq!(bracket_plus(&b, &c), bracket_plus(&c, &b));
    }

    #[test]
    fn bipoly_trim_and_mul() {
        let a = BiPoly::new(vec![vec![Q::from_i64(1), Q::from_i64(0)], vec![Q::from_i64(0), Q::from_i64(1)]]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(2, 2), Q::from_i64(1));
        assert_eq!(sq.coeff(1, 1), Q::from_i64(2));
        assert_eq!(sq.coeff(0, 0), Q::from_i64(1));
        let trimmed = BiPoly::new(vec![vec![Q::from_i64(1), Q::from_i64(0)], vec![Q::from_i64(0), Q::from_i64(0)]]);
        assert_eq!(trimmed.grid().len(), 1);
        assert_eq!(trimmed.degree_w(), Some(0));
    }
}
