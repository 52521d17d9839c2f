//! The algebraic ambiguity problem for Hermite signals `P(t) e^{-t²/2}`.
//!
//! The Bargmann transform turns the Hermite expansion of `P` into a
//! polynomial `𝒫`; two Hermite signals are ambiguity partners exactly when
//! `A_𝒫(z, w) A_𝒫(-z, -w) = A_𝒬(z, w) A_𝒬(-z, -w)`, with the ambiguity
//! polynomial `A_𝒫(z, w) = Σ_m 𝒫^{(m)}(z) 𝒫*^{(m)}(w) / m!`.
//!
//! For generic monic `𝒫` the only solutions are `𝒬 = 𝒫` and `𝒬 = 𝒫̌`;
//! [`partner_scan`] confirms this per instance by running the algebraic test
//! on every candidate `A B̌` obtained from a root split `𝒫 = A B`.

mod laguerre;
mod poly;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

pub use laguerre::{gamma_norm, hermite_cross_quadrature, laguerre_cross, laguerre_relative_error};
pub use poly::{bracket_minus, bracket_plus, BiPoly, Poly};

use crate::error::{Error, Result};
use crate::scalar::{HasSqrt2, Scalar, Tolerance};

/// Largest degree accepted by [`partner_scan`] (`2^n` root splits).
pub const SCAN_DEGREE_CAP: usize = 12;

/// Coefficient tolerance used to compare candidate products in float.
pub const SCAN_COEFF_TOL: f64 = 1e-8;

/// Default root separation for [`is_generic`].
pub const GENERIC_TOL: f64 = 1e-6;

/// Physicists' Hermite polynomial `H_k`.
pub fn hermite_poly<S: Scalar>(k: usize) -> Poly<S> {
    let two = S::from_i64(2);
    let mut prev = Poly::constant(S::one());
    if k == 0 {
        return prev;
    }
    let mut cur = Poly::monomial(two.clone(), 1);
    for n in 1..k {
        let x_cur = Poly::new(
            std::iter::once(S::zero())
                .chain(cur.coeffs().iter().map(|c| c.clone() * two.clone()))
                .collect(),
        );
        let next = &x_cur - &prev.scale(&S::from_i64(2 * n as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `P = Σ_j α_j H_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteExpansion<S> {
    alphas: Vec<S>,
}

impl<S: Scalar> HermiteExpansion<S> {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut alphas: Vec<S>) -> Self {
        while alphas.last().is_some_and(|c| c.is_zero()) {
            alphas.pop();
        }
        HermiteExpansion { alphas }
    }

    pub fn alphas(&self) -> &[S] {
        &self.alphas
    }

    /// The polynomial `P(x)` in the monomial basis.
    pub fn to_poly(&self) -> Poly<S> {
        self.alphas
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (j, a)| &acc + &hermite_poly::<S>(j).scale(a))
    }

    /// `α_j ↦ (-1)^j α_j`, i.e. `P(x) ↦ P(-x)`.
    pub fn parity_flip(&self) -> Self {
        HermiteExpansion::new(
            self.alphas
                .iter()
                .enumerate()
                .map(|(j, a)| if j % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        )
    }
}

/// `𝓑(Σ α_j H_j) = Σ α_j 2^{j/2} Z^j`.
pub fn bargmann<S: HasSqrt2>(e: &HermiteExpansion<S>) -> Poly<S> {
    let r = S::sqrt2();
    let mut pow = S::one();
    let mut coeffs = Vec::with_capacity(e.alphas.len());
    for a in &e.alphas {
        coeffs.push(a.clone() * pow.clone());
        pow = pow * r.clone();
    }
    Poly::new(coeffs)
}

/// `A_𝒫(z, w) = Σ_m 𝒫^{(m)}(z) 𝒫*^{(m)}(w) / m!`.
pub fn ambiguity_polynomial<S: Scalar>(p: &Poly<S>) -> Result<BiPoly<S>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut grid = vec![vec![S::zero(); n + 1]; n + 1];
    let (mut d, mut ds) = (p.clone(), p.star());
    let mut factorial = S::one();
    for m in 0..=n {
        if m > 0 {
            d = d.derivative();
            ds = ds.derivative();
            factorial = factorial * S::from_i64(m as i64);
        }
        for (i, x) in d.coeffs().iter().enumerate() {
            for (j, y) in ds.coeffs().iter().enumerate() {
                grid[i][j] = grid[i][j].clone() + x.clone() * y.clone() / factorial.clone();
            }
        }
    }
    Ok(BiPoly::new(grid))
}

/// `A_𝒫(z, w) A_𝒫(-z, -w)`.
pub fn ambiguity_product<S: Scalar>(p: &Poly<S>) -> Result<BiPoly<S>> {
    let a = ambiguity_polynomial(p)?;
    Ok(a.mul(&a.reflect()))
}

/// Partner decision for the algebraic ambiguity problem. Polynomials of
/// different degree are never partners.
pub fn algebraic_partner_test<S: Scalar>(p: &Poly<S>, q: &Poly<S>, tol: Tolerance) -> Result<bool> {
    if p.degree() != q.degree() {
        return Ok(false);
    }
    Ok(ambiguity_product(p)?.approx_eq(&ambiguity_product(q)?, tol))
}

/// Recovers `𝒫 / p_n` and `|p_n|²` from `A_𝒫`, whose top `w`-row is
/// `conj(p_n) 𝒫(z)`.
pub fn monic_from_ambiguity<S: Scalar>(a: &BiPoly<S>) -> Result<(Poly<S>, S)> {
    let n = a.degree_w().ok_or(Error::ZeroPolynomial)?;
    let top = a.w_coefficient(n);
    let lead_sq = a.coeff(n, n);
    if lead_sq.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let monic = top.scale(&(S::one() / lead_sq.clone()));
    Ok((monic, lead_sq))
}

/// The partner condition for Hermite signals, on their Bargmann images.
pub fn hermite_signal_partner_test<S: HasSqrt2>(
    p: &HermiteExpansion<S>,
    q: &HermiteExpansion<S>,
    tol: Tolerance,
) -> Result<bool> {
    algebraic_partner_test(&bargmann(p), &bargmann(q), tol)
}

/// Roots of a nonconstant polynomial from the companion matrix, refined by
/// a few Newton steps on the original coefficients.
pub fn roots<S: Scalar>(p: &Poly<S>) -> Result<Vec<Complex64>> {
    let f = p.to_float();
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = f.coeffs()[n];
    let mut companion = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        companion[(i, n - 1)] = -f.coeffs()[i] / lead;
    }
    let eig = companion
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::RootFinding("Schur form did not converge".into()))?;
    let df = f.derivative();
    Ok(eig
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let d = df.eval(&z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = f.eval(&z) / d;
                if !step.is_finite() {
                    break;
                }
                z -= step;
            }
            if f.eval(&z).norm() <= f.eval(&z0).norm() {
                z
            } else {
                z0
            }
        })
        .collect())
}

/// Simple roots, none symmetric to another root (including itself, so
/// `0` is excluded), at separation `tol`.
pub fn is_generic<S: Scalar>(p: &Poly<S>, tol: f64) -> Result<bool> {
    match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => {
            return Err(Error::HypothesisViolated("constant polynomial has no roots".into()));
        }
        _ => {}
    }
    let r = roots(p)?;
    for i in 0..r.len() {
        for j in 0..r.len() {
            if i != j && (r[i] - r[j]).norm() <= tol {
                return Ok(false);
            }
            if (r[i] + r[j]).norm() <= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A polynomial returned by [`partner_scan`].
#[derive(Clone, Debug, PartialEq)]
pub enum ScanSurvivor<S> {
    /// `𝒫` itself, or `𝒫̌` when `reflected`; certified by the test in the
    /// input field.
    Trivial { poly: Poly<S>, reflected: bool },
    /// A float candidate passing the test that matches neither.
    Strange(Poly<Complex64>),
}

impl<S: Scalar> ScanSurvivor<S> {
    pub fn to_float(&self) -> Poly<Complex64> {
        match self {
            ScanSurvivor::Trivial { poly, .. } => poly.to_float(),
            ScanSurvivor::Strange(p) => p.clone(),
        }
    }
}

fn trivial_pair<S: Scalar>(p: &Poly<S>) -> Result<Vec<ScanSurvivor<S>>> {
    let pc = p.check();
    let exact = Tolerance(if S::EXACT { 0.0 } else { SCAN_COEFF_TOL });
    let mut out = vec![ScanSurvivor::Trivial {
        poly: p.clone(),
        reflected: false,
    }];
    if !pc.approx_eq(p, exact) {
        if !algebraic_partner_test(p, &pc, exact)? {
            return Err(Error::HypothesisViolated("P̌ failed the algebraic test".into()));
        }
        out.push(ScanSurvivor::Trivial {
            poly: pc,
            reflected: true,
        });
    }
    Ok(out)
}

/// The `p₁ = 0` shortcut: a monic `𝒫 = Zⁿ + p₁ Z^{n-1} + …` with vanishing
/// subleading coefficient has only the trivial partners `𝒫` and `𝒫̌`, with
/// no genericity assumption. `None` when `p₁ ≠ 0`.
pub fn p1_fast_path<S: Scalar>(p: &Poly<S>) -> Result<Option<Vec<ScanSurvivor<S>>>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if n == 0 || !p.coeff(n - 1).is_zero() {
        return Ok(None);
    }
    trivial_pair(p).map(Some)
}

/// `Π_{i∉T} (Z - r_i) Π_{i∈T} (Z + r_i)`.
fn split_candidate(roots: &[Complex64], mask: u32) -> Poly<Complex64> {
    roots.iter().enumerate().fold(Poly::constant(Complex64::new(1.0, 0.0)), |acc, (i, r)| {
        let root = if mask >> i & 1 == 1 { -r } else { *r };
        &acc * &Poly::new(vec![-root, Complex64::new(1.0, 0.0)])
    })
}

/// All partners of a generic monic `𝒫` among the root-split candidates
/// `A B̌`, deduplicated. For generic input the result is `{𝒫, 𝒫̌}`.
pub fn partner_scan<S: Scalar>(p: &Poly<S>, tol: f64) -> Result<Vec<ScanSurvivor<S>>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if n > SCAN_DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: n,
            cap: SCAN_DEGREE_CAP,
        });
    }
    if n == 0 {
        return trivial_pair(p);
    }
    if !is_generic(p, tol)? {
        return Err(Error::NotGeneric);
    }
    if let Some(found) = p1_fast_path(p)? {
        return Ok(found);
    }
    let r = roots(p)?;
    let pf = p.to_float();
    let ctol = Tolerance(SCAN_COEFF_TOL);
    let target = ambiguity_product(&pf)?;
    let hits: Vec<Poly<Complex64>> = (0u32..1 << n)
        .into_par_iter()
        .map(|mask| split_candidate(&r, mask))
        .filter(|q| {
            ambiguity_product(q)
                .map(|prod| prod.approx_eq(&target, ctol))
                .unwrap_or(false)
        })
        .collect();
    let pc = pf.check();
    let mut strange: Vec<Poly<Complex64>> = Vec::new();
    let (mut saw_p, mut saw_check) = (false, false);
    for q in hits {
        if q.approx_eq(&pf, ctol) {
            saw_p = true;
        } else if q.approx_eq(&pc, ctol) {
            saw_check = true;
        } else if !strange.iter().any(|s| s.approx_eq(&q, ctol)) {
            strange.push(q);
        }
    }
    let mut out: Vec<ScanSurvivor<S>> = trivial_pair(p)?
        .into_iter()
        .filter(|s| match s {
            ScanSurvivor::Trivial { reflected, .. } => if *reflected { saw_check } else { saw_p },
            ScanSurvivor::Strange(_) => true,
        })
        .collect();
    out.extend(strange.into_iter().map(ScanSurvivor::Strange));
    Ok(out)
}
