//! Discrete ambiguity signatures, the exact partner decision, the trivial
//! (Heisenberg) partners and restricted multiplier solutions.
//!
//! For a finite sequence `a` the discrete ambiguity function is the family of
//! trigonometric polynomials `𝒜(a)(k, y) = Σ_j a_j conj(a_{j-k}) e^{ijy}`.
//! Two sequences are partners when `|𝒜(a)(k, ·)| = |𝒜(b)(k, ·)|` for every `k`.
//! Since `|p(y)|²` of a trigonometric polynomial is again a trigonometric
//! polynomial whose coefficients are the autocorrelation of those of `p`, the
//! partner relation is decided on finite coefficient lists.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::seqcore::{autocorrelation_nonneg, cross_sequence, normalize, support, Signal, SupportSet};

/// Coefficient form of `|𝒜(a)(k, ·)|²` for `k = 0 ..= N`.
///
/// `rows[k][m]` is the lag-`m` autocorrelation coefficient of the cross
/// sequence at shift `k`. Negative `k` and negative lags are determined by
/// symmetry and are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbiguitySignature<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> AmbiguitySignature<S> {
    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Row `k`; empty for `k` beyond the signal length.
    pub fn row(&self, k: usize) -> &[S] {
        self.rows.get(k).map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(r, s)| {
                r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.approx_eq(y, tol))
            })
    }

    /// Sum of squared coefficient differences, in `f64`.
    pub fn residual(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        let n = self.rows.len().max(other.rows.len());
        for k in 0..n {
            let (r, s) = (self.row(k), other.row(k));
            for m in 0..r.len().max(s.len()) {
                let x = r.get(m).map(|v| v.to_complex64()).unwrap_or_default();
                let y = s.get(m).map(|v| v.to_complex64()).unwrap_or_default();
                acc += (x - y).norm_sqr();
            }
        }
        acc
    }
}

/// The signature of a normalized signal.
pub fn signature<S: Scalar>(a: &Signal<S>) -> Result<AmbiguitySignature<S>> {
    a.ensure_normalized()?;
    let n = a.coeffs().len() as i64;
    let rows = (0..n)
        .map(|k| autocorrelation_nonneg(&cross_sequence(a, k)))
        .collect();
    Ok(AmbiguitySignature { rows })
}

/// Exact (or tolerance-based, for float scalars) partner decision.
///
/// Signals of different length are never partners: the support of
/// `𝒜(a)(k, ·)` in `k` is `[-N, N]`.
pub fn is_partner<S: Scalar>(a: &Signal<S>, b: &Signal<S>, tol: Tolerance) -> Result<bool> {
    a.ensure_normalized()?;
    b.ensure_normalized()?;
    if a.coeffs().len() != b.coeffs().len() {
        return Ok(false);
    }
    Ok(signature(a)?.approx_eq(&signature(b)?, tol))
}

/// An element `h = (β, ω, l)` of the periodised Heisenberg group, optionally
/// composed with the reflection.
///
/// Acts by `b_j = e^{iβ} e^{ijω} a_{j-l}`, or `b_j = e^{iβ} e^{ijω} a_{-j-l}`
/// when `reflected`. The phases are stored as unimodular field elements
/// `e^{iβ}`, `e^{iω}` so the action stays exact over exact scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergElement<S> {
    pub phase: S,
    pub modulation: S,
    pub shift: i64,
    pub reflected: bool,
}

impl<S: Scalar> HeisenbergElement<S> {
    pub fn identity() -> Self {
        HeisenbergElement {
            phase: S::one(),
            modulation: S::one(),
            shift: 0,
            reflected: false,
        }
    }

    pub fn new(phase: S, modulation: S, shift: i64, reflected: bool) -> Result<Self> {
        let tol = Tolerance::default();
        for (name, v) in [("phase", &phase), ("modulation", &modulation)] {
            if !v.is_unimodular(tol) {
                return Err(Error::NotUnimodular(format!("{name} {v:?}")));
            }
        }
        Ok(HeisenbergElement {
            phase,
            modulation,
            shift,
            reflected,
        })
    }

    /// `β ∈ [0, 2π)`.
    pub fn beta(&self) -> f64 {
        reduce_angle(self.phase.to_complex64().arg())
    }

    /// `ω ∈ [0, 2π)`.
    pub fn omega(&self) -> f64 {
        reduce_angle(self.modulation.to_complex64().arg())
    }
}

impl HeisenbergElement<Complex64> {
    pub fn from_angles(beta: f64, omega: f64, shift: i64, reflected: bool) -> Self {
        HeisenbergElement {
            phase: Complex64::from_polar(1.0, beta),
            modulation: Complex64::from_polar(1.0, omega),
            shift,
            reflected,
        }
    }
}

/// Angle reduced to `[0, 2π)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Applies a trivial transform and re-normalizes the result.
pub fn apply_trivial<S: Scalar>(h: &HeisenbergElement<S>, a: &Signal<S>) -> Result<Signal<S>> {
    a.ensure_normalized()?;
    let n = a.coeffs().len() as i64;
    // source index as a function of the target index j
    let (lo, hi) = if h.reflected {
        (-(n - 1) - h.shift, -h.shift)
    } else {
        (h.shift, h.shift + n - 1)
    };
    let coeffs = (lo..=hi)
        .map(|j| {
            let src = if h.reflected { -j - h.shift } else { j - h.shift };
            h.phase.clone() * h.modulation.powi(j) * a.at(src)
        })
        .collect();
    Ok(normalize(&Signal::new(lo, coeffs))?.0)
}

/// Extended Euclid: `(g, x, y)` with `a x + b y = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Decides whether `r_j = e^{iβ} z^j` for a unimodular `z`, given unimodular
/// ratios `r_j` at increasing indices `j`.
///
/// Writes `q_i = r_{j_i} / r_{j_0} = z^{n_i}` with `n_i = j_i - j_0`. With
/// `g = gcd(n_i)` and `m_i = n_i / g`, a solution exists iff `u = z^g` solves
/// `u^{m_i} = q_i`, and `u` is then forced to be `Π q_i^{c_i}` for Bezout
/// coefficients `Σ c_i m_i = 1`. Returns `(u, g)`; `g = 0` when only one index
/// is present (any `z` works).
fn affine_phase<S: Scalar>(ratios: &[(i64, S)], tol: Tolerance) -> Option<(S, i64)> {
    let (j0, r0) = ratios.first()?;
    let rest: Vec<(i64, S)> = ratios[1..]
        .iter()
        .map(|(j, r)| (j - j0, r.clone() / r0.clone()))
        .collect();
    if rest.is_empty() {
        return Some((S::one(), 0));
    }
    let g = rest.iter().fold(0i64, |acc, (n, _)| acc.gcd(n));
    let mut coeffs: Vec<i64> = Vec::with_capacity(rest.len());
    let mut running = 0i64;
    for (n, _) in &rest {
        let m = n / g;
        if coeffs.is_empty() {
            coeffs.push(1);
            running = m;
        } else {
            let (d, x, y) = ext_gcd(running, m);
            for c in coeffs.iter_mut() {
                *c *= x;
            }
            coeffs.push(y);
            running = d;
        }
    }
    debug_assert_eq!(running, 1);
    let u = rest
        .iter()
        .zip(&coeffs)
        .fold(S::one(), |acc, ((_, q), &c)| acc * q.powi(c));
    let consistent = rest
        .iter()
        .all(|(n, q)| u.powi(n / g).approx_eq(q, tol));
    consistent.then_some((u, g))
}

/// Finds `h` with `b = apply_trivial(h, a)`, trying the direct orientation
/// first.
///
/// Both signals must be normalized; signals of different length have no
/// witness. When gaps in the support leave `(β, ω)` non-unique the
/// lexicographically smallest pair in `[0, 2π)²` is returned.
pub fn is_trivial_partner<S: Scalar>(
    a: &Signal<S>,
    b: &Signal<S>,
    tol: Tolerance,
) -> Result<Option<HeisenbergElement<Complex64>>> {
    a.ensure_normalized()?;
    b.ensure_normalized()?;
    if a.coeffs().len() != b.coeffs().len() {
        return Ok(None);
    }
    let n = a.coeffs().len() as i64 - 1;
    for reflected in [false, true] {
        let source = |j: i64| if reflected { a.at(n - j) } else { a.at(j) };
        let mut ratios = Vec::new();
        let mut ok = true;
        for j in 0..=n {
            let (x, y) = (source(j), b.at(j));
            match (x.is_negligible(tol), y.is_negligible(tol)) {
                (true, true) => continue,
                (false, false) => {
                    let r = y / x;
                    if !r.is_unimodular(tol) {
                        ok = false;
                        break;
                    }
                    ratios.push((j, r));
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let Some((u, g)) = affine_phase(&ratios, tol) else {
            continue;
        };
        let (j0, r0) = (&ratios[0].0, ratios[0].1.to_complex64());
        let shift = if reflected { -n } else { 0 };
        let candidates: Vec<f64> = if g == 0 {
            vec![0.0]
        } else {
            let base = u.to_complex64().arg();
            (0..g)
                .map(|t| reduce_angle((base + TAU * t as f64) / g as f64))
                .collect()
        };
        let best = candidates
            .into_iter()
            .map(|omega| (reduce_angle(r0.arg() - *j0 as f64 * omega), omega))
            .min_by(|x, y| x.partial_cmp(y).expect("finite angles"))
            .expect("at least one candidate");
        return Ok(Some(HeisenbergElement::from_angles(
            best.0, best.1, shift, reflected,
        )));
    }
    Ok(None)
}

/// A unimodular multiplier `c : Λ → S¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier<S> {
    values: BTreeMap<i64, S>,
}

impl<S: Scalar> Multiplier<S> {
    pub fn new(values: impl IntoIterator<Item = (i64, S)>, tol: Tolerance) -> Result<Self> {
        let values: BTreeMap<i64, S> = values.into_iter().collect();
        if let Some((n, v)) = values.iter().find(|(_, v)| !v.is_unimodular(tol)) {
            return Err(Error::NotUnimodular(format!("c({n}) = {v:?}")));
        }
        Ok(Multiplier { values })
    }

    /// The constant multiplier `c ≡ 1` on `Λ`.
    pub fn constant_one(support: &SupportSet) -> Self {
        Multiplier {
            values: support.elems().iter().map(|&n| (n, S::one())).collect(),
        }
    }

    pub fn support(&self) -> SupportSet {
        SupportSet::new(self.values.keys().copied())
    }

    pub fn get(&self, n: i64) -> Option<&S> {
        self.values.get(&n)
    }

    pub fn values(&self) -> impl Iterator<Item = (i64, &S)> {
        self.values.iter().map(|(&n, v)| (n, v))
    }
}

/// `c(n₁) conj(c(n₂)) = c(n₃) conj(c(n₄))` whenever `n₁ - n₂ = n₃ - n₄`.
///
/// Pairs are grouped by their difference; the condition says the product is
/// constant on every group.
pub fn check_multiplier_condition<S: Scalar>(c: &Multiplier<S>, tol: Tolerance) -> bool {
    let mut by_diff: BTreeMap<i64, S> = BTreeMap::new();
    for (&n1, c1) in &c.values {
        for (&n2, c2) in &c.values {
            let prod = c1.clone() * c2.conj();
            match by_diff.get(&(n1 - n2)) {
                Some(v) if !v.approx_eq(&prod, tol) => return false,
                Some(_) => {}
                None => {
                    by_diff.insert(n1 - n2, prod);
                }
            }
        }
    }
    true
}

/// `b_n = c(n) a_n`.
pub fn apply_multiplier<S: Scalar>(c: &Multiplier<S>, a: &Signal<S>) -> Result<Signal<S>> {
    let supp = support(a);
    let lambda = c.support();
    if !supp.is_subset(&lambda) {
        return Err(Error::SupportMismatch);
    }
    let lo = a.offset();
    let coeffs = a
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| match c.get(lo + i as i64) {
            Some(v) => v.clone() * x.clone(),
            None => S::zero(),
        })
        .collect();
    Ok(Signal::new(lo, coeffs))
}

/// Finds unimodular `η_k` with `cross_sequence(b, k) = η_k · cross_sequence(a, k)`
/// for every `k = 0 ..= N`.
///
/// For `b = R_c a` with `c` satisfying the multiplier condition the witnesses
/// are `η_k = c(n) conj(c(n - k))`.
pub fn restricted_partner_check<S: Scalar>(
    a: &Signal<S>,
    b: &Signal<S>,
    tol: Tolerance,
) -> Result<Option<Vec<S>>> {
    a.ensure_normalized()?;
    b.ensure_normalized()?;
    if a.coeffs().len() != b.coeffs().len() {
        return Ok(None);
    }
    let n = a.coeffs().len() as i64;
    let mut etas = Vec::with_capacity(n as usize);
    for k in 0..n {
        let (ca, cb) = (cross_sequence(a, k), cross_sequence(b, k));
        let first = ca
            .iter()
            .zip(&cb)
            .find(|(x, y)| !x.is_negligible(tol) || !y.is_negligible(tol));
        let eta = match first {
            None => S::one(),
            Some((x, y)) => {
                if x.is_negligible(tol) || y.is_negligible(tol) {
                    return Ok(None);
                }
                y.clone() / x.clone()
            }
        };
        if !eta.is_unimodular(tol) {
            return Ok(None);
        }
        if !ca
            .iter()
            .zip(&cb)
            .all(|(x, y)| (eta.clone() * x.clone()).approx_eq(y, tol))
        {
            return Ok(None);
        }
        etas.push(eta);
    }
    Ok(Some(etas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, unit_from_tangent, GaussianRational as Q};
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use std::f64::consts::PI;

    fn sig(v: &[i64]) -> Signal<Q> {
        Signal::from_i64s(v)
    }

    const EXACT: Tolerance = Tolerance(0.0);

    #[test]
    fn signature_examples() {
        let s = signature(&sig(&[1, 2])).unwrap();
        assert_eq!(s.row(0), &[Q::from_i64(17), Q::from_i64(4)]);
        assert_eq!(s.row(1), &[Q::from_i64(4), Q::from_i64(0)]);
        assert!(s.row(2).is_empty());
        let s = signature(&sig(&[1])).unwrap();
        assert_eq!(s.rows(), &[vec![Q::one()]]);
        let unit = Signal::from_coeffs(vec![gaussian((3, 5), (4, 5))]);
        assert_eq!(signature(&unit).unwrap().rows(), &[vec![Q::one()]]);
    }

    #[test]
    fn partner_examples() {
        let a = sig(&[1, 2, 0, 2, 4]);
        let b = sig(&[2, 4, 0, 1, 2]);
        assert!(is_partner(&a, &b, EXACT).unwrap());
        assert!(is_partner(&a, &a, EXACT).unwrap());
        assert!(!is_partner(&sig(&[1, 2]), &sig(&[1, 3]), EXACT).unwrap());
        assert!(!is_partner(&sig(&[1, 2]), &sig(&[1, 0, 2]), EXACT).unwrap());
    }

    #[test]
    fn signature_matches_pointwise_modulus() {
        let a: Signal<Complex64> = Signal::from_coeffs(vec![
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.3, 2.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.5, -1.0),
        ]);
        let s = signature(&a).unwrap();
        for k in 0..4i64 {
            let c = cross_sequence(&a, k);
            let row = s.row(k as usize);
            for t in 0..64 {
                let y = TAU * t as f64 / 64.0;
                let direct: Complex64 = c
                    .iter()
                    .enumerate()
                    .map(|(j, cj)| cj * Complex64::from_polar(1.0, j as f64 * y))
                    .sum();
                let from_coeffs = row[0].re
                    + 2.0
                        * row[1..]
                            .iter()
                            .enumerate()
                            .map(|(m, sm)| (sm * Complex64::from_polar(1.0, (m + 1) as f64 * y)).re)
                            .sum::<f64>();
                assert!((direct.norm_sqr() - from_coeffs).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn apply_trivial_examples() {
        let a = sig(&[1, 1]);
        let id = HeisenbergElement::identity();
        assert_eq!(apply_trivial(&id, &a).unwrap(), a);
        let flip = HeisenbergElement::new(Q::one(), Q::from_i64(-1), 0, false).unwrap();
        assert_eq!(apply_trivial(&flip, &a).unwrap(), sig(&[1, -1]));
        let refl = HeisenbergElement::new(Q::one(), Q::one(), 0, true).unwrap();
        assert_eq!(apply_trivial(&refl, &sig(&[1, 2, 3])).unwrap(), sig(&[3, 2, 1]));
    }

    #[test]
    fn apply_trivial_float_modulation() {
        let a: Signal<Complex64> = Signal::from_i64s(&[1, 1]);
        let h = HeisenbergElement::from_angles(0.0, PI, 0, false);
        let b = apply_trivial(&h, &a).unwrap();
        assert!(b.approx_eq(&Signal::from_i64s(&[1, -1]), Tolerance(1e-12)));
    }

    #[test]
    fn trivial_partner_modulation_witness() {
        let a: Signal<Complex64> = Signal::from_i64s(&[1, 2, 3, 1]);
        let b = Signal::from_coeffs(
            a.coeffs()
                .iter()
                .enumerate()
                .map(|(j, x)| x * Complex64::from_polar(1.0, j as f64 * PI / 3.0))
                .collect(),
        );
        let h = is_trivial_partner(&a, &b, Tolerance(1e-9)).unwrap().unwrap();
        assert!(h.beta().abs() < 1e-12 || (h.beta() - TAU).abs() < 1e-12);
        assert!((h.omega() - PI / 3.0).abs() < 1e-12);
        assert!(!h.reflected);
    }

    #[test]
    fn strange_pair_is_not_trivial() {
        let a = sig(&[1, 2, 0, 2, 4]);
        let b = sig(&[2, 4, 0, 1, 2]);
        assert!(is_trivial_partner(&a, &b, EXACT).unwrap().is_none());
    }

    #[test]
    fn reflected_modulated_witness() {
        let a = Signal::from_coeffs(vec![gaussian((1, 1), (1, 2)), Q::from_i64(2), gaussian((0, 1), (3, 1))]);
        let z = unit_from_tangent(&BigRational::new(1.into(), 3.into()));
        let phase = unit_from_tangent(&BigRational::new((-2).into(), 5.into()));
        let h = HeisenbergElement::new(phase, z, 4, true).unwrap();
        let b = apply_trivial(&h, &a).unwrap();
        let w = is_trivial_partner(&a, &b, EXACT).unwrap().unwrap();
        assert!(w.reflected);
        let bf = apply_trivial(&w, &a.to_float()).unwrap();
        assert!(bf.approx_eq(&b.to_float(), Tolerance(1e-9)));
    }

    #[test]
    fn gapped_support_ambiguous_modulation() {
        // support {0, 2}: ω is determined only modulo π
        let a = sig(&[1, 0, 1]);
        let b = sig(&[1, 0, -1]);
        let w = is_trivial_partner(&a, &b, EXACT).unwrap().unwrap();
        assert!(w.beta().abs() < 1e-12);
        assert!((w.omega() - PI / 2.0).abs() < 1e-12);
        // z^2 = -1 with z not a Gaussian rational witness still reproduces b
        let bf = apply_trivial(&w, &a.to_float()).unwrap();
        assert!(bf.approx_eq(&b.to_float(), Tolerance(1e-12)));
    }

    #[test]
    fn inconsistent_phases_rejected() {
        // support {0, 2, 4}: q_2 = 1 forces z^2 = ±1 paths, q_4 = -1 impossible with q_2 = 1
        let a = sig(&[1, 0, 1, 0, 1]);
        let b = sig(&[1, 0, 1, 0, -1]);
        assert!(is_trivial_partner(&a, &b, EXACT).unwrap().is_none());
        assert!(!is_partner(&a, &b, EXACT).unwrap());
    }

    #[test]
    fn multiplier_condition_examples() {
        let units = [Q::one(), gaussian((3, 5), (4, 5)), gaussian((0, 1), (-1, 1))];
        let c = Multiplier::new([0, 1, 3].into_iter().zip(units), EXACT).unwrap();
        assert!(check_multiplier_condition(&c, EXACT));
        let c = Multiplier::new(
            [(0, Q::one()), (1, Q::one()), (2, Q::from_i64(-1))],
            EXACT,
        )
        .unwrap();
        assert!(!check_multiplier_condition(&c, EXACT));
        let c = Multiplier::<Q>::constant_one(&SupportSet::new(0..6));
        assert!(check_multiplier_condition(&c, EXACT));
        assert!(Multiplier::new([(0, Q::from_i64(2))], EXACT).is_err());
    }

    #[test]
    fn apply_multiplier_examples() {
        let a = sig(&[1, 1, 0, 1]);
        let lambda = SupportSet::new([0, 1, 3]);
        assert_eq!(apply_multiplier(&Multiplier::constant_one(&lambda), &a).unwrap(), a);
        let theta = unit_from_tangent(&BigRational::new(2.into(), 7.into()));
        let c = Multiplier::new([(0, Q::one()), (1, Q::one()), (3, theta)], EXACT).unwrap();
        let b = apply_multiplier(&c, &a).unwrap();
        assert!(is_partner(&a, &b, EXACT).unwrap());
        let wide = sig(&[1, 1, 1, 1]);
        assert_eq!(apply_multiplier(&c, &wide), Err(Error::SupportMismatch));
    }

    #[test]
    fn restricted_check_examples() {
        let a = sig(&[1, 1, 0, 1]);
        let theta = unit_from_tangent(&BigRational::new(1.into(), 2.into()));
        let c = Multiplier::new([(0, Q::one()), (1, Q::one()), (3, theta.clone())], EXACT).unwrap();
        let b = apply_multiplier(&c, &a).unwrap();
        let etas = restricted_partner_check(&a, &b, EXACT).unwrap().unwrap();
        assert_eq!(etas[0], Q::one());
        assert_eq!(etas[2], theta.clone()); // c(3) conj(c(1))
        assert_eq!(etas[3], theta); // c(3) conj(c(0))
        let same = restricted_partner_check(&a, &a, EXACT).unwrap().unwrap();
        assert!(same.iter().all(|e| e.is_one()));
        let p = sig(&[1, 2, 0, 2, 4]);
        let q = sig(&[2, 4, 0, 1, 2]);
        assert!(restricted_partner_check(&p, &q, EXACT).unwrap().is_none());
        assert!(Q::zero().is_zero());
    }
}
