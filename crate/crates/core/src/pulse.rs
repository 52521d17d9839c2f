//! Continuous ambiguity functions of pulse trains
//! `u(t) = Σ_j a_j χ_[j, j+η](t)` with `0 < η ≤ 1/2`.
//!
//! For `k - 1/2 ≤ x ≤ k + 1/2` only the pairs of pulses at distance `k`
//! overlap, so `A(u)(x, y) = 𝒜(a)(k, y) · A(χ_[0,η])(x - k, y)`: the
//! continuous problem reduces to the discrete one.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::integrate_piecewise;
use crate::scalar::{Scalar, Tolerance};
use crate::seqcore::{cross_sequence, Signal};

/// Widths above this leave the regime where pulse-train partners are known
/// to come from discrete partners only.
pub fn uniqueness_limit() -> Rational64 {
    Rational64::new(1, 3)
}

/// Pulse train with optional trivial decorations:
/// `v(t) = c e^{iωt} u(εt - α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseDescriptor {
    a: Signal<Complex64>,
    eta: Rational64,
    pub phase: Complex64,
    pub omega: f64,
    pub alpha: f64,
    /// `+1` or `-1`.
    pub epsilon: i8,
}

impl PulseDescriptor {
    pub fn new<S: Scalar>(a: &Signal<S>, eta: Rational64) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::EmptySignal);
        }
        if eta <= Rational64::from_integer(0) || eta > Rational64::new(1, 2) {
            return Err(Error::PulseWidth(format!("η = {eta} outside (0, 1/2]")));
        }
        Ok(PulseDescriptor {
            a: a.to_float(),
            eta,
            phase: Complex64::new(1.0, 0.0),
            omega: 0.0,
            alpha: 0.0,
            epsilon: 1,
        })
    }

    pub fn signal(&self) -> &Signal<Complex64> {
        &self.a
    }

    pub fn eta(&self) -> Rational64 {
        self.eta
    }

    fn eta_f64(&self) -> f64 {
        self.eta.to_f64().expect("η is a small rational")
    }

    pub fn in_uniqueness_regime(&self) -> bool {
        self.eta <= uniqueness_limit()
    }

    /// Value of the undecorated train at `t`.
    fn base_value(&self, t: f64) -> Complex64 {
        let j = t.floor();
        if t - j <= self.eta_f64() {
            self.a.at(j as i64)
        } else {
            Complex64::default()
        }
    }

    /// `v(t)`.
    pub fn value(&self, t: f64) -> Complex64 {
        self.phase
            * Complex64::new(0.0, self.omega * t).exp()
            * self.base_value(self.epsilon as f64 * t - self.alpha)
    }

    /// Interval containing the support of `v`.
    fn support_hull(&self) -> (f64, f64) {
        let lo = self.a.offset() as f64;
        let hi = lo + (self.a.coeffs().len() - 1) as f64 + self.eta_f64();
        let e = self.epsilon as f64;
        let (p, q) = (e * (lo + self.alpha), e * (hi + self.alpha));
        (p.min(q), p.max(q))
    }

    /// Pulse edges of `v` in time.
    fn breakpoints(&self) -> Vec<f64> {
        let eta = self.eta_f64();
        let e = self.epsilon as f64;
        (0..self.a.coeffs().len())
            .flat_map(|i| {
                let j = (self.a.offset() + i as i64) as f64;
                [e * (j + self.alpha), e * (j + eta + self.alpha)]
            })
            .collect()
    }
}

/// `A(χ_[0,η])(x, y)` in closed form.
pub fn box_ambiguity(eta: f64, x: f64, y: f64) -> Complex64 {
    let len = eta - x.abs();
    if len <= 0.0 {
        return Complex64::default();
    }
    let lo = x.max(0.0);
    let hi = eta.min(eta + x);
    let centre = Complex64::new(0.0, y * (lo + hi) / 2.0).exp();
    let modulus = if y.abs() < 1e-4 {
        let t = y * len;
        len * (1.0 - t * t / 24.0)
    } else {
        (y * len / 2.0).sin() / (y / 2.0)
    };
    centre * modulus
}

/// `𝒜(a)(k, y) = Σ_j a_j conj(a_{j-k}) e^{ijy}`.
pub fn discrete_ambiguity(a: &Signal<Complex64>, k: i64, y: f64) -> Complex64 {
    cross_sequence(a, k)
        .iter()
        .enumerate()
        .map(|(i, c)| c * Complex64::new(0.0, y * (a.offset() + i as i64) as f64).exp())
        .sum()
}

fn base_ambiguity(u: &PulseDescriptor, x: f64, y: f64) -> Complex64 {
    let k = (x + 0.5).floor();
    discrete_ambiguity(&u.a, k as i64, y) * box_ambiguity(u.eta_f64(), x - k, y)
}

/// `A(v)(x, y)` including decorations:
/// `A(v)(x, y) = e^{iωx} e^{iεyα} A(u)(εx, εy)`.
pub fn pulse_ambiguity(u: &PulseDescriptor, x: f64, y: f64) -> Complex64 {
    let e = u.epsilon as f64;
    let phase = Complex64::new(0.0, u.omega * x + e * y * u.alpha).exp();
    phase * base_ambiguity(u, e * x, e * y)
}

/// Composes a further decoration `t ↦ c e^{iωt} v(εt - α)` onto `u`.
pub fn apply_continuous_trivial(
    u: &PulseDescriptor,
    c: Complex64,
    omega: f64,
    alpha: f64,
    epsilon: i8,
) -> Result<PulseDescriptor> {
    if !c.is_unimodular(Tolerance::default()) {
        return Err(Error::NotUnimodular(format!("phase {c}")));
    }
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::HypothesisViolated(format!("reflection ε = {epsilon}")));
    }
    let mut v = u.clone();
    v.phase = c * u.phase * Complex64::new(0.0, -u.omega * alpha).exp();
    v.omega = omega + u.omega * epsilon as f64;
    v.epsilon = u.epsilon * epsilon;
    v.alpha = u.epsilon as f64 * alpha + u.alpha;
    Ok(v)
}

/// `∫ v(t) conj(v(t - x)) e^{iyt} dt` by adaptive Gauss–Kronrod between
/// consecutive pulse edges.
pub fn pulse_ambiguity_quadrature(u: &PulseDescriptor, x: f64, y: f64, tol: f64) -> Complex64 {
    let (lo, hi) = u.support_hull();
    let (lo, hi) = (lo.max(lo + x), hi.min(hi + x));
    if hi <= lo {
        return Complex64::default();
    }
    let mut breaks: Vec<f64> = u
        .breakpoints()
        .into_iter()
        .flat_map(|t| [t, t + x])
        .filter(|t| *t > lo && *t < hi)
        .chain([lo, hi])
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    integrate_piecewise(
        |t| u.value(t) * u.value(t - x).conj() * Complex64::new(0.0, y * t).exp(),
        &breaks,
        tol,
    )
}

/// Inclusive arithmetic range `start:stop:step`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad range component {s:?} in {text:?}")))
        };
        let r = match parts.as_slice() {
            [a] => GridRange { start: num(a)?, stop: num(a)?, step: 1.0 },
            [a, b, s] => GridRange { start: num(a)?, stop: num(b)?, step: num(s)? },
            _ => return Err(Error::Parse(format!("range {text:?} is not start:stop:step"))),
        };
        r.values()?;
        Ok(r)
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if self.step.is_nan() || self.step <= 0.0 || !self.start.is_finite() || !self.stop.is_finite() || self.stop < self.start {
            return Err(Error::EmptyRange);
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| self.start + i as f64 * self.step).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridRow {
    pub x: f64,
    pub y: f64,
    pub value: Complex64,
}

/// `A(v)` on `xs × ys`, `x`-major.
pub fn export_grid(u: &PulseDescriptor, xs: &[f64], ys: &[f64]) -> Result<Vec<GridRow>> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyRange);
    }
    Ok(xs
        .par_iter()
        .flat_map_iter(|&x| {
            ys.iter().map(move |&y| GridRow {
                x,
                y,
                value: pulse_ambiguity(u, x, y),
            })
        })
        .collect())
}

/// CSV with header `x,y,abs,re,im`, 17 significant digits.
pub fn write_csv<W: std::io::Write>(rows: &[GridRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "x,y,abs,re,im")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.x,
            r.y,
            r.value.norm(),
            r.value.re,
            r.value.im
        )?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub samples: usize,
    pub max_abs_error: f64,
    pub in_uniqueness_regime: bool,
}

/// Compares the factorized formula with quadrature at `samples` random points
/// in `[lo - 1, hi + 1] × [-2π, 2π]`, where `[lo, hi]` is the signal span.
pub fn verify_against_quadrature(u: &PulseDescriptor, samples: usize, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (u.a.coeffs().len() as f64) + 0.5;
    let mut max_err: f64 = 0.0;
    for _ in 0..samples {
        let x = rng.random_range(-span..span);
        let y = rng.random_range(-2.0 * PI..2.0 * PI);
        let f = pulse_ambiguity(u, x, y);
        let q = pulse_ambiguity_quadrature(u, x, y, 1e-12);
        max_err = max_err.max((f - q).norm());
    }
    VerifyReport {
        samples,
        max_abs_error: max_err,
        in_uniqueness_regime: u.in_uniqueness_regime(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn pulse(v: &[i64], eta: (i64, i64)) -> PulseDescriptor {
        PulseDescriptor::new(&Signal::<Q>::from_i64s(v), Rational64::new(eta.0, eta.1)).unwrap()
    }

    #[test]
    fn box_examples() {
        assert!((box_ambiguity(0.25, 0.0, 0.0) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert_eq!(box_ambiguity(0.25, 0.3, 1.0), Complex64::default());
        assert_eq!(box_ambiguity(0.25, -0.25, 1.0), Complex64::default());
        let q = integrate_piecewise(
            |t| Complex64::new(0.0, 2.0 * t).exp(),
            &[0.1, 1.0 / 3.0],
            1e-14,
        );
        assert!((box_ambiguity(1.0 / 3.0, 0.1, 2.0) - q).norm() < 1e-10);
    }

    #[test]
    fn box_small_y_series_is_continuous() {
        for &x in &[0.0, 0.05, -0.1] {
            let y = 0.99e-4;
            let len = 0.3 - f64::abs(x);
            let direct = (y * len / 2.0).sin() / (y / 2.0);
            assert!((box_ambiguity(0.3, x, y).norm() - direct.abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn origin_value() {
        let u = pulse(&[1, 2, 0, 2, 4], (1, 3));
        let v = pulse_ambiguity(&u, 0.0, 0.0);
        assert!((v - Complex64::new(25.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn width_validation() {
        let a = Signal::<Q>::from_i64s(&[1]);
        assert!(PulseDescriptor::new(&a, Rational64::new(1, 2)).is_ok());
        assert!(matches!(PulseDescriptor::new(&a, Rational64::new(3, 5)), Err(Error::PulseWidth(_))));
        assert!(matches!(PulseDescriptor::new(&a, Rational64::new(0, 1)), Err(Error::PulseWidth(_))));
    }

    #[test]
    fn formula_matches_quadrature() {
        let u = pulse(&[1, -2, 3, 0, 1], (1, 4));
        for &(x, y) in &[(0.0, 0.0), (0.1, 1.0), (-1.9, 2.5), (3.05, -4.0), (2.5, 1.0)] {
            let f = pulse_ambiguity(&u, x, y);
            let q = pulse_ambiguity_quadrature(&u, x, y, 1e-12);
            assert!((f - q).norm() < 1e-9, "({x}, {y}): {f} vs {q}");
        }
    }

    #[test]
    fn decorated_formula_matches_quadrature() {
        let u = pulse(&[2, 1, -1], (1, 3));
        let v = apply_continuous_trivial(&u, Complex64::from_polar(1.0, 0.4), 1.3, 0.7, -1).unwrap();
        let w = apply_continuous_trivial(&v, Complex64::from_polar(1.0, -1.1), -0.6, -0.35, 1).unwrap();
        for d in [&v, &w] {
            for &(x, y) in &[(0.2, 0.9), (-1.1, -2.0), (1.8, 3.0)] {
                let f = pulse_ambiguity(d, x, y);
                let q = pulse_ambiguity_quadrature(d, x, y, 1e-12);
                assert!((f - q).norm() < 1e-9, "({x}, {y}): {f} vs {q}");
            }
        }
    }

    #[test]
    fn decorations_preserve_modulus() {
        let u = pulse(&[1, 3, -2], (1, 3));
        let v = apply_continuous_trivial(&u, Complex64::from_polar(1.0, 2.0), 1.3, 0.7, 1).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let (x, y) = (-2.5 + 0.5 * i as f64, -3.0 + 0.6 * j as f64);
                let d = pulse_ambiguity(&u, x, y).norm() - pulse_ambiguity(&v, x, y).norm();
                assert!(d.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decoration_identity_and_double_reflection() {
        let u = pulse(&[1, 2], (1, 4));
        assert_eq!(apply_continuous_trivial(&u, Complex64::new(1.0, 0.0), 0.0, 0.0, 1).unwrap(), u);
        let r = apply_continuous_trivial(&u, Complex64::new(1.0, 0.0), 0.0, 0.0, -1).unwrap();
        let rr = apply_continuous_trivial(&r, Complex64::new(1.0, 0.0), 0.0, 0.0, -1).unwrap();
        assert_eq!(rr.epsilon, 1);
        assert!(apply_continuous_trivial(&u, Complex64::new(2.0, 0.0), 0.0, 0.0, 1).is_err());
    }

    #[test]
    fn grid_export() {
        let u = pulse(&[1, 2, 0, 2, 4], (1, 3));
        let rows = export_grid(&u, &[0.0], &[0.0]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].value.norm() - 25.0 / 3.0).abs() < 1e-12);
        assert!(matches!(export_grid(&u, &[], &[0.0]), Err(Error::EmptyRange)));
        let xs = GridRange::parse("-4.5:4.5:0.45").unwrap().values().unwrap();
        assert_eq!(xs.len(), 21);
        let rows = export_grid(&u, &xs[..20], &xs[..20]).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 401);
        assert!(text.starts_with("x,y,abs,re,im\n"));
        assert!(GridRange::parse("1:0:0.1").is_err());
    }
}
