//! Randomized numerical probe for strange partners.
//!
//! Each restart minimizes the squared signature distance to `a` over
//! `b ∈ C^{N+1}` with a compass search that perturbs one real or imaginary
//! part at a time. Phase and modulation are gauge-fixed (`b_0 ≥ 0`,
//! `b_N ∈ R`) since they never change the signature. Converged points that
//! are trivially equivalent to `a` are dropped; the rest are reported, with
//! an exact certificate when rational reconstruction succeeds.
//!
//! An empty result is evidence only; the search is a heuristic.

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::ambiguity::{is_partner, is_trivial_partner};
use crate::error::Result;
use crate::scalar::{rational_approximation, GaussianRational, Tolerance};
use crate::seqcore::Signal;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    /// Acceptance threshold on the squared signature residual, measured
    /// after scaling `a` to unit energy.
    pub tol: f64,
    pub seed: u64,
    /// Optional start centre (in the scale of `a`) and spread; restarts are
    /// drawn from the whole space otherwise.
    pub start: Option<(Vec<Complex64>, f64)>,
    /// Evaluation budget per restart.
    pub max_evals: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 1000,
            tol: 1e-10,
            seed: 0,
            start: None,
            max_evals: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    /// Exact partner that is not trivially equivalent to the exactified `a`.
    Certified {
        a: Signal<GaussianRational>,
        b: Signal<GaussianRational>,
    },
    NumericOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchCandidate {
    /// In the scale of the input `a`.
    pub signal: Signal<Complex64>,
    pub residual: f64,
    pub certification: Certification,
}

impl SearchCandidate {
    pub fn is_certified(&self) -> bool {
        matches!(self.certification, Certification::Certified { .. })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchReport {
    pub candidates: Vec<SearchCandidate>,
    pub restarts: usize,
    /// Restarts that reached the residual threshold.
    pub converged: usize,
    /// Converged restarts discarded as trivial partners.
    pub trivial: usize,
}

/// Signature rows flattened: `k = 0..=N`, lags `0..=N-k`.
fn flat_signature(b: &[Complex64], out: &mut Vec<Complex64>) {
    out.clear();
    let n = b.len();
    let mut cross = vec![Complex64::default(); n];
    for k in 0..n {
        let len = n - k;
        for (t, slot) in cross.iter_mut().take(len).enumerate() {
            *slot = b[t + k] * b[t].conj();
        }
        for m in 0..len {
            let mut acc = Complex64::default();
            for t in m..len {
                acc += cross[t] * cross[t - m].conj();
            }
            out.push(acc);
        }
    }
}

struct Problem {
    target: Vec<Complex64>,
    n: usize,
    scratch: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl Problem {
    fn new(a: &[Complex64]) -> Self {
        let mut target = Vec::new();
        flat_signature(a, &mut target);
        Problem {
            target,
            n: a.len() - 1,
            scratch: Vec::new(),
            b: vec![Complex64::default(); a.len()],
        }
    }

    fn dim(&self) -> usize {
        (2 * self.n).max(1)
    }

    fn decode(&self, x: &[f64], b: &mut [Complex64]) {
        let n = self.n;
        b[0] = Complex64::new(x[0].abs(), 0.0);
        if n == 0 {
            return;
        }
        for j in 1..n {
            b[j] = Complex64::new(x[2 * j - 1], x[2 * j]);
        }
        b[n] = Complex64::new(x[2 * n - 1], 0.0);
    }

    fn encode(&self, b: &[Complex64]) -> Vec<f64> {
        let b = gauge_fix(b);
        let n = self.n;
        let mut x = vec![0.0; self.dim()];
        x[0] = b[0].re;
        if n > 0 {
            for j in 1..n {
                x[2 * j - 1] = b[j].re;
                x[2 * j] = b[j].im;
            }
            x[2 * n - 1] = b[n].re;
        }
        x
    }

    fn objective(&mut self, x: &[f64]) -> f64 {
        let mut b = std::mem::take(&mut self.b);
        self.decode(x, &mut b);
        flat_signature(&b, &mut self.scratch);
        self.b = b;
        self.scratch
            .iter()
            .zip(&self.target)
            .map(|(p, q)| (p - q).norm_sqr())
            .sum()
    }

    /// Compass search; returns the final point and residual.
    fn minimize(&mut self, mut x: Vec<f64>, target: f64, max_evals: usize) -> (Vec<f64>, f64) {
        let mut f = self.objective(&x);
        let mut step = 0.25;
        let mut evals = 1;
        while step > 1e-12 && evals < max_evals && f > target {
            let mut improved = false;
            for d in 0..x.len() {
                for sign in [1.0, -1.0] {
                    let old = x[d];
                    x[d] = old + sign * step;
                    let g = self.objective(&x);
                    evals += 1;
                    if g < f {
                        f = g;
                        improved = true;
                        break;
                    }
                    x[d] = old;
                }
            }
            step *= if improved { 1.5 } else { 0.5 };
        }
        (x, f)
    }
}

/// Removes the phase and modulation freedom: `b_0 ≥ 0` and `b_N` real.
fn gauge_fix(b: &[Complex64]) -> Vec<Complex64> {
    let n = b.len() - 1;
    let phase = Complex64::from_polar(1.0, -b[0].arg());
    let omega = if n == 0 { 0.0 } else { -(b[n].arg() - b[0].arg()) / n as f64 };
    b.iter()
        .enumerate()
        .map(|(j, z)| z * phase * Complex64::from_polar(1.0, omega * j as f64))
        .collect()
}

fn exactify(b: &[Complex64]) -> Option<Signal<GaussianRational>> {
    let q = |x: f64| rational_approximation(x, 1000, 1e-5 * x.abs().max(1.0));
    let coeffs = b
        .iter()
        .map(|z| Some(Complex::new(q(z.re)?, q(z.im)?)))
        .collect::<Option<Vec<_>>>()?;
    let s = Signal::from_coeffs(coeffs);
    (s.coeffs().len() == b.len()).then_some(s)
}

/// Tries the phase and modulation representatives `e^{iβ} e^{ijπt/N} b_j`
/// aligned with `a` until one has rational coordinates and certifies.
fn certify(a: &[Complex64], b: &[Complex64]) -> Certification {
    let Some(a_exact) = exactify(a) else {
        return Certification::NumericOnly;
    };
    let n = b.len() - 1;
    let base = gauge_fix(b);
    let turns = if n == 0 { 1 } else { 2 * n };
    for t in 0..turns {
        let omega = if n == 0 { 0.0 } else { PI * t as f64 / n as f64 };
        let phase = Complex64::from_polar(1.0, a[0].arg());
        let candidate: Vec<Complex64> = base
            .iter()
            .enumerate()
            .map(|(j, z)| z * phase * Complex64::from_polar(1.0, omega * j as f64))
            .collect();
        let Some(b_exact) = exactify(&candidate) else {
            continue;
        };
        let exact = Tolerance(0.0);
        if is_partner(&a_exact, &b_exact, exact).unwrap_or(false)
            && is_trivial_partner(&a_exact, &b_exact, exact)
                .map(|w| w.is_none())
                .unwrap_or(false)
        {
            return Certification::Certified { a: a_exact, b: b_exact };
        }
    }
    Certification::NumericOnly
}

struct Hit {
    b: Vec<Complex64>,
    residual: f64,
}

fn restart(a_unit: &[Complex64], config: &SearchConfig, scale: f64, index: usize) -> Option<Hit> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let mut problem = Problem::new(a_unit);
    let len = a_unit.len();
    let spread = (1.0 / len as f64).sqrt();
    let mut gauss = |s: f64| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * s
    };
    let start: Vec<Complex64> = match &config.start {
        Some((centre, width)) => (0..len)
            .map(|j| centre.get(j).copied().unwrap_or_default() / scale + gauss(*width / scale))
            .collect(),
        None => (0..len).map(|_| gauss(spread)).collect(),
    };
    let x0 = problem.encode(&start);
    let (x, f) = problem.minimize(x0, config.tol * 1e-3, config.max_evals);
    if f >= config.tol {
        return None;
    }
    let mut b = vec![Complex64::default(); len];
    problem.decode(&x, &mut b);
    Some(Hit { b, residual: f })
}

/// Runs `config.restarts` independent restarts and reports the non-trivial
/// converged points, deduplicated.
///
/// Restart `r` draws from ChaCha stream `r` of `config.seed`, so the report
/// does not depend on the thread count.
pub fn strange_search(a: &Signal<Complex64>, config: &SearchConfig) -> Result<SearchReport> {
    a.ensure_normalized()?;
    let mut report = SearchReport {
        restarts: config.restarts,
        ..SearchReport::default()
    };
    if config.restarts == 0 {
        return Ok(report);
    }
    let energy: f64 = a.coeffs().iter().map(|z| z.norm_sqr()).sum();
    let scale = energy.sqrt();
    let a_unit: Vec<Complex64> = a.coeffs().iter().map(|z| z / scale).collect();
    let unit_signal = Signal::from_coeffs(a_unit.clone());
    let hits: Vec<Hit> = (0..config.restarts)
        .into_par_iter()
        .filter_map(|r| restart(&a_unit, config, scale, r))
        .collect();
    report.converged = hits.len();
    let trivial_tol = Tolerance((1e3 * config.tol.sqrt()).clamp(1e-6, 1e-2));
    let mut kept: Vec<Hit> = Vec::new();
    for hit in hits {
        let b = Signal::from_coeffs(hit.b.clone());
        if b.coeffs().len() != a_unit.len() || is_trivial_partner(&unit_signal, &b, trivial_tol)?.is_some() {
            report.trivial += 1;
            continue;
        }
        let dup = kept.iter().any(|k| {
            k.b.iter()
                .zip(&hit.b)
                .all(|(x, y)| trivial_tol.close(*x, *y))
        });
        if !dup {
            kept.push(hit);
        }
    }
    report.candidates = kept
        .into_iter()
        .map(|hit| {
            let b: Vec<Complex64> = hit.b.iter().map(|z| z * scale).collect();
            SearchCandidate {
                certification: certify(a.coeffs(), &b),
                signal: Signal::from_coeffs(b),
                residual: hit.residual,
            }
        })
        .collect();
    Ok(report)
}
