//! Built-in example checks, run by `ambig selftest`.
//!
//! The kernels most checks go through are injectable so a broken
//! implementation shows up as a named failing row.

use std::io::Write;

use anyhow::Result;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use ambiguity_core::ambiguity::{
    apply_multiplier, is_partner, is_trivial_partner, restricted_partner_check, signature, Multiplier,
};
use ambiguity_core::hermite::{
    algebraic_partner_test, bargmann, p1_fast_path, partner_scan, HermiteExpansion, Poly, ScanSurvivor, GENERIC_TOL,
};
use ambiguity_core::lambda_sets::is_b2;
use ambiguity_core::matrix_kron::{build_k, gram_equal, interleave, kron_matrix, kron_signal, strange_search, SearchConfig};
use ambiguity_core::scalar::gaussian;
use ambiguity_core::{
    Complex64, ExactPoly, ExactSignal, GaussianRational, QSqrt2, Scalar, Signal, SupportSet, Tolerance,
};

use crate::Outcome;

pub type KronFn = fn(&ExactSignal, &ExactSignal) -> ambiguity_core::Result<ExactSignal>;
pub type PartnerFn = fn(&ExactSignal, &ExactSignal, Tolerance) -> ambiguity_core::Result<bool>;

/// Implementations exercised by the checks.
#[derive(Clone, Copy)]
pub struct Kernels {
    pub kron: KronFn,
    pub is_partner: PartnerFn,
}

impl Default for Kernels {
    fn default() -> Self {
        Kernels {
            kron: kron_signal::<GaussianRational>,
            is_partner: is_partner::<GaussianRational>,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(&Kernels) -> Result<bool>;

const EXACT: Tolerance = Tolerance(0.0);

fn sig(v: &[i64]) -> ExactSignal {
    Signal::from_i64s(v)
}

fn worked_pair() -> (ExactSignal, ExactSignal) {
    (sig(&[1, 2, 0, 2, 4]), sig(&[2, 4, 0, 1, 2]))
}

fn pair_is_partner(k: &Kernels) -> Result<bool> {
    let (a, b) = worked_pair();
    let residual = signature(&a)?.residual(&signature(&b)?);
    Ok((k.is_partner)(&a, &b, EXACT)? && residual == 0.0)
}

fn pair_not_trivial(_: &Kernels) -> Result<bool> {
    let (a, b) = worked_pair();
    Ok(is_trivial_partner(&a, &b, EXACT)?.is_none())
}

fn cli_partner_exit(_: &Kernels) -> Result<bool> {
    let (code, _, _) = crate::run_captured(["ambig", "partner-check", "[1,2,0,2,4]", "[2,4,0,1,2]"]);
    Ok(code == crate::EXIT_TRUE)
}

fn cli_trivial_exit(_: &Kernels) -> Result<bool> {
    let (code, _, _) = crate::run_captured(["ambig", "trivial-check", "[1,2,0,2,4]", "[2,4,0,1,2]"]);
    Ok(code == crate::EXIT_FALSE)
}

fn sidon_multiplier<S: Scalar>(c3: S) -> Result<Multiplier<S>> {
    Ok(Multiplier::new([(0, S::one()), (1, S::one()), (3, c3)], Tolerance(1e-12))?)
}

fn free_phase_multiplier(k: &Kernels) -> Result<bool> {
    let a = sig(&[1, 1, 0, 1]);
    for c3 in [gaussian((3, 5), (4, 5)), gaussian((-1, 1), (0, 1)), gaussian((0, 1), (1, 1))] {
        let b = apply_multiplier(&sidon_multiplier(c3)?, &a)?;
        if !(k.is_partner)(&a, &b, EXACT)? {
            return Ok(false);
        }
    }
    let af = a.to_float();
    for theta in [0.3f64, 1.7, 2.9] {
        let c3 = Complex64::from_polar(1.0, theta);
        let b = apply_multiplier(&sidon_multiplier(c3)?, &af)?;
        if !is_partner(&af, &b, Tolerance(1e-12))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn restricted_witnesses(_: &Kernels) -> Result<bool> {
    let a = Signal::from_coeffs(vec![gaussian((2, 1), (1, 1)), gaussian((-1, 1), (0, 1)), GaussianRational::zero(), gaussian((1, 2), (3, 1))]);
    let c = sidon_multiplier(gaussian((3, 5), (-4, 5)))?;
    let b = apply_multiplier(&c, &a)?;
    let Some(etas) = restricted_partner_check(&a, &b, EXACT)? else {
        return Ok(false);
    };
    let support = [0i64, 1, 3];
    for (k, eta) in etas.iter().enumerate() {
        let k = k as i64;
        let expected = support
            .iter()
            .find(|&&n| support.contains(&(n - k)))
            .map(|&n| c.get(n).unwrap().clone() * c.get(n - k).unwrap().conj());
        if let Some(e) = expected {
            if &e != eta {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn powers_of_two(_: &Kernels) -> Result<bool> {
    Ok(is_b2(&SupportSet::new((0..=10).map(|j| 1i64 << j)))?)
}

fn gram_on_pair(_: &Kernels) -> Result<bool> {
    let (a, b) = worked_pair();
    Ok(gram_equal(&a, &b, EXACT)?)
}

fn kron_same(k: &Kernels) -> Result<bool> {
    Ok((k.kron)(&sig(&[1, 2]), &sig(&[1, 2]))? == sig(&[1, 2, 0, 2, 4]))
}

fn kron_swapped(k: &Kernels) -> Result<bool> {
    Ok((k.kron)(&sig(&[1, 2]), &sig(&[2, 1]))? == sig(&[2, 4, 0, 1, 2]))
}

fn kron_matrix_identity(k: &Kernels) -> Result<bool> {
    let (a, b) = (sig(&[1, 2]), sig(&[1, 2]));
    let kc = build_k(&(k.kron)(&a, &b)?)?;
    Ok(kron_matrix(&build_k(&a)?, &build_k(&b)?).as_ref() == Some(&kc))
}

fn kron_support(k: &Kernels) -> Result<bool> {
    let (a, b) = (sig(&[1, 2]), sig(&[1, 2]));
    let stride = 2 * a.degree().unwrap_or(0) as i64 + 1;
    let kc = build_k(&(k.kron)(&a, &b)?)?;
    let sa: Vec<(i64, i64)> = build_k(&a)?.lattice_entries().into_iter().map(|(p, _)| p).collect();
    let sb: Vec<(i64, i64)> = build_k(&b)?.lattice_entries().into_iter().map(|(p, _)| p).collect();
    Ok(kc.lattice_entries().into_iter().all(|((i, j), _)| {
        sa.iter()
            .any(|&(ia, ja)| sb.iter().any(|&(ib, jb)| ia + stride * ib == i && ja + stride * jb == j))
    }))
}

fn interleave_example(k: &Kernels) -> Result<bool> {
    let out = interleave(&sig(&[1, 1]), &GaussianRational::from_i64(2))?;
    Ok(out.a == sig(&[1, 2, 1, 2]) && out.b == sig(&[2, 1, 2, 1]) && (k.is_partner)(&out.a, &out.b, EXACT)?)
}

fn short_sequences_have_no_strange(_: &Kernels) -> Result<bool> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut coeffs: Vec<Complex64> = (0..3)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    coeffs[0] += Complex64::new(1.5, 0.0);
    coeffs[2] += Complex64::new(0.0, 1.5);
    let config = SearchConfig { restarts: 10_000, ..SearchConfig::default() };
    let report = strange_search(&Signal::from_coeffs(coeffs), &config)?;
    Ok(report.candidates.iter().all(|c| !c.is_certified()))
}

fn bargmann_degree_one(_: &Kernels) -> Result<bool> {
    let e = HermiteExpansion::new(vec![QSqrt2::zero(), QSqrt2::one()]);
    Ok(bargmann(&e) == Poly::monomial(QSqrt2::sqrt2(), 1))
}

fn reflected_poly_is_partner(_: &Kernels) -> Result<bool> {
    let p = ExactPoly::new(vec![gaussian((5, 1), (1, 1)), gaussian((-1, 1), (0, 1)), gaussian((2, 1), (-3, 1)), GaussianRational::one()]);
    Ok(algebraic_partner_test(&p, &p.check(), EXACT)?)
}

fn monic_reflection(_: &Kernels) -> Result<bool> {
    let factors = [gaussian((1, 1), (0, 1)), gaussian((-2, 1), (0, 1)), gaussian((0, 1), (3, 1)), gaussian((1, 2), (-1, 3))];
    let pi = factors.iter().fold(ExactPoly::constant(GaussianRational::one()), |acc, r| {
        &acc * &ExactPoly::new(vec![-r.clone(), GaussianRational::one()])
    });
    Ok(pi.is_monic() && pi.check().is_monic())
}

fn binomial_only_trivial(_: &Kernels) -> Result<bool> {
    let p = ExactPoly::from_i64s(&[0, 0, 3, 0, 0, 1]);
    let fast = p1_fast_path(&p)?;
    let fast_ok = matches!(fast.as_deref(), Some([ScanSurvivor::Trivial { .. }, ScanSurvivor::Trivial { .. }]));
    // a nearby generic polynomial keeps p₁ = 0 and goes through the scan
    let q = ExactPoly::new(vec![gaussian((1, 5), (0, 1)), gaussian((1, 7), (0, 1)), GaussianRational::from_i64(3), GaussianRational::zero(), GaussianRational::zero(), GaussianRational::one()]);
    let scan = partner_scan(&q, GENERIC_TOL)?;
    let scan_ok = scan.len() == 2 && scan.iter().all(|s| matches!(s, ScanSurvivor::Trivial { .. }));
    Ok(fast_ok && scan_ok)
}

const CHECKS: &[(&str, CheckFn)] = &[
    ("worked pair is a partner pair", pair_is_partner),
    ("worked pair is not trivially related", pair_not_trivial),
    ("partner-check exits 0 on the worked pair", cli_partner_exit),
    ("trivial-check exits 1 on the worked pair", cli_trivial_exit),
    ("multiplier on {0,1,3} gives partners for any phase", free_phase_multiplier),
    ("restricted witnesses are c(n) conj(c(n-k))", restricted_witnesses),
    ("powers of two form a B2 set", powers_of_two),
    ("Gram criterion accepts the worked pair", gram_on_pair),
    ("kron (1,2) with (1,2)", kron_same),
    ("kron (1,2) with (2,1)", kron_swapped),
    ("ambiguity matrix of a kron product", kron_matrix_identity),
    ("kron matrix support inclusion", kron_support),
    ("interleave alpha=(1,1), lambda=2", interleave_example),
    ("no certified strange partner in S(2)", short_sequences_have_no_strange),
    ("Bargmann image of e=(0,1)", bargmann_degree_one),
    ("reflected polynomial is an algebraic partner", reflected_poly_is_partner),
    ("reflection of a monic product is monic", monic_reflection),
    ("Z^5 + 3Z^2 has only trivial partners", binomial_only_trivial),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_checks(kernels: &Kernels) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, f)| match f(kernels) {
            Ok(passed) => CheckResult { name, passed, detail: String::new() },
            Err(e) => CheckResult { name, passed: false, detail: format!("{e:#}") },
        })
        .collect()
}

pub fn render_table(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in results {
        let status = if r.passed { "pass" } else { "FAIL" };
        if r.detail.is_empty() {
            s.push_str(&format!("{status}  {}", r.name));
        } else {
            s.push_str(&format!("{status}  {:width$}  ({})", r.name, r.detail));
        }
        s.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    s.push_str(&format!("{} checks, {failed} failed\n", results.len()));
    s
}

pub fn report_json(results: &[CheckResult]) -> serde_json::Value {
    json!({
        "passed": results.iter().all(|r| r.passed),
        "checks": results
            .iter()
            .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
            .collect::<Vec<_>>(),
    })
}

pub fn run_command(json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let results = run_checks(&Kernels::default());
    let passed = results.iter().all(|r| r.passed);
    if json {
        return Ok(Outcome::predicate(passed, report_json(&results)));
    }
    write!(out, "{}", render_table(&results))?;
    Ok(Outcome { value: None, code: if passed { crate::EXIT_TRUE } else { crate::EXIT_FALSE } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn broken_kron(a: &ExactSignal, b: &ExactSignal) -> ambiguity_core::Result<ExactSignal> {
        let c = kron_signal(a, b)?;
        let mut v = c.coeffs().to_vec();
        v[0] = v[0].clone() + GaussianRational::one();
        Ok(Signal::from_coeffs(v))
    }

    #[test]
    fn corrupted_kron_is_named() {
        let kernels = Kernels { kron: broken_kron, ..Kernels::default() };
        let failed: Vec<&str> = run_checks(&kernels).into_iter().filter(|r| !r.passed).map(|r| r.name).collect();
        assert!(failed.contains(&"kron (1,2) with (1,2)"), "{failed:?}");
        assert!(failed.contains(&"ambiguity matrix of a kron product"));
        assert!(!failed.contains(&"powers of two form a B2 set"));
    }

    #[test]
    fn table_marks_failures() {
        let rows = vec![
            CheckResult { name: "a", passed: true, detail: String::new() },
            CheckResult { name: "b", passed: false, detail: "boom".into() },
        ];
        let t = render_table(&rows);
        assert!(t.contains("FAIL  b  (boom)"));
        assert!(t.ends_with("2 checks, 1 failed\n"));
    }
}
