use anyhow::{anyhow, bail, Context, Result};
use clap::Subcommand;
use serde_json::{json, Value};

use ambiguity_core::ambiguity::{
    apply_multiplier, apply_trivial, check_multiplier_condition, is_partner, is_trivial_partner,
    restricted_partner_check, signature, HeisenbergElement, Multiplier,
};
use ambiguity_core::lambda_sets::{is_b2, is_b3, recover_shift, Orientation};
use ambiguity_core::matrix_kron::{
    build_k, gram_equal, interleave, iterated_product, kron_signal, kron_signal_tight, strange_search, Certification,
    Flip, FlipMode, SearchConfig,
};
use ambiguity_core::seqcore::normalize;
use ambiguity_core::{Complex64, Signal, SupportSet, Tolerance};

use crate::io::{self, signal_json, CliScalar, RawScalar, RawSignal};
use crate::{Ctx, Outcome};

const DEFAULT_TOL: f64 = 1e-9;

#[derive(Subcommand, Debug)]
pub enum MultiplierCmd {
    /// Check the multiplier condition on its support.
    Check {
        /// Support, e.g. "0,1,3".
        #[arg(long, allow_hyphen_values = true)]
        support: String,
        /// JSON array of unimodular values, one per support point.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Multiply the Fourier coefficients of A by the multiplier.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        support: String,
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BsetCmd {
    /// Test whether every ORDER-fold sum is unique.
    Test {
        #[arg(long, default_value_t = 2)]
        order: u8,
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Find m with LAMBDA_P = LAMBDA - m or LAMBDA_P = m - LAMBDA.
    Recover {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        lambda_p: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MatrixCmd {
    /// Nonzero entries of the ambiguity matrix in lattice coordinates.
    Build { a: String },
    /// Compare the Gram matrices of A and B.
    GramCheck { a: String, b: String },
}

#[derive(Subcommand, Debug)]
pub enum StrangeCmd {
    /// Kronecker product of two sequences.
    Kron {
        a: String,
        b: String,
        /// Use the N+1 stride instead of 2N+1.
        #[arg(long)]
        tight: bool,
    },
    /// Interleaved partner pair built from ALPHA and LAMBDA.
    Interleave {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Coefficients of a product of factors alpha_j + beta_j z^(3^j).
    Iterate {
        /// JSON list of [alpha, beta] pairs.
        #[arg(long, allow_hyphen_values = true)]
        factors: String,
        /// JSON list of {"index", "mode": "modulate"|"swap", "c"}.
        #[arg(long, allow_hyphen_values = true, default_value = "[]")]
        flips: String,
    },
    /// Randomized search for partners of A that are not trivial.
    Search {
        a: String,
        #[arg(long, default_value_t = 1000)]
        restarts: usize,
        #[arg(long, default_value_t = 20_000)]
        max_evals: usize,
    },
}

fn mode_json<S: CliScalar>() -> Value {
    json!(if S::EXACT { "exact" } else { "float" })
}

fn normalized<S: CliScalar>(raw: &RawSignal) -> Result<Signal<S>> {
    Ok(normalize(&raw.to_signal::<S>())?.0)
}

fn load_two(ctx: &mut Ctx, a: &str, b: &str) -> Result<(RawSignal, RawSignal, io::Mode)> {
    let (a, b) = (io::load_signal(a)?, io::load_signal(b)?);
    let mode = ctx.mode(a.has_float() || b.has_float());
    Ok((a, b, mode))
}

pub fn partner_check(ctx: &mut Ctx, a: &str, b: &str) -> Result<Outcome> {
    let (a, b, mode) = load_two(ctx, a, b)?;
    let tol = Tolerance(ctx.tol_or(DEFAULT_TOL));
    in_mode!(mode, partner_check_in(&a, &b, tol))
}

fn partner_check_in<S: CliScalar>(a: &RawSignal, b: &RawSignal, tol: Tolerance) -> Result<Outcome> {
    let (a, b) = (normalized::<S>(a)?, normalized::<S>(b)?);
    let holds = is_partner(&a, &b, tol)?;
    let residual = if a.coeffs().len() == b.coeffs().len() {
        json!(signature(&a)?.residual(&signature(&b)?))
    } else {
        Value::Null
    };
    Ok(Outcome::predicate(
        holds,
        json!({ "partner": holds, "mode": mode_json::<S>(), "residual": residual }),
    ))
}

fn witness_json(h: &HeisenbergElement<Complex64>) -> Value {
    json!({ "beta": h.beta(), "omega": h.omega(), "shift": h.shift, "reflected": h.reflected })
}

pub fn trivial_check(ctx: &mut Ctx, a: &str, b: &str) -> Result<Outcome> {
    let (a, b, mode) = load_two(ctx, a, b)?;
    let tol = Tolerance(ctx.tol_or(DEFAULT_TOL));
    in_mode!(mode, trivial_check_in(&a, &b, tol))
}

fn trivial_check_in<S: CliScalar>(a: &RawSignal, b: &RawSignal, tol: Tolerance) -> Result<Outcome> {
    let (a, b) = (normalized::<S>(a)?, normalized::<S>(b)?);
    let witness = is_trivial_partner(&a, &b, tol)?;
    let value = match &witness {
        None => json!({ "witness": null, "mode": mode_json::<S>() }),
        Some(h) => {
            // the witness angles are floats; confirm they reproduce b
            let image = apply_trivial(h, &a.to_float())?;
            let check = image.approx_eq(&b.to_float(), Tolerance(tol.value().max(1e-9)));
            json!({ "witness": witness_json(h), "reproduces": check, "mode": mode_json::<S>() })
        }
    };
    Ok(Outcome::predicate(witness.is_some(), value))
}

pub fn restricted_check(ctx: &mut Ctx, a: &str, b: &str) -> Result<Outcome> {
    let (a, b, mode) = load_two(ctx, a, b)?;
    let tol = Tolerance(ctx.tol_or(DEFAULT_TOL));
    in_mode!(mode, restricted_check_in(&a, &b, tol))
}

fn restricted_check_in<S: CliScalar>(a: &RawSignal, b: &RawSignal, tol: Tolerance) -> Result<Outcome> {
    let (a, b) = (normalized::<S>(a)?, normalized::<S>(b)?);
    let etas = restricted_partner_check(&a, &b, tol)?;
    let list = etas.as_ref().map(|e| e.iter().map(CliScalar::to_json).collect::<Vec<_>>());
    Ok(Outcome::predicate(
        etas.is_some(),
        json!({ "etas": list, "mode": mode_json::<S>() }),
    ))
}

fn load_multiplier(support: &str, values: &str) -> Result<(Vec<i64>, Vec<RawScalar>)> {
    let support = io::parse_int_list(support)?;
    let values = io::load_scalar_list(values)?;
    if support.len() != values.len() {
        bail!("{} support points but {} values", support.len(), values.len());
    }
    Ok((support, values))
}

fn build_multiplier<S: CliScalar>(support: &[i64], values: &[RawScalar], tol: Tolerance) -> Result<Multiplier<S>> {
    Ok(Multiplier::new(
        support.iter().copied().zip(values.iter().map(S::from_raw)),
        tol,
    )?)
}

pub fn multiplier(ctx: &mut Ctx, cmd: MultiplierCmd) -> Result<Outcome> {
    let tol = Tolerance(ctx.tol_or(DEFAULT_TOL));
    match cmd {
        MultiplierCmd::Check { support, values } => {
            let (support, values) = load_multiplier(&support, &values)?;
            let mode = ctx.mode(values.iter().any(RawScalar::has_float));
            in_mode!(mode, multiplier_check_in(&support, &values, tol))
        }
        MultiplierCmd::Apply { support, values, a } => {
            let (support, values) = load_multiplier(&support, &values)?;
            let a = io::load_signal(&a)?;
            let mode = ctx.mode(a.has_float() || values.iter().any(RawScalar::has_float));
            in_mode!(mode, multiplier_apply_in(&support, &values, &a, tol))
        }
    }
}

fn multiplier_check_in<S: CliScalar>(support: &[i64], values: &[RawScalar], tol: Tolerance) -> Result<Outcome> {
    let c = build_multiplier::<S>(support, values, tol)?;
    let holds = check_multiplier_condition(&c, tol);
    Ok(Outcome::predicate(holds, json!({ "condition": holds })))
}

fn multiplier_apply_in<S: CliScalar>(
    support: &[i64],
    values: &[RawScalar],
    a: &RawSignal,
    tol: Tolerance,
) -> Result<Outcome> {
    let c = build_multiplier::<S>(support, values, tol)?;
    let b = apply_multiplier(&c, &a.to_signal::<S>())?;
    Ok(Outcome::success(json!({
        "signal": signal_json(&b),
        "condition": check_multiplier_condition(&c, tol),
    })))
}

pub fn bset(_ctx: &mut Ctx, cmd: BsetCmd) -> Result<Outcome> {
    match cmd {
        BsetCmd::Test { order, set } => {
            let elems = io::parse_int_list(&set)?;
            let s = SupportSet::new(elems);
            let holds = match order {
                2 => is_b2(&s)?,
                3 => is_b3(&s)?,
                other => bail!("--order must be 2 or 3, got {other}"),
            };
            Ok(Outcome::predicate(
                holds,
                json!({ "order": order, "set": s.elems(), "holds": holds }),
            ))
        }
        BsetCmd::Recover { lambda, lambda_p } => {
            let l = SupportSet::new(io::parse_int_list(&lambda)?);
            let lp = SupportSet::new(io::parse_int_list(&lambda_p)?);
            let found = recover_shift(&l, &lp)?;
            let value = match found {
                None => json!({ "orientation": null, "shift": null }),
                Some((o, m)) => json!({
                    "orientation": match o {
                        Orientation::Direct => "direct",
                        Orientation::Reflected => "reflected",
                    },
                    "shift": m,
                }),
            };
            Ok(Outcome::predicate(found.is_some(), value))
        }
    }
}

pub fn matrix(ctx: &mut Ctx, cmd: MatrixCmd) -> Result<Outcome> {
    let tol = Tolerance(ctx.tol_or(DEFAULT_TOL));
    match cmd {
        MatrixCmd::Build { a } => {
            let a = io::load_signal(&a)?;
            let mode = ctx.mode(a.has_float());
            in_mode!(mode, matrix_build_in(&a))
        }
        MatrixCmd::GramCheck { a, b } => {
            let (a, b, mode) = load_two(ctx, &a, &b)?;
            in_mode!(mode, gram_check_in(&a, &b, tol))
        }
    }
}

fn matrix_build_in<S: CliScalar>(a: &RawSignal) -> Result<Outcome> {
    let k = build_k(&normalized::<S>(a)?)?;
    let entries: Vec<Value> = k
        .lattice_entries()
        .into_iter()
        .map(|((i, j), v)| json!({ "i": i, "j": j, "value": v.to_json() }))
        .collect();
    Ok(Outcome::success(json!({
        "degree": k.degree(),
        "dim": k.dim(),
        "entries": entries,
    })))
}

fn gram_check_in<S: CliScalar>(a: &RawSignal, b: &RawSignal, tol: Tolerance) -> Result<Outcome> {
    let holds = gram_equal(&normalized::<S>(a)?, &normalized::<S>(b)?, tol)?;
    Ok(Outcome::predicate(holds, json!({ "gram_equal": holds, "mode": mode_json::<S>() })))
}

pub fn strange(ctx: &mut Ctx, cmd: StrangeCmd) -> Result<Outcome> {
    let tol = Tolerance(ctx.tol_or(DEFAULT_TOL));
    match cmd {
        StrangeCmd::Kron { a, b, tight } => {
            let (a, b, mode) = load_two(ctx, &a, &b)?;
            in_mode!(mode, kron_in(&a, &b, tight))
        }
        StrangeCmd::Interleave { alpha, lambda } => {
            let alpha = io::load_signal(&alpha)?;
            let lambda = io::load_scalar(&lambda)?;
            let mode = ctx.mode(alpha.has_float() || lambda.has_float());
            let out = in_mode!(mode, interleave_in(&alpha, &lambda))?;
            if out.1 {
                ctx.warn("lambda = 0 leaves trailing zeros; both outputs were re-normalized");
            }
            Ok(out.0)
        }
        StrangeCmd::Iterate { factors, flips } => {
            let factors = parse_factors(&factors)?;
            let flips = parse_flips(&flips)?;
            let any_float = factors.iter().any(|(x, y)| x.has_float() || y.has_float())
                || flips.iter().any(|(_, _, c)| c.has_float());
            let mode = ctx.mode(any_float);
            in_mode!(mode, iterate_in(&factors, &flips, tol))
        }
        StrangeCmd::Search { a, restarts, max_evals } => {
            let a = io::load_signal(&a)?;
            if ctx.global.mode == Some(io::Mode::Exact) {
                ctx.note("the search runs in float arithmetic; candidates are certified exactly where possible");
            }
            let config = SearchConfig {
                restarts,
                tol: ctx.tol_or(SearchConfig::default().tol),
                seed: ctx.global.seed,
                start: None,
                max_evals,
            };
            let report = strange_search(&normalized::<Complex64>(&a)?, &config)?;
            ctx.note("search results are numerical evidence, not proof");
            let candidates: Vec<Value> = report
                .candidates
                .iter()
                .map(|c| {
                    let cert = match &c.certification {
                        Certification::Certified { a, b } => json!({ "a": signal_json(a), "b": signal_json(b) }),
                        Certification::NumericOnly => Value::Null,
                    };
                    json!({
                        "signal": signal_json(&c.signal),
                        "residual": c.residual,
                        "certified": c.is_certified(),
                        "certificate": cert,
                    })
                })
                .collect();
            Ok(Outcome::success(json!({
                "restarts": report.restarts,
                "converged": report.converged,
                "trivial": report.trivial,
                "certified": report.candidates.iter().filter(|c| c.is_certified()).count(),
                "candidates": candidates,
                "seed": config.seed,
                "evidence_only": true,
            })))
        }
    }
}

fn kron_in<S: CliScalar>(a: &RawSignal, b: &RawSignal, tight: bool) -> Result<Outcome> {
    let (a, b) = (normalized::<S>(a)?, normalized::<S>(b)?);
    let c = if tight { kron_signal_tight(&a, &b)? } else { kron_signal(&a, &b)? };
    Ok(Outcome::success(signal_json(&c)))
}

fn interleave_in<S: CliScalar>(alpha: &RawSignal, lambda: &RawScalar) -> Result<(Outcome, bool)> {
    let out = interleave(&normalized::<S>(alpha)?, &S::from_raw(lambda))?;
    Ok((
        Outcome::success(json!({
            "a": signal_json(&out.a),
            "b": signal_json(&out.b),
            "renormalized": out.renormalized,
        })),
        out.renormalized,
    ))
}

fn parse_factors(arg: &str) -> Result<Vec<(RawScalar, RawScalar)>> {
    let v = io::load_json(arg)?;
    let items = v.as_array().ok_or_else(|| anyhow!("factors: expected a JSON list of [alpha, beta] pairs"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, f)| match f.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok((
                io::scalar_from_value(x, &format!("factors[{i}][0]"))?,
                io::scalar_from_value(y, &format!("factors[{i}][1]"))?,
            )),
            _ => bail!("factors[{i}]: expected [alpha, beta]"),
        })
        .collect()
}

fn parse_flips(arg: &str) -> Result<Vec<(usize, FlipMode, RawScalar)>> {
    let v = io::load_json(arg)?;
    let items = v.as_array().ok_or_else(|| anyhow!("flips: expected a JSON list"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let index = f
                .get("index")
                .and_then(Value::as_u64)
                .ok_or_else(|| anyhow!("flips[{i}]: missing integer \"index\""))? as usize;
            let mode = match f.get("mode").and_then(Value::as_str) {
                Some("modulate") => FlipMode::Modulate,
                Some("swap") => FlipMode::Swap,
                _ => bail!("flips[{i}]: \"mode\" must be \"modulate\" or \"swap\""),
            };
            let c = match f.get("c") {
                None => io::one_raw(),
                Some(c) => io::scalar_from_value(c, &format!("flips[{i}].c")).context("bad flip constant")?,
            };
            Ok((index, mode, c))
        })
        .collect()
}

fn iterate_in<S: CliScalar>(
    factors: &[(RawScalar, RawScalar)],
    flips: &[(usize, FlipMode, RawScalar)],
    tol: Tolerance,
) -> Result<Outcome> {
    let factors: Vec<(S, S)> = factors.iter().map(|(x, y)| (S::from_raw(x), S::from_raw(y))).collect();
    let flips: Vec<Flip<S>> = flips
        .iter()
        .map(|(index, mode, c)| Flip { index: *index, mode: *mode, c: S::from_raw(c) })
        .collect();
    let s = iterated_product(&factors, &flips, tol)?;
    Ok(Outcome::success(signal_json(&s)))
}
