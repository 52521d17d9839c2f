use std::fs::File;
use std::io::BufWriter;

use anyhow::{bail, Context, Result};
use clap::Subcommand;
use serde_json::{json, Value};

use ambiguity_core::pulse::{
    apply_continuous_trivial, export_grid, verify_against_quadrature, write_csv, GridRange, PulseDescriptor,
};
use ambiguity_core::Complex64;

use crate::io;
use crate::{Ctx, Outcome};

#[derive(Subcommand, Debug)]
pub enum PulseCmd {
    /// Evaluate the ambiguity function of the pulse train on a grid.
    Grid {
        u: String,
        #[arg(long, default_value = "1/3")]
        eta: String,
        /// start:stop:step, inclusive.
        #[arg(long, allow_hyphen_values = true, default_value = "-5:5:0.1")]
        xrange: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-3.14:3.14:0.1")]
        yrange: String,
    },
    /// Compare the factorized formula with direct quadrature at random points.
    Verify {
        u: String,
        #[arg(long, default_value = "1/3")]
        eta: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn real(v: &Value, name: &str) -> Result<f64> {
    Ok(io::scalar_from_value(v, name)?.to_complex64().re)
}

/// Reads the signal and the optional `phase`, `omega`, `alpha`, `epsilon`
/// decorations next to `coeffs`.
fn load_pulse(arg: &str, eta: &str) -> Result<PulseDescriptor> {
    let v = io::load_json(arg)?;
    let raw = io::signal_from_value(&v)?;
    let base = PulseDescriptor::new(&raw.to_signal::<Complex64>(), io::parse_eta(eta)?)?;
    let field = |k: &str| v.as_object().and_then(|m| m.get(k));
    let phase = match field("phase") {
        Some(p) => io::scalar_from_value(p, "phase")?.to_complex64(),
        None => Complex64::new(1.0, 0.0),
    };
    let omega = field("omega").map(|x| real(x, "omega")).transpose()?.unwrap_or(0.0);
    let alpha = field("alpha").map(|x| real(x, "alpha")).transpose()?.unwrap_or(0.0);
    let epsilon = match field("epsilon") {
        None => 1,
        Some(e) => match e.as_i64() {
            Some(1) => 1,
            Some(-1) => -1,
            _ => bail!("at epsilon: expected 1 or -1"),
        },
    };
    Ok(apply_continuous_trivial(&base, phase, omega, alpha, epsilon)?)
}

pub fn run(ctx: &mut Ctx, cmd: PulseCmd) -> Result<Outcome> {
    match cmd {
        PulseCmd::Grid { u, eta, xrange, yrange } => {
            let u = load_pulse(&u, &eta)?;
            let xs = GridRange::parse(&xrange)?.values()?;
            let ys = GridRange::parse(&yrange)?.values()?;
            let rows = export_grid(&u, &xs, &ys)?;
            match &ctx.global.output {
                Some(path) => {
                    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
                    write_csv(&rows, BufWriter::new(file)).with_context(|| format!("writing {}", path.display()))?;
                    ctx.note(&format!("{} rows written to {}", rows.len(), path.display()));
                    Ok(Outcome { value: None, code: crate::EXIT_TRUE })
                }
                None => {
                    let list: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({ "x": r.x, "y": r.y, "abs": r.value.norm(), "re": r.value.re, "im": r.value.im }))
                        .collect();
                    Ok(Outcome::success(json!({ "rows": list })))
                }
            }
        }
        PulseCmd::Verify { u, eta, samples } => {
            let u = load_pulse(&u, &eta)?;
            let tol = ctx.tol_or(1e-6);
            let report = verify_against_quadrature(&u, samples, ctx.global.seed);
            if !report.in_uniqueness_regime {
                ctx.warn("eta > 1/3 lies outside the regime where pulse partners are known to be trivial");
            }
            let holds = report.max_abs_error <= tol;
            Ok(Outcome::predicate(
                holds,
                json!({
                    "samples": report.samples,
                    "max_abs_error": report.max_abs_error,
                    "tol": tol,
                    "eta": u.eta().to_string(),
                    "in_uniqueness_regime": report.in_uniqueness_regime,
                    "seed": ctx.global.seed,
                }),
            ))
        }
    }
}
