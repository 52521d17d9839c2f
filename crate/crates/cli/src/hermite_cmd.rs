use anyhow::{anyhow, bail, Result};
use clap::Subcommand;
use serde_json::{json, Value};

use ambiguity_core::hermite::{
    ambiguity_polynomial, ambiguity_product, hermite_cross_quadrature, is_generic, laguerre_cross,
    laguerre_relative_error, p1_fast_path, partner_scan, roots, BiPoly, ScanSurvivor, GENERIC_TOL,
};
use ambiguity_core::Error;

use crate::io::{self, poly_json, CliScalar, RawSignal};
use crate::{Ctx, Outcome};

#[derive(Subcommand, Debug)]
pub enum HermiteCmd {
    /// Coefficients of A_P(z, w), indexed [z-degree][w-degree].
    Ambpoly {
        p: String,
        /// Print A_P(z, w) A_P(-z, -w) instead.
        #[arg(long)]
        product: bool,
    },
    /// All partners of a generic monic P among root-split candidates.
    PartnerScan { p: String },
    /// Simple roots, no two summing to zero.
    GenericCheck { p: String },
    /// Closed-form Hermite cross ambiguity against Gauss-Hermite quadrature.
    LaguerreVerify {
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        /// Sample grid as ROWSxCOLS over [-extent, extent]^2.
        #[arg(long, default_value = "3x3")]
        grid: String,
        #[arg(long, default_value_t = 2.0)]
        extent: f64,
        #[arg(long, default_value_t = 100)]
        nodes: usize,
    },
}

fn bipoly_json<S: CliScalar>(b: &BiPoly<S>) -> Value {
    Value::Array(
        b.grid()
            .iter()
            .map(|row| Value::Array(row.iter().map(CliScalar::to_json).collect()))
            .collect(),
    )
}

pub fn run(ctx: &mut Ctx, cmd: HermiteCmd) -> Result<Outcome> {
    match cmd {
        HermiteCmd::Ambpoly { p, product } => {
            let p = io::load_signal(&p)?;
            let mode = ctx.mode(p.has_float());
            in_mode!(mode, ambpoly_in(&p, product))
        }
        HermiteCmd::PartnerScan { p } => {
            let p = io::load_signal(&p)?;
            let mode = ctx.mode(p.has_float());
            let tol = ctx.tol_or(GENERIC_TOL);
            in_mode!(mode, scan_in(ctx, &p, tol))
        }
        HermiteCmd::GenericCheck { p } => {
            let p = io::load_signal(&p)?;
            let mode = ctx.mode(p.has_float());
            let tol = ctx.tol_or(GENERIC_TOL);
            in_mode!(mode, generic_in(&p, tol))
        }
        HermiteCmd::LaguerreVerify { jmax, grid, extent, nodes } => {
            let tol = ctx.tol_or(1e-8);
            laguerre_verify(jmax, &grid, extent, nodes, tol)
        }
    }
}

fn ambpoly_in<S: CliScalar>(p: &RawSignal, product: bool) -> Result<Outcome> {
    let p = p.to_poly::<S>();
    let b = if product { ambiguity_product(&p)? } else { ambiguity_polynomial(&p)? };
    Ok(Outcome::success(json!({ "grid": bipoly_json(&b) })))
}

fn scan_in<S: CliScalar>(ctx: &mut Ctx, p: &RawSignal, tol: f64) -> Result<Outcome> {
    let p = p.to_poly::<S>();
    let survivors = match partner_scan(&p, tol) {
        Ok(s) => s,
        Err(Error::NotGeneric) => {
            if let Ok(Some(_)) = p1_fast_path(&p) {
                ctx.note("the subleading coefficient vanishes, so P has only the partners P and its reflection");
            }
            bail!("P is not generic; the scan needs simple roots with no two summing to zero")
        }
        Err(e) => return Err(e.into()),
    };
    let mut strange = 0;
    let list: Vec<Value> = survivors
        .iter()
        .map(|s| match s {
            ScanSurvivor::Trivial { poly, reflected } => {
                json!({ "kind": "trivial", "reflected": reflected, "poly": poly_json(poly) })
            }
            ScanSurvivor::Strange(q) => {
                strange += 1;
                json!({ "kind": "strange", "poly": poly_json(q) })
            }
        })
        .collect();
    Ok(Outcome::predicate(
        strange == 0,
        json!({ "survivors": list, "only_trivial": strange == 0 }),
    ))
}

fn generic_in<S: CliScalar>(p: &RawSignal, tol: f64) -> Result<Outcome> {
    let p = p.to_poly::<S>();
    let holds = is_generic(&p, tol)?;
    let r: Vec<Value> = roots(&p)?.iter().map(CliScalar::to_json).collect();
    Ok(Outcome::predicate(holds, json!({ "generic": holds, "roots": r })))
}

fn parse_grid(text: &str) -> Result<(usize, usize)> {
    let (r, c) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("grid {text:?} is not ROWSxCOLS"))?;
    let (r, c): (usize, usize) = (r.trim().parse()?, c.trim().parse()?);
    if r == 0 || c == 0 {
        bail!("grid {text:?} is empty");
    }
    Ok((r, c))
}

fn axis(n: usize, extent: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n).map(|i| -extent + 2.0 * extent * i as f64 / (n - 1) as f64).collect()
}

fn laguerre_verify(jmax: usize, grid: &str, extent: f64, nodes: usize, tol: f64) -> Result<Outcome> {
    let (rows, cols) = parse_grid(grid)?;
    let (xs, ys) = (axis(rows, extent), axis(cols, extent));
    let mut worst = (0.0f64, 0, 0, 0.0, 0.0);
    for j in 0..=jmax {
        for k in 0..=jmax {
            for &x in &xs {
                for &y in &ys {
                    let e = laguerre_relative_error(
                        j,
                        k,
                        laguerre_cross(j, k, x, y),
                        hermite_cross_quadrature(j, k, x, y, nodes),
                    );
                    if e > worst.0 || e.is_nan() {
                        worst = (e, j, k, x, y);
                    }
                }
            }
        }
    }
    let holds = worst.0 < tol;
    Ok(Outcome::predicate(
        holds,
        json!({
            "max_relative_error": worst.0,
            "worst": { "j": worst.1, "k": worst.2, "x": worst.3, "y": worst.4 },
            "points": xs.len() * ys.len(),
            "pairs": (jmax + 1) * (jmax + 1),
            "tol": tol,
        }),
    ))
}
