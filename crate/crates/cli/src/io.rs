//! JSON input and output.
//!
//! Numbers are read into a raw form first so the arithmetic mode can be
//! chosen after every input has been seen. Integers and strings (`"p/q"`,
//! `"-3"`, `"0.25"`) are exact; a JSON float literal such as `0.5` is not.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use ambiguity_core::hermite::Poly;
use ambiguity_core::{Complex64, GaussianRational, Scalar, Signal};

#[derive(Clone, Debug, PartialEq)]
pub enum RawReal {
    Exact(BigRational),
    Float(f64),
}

impl RawReal {
    fn to_f64(&self) -> f64 {
        match self {
            RawReal::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            RawReal::Float(x) => *x,
        }
    }

    fn to_rational(&self) -> BigRational {
        match self {
            RawReal::Exact(r) => r.clone(),
            RawReal::Float(x) => BigRational::from_float(*x).unwrap_or_else(BigRational::zero),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawScalar {
    pub re: RawReal,
    pub im: RawReal,
}

impl RawScalar {
    pub fn has_float(&self) -> bool {
        matches!(self.re, RawReal::Float(_)) || matches!(self.im, RawReal::Float(_))
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawSignal {
    pub offset: i64,
    pub coeffs: Vec<RawScalar>,
}

impl RawSignal {
    pub fn has_float(&self) -> bool {
        self.coeffs.iter().any(RawScalar::has_float)
    }

    pub fn to_signal<S: CliScalar>(&self) -> Signal<S> {
        Signal::new(self.offset, self.coeffs.iter().map(S::from_raw).collect())
    }

    pub fn to_poly<S: CliScalar>(&self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(S::from_raw).collect())
    }
}

/// Arithmetic mode for a whole command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Scalars the CLI can read and print.
pub trait CliScalar: Scalar {
    fn from_raw(raw: &RawScalar) -> Self;
    fn to_json(&self) -> Value;
}

impl CliScalar for GaussianRational {
    fn from_raw(raw: &RawScalar) -> Self {
        Complex::new(raw.re.to_rational(), raw.im.to_rational())
    }

    fn to_json(&self) -> Value {
        json!([rational_json(&self.re), rational_json(&self.im)])
    }
}

impl CliScalar for Complex64 {
    fn from_raw(raw: &RawScalar) -> Self {
        raw.to_complex64()
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

/// Integers print as JSON numbers, other rationals as `"p/q"`.
fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(n) = r.numer().to_i64() {
            return json!(n);
        }
    }
    Value::String(r.to_string())
}

pub fn signal_json<S: CliScalar>(s: &Signal<S>) -> Value {
    json!({
        "offset": s.offset(),
        "coeffs": s.coeffs().iter().map(CliScalar::to_json).collect::<Vec<_>>(),
    })
}

pub fn poly_json<S: CliScalar>(p: &Poly<S>) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(CliScalar::to_json).collect::<Vec<_>>() })
}

/// Parses a decimal or `p/q` literal exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().with_context(|| format!("bad numerator in {t:?}"))?;
        let d: BigInt = d.trim().parse().with_context(|| format!("bad denominator in {t:?}"))?;
        if d.is_zero() {
            bail!("zero denominator in {t:?}");
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().with_context(|| format!("bad exponent in {t:?}"))?),
        None => (t, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int.starts_with('-');
    let int = int.trim_start_matches(['-', '+']);
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        bail!("not a number: {t:?}");
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| anyhow!("not a number: {t:?}"))?;
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut r = BigRational::from_integer(digits);
    r = if scale >= 0 { r * pow } else { r / pow };
    Ok(if negative { -r } else { r })
}

fn real_from_value(v: &Value, path: &str) -> Result<RawReal> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(RawReal::Exact(BigRational::from_integer(BigInt::from(i))))
            } else if let Some(u) = n.as_u64() {
                Ok(RawReal::Exact(BigRational::from_integer(BigInt::from(u))))
            } else {
                Ok(RawReal::Float(n.as_f64().expect("JSON number")))
            }
        }
        Value::String(s) => parse_rational(s).map(RawReal::Exact).with_context(|| format!("at {path}")),
        other => bail!("at {path}: expected a number, found {other}"),
    }
}

/// `[re, im]`, `[re]` or a bare real.
pub fn scalar_from_value(v: &Value, path: &str) -> Result<RawScalar> {
    let zero = || RawReal::Exact(BigRational::zero());
    match v {
        Value::Array(parts) => match parts.as_slice() {
            [re] => Ok(RawScalar { re: real_from_value(re, path)?, im: zero() }),
            [re, im] => Ok(RawScalar {
                re: real_from_value(re, &format!("{path}[0]"))?,
                im: real_from_value(im, &format!("{path}[1]"))?,
            }),
            _ => bail!("at {path}: a scalar is [re, im], [re] or a number"),
        },
        other => Ok(RawScalar { re: real_from_value(other, path)?, im: zero() }),
    }
}

pub fn scalars_from_value(v: &Value, path: &str) -> Result<Vec<RawScalar>> {
    let items = v.as_array().ok_or_else(|| anyhow!("at {path}: expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_value(x, &format!("{path}[{i}]")))
        .collect()
}

/// `{"offset": n, "coeffs": [...]}` or a bare coefficient array.
pub fn signal_from_value(v: &Value) -> Result<RawSignal> {
    match v {
        Value::Array(_) => Ok(RawSignal { offset: 0, coeffs: scalars_from_value(v, "coeffs")? }),
        Value::Object(map) => {
            let offset = match map.get("offset") {
                None => 0,
                Some(o) => o.as_i64().ok_or_else(|| anyhow!("at offset: expected an integer"))?,
            };
            let coeffs = map.get("coeffs").ok_or_else(|| anyhow!("missing field \"coeffs\""))?;
            Ok(RawSignal { offset, coeffs: scalars_from_value(coeffs, "coeffs")? })
        }
        other => bail!("expected a signal object or array, found {other}"),
    }
}

/// Inline JSON when the argument starts with `{`, `[` or `"`; a file path
/// otherwise. Syntax errors carry the line and column.
pub fn load_json(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with(['{', '[', '"']) {
        (arg.to_string(), "<inline>".to_string())
    } else {
        let path = Path::new(arg);
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}"))?;
        (text, arg.to_string())
    };
    serde_json::from_str(&text).map_err(|e| anyhow!("{origin}:{}:{}: {e}", e.line(), e.column()))
}

pub fn load_signal(arg: &str) -> Result<RawSignal> {
    let v = load_json(arg)?;
    signal_from_value(&v).with_context(|| format!("in {}", short(arg)))
}

pub fn load_scalar_list(arg: &str) -> Result<Vec<RawScalar>> {
    scalars_from_value(&load_json(arg)?, "values")
}

pub fn load_scalar(arg: &str) -> Result<RawScalar> {
    // bare literals such as `2` or `1/3` are accepted without quoting
    match load_json(arg) {
        Ok(v) => scalar_from_value(&v, "value"),
        Err(_) => Ok(RawScalar { re: RawReal::Exact(parse_rational(arg)?), im: RawReal::Exact(BigRational::zero()) }),
    }
}

fn short(arg: &str) -> String {
    let t = arg.trim();
    if t.len() > 40 {
        format!("{}...", &t[..40])
    } else {
        t.to_string()
    }
}

/// `"0,1,5"` → `[0, 1, 5]`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|s| s.trim().parse::<i64>().with_context(|| format!("bad integer {s:?} in {text:?}")))
        .collect()
}

/// Resolves the arithmetic mode. Float literals switch to float mode unless
/// `--mode` says otherwise; either way the choice is reported on stderr.
pub fn resolve_mode(requested: Option<Mode>, any_float: bool, err: &mut dyn std::io::Write) -> Mode {
    match (requested, any_float) {
        (Some(Mode::Exact), true) => {
            let _ = writeln!(err, "note: float literals read as exact binary fractions (--mode exact)");
            Mode::Exact
        }
        (Some(m), _) => m,
        (None, true) => {
            let _ = writeln!(err, "note: float literal in input, computing in float mode");
            Mode::Float
        }
        (None, false) => Mode::Exact,
    }
}

/// Parses a pulse width such as `1/3` or `0.25` into a small rational.
pub fn parse_eta(text: &str) -> Result<num_rational::Rational64> {
    let r = parse_rational(text)?;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(num_rational::Rational64::new(n, d)),
        _ => bail!("pulse width {text:?} out of range"),
    }
}

pub fn one_raw() -> RawScalar {
    RawScalar { re: RawReal::Exact(BigRational::one()), im: RawReal::Exact(BigRational::zero()) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("1.5e2").unwrap(), q(150, 1));
        assert_eq!(parse_rational("2e-3").unwrap(), q(1, 500));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn scalar_shapes() {
        let v: Value = serde_json::from_str(r#"[[1, "1/2"], [3], 4, "5/7", 0.5]"#).unwrap();
        let s = scalars_from_value(&v, "x").unwrap();
        assert_eq!(s[0].im, RawReal::Exact(q(1, 2)));
        assert_eq!(s[1].re, RawReal::Exact(q(3, 1)));
        assert_eq!(s[3].re, RawReal::Exact(q(5, 7)));
        assert!(!s[3].has_float());
        assert!(s[4].has_float());
    }

    #[test]
    fn signal_forms() {
        let s = signal_from_value(&serde_json::from_str("[1, 2, 0]").unwrap()).unwrap();
        assert_eq!((s.offset, s.coeffs.len()), (0, 3));
        let s = signal_from_value(&serde_json::from_str(r#"{"offset": -2, "coeffs": [[1, 0]]}"#).unwrap()).unwrap();
        assert_eq!(s.offset, -2);
        assert!(signal_from_value(&serde_json::from_str(r#"{"offset": 1}"#).unwrap()).is_err());
    }

    #[test]
    fn syntax_error_has_line() {
        let e = load_json("{\n \"coeffs\": [1,\n 2,,]}").unwrap_err().to_string();
        assert!(e.starts_with("<inline>:3:"), "{e}");
    }

    #[test]
    fn exact_output_keeps_fractions() {
        let z = GaussianRational::from_raw(&RawScalar { re: RawReal::Exact(q(2, 1)), im: RawReal::Exact(q(-1, 3)) });
        assert_eq!(z.to_json(), json!([2, "-1/3"]));
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("0, 1,5").unwrap(), vec![0, 1, 5]);
        assert_eq!(parse_int_list("[-3,-2,2]").unwrap(), vec![-3, -2, 2]);
        assert!(parse_int_list("1,x").is_err());
    }

    #[test]
    fn mode_switch() {
        let mut sink = Vec::new();
        assert_eq!(resolve_mode(None, false, &mut sink), Mode::Exact);
        assert_eq!(resolve_mode(None, true, &mut sink), Mode::Float);
        assert!(String::from_utf8(sink).unwrap().contains("float mode"));
        assert_eq!(resolve_mode(Some(Mode::Float), false, &mut Vec::new()), Mode::Float);
    }
}
