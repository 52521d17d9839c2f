//! The `ambig` command line.
//!
//! Exit codes: 0 when the checked predicate holds (or the command succeeded),
//! 1 when it fails, 2 for usage and input errors. Results go to stdout as
//! JSON; `pulse grid -o file.csv` writes CSV instead.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

/// Instantiates a generic command body for the resolved arithmetic mode.
macro_rules! in_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* $(,)? )) => {
        match $mode {
            $crate::io::Mode::Exact => $f::<ambiguity_core::GaussianRational>($($arg),*),
            $crate::io::Mode::Float => $f::<ambiguity_core::Complex64>($($arg),*),
        }
    };
}

mod discrete;
mod hermite_cmd;
pub mod io;
mod pulse_cmd;
pub mod selftest;

pub use io::{CliScalar, Mode};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ambig", version, about = "Ambiguity partners of sequences, Hermite signals and pulse trains")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Arithmetic mode; by default float literals in the input select float.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Float comparison tolerance (each command has its own default).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write tabular output to this CSV file.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Do A and B have the same ambiguity modulus?
    PartnerCheck { a: String, b: String },
    /// Is B obtained from A by phase, modulation, shift and reflection?
    TrivialCheck { a: String, b: String },
    /// Is B a restricted partner of A, with unimodular factors per lag?
    RestrictedCheck { a: String, b: String },
    #[command(subcommand)]
    Multiplier(discrete::MultiplierCmd),
    #[command(subcommand)]
    Bset(discrete::BsetCmd),
    #[command(subcommand)]
    Matrix(discrete::MatrixCmd),
    #[command(subcommand)]
    Strange(discrete::StrangeCmd),
    #[command(subcommand)]
    Hermite(hermite_cmd::HermiteCmd),
    #[command(subcommand)]
    Pulse(pulse_cmd::PulseCmd),
    /// Run the built-in example checks.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

/// What a command produced: a JSON document and an exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub value: Option<Value>,
    pub code: i32,
}

impl Outcome {
    pub fn success(value: Value) -> Self {
        Outcome { value: Some(value), code: EXIT_TRUE }
    }

    pub fn predicate(holds: bool, value: Value) -> Self {
        Outcome {
            value: Some(value),
            code: if holds { EXIT_TRUE } else { EXIT_FALSE },
        }
    }
}

/// Per-invocation context handed to every command.
pub struct Ctx<'a> {
    pub global: Global,
    pub err: &'a mut dyn Write,
}

impl Ctx<'_> {
    pub fn tol_or(&self, default: f64) -> f64 {
        self.global.tol.unwrap_or(default)
    }

    pub fn mode(&mut self, any_float: bool) -> Mode {
        io::resolve_mode(self.global.mode, any_float, self.err)
    }

    pub fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    pub fn note(&mut self, msg: &str) {
        let _ = writeln!(self.err, "note: {msg}");
    }
}

/// Runs the command line `argv` (including the program name).
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { global: cli.global, err };
    let result = match cli.command {
        Command::PartnerCheck { a, b } => discrete::partner_check(&mut ctx, &a, &b),
        Command::TrivialCheck { a, b } => discrete::trivial_check(&mut ctx, &a, &b),
        Command::RestrictedCheck { a, b } => discrete::restricted_check(&mut ctx, &a, &b),
        Command::Multiplier(cmd) => discrete::multiplier(&mut ctx, cmd),
        Command::Bset(cmd) => discrete::bset(&mut ctx, cmd),
        Command::Matrix(cmd) => discrete::matrix(&mut ctx, cmd),
        Command::Strange(cmd) => discrete::strange(&mut ctx, cmd),
        Command::Hermite(cmd) => hermite_cmd::run(&mut ctx, cmd),
        Command::Pulse(cmd) => pulse_cmd::run(&mut ctx, cmd),
        Command::Selftest { json } => selftest::run_command(json, out),
    };
    match result {
        Ok(outcome) => {
            if let Some(v) = outcome.value {
                let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
                if writeln!(out, "{text}").is_err() {
                    return EXIT_USAGE;
                }
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

/// Runs `argv` and captures stdout and stderr as strings.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
