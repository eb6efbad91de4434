//! `lerch`: evaluation, verification suites, grid export and polynomial tables.

mod error;
mod fecheck;
mod functions;
mod grid;
mod output;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lerch_zeta::hermite::{aberth_zeros, critical_zeros, poly_family, Family};
use lerch_zeta::lerch::Param;
use lerch_zeta::PrecisionContext;
use rug::Float;
use serde_json::{json, Value};

use error::CliError;
use fecheck::Suite;
use functions::Func;
use grid::{Format, GridRequest};
use output::{complex, eval_result, sink, small, write_json};

const PARAM_HELP: &str = "Exact rationals \"p/q\" and integers such as \"1\" select the integer cases; \
                          decimals such as \"1.0\" are reals and are never treated as integers";

#[derive(Parser)]
#[command(name = "lerch", version, about = "Arbitrary-precision Lerch zeta evaluation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Precision {
    /// Working precision in bits (at least 64)
    #[arg(long, default_value_t = 128)]
    prec: u32,
}

impl Precision {
    fn context(&self) -> Result<PrecisionContext, CliError> {
        PrecisionContext::with_bits(self.prec).map_err(|e| CliError::Parse(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point and print JSON
    Eval {
        #[arg(long = "fn", value_enum)]
        func: Func,
        /// s as "re", "re+imi" or "re-imi"
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true, long_help = PARAM_HELP)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, long_help = PARAM_HELP)]
        c: Option<String>,
        /// Index of L̂_n for --fn lhat-n
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        prec: Precision,
    },
    /// Run a seeded functional-equation suite; exits 1 if any residual exceeds --tol
    Fecheck {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual tolerance (default 2^(-prec/2))
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        prec: Precision,
    },
    /// Evaluate on an a × c grid (c outer, a inner) and write CSV or JSON
    Grid {
        #[arg(long = "fn", value_enum)]
        func: Func,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// "lo:hi"; rational endpoints give exact rational grid points
        #[arg(long, allow_hyphen_values = true, long_help = PARAM_HELP)]
        a_range: String,
        #[arg(long, default_value_t = 2)]
        a_count: usize,
        /// "lo:hi"; rational endpoints give exact rational grid points
        #[arg(long, allow_hyphen_values = true, long_help = PARAM_HELP)]
        c_range: String,
        #[arg(long, default_value_t = 2)]
        c_count: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file (default standard output)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        prec: Precision,
    },
    /// Print the integer coefficients of p_n or q_n, highest degree first
    Poly {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: u32,
    },
    /// Print the zeros of p_n or q_n with their distance from Re s = 1/2
    Zeros {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        prec: Precision,
    },
}

fn parse_family(text: &str) -> Result<Family, String> {
    text.parse::<Family>().map_err(|e| e.to_string())
}

fn required(value: Option<String>, flag: &str, func: Func) -> Result<String, CliError> {
    let name = func.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    value.ok_or_else(|| CliError::Parse(format!("--fn {name} needs {flag}")))
}

fn eval(func: Func, s: &str, a: Option<String>, c: Option<String>, n: Option<u32>, prec: &Precision) -> Result<Value, CliError> {
    let ctx = prec.context()?;
    let bits = ctx.internal_bits();
    let s = parse::complex(s, bits)?;
    let a = if func.uses_a() { parse::param(&required(a, "--a", func)?, bits)? } else { Param::int(0) };
    let c = if func.uses_c() { parse::param(&required(c, "--c", func)?, bits)? } else { Param::int(0) };
    let r = functions::evaluate_point(func, n, &s, &a, &c, &ctx)?;
    Ok(Value::Object(eval_result(&r, ctx.decimal_digits())))
}

fn zeros(family: Family, n: u32, prec: &Precision) -> Result<Value, CliError> {
    let ctx = prec.context()?;
    if n == 0 {
        return Err(CliError::Parse("--n must be at least 1; p_0 and q_0 are constant".into()));
    }
    let digits = ctx.decimal_digits();
    let on_line = critical_zeros(family, n, &ctx)?;
    let free = aberth_zeros(&poly_family(family, n), ctx.internal_bits() + 32)?;
    let roots: Vec<Value> = on_line
        .iter()
        .zip(&free)
        .map(|(z, w)| {
            let off = Float::with_val(w.re.prec(), &w.re - 0.5f64).abs();
            json!({
                "root": complex(&z.to_complex(), digits),
                "re_residual": small(off.to_f64()),
                "isolation_radius": small(z.radius),
            })
        })
        .collect();
    Ok(json!({ "family": family.to_string(), "n": n, "prec": ctx.working_bits(), "roots": roots }))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { func, s, a, c, n, prec } => {
            let v = eval(func, &s, a, c, n, &prec)?;
            write_json(&mut *sink(None)?, &v)?;
        }
        Command::Fecheck { suite, samples, seed, tol, prec } => {
            let ctx = prec.context()?;
            let tol = tol.unwrap_or_else(|| 2f64.powi(-(ctx.working_bits() as i32) / 2));
            let report = fecheck::run(suite, samples, seed, tol, &ctx)?;
            write_json(&mut *sink(None)?, &report.json)?;
            if report.failures > 0 {
                return Err(CliError::CheckFailed(report.failures));
            }
        }
        Command::Grid { func, s, a_range, a_count, c_range, c_count, format, out, n, prec } => {
            let ctx = prec.context()?;
            let bits = ctx.internal_bits();
            let req = GridRequest {
                func,
                n,
                s: parse::complex(&s, bits)?,
                a: parse::range(&a_range, a_count, bits)?,
                c: parse::range(&c_range, c_count, bits)?,
                format,
            };
            let mut w = sink(out.as_deref())?;
            let rows = grid::evaluate(&req, &ctx)?;
            grid::write(&req, &rows, ctx.decimal_digits(), &mut *w)?;
        }
        Command::Poly { family, n } => {
            let p = poly_family(family, n);
            let line: Vec<String> = p.coefficients().iter().rev().map(|c| c.to_string()).collect();
            let mut w = sink(None)?;
            writeln!(w, "{}", line.join(" "))?;
            w.flush()?;
        }
        Command::Zeros { family, n, prec } => {
            let v = zeros(family, n, &prec)?;
            write_json(&mut *sink(None)?, &v)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::CheckFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
