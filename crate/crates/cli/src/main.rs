//! `pythcubic`: minimal sums of squares and claim verification in `Z[rho]`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error,
//! 3 verification failure.

mod output;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigRational, Signed};

use pythcubic_core::length::{pythagoras_length, DEFAULT_MAX_M};
use pythcubic_core::squares::{squares_below_bruteforce, squares_below_structured};
use pythcubic_core::units::DEFAULT_EXP_BOX;
use pythcubic_core::verify::{self, Claim, Options};
use pythcubic_core::{Error, FieldParam, OrderElement};

use output::{Format, LengthOutput, SquaresOutput};

#[derive(Parser, Debug)]
#[command(name = "pythcubic", version, about = "Sums of squares in the simplest cubic orders Z[rho]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Least number of squares summing to an element, with a witness.
    Length {
        #[command(flatten)]
        elem: ElementArgs,
        /// Largest number of squares tried.
        #[arg(long = "max", default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// All squares totally below an element.
    Squares {
        #[command(flatten)]
        elem: ElementArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long = "exp-box", default_value_t = DEFAULT_EXP_BOX)]
        exp_box: u32,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a claim over a range of `a`.
    Verify {
        /// lemma-2.2, lemma-2.3, lemma-2.4, lemma-3.1, lemma-3.2, lemma-3.3,
        /// lemma-3.4, table-1, table-2, theorem-1.1 or all.
        claim: String,
        /// Inclusive range `LO..HI` of `a`; defaults depend on the claim.
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<i64>>,
        #[arg(long = "exp-box", default_value_t = DEFAULT_EXP_BOX)]
        exp_box: u32,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct ElementArgs {
    /// Field parameter, at least -1.
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    /// Coordinates `x,y,z` of `x + y rho + z rho^2`.
    #[arg(long, allow_hyphen_values = true)]
    elem: String,
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Width of the cached root intervals, as `p/q`.
    #[arg(long, value_parser = parse_width)]
    width: Option<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Structured,
    Both,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower end `{lo}`: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper end `{hi}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_width(s: &str) -> Result<BigRational, String> {
    let w: BigRational = s.trim().parse().map_err(|e| format!("bad width `{s}`: {e}"))?;
    if !w.is_positive() {
        return Err(format!("width must be positive, got `{s}`"));
    }
    Ok(w)
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidParameter(_) | Error::NonPositiveWidth => 1,
            Error::NotTotallyPositive(_) | Error::ZeroElement => 2,
        };
        Self { code, message: e.to_string() }
    }
}

fn field(a: i64, width: &Option<BigRational>) -> Result<Arc<FieldParam>, Failure> {
    Ok(match width {
        Some(w) => FieldParam::with_width(a, w)?,
        None => FieldParam::new(a)?,
    })
}

fn element(args: &ElementArgs, width: &Option<BigRational>) -> Result<OrderElement, Failure> {
    let f = field(args.a, width)?;
    Ok(OrderElement::parse(&f, &args.elem)?)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("PYTHCUBIC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("PYTHCUBIC_THREADS must be a positive integer, got `{raw}`")))?;
    if n == 0 {
        return Err(Failure::usage("PYTHCUBIC_THREADS must be at least 1"));
    }
    // fails only if a pool already exists, which cannot happen this early
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Length { elem, max_m, common } => {
            let target = element(&elem, &common.width)?;
            let result = pythagoras_length(&target, max_m)?;
            let out = LengthOutput::new(&target, max_m, result.as_ref());
            output::emit(&common.out, &out.render(common.format))?;
            Ok(0)
        }
        Command::Squares { elem, method, exp_box, common } => {
            let target = element(&elem, &common.width)?;
            let brute = match method {
                Method::Brute | Method::Both => Some(squares_below_bruteforce(&target)?),
                Method::Structured => None,
            };
            let structured = match method {
                Method::Structured | Method::Both => Some(squares_below_structured(&target, exp_box)?),
                Method::Brute => None,
            };
            let out = SquaresOutput::new(&target, method_name(method), brute, structured);
            output::emit(&common.out, &out.render(common.format))?;
            Ok(if out.methods_agree == Some(false) { 3 } else { 0 })
        }
        Command::Verify { claim, range, exp_box, common } => {
            let opts = Options { exp_box, width: common.width.clone() };
            let (reports, single) = if claim == "all" {
                (verify::verify_all(range, &opts)?, false)
            } else {
                let c: Claim = claim.parse()?;
                (vec![verify::verify(c, range, &opts)?], true)
            };
            output::emit(&common.out, &output::render_reports(&reports, single, common.format))?;
            let mut code = 0;
            for r in &reports {
                for e in r.failures() {
                    eprintln!("FAIL {} at a = {}: {}", e.claim, e.a, e.data);
                    code = 3;
                }
            }
            Ok(code)
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Brute => "brute",
        Method::Structured => "structured",
        Method::Both => "both",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
