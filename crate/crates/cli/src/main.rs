//! `currentlab`: command-line front end.
//!
//! Reports go to stdout, diagnostics to stderr. Exit codes: 0 when every
//! checked contract holds, 1 on a contract violation (the report carries a
//! witness), 2 on usage errors.

mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use currentlab_core::affine::{self, AffineWeight, ModuleLimits};
use currentlab_core::currentalg::{Flavor, Momentum};
use currentlab_core::exactnum::Rational;
use currentlab_core::liealg::{self, MatrixLieAlgebra};
use currentlab_core::looprestrict::{self, Direction};
use currentlab_core::verify;

use report::{Format, Outcome};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "currentlab", version, about = "Exact checks for extended current algebras and affine sl(2) Gram matrices")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure constants, trace metric and d-tensor of an algebra.
    AlgebraInfo(AlgebraArg),
    /// Random antisymmetry and Jacobi checks of the current-algebra bracket.
    VerifyJacobi(TrialArgs),
    /// Bracket of two loop generators J^a(m e), J^b(n e).
    Restrict(RestrictArgs),
    /// Random restriction checks against the closed-form extension.
    CocycleScan(ScanArgs),
    /// Shapovalov Gram blocks of affine sl(2) at one grade.
    Gram(GramArgs),
    /// Unitarity verdicts for a grid of (k, h).
    UnitarityScan(UnitarityArgs),
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Built-in name (su2, sl3) or path to an algebra JSON file.
    #[arg(long, default_value = "sl3")]
    algebra: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FlavorArg {
    Plain,
    Mf,
    Kassel,
    /// Plain bracket over an algebra with one corrupted structure constant.
    #[value(hide = true)]
    Corrupt,
}

#[derive(Args, Debug)]
struct FlavorArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long, value_enum, default_value_t = FlavorArg::Mf)]
    flavor: FlavorArg,
    /// Kassel level, an exact rational such as 1 or -1/2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    level: Option<Rational>,
}

#[derive(Args, Debug)]
struct TrialArgs {
    #[command(flatten)]
    flavor: FlavorArgs,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..=1_000_000))]
    max_momentum: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    flavor: FlavorArgs,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Bound on direction components and loop modes.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..=1_000_000))]
    max_momentum: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RestrictArgs {
    #[command(flatten)]
    flavor: FlavorArgs,
    /// Loop direction e as three comma-separated integers.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_direction)]
    e: Direction,
    /// Basis label or 0-based index.
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Cap on the number of F(0) letters per monomial.
    #[arg(long, default_value_t = ModuleLimits::default().max_f0)]
    max_f0: u32,
}

#[derive(Args, Debug)]
struct GramArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    k: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    h: Rational,
    #[arg(long, default_value_t = 1)]
    grade: u32,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args, Debug)]
struct UnitarityArgs {
    /// Levels, comma-separated exact rationals.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true, value_parser = parse_rational)]
    k: Vec<Rational>,
    /// H_0 eigenvalues, comma-separated exact rationals.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true, value_parser = parse_rational)]
    h: Vec<Rational>,
    #[arg(long, default_value_t = 2)]
    grade: u32,
    #[command(flatten)]
    limits: LimitArgs,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated integers, got {s:?}"));
    }
    let mut v = [0i64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.trim().parse().map_err(|_| format!("not an integer: {p:?}"))?;
    }
    Direction::new(Momentum(v)).map_err(|e| e.to_string())
}

struct UsageError(String);

impl UsageError {
    fn flag(flag: &str, msg: impl std::fmt::Display) -> Self {
        UsageError(format!("{flag}: {msg}"))
    }
}

/// Algebra and flavor after validation. `corrupt` swaps in the damaged
/// algebra and brackets with the plain flavor.
fn resolve(args: &FlavorArgs) -> Result<(MatrixLieAlgebra, Flavor, String), UsageError> {
    let alg = liealg::load_algebra(&args.algebra.algebra).map_err(|e| UsageError::flag("--algebra", e))?;
    for w in alg.warnings() {
        eprintln!("warning: {}: {w}", alg.name());
    }
    if args.level.is_some() && args.flavor != FlavorArg::Kassel {
        return Err(UsageError::flag("--level", "only applies to --flavor kassel"));
    }
    Ok(match args.flavor {
        FlavorArg::Plain => (alg, Flavor::Plain, "plain".into()),
        FlavorArg::Mf => (alg, Flavor::MF, "mf".into()),
        FlavorArg::Kassel => {
            let k = args.level.clone().unwrap_or_else(Rational::one);
            (alg, Flavor::Kassel(k.clone()), format!("kassel(k={k})"))
        }
        FlavorArg::Corrupt => (alg.corrupted(), Flavor::Plain, "corrupt".into()),
    })
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({
        "tool": "currentlab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
    });
    if let (Some(o), Value::Object(b)) = (out.as_object_mut(), body) {
        o.extend(b);
    }
    out
}

fn run(cli: Cli) -> Result<Outcome, UsageError> {
    match cli.command {
        Command::AlgebraInfo(args) => {
            let alg = liealg::load_algebra(&args.algebra).map_err(|e| UsageError::flag("--algebra", e))?;
            for w in alg.warnings() {
                eprintln!("warning: {}: {w}", alg.name());
            }
            Ok(Outcome::ok(envelope("algebra-info", report::algebra_info(&alg))))
        }
        Command::VerifyJacobi(args) => {
            let (alg, flavor, flavor_name) = resolve(&args.flavor)?;
            let r = verify::verify_jacobi(&alg, &flavor, args.trials, args.max_momentum, args.seed)
                .map_err(|e| UsageError(e.to_string()))?;
            let mut body = serde_json::to_value(&r).expect("serializable");
            body["flavor"] = json!(flavor_name);
            Ok(Outcome::new(r.violations == 0, envelope("verify-jacobi", body)))
        }
        Command::Restrict(args) => {
            let (alg, flavor, flavor_name) = resolve(&args.flavor)?;
            let a = alg.index_of(&args.a).map_err(|e| UsageError::flag("--a", e))?;
            let b = alg.index_of(&args.b).map_err(|e| UsageError::flag("--b", e))?;
            let (body, ok) = report::restrict(&alg, &flavor, &flavor_name, a, b, args.m, args.n, &args.e)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok(Outcome::new(ok, envelope("restrict", body)))
        }
        Command::CocycleScan(args) => {
            let (alg, flavor, flavor_name) = resolve(&args.flavor)?;
            let r = looprestrict::cocycle_scan(&flavor, &alg, args.trials, args.max_momentum, args.seed)
                .map_err(|e| UsageError(e.to_string()))?;
            let mut body = serde_json::to_value(&r).expect("serializable");
            body["flavor"] = json!(flavor_name);
            Ok(Outcome::new(r.violations == 0, envelope("cocycle-scan", body)))
        }
        Command::Gram(args) => {
            let limits = ModuleLimits {
                max_f0: args.limits.max_f0,
                ..ModuleLimits::default()
            };
            let w = AffineWeight::new(args.k, args.h);
            let blocks = affine::gram(args.grade, &w, &limits).map_err(|e| UsageError::flag("--grade", e))?;
            Ok(Outcome::ok(envelope("gram", report::gram(&w, args.grade, &limits, &blocks))))
        }
        Command::UnitarityScan(args) => {
            let limits = ModuleLimits {
                max_f0: args.limits.max_f0,
                ..ModuleLimits::default()
            };
            let rows = affine::unitarity_scan(&args.k, &args.h, args.grade, &limits)
                .map_err(|e| UsageError::flag("--grade", e))?;
            let body = json!({ "max_f0": limits.max_f0, "rows": rows });
            Ok(Outcome::ok(envelope("unitarity-scan", body)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.output;
    match run(cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(out, "{}", report::render(&outcome.report, format));
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("contract violated; see witness in report");
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
