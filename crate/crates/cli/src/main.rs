//! `bernstein-fp`: run the round-off experiments and ad-hoc evaluations.
//!
//! Exit codes: 0 on success, 1 when any computed error exceeds its bound,
//! 2 on usage or input errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use bernstein_fp::experiments::{self, evaluate_point, parse_f64_literal, parse_poly_text, ExperimentRow, Flag};
use bernstein_fp::rational::{self, from_f64};
use bernstein_fp::suites::{self, SuiteOutcome};
use bernstein_fp::{decasteljau, eval_exact, relative_error, BernsteinPoly, FamilySpec};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bernstein-fp", version, about = "Round-off analysis of Bernstein-form polynomial evaluation")]
struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one polynomial at one or more points with both algorithms.
    Eval(EvalArgs),
    /// u, v, w near their fivefold roots, N = 2.1^e.
    Fig1 {
        #[arg(long, default_value_t = experiments::DEFAULT_E_MAX, value_parser = clap::value_parser!(u32).range(1..))]
        emax: u32,
    },
    /// (1 - 5s)^5: observed error against the naive and improved bounds.
    Fig2,
    /// f, g, h: de Casteljau against VS.
    Fig3,
    /// Run the randomized invariant suites and the bound checks.
    Check {
        /// Cases for the power-of-two scaling suite.
        #[arg(long, default_value_t = 100_000)]
        scaling_cases: u64,
        /// Cases for the triangle-ratio suite.
        #[arg(long, default_value_t = 10_000)]
        triangle_cases: u64,
        /// Cases for the oracle cross-check.
        #[arg(long, default_value_t = 1_000)]
        oracle_cases: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Coefficient file: one binary64 literal per line (decimal or hex float).
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    poly: Option<PathBuf>,
    /// Family member `b0,t,n` for b0 [(1 - s) - 2^t s]^n.
    #[arg(long, value_name = "B0,T,N")]
    family: Option<String>,
    /// Evaluation point(s), decimal or hex float.
    #[arg(long = "s", required = true, num_args = 1.., allow_negative_numbers = true)]
    points: Vec<String>,
}

enum Failure {
    Violation,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn parse_family(text: &str) -> anyhow::Result<FamilySpec> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [b0, t, n] = parts.as_slice() else {
        bail!("--family expects b0,t,n; got {text:?}");
    };
    let b0 = parse_f64_literal(b0).map_err(anyhow::Error::msg)?;
    let t: i32 = t.parse().with_context(|| format!("bad t {t:?}"))?;
    let n: usize = n.parse().with_context(|| format!("bad n {n:?}"))?;
    Ok(FamilySpec::new(b0, t, n)?)
}

fn load_poly(args: &EvalArgs) -> anyhow::Result<(String, BernsteinPoly)> {
    if let Some(path) = &args.poly {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "poly".into());
        return Ok((id, parse_poly_text(&text)?));
    }
    let spec = parse_family(args.family.as_deref().expect("clap enforces one of poly/family"))?;
    Ok((format!("family({},{},{})", spec.b0, spec.t, spec.n), spec.poly()?))
}

fn emit(rows: &[ExperimentRow], out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => experiments::write_csv_file(rows, path).with_context(|| format!("writing {}", path.display()))?,
        None => experiments::emit_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

fn violations(rows: &[ExperimentRow]) -> Vec<String> {
    rows.iter()
        .filter(|r| r.flags.contains(&Flag::Violation))
        .map(|r| format!("{}/{}#{}", r.experiment, r.poly, r.index))
        .collect()
}

fn finish(rows: Vec<ExperimentRow>, out: &Option<PathBuf>) -> Result<(), Failure> {
    emit(&rows, out)?;
    let bad = violations(&rows);
    if bad.is_empty() {
        Ok(())
    } else {
        eprintln!("bound violated at {}", bad.join(", "));
        Err(Failure::Violation)
    }
}

fn eval(args: &EvalArgs, out: &Option<PathBuf>) -> Result<(), Failure> {
    let (id, p) = load_poly(args)?;
    let mut rows = Vec::new();
    let mut stderr = io::stderr().lock();
    for (i, text) in args.points.iter().enumerate() {
        let s = parse_f64_literal(text).map_err(anyhow::Error::msg)?;
        if (0.0..=1.0).contains(&s) {
            let rep = evaluate_point("eval", &id, i as u32, &p, s, true).map_err(anyhow::Error::from)?;
            let _ = writeln!(
                stderr,
                "s = {s:e}: exact {:e}, de Casteljau {:e}, VS {:e}",
                rational::to_f64_nearest(&rep.dc.exact_value),
                rep.dc.computed_value,
                rep.vs.as_ref().map(|v| v.computed_value).unwrap_or(f64::NAN)
            );
            rows.push(rep.to_row());
        } else {
            // outside [0, 1]: de Casteljau and the exact value only
            let (dc, _) = decasteljau(&p, s).map_err(anyhow::Error::from)?;
            let exact = eval_exact(&p.to_rational(), &from_f64(s).map_err(anyhow::Error::from)?);
            let err = relative_error(&exact, dc).map_err(anyhow::Error::from)?;
            let _ = writeln!(
                stderr,
                "s = {s:e} (outside [0, 1], no bounds): exact {:e}, de Casteljau {dc:e}, rel err {:e}",
                rational::to_f64_nearest(&exact),
                err.rel_error.to_f64_nearest()
            );
        }
    }
    finish(rows, out)
}

fn report(outcome: &SuiteOutcome) -> bool {
    let ok = outcome.passed();
    println!(
        "[{}] {}: {} checked, {} skipped, {} failures",
        if ok { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.checked,
        outcome.skipped,
        outcome.failures
    );
    ok
}

fn check(scaling: u64, triangle: u64, oracle: u64, seed: u64) -> Result<(), Failure> {
    let mut ok = true;
    ok &= report(&suites::scaling_suite(scaling, seed));
    ok &= report(&suites::triangle_ratio_suite(triangle, seed.wrapping_add(1)));
    ok &= report(&suites::oracle_cross_suite(oracle, seed.wrapping_add(2)));

    let mut rows = experiments::fig1_experiment(experiments::DEFAULT_E_MAX).map_err(anyhow::Error::from)?;
    rows.extend(experiments::fig2_experiment().map_err(anyhow::Error::from)?);
    rows.extend(experiments::fig3_experiment().map_err(anyhow::Error::from)?);
    let bad = violations(&rows);
    println!(
        "[{}] experiment bounds: {} rows, {} violations",
        if bad.is_empty() { "PASS" } else { "FAIL" },
        rows.len(),
        bad.len()
    );
    ok &= bad.is_empty();
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval(args) => eval(args, &cli.out),
        Command::Fig1 { emax } => finish(experiments::fig1_experiment(*emax).map_err(anyhow::Error::from)?, &cli.out),
        Command::Fig2 => finish(experiments::fig2_experiment().map_err(anyhow::Error::from)?, &cli.out),
        Command::Fig3 => finish(experiments::fig3_experiment().map_err(anyhow::Error::from)?, &cli.out),
        Command::Check { scaling_cases, triangle_cases, oracle_cases, seed } => {
            check(*scaling_cases, *triangle_cases, *oracle_cases, *seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
