mod checks;
mod document;
mod error;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use qplof::oracle::{
    candidate_enumerate, convex_status_oracle, fm_feasible, generate_instance, lp_status_oracle, InstanceSpec,
    ScaleLimits, Shape,
};
use qplof::{min_qp_lof, OrderedField, RatFunc, Rational};

use checks::{failures, run_checks};
use document::{InstanceDocument, ResultDocument};
use error::CliError;

/// Exact quadratic programming over ordered fields.
#[derive(Debug, Parser)]
#[command(name = "qplof", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and print a result document.
    Solve {
        instance: PathBuf,
        /// Verify the result with certificate and oracle checks.
        #[arg(long)]
        check: bool,
        /// Include solver statistics and wall time (not byte-stable).
        #[arg(long)]
        stats: bool,
        /// Seed for randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write random instance documents.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// generic | convex | lp | infeasible | unbounded-biased
        #[arg(long, default_value = "generic")]
        shape: String,
        /// rational | ratfunc-eps
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check a stored result against its instance without re-solving.
    Verify {
        instance: PathBuf,
        result: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the independent oracles on an instance.
    Oracle { instance: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn report_failures(checks: &[document::Check]) -> Result<(), CliError> {
    let failed = failures(checks);
    if failed.is_empty() {
        return Ok(());
    }
    let details: Vec<String> = failed
        .iter()
        .map(|c| format!("{}: {}", c.name, c.detail.as_deref().unwrap_or("failed")))
        .collect();
    Err(CliError::Mismatch(details.join("; ")))
}

fn solve<F: OrderedField>(doc: &InstanceDocument, check: bool, stats: bool, seed: u64) -> Result<(), CliError> {
    let (p, f) = doc.to_problem::<F>()?;
    let start = Instant::now();
    let res = min_qp_lof(&p, &f)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut out = ResultDocument::from_outcome(&res.outcome);
    if stats {
        out = out.with_stats(&res.stats, elapsed);
    }
    let mut result = Ok(());
    if check {
        let checks = run_checks(&p, &f, &res.outcome, seed, &ScaleLimits::from_env());
        result = report_failures(&checks);
        out.verification = Some(checks);
    }
    print!("{}", out.to_json());
    result
}

fn verify<F: OrderedField>(doc: &InstanceDocument, result: &ResultDocument, seed: u64) -> Result<(), CliError> {
    let (p, f) = doc.to_problem::<F>()?;
    let outcome = result.to_outcome::<F>()?;
    let checks = run_checks(&p, &f, &outcome, seed, &ScaleLimits::from_env());
    println!(
        "{}",
        serde_json::to_string_pretty(&checks).expect("checks always serialize")
    );
    report_failures(&checks)
}

fn oracle<F: OrderedField>(doc: &InstanceDocument) -> Result<(), CliError> {
    let (p, f) = doc.to_problem::<F>()?;
    let limits = ScaleLimits::from_env();
    let render = |v: &[F]| v.iter().map(F::render).collect::<Vec<_>>();
    let witness = fm_feasible(&p, &limits)?;
    let candidates = candidate_enumerate(&p, &f, &limits)?;
    let best = candidates.best().map(|c| {
        json!({
            "value": c.value.render(),
            "point": render(&c.witness),
            "active": c.active,
        })
    });
    let status_oracle = if f.is_linear() {
        Some(("lp", lp_status_oracle(&p, &f, &limits)?))
    } else {
        match convex_status_oracle(&p, &f, &limits) {
            Ok(out) => Some(("convex", out)),
            Err(qplof::Error::NotConvex) => None,
            Err(e) => return Err(e.into()),
        }
    };
    let report = json!({
        "field": F::TAG,
        "feasible": witness.is_some(),
        "witness": witness.as_deref().map(render),
        "candidates": candidates.len(),
        "best_candidate": best,
        "status_oracle": status_oracle.map(|(kind, out)| {
            json!({ "kind": kind, "result": ResultDocument::from_outcome(&out) })
        }),
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report always serializes"));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn gen<F: OrderedField>(
    n: usize,
    m: usize,
    bound: i64,
    shape: Shape,
    seed: u64,
    count: u64,
    out_dir: &Path,
) -> Result<(), CliError> {
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    for i in 0..count {
        let s = seed + i;
        let spec = InstanceSpec {
            n,
            m,
            bound,
            seed: s,
            shape,
        };
        let (p, f) = generate_instance::<F>(&spec)?;
        let name = format!("{shape}-n{n}-m{m}-s{s}");
        let doc = InstanceDocument::from_problem(&p, &f, Some(name.clone()), Some(s));
        let path = out_dir.join(format!("{name}.json"));
        fs::write(&path, doc.to_json()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        println!("{}", path.display());
    }
    Ok(())
}

macro_rules! dispatch {
    ($tag:expr, $func:ident ( $($arg:expr),* )) => {
        match $tag {
            t if t == Rational::TAG => $func::<Rational>($($arg),*),
            t if t == RatFunc::TAG => $func::<RatFunc>($($arg),*),
            other => Err(CliError::Parse(format!("unknown field {other:?}"))),
        }
    };
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            instance,
            check,
            stats,
            seed,
        } => {
            let doc = InstanceDocument::from_json(&read(&instance)?)?;
            dispatch!(doc.field.as_str(), solve(&doc, check, stats, seed))
        }
        Command::Verify { instance, result, seed } => {
            let doc = InstanceDocument::from_json(&read(&instance)?)?;
            let res = ResultDocument::from_json(&read(&result)?)?;
            dispatch!(doc.field.as_str(), verify(&doc, &res, seed))
        }
        Command::Oracle { instance } => {
            let doc = InstanceDocument::from_json(&read(&instance)?)?;
            dispatch!(doc.field.as_str(), oracle(&doc))
        }
        Command::Gen {
            n,
            m,
            bound,
            shape,
            field,
            seed,
            count,
            out_dir,
        } => {
            let shape: Shape = shape.parse()?;
            dispatch!(field.as_str(), gen(n, m, bound, shape, seed, count, &out_dir))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qplof: {e}");
            e.exit_code()
        }
    }
}
