use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use num_rational::BigRational;
use solenoid_core::awmod::JetRep;
use solenoid_core::{run_suite, LatticePoint, NamedRep, RunConfig, Suite};

/// Exact verification suites for solenoidal Lie algebras and their
/// cuspidal modules.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on a
/// usage or configuration error.
#[derive(Parser, Debug)]
#[command(name = "solenoid", version)]
struct Args {
    /// Rank of the lattice.
    #[arg(long, default_value_t = 1)]
    n: usize,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Window radius K (at least 2).
    #[arg(long, default_value_t = 3)]
    window: i64,

    /// Starting evaluation window radius K' for cover ranks.
    #[arg(long, default_value_t = 2)]
    eval_window: i64,

    /// jacobi | omega | annihilation | tensor-structure | aw-calculus |
    /// jet-commutant | cover-rank | all
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,

    /// Rational value for alpha, e.g. 0, 1 or -3/2; symbolic when absent.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    alpha: Option<BigRational>,

    /// 0 selects the integral coset; symbolic when absent.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    beta: Option<BigRational>,

    /// Order of the differentiator identity.
    #[arg(long, default_value_t = 2)]
    r: u32,

    /// Cover weight to probe, as comma-separated integers; repeatable.
    #[arg(long = "weight", value_parser = parse_point, allow_hyphen_values = true)]
    weights: Vec<LatticePoint>,

    /// Jet-algebra representation file added to the aw-calculus suite.
    #[arg(long)]
    jet_rep: Option<PathBuf>,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Record wall time in `elapsed_ms`; reports are then not reproducible.
    #[arg(long)]
    timing: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: solenoid_core::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a rational number"))
}

fn parse_point(s: &str) -> Result<LatticePoint, String> {
    s.parse().map_err(|e: solenoid_core::Error| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();

    let jet_rep = match &args.jet_rep {
        None => None,
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage_error(format!("cannot read {}: {e}", path.display())),
            };
            match JetRep::parse(&text) {
                Ok(rep) => Some(NamedRep {
                    path: path.display().to_string(),
                    rep,
                }),
                Err(e) => return usage_error(format!("{}: {e}", path.display())),
            }
        }
    };

    let config = RunConfig {
        n: args.n,
        seed: args.seed,
        window: args.window,
        eval_window: args.eval_window,
        suite: args.suite,
        alpha: args.alpha,
        beta: args.beta,
        r: args.r,
        weights: args.weights,
        jet_rep,
    };
    let report = match run_suite(&config, args.timing) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };

    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{json}"),
    }

    if let Some(f) = &report.first_failure {
        eprintln!("check failed: {} with inputs {}", f.name, f.inputs);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
