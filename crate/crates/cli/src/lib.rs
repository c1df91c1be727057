//! Argument handling for the `mzvlab` binary, kept in a library so the
//! exit-code contract can be tested without spawning processes.
//!
//! Exit codes: 0 on success or a passing check, 1 when a numerical check
//! fails, 2 on any usage or input error (with `{"error": ...}` on stdout).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use mzvlab::acceptance::run_all;
use mzvlab::algebra::{verify_duality, verify_ohno, verify_sum_formula};
use mzvlab::bigreal::{format_sci_up, pow10_neg};
use mzvlab::evaluator::zeta_naive;
use mzvlab::rational::parse_rational_list;
use mzvlab::theorems::{mc_integral, verify_elo, verify_eq_after, verify_theorem};
use mzvlab::{Error, Evaluator, Index, ParamVector, Theorem, VerifyReport};

#[derive(Debug, Parser)]
#[command(
    name = "mzvlab",
    version,
    about = "Multiple zeta values: evaluation and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Decimal digits of accuracy to certify
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(5..=200))]
    digits: u32,

    /// Also write the output to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Append-only value cache
    #[arg(long, global = true, env = "MZVLAB_CACHE")]
    cache: Option<PathBuf>,

    /// Evaluation threads (defaults to the machine's parallelism, at most 8)
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one multiple zeta value
    Zeta {
        #[arg(long)]
        index: String,
        /// Use the truncated series up to this cutoff instead
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Check an identity numerically
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Monte-Carlo estimate of the defining integral
    Mc(McArgs),
    /// Run the acceptance suite and print a summary table
    Selftest,
    /// Inspect the value cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Args)]
struct KlArgs {
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[command(flatten)]
    kl: KlArgs,
    /// Comma-separated rationals, e.g. 2,-3/2
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Two-pair formula
    T1(ParamArgs),
    /// Three-pair formula
    T2(ParamArgs),
    /// Two-pair formula with ξ₁ = ξ₂, in its printed form
    EqAfter {
        #[command(flatten)]
        kl: KlArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Weighted sum of depth-(k+2) values against a single zeta value
    Elo(KlArgs),
    SumFormula {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        depth: usize,
    },
    Ohno {
        #[arg(long)]
        index: String,
        #[arg(long, default_value_t = 1)]
        c: u32,
    },
    Duality {
        #[arg(long)]
        index: String,
    },
}

#[derive(Debug, Args)]
struct McArgs {
    #[command(flatten)]
    kl: KlArgs,
    #[arg(long)]
    pairs: usize,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum CacheAction {
    /// Entry count of the cache file
    Stats,
}

/// What the binary should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Workers used by `mc` when `--workers` is absent. Fixed so results do not
/// depend on the machine.
const MC_DEFAULT_WORKERS: usize = 4;

fn usage(msg: impl std::fmt::Display) -> Outcome {
    let body = json!({ "error": msg.to_string() });
    Outcome {
        code: 2,
        stdout: format!(
            "{}\n",
            serde_json::to_string_pretty(&body).expect("json value")
        ),
    }
}

fn report(r: &VerifyReport) -> Outcome {
    Outcome {
        code: if r.pass { 0 } else { 1 },
        stdout: format!("{}\n", r.to_json()),
    }
}

fn params(mu: &str, xi: &str) -> Result<ParamVector, Error> {
    ParamVector::new(parse_rational_list(mu)?, parse_rational_list(xi)?)
}

fn admissible(text: &str) -> Result<Index, Error> {
    let index: Index = text.parse()?;
    index.require_admissible()?;
    Ok(index)
}

fn evaluator(cli: &Cli) -> Result<Evaluator, Error> {
    let ev = match &cli.cache {
        Some(path) => Evaluator::with_cache_file(path)?,
        None => Evaluator::new(),
    };
    Ok(match cli.workers {
        Some(w) => ev.with_workers(w),
        None => ev,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let digits = cli.digits;
    match &cli.command {
        Command::Zeta { index, cutoff } => {
            let index = admissible(index)?;
            let r = match cutoff {
                Some(n) => zeta_naive(&index, *n)?,
                None => evaluator(cli)?.zeta(&index, &pow10_neg(digits))?,
            };
            let body = json!({
                "index": index.to_string(),
                "digits": digits,
                "value": r.value.to_decimal(digits as usize),
                "err_bound": format_sci_up(&r.abs_err, 3),
            });
            Ok(Outcome {
                code: 0,
                stdout: format!(
                    "{}\n",
                    serde_json::to_string_pretty(&body).expect("json value")
                ),
            })
        }
        Command::Verify { which } => {
            let ev = evaluator(cli)?;
            let r = match which {
                Verify::T1(p) => verify_theorem(
                    Theorem::T1,
                    p.kl.k,
                    p.kl.l,
                    &params(&p.mu, &p.xi)?,
                    digits,
                    &ev,
                )?,
                Verify::T2(p) => verify_theorem(
                    Theorem::T2,
                    p.kl.k,
                    p.kl.l,
                    &params(&p.mu, &p.xi)?,
                    digits,
                    &ev,
                )?,
                Verify::EqAfter { kl, mu } => {
                    let mu = parse_rational_list(mu)?;
                    let [m1, m2] = mu.as_slice() else {
                        return Err(Error::Arity {
                            expected: 2,
                            mu: mu.len(),
                            xi: 0,
                        });
                    };
                    verify_eq_after(kl.k, kl.l, m1, m2, digits, &ev)?
                }
                Verify::Elo(kl) => verify_elo(kl.k, kl.l, digits, &ev)?,
                Verify::SumFormula { weight, depth } => {
                    verify_sum_formula(*weight, *depth, digits, &ev)?
                }
                Verify::Ohno { index, c } => verify_ohno(&admissible(index)?, *c, digits, &ev)?,
                Verify::Duality { index } => verify_duality(&admissible(index)?, digits, &ev)?,
            };
            Ok(report(&r))
        }
        Command::Mc(a) => {
            let workers = cli.workers.unwrap_or(MC_DEFAULT_WORKERS);
            let p = params(&a.mu, &a.xi)?;
            let r = mc_integral(a.kl.k, a.kl.l, a.pairs, &p, a.samples, a.seed, workers)?;
            Ok(Outcome {
                code: 0,
                stdout: format!(
                    "{}\n",
                    serde_json::to_string_pretty(&r).expect("json value")
                ),
            })
        }
        Command::Selftest => {
            let outcomes = run_all();
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&format!("{o}\n"));
            }
            let passed = outcomes.iter().filter(|o| o.pass).count();
            text.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
            Ok(Outcome {
                code: if passed == outcomes.len() { 0 } else { 1 },
                stdout: text,
            })
        }
        Command::Cache {
            action: CacheAction::Stats,
        } => {
            let Some(path) = &cli.cache else {
                return Err(Error::Io(
                    "no cache file given (use --cache or MZVLAB_CACHE)".into(),
                ));
            };
            let stats = Evaluator::with_cache_file(path)?.stats();
            let body = json!({ "path": path.display().to_string(), "entries": stats.entries });
            Ok(Outcome {
                code: 0,
                stdout: format!(
                    "{}\n",
                    serde_json::to_string_pretty(&body).expect("json value")
                ),
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Help
/// and version requests come back with code 0 and clap's text.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                },
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or_default();
                    usage(first.trim_start_matches("error: "))
                }
            };
        }
    };
    let outcome = dispatch(&cli).unwrap_or_else(usage);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    outcome
}
