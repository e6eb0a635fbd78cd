//! `lamplighter`: experiments on the lamplighter operator with deterministic,
//! machine-readable output.
//!
//! Exit codes: 0 success, 1 property failure, 2 parameter error, 3 resource limit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use lamplighter::bookkeeping::{euler_characteristic, solve_missing_betti, BettiLedger};
use lamplighter::checks::{corrupted_alpha, run_suite, CheckConfig, Suite};
use lamplighter::group::HElement;
use lamplighter::linalg::SparseIntMatrix;
use lamplighter::rep::{assemble_operator, tree_operator, QuotientRep};
use lamplighter::report;
use lamplighter::ring::{markov_a, DEFAULT_SUPPORT_LIMIT};
use lamplighter::spectra::{
    convergence_report_with, counting_measure, MultiplicityOptions, RepKind, DEFAULT_PRIME_SEED,
};

/// Worker threads for level and block fan-out; defaults to the number of cores.
const WORKERS_ENV: &str = "LAMPLIGHTER_WORKERS";

#[derive(Parser)]
#[command(name = "lamplighter", version, about = "Spectral experiments on the lamplighter group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Tree,
    Quotient,
}

impl From<Rep> for RepKind {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Tree => RepKind::Tree,
            Rep::Quotient => RepKind::Quotient,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Rep,
    Ring,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Counting measure of A_n, by dense eigensolve.
    Spectrum {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value = "tree")]
        rep: Rep,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Exact kernel fractions of A_n - lambda across levels.
    Kernel {
        #[arg(long, value_enum, default_value = "tree")]
        rep: Rep,
        /// Comma-separated levels or ranges, e.g. `1-12` or `4,6,8`.
        #[arg(long)]
        levels: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lambda: i64,
        /// Seed for the choice of primes.
        #[arg(long, default_value_t = DEFAULT_PRIME_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact tau(A^2k) beside the truncated limit-measure series.
    Moments(SeriesArgs),
    /// Exact projector bounds s_k beside the truncated limit-measure series.
    Projector(SeriesArgs),
    /// Randomized property suites.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, hide = true)]
        corrupt_alpha: bool,
    },
    /// Euler characteristic, the missing b2, and the dyadic verdict on b3.
    Bookkeeping {
        #[arg(long, default_value = "1,3,5,1", value_delimiter = ',')]
        cells: Vec<u64>,
        #[arg(long, default_value = "1/3")]
        b3: String,
        #[arg(long, default_value = "0")]
        b0: String,
        #[arg(long, default_value = "0")]
        b1: String,
    },
    /// Writes A_n as coordinate text: the dimension, then one `row col value` line per entry.
    Matrix {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value = "tree")]
        rep: Rep,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SeriesArgs {
    #[arg(long)]
    max_k: usize,
    #[arg(long, default_value_t = 40)]
    q_max: u32,
    /// Ceiling on the support of A^k delta_e.
    #[arg(long, default_value_t = DEFAULT_SUPPORT_LIMIT)]
    support_limit: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] lamplighter::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(lamplighter::Error::Resource { .. } | lamplighter::Error::DimensionLimit { .. }) => 3,
            CliError::Lib(lamplighter::Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

struct Outcome {
    text: String,
    /// Nonzero exit code to report even though output was produced.
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn parse_levels(text: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse level list {text:?}"));
    let mut levels = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi): (u32, u32) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
                if lo > hi {
                    return Err(bad());
                }
                levels.extend(lo..=hi);
            }
            None => levels.push(part.parse().map_err(|_| bad())?),
        }
    }
    if levels.is_empty() {
        return Err(bad());
    }
    Ok(levels)
}

fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(text.trim()).map_err(|_| CliError::Usage(format!("cannot parse fraction {text:?}")))
}

fn operator(level: u32, rep: Rep) -> Result<SparseIntMatrix, CliError> {
    Ok(match rep {
        Rep::Tree => tree_operator(level)?,
        Rep::Quotient => assemble_operator(&QuotientRep::new(level)?, &markov_a())?,
    })
}

fn kernel_csv(r: &lamplighter::spectra::ConvergenceReport) -> String {
    let mut out = String::from("level,dim,multiplicity,fraction_num,fraction_den,distance_num,distance_den\n");
    for row in &r.rows {
        let f = &row.result.fraction;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.level,
            row.result.dim,
            row.result.multiplicity,
            f.numer(),
            f.denom(),
            row.distance.numer(),
            row.distance.denom()
        ));
    }
    out
}

fn series(args: &SeriesArgs, projector: bool) -> Result<Outcome, CliError> {
    if projector && args.max_k == 0 {
        return Err(CliError::Usage("--max-k must be at least 1 for the projector".into()));
    }
    let table = if projector {
        report::projector_table(args.max_k, args.q_max, args.support_limit)?
    } else {
        report::moment_table(args.max_k, args.q_max, args.support_limit)?
    };
    let text = match args.format {
        Format::Json => report::to_json_text(&report::series_json(&table)),
        Format::Csv => report::series_csv(&table),
    };
    let code = if table.is_partial() {
        3
    } else if !table.all_passed() {
        1
    } else {
        0
    };
    if let Some(e) = &table.stopped_by {
        eprintln!("partial output: {e}");
    }
    Ok(Outcome { text, code })
}

fn run(cmd: &Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    Ok(match cmd {
        Command::Spectrum { level, rep, format, out } => {
            if *level == 0 {
                return Err(CliError::Usage("--level must be at least 1".into()));
            }
            let m = counting_measure(&operator(*level, *rep)?)?.with_level(*level as usize);
            let text = match format {
                Format::Csv => report::measure_csv(&m),
                Format::Json => report::to_json_text(&report::measure_json(&m)),
            };
            (Outcome::ok(text), out.clone())
        }
        Command::Kernel { rep, levels, lambda, seed, out, format } => {
            let levels = parse_levels(levels)?;
            let opts = MultiplicityOptions::with_seed(*seed);
            let r = convergence_report_with(&levels, *lambda, (*rep).into(), &opts)?;
            let text = match format {
                Format::Json => report::to_json_text(&report::convergence_json(&r)),
                Format::Csv => kernel_csv(&r),
            };
            (Outcome::ok(text), out.clone())
        }
        Command::Moments(args) => (series(args, false)?, args.out.clone()),
        Command::Projector(args) => (series(args, true)?, args.out.clone()),
        Command::Check { suite, seed, samples, corrupt_alpha } => {
            let suite = match suite {
                SuiteArg::Core => Suite::Core,
                SuiteArg::Rep => Suite::Rep,
                SuiteArg::Ring => Suite::Ring,
                SuiteArg::All => Suite::All,
            };
            let alpha = if *corrupt_alpha { corrupted_alpha } else { HElement::alpha };
            let summary = run_suite(suite, &CheckConfig { seed: *seed, samples: *samples, alpha });
            let mut text: String = summary.results.iter().map(|r| format!("{r}\n")).collect();
            let failed = summary.failures().count();
            text.push_str(&format!("{} properties, {} failed\n", summary.results.len(), failed));
            (Outcome { text, code: if failed == 0 { 0 } else { 1 } }, None)
        }
        Command::Bookkeeping { cells, b3, b0, b1 } => {
            if cells.len() != 4 {
                return Err(CliError::Usage(format!("--cells needs 4 counts (dimensions 0..3), got {}", cells.len())));
            }
            let (b0, b1, b3) = (parse_rational(b0)?, parse_rational(b1)?, parse_rational(b3)?);
            let chi = euler_characteristic(cells);
            let mut ledger = BettiLedger::new(cells.clone(), vec![Some(b0), Some(b1), None, Some(b3.clone())])?;
            let b2 = solve_missing_betti(chi, &ledger, 2)?;
            ledger.bettis[2] = Some(b2);
            (Outcome::ok(report::to_json_text(&report::bookkeeping_json(&ledger, &b3))), None)
        }
        Command::Matrix { level, rep, out } => {
            let m = operator(*level, *rep)?;
            (Outcome::ok(m.to_coordinate_text()), out.clone())
        }
    })
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(value) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{WORKERS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| run(&cli.command));
    match result {
        Ok((outcome, path)) => {
            match path {
                Some(path) => {
                    if let Err(source) = fs::write(&path, &outcome.text) {
                        let err = CliError::Write { path, source };
                        eprintln!("error: {err}");
                        return ExitCode::from(err.exit_code());
                    }
                }
                None => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
