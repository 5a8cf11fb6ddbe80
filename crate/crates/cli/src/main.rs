//! `interlace-majorize`: residue certificates, root tracking and campaigns
//! from the command line.
//!
//! Exit codes: 0 analysis complete, 1 campaign found counterexamples or the
//! tracker could not resolve a step, 2 input or flag error, 3 structural
//! precondition failure.

mod instance;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use interlace_majorize::harness::{self, GenSpec};
use interlace_majorize::homotopy::DEFAULT_GRID;
use interlace_majorize::rational::{parse_rational, pow2};
use interlace_majorize::{
    common_interlacer_check, decompose, majorizes, necessary_condition, reduce_shared_roots,
    strong_majorization_certificate, track, Direction, Error, Rational,
};
use serde_json::{json, Value};

use instance::Instance;

#[derive(Debug, Parser)]
#[command(name = "interlace-majorize", version)]
#[command(about = "Majorization certificates for real-rooted polynomials with a common interlacer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interlacing, majorization and both residue certificates for one instance.
    Check {
        /// Instance JSON file, or `-` for stdin.
        instance: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Track the roots of t·p + (1 − t)·q on a uniform grid.
    Track {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Root enclosure width, as `num/den` or `2^-k`.
        #[arg(long, default_value = "2^-60", value_parser = parse_tol)]
        tol: Rational,
        /// Write the trajectory CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Randomized verification campaign.
    Campaign {
        #[arg(long)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Grid size for the tracked side of the nscm campaign.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// diffmaj only: also perturb each constructed pair within this
        /// radius and count outcomes. Exploratory; never affects the exit code.
        #[arg(long, value_parser = parse_tol)]
        neighborhood: Option<Rational>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Simple-pole residues and their partial sums.
    Decompose {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = DirectionArg::Pq)]
        direction: DirectionArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TheoremArg {
    Ncm,
    Nscm,
    Diffmaj,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Pq,
    Qp,
}

fn parse_tol(s: &str) -> Result<Rational, String> {
    let value = match s.trim().strip_prefix("2^") {
        Some(exp) => pow2(exp.parse::<i32>().map_err(|e| format!("bad exponent in {s}: {e}"))?),
        None => parse_rational(s).map_err(|e| e.to_string())?,
    };
    if value <= Rational::from_integer(0.into()) {
        return Err(format!("{s} must be positive"));
    }
    Ok(value)
}

enum Failure {
    Input(String),
    Structural(String),
    Incomplete(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Incomplete(_) => 1,
            Failure::Input(_) => 2,
            Failure::Structural(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Structural(m) | Failure::Incomplete(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoCommonInterlacer(..)
            | Error::DegenerateEmpty
            | Error::SharedRoots(_)
            | Error::NonSimpleRoots(_) => Failure::Structural(e.to_string()),
            Error::GridExhausted { .. } | Error::BracketFailure { .. } => Failure::Incomplete(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn emit(value: &Value, path: Option<&Path>) -> Result<(), Failure> {
    let text = report::canonical(value);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<(Instance, interlace_majorize::PolyPair), Failure> {
    let inst = Instance::load(path).map_err(Failure::Input)?;
    let pair = inst.pair().map_err(Failure::Input)?;
    Ok((inst, pair))
}

fn cmd_check(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let (inst, pair) = load(path)?;
    let interlace = common_interlacer_check(&pair);
    let maj = majorizes(pair.lam(), pair.mu())?;
    let mut notices = Vec::new();
    let reduced = match reduce_shared_roots(&pair) {
        Ok(r) => report::pair(&r),
        Err(e) => {
            notices.push(e.to_string());
            Value::Null
        }
    };
    let mut cert = |result: Result<_, Error>| match result {
        Ok(c) => report::certificate(&c),
        Err(e) => {
            let msg = e.to_string();
            if !notices.contains(&msg) {
                notices.push(msg.clone());
            }
            json!({"error": msg})
        }
    };
    let ncm = cert(necessary_condition(&pair));
    let nscm = cert(strong_majorization_certificate(&pair));
    let body = json!({
        "instance": report::instance(&inst, &pair),
        "reduced": reduced,
        "interlace": report::interlace(&interlace),
        "majorization": report::majorization(&maj),
        "necessary_condition": ncm,
        "strong_majorization": nscm,
        "notices": notices,
    });
    emit(&body, out)
}

fn cmd_track(path: &Path, grid: usize, tol: &Rational, csv: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    let (inst, pair) = load(path)?;
    let bundle = track(&pair, grid, tol)?;
    if let Some(csv_path) = csv {
        std::fs::write(csv_path, report::trajectory_csv(&bundle))
            .map_err(|e| Failure::Input(format!("write {}: {e}", csv_path.display())))?;
    }
    let verdicts: Vec<Value> =
        bundle.monotone_verdicts.iter().enumerate().map(|(k, v)| report::verdict(k + 1, v)).collect();
    let body = json!({
        "instance": report::instance(&inst, &pair),
        "grid": grid,
        "tol": report::rational(tol),
        "csv": csv.map(|p| p.display().to_string()),
        "csv_error_bound": "each lambda_i within tol, each S_k within k*tol",
        "monotone_verdicts": verdicts,
    });
    emit(&body, out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_campaign(
    theorem: TheoremArg,
    trials: usize,
    seed: u64,
    degree: usize,
    grid: usize,
    neighborhood: Option<&Rational>,
    out: Option<&Path>,
) -> Result<bool, Failure> {
    let spec = GenSpec::new(degree, seed);
    if neighborhood.is_some() && !matches!(theorem, TheoremArg::Diffmaj) {
        return Err(Failure::Input("--neighborhood only applies to --theorem diffmaj".into()));
    }
    let (report, grid) = match theorem {
        TheoremArg::Ncm => (harness::campaign_ncm(&spec, trials)?, None),
        TheoremArg::Nscm => {
            if grid < 2 {
                return Err(Error::GridTooSmall(grid).into());
            }
            (harness::campaign_nscm(&spec, trials, grid)?, Some(grid))
        }
        TheoremArg::Diffmaj => (harness::search_diffmaj(&spec, trials)?, None),
    };
    let mut body = report::campaign(&report, grid);
    if let Some(radius) = neighborhood {
        let mut totals = harness::NeighborhoodTally::default();
        for trial in 0..trials as u64 {
            let (pair, _) = harness::generate_diffmaj_pair(&spec, trial)?;
            let t = harness::neighborhood_sweep(&pair, radius, 20, seed ^ trial, spec.denominator)?;
            totals.samples += t.samples;
            totals.valid += t.valid;
            totals.majorizing += t.majorizing;
            totals.not_strong += t.not_strong;
        }
        body["neighborhood"] = json!({
            "radius": report::rational(radius),
            "samples": totals.samples,
            "valid": totals.valid,
            "majorizing": totals.majorizing,
            "not_strong": totals.not_strong,
        });
    }
    emit(&body, out)?;
    Ok(report.passed())
}

fn cmd_decompose(path: &Path, direction: DirectionArg, out: Option<&Path>) -> Result<(), Failure> {
    let (inst, pair) = load(path)?;
    let direction = match direction {
        DirectionArg::Pq => Direction::POverQ,
        DirectionArg::Qp => Direction::QOverP,
    };
    let reduced = reduce_shared_roots(&pair)?;
    let removed = interlace_majorize::interlace::shared_positions(&pair);
    if !removed.is_empty() {
        eprintln!("notice: dropped shared roots at positions {removed:?}");
    }
    let residues = decompose(&reduced, direction)?;
    let poles = match direction {
        Direction::POverQ => reduced.mu(),
        Direction::QOverP => reduced.lam(),
    };
    let mut body = report::residues(&residues);
    body["instance"] = report::instance(&inst, &pair);
    body["poles"] = report::rationals(poles.iter());
    body["removed_positions"] = json!(removed);
    emit(&body, out)
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("INTERLACE_MAJORIZE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("INTERLACE_MAJORIZE_THREADS={value} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    init_threads()?;
    match cli.command {
        Command::Check { instance, json } => cmd_check(&instance, json.as_deref()).map(|_| true),
        Command::Track { instance, grid, tol, csv, json } => {
            cmd_track(&instance, grid, &tol, csv.as_deref(), json.as_deref()).map(|_| true)
        }
        Command::Campaign { theorem, trials, seed, degree, grid, neighborhood, json } => {
            cmd_campaign(theorem, trials, seed, degree, grid, neighborhood.as_ref(), json.as_deref())
        }
        Command::Decompose { instance, direction, json } => {
            cmd_decompose(&instance, direction, json.as_deref()).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
