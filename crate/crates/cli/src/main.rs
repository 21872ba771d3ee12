//! `grunskylab`: Grunsky coefficients, identity checks, Hankel determinants,
//! bound verification and extremal search from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 failed precondition, 4 search found a value above its bound.

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grunskylab::extremal::{objective_by_name, search_feasible, SearchReport};
use grunskylab::grunsky::{
    bilinear_inequality_gap, standard_probes, verify_identities, weighted_inequality_gap,
    DEFAULT_MAX_DEGREE,
};
use grunskylab::hankel::{hankel_report, Reduction};
use grunskylab::report::pair;
use grunskylab::{bounds, CoefficientVectorF64, Error, IdentityResidualF64, InequalityWeightsF64};
use serde::Serialize;

use input::{InputSpec, Source};

/// Residuals and gaps within this of zero count as holding.
const VERIFY_TOL: f64 = 1e-10;
/// Outer terms `q = 1, 3, 5` of the weighted inequality reported by
/// `verify`. With probe weights on indices 1 and 3 this reads entries up to
/// `w_35`, which the default degree covers.
const WEIGHTED_TERMS: usize = 3;

pub enum CliError {
    Parse(String),
    Precondition(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Precondition(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(name = "grunskylab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grunsky entries of the odd transform, sorted by (p, q).
    Grunsky {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Coefficient identity residuals and inequality gaps.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Second and third Hankel determinants, with reduced forms when a2 or
    /// a3 vanishes.
    Hankel {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Recompute every catalogued bound constant, one JSON line each.
    Bounds {
        #[arg(long, default_value_t = bounds::MATCH_THRESHOLD)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Seeded search over the Grunsky-feasible region.
    Search {
        #[arg(long)]
        objective: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// JSON file holding `coefficients` or `family`.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    input: Option<PathBuf>,
    /// Named family: identity, koebe or halfplane.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 0.0, requires = "family")]
    theta: f64,
    /// Rotational symmetry order of the Koebe family.
    #[arg(long, default_value_t = 1, requires = "family")]
    t: usize,
    /// Number of coefficients to generate for a family.
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SourceArgs {
    fn source(&self) -> Result<Source, CliError> {
        match (&self.input, &self.family) {
            (Some(path), _) => InputSpec::read(path),
            (None, Some(name)) => Ok(Source::Family(input::FamilySpec {
                name: name.clone(),
                theta: self.theta,
                t: self.t,
                order: None,
            })),
            (None, None) => Err(CliError::Parse(
                "one of --input or --family is required".into(),
            )),
        }
    }

    fn coefficients(&self, default_order: usize) -> Result<CoefficientVectorF64, CliError> {
        self.source()?.resolve(self.order, default_order)
    }
}

impl OutArgs {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Precondition(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::Precondition(format!("stdout: {e}")))
            }
        }
    }
}

fn json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct EntryOut {
    p: usize,
    q: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct GrunskyOut {
    max_degree: usize,
    entries: Vec<EntryOut>,
}

#[derive(Serialize)]
struct GapOut {
    functional: &'static str,
    x: Vec<[f64; 2]>,
    gap: f64,
}

#[derive(Serialize)]
struct VerifyOut {
    residuals: IdentityResidualF64,
    max_residual: f64,
    gaps: Vec<GapOut>,
    weighted_min_gap: f64,
    bilinear_min_gap: f64,
    holds: bool,
}

#[derive(Serialize)]
struct HankelOut {
    h22: [f64; 2],
    h31: [f64; 2],
    h22_abs: f64,
    h31_abs: f64,
    reduced_h22: Option<[f64; 2]>,
    reduced_h31: Option<[f64; 2]>,
    reduction: Reduction,
}

fn grunsky_cmd(source: &SourceArgs, max_degree: usize) -> Result<String, CliError> {
    let f = source.coefficients(max_degree / 2 + 1)?;
    let w = f.odd_grunsky(max_degree)?;
    let entries = w
        .entries()
        .map(|(p, q, c)| EntryOut {
            p,
            q,
            re: c.re,
            im: c.im,
        })
        .collect();
    Ok(json(&GrunskyOut {
        max_degree,
        entries,
    }))
}

fn verify_cmd(source: &SourceArgs) -> Result<(String, bool), CliError> {
    let f = source.coefficients(DEFAULT_MAX_DEGREE / 2 + 1)?;
    let residuals = verify_identities(&f)?;
    let w = f.odd_grunsky(DEFAULT_MAX_DEGREE)?;
    let entries = w.odd_entries()?;

    let mut gaps = Vec::new();
    for (x1, x3) in standard_probes(entries.w11) {
        let x = InequalityWeightsF64::pair(x1, x3);
        gaps.push(GapOut {
            functional: "weighted",
            x: vec![pair(x1), pair(x3)],
            gap: weighted_inequality_gap(&w, &x, WEIGHTED_TERMS)?,
        });
        gaps.push(GapOut {
            functional: "bilinear",
            x: vec![pair(x1), pair(x3)],
            gap: bilinear_inequality_gap(&w, &x)?,
        });
    }
    let weighted_min_gap = entries.weighted_min_gap();
    let bilinear_min_gap = entries.bilinear_min_gap();
    let max_residual = residuals.max_abs();
    let holds = max_residual <= VERIFY_TOL
        && weighted_min_gap >= -VERIFY_TOL
        && bilinear_min_gap >= -VERIFY_TOL
        && gaps.iter().all(|g| g.gap >= -VERIFY_TOL);
    let out = VerifyOut {
        residuals,
        max_residual,
        gaps,
        weighted_min_gap,
        bilinear_min_gap,
        holds,
    };
    Ok((json(&out), holds))
}

fn hankel_cmd(source: &SourceArgs) -> Result<String, CliError> {
    let f = source.coefficients(5)?;
    let r = hankel_report(&f)?;
    Ok(json(&HankelOut {
        h22: pair(r.h22),
        h31: pair(r.h31),
        h22_abs: r.h22.norm(),
        h31_abs: r.h31.norm(),
        reduced_h22: r.reduced_h22.map(pair),
        reduced_h31: r.reduced_h31.map(pair),
        reduction: r.reduction,
    }))
}

fn bounds_cmd(tol: f64) -> Result<(String, bool), CliError> {
    let reports = bounds::verify_all(tol)?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&json(r));
    }
    Ok((text, reports.iter().all(|r| !r.is_failure())))
}

fn search_cmd(objective: &str, seed: u64, iterations: usize) -> Result<(String, bool), CliError> {
    let obj = objective_by_name(objective)?;
    let outcome = search_feasible(&obj, seed, iterations);
    let report = SearchReport::new(&obj, seed, &outcome);
    Ok((json(&report), report.is_sound()))
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("GRUNSKYLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Parse(format!("GRUNSKYLAB_THREADS: invalid value {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Precondition(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    let (text, out, code) = match &cli.command {
        Command::Grunsky {
            source,
            max_degree,
            out,
        } => (grunsky_cmd(source, *max_degree)?, out, 0),
        Command::Verify { source, out } => {
            let (text, ok) = verify_cmd(source)?;
            (text, out, if ok { 0 } else { 1 })
        }
        Command::Hankel { source, out } => (hankel_cmd(source)?, out, 0),
        Command::Bounds { tol, out } => {
            let (text, ok) = bounds_cmd(*tol)?;
            (text, out, if ok { 0 } else { 1 })
        }
        Command::Search {
            objective,
            seed,
            iterations,
            out,
        } => {
            let (text, sound) = search_cmd(objective, *seed, *iterations)?;
            (text, out, if sound { 0 } else { 4 })
        }
    };
    out.emit(&text)?;
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
