//! Command-line front end: `fold`, `sd`, `eq` and `fuzz`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a stated hypothesis
//! failed to verify, 3 campaign failure, 4 unsupported input, 5 internal
//! defect detected by a runtime check.

pub mod homfile;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use freegroup::equaliser::{
    solve_pair, solve_retract_pipeline, solve_set, SolveOptions, DEFAULT_RADIUS, DEFAULT_SOLVER_MAX_ITER,
};
use freegroup::harness::{run_campaign, CampaignStatus, TrialConfig};
use freegroup::stable_domain::{sd_iterate, SdStatus};
use freegroup::syntax::parse_word_at;
use freegroup::{format_word, Alphabet, Error, MapSet, SubgroupGraph};

use report::{render, CampaignJson, EqualiserJson, SdJson};

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const HYPOTHESIS: i32 = 2;
    pub const CAMPAIGN_FAILURE: i32 = 3;
    pub const UNSUPPORTED: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{context}{error}")]
    Core { context: String, error: Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => exit::USAGE,
            CliError::Core { error, .. } => match error {
                Error::HypothesisNotVerified(_) => exit::HYPOTHESIS,
                Error::Unsupported(_) | Error::WrongSolver(_) => exit::UNSUPPORTED,
                Error::InternalContradiction(_) | Error::SoundnessViolation(_) | Error::InvalidStableDomain(_) => {
                    exit::INTERNAL
                }
                _ => exit::USAGE,
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError::Core {
            context: String::new(),
            error,
        }
    }
}

fn in_file(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |error| CliError::Core {
        context: format!("{}: ", path.display()),
        error,
    }
}

#[derive(Debug, Parser)]
#[command(name = "fgeq", version, about = "Subgroups, stable domains and equalisers of free group maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold generators into a subgroup graph; print rank and basis.
    Fold(FoldArgs),
    /// Iterate the stable domain chain of two maps.
    Sd(SdArgs),
    /// Compute the equaliser of two or more maps.
    Eq(EqArgs),
    /// Run a seeded property campaign.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Args)]
pub struct FoldArgs {
    /// Comma-separated generator words.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: String,
    /// Comma- or space-separated generator names; inferred when absent.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Write the subgroup graph in DOT format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SdArgs {
    /// File holding the injective map g.
    pub g: PathBuf,
    /// File holding the map h.
    pub h: PathBuf,
    /// Cap on the number of distinct iterates.
    #[arg(long, default_value_t = 20)]
    pub max_iter: usize,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EqArgs {
    /// Files holding the maps, one map per file.
    #[arg(required = true, num_args = 2..)]
    pub maps: Vec<PathBuf>,
    /// Retractions onto im(g) and im(h), in that order.
    #[arg(long = "retraction")]
    pub retractions: Vec<PathBuf>,
    /// Enumeration radius for bounded searches.
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    pub radius: usize,
    /// Iteration cap for the stable domain solvers.
    #[arg(long, default_value_t = DEFAULT_SOLVER_MAX_ITER)]
    pub max_iter: usize,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long)]
    pub property: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = TrialConfig::default().max_word_len)]
    pub max_word_len: usize,
    #[arg(long, default_value_t = TrialConfig::default().max_rank)]
    pub max_rank: usize,
    #[arg(long, default_value_t = TrialConfig::default().radius)]
    pub radius: usize,
    #[arg(long, default_value_t = TrialConfig::default().max_iter)]
    pub max_iter: usize,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `json` to `target` and returns whether the human summary should
/// still go to standard output.
fn emit_json(out: &mut dyn Write, target: Option<&Path>, json: &str) -> Result<bool, CliError> {
    match target {
        Some(p) if p == Path::new("-") => {
            out.write_all(json.as_bytes()).map_err(stdout_error)?;
            Ok(false)
        }
        Some(p) => {
            write(p, json)?;
            Ok(true)
        }
        None => Ok(true),
    }
}

fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(stdout_error)?
    };
}

/// Runs a parsed command, writing its normal output to `out`. Returns the
/// exit code for outcomes that are not errors.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Fold(a) => fold(a, out),
        Command::Sd(a) => sd(a, out),
        Command::Eq(a) => eq(a, out),
        Command::Fuzz(a) => fuzz(a, out),
    }
}

fn split_list(text: &str) -> Vec<String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn fold(a: FoldArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut pieces: Vec<(usize, &str)> = Vec::new();
    let mut offset = 0;
    for piece in a.gens.split(',') {
        if !piece.trim().is_empty() {
            pieces.push((offset, piece));
        }
        offset += piece.len() + 1;
    }
    let al = match &a.alphabet {
        Some(list) => Alphabet::new(split_list(list))?,
        None => Alphabet::new(homfile::infer_symbols(
            &pieces.iter().map(|(_, p)| *p).collect::<Vec<_>>(),
        ))?,
    };
    let gens = pieces
        .iter()
        .map(|(off, p)| parse_word_at(&al, p, 1, off + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let g = SubgroupGraph::fold(&al, &gens);
    if let Some(path) = &a.dot {
        write(path, &g.to_dot())?;
    }
    let basis: Vec<String> = g.basis().words.iter().map(|w| format_word(&al, w)).collect();
    say!(out, "rank: {}", g.rank());
    say!(out, "basis: {}", list(&basis));
    Ok(exit::OK)
}

fn sd(a: SdArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.max_iter == 0 {
        return Err(CliError::Usage("--max-iter must be positive".into()));
    }
    let texts = [read(&a.g)?, read(&a.h)?];
    let maps = homfile::load_family(&[&texts[0], &texts[1]]).map_err(in_file(&a.g))?;
    let trace = sd_iterate(&maps[0], &maps[1], a.max_iter)?;
    let json = render(&SdJson::new(&trace, a.max_iter));
    if emit_json(out, a.json.as_deref(), &json)? {
        match &trace.status {
            SdStatus::Stabilized(i) => say!(out, "status: stabilized at {i}"),
            other => say!(out, "status: {}", other.code()),
        }
        say!(out, "ranks: {:?}", trace.ranks());
        if let Some(sd) = &trace.sd {
            let basis: Vec<String> = sd.basis().words.iter().map(|w| format_word(sd.alphabet(), w)).collect();
            say!(out, "basis: {}", list(&basis));
        }
    }
    Ok(match trace.status {
        SdStatus::Unsupported(_) => exit::UNSUPPORTED,
        _ => exit::OK,
    })
}

fn eq(a: EqArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let opts = SolveOptions {
        radius: a.radius,
        max_iter: a.max_iter,
    };
    if a.max_iter == 0 {
        return Err(CliError::Usage("--max-iter must be positive".into()));
    }
    let texts = a.maps.iter().map(|p| read(p)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let maps = homfile::load_family(&refs)?;
    let report = match (maps.len(), a.retractions.len()) {
        (_, 0) if maps.len() == 2 => solve_pair(&maps[0], &maps[1], &opts)?,
        (_, 0) => solve_set(&MapSet::new(maps.clone())?, &[], &opts)?,
        (2, 2) => {
            let codomain = maps[0].codomain();
            let rho_g = homfile::parse_endomorphism(&read(&a.retractions[0])?, codomain)
                .map_err(in_file(&a.retractions[0]))?;
            let rho_h = homfile::parse_endomorphism(&read(&a.retractions[1])?, codomain)
                .map_err(in_file(&a.retractions[1]))?;
            solve_retract_pipeline(&maps[0], &maps[1], &rho_g, &rho_h, &opts)?
        }
        _ => {
            return Err(CliError::Usage(
                "--retraction must be given exactly twice, for a pair of maps".into(),
            ))
        }
    };
    let domain = maps[0].domain();
    let json = render(&EqualiserJson::new(&report, domain));
    if emit_json(out, a.json.as_deref(), &json)? {
        let basis: Vec<String> = report.basis.iter().map(|w| format_word(domain, w)).collect();
        say!(out, "verdict: {}", report.verdict.code());
        say!(out, "rank: {}", report.rank());
        say!(out, "basis: {}", list(&basis));
        for w in &report.witnesses {
            say!(out, "witness: {}", format_word(domain, w));
        }
    }
    Ok(exit::OK)
}

fn fuzz(a: FuzzArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = TrialConfig {
        seed: a.seed,
        trials: a.trials,
        max_word_len: a.max_word_len,
        max_rank: a.max_rank,
        radius: a.radius,
        max_iter: a.max_iter,
    };
    let report = run_campaign(&a.property, &cfg).map_err(|e| match e {
        Error::UnknownProperty(name) => CliError::Usage(format!(
            "unknown property `{name}`; known: {}",
            freegroup::harness::properties().join(", ")
        )),
        Error::Unsupported(msg) => CliError::Usage(msg),
        other => other.into(),
    })?;
    let json = render(&CampaignJson::new(&report));
    if emit_json(out, a.json.as_deref(), &json)? {
        say!(
            out,
            "{}: {} ({} trials, {} failures)",
            report.property,
            report.status.code(),
            report.trials_run,
            report.failures.len()
        );
        for f in &report.failures {
            say!(out, "  trial {} seed {}: {} | {}", f.trial, f.trial_seed, f.instance, f.detail);
        }
    }
    Ok(match report.status {
        CampaignStatus::Pass => exit::OK,
        CampaignStatus::Fail => exit::CAMPAIGN_FAILURE,
    })
}
