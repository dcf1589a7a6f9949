//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use meanforge_core::inequalities::{InequalityParams, StatementId};

use crate::campaign::{resolve_workers, run};
use crate::config::{parse_list, CampaignConfig, ConfigError, Format, Mode};
use crate::replay::{replay, ReplayRequest};
use crate::report::{write_atomically, CampaignReport, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "meanforge", version, about = "Fuzz, search and replay matrix mean and norm inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check proven statements over a seeded campaign; exit 1 on any violation.
    Verify(CampaignArgs),
    /// Probe conjectural statements and hill-climb near-violations.
    Search(CampaignArgs),
    /// Regenerate one instance from its seed and print everything about it.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// JSON configuration file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Campaign seed (replay: the instance seed from a report).
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated dimensions.
    #[arg(long)]
    dims: Option<String>,
    /// Comma-separated statement ids.
    #[arg(long)]
    statements: Option<String>,
    /// Report path, written atomically (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Absolute slack tolerance τ (default 1e-8)
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Instances per (statement, dimension, parameter cell).
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Include every instance in the JSON report.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
}

fn base_config(common: &CommonArgs) -> Result<CampaignConfig, ConfigError> {
    let mut c = match &common.config {
        Some(path) => CampaignConfig::load(path)?,
        None => CampaignConfig::default(),
    };
    if let Some(seed) = common.seed {
        c.sampler.seed = seed;
    }
    if let Some(dims) = &common.dims {
        c.dims = parse_list(dims, "dimension")?;
    }
    if let Some(s) = &common.statements {
        c.statements = parse_list::<StatementId>(s, "statement")?;
    }
    if let Some(out) = &common.out {
        c.output_path = Some(out.clone());
    }
    if let Some(t) = common.tolerance {
        c.tolerance = t;
    }
    Ok(c)
}

fn campaign(mode: Mode, args: CampaignArgs) -> Result<i32, ConfigError> {
    let mut c = base_config(&args.common)?;
    if let Some(n) = args.count {
        c.count = n;
    }
    if let Some(f) = args.format {
        c.format = f;
    }
    c.verbose |= args.verbose;
    c.validate_for(mode)?;
    let workers = resolve_workers(None)?;
    let started = Instant::now();
    let results = run(&c, workers);
    let report = CampaignReport::build(&c, &results, Some(started.elapsed().as_secs_f64()));
    let text = report.render(c.format);
    match &c.output_path {
        Some(path) => {
            write_atomically(path, &text).map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    for s in &report.summary {
        let min = s.min_slack.map_or("n/a".to_string(), |m| format!("{:e}", m.0));
        eprintln!(
            "{}: {} instances, {} violations, {} near-violations, {} failures, min slack {min}",
            s.statement_id, s.instances, s.violations, s.near_violations, s.failures
        );
    }
    Ok(report.exit_code)
}

fn single<T: Copy>(v: &[T], what: &str) -> Result<T, ConfigError> {
    match v {
        [x] => Ok(*x),
        _ => Err(ConfigError(format!("replay needs exactly one {what}"))),
    }
}

fn replay_cmd(args: ReplayArgs) -> Result<i32, ConfigError> {
    let mut c = base_config(&args.common)?;
    c.validate_for(Mode::Replay)?;
    let seed = args.common.seed.ok_or_else(|| ConfigError("replay needs --seed".into()))?;
    let statement = single(&c.statements, "statement")?;
    let dim = single(&c.dims, "dimension")?;
    if dim == 0 {
        return Err(ConfigError("dimension must be positive".into()));
    }
    let params = InequalityParams::new(args.m, args.t, args.p, args.r).map_err(|e| ConfigError(e.to_string()))?;
    let req = ReplayRequest { statement, dim, params, seed, sampler: c.sampler.clone(), tolerance: c.tolerance };
    let out = match replay(&req) {
        Ok(out) => out,
        Err(e) if e.is_numerical() => {
            eprintln!("numerical failure: {e}");
            return Ok(EXIT_NUMERICAL);
        }
        Err(e) => return Err(ConfigError(e.to_string())),
    };
    let text = out.to_json();
    match &c.output_path {
        Some(path) => {
            write_atomically(path, &text).map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => campaign(Mode::Verify, a),
        Command::Search(a) => campaign(Mode::Search, a),
        Command::Replay(a) => replay_cmd(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("{e}");
        EXIT_CONFIG
    })
}
