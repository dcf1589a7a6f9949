//! Campaign configuration: JSON file, command-line overrides and validation.

use std::fmt;
use std::path::{Path, PathBuf};

use meanforge_core::inequalities::{StatementId, PROVEN_TOLERANCE};
use meanforge_core::instance::{parameter_cells, ParamGrid};
use meanforge_core::sampling::SamplerConfig;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Verify,
    Search,
    Replay,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Verify => "verify",
            Mode::Search => "search",
            Mode::Replay => "replay",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    /// Taken from the subcommand when absent from the file.
    pub mode: Option<Mode>,
    pub statements: Vec<StatementId>,
    pub dims: Vec<usize>,
    /// Instances per (statement, dimension, parameter cell).
    pub count: usize,
    pub param_grids: ParamGrid,
    /// `sampler.seed` is the campaign seed; `sampler.dim` is ignored in
    /// favour of `dims`.
    pub sampler: SamplerConfig,
    pub tolerance: f64,
    pub near_violation_threshold: f64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// Include one record per instance in JSON reports.
    pub verbose: bool,
    /// Wall time makes reports differ between runs, so it is opt-in.
    pub record_wall_time: bool,
    /// Near-violations listed per statement (the count is always exact).
    pub max_listed: usize,
    /// Hill-climbing iterations per near-violation in search mode.
    pub search_iterations: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            mode: None,
            statements: Vec::new(),
            dims: vec![2, 3, 5, 8],
            count: 100,
            param_grids: ParamGrid::default(),
            sampler: SamplerConfig::default(),
            tolerance: PROVEN_TOLERANCE,
            near_violation_threshold: 1e-4,
            output_path: None,
            format: Format::Json,
            verbose: false,
            record_wall_time: false,
            max_listed: 100,
            search_iterations: 200,
        }
    }
}

/// A configuration problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(format!("invalid config JSON: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Fixes the mode (or rejects a conflicting one) and checks every field.
    pub fn validate_for(&mut self, mode: Mode) -> Result<(), ConfigError> {
        match self.mode {
            Some(m) if m != mode => return err(format!("config is for `{m}` but `{mode}` was requested")),
            _ => self.mode = Some(mode),
        }
        if mode == Mode::Replay {
            return self.validate_replay();
        }
        if self.statements.is_empty() {
            return err("no statements selected");
        }
        for &s in &self.statements {
            match (mode, s.is_proven()) {
                (Mode::Verify, false) => {
                    return err(format!("`{s}` is conjectural; verify accepts proven statements only"))
                }
                (Mode::Search, true) => {
                    return err(format!("`{s}` is proven; search accepts conjectural statements only"))
                }
                _ => {}
            }
            if parameter_cells(s, &self.param_grids).is_empty() {
                return err(format!("the parameter grid has no admissible cell for `{s}`"));
            }
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return err("dims must be a non-empty list of positive integers");
        }
        if self.count == 0 {
            return err("count must be positive");
        }
        if !(self.near_violation_threshold.is_finite()) {
            return err("near_violation_threshold must be finite");
        }
        self.validate_common()
    }

    fn validate_replay(&self) -> Result<(), ConfigError> {
        self.validate_common()
    }

    fn validate_common(&self) -> Result<(), ConfigError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return err("tolerance must be a positive finite number");
        }
        self.sampler.validate().map_err(|e| ConfigError(format!("sampler: {e}")))
    }
}

/// Parses `a,b,c` lists used by command-line flags.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| ConfigError(format!("bad {what} `{s}`: {e}"))))
        .collect()
}
