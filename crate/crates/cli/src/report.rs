//! Campaign reports: reduction of instance results, JSON and CSV rendering,
//! atomic file output and exit codes.

use std::io::Write;
use std::path::Path;

use meanforge_core::inequalities::StatementId;
use meanforge_core::sampling::RNG_ALGORITHM_VERSION;
use serde::Serialize;

use crate::campaign::{InstanceResult, Outcome};
use crate::config::{CampaignConfig, Format, Mode};
use crate::formats::{real_text, Real};
use crate::search::Refinement;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Numerical failures tolerated before a run is declared unreliable.
pub const MAX_FAILURE_RATE: f64 = 0.01;

/// Violations closer to zero than this many tolerances are flagged, not
/// believed.
pub const INCONCLUSIVE_FACTOR: f64 = 100.0;

pub const INCONCLUSIVE: &str = "inconclusive — precision-limited";

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub index: u64,
    pub seed: u64,
    pub statement_id: StatementId,
    pub dim: usize,
    pub m: usize,
    pub t: Real,
    pub p: Real,
    pub r: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_index: Option<usize>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement: Option<Refinement>,
}

impl Record {
    fn new(r: &InstanceResult, tolerance: f64) -> Self {
        let (min_slack, worst_index, status, error) = match &r.outcome {
            Outcome::Evaluated { min_slack, worst_index, holds } => {
                (Some(*min_slack), Some(*worst_index), if *holds { "holds" } else { "violation" }, None)
            }
            Outcome::Failed { error, .. } => (None, None, "error", Some(error.clone())),
        };
        let lowest = min_slack.into_iter().chain(r.refinement.as_ref().map(Refinement::final_value)).reduce(f64::min);
        let precision =
            lowest.filter(|&s| s < -tolerance && s.abs() < INCONCLUSIVE_FACTOR * tolerance).map(|_| INCONCLUSIVE);
        let p = &r.task.params;
        Record {
            index: r.task.index,
            seed: r.seed,
            statement_id: r.task.statement,
            dim: r.task.dim,
            m: p.m,
            t: Real(p.t.value()),
            p: Real(p.p),
            r: Real(p.r),
            min_slack: min_slack.map(Real),
            worst_index,
            status,
            precision,
            error,
            refinement: r.refinement.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StatementSummary {
    pub statement_id: StatementId,
    pub is_proven_statement: bool,
    pub instances: usize,
    pub evaluated: usize,
    pub failures: usize,
    pub numerical_failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack_instance: Option<Record>,
    pub violations: usize,
    pub violation_records: Vec<Record>,
    /// Instances with slack below the near-violation threshold (including
    /// violations).
    pub near_violations: usize,
    /// The lowest-slack near-violations, at most `max_listed`.
    pub near_violation_records: Vec<Record>,
    /// Search mode: lowest slack reached by any refinement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_refined_slack: Option<Real>,
    /// Search mode: refinements ending below `-tolerance`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined_violations: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub violations: usize,
    pub failures: usize,
    pub numerical_failures: usize,
    pub numerical_failure_rate: Real,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub tool: String,
    pub rng_algorithm_version: &'static str,
    pub config: CampaignConfig,
    pub summary: Vec<StatementSummary>,
    pub totals: Totals,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<Record>>,
    #[serde(skip)]
    records: Vec<Record>,
}

fn by_slack(a: &Record, b: &Record) -> std::cmp::Ordering {
    let key = |r: &Record| r.min_slack.map_or(f64::INFINITY, |s| s.0);
    key(a).total_cmp(&key(b)).then(a.index.cmp(&b.index))
}

fn summarize(
    statement: StatementId,
    records: &[&Record],
    results: &[&InstanceResult],
    config: &CampaignConfig,
) -> StatementSummary {
    let evaluated: Vec<&&Record> = records.iter().filter(|r| r.min_slack.is_some()).collect();
    let min = evaluated.iter().copied().min_by(|a, b| by_slack(a, b));
    let failures = records.len() - evaluated.len();
    let numerical_failures =
        results.iter().filter(|r| matches!(r.outcome, Outcome::Failed { numerical: true, .. })).count();
    let mut violations: Vec<Record> =
        evaluated.iter().filter(|r| r.status == "violation").map(|r| (**r).clone()).collect();
    violations.sort_by(by_slack);
    let mut near: Vec<Record> = evaluated
        .iter()
        .filter(|r| r.min_slack.is_some_and(|s| s.0 < config.near_violation_threshold))
        .map(|r| (**r).clone())
        .collect();
    let near_count = near.len();
    near.sort_by(by_slack);
    near.truncate(config.max_listed);
    let refined: Vec<f64> = records.iter().filter_map(|r| r.refinement.as_ref().map(Refinement::final_value)).collect();
    let search = config.mode == Some(Mode::Search);
    StatementSummary {
        statement_id: statement,
        is_proven_statement: statement.is_proven(),
        instances: records.len(),
        evaluated: evaluated.len(),
        failures,
        numerical_failures,
        min_slack: min.and_then(|r| r.min_slack),
        min_slack_instance: min.map(|r| (**r).clone()),
        violations: violations.len(),
        violation_records: violations,
        near_violations: near_count,
        near_violation_records: near,
        min_refined_slack: if search { refined.iter().copied().reduce(f64::min).map(Real) } else { None },
        refined_violations: search.then(|| refined.iter().filter(|&&s| s < -config.tolerance).count()),
    }
}

impl CampaignReport {
    pub fn build(config: &CampaignConfig, results: &[InstanceResult], wall_time: Option<f64>) -> Self {
        let records: Vec<Record> = results.iter().map(|r| Record::new(r, config.tolerance)).collect();
        let summary: Vec<StatementSummary> = config
            .statements
            .iter()
            .map(|&s| {
                let rs: Vec<&Record> = records.iter().filter(|r| r.statement_id == s).collect();
                let res: Vec<&InstanceResult> = results.iter().filter(|r| r.task.statement == s).collect();
                summarize(s, &rs, &res, config)
            })
            .collect();
        let instances = records.len();
        let numerical_failures: usize = summary.iter().map(|s| s.numerical_failures).sum();
        let totals = Totals {
            instances,
            violations: summary.iter().map(|s| s.violations).sum(),
            failures: summary.iter().map(|s| s.failures).sum(),
            numerical_failures,
            numerical_failure_rate: Real(if instances == 0 {
                0.0
            } else {
                numerical_failures as f64 / instances as f64
            }),
        };
        let exit_code = exit_code(config.mode.unwrap_or(Mode::Verify), &totals);
        CampaignReport {
            tool: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            rng_algorithm_version: RNG_ALGORITHM_VERSION,
            config: config.clone(),
            summary,
            totals,
            exit_code,
            wall_time_seconds: if config.record_wall_time { wall_time.map(Real) } else { None },
            instances: if config.verbose { Some(records.clone()) } else { None },
            records,
        }
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat per-instance table.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["statement_id", "dim", "m", "t", "p", "r", "seed", "min_slack", "holds"]).expect("in memory");
        for r in &self.records {
            let holds = match r.status {
                "holds" => "true",
                "violation" => "false",
                _ => "error",
            };
            w.write_record([
                r.statement_id.as_str().to_string(),
                r.dim.to_string(),
                r.m.to_string(),
                real_text(r.t.0),
                real_text(r.p.0),
                real_text(r.r.0),
                r.seed.to_string(),
                r.min_slack.map_or(String::new(), |s| real_text(s.0)),
                holds.to_string(),
            ])
            .expect("in memory");
        }
        String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Exit code for a finished campaign. A proven-statement violation is the
/// only path to 1 and is never masked by the failure budget.
pub fn exit_code(mode: Mode, totals: &Totals) -> i32 {
    if mode == Mode::Verify && totals.violations > 0 {
        EXIT_VIOLATION
    } else if totals.numerical_failure_rate.0 > MAX_FAILURE_RATE {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    }
}

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial report.
pub fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::campaign::{run, Task};
    use meanforge_core::inequalities::InequalityParams;

    fn result(index: u64, outcome: Outcome) -> InstanceResult {
        InstanceResult {
            task: Task { index, statement: StatementId::Weyl, dim: 2, params: InequalityParams::default() },
            seed: index * 7,
            outcome,
            refinement: None,
        }
    }

    fn config() -> CampaignConfig {
        CampaignConfig { mode: Some(Mode::Verify), statements: vec![StatementId::Weyl], ..Default::default() }
    }

    #[test]
    fn violations_and_near_violations_are_listed_with_seeds() {
        let results = vec![
            result(0, Outcome::Evaluated { min_slack: 0.5, worst_index: 0, holds: true }),
            result(1, Outcome::Evaluated { min_slack: -1e-3, worst_index: 1, holds: false }),
            result(2, Outcome::Evaluated { min_slack: 1e-6, worst_index: 0, holds: true }),
            result(3, Outcome::Evaluated { min_slack: -2e-7, worst_index: 0, holds: false }),
        ];
        let report = CampaignReport::build(&config(), &results, None);
        let s = &report.summary[0];
        assert_eq!(s.violations, 2);
        assert_eq!(s.violation_records[0].index, 1);
        assert_eq!(s.violation_records[0].seed, 7);
        assert_eq!(s.violation_records[0].precision, None);
        assert_eq!(s.violation_records[1].precision, Some(INCONCLUSIVE));
        assert_eq!(s.near_violations, 3);
        assert_eq!(s.min_slack, Some(Real(-1e-3)));
        assert_eq!(report.exit_code, EXIT_VIOLATION);
        let csv = report.to_csv();
        assert!(csv.starts_with("statement_id,dim,m,t,p,r,seed,min_slack,holds\n"));
        assert!(csv.contains("weyl,2,2,0.5,1.0,1.0,7,-0.001,false"));
    }

    #[test]
    fn failure_budget() {
        let mut results: Vec<_> =
            (0..99).map(|i| result(i, Outcome::Evaluated { min_slack: 0.1, worst_index: 0, holds: true })).collect();
        results.push(result(99, Outcome::Failed { error: "x".into(), numerical: true }));
        assert_eq!(CampaignReport::build(&config(), &results, None).exit_code, EXIT_OK);
        results.push(result(100, Outcome::Failed { error: "y".into(), numerical: true }));
        assert_eq!(CampaignReport::build(&config(), &results, None).exit_code, EXIT_NUMERICAL);
    }

    #[test]
    fn wall_time_is_opt_in_and_reports_are_reproducible() {
        let mut c = config();
        c.count = 2;
        c.dims = vec![2];
        let a = CampaignReport::build(&c, &run(&c, 1), Some(1.25)).to_json();
        let b = CampaignReport::build(&c, &run(&c, 3), Some(9.0)).to_json();
        assert_eq!(a, b);
        assert!(!a.contains("wall_time_seconds"));
        c.record_wall_time = true;
        assert!(CampaignReport::build(&c, &run(&c, 1), Some(1.25)).to_json().contains("\"wall_time_seconds\": 1.25"));
    }

    #[test]
    fn atomic_write_replaces_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        write_atomically(&path, "first").unwrap();
        write_atomically(&path, "second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
