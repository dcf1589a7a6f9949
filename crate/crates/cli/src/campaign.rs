//! Campaign execution.
//!
//! Every instance is identified by its global index in the fixed task order
//! (statement, then dimension, then parameter cell, then repetition); its
//! seed is derived from the campaign seed and that index alone. Workers map
//! indices to results and the results are collected in index order, so the
//! worker count cannot affect any output.

use meanforge_core::inequalities::{InequalityParams, StatementId};
use meanforge_core::instance::{generate, parameter_cells, sampler_for};
use meanforge_core::sampling::derive_instance_seed;
use rayon::prelude::*;

use crate::config::{CampaignConfig, ConfigError, Mode};
use crate::search::{hill_climb, Refinement};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "MEANFORGE_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Task {
    pub index: u64,
    pub statement: StatementId,
    pub dim: usize,
    pub params: InequalityParams,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Evaluated { min_slack: f64, worst_index: usize, holds: bool },
    Failed { error: String, numerical: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceResult {
    pub task: Task,
    pub seed: u64,
    pub outcome: Outcome,
    pub refinement: Option<Refinement>,
}

impl InstanceResult {
    pub fn min_slack(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Evaluated { min_slack, .. } => Some(min_slack),
            Outcome::Failed { .. } => None,
        }
    }
}

pub fn tasks(config: &CampaignConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for &statement in &config.statements {
        let cells = parameter_cells(statement, &config.param_grids);
        for &dim in &config.dims {
            for &params in &cells {
                for _ in 0..config.count {
                    out.push(Task { index: out.len() as u64, statement, dim, params });
                }
            }
        }
    }
    out
}

/// `explicit`, else `MEANFORGE_WORKERS`, else the machine's parallelism.
pub fn resolve_workers(explicit: Option<usize>) -> Result<usize, ConfigError> {
    if let Some(w) = explicit {
        return if w == 0 { Err(ConfigError("worker count must be positive".into())) } else { Ok(w) };
    }
    match std::env::var(WORKERS_ENV) {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(w),
            _ => Err(ConfigError(format!("{WORKERS_ENV} must be a positive integer, got `{text}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn run_one(config: &CampaignConfig, task: Task) -> InstanceResult {
    let seed = derive_instance_seed(config.sampler.seed, task.index);
    let generated = generate(task.statement, task.params, task.dim, seed, &config.sampler);
    let evaluated = generated.and_then(|inst| inst.evaluate(config.tolerance).map(|v| (inst, v)));
    let (outcome, refinement) = match evaluated {
        Ok((inst, v)) => {
            let min_slack = v.min_slack();
            let refinement = if config.mode == Some(Mode::Search) && min_slack < config.near_violation_threshold {
                let s = sampler_for(task.statement, &task.params, task.dim, seed, &config.sampler);
                hill_climb(&inst, config.tolerance, config.search_iterations, s.eig_max / s.eig_min)
            } else {
                None
            };
            (Outcome::Evaluated { min_slack, worst_index: v.worst_index(), holds: v.holds }, refinement)
        }
        Err(e) => (Outcome::Failed { error: e.to_string(), numerical: e.is_numerical() }, None),
    };
    InstanceResult { task, seed, outcome, refinement }
}

/// Runs every task of a validated configuration on `workers` threads.
pub fn run(config: &CampaignConfig, workers: usize) -> Vec<InstanceResult> {
    let tasks = tasks(config);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| tasks.par_iter().map(|&t| run_one(config, t)).collect())
}
