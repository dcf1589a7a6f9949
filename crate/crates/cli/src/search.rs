//! Violation-margin hill climbing for conjecture instances.
//!
//! Each `A_i`, `B_i` is held as a factor `F` with `A = F F^*`, starting from
//! the Hermitian square root. One move multiplies a single entry of a single
//! factor by `1 ± step`; a move is kept only if it lowers the verdict's
//! minimum slack and keeps the matrix inside the sampler's conditioning
//! range. When neither sign helps at a coordinate the step is halved. The
//! coordinate sequence comes from a generator keyed by the instance seed, so
//! a climb is reproducible from the report record alone.

use meanforge_core::instance::Instance;
use meanforge_core::means::MAX_CONDITION;
use meanforge_core::sampling::{rng_from_seed, uniform};
use meanforge_core::{ComplexMatrix, PositiveDefiniteMatrix};
use serde::Serialize;

use crate::formats::Real;

const INITIAL_STEP: f64 = 0.25;
const MIN_STEP: f64 = 1e-9;
/// Keeps the coordinate stream distinct from the instance's sampling stream.
const STREAM_SALT: u64 = 0x5EA2_C4C1_1AB5_0001;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Move {
    pub iteration: usize,
    /// `A1`, `B1`, `A2`, ...
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    /// The entry was multiplied by this.
    pub factor: Real,
    pub slack: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refinement {
    pub initial_slack: Real,
    pub final_slack: Real,
    pub iterations: usize,
    pub final_step: Real,
    /// Accepted moves, in order.
    pub trajectory: Vec<Move>,
}

impl Refinement {
    pub fn final_value(&self) -> f64 {
        self.final_slack.0
    }
}

fn slack_of(instance: &Instance, tau: f64) -> Option<f64> {
    instance.evaluate(tau).ok().map(|v| v.min_slack()).filter(|s| !s.is_nan())
}

/// Climbs for at most `iterations` moves. `max_condition` bounds every
/// perturbed matrix (typically the sampler's `eig_max / eig_min`). Returns
/// `None` for instances without a matrix tuple.
pub fn hill_climb(instance: &Instance, tau: f64, iterations: usize, max_condition: f64) -> Option<Refinement> {
    let tuple = instance.tuple()?;
    let m = tuple.m();
    let n = tuple.dim();
    let mut current = instance.clone();
    let mut slack = slack_of(&current, tau)?;
    let initial = slack;
    let limit = max_condition.min(MAX_CONDITION) * (1.0 + 1e-8);
    // factors[2i] for A_i, factors[2i + 1] for B_i.
    let mut factors: Vec<ComplexMatrix> =
        tuple.pairs().flat_map(|(a, b)| [a.sqrt().matrix().clone(), b.sqrt().matrix().clone()]).collect();
    let mut rng = rng_from_seed(instance.seed ^ STREAM_SALT);
    let mut step = INITIAL_STEP;
    let mut trajectory = Vec::new();
    let mut done = 0;
    while done < iterations && step >= MIN_STEP {
        done += 1;
        let pick = |rng: &mut _, k: usize| ((uniform(rng) * k as f64) as usize).min(k - 1);
        let which = pick(&mut rng, 2 * m);
        let row = pick(&mut rng, n);
        let col = pick(&mut rng, n);
        let mut improved = false;
        for sign in [1.0, -1.0] {
            let factor = 1.0 + sign * step;
            let mut f = factors[which].clone();
            f[(row, col)] *= factor;
            let Ok(pd) = PositiveDefiniteMatrix::from_factor(&f) else { continue };
            if !(pd.condition_number() <= limit) {
                continue;
            }
            let Some(t) = current.tuple().and_then(|t| t.with_replaced(which / 2, which % 2 == 1, pd).ok()) else {
                continue;
            };
            let candidate = current.with_tuple(t);
            match slack_of(&candidate, tau) {
                Some(s) if s < slack => {
                    slack = s;
                    current = candidate;
                    factors[which] = f;
                    let side = if which % 2 == 0 { 'A' } else { 'B' };
                    trajectory.push(Move {
                        iteration: done,
                        matrix: format!("{side}{}", which / 2 + 1),
                        row,
                        col,
                        factor: Real(factor),
                        slack: Real(s),
                    });
                    improved = true;
                    break;
                }
                _ => {}
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Some(Refinement {
        initial_slack: Real(initial),
        final_slack: Real(slack),
        iterations: done,
        final_step: Real(step),
        trajectory,
    })
}
