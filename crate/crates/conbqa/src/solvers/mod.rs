//! QUBO minimizers: exhaustive oracle, greedy descent, simulated annealing,
//! and a subprocess adapter for external solvers.
//!
//! Contracts shared by all solvers:
//! - `best_energy` is recomputed from the returned code via [`Qubo::energy`],
//!   never trusted from solver-internal bookkeeping;
//! - randomized solvers are deterministic given their input stream, using
//!   per-read/per-restart substreams so the result does not depend on
//!   evaluation order;
//! - equal-energy results resolve to the lexicographically smallest code.

mod exhaustive;
mod external;
mod greedy;
mod sa;

pub use exhaustive::{maximize_feasible_exhaustive, solve_exhaustive, EXHAUSTIVE_MAX_VARS};
pub use external::{solve_external, ExternalSolverConfig, SolutionEntry, SolutionFile};
pub use greedy::{solve_greedy, DEFAULT_RESTARTS};
pub use sa::{solve_sa, SaParams};

use std::time::Duration;

use crate::coding::BitVector;
use crate::qubo::Qubo;

/// Outcome of one solver invocation.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub best_z: BitVector,
    /// Exactly `qubo.energy(&best_z)`.
    pub best_energy: f64,
    /// Per-read / per-restart / per-response codes with locally recomputed
    /// energies, ascending by energy. Absent for the exhaustive solver.
    pub samples: Option<Vec<(BitVector, f64)>>,
    pub solver_name: &'static str,
    pub elapsed: Duration,
}

/// Dense per-variable view of a QUBO for O(1) flip energy deltas.
///
/// `fields[i]` is the energy change of raising bit `i` from an all-else-equal
/// state: `linear[i] + sum_j coeff(i,j) * z_j`. Flipping bit `i` changes the
/// energy by `fields[i]` when the bit goes up and `-fields[i]` when it goes
/// down; accepted flips update neighboring fields.
pub(crate) struct FlipModel {
    linear: Vec<f64>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl FlipModel {
    pub(crate) fn new(qubo: &Qubo) -> Self {
        let m = qubo.num_vars();
        let mut linear = vec![0.0; m];
        for (&i, &c) in qubo.linear() {
            linear[i] = c;
        }
        let mut neighbors = vec![Vec::new(); m];
        for (&(i, j), &c) in qubo.quadratic() {
            neighbors[i].push((j, c));
            neighbors[j].push((i, c));
        }
        FlipModel { linear, neighbors }
    }

    pub(crate) fn num_vars(&self) -> usize {
        self.linear.len()
    }

    pub(crate) fn init_fields(&self, z: &[bool]) -> Vec<f64> {
        (0..self.num_vars())
            .map(|i| {
                self.linear[i]
                    + self.neighbors[i]
                        .iter()
                        .filter(|&&(j, _)| z[j])
                        .map(|&(_, c)| c)
                        .sum::<f64>()
            })
            .collect()
    }

    /// Energy delta of flipping bit `i` in state `z`.
    pub(crate) fn flip_delta(&self, z: &[bool], fields: &[f64], i: usize) -> f64 {
        if z[i] {
            -fields[i]
        } else {
            fields[i]
        }
    }

    /// Flip bit `i` and update the neighboring fields.
    pub(crate) fn apply_flip(&self, z: &mut [bool], fields: &mut [f64], i: usize) {
        z[i] = !z[i];
        let sign = if z[i] { 1.0 } else { -1.0 };
        for &(j, c) in &self.neighbors[i] {
            fields[j] += sign * c;
        }
    }

    /// Largest and smallest-nonzero per-variable flip magnitude bounds,
    /// from coefficient sums. Used for the default annealing schedule.
    pub(crate) fn flip_magnitude_bounds(&self) -> Option<(f64, f64)> {
        let mut max_bound = 0.0f64;
        let mut min_bound = f64::INFINITY;
        for i in 0..self.num_vars() {
            let bound = self.linear[i].abs()
                + self.neighbors[i].iter().map(|&(_, c)| c.abs()).sum::<f64>();
            if bound > 0.0 {
                max_bound = max_bound.max(bound);
                min_bound = min_bound.min(bound);
            }
        }
        (max_bound > 0.0).then_some((max_bound, min_bound))
    }
}

/// Merge a candidate into the running best: lower energy wins, exact energy
/// ties resolve to the lexicographically smaller code.
pub(crate) fn better(
    candidate: &(BitVector, f64),
    incumbent: &Option<(BitVector, f64)>,
) -> bool {
    match incumbent {
        None => true,
        Some((inc_z, inc_e)) => {
            candidate.1 < *inc_e || (candidate.1 == *inc_e && candidate.0 < *inc_z)
        }
    }
}

/// Sort samples ascending by energy, code order breaking ties.
pub(crate) fn sort_samples(samples: &mut [(BitVector, f64)]) {
    samples.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
}
