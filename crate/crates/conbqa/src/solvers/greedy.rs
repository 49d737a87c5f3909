//! Multi-restart steepest single-bit-flip descent.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coding::BitVector;
use crate::qubo::Qubo;
use crate::solvers::{better, sort_samples, FlipModel, SolveResult};
use crate::{Error, Result};

pub const DEFAULT_RESTARTS: usize = 64;

/// Best-of-`restarts` steepest descent from uniform random codes.
///
/// Each descent step flips the bit with the largest energy decrease (lowest
/// index on ties) and stops when no flip decreases the energy. Restarts run
/// on substreams derived from one base seed, so the result is deterministic
/// given the input stream regardless of evaluation order.
pub fn solve_greedy<R: Rng + ?Sized>(
    qubo: &Qubo,
    rng: &mut R,
    restarts: usize,
) -> Result<SolveResult> {
    if restarts == 0 {
        return Err(Error::invalid("restarts must be >= 1"));
    }
    let start = Instant::now();
    let model = FlipModel::new(qubo);
    let m = model.num_vars();
    let base_seed = rng.next_u64();

    let mut best: Option<(BitVector, f64)> = None;
    let mut samples = Vec::with_capacity(restarts);
    for restart in 0..restarts {
        let mut restart_rng = ChaCha8Rng::seed_from_u64(base_seed);
        restart_rng.set_stream(restart as u64);
        let mut z: Vec<bool> = (0..m).map(|_| restart_rng.gen_bool(0.5)).collect();
        let mut fields = model.init_fields(&z);
        loop {
            let mut chosen: Option<(usize, f64)> = None;
            for i in 0..m {
                let delta = model.flip_delta(&z, &fields, i);
                if delta < 0.0 && chosen.map_or(true, |(_, best)| delta < best) {
                    chosen = Some((i, delta));
                }
            }
            match chosen {
                Some((i, _)) => model.apply_flip(&mut z, &mut fields, i),
                None => break,
            }
        }
        let code = BitVector::new(z);
        let energy = qubo.energy(&code)?;
        let candidate = (code, energy);
        if better(&candidate, &best) {
            best = Some(candidate.clone());
        }
        samples.push(candidate);
    }
    sort_samples(&mut samples);

    let (best_z, best_energy) = best.expect("restarts >= 1");
    Ok(SolveResult {
        best_z,
        best_energy,
        samples: Some(samples),
        solver_name: "greedy",
        elapsed: start.elapsed(),
    })
}
