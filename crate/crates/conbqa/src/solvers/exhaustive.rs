//! Exhaustive enumeration, exact about ties.
//!
//! Structural coefficient cancellations (a penalty unit against the
//! unit-scaled top weight) produce codes whose energies are equal in exact
//! arithmetic but drift apart by an ulp under floating summation, in either
//! direction. Both enumerators therefore shortlist every code within a
//! rigorous rounding bound of the float optimum and re-score the shortlist
//! in exact rational arithmetic before tie-breaking lexicographically.

use std::time::Instant;

use num_rational::BigRational;

use crate::coding::{BitVector, Codebook};
use crate::qubo::Qubo;
use crate::regression::Weights;
use crate::solvers::SolveResult;
use crate::{Error, Result};

/// Hard cap on exhaustively enumerable variables.
pub const EXHAUSTIVE_MAX_VARS: usize = 24;

fn mask_to_code(mask: u32, m: usize) -> BitVector {
    BitVector::new((0..m).map(|k| mask >> k & 1 == 1).collect())
}

fn exact_sum(terms: &[f64]) -> BigRational {
    terms
        .iter()
        .map(|&t| BigRational::from_float(t).expect("finite term"))
        .sum()
}

/// Global minimizer over all `2^m` codes; exact-energy ties resolve to the
/// lexicographically smallest code.
pub fn solve_exhaustive(qubo: &Qubo) -> Result<SolveResult> {
    let start = Instant::now();
    let m = qubo.num_vars();
    if m > EXHAUSTIVE_MAX_VARS {
        return Err(Error::Capacity(format!(
            "exhaustive solver handles at most {EXHAUSTIVE_MAX_VARS} variables, got {m}"
        )));
    }
    let linear: Vec<(usize, f64)> = qubo.linear().iter().map(|(&i, &c)| (i, c)).collect();
    let quad: Vec<(usize, usize, f64)> = qubo
        .quadratic()
        .iter()
        .map(|(&(i, j), &c)| (i, j, c))
        .collect();
    let eval = |mask: u32| -> f64 {
        let mut e = 0.0;
        for &(i, c) in &linear {
            if mask >> i & 1 == 1 {
                e += c;
            }
        }
        for &(i, j, c) in &quad {
            if mask >> i & 1 == 1 && mask >> j & 1 == 1 {
                e += c;
            }
        }
        e
    };

    let total: u64 = 1u64 << m;
    let mut min_float = f64::INFINITY;
    for mask in 0..total {
        min_float = min_float.min(eval(mask as u32));
    }

    // Any code whose exact energy attains the exact minimum has a float
    // energy within twice the summation error bound of the float minimum.
    let abs_sum: f64 = linear.iter().map(|&(_, c)| c.abs()).sum::<f64>()
        + quad.iter().map(|&(_, _, c)| c.abs()).sum::<f64>();
    let n_terms = (linear.len() + quad.len()) as f64;
    let err_bound = n_terms * f64::EPSILON * abs_sum;
    let threshold = min_float + 2.0 * err_bound;

    let mut champion: Option<(u32, BigRational)> = None;
    for mask in 0..total {
        let mask = mask as u32;
        if eval(mask) > threshold {
            continue;
        }
        let exact = exact_sum(&qubo.active_terms(&mask_to_code(mask, m)));
        let replace = match &champion {
            None => true,
            Some((champ_mask, champ_exact)) => {
                exact < *champ_exact
                    || (exact == *champ_exact
                        && mask_to_code(mask, m) < mask_to_code(*champ_mask, m))
            }
        };
        if replace {
            champion = Some((mask, exact));
        }
    }

    let (mask, _) = champion.expect("enumeration over >= 1 code");
    let best_z = mask_to_code(mask, m);
    let best_energy = qubo.energy(&best_z)?;
    Ok(SolveResult {
        best_z,
        best_energy,
        samples: None,
        solver_name: "exhaustive",
        elapsed: start.elapsed(),
    })
}

/// Exhaustive maximizer of the acquisition `sum_k w_k z_k` over codes whose
/// positive set is a clique of the overlap graph. Independent of the
/// penalized formulation: scores come straight from the weights and
/// feasibility straight from the disjoint pairs.
pub fn maximize_feasible_exhaustive(
    weights: &Weights,
    codebook: &Codebook,
) -> Result<(BitVector, f64)> {
    let m = codebook.num_bits();
    if m > EXHAUSTIVE_MAX_VARS {
        return Err(Error::Capacity(format!(
            "feasible enumeration handles at most {EXHAUSTIVE_MAX_VARS} bits, got {m}"
        )));
    }
    if weights.len() != m {
        return Err(Error::contract(format!(
            "{} weights vs {} rectangles",
            weights.len(),
            m
        )));
    }
    let pair_masks: Vec<u32> = codebook
        .disjoint_pairs()
        .iter()
        .map(|&(i, j)| (1u32 << i) | (1u32 << j))
        .collect();
    let feasible = |mask: u32| pair_masks.iter().all(|&pm| mask & pm != pm);
    let w = weights.as_slice();
    let score = |mask: u32| -> f64 {
        (0..m)
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| w[k])
            .sum()
    };

    let total: u64 = 1u64 << m;
    let mut max_float = f64::NEG_INFINITY;
    for mask in 0..total {
        let mask = mask as u32;
        if feasible(mask) {
            max_float = max_float.max(score(mask));
        }
    }
    let err_bound = m as f64 * f64::EPSILON * w.iter().sum::<f64>();
    let threshold = max_float - 2.0 * err_bound;

    let mut champion: Option<(u32, BigRational)> = None;
    for mask in 0..total {
        let mask = mask as u32;
        if !feasible(mask) || score(mask) < threshold {
            continue;
        }
        let terms: Vec<f64> = (0..m)
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| w[k])
            .collect();
        let exact = exact_sum(&terms);
        let replace = match &champion {
            None => true,
            Some((champ_mask, champ_exact)) => {
                exact > *champ_exact
                    || (exact == *champ_exact
                        && mask_to_code(mask, m) < mask_to_code(*champ_mask, m))
            }
        };
        if replace {
            champion = Some((mask, exact));
        }
    }

    let (mask, _) = champion.expect("all-zero code is always feasible");
    let best_z = mask_to_code(mask, m);
    let value = score(mask);
    Ok((best_z, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn qubo(
        num_vars: usize,
        linear: &[(usize, f64)],
        quad: &[((usize, usize), f64)],
    ) -> Qubo {
        Qubo::new(
            num_vars,
            linear.iter().copied().collect::<BTreeMap<_, _>>(),
            quad.iter().copied().collect::<BTreeMap<_, _>>(),
        )
        .unwrap()
    }

    #[test]
    fn single_negative_variable() {
        let q = qubo(1, &[(0, -1.0)], &[]);
        let res = solve_exhaustive(&q).unwrap();
        assert_eq!(res.best_z.to_ints(), vec![1]);
        assert_eq!(res.best_energy, -1.0);
    }

    #[test]
    fn zero_qubo_breaks_ties_to_all_zeros() {
        let q = qubo(3, &[], &[]);
        let res = solve_exhaustive(&q).unwrap();
        assert_eq!(res.best_z.to_ints(), vec![0, 0, 0]);
        assert_eq!(res.best_energy, 0.0);
    }

    // Hand-enumerated three-variable instance: optimum is 101 at -1.4.
    #[test]
    fn three_variable_instance_by_hand() {
        let q = qubo(3, &[(0, -0.4), (1, -0.9), (2, -1.0)], &[((1, 2), 1.0)]);
        let res = solve_exhaustive(&q).unwrap();
        assert_eq!(res.best_z.to_ints(), vec![1, 0, 1]);
        assert!((res.best_energy - -1.4).abs() < 1e-12);
    }

    #[test]
    fn respects_capacity_guard() {
        let q = qubo(25, &[], &[]);
        assert!(matches!(solve_exhaustive(&q), Err(Error::Capacity(_))));
    }

    // Structural tie: adding the unit-weight bit 1 to the clique {0, 2}
    // gains linear -1.0 against exactly one penalty +1.0, so {0,2} and
    // {0,1,2} have equal energy in exact arithmetic (-1.1). The subset is
    // lexicographically smaller and must win regardless of float rounding.
    #[test]
    fn structural_tie_resolves_to_the_subset() {
        let q = qubo(
            3,
            &[(0, -0.6), (1, -1.0), (2, -0.5)],
            &[((0, 1), 1.0), ((1, 2), 1.0)],
        );
        // Survey: {} 0, {0} -0.6, {1} -1.0, {2} -0.5, {0,1} -0.6,
        // {0,2} -1.1, {1,2} -0.5, {0,1,2} -1.1 (tie with {0,2}).
        let res = solve_exhaustive(&q).unwrap();
        assert_eq!(res.best_z.to_ints(), vec![1, 0, 1]);
        assert!((res.best_energy - -1.1).abs() < 1e-12);
    }

    // Bit sequences compare position by position, so among the exact
    // three-way tie {0}, {1}, {0,1} the code [0,1] is the smallest.
    #[test]
    fn equal_energy_codes_break_lexicographically() {
        let q = qubo(2, &[(0, -1.0), (1, -1.0)], &[((0, 1), 1.0)]);
        let res = solve_exhaustive(&q).unwrap();
        assert_eq!(res.best_z.to_ints(), vec![0, 1]);
        assert_eq!(res.best_energy, -1.0);
    }

    #[test]
    fn feasible_maximizer_agrees_with_brute_force_filter() {
        use crate::coding::generate_codebook;
        use crate::qubo::feasible_for_c;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        let mut rng = ChaCha8Rng::seed_from_u64(81);
        for trial in 0..20 {
            let m = 10;
            let mut cb_rng = ChaCha8Rng::seed_from_u64(7000 + trial);
            let cb = generate_codebook(&mut cb_rng, 3, 2, m, 3).unwrap();
            let w = Weights::new((0..m).map(|_| rng.gen::<f64>() + 1e-6).collect()).unwrap();
            let (best, value) = maximize_feasible_exhaustive(&w, &cb).unwrap();
            assert!(feasible_for_c(&cb, &best).unwrap());
            // No feasible code beats it.
            for mask in 0u32..(1 << m) {
                let z = mask_to_code(mask, m);
                if feasible_for_c(&cb, &z).unwrap() {
                    let g: f64 = z.ones().map(|k| w.as_slice()[k]).sum();
                    assert!(g <= value + 1e-12, "trial {trial}: {g} beats {value}");
                }
            }
        }
    }
}
