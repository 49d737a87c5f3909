//! The outer optimization loop.
//!
//! One run: draw uniform initial points, generate the codebook once, then
//! iterate encode -> normalize -> fit -> build QUBO -> solve -> classify ->
//! decode -> evaluate -> append, tracking the running best and its regret
//! against the objective's known optimum (maximization convention).
//!
//! Runs are fully deterministic given the master seed: initial sampling,
//! codebook generation, solver randomness, and decoding each consume an
//! independent named substream.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coding::{encode, generate_codebook, BitVector, Codebook};
use crate::geometry::{classify, decode, SolutionClass};
use crate::objectives::{registry_lookup, Objective};
use crate::qubo::build_qubo;
use crate::regression::{fit_nnls, minmax_normalize};
use crate::rng::{stream, substream};
use crate::solvers::{
    solve_exhaustive, solve_external, solve_greedy, solve_sa, ExternalSolverConfig, SaParams,
    SolveResult,
};
use crate::{Error, Result};

/// Which QUBO solver drives the acquisition optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum SolverChoice {
    Sa(SaParams),
    Greedy { restarts: usize },
    Exhaustive,
    External(ExternalSolverConfig),
}

impl SolverChoice {
    pub fn solve<R: Rng + ?Sized>(
        &self,
        qubo: &crate::qubo::Qubo,
        rng: &mut R,
    ) -> Result<SolveResult> {
        match self {
            SolverChoice::Sa(params) => solve_sa(qubo, rng, params),
            SolverChoice::Greedy { restarts } => solve_greedy(qubo, rng, *restarts),
            SolverChoice::Exhaustive => solve_exhaustive(qubo),
            SolverChoice::External(config) => solve_external(qubo, config),
        }
    }
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub objective: String,
    pub dim: usize,
    pub num_bits: usize,
    pub subspace_dim: usize,
    pub coverage_n: usize,
    pub num_initial: usize,
    pub num_iterations: usize,
    pub solver: SolverChoice,
    pub seed: u64,
}

impl RunConfig {
    fn validate(&self, objective: &Objective) -> Result<()> {
        if self.dim != objective.dim() {
            return Err(Error::invalid(format!(
                "config dim {} vs objective '{}' dim {}",
                self.dim,
                objective.name(),
                objective.dim()
            )));
        }
        if self.num_initial == 0 {
            return Err(Error::invalid("num_initial must be >= 1"));
        }
        if self.num_bits == 0 {
            return Err(Error::invalid("num_bits must be >= 1"));
        }
        if self.subspace_dim == 0 || self.subspace_dim > self.dim {
            return Err(Error::invalid(format!(
                "subspace_dim {} not in 1..={}",
                self.subspace_dim, self.dim
            )));
        }
        if self.coverage_n < 2 {
            return Err(Error::invalid("coverage_n must be >= 2"));
        }
        Ok(())
    }
}

/// One controlled step of the loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    /// 1-based index of the controlled step.
    pub index: usize,
    pub z_star: BitVector,
    pub solution_class: SolutionClass,
    pub x_star: Vec<f64>,
    pub y_star: f64,
    /// Energy of `z_star` under that iteration's QUBO; absent for the
    /// random baseline, which solves nothing.
    pub qubo_energy: Option<f64>,
    pub best_so_far: f64,
    pub regret: f64,
}

/// Empirical distribution of solution classes over the controlled steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassFractions {
    pub empty: f64,
    pub admissible: f64,
    pub decodable: f64,
}

/// Full trajectory of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: RunConfig,
    pub objective_optimum: f64,
    pub codebook: Codebook,
    pub initial_xs: Vec<Vec<f64>>,
    pub initial_ys: Vec<f64>,
    pub iterations: Vec<IterationRecord>,
    /// Absent when the run has no controlled iterations.
    pub class_fractions: Option<ClassFractions>,
}

impl RunRecord {
    /// Largest observed outcome across initial points and iterations.
    pub fn best_value(&self) -> f64 {
        let init = self
            .initial_ys
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        self.iterations
            .iter()
            .fold(init, |a, rec| a.max(rec.y_star))
    }

    pub fn final_regret(&self) -> f64 {
        self.objective_optimum - self.best_value()
    }

    /// Deterministic JSON serialization; equal configs give equal bytes.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<RunRecord> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("run record: {e}")))
    }

    /// Plot-ready rows: `index,class,y_star,best_so_far,regret`.
    pub fn write_iterations_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "index,class,y_star,best_so_far,regret")?;
        for rec in &self.iterations {
            writeln!(
                out,
                "{},{},{},{},{}",
                rec.index, rec.solution_class, rec.y_star, rec.best_so_far, rec.regret
            )?;
        }
        Ok(())
    }
}

/// Proportions of empty/admissible/decodable over the controlled steps.
pub fn class_statistics(record: &RunRecord) -> Result<ClassFractions> {
    if record.iterations.is_empty() {
        return Err(Error::UndefinedStatistic(
            "class fractions need at least one controlled iteration".into(),
        ));
    }
    Ok(fractions_of(&record.iterations))
}

fn fractions_of(iterations: &[IterationRecord]) -> ClassFractions {
    let n = iterations.len() as f64;
    let count = |class: SolutionClass| {
        iterations
            .iter()
            .filter(|r| r.solution_class == class)
            .count() as f64
            / n
    };
    ClassFractions {
        empty: count(SolutionClass::Empty),
        admissible: count(SolutionClass::Admissible),
        decodable: count(SolutionClass::Decodable),
    }
}

/// Run with the objective resolved from the registry.
pub fn run(config: &RunConfig) -> Result<RunRecord> {
    let objective = registry_lookup(&config.objective)?;
    run_with_objective(config, &objective)
}

/// Random-search baseline with the objective resolved from the registry.
pub fn run_random_baseline(config: &RunConfig) -> Result<RunRecord> {
    let objective = registry_lookup(&config.objective)?;
    run_random_baseline_with_objective(config, &objective)
}

/// The optimization loop proper.
pub fn run_with_objective(config: &RunConfig, objective: &Objective) -> Result<RunRecord> {
    run_impl(config, objective, false)
}

/// Identical bookkeeping, but every candidate is uniform over the cube.
pub fn run_random_baseline_with_objective(
    config: &RunConfig,
    objective: &Objective,
) -> Result<RunRecord> {
    run_impl(config, objective, true)
}

fn run_impl(config: &RunConfig, objective: &Objective, baseline: bool) -> Result<RunRecord> {
    config.validate(objective)?;
    let mut initial_rng = substream(config.seed, stream::INITIAL_POINTS);
    let mut codebook_rng = substream(config.seed, stream::CODEBOOK);
    let mut solver_rng = substream(config.seed, stream::SOLVER);
    let mut decoder_rng = substream(config.seed, stream::DECODER);

    let codebook = generate_codebook(
        &mut codebook_rng,
        config.dim,
        config.subspace_dim,
        config.num_bits,
        config.coverage_n,
    )?;
    let mut record = RunRecord {
        config: config.clone(),
        objective_optimum: objective.optimum_value(),
        codebook,
        initial_xs: Vec::with_capacity(config.num_initial),
        initial_ys: Vec::with_capacity(config.num_initial),
        iterations: Vec::with_capacity(config.num_iterations),
        class_fractions: None,
    };

    let abort = |record: &mut RunRecord, message: String| -> Error {
        record.class_fractions = (!record.iterations.is_empty())
            .then(|| fractions_of(&record.iterations));
        Error::RunAborted {
            message,
            partial: Box::new(record.clone()),
        }
    };

    for i in 0..config.num_initial {
        let x: Vec<f64> = (0..config.dim).map(|_| initial_rng.gen::<f64>()).collect();
        let y = objective.evaluate(&x);
        record.initial_xs.push(x);
        if !y.is_finite() {
            record.initial_ys.push(y);
            return Err(abort(
                &mut record,
                format!("objective returned non-finite value at initial point {i}"),
            ));
        }
        record.initial_ys.push(y);
    }

    let mut xs: Vec<Vec<f64>> = record.initial_xs.clone();
    let mut ys: Vec<f64> = record.initial_ys.clone();
    let mut best = record.best_value();

    for index in 1..=config.num_iterations {
        let (x_star, z_star, solution_class, qubo_energy) = if baseline {
            let x: Vec<f64> = (0..config.dim).map(|_| decoder_rng.gen::<f64>()).collect();
            let z = encode(&record.codebook, &x)?;
            let class = classify(&record.codebook, &z)?;
            (x, z, class, None)
        } else {
            let zs: Vec<BitVector> = xs
                .iter()
                .map(|x| encode(&record.codebook, x))
                .collect::<Result<_>>()?;
            let ys_norm = minmax_normalize(&ys);
            let weights = fit_nnls(&zs, &ys_norm)?;
            let qubo = build_qubo(&weights, &record.codebook)?;
            let solved = config.solver.solve(&qubo, &mut solver_rng)?;
            let class = classify(&record.codebook, &solved.best_z)?;
            let x = decode(&record.codebook, &solved.best_z, &mut decoder_rng)?;
            (x, solved.best_z, class, Some(solved.best_energy))
        };

        let y_star = objective.evaluate(&x_star);
        if !y_star.is_finite() {
            return Err(abort(
                &mut record,
                format!("objective returned non-finite value at iteration {index}"),
            ));
        }
        best = best.max(y_star);
        record.iterations.push(IterationRecord {
            index,
            z_star,
            solution_class,
            x_star: x_star.clone(),
            y_star,
            qubo_energy,
            best_so_far: best,
            regret: objective.optimum_value() - best,
        });
        xs.push(x_star);
        ys.push(y_star);
    }

    record.class_fractions =
        (!record.iterations.is_empty()).then(|| fractions_of(&record.iterations));
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Arc;

    fn base_config(seed: u64) -> RunConfig {
        RunConfig {
            objective: "hartmann6".into(),
            dim: 6,
            num_bits: 20,
            subspace_dim: 2,
            coverage_n: 3,
            num_initial: 8,
            num_iterations: 5,
            solver: SolverChoice::Greedy { restarts: 8 },
            seed,
        }
    }

    #[test]
    fn zero_iterations_keeps_only_initials() {
        let mut config = base_config(1);
        config.num_iterations = 0;
        let record = run(&config).unwrap();
        assert_eq!(record.initial_xs.len(), 8);
        assert!(record.iterations.is_empty());
        assert!(record.class_fractions.is_none());
        let best_init = record
            .initial_ys
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        assert_eq!(record.final_regret(), record.objective_optimum - best_init);
        assert!(matches!(
            class_statistics(&record),
            Err(Error::UndefinedStatistic(_))
        ));
    }

    #[test]
    fn constant_objective_degenerates_gracefully() {
        let constant = Objective::new("constant", 3, 2.5, true, |_: &[f64]| 2.5);
        let config = RunConfig {
            objective: "constant".into(),
            dim: 3,
            num_bits: 12,
            subspace_dim: 2,
            coverage_n: 3,
            num_initial: 5,
            num_iterations: 4,
            solver: SolverChoice::Exhaustive,
            seed: 3,
        };
        let record = run_with_objective(&config, &constant).unwrap();
        assert_eq!(record.iterations.len(), 4);
        for rec in &record.iterations {
            assert_eq!(rec.y_star, 2.5);
            assert_eq!(rec.regret, 0.0);
            // Pure-penalty QUBO: the all-zero code is optimal.
            assert_eq!(rec.z_star.count_ones(), 0);
        }
    }

    #[test]
    fn dataset_grows_by_one_per_iteration_and_classes_recheck() {
        let record = run(&base_config(7)).unwrap();
        assert_eq!(record.initial_xs.len() + record.iterations.len(), 8 + 5);
        let mut best = record
            .initial_ys
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        for rec in &record.iterations {
            assert_eq!(rec.z_star.len(), record.config.num_bits);
            assert_eq!(
                classify(&record.codebook, &rec.z_star).unwrap(),
                rec.solution_class
            );
            best = best.max(rec.y_star);
            assert_eq!(rec.best_so_far, best);
            assert!(rec.regret >= 0.0);
        }
        let fractions = record.class_fractions.unwrap();
        let total = fractions.empty + fractions.admissible + fractions.decodable;
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_seeds_give_byte_identical_records() {
        let a = run(&base_config(11)).unwrap();
        let b = run(&base_config(11)).unwrap();
        assert_eq!(a.to_json_pretty(), b.to_json_pretty());
        let c = run(&base_config(12)).unwrap();
        assert_ne!(a.to_json_pretty(), c.to_json_pretty());
    }

    #[test]
    fn record_json_round_trips() {
        let record = run(&base_config(13)).unwrap();
        let json = record.to_json_pretty();
        let back = RunRecord::from_json(&json).unwrap();
        assert_eq!(record, back);
    }

    #[test]
    fn baseline_is_deterministic_with_monotone_regret() {
        let config = base_config(17);
        let a = run_random_baseline(&config).unwrap();
        let b = run_random_baseline(&config).unwrap();
        assert_eq!(a, b);
        for w in a.iterations.windows(2) {
            assert!(w[1].regret <= w[0].regret);
            assert!(w[1].best_so_far >= w[0].best_so_far);
        }
        for rec in &a.iterations {
            assert!(rec.qubo_energy.is_none());
            assert_eq!(
                classify(&a.codebook, &rec.z_star).unwrap(),
                rec.solution_class
            );
        }
    }

    // Probability-1 statement: finite uniform sampling never hits the
    // measure-zero argmax, so the baseline's final regret stays positive.
    #[test]
    fn baseline_final_regret_is_positive_on_hartmann() {
        for seed in 0..10 {
            let mut config = base_config(seed);
            config.num_initial = 15;
            config.num_iterations = 100;
            let record = run_random_baseline(&config).unwrap();
            assert!(record.final_regret() > 0.0, "seed {seed}");
        }
    }

    #[test]
    fn shared_initial_points_between_loop_and_baseline() {
        let config = base_config(23);
        let a = run(&config).unwrap();
        let b = run_random_baseline(&config).unwrap();
        assert_eq!(a.initial_xs, b.initial_xs);
        assert_eq!(a.codebook, b.codebook);
    }

    #[test]
    fn class_statistics_all_decodable() {
        let mut record = run(&base_config(29)).unwrap();
        for rec in &mut record.iterations {
            rec.solution_class = SolutionClass::Decodable;
        }
        let f = class_statistics(&record).unwrap();
        assert_eq!((f.empty, f.admissible, f.decodable), (0.0, 0.0, 1.0));
    }

    #[test]
    fn objective_failure_aborts_with_partial_record() {
        let calls = Arc::new(AtomicUsize::new(0));
        let calls_in = calls.clone();
        // Healthy for 5 initials plus 2 iterations, then NaN.
        let flaky = Objective::new("flaky", 2, 1.0, true, move |x: &[f64]| {
            let n = calls_in.fetch_add(1, Ordering::SeqCst);
            if n < 7 {
                x[0]
            } else {
                f64::NAN
            }
        });
        let config = RunConfig {
            objective: "flaky".into(),
            dim: 2,
            num_bits: 10,
            subspace_dim: 1,
            coverage_n: 3,
            num_initial: 5,
            num_iterations: 10,
            solver: SolverChoice::Greedy { restarts: 4 },
            seed: 31,
        };
        let err = run_with_objective(&config, &flaky).unwrap_err();
        match err {
            Error::RunAborted { partial, .. } => {
                assert_eq!(partial.initial_xs.len(), 5);
                assert_eq!(partial.iterations.len(), 2);
                assert!(partial.class_fractions.is_some());
            }
            other => panic!("expected RunAborted, got {other}"),
        }
    }

    #[test]
    fn invalid_configs_are_rejected_before_work() {
        let mut config = base_config(1);
        config.dim = 5;
        assert!(run(&config).is_err());
        let mut config = base_config(1);
        config.num_initial = 0;
        assert!(run(&config).is_err());
        let mut config = base_config(1);
        config.subspace_dim = 7;
        assert!(run(&config).is_err());
        let mut config = base_config(1);
        config.objective = "nope".into();
        assert!(matches!(run(&config), Err(Error::UnknownObjective { .. })));
    }

    #[test]
    fn csv_has_one_row_per_iteration() {
        let record = run(&base_config(37)).unwrap();
        let mut buf = Vec::new();
        record.write_iterations_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + record.iterations.len());
        assert_eq!(lines[0], "index,class,y_star,best_so_far,regret");
        assert!(lines[1].starts_with("1,"));
    }

    #[test]
    fn config_json_round_trip_is_fixed_point() {
        let config = base_config(43);
        let json = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(config, back);
        assert_eq!(json, serde_json::to_string(&back).unwrap());
    }
}
