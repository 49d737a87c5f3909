//! Benchmark black-box functions behind a uniform maximization interface.
//!
//! Every objective lives on the unit cube `[0,1]^d`: the textbook domains
//! are affinely rescaled, and minimization benchmarks are negated so that
//! larger is better throughout. `optimum_value` upper-bounds every
//! evaluation, which keeps regrets nonnegative.

use std::sync::Arc;

use crate::{Error, Result};

/// A black-box benchmark with a known optimum, maximization convention.
#[derive(Clone)]
pub struct Objective {
    name: String,
    dim: usize,
    optimum_value: f64,
    optimum_known: bool,
    eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Objective")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("optimum_value", &self.optimum_value)
            .field("optimum_known", &self.optimum_known)
            .finish()
    }
}

impl Objective {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        optimum_value: f64,
        optimum_known: bool,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Objective {
            name: name.into(),
            dim,
            optimum_value,
            optimum_known,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn optimum_known(&self) -> bool {
        self.optimum_known
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim, "point dimension mismatch");
        (self.eval)(x)
    }
}

/// Hartmann-6 on `[0,1]^6`, negated to maximization. The literature value
/// 3.32237 upper-bounds the reachable maximum (~3.3223680114).
pub fn hartmann6() -> Objective {
    const ALPHA: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
    const A: [[f64; 6]; 4] = [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ];
    const P: [[f64; 6]; 4] = [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ];
    Objective::new("hartmann6", 6, 3.32237, true, |x: &[f64]| {
        (0..4)
            .map(|i| {
                let inner: f64 = (0..6).map(|j| A[i][j] * (x[j] - P[i][j]).powi(2)).sum();
                ALPHA[i] * (-inner).exp()
            })
            .sum()
    })
}

/// Rastrigin rescaled from `[-5.12, 5.12]^d` to the unit cube and negated.
/// The optimum is exactly 0 at the cube center.
pub fn rastrigin(dim: usize) -> Result<Objective> {
    if dim == 0 {
        return Err(Error::invalid("rastrigin requires dim >= 1"));
    }
    let name = format!("rastrigin-{dim}");
    Ok(Objective::new(name, dim, 0.0, true, move |t: &[f64]| {
        -t.iter()
            .map(|&ti| {
                let x = 10.24 * (ti - 0.5);
                x * x - 10.0 * (2.0 * std::f64::consts::PI * x).cos() + 10.0
            })
            .sum::<f64>()
    }))
}

/// Per-coordinate minimizer of the Styblinski-Tang term on `[-5, 5]`.
const ST_XSTAR: f64 = -2.9035340277711783;

fn styblinski_tang_term(x: f64) -> f64 {
    (x.powi(4) - 16.0 * x * x + 5.0 * x) / 2.0
}

/// Styblinski-Tang rescaled from `[-5, 5]^d` to the unit cube and negated.
/// The optimum is `d * 39.16616570...` at `t_i = (x* + 5) / 10`.
pub fn styblinski_tang(dim: usize) -> Result<Objective> {
    if dim == 0 {
        return Err(Error::invalid("styblinski-tang requires dim >= 1"));
    }
    let name = format!("styblinski-tang-{dim}");
    let optimum = dim as f64 * -styblinski_tang_term(ST_XSTAR);
    Ok(Objective::new(name, dim, optimum, true, move |t: &[f64]| {
        -t.iter()
            .map(|&ti| styblinski_tang_term(10.0 * (ti - 0.5)))
            .sum::<f64>()
    }))
}

const AVAILABLE: &str = "hartmann6, rastrigin-<d>, styblinski-tang-<d>";

/// Look up an objective by registry name, e.g. `hartmann6` or `rastrigin-10`.
pub fn registry_lookup(name: &str) -> Result<Objective> {
    let unknown = || Error::UnknownObjective {
        name: name.to_string(),
        available: AVAILABLE.to_string(),
    };
    if name == "hartmann6" {
        return Ok(hartmann6());
    }
    if let Some(d) = name.strip_prefix("rastrigin-") {
        let dim: usize = d.parse().map_err(|_| unknown())?;
        return rastrigin(dim);
    }
    if let Some(d) = name.strip_prefix("styblinski-tang-") {
        let dim: usize = d.parse().map_err(|_| unknown())?;
        return styblinski_tang(dim);
    }
    Err(unknown())
}
