//! Surrogate fitting: min-max normalization and nonnegative least squares.
//!
//! The surrogate is `y = sum_k w_k z_k` with `w_k >= 0`, fitted by
//! least squares on the encoded dataset. Nonnegativity is what later makes
//! the constrained code optimum decodable, so the solver has to deliver KKT
//! conditions to tight tolerance, not merely clamped weights.

use nalgebra::{DMatrix, DVector};

use crate::coding::BitVector;
use crate::{Error, Result};

/// Dual-feasibility threshold for entering the passive set.
const ENTRY_TOL: f64 = 1e-11;
/// Weights at or below this after a restricted step are treated as zero.
const DROP_TOL: f64 = 1e-12;

/// Fitted nonnegative model weights.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("weights must be finite".into()));
        }
        if w.iter().any(|&v| v < 0.0) {
            return Err(Error::invalid("weights must be nonnegative"));
        }
        Ok(Weights(w))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Largest weight, 0 for an all-zero vector.
    pub fn max(&self) -> f64 {
        self.0.iter().fold(0.0f64, |acc, &v| acc.max(v))
    }
}

/// Min-max normalize to `[0,1]`; a constant sequence maps to all zeros.
pub fn minmax_normalize(ys: &[f64]) -> Vec<f64> {
    debug_assert!(ys.iter().all(|v| v.is_finite()));
    let Some(&first) = ys.first() else {
        return Vec::new();
    };
    let (min, max) = ys.iter().fold((first, first), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    if max == min {
        return vec![0.0; ys.len()];
    }
    let span = max - min;
    ys.iter().map(|&v| (v - min) / span).collect()
}

/// The fitted acquisition value `sum_k w_k z_k`.
pub fn acquisition(weights: &Weights, z: &BitVector) -> Result<f64> {
    if weights.len() != z.len() {
        return Err(Error::contract(format!(
            "{} weights vs {} bits",
            weights.len(),
            z.len()
        )));
    }
    Ok(z.ones().map(|k| weights.0[k]).sum())
}

/// Nonnegative least squares on a binary design.
///
/// Active-set iteration in the Lawson-Hanson style: grow a passive set by
/// the most negative gradient coordinate, solve the restricted least-squares
/// problem, and step back along the segment to the old iterate whenever the
/// restricted solution leaves the cone. Restricted solves go through normal
/// equations with an SVD fallback for rank-deficient passive sets.
pub fn fit_nnls(zs: &[BitVector], ys: &[f64]) -> Result<Weights> {
    if zs.is_empty() {
        return Err(Error::invalid("need at least one data point"));
    }
    if zs.len() != ys.len() {
        return Err(Error::contract(format!(
            "{} codes vs {} outcomes",
            zs.len(),
            ys.len()
        )));
    }
    let m = zs[0].len();
    if m == 0 {
        return Err(Error::invalid("codes must have at least one bit"));
    }
    if zs.iter().any(|z| z.len() != m) {
        return Err(Error::contract("codes of unequal length"));
    }
    if ys.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("outcomes must be finite".into()));
    }
    let n = zs.len();
    let a = DMatrix::from_fn(n, m, |i, k| if zs[i].get(k) { 1.0 } else { 0.0 });
    let y = DVector::from_column_slice(ys);
    Ok(Weights(nnls_dense(&a, &y)))
}

/// Least-squares solution of the columns of `a` indexed by `passive`.
fn restricted_ls(a: &DMatrix<f64>, y: &DVector<f64>, passive: &[usize]) -> DVector<f64> {
    let sub = a.select_columns(passive.iter());
    let gram = sub.transpose() * &sub;
    let rhs = sub.transpose() * y;
    if let Some(chol) = gram.clone().cholesky() {
        return chol.solve(&rhs);
    }
    // Rank-deficient passive set: minimum-norm least squares.
    sub.svd(true, true)
        .solve(y, 1e-12)
        .expect("SVD solve with computed u/v cannot fail")
}

fn nnls_dense(a: &DMatrix<f64>, y: &DVector<f64>) -> Vec<f64> {
    let m = a.ncols();
    let mut x = DVector::<f64>::zeros(m);
    let mut in_passive = vec![false; m];
    let mut banned = vec![false; m];
    let max_outer = 10 * m;

    for _ in 0..max_outer {
        let grad = a.transpose() * (a * &x - y);
        let mut entering: Option<(usize, f64)> = None;
        for k in 0..m {
            if in_passive[k] || banned[k] {
                continue;
            }
            let dual = -grad[k];
            if dual > ENTRY_TOL && entering.map_or(true, |(_, best)| dual > best) {
                entering = Some((k, dual));
            }
        }
        let Some((j, _)) = entering else { break };
        in_passive[j] = true;

        let mut moved = false;
        for _ in 0..=m {
            let passive: Vec<usize> = (0..m).filter(|&k| in_passive[k]).collect();
            let z = restricted_ls(a, y, &passive);
            if z.iter().all(|&v| v > 0.0) {
                x.fill(0.0);
                for (idx, &k) in passive.iter().enumerate() {
                    x[k] = z[idx];
                }
                moved = true;
                break;
            }
            // Largest feasible step toward z keeping x in the cone.
            let mut alpha = f64::INFINITY;
            for (idx, &k) in passive.iter().enumerate() {
                if z[idx] <= 0.0 && x[k] - z[idx] > 0.0 {
                    alpha = alpha.min(x[k] / (x[k] - z[idx]));
                }
            }
            if !alpha.is_finite() {
                // Degenerate entry: the restricted solution pinned the new
                // coordinate at zero with nothing to interpolate against.
                x.fill(0.0);
                for (idx, &k) in passive.iter().enumerate() {
                    x[k] = z[idx].max(0.0);
                    if x[k] <= DROP_TOL {
                        x[k] = 0.0;
                        in_passive[k] = false;
                    }
                }
                break;
            }
            for (idx, &k) in passive.iter().enumerate() {
                x[k] += alpha * (z[idx] - x[k]);
                if x[k] <= DROP_TOL {
                    x[k] = 0.0;
                    in_passive[k] = false;
                }
            }
        }
        if moved {
            banned.fill(false);
        } else if !in_passive[j] {
            // Entering variable was immediately expelled; do not reconsider
            // it until some other coordinate makes progress.
            banned[j] = true;
        }
    }

    x.iter().map(|&v| v.max(0.0)).collect()
}
