//! The penalized quadratic model over codes.
//!
//! Maximizing the acquisition subject to the no-disjoint-pair constraint is
//! folded into one unconstrained minimization:
//!
//! ```text
//! min_z  -A * sum_i w_i z_i  +  B * sum_{(i,j) disjoint, i<j} z_i z_j
//! ```
//!
//! with `A = 1 / max_k w_k` and `B = 1`, which makes every linear gain at
//! most the cost of a single violated pair.

use std::collections::BTreeMap;

use crate::coding::{BitVector, Codebook};
use crate::regression::Weights;
use crate::{Error, Result};

/// Sparse QUBO coefficients, minimization convention.
///
/// Absent keys mean coefficient zero. Quadratic keys are ordered `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    num_vars: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

impl Qubo {
    pub fn new(
        num_vars: usize,
        linear: BTreeMap<usize, f64>,
        quadratic: BTreeMap<(usize, usize), f64>,
    ) -> Result<Self> {
        if let Some(&i) = linear.keys().find(|&&i| i >= num_vars) {
            return Err(Error::invalid(format!(
                "linear index {i} out of range for {num_vars} variables"
            )));
        }
        for &(i, j) in quadratic.keys() {
            if i >= j {
                return Err(Error::invalid(format!(
                    "quadratic key ({i},{j}) must have i < j"
                )));
            }
            if j >= num_vars {
                return Err(Error::invalid(format!(
                    "quadratic index {j} out of range for {num_vars} variables"
                )));
            }
        }
        if linear.values().chain(quadratic.values()).any(|c| !c.is_finite()) {
            return Err(Error::Numeric("QUBO coefficients must be finite".into()));
        }
        Ok(Qubo {
            num_vars,
            linear,
            quadratic,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    /// Objective value of a code.
    pub fn energy(&self, z: &BitVector) -> Result<f64> {
        if z.len() != self.num_vars {
            return Err(Error::contract(format!(
                "code length {} vs {} variables",
                z.len(),
                self.num_vars
            )));
        }
        let mut total = 0.0;
        for (&i, &c) in &self.linear {
            if z.get(i) {
                total += c;
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if z.get(i) && z.get(j) {
                total += c;
            }
        }
        Ok(total)
    }

    /// The energy terms active for `z`, as exact f64 summands. Used by
    /// solvers that need exact tie resolution among near-equal energies.
    pub(crate) fn active_terms(&self, z: &BitVector) -> Vec<f64> {
        let mut terms = Vec::new();
        for (&i, &c) in &self.linear {
            if z.get(i) {
                terms.push(c);
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if z.get(i) && z.get(j) {
                terms.push(c);
            }
        }
        terms
    }

    /// Interchange JSON: fixed field order, numerically sorted keys,
    /// round-trip decimal floats. Deterministic byte-for-byte.
    pub fn to_interchange_json(&self) -> String {
        fn fmt_f64(v: f64) -> String {
            serde_json::to_string(&v).expect("finite f64 serializes")
        }
        let mut s = String::new();
        s.push_str("{\"num_vars\":");
        s.push_str(&self.num_vars.to_string());
        s.push_str(",\"sense\":\"min\",\"linear\":{");
        for (n, (i, c)) in self.linear.iter().enumerate() {
            if n > 0 {
                s.push(',');
            }
            s.push_str(&format!("\"{i}\":{}", fmt_f64(*c)));
        }
        s.push_str("},\"quadratic\":{");
        for (n, ((i, j), c)) in self.quadratic.iter().enumerate() {
            if n > 0 {
                s.push(',');
            }
            s.push_str(&format!("\"{i},{j}\":{}", fmt_f64(*c)));
        }
        s.push_str("}}");
        s
    }

    /// Parse the interchange format produced by [`Qubo::to_interchange_json`].
    pub fn from_interchange_json(text: &str) -> Result<Qubo> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            num_vars: usize,
            sense: String,
            linear: BTreeMap<String, f64>,
            quadratic: BTreeMap<String, f64>,
        }
        let repr: Repr =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("QUBO file: {e}")))?;
        if repr.sense != "min" {
            return Err(Error::Parse(format!(
                "unsupported sense '{}', expected 'min'",
                repr.sense
            )));
        }
        let mut linear = BTreeMap::new();
        for (key, c) in repr.linear {
            let i: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("bad linear key '{key}'")))?;
            if linear.insert(i, c).is_some() {
                return Err(Error::Parse(format!("duplicate linear key {i}")));
            }
        }
        let mut quadratic = BTreeMap::new();
        for (key, c) in repr.quadratic {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad quadratic key '{key}'")))?;
            let i: usize = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad quadratic key '{key}'")))?;
            let j: usize = b
                .parse()
                .map_err(|_| Error::Parse(format!("bad quadratic key '{key}'")))?;
            if quadratic.insert((i, j), c).is_some() {
                return Err(Error::Parse(format!("duplicate quadratic key ({i},{j})")));
            }
        }
        Qubo::new(repr.num_vars, linear, quadratic)
    }
}

/// Build the penalized QUBO from fitted weights and the codebook's
/// disjoint-rectangle pairs.
///
/// `A = 1/max_k w_k` (1 when all weights are zero, where any finite choice
/// leaves the same trivial optimizer) and `B = 1`. Zero weights contribute
/// no linear term.
pub fn build_qubo(weights: &Weights, codebook: &Codebook) -> Result<Qubo> {
    let m = codebook.num_bits();
    if weights.len() != m {
        return Err(Error::contract(format!(
            "{} weights vs {} rectangles",
            weights.len(),
            m
        )));
    }
    let max = weights.max();
    let mut linear = BTreeMap::new();
    for (i, &w) in weights.as_slice().iter().enumerate() {
        if w > 0.0 {
            // A*w computed as w/max so the top weight maps to exactly -1.
            linear.insert(i, -(w / max));
        }
    }
    let quadratic = codebook
        .disjoint_pairs()
        .iter()
        .map(|&pair| (pair, 1.0))
        .collect();
    Qubo::new(m, linear, quadratic)
}

/// Whether `z` satisfies the no-disjoint-positive-pair constraint, i.e. its
/// positive set is a clique of the overlap graph.
pub fn feasible_for_c(codebook: &Codebook, z: &BitVector) -> Result<bool> {
    if z.len() != codebook.num_bits() {
        return Err(Error::contract(format!(
            "code length {} vs codebook m = {}",
            z.len(),
            codebook.num_bits()
        )));
    }
    Ok(codebook
        .disjoint_pairs()
        .iter()
        .all(|&(i, j)| !(z.get(i) && z.get(j))))
}
