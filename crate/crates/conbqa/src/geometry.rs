//! Box algebra on codes.
//!
//! For a code `z`, `P(z)` is the intersection of the rectangles with bit 1
//! and `N(z)` the union of the rectangles with bit 0. A code decodes to a
//! continuous point iff `P(z) - N(z)` is nonempty. This module computes
//! `P(z)`, tests contact with `N(z)`, classifies codes into the
//! empty / admissible / decodable trichotomy, and decodes codes to points.
//!
//! All interval arithmetic is closed: boundary contact counts as
//! intersection. The empty intersection (all-zero code) is the full cube.

use rand::Rng;

use crate::coding::{BitVector, Codebook, Rectangle};
use crate::{Error, Result};

/// Rejection budget for sampling from `P - N` in the admissible case.
pub const DECODE_MAX_ATTEMPTS: usize = 100;

/// A nonempty axis-parallel box in `[0,1]^d` with every coordinate
/// explicitly bounded (unconstrained coordinates carry `[0,1]`).
///
/// Emptiness is not representable here; operations that can produce an
/// empty region return `Option<AxisBox>`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisBox {
    lowers: Vec<f64>,
    uppers: Vec<f64>,
}

impl AxisBox {
    /// The full cube `[0,1]^d`.
    pub fn full(dim: usize) -> Self {
        AxisBox {
            lowers: vec![0.0; dim],
            uppers: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lowers.len()
    }

    pub fn lowers(&self) -> &[f64] {
        &self.lowers
    }

    pub fn uppers(&self) -> &[f64] {
        &self.uppers
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lowers.iter().zip(&self.uppers))
                .all(|(&xi, (&l, &u))| l <= xi && xi <= u)
    }

    /// Mean edge length; degenerate (point-thin) coordinates contribute 0.
    pub fn mean_edge_length(&self) -> f64 {
        let d = self.dim() as f64;
        self.lowers
            .iter()
            .zip(&self.uppers)
            .map(|(&l, &u)| u - l)
            .sum::<f64>()
            / d
    }

    /// A uniform sample from the box.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lowers
            .iter()
            .zip(&self.uppers)
            .map(|(&l, &u)| l + (u - l) * rng.gen::<f64>())
            .collect()
    }
}

/// Where a solver's code landed, following the trichotomy of outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SolutionClass {
    /// `P(z)` is empty; no point carries this code.
    Empty,
    /// `P(z)` is nonempty but touches `N(z)`; decoding may land off-code.
    Admissible,
    /// `P(z)` is nonempty and avoids `N(z)` entirely.
    Decodable,
}

impl std::fmt::Display for SolutionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolutionClass::Empty => "Empty",
            SolutionClass::Admissible => "Admissible",
            SolutionClass::Decodable => "Decodable",
        };
        f.write_str(s)
    }
}

fn check_len(codebook: &Codebook, z: &BitVector) -> Result<()> {
    if z.len() != codebook.num_bits() {
        return Err(Error::contract(format!(
            "code length {} vs codebook m = {}",
            z.len(),
            codebook.num_bits()
        )));
    }
    Ok(())
}

/// Intersection of all positive rectangles of `z`, or `None` when empty.
///
/// The intersection over the empty family (all-zero `z`) is the full cube.
pub fn positive_intersection(codebook: &Codebook, z: &BitVector) -> Result<Option<AxisBox>> {
    check_len(codebook, z)?;
    let mut boxed = AxisBox::full(codebook.dim());
    for k in z.ones() {
        let rect = codebook.rectangle(k);
        for (&c, iv) in rect.coords().iter().zip(rect.intervals()) {
            boxed.lowers[c] = boxed.lowers[c].max(iv.lower());
            boxed.uppers[c] = boxed.uppers[c].min(iv.upper());
            if boxed.lowers[c] > boxed.uppers[c] {
                return Ok(None);
            }
        }
    }
    Ok(Some(boxed))
}

/// Closed box-box intersection between a rectangle and a full-dimensional box.
fn rectangle_meets_box(rect: &Rectangle, p: &AxisBox) -> bool {
    rect.coords()
        .iter()
        .zip(rect.intervals())
        .all(|(&c, iv)| iv.lower().max(p.lowers[c]) <= iv.upper().min(p.uppers[c]))
}

/// Whether any negative rectangle of `z` intersects the box `p`.
///
/// `N(z)` is a union, so `P` meets `N` iff `P` meets some single negative
/// rectangle; the pairwise test is exact.
pub fn touches_negative(codebook: &Codebook, z: &BitVector, p: &AxisBox) -> Result<bool> {
    check_len(codebook, z)?;
    if p.dim() != codebook.dim() {
        return Err(Error::contract(format!(
            "box dim {} vs codebook dim {}",
            p.dim(),
            codebook.dim()
        )));
    }
    Ok(z.bits()
        .iter()
        .enumerate()
        .filter(|(_, &bit)| !bit)
        .any(|(k, _)| rectangle_meets_box(codebook.rectangle(k), p)))
}

/// Classify a code as empty, admissible, or decodable.
pub fn classify(codebook: &Codebook, z: &BitVector) -> Result<SolutionClass> {
    match positive_intersection(codebook, z)? {
        None => Ok(SolutionClass::Empty),
        Some(p) => {
            if touches_negative(codebook, z, &p)? {
                Ok(SolutionClass::Admissible)
            } else {
                Ok(SolutionClass::Decodable)
            }
        }
    }
}

/// Decode a code to a continuous point. Total by fallback:
///
/// - empty code: uniform over the whole cube;
/// - decodable: uniform over `P(z)`;
/// - admissible: rejection-sample `P(z)` against the negative rectangles for
///   up to [`DECODE_MAX_ATTEMPTS`] draws, then accept the last draw from
///   `P(z)` even if it lies inside some negative rectangle.
pub fn decode<R: Rng + ?Sized>(codebook: &Codebook, z: &BitVector, rng: &mut R) -> Result<Vec<f64>> {
    let p = match positive_intersection(codebook, z)? {
        None => return Ok(AxisBox::full(codebook.dim()).sample_uniform(rng)),
        Some(p) => p,
    };
    if !touches_negative(codebook, z, &p)? {
        return Ok(p.sample_uniform(rng));
    }
    let negatives: Vec<&Rectangle> = z
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &bit)| !bit)
        .map(|(k, _)| codebook.rectangle(k))
        .collect();
    let mut candidate = p.sample_uniform(rng);
    for _ in 0..DECODE_MAX_ATTEMPTS {
        if !negatives.iter().any(|r| r.contains(&candidate)) {
            return Ok(candidate);
        }
        candidate = p.sample_uniform(rng);
    }
    Ok(candidate)
}
