//! Coding-resolution measurement.
//!
//! The resolution of a codebook at a probe point is the mean edge length of
//! the intersection of all rectangles enclosing the probe: small boxes mean
//! a decoder pins the point down tightly. A study draws uniform probes
//! against one codebook and reports the mean and spread of those sizes.

use rand::Rng;

use crate::coding::{encode, generate_codebook};
use crate::geometry::{positive_intersection, AxisBox};
use crate::{Error, Result};

/// One cell of a resolution study.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ResolutionPoint {
    pub dim: usize,
    pub num_bits: usize,
    pub subspace_dim: usize,
    pub coverage_n: usize,
    pub num_probe_points: usize,
    pub mean_size: f64,
    pub std_size: f64,
}

/// Mean edge length of a box, averaging over all `d` coordinates;
/// unconstrained coordinates contribute length 1.
pub fn rectangle_size(boxed: &AxisBox) -> f64 {
    boxed.mean_edge_length()
}

/// Generate one codebook and measure the enclosing-intersection size at
/// `num_probe_points` uniform probes. The probe always lies inside its own
/// positive intersection, so the box is never empty. `std_size` is the
/// sample standard deviation (0 for a single probe).
pub fn resolution_study<R: Rng + ?Sized>(
    dim: usize,
    num_bits: usize,
    subspace_dim: usize,
    coverage_n: usize,
    num_probe_points: usize,
    rng: &mut R,
) -> Result<ResolutionPoint> {
    if num_probe_points == 0 {
        return Err(Error::invalid("num_probe_points must be >= 1"));
    }
    let codebook = generate_codebook(rng, dim, subspace_dim, num_bits, coverage_n)?;
    let mut sizes = Vec::with_capacity(num_probe_points);
    for _ in 0..num_probe_points {
        let probe: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
        let z = encode(&codebook, &probe)?;
        let boxed = positive_intersection(&codebook, &z)?
            .expect("box of rectangles containing the probe contains the probe");
        debug_assert!(boxed.contains(&probe));
        sizes.push(rectangle_size(&boxed));
    }
    let n = sizes.len() as f64;
    let mean = sizes.iter().sum::<f64>() / n;
    let std = if sizes.len() > 1 {
        (sizes.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(ResolutionPoint {
        dim,
        num_bits,
        subspace_dim,
        coverage_n,
        num_probe_points,
        mean_size: mean,
        std_size: std,
    })
}
