//! CONBQA: continuous black-box optimization through a binary surrogate.
//!
//! The optimization loop works on `[0,1]^d`. Continuous points are encoded
//! into bit vectors by random subspace coding (membership in random
//! axis-parallel rectangles), a nonnegative linear model is fitted to the
//! encoded dataset, and the next candidate is obtained by minimizing a
//! penalized QUBO over the codes and decoding the winner back to a point.
//!
//! Modules follow the pipeline:
//!
//! - [`coding`]: rectangle sampling, codebooks, and the encoder
//! - [`geometry`]: box algebra on codes, solution classification, decoding
//! - [`regression`]: min-max normalization and nonnegative least squares
//! - [`qubo`]: the penalized quadratic model and its interchange format
//! - [`solvers`]: exhaustive / greedy / simulated-annealing / external solvers
//! - [`driver`]: the outer optimization loop with regret tracking
//! - [`objectives`]: benchmark functions with known optima on `[0,1]^d`
//! - [`analysis`]: coding-resolution measurements

pub mod analysis;
pub mod coding;
pub mod driver;
mod error;
pub mod geometry;
pub mod objectives;
pub mod qubo;
pub mod regression;
pub mod rng;
pub mod solvers;

pub use coding::{encode, generate_codebook, BitVector, Codebook, Interval, Rectangle};
pub use error::Error;
pub use geometry::{classify, decode, positive_intersection, AxisBox, SolutionClass};
pub use qubo::{build_qubo, feasible_for_c, Qubo};
pub use regression::{acquisition, fit_nnls, minmax_normalize, Weights};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
