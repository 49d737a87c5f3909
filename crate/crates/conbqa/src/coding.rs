//! Random subspace coding.
//!
//! A codebook is a list of `m` axis-parallel rectangles, each constraining a
//! random subset of `d_s` coordinates to random closed subintervals of
//! `[0,1]`. Encoding maps a point `x` in `[0,1]^d` to the `m`-bit membership
//! vector `z_k = I(x in R_k)`.
//!
//! Interval sampling has the coverage property: any fixed `t` in `[0,1]`
//! lands inside a sampled interval with probability exactly `1/N`. The
//! construction splits `[0,1]` into `N` cells by `N-1` uniform breakpoints
//! and picks one cell uniformly; the `N` spacings are exchangeable, so each
//! cell contains `t` with equal probability.

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A closed subinterval of `[0,1]` with strictly ordered endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lower: f64,
    upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) {
            return Err(Error::Numeric("interval endpoints must be finite".into()));
        }
        if !(0.0..=1.0).contains(&lower) || !(0.0..=1.0).contains(&upper) {
            return Err(Error::invalid(format!(
                "interval [{lower}, {upper}] not within [0,1]"
            )));
        }
        if lower >= upper {
            return Err(Error::invalid(format!(
                "interval requires lower < upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Interval { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Closed-interval membership.
    pub fn contains(&self, t: f64) -> bool {
        self.lower <= t && t <= self.upper
    }

    /// Closed intervals intersect iff neither lies strictly beyond the other;
    /// boundary contact counts.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lower.max(other.lower) <= self.upper.min(other.upper)
    }
}

/// An axis-parallel rectangle constraining a sorted subset of coordinates.
///
/// Coordinates absent from `coords` are unconstrained (implicitly `[0,1]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    coords: Vec<usize>,
    intervals: Vec<Interval>,
}

impl Rectangle {
    pub fn new(coords: Vec<usize>, intervals: Vec<Interval>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("rectangle must constrain >= 1 coordinate"));
        }
        if coords.len() != intervals.len() {
            return Err(Error::contract(format!(
                "{} coordinates vs {} intervals",
                coords.len(),
                intervals.len()
            )));
        }
        if coords.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "rectangle coordinates must be distinct and ascending",
            ));
        }
        Ok(Rectangle { coords, intervals })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// The interval constraining `coord`, if it is constrained at all.
    pub fn constraint_on(&self, coord: usize) -> Option<&Interval> {
        self.coords
            .binary_search(&coord)
            .ok()
            .map(|i| &self.intervals[i])
    }

    /// Membership test on all constrained coordinates (closed intervals).
    pub fn contains(&self, x: &[f64]) -> bool {
        self.coords
            .iter()
            .zip(&self.intervals)
            .all(|(&c, iv)| iv.contains(x[c]))
    }

    /// Two rectangles intersect iff on every coordinate constrained by both,
    /// the intervals intersect. A coordinate constrained by only one side
    /// imposes nothing.
    pub fn intersects(&self, other: &Rectangle) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.coords.len() && j < other.coords.len() {
            match self.coords[i].cmp(&other.coords[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if !self.intervals[i].intersects(&other.intervals[j]) {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }
}

/// An `m`-bit code: the QUBO decision variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitVector(vec![false; len])
    }

    /// Parse 0/1 integers, rejecting anything else.
    pub fn from_ints(ints: &[u8]) -> Result<Self> {
        ints.iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Parse(format!("bit value {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BitVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> bool {
        self.0[k]
    }

    pub fn set(&mut self, k: usize, value: bool) {
        self.0[k] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Indices of the positive bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(k, &b)| b.then_some(k))
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn to_ints(&self) -> Vec<u8> {
        self.0.iter().map(|&b| b as u8).collect()
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_ints().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ints = Vec::<u8>::deserialize(deserializer)?;
        BitVector::from_ints(&ints).map_err(D::Error::custom)
    }
}

/// The ordered rectangle list defining an encoding, plus the precomputed
/// pairwise-intersection structure of its rectangles.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    dim: usize,
    subspace_dim: usize,
    coverage_n: usize,
    rectangles: Vec<Rectangle>,
    /// Pairs (i, j), i < j, whose rectangles do NOT intersect, sorted.
    /// The overlap graph is the complement; disjoint pairs are the sparse
    /// side in high dimension and are what the QUBO penalty consumes.
    disjoint_pairs: Vec<(usize, usize)>,
}

impl Codebook {
    /// Build a codebook from explicit rectangles, recomputing the
    /// intersection structure from scratch.
    pub fn from_rectangles(
        dim: usize,
        subspace_dim: usize,
        coverage_n: usize,
        rectangles: Vec<Rectangle>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim must be >= 1"));
        }
        if subspace_dim == 0 || subspace_dim > dim {
            return Err(Error::invalid(format!(
                "subspace_dim {subspace_dim} not in 1..={dim}"
            )));
        }
        if coverage_n < 2 {
            return Err(Error::invalid("coverage_n must be >= 2"));
        }
        if rectangles.is_empty() {
            return Err(Error::invalid("codebook needs at least one rectangle"));
        }
        for (k, r) in rectangles.iter().enumerate() {
            if r.coords.len() != subspace_dim {
                return Err(Error::invalid(format!(
                    "rectangle {k} constrains {} coordinates, expected {subspace_dim}",
                    r.coords.len()
                )));
            }
            if let Some(&c) = r.coords.last() {
                if c >= dim {
                    return Err(Error::invalid(format!(
                        "rectangle {k} constrains coordinate {c} >= dim {dim}"
                    )));
                }
            }
        }
        let mut disjoint_pairs = Vec::new();
        for i in 0..rectangles.len() {
            for j in (i + 1)..rectangles.len() {
                if !rectangles[i].intersects(&rectangles[j]) {
                    disjoint_pairs.push((i, j));
                }
            }
        }
        Ok(Codebook {
            dim,
            subspace_dim,
            coverage_n,
            rectangles,
            disjoint_pairs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subspace_dim(&self) -> usize {
        self.subspace_dim
    }

    pub fn coverage_n(&self) -> usize {
        self.coverage_n
    }

    /// Number of rectangles, i.e. the code length `m`.
    pub fn num_bits(&self) -> usize {
        self.rectangles.len()
    }

    pub fn rectangles(&self) -> &[Rectangle] {
        &self.rectangles
    }

    pub fn rectangle(&self, k: usize) -> &Rectangle {
        &self.rectangles[k]
    }

    /// Pairs of rectangles with empty intersection, `(i, j)` with `i < j`.
    pub fn disjoint_pairs(&self) -> &[(usize, usize)] {
        &self.disjoint_pairs
    }

    /// Whether rectangles `i` and `j` intersect (an edge of the overlap graph).
    pub fn overlaps(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let pair = (i.min(j), i.max(j));
        self.disjoint_pairs.binary_search(&pair).is_err()
    }

    /// All edges of the overlap graph, `(i, j)` with `i < j`.
    pub fn overlap_edges(&self) -> Vec<(usize, usize)> {
        let m = self.num_bits();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                if self.overlaps(i, j) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Serialized form: intersection structure is recomputed on load, not stored.
#[derive(Serialize, Deserialize)]
struct CodebookRepr {
    dim: usize,
    subspace_dim: usize,
    coverage_n: usize,
    rectangles: Vec<RectangleRepr>,
}

#[derive(Serialize, Deserialize)]
struct RectangleRepr {
    coords: Vec<usize>,
    lowers: Vec<f64>,
    uppers: Vec<f64>,
}

impl Serialize for Codebook {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CodebookRepr {
            dim: self.dim,
            subspace_dim: self.subspace_dim,
            coverage_n: self.coverage_n,
            rectangles: self
                .rectangles
                .iter()
                .map(|r| RectangleRepr {
                    coords: r.coords.clone(),
                    lowers: r.intervals.iter().map(Interval::lower).collect(),
                    uppers: r.intervals.iter().map(Interval::upper).collect(),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Codebook {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CodebookRepr::deserialize(deserializer)?;
        let rectangles = repr
            .rectangles
            .into_iter()
            .map(|r| {
                if r.lowers.len() != r.uppers.len() {
                    return Err(Error::Parse("lowers/uppers length mismatch".into()));
                }
                let intervals = r
                    .lowers
                    .iter()
                    .zip(&r.uppers)
                    .map(|(&l, &u)| Interval::new(l, u))
                    .collect::<Result<Vec<_>>>()?;
                Rectangle::new(r.coords, intervals)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Codebook::from_rectangles(repr.dim, repr.subspace_dim, repr.coverage_n, rectangles)
            .map_err(D::Error::custom)
    }
}

/// Sample an interval containing any fixed point of `[0,1]` with probability
/// exactly `1/coverage_n`.
///
/// Draws `N-1` uniform breakpoints, splits `[0,1]` into `N` cells, and picks
/// one cell uniformly. Zero-width cells (probability-zero breakpoint ties)
/// are rejected and resampled.
pub fn sample_interval<R: Rng + ?Sized>(rng: &mut R, coverage_n: usize) -> Result<Interval> {
    if coverage_n < 2 {
        return Err(Error::invalid("coverage_n must be >= 2"));
    }
    loop {
        let mut cuts: Vec<f64> = (0..coverage_n - 1).map(|_| rng.gen::<f64>()).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pick = rng.gen_range(0..coverage_n);
        let lower = if pick == 0 { 0.0 } else { cuts[pick - 1] };
        let upper = if pick == coverage_n - 1 {
            1.0
        } else {
            cuts[pick]
        };
        if lower < upper {
            return Interval::new(lower, upper);
        }
    }
}

/// Sample a rectangle on `subspace_dim` coordinates drawn uniformly without
/// replacement from `{0, ..., dim-1}`, with one independent interval each.
pub fn sample_rectangle<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    subspace_dim: usize,
    coverage_n: usize,
) -> Result<Rectangle> {
    if dim == 0 {
        return Err(Error::invalid("dim must be >= 1"));
    }
    if subspace_dim == 0 || subspace_dim > dim {
        return Err(Error::invalid(format!(
            "subspace_dim {subspace_dim} not in 1..={dim}"
        )));
    }
    let mut coords = rand::seq::index::sample(rng, dim, subspace_dim).into_vec();
    coords.sort_unstable();
    let intervals = coords
        .iter()
        .map(|_| sample_interval(rng, coverage_n))
        .collect::<Result<Vec<_>>>()?;
    Rectangle::new(coords, intervals)
}

/// Generate a codebook of `num_bits` independent rectangles.
pub fn generate_codebook<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    subspace_dim: usize,
    num_bits: usize,
    coverage_n: usize,
) -> Result<Codebook> {
    if num_bits == 0 {
        return Err(Error::invalid("num_bits must be >= 1"));
    }
    let rectangles = (0..num_bits)
        .map(|_| sample_rectangle(rng, dim, subspace_dim, coverage_n))
        .collect::<Result<Vec<_>>>()?;
    Codebook::from_rectangles(dim, subspace_dim, coverage_n, rectangles)
}

/// Encode a point of `[0,1]^d`: bit `k` is set iff the point lies in
/// rectangle `k` (closed intervals).
pub fn encode(codebook: &Codebook, x: &[f64]) -> Result<BitVector> {
    if x.len() != codebook.dim() {
        return Err(Error::contract(format!(
            "point has {} components, codebook dim is {}",
            x.len(),
            codebook.dim()
        )));
    }
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_finite() || !(0.0..=1.0).contains(&xi) {
            return Err(Error::Domain(format!(
                "component {i} = {xi} outside [0,1]"
            )));
        }
    }
    Ok(BitVector::new(
        codebook.rectangles.iter().map(|r| r.contains(x)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rect(coords: Vec<usize>, bounds: &[(f64, f64)]) -> Rectangle {
        let intervals = bounds
            .iter()
            .map(|&(l, u)| Interval::new(l, u).unwrap())
            .collect();
        Rectangle::new(coords, intervals).unwrap()
    }

    #[test]
    fn interval_rejects_bad_bounds() {
        assert!(Interval::new(0.5, 0.5).is_err());
        assert!(Interval::new(0.6, 0.4).is_err());
        assert!(Interval::new(-0.1, 0.5).is_err());
        assert!(Interval::new(0.1, 1.5).is_err());
        assert!(Interval::new(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn sample_interval_stays_in_unit_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let iv = sample_interval(&mut rng, 3).unwrap();
            assert!(0.0 <= iv.lower() && iv.lower() < iv.upper() && iv.upper() <= 1.0);
        }
    }

    #[test]
    fn sample_interval_requires_coverage_at_least_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            sample_interval(&mut rng, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    // Coverage property, Monte-Carlo oracle: the fraction of intervals
    // containing a fixed t estimates 1/N. 20k draws, 4-sigma binomial band.
    #[test]
    fn sample_interval_coverage_one_third() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 20_000usize;
        for &t in &[0.0, 0.17, 0.5, 0.83, 1.0] {
            let mut rng_t = ChaCha8Rng::seed_from_u64(2 + (t * 1000.0) as u64);
            let hits = (0..n)
                .filter(|_| sample_interval(&mut rng_t, 3).unwrap().contains(t))
                .count();
            let p = hits as f64 / n as f64;
            let sigma = (2.0 / 9.0 / n as f64).sqrt();
            assert!(
                (p - 1.0 / 3.0).abs() < 4.0 * sigma,
                "coverage at t={t}: {p} vs 1/3"
            );
        }
        let _ = &mut rng;
    }

    #[test]
    fn sample_interval_coverage_one_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20_000usize;
        let hits = (0..n)
            .filter(|_| sample_interval(&mut rng, 2).unwrap().contains(0.5))
            .count();
        let p = hits as f64 / n as f64;
        assert!((p - 0.5).abs() < 0.015, "coverage at 0.5: {p}");
    }

    #[test]
    fn sample_rectangle_has_sorted_distinct_coords() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let r = sample_rectangle(&mut rng, 6, 2, 3).unwrap();
            assert_eq!(r.coords().len(), 2);
            assert!(r.coords()[0] < r.coords()[1]);
            assert!(r.coords()[1] < 6);
        }
    }

    #[test]
    fn sample_rectangle_single_dim() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = sample_rectangle(&mut rng, 1, 1, 3).unwrap();
        assert_eq!(r.coords(), &[0]);
    }

    #[test]
    fn sample_rectangle_rejects_oversized_subspace() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert!(sample_rectangle(&mut rng, 3, 4, 3).is_err());
    }

    // Hypergeometric oracle: each coordinate appears with frequency d_s/d.
    #[test]
    fn sample_rectangle_coordinate_frequencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 10_000usize;
        let mut counts = [0usize; 10];
        for _ in 0..trials {
            let r = sample_rectangle(&mut rng, 10, 2, 3).unwrap();
            for &c in r.coords() {
                counts[c] += 1;
            }
        }
        for (c, &count) in counts.iter().enumerate() {
            let freq = count as f64 / trials as f64;
            assert!((freq - 0.2).abs() < 0.02, "coord {c} frequency {freq}");
        }
    }

    #[test]
    fn disjoint_coordinate_subsets_always_overlap() {
        let r0 = rect(vec![0], &[(0.1, 0.2)]);
        let r1 = rect(vec![1], &[(0.8, 0.9)]);
        let cb = Codebook::from_rectangles(2, 1, 3, vec![r0, r1]).unwrap();
        assert!(cb.overlaps(0, 1));
        assert!(cb.disjoint_pairs().is_empty());
    }

    #[test]
    fn shared_coordinate_disjoint_intervals_no_edge() {
        let r0 = rect(vec![0], &[(0.1, 0.2)]);
        let r1 = rect(vec![0], &[(0.3, 0.4)]);
        let cb = Codebook::from_rectangles(2, 1, 3, vec![r0, r1]).unwrap();
        assert!(!cb.overlaps(0, 1));
        assert_eq!(cb.disjoint_pairs(), &[(0, 1)]);
    }

    #[test]
    fn boundary_contact_counts_as_overlap() {
        let r0 = rect(vec![0], &[(0.1, 0.5)]);
        let r1 = rect(vec![0], &[(0.5, 0.9)]);
        let cb = Codebook::from_rectangles(1, 1, 3, vec![r0, r1]).unwrap();
        assert!(cb.overlaps(0, 1));
    }

    #[test]
    fn generate_codebook_is_seed_deterministic() {
        let a = generate_codebook(&mut ChaCha8Rng::seed_from_u64(11), 6, 2, 60, 3).unwrap();
        let b = generate_codebook(&mut ChaCha8Rng::seed_from_u64(11), 6, 2, 60, 3).unwrap();
        assert_eq!(a, b);
        let c = generate_codebook(&mut ChaCha8Rng::seed_from_u64(12), 6, 2, 60, 3).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn encode_outside_all_rectangles_is_zero() {
        let r0 = rect(vec![0], &[(0.1, 0.2)]);
        let r1 = rect(vec![1], &[(0.3, 0.4)]);
        let cb = Codebook::from_rectangles(2, 1, 3, vec![r0, r1]).unwrap();
        let z = encode(&cb, &[0.9, 0.9]).unwrap();
        assert_eq!(z, BitVector::zeros(2));
    }

    #[test]
    fn encode_in_intersection_sets_both_bits() {
        let r0 = rect(vec![0, 1], &[(0.1, 0.6), (0.1, 0.6)]);
        let r1 = rect(vec![0, 1], &[(0.4, 0.9), (0.4, 0.9)]);
        let cb = Codebook::from_rectangles(2, 2, 3, vec![r0, r1]).unwrap();
        let z = encode(&cb, &[0.5, 0.5]).unwrap();
        assert_eq!(z.to_ints(), vec![1, 1]);
    }

    #[test]
    fn encode_boundary_is_inclusive() {
        let r0 = rect(vec![0], &[(0.25, 0.75)]);
        let cb = Codebook::from_rectangles(1, 1, 3, vec![r0]).unwrap();
        assert_eq!(encode(&cb, &[0.25]).unwrap().to_ints(), vec![1]);
        assert_eq!(encode(&cb, &[0.75]).unwrap().to_ints(), vec![1]);
    }

    #[test]
    fn encode_rejects_out_of_domain_points() {
        let r0 = rect(vec![0], &[(0.25, 0.75)]);
        let cb = Codebook::from_rectangles(1, 1, 3, vec![r0]).unwrap();
        assert!(matches!(encode(&cb, &[1.5]), Err(Error::Domain(_))));
        assert!(matches!(encode(&cb, &[-0.1]), Err(Error::Domain(_))));
        assert!(matches!(encode(&cb, &[f64::NAN]), Err(Error::Domain(_))));
    }

    #[test]
    fn encode_matches_direct_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let cb = generate_codebook(&mut rng, 4, 2, 30, 3).unwrap();
        for _ in 0..200 {
            let x: Vec<f64> = (0..4).map(|_| rng.gen::<f64>()).collect();
            let z = encode(&cb, &x).unwrap();
            for (k, r) in cb.rectangles().iter().enumerate() {
                let direct = r
                    .coords()
                    .iter()
                    .zip(r.intervals())
                    .all(|(&c, iv)| iv.lower() <= x[c] && x[c] <= iv.upper());
                assert_eq!(z.get(k), direct, "bit {k} disagrees with membership");
            }
        }
    }

    #[test]
    fn codebook_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cb = generate_codebook(&mut rng, 6, 2, 20, 3).unwrap();
        let json = serde_json::to_string(&cb).unwrap();
        let back: Codebook = serde_json::from_str(&json).unwrap();
        assert_eq!(cb, back);
        // Fixed point of serialize -> parse -> serialize.
        assert_eq!(json, serde_json::to_string(&back).unwrap());
        // Intersection structure really is recomputed, not trusted.
        assert_eq!(cb.disjoint_pairs(), back.disjoint_pairs());
    }

    #[test]
    fn codebook_json_field_layout() {
        let r0 = rect(vec![0, 2], &[(0.1, 0.2), (0.3, 0.4)]);
        let cb = Codebook::from_rectangles(3, 2, 3, vec![r0]).unwrap();
        let json = serde_json::to_string(&cb).unwrap();
        assert_eq!(
            json,
            "{\"dim\":3,\"subspace_dim\":2,\"coverage_n\":3,\
             \"rectangles\":[{\"coords\":[0,2],\"lowers\":[0.1,0.3],\"uppers\":[0.2,0.4]}]}"
        );
    }

    #[test]
    fn bitvector_display_and_parse() {
        let z = BitVector::from_ints(&[1, 0, 1]).unwrap();
        assert_eq!(z.to_string(), "101");
        assert_eq!(z.count_ones(), 2);
        assert!(BitVector::from_ints(&[0, 2]).is_err());
    }
}
