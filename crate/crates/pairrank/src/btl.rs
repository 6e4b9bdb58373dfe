//! Bradley-Terry-Luce score vectors and synthetic comparison outcomes.
//!
//! Under the BTL model every item `i` carries a positive weight `w_i`, and a
//! comparison between `i` and `j` prefers `j` with probability
//! `w_j / (w_i + w_j)`. Scores are identifiable only up to a positive scale,
//! so [`ScoreVector`] always stores the simplex representative (entries sum
//! to one) and distances are taken between simplex projections.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::{Error, Result};

/// Strictly positive item scores, stored simplex-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    values: Vec<f64>,
}

impl ScoreVector {
    /// Builds a score vector from raw positive weights, normalizing to the
    /// simplex. Rejects empty input and non-positive or non-finite entries.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty("score vector"));
        }
        for (index, &value) in raw.iter().enumerate() {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::NonPositiveScore { index, value });
            }
        }
        let sum: f64 = raw.iter().sum();
        let values = raw.iter().map(|v| v / sum).collect();
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Result<f64> {
        self.values
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                n: self.values.len(),
            })
    }

    /// Ratio of the largest to the smallest entry; always >= 1.
    pub fn dynamic_range(&self) -> f64 {
        let mut min = f64::INFINITY;
        let mut max = 0.0_f64;
        for &v in &self.values {
            min = min.min(v);
            max = max.max(v);
        }
        max / min
    }

    /// Euclidean norm of the simplex representative.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Aggregated outcomes of the comparisons between one pair of items.
///
/// `wins_j` counts comparisons in which `j` was preferred over `i`, and
/// `wins_i` the reverse; `total()` is the number of comparisons `k` for the
/// pair. The empirical fraction `a_ij = wins_j / k` is the building block of
/// the Rank Centrality transition matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonRecord {
    pub i: usize,
    pub j: usize,
    pub wins_i: u64,
    pub wins_j: u64,
}

impl ComparisonRecord {
    pub fn new(i: usize, j: usize, wins_i: u64, wins_j: u64) -> Result<Self> {
        if i == j {
            return Err(Error::SelfComparison { item: i });
        }
        Ok(Self {
            i,
            j,
            wins_i,
            wins_j,
        })
    }

    /// Total comparisons recorded for the pair.
    pub fn total(&self) -> u64 {
        self.wins_i + self.wins_j
    }

    /// Fraction of comparisons in which `j` was preferred, if any were made.
    pub fn fraction_j(&self) -> Option<f64> {
        let k = self.total();
        (k > 0).then(|| self.wins_j as f64 / k as f64)
    }
}

/// Probability that item `j` is preferred over item `i`: `w_j / (w_i + w_j)`.
///
/// The two orientations of a pair sum to exactly 1.0 in floating point: the
/// larger share is computed by division (so it is >= 1/2) and the smaller as
/// its complement, which is exact by Sterbenz's lemma.
pub fn preference_probability(w: &ScoreVector, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::SelfComparison { item: i });
    }
    let wi = w.get(i)?;
    let wj = w.get(j)?;
    let sum = wi + wj;
    if wj >= wi {
        Ok(wj / sum)
    } else {
        Ok(1.0 - wi / sum)
    }
}

/// Simplex normalization of raw positive weights.
pub fn normalize(raw: &[f64]) -> Result<ScoreVector> {
    ScoreVector::new(raw)
}

/// Euclidean distance between the simplex projections of two raw weight
/// vectors. Invariant under positive rescaling of either argument.
pub fn score_distance(w: &[f64], w_other: &[f64]) -> Result<f64> {
    if w.len() != w_other.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: w_other.len(),
        });
    }
    let a = ScoreVector::new(w)?;
    let b = ScoreVector::new(w_other)?;
    let dist = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    Ok(dist)
}

/// Draws `n` scores with dynamic range exactly `b`.
///
/// Two raw weights are pinned to the endpoints `1` and `b`; the rest are
/// log-uniform on `[1, b]`. Positions are shuffled and the result is
/// simplex-normalized, so `dynamic_range()` equals `b` up to rounding.
pub fn generate_scores(n: usize, b: f64, rng: &mut impl Rng) -> Result<ScoreVector> {
    if n < 2 {
        return Err(Error::TooFewItems { needed: 2, n });
    }
    if b < 1.0 || !b.is_finite() {
        return Err(Error::InvalidDynamicRange { b });
    }
    let ln_b = b.ln();
    let mut raw = vec![0.0_f64; n];
    raw[0] = 1.0;
    raw[1] = b;
    for value in raw.iter_mut().skip(2) {
        *value = (rng.random::<f64>() * ln_b).exp();
    }
    raw.shuffle(rng);
    ScoreVector::new(&raw)
}

/// Samples `k` BTL comparison outcomes for every listed pair.
///
/// For edge `(i, j)` the preferred-`j` count is one binomial draw with
/// success probability `w_j / (w_i + w_j)`.
pub fn sample_comparisons(
    w: &ScoreVector,
    edges: &[(usize, usize)],
    k: u64,
    rng: &mut impl Rng,
) -> Result<Vec<ComparisonRecord>> {
    let mut records = Vec::with_capacity(edges.len());
    for &(i, j) in edges {
        let p = preference_probability(w, i, j)?;
        let wins_j = Binomial::new(k, p)
            .expect("probability is in (0, 1)")
            .sample(rng);
        records.push(ComparisonRecord::new(i, j, k - wins_j, wins_j)?);
    }
    Ok(records)
}
