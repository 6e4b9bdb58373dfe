//! Error metrics and information-theoretic diagnostics.
//!
//! `dw_error` penalizes misordered pairs by their squared weight gap, so
//! swapping two nearly-tied items costs almost nothing while inverting a
//! lopsided pair costs a lot. `l1_displacement` measures the average rank
//! movement between two orderings. `normalized_error` is the plain relative
//! Euclidean error on the simplex, and the Fisher-information machinery
//! yields the Cramér-Rao floor any unbiased estimator must respect.

use nalgebra::DMatrix;

use crate::btl::ScoreVector;
use crate::{Error, Result};

/// Rank positions per item; position 1 is the highest score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    positions: Vec<usize>,
}

impl Ranking {
    /// Validates that `positions` is a permutation of `1..=n`.
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        let n = positions.len();
        let mut seen = vec![false; n + 1];
        for &p in &positions {
            if p < 1 || p > n || seen[p] {
                return Err(Error::InvalidDistribution {
                    reason: "rank positions are not a permutation of 1..=n",
                });
            }
            seen[p] = true;
        }
        Ok(Self { positions })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Position of item `i` (1 = best).
    pub fn position(&self, i: usize) -> usize {
        self.positions[i]
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// Ranks items by descending score; ties break toward the smaller index.
pub fn rank_from_scores(scores: &[f64]) -> Ranking {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut positions = vec![0usize; scores.len()];
    for (rank, &item) in order.iter().enumerate() {
        positions[item] = rank + 1;
    }
    Ranking { positions }
}

/// Weight-squared penalty over misordered pairs:
/// `sqrt( (1 / (2 n |w|^2)) sum_{i<j} (w_i - w_j)^2 I[misordered] )`,
/// where a pair is misordered exactly when the higher-weight item received
/// the numerically larger (worse) position.
pub fn dw_error(w: &ScoreVector, sigma: &Ranking) -> Result<f64> {
    let n = w.len();
    if sigma.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: sigma.len(),
        });
    }
    let values = w.values();
    let mut penalty = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let weight_gap = values[i] - values[j];
            let position_gap = sigma.position(i) as f64 - sigma.position(j) as f64;
            if weight_gap * position_gap > 0.0 {
                penalty += weight_gap * weight_gap;
            }
        }
    }
    let norm_sq: f64 = values.iter().map(|v| v * v).sum();
    Ok((penalty / (2.0 * n as f64 * norm_sq)).sqrt())
}

/// Average absolute rank displacement `(1/n) sum_i |a(i) - b(i)|`.
pub fn l1_displacement(a: &Ranking, b: &Ranking) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let total: f64 = a
        .positions()
        .iter()
        .zip(b.positions())
        .map(|(&x, &y)| (x as f64 - y as f64).abs())
        .sum();
    Ok(total / a.len() as f64)
}

/// Relative Euclidean error `|pi - truth| / |truth|` on the simplex.
pub fn normalized_error(pi: &ScoreVector, truth: &ScoreVector) -> Result<f64> {
    if pi.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pi.len(),
            right: truth.len(),
        });
    }
    let diff: f64 = pi
        .values()
        .iter()
        .zip(truth.values())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(diff / truth.norm())
}

/// Like [`normalized_error`] but for raw nonnegative score vectors that may
/// contain zeros (Borda win rates, for example); the estimate is projected
/// onto the simplex by its sum before comparing.
pub fn normalized_error_raw(estimate: &[f64], truth: &ScoreVector) -> Result<f64> {
    if estimate.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: estimate.len(),
            right: truth.len(),
        });
    }
    let total: f64 = estimate.iter().sum();
    if total <= 0.0 || total.is_nan() {
        return Err(Error::InvalidDistribution {
            reason: "estimate has no positive mass",
        });
    }
    let diff: f64 = estimate
        .iter()
        .zip(truth.values())
        .map(|(a, b)| {
            let d = a / total - b;
            d * d
        })
        .sum::<f64>()
        .sqrt();
    Ok(diff / truth.norm())
}

/// Mean of per-trial normalized errors (the quantity plotted against the
/// Cramér-Rao floor).
pub fn rmse(trial_errors: &[f64]) -> Result<f64> {
    if trial_errors.is_empty() {
        return Err(Error::Empty("trial errors"));
    }
    Ok(trial_errors.iter().sum::<f64>() / trial_errors.len() as f64)
}

/// Fisher information matrix of the BTL likelihood at the true scores.
#[derive(Debug, Clone)]
pub struct FisherMatrix {
    matrix: DMatrix<f64>,
    k: u64,
}

impl FisherMatrix {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Largest symmetry violation; 0 up to rounding by construction.
    pub fn symmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)]).abs());
            }
        }
        worst
    }
}

/// Fisher information for `k` comparisons on every listed edge:
/// diagonal `F_ii = sum_{i' ~ i} k / (w_i + w_i')^2 * (w_i' / w_i)`,
/// off-diagonal `F_ij = -k / (w_i + w_j)^2` on edges, zero elsewhere.
pub fn fisher_information(
    truth: &ScoreVector,
    edges: &[(usize, usize)],
    k: u64,
) -> Result<FisherMatrix> {
    if k == 0 {
        return Err(Error::Empty("comparisons per edge"));
    }
    let n = truth.len();
    let w = truth.values();
    let mut matrix = DMatrix::zeros(n, n);
    for &(i, j) in edges {
        if i == j {
            return Err(Error::SelfComparison { item: i });
        }
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        let pair = k as f64 / ((w[i] + w[j]) * (w[i] + w[j]));
        matrix[(i, j)] = -pair;
        matrix[(j, i)] = -pair;
        matrix[(i, i)] += pair * (w[j] / w[i]);
        matrix[(j, j)] += pair * (w[i] / w[j]);
    }
    Ok(FisherMatrix { matrix, k })
}

/// Cramér-Rao floor via the Moore-Penrose pseudo-inverse.
#[derive(Debug, Clone, Copy)]
pub struct CrbBound {
    /// Trace of the pseudo-inverse: lower bound on the expected squared error.
    pub bound: f64,
    /// Number of eigenvalues treated as zero (1 for the simplex constraint).
    pub rank_deficiency: usize,
}

/// Trace of the pseudo-inverse of the Fisher matrix, with relative
/// eigenvalue cutoff `1e-10 * lambda_max`. The simplex constraint makes the
/// matrix singular, so the pseudo-inverse is the constrained bound.
pub fn cramer_rao_bound(fisher: &FisherMatrix) -> Result<CrbBound> {
    let eigen = fisher.matrix().clone().symmetric_eigen();
    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let lambda_max = eigenvalues.first().copied().unwrap_or(0.0);
    // Scale-aware PSD check: tolerance 1e-9 absolute for O(1) matrices,
    // relative for large entries where eigensolver rounding grows with
    // lambda_max.
    let psd_tol = -1e-9 * lambda_max.abs().max(1.0);
    if let Some(&smallest) = eigenvalues.last() {
        if smallest < psd_tol {
            return Err(Error::MalformedFisher {
                eigenvalue: smallest,
            });
        }
    }
    let cutoff = 1e-10 * lambda_max;
    let mut bound = 0.0;
    let mut rank_deficiency = 0;
    for &lambda in &eigenvalues {
        if lambda > cutoff {
            bound += 1.0 / lambda;
        } else {
            rank_deficiency += 1;
        }
    }
    Ok(CrbBound {
        bound,
        rank_deficiency,
    })
}
