//! Reference algorithms the random-walk estimator is benchmarked against.
//!
//! - Maximum likelihood for the BTL model, i.e. pairwise logistic regression
//!   on log-scores, optionally ridge-regularized.
//! - Borda count: wins divided by comparisons played.
//! - Ratio-matrix spectral ranking: leading eigenvector of the matrix of
//!   pairwise win-count ratios.
//! - MC1..MC4: Markov-chain heuristics whose walks move toward winners under
//!   four different transition rules, made ergodic by a uniform teleport.

use crate::btl::{ComparisonRecord, ScoreVector};
use crate::centrality::{power_iterate, StationaryResult, TransitionMatrix};
use crate::graph::{connected_components, ComparisonGraph};
use crate::{Error, Result};

/// Identifiable log-score parameterization: entries sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaVector {
    values: Vec<f64>,
}

impl ThetaVector {
    /// Centers the given log-scores to sum zero.
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("theta vector"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDistribution {
                reason: "non-finite log-score",
            });
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Ok(Self {
            values: values.iter().map(|v| v - mean).collect(),
        })
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

    /// Simplex-normalized `exp(theta)`.
    pub fn to_scores(&self) -> Result<ScoreVector> {
        let exp: Vec<f64> = self.values.iter().map(|v| v.exp()).collect();
        ScoreVector::new(&exp)
    }
}

/// `log(1 + exp(x))` without overflow for large `|x|`.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Average negative log-likelihood over individual comparison outcomes and
/// its exact gradient.
///
/// Each of a pair's outcomes contributes `log(1 + exp(u)) - v u` with
/// `u = theta_i - theta_j` and `v = 1` when `i` won, so a whole record
/// contributes `k softplus(u) - wins_i u`. The total is divided by the
/// number of outcomes `m`.
pub fn mle_loss_and_gradient(
    theta: &ThetaVector,
    records: &[ComparisonRecord],
) -> Result<(f64, Vec<f64>)> {
    let n = theta.len();
    let values = theta.values();
    let mut loss = 0.0;
    let mut gradient = vec![0.0; n];
    let mut outcomes: u64 = 0;
    for record in records {
        for index in [record.i, record.j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        let k = record.total();
        if k == 0 {
            continue;
        }
        outcomes += k;
        let u = values[record.i] - values[record.j];
        loss += k as f64 * softplus(u) - record.wins_i as f64 * u;
        let slope = k as f64 * sigmoid(u) - record.wins_i as f64;
        gradient[record.i] += slope;
        gradient[record.j] -= slope;
    }
    if outcomes == 0 {
        return Err(Error::Empty("comparison outcomes"));
    }
    let m = outcomes as f64;
    loss /= m;
    for g in &mut gradient {
        *g /= m;
    }
    Ok((loss, gradient))
}

/// Options for [`mle_fit`].
#[derive(Debug, Clone, Copy)]
pub struct MleOptions {
    /// Gradient-norm termination threshold (includes the ridge term).
    pub grad_tol: f64,
    pub max_iter: usize,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self {
            grad_tol: 1e-8,
            max_iter: 50_000,
        }
    }
}

/// `|theta|_inf` beyond which the unregularized fit is declared divergent.
const THETA_DIVERGENCE_BOUND: f64 = 50.0;

/// Fits BTL log-scores by gradient descent with backtracking line search on
/// the convex objective `loss + (lambda/2) |theta|^2`.
///
/// With `lambda = 0` a finite optimum exists exactly when the directed
/// "beats" graph is strongly connected; one-sided cuts are rejected upfront
/// with a hint to regularize.
pub fn mle_fit(
    n: usize,
    records: &[ComparisonRecord],
    lambda: f64,
    options: &MleOptions,
) -> Result<(ThetaVector, ScoreVector)> {
    if lambda < 0.0 {
        return Err(Error::NegativeEpsilon { epsilon: lambda });
    }
    if n == 0 {
        return Err(Error::Empty("items"));
    }
    if lambda == 0.0 && !beats_graph_strongly_connected(n, records) {
        return Err(Error::MleDiverged {
            bound: THETA_DIVERGENCE_BOUND,
        });
    }

    let objective = |theta: &ThetaVector| -> Result<(f64, Vec<f64>)> {
        let (mut loss, mut gradient) = mle_loss_and_gradient(theta, records)?;
        if lambda > 0.0 {
            for (g, &t) in gradient.iter_mut().zip(theta.values()) {
                loss += 0.5 * lambda * t * t;
                *g += lambda * t;
            }
        }
        Ok((loss, gradient))
    };

    let mut theta = ThetaVector::new(&vec![0.0; n])?;
    let (mut loss, mut gradient) = objective(&theta)?;
    let mut step = 1.0;
    let mut iterations = 0;
    loop {
        let grad_norm = gradient.iter().map(|g| g * g).sum::<f64>().sqrt();
        if grad_norm < options.grad_tol {
            break;
        }
        if iterations >= options.max_iter {
            return Err(Error::MleStalled {
                grad_norm,
                tol: options.grad_tol,
                iterations,
            });
        }
        if theta
            .values()
            .iter()
            .any(|t| t.abs() > THETA_DIVERGENCE_BOUND)
        {
            return Err(Error::MleDiverged {
                bound: THETA_DIVERGENCE_BOUND,
            });
        }
        // Armijo backtracking; the accepted step doubles for the next round.
        let mut accepted = false;
        for _ in 0..70 {
            let candidate: Vec<f64> = theta
                .values()
                .iter()
                .zip(&gradient)
                .map(|(t, g)| t - step * g)
                .collect();
            let candidate = ThetaVector::new(&candidate)?;
            let (cand_loss, cand_gradient) = objective(&candidate)?;
            let margin = 1e-4 * step * grad_norm * grad_norm;
            // Once the Armijo margin sinks below the float resolution of the
            // loss, f-comparisons are pure rounding noise; certify descent
            // through strict gradient-norm contraction instead.
            let resolvable = margin >= 4.0 * f64::EPSILON * loss.abs();
            let cand_norm = cand_gradient.iter().map(|g| g * g).sum::<f64>().sqrt();
            let accepts = if resolvable {
                cand_loss <= loss - margin
            } else {
                cand_norm <= 0.999 * grad_norm
            };
            if accepts {
                theta = candidate;
                loss = cand_loss;
                gradient = cand_gradient;
                step = (step * 2.0).min(1e8);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
        if !accepted {
            return Err(Error::MleStalled {
                grad_norm,
                tol: options.grad_tol,
                iterations,
            });
        }
    }
    let scores = theta.to_scores()?;
    Ok((theta, scores))
}

/// Existence test for the unregularized optimum: every item can reach every
/// other through chains of recorded wins.
fn beats_graph_strongly_connected(n: usize, records: &[ComparisonRecord]) -> bool {
    let mut forward = vec![Vec::new(); n];
    for record in records {
        if record.i >= n || record.j >= n {
            return false;
        }
        // Edge loser -> winner for each direction that ever won.
        if record.wins_j > 0 {
            forward[record.i].push(record.j);
        }
        if record.wins_i > 0 {
            forward[record.j].push(record.i);
        }
    }
    crate::scc::strongly_connected(&forward)
}

/// Borda count: per item, total wins divided by total comparisons played.
pub fn borda_count(n: usize, records: &[ComparisonRecord]) -> Result<Vec<f64>> {
    let mut wins = vec![0u64; n];
    let mut played = vec![0u64; n];
    for record in records {
        for index in [record.i, record.j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if record.i == record.j {
            return Err(Error::SelfComparison { item: record.i });
        }
        let k = record.total();
        wins[record.i] += record.wins_i;
        wins[record.j] += record.wins_j;
        played[record.i] += k;
        played[record.j] += k;
    }
    if let Some(item) = played.iter().position(|&t| t == 0) {
        return Err(Error::UncomparedItem { item });
    }
    Ok(wins
        .iter()
        .zip(&played)
        .map(|(&w, &t)| w as f64 / t as f64)
        .collect())
}

/// Spectral ranking on the win-ratio matrix.
///
/// `M_ij = (wins of i over j + smooth) / (wins of j over i + smooth)` on
/// compared pairs, `M_ii = 1`, zero elsewhere; scores are the leading right
/// eigenvector (power method), simplex-normalized. `M_ij` estimates
/// `w_i / w_j`, so larger scores mean more preferred.
pub fn ratio_matrix_rank(
    n: usize,
    records: &[ComparisonRecord],
    smooth: f64,
) -> Result<ScoreVector> {
    if smooth < 0.0 {
        return Err(Error::NegativeEpsilon { epsilon: smooth });
    }
    let graph = ComparisonGraph::from_records(n, records)?;
    let components = connected_components(&graph);
    if components.len() > 1 {
        return Err(Error::Disconnected { components });
    }
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for edge in graph.edges() {
        let wins_i = edge.wins_i as f64 + smooth;
        let wins_j = edge.wins_j as f64 + smooth;
        if wins_j == 0.0 {
            return Err(Error::RatioZeroDenominator {
                i: edge.i,
                j: edge.j,
            });
        }
        if wins_i == 0.0 {
            return Err(Error::RatioZeroDenominator {
                i: edge.j,
                j: edge.i,
            });
        }
        rows[edge.i].push((edge.j, wins_i / wins_j));
        rows[edge.j].push((edge.i, wins_j / wins_i));
    }

    // Power method for the Perron vector; M has unit diagonal, so the chain
    // is primitive once the graph is connected.
    let mut v = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..100_000 {
        for (i, out) in next.iter_mut().enumerate() {
            *out = v[i];
            for &(j, m_ij) in &rows[i] {
                *out += m_ij * v[j];
            }
        }
        let total: f64 = next.iter().sum();
        for value in &mut next {
            *value /= total;
        }
        let change: f64 = v.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut v, &mut next);
        if change < 1e-13 {
            break;
        }
    }
    ScoreVector::new(&v)
}

/// The four Markov-chain ranking heuristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McVariant {
    /// Move to a uniformly chosen neighbor that won at least once.
    Mc1,
    /// Move to neighbor `j` with probability proportional to `j`'s wins.
    Mc2,
    /// Pick a uniform recorded comparison involving `i`; move to its winner.
    Mc3,
    /// Pick a uniform neighbor; move only if it won the strict majority.
    Mc4,
}

impl McVariant {
    pub const ALL: [McVariant; 4] = [
        McVariant::Mc1,
        McVariant::Mc2,
        McVariant::Mc3,
        McVariant::Mc4,
    ];
}

/// Stationary scores of the chosen Markov-chain heuristic, mixed with a
/// uniform teleport of weight `ergodic_alpha` to guarantee ergodicity.
/// With `ergodic_alpha = 0` the raw chain must already be irreducible.
pub fn markov_chain_baseline(
    n: usize,
    records: &[ComparisonRecord],
    variant: McVariant,
    ergodic_alpha: f64,
) -> Result<StationaryResult> {
    if !(0.0..=1.0).contains(&ergodic_alpha) {
        return Err(Error::InvalidAlpha {
            alpha: ergodic_alpha,
        });
    }
    let graph = ComparisonGraph::from_records(n, records)?;
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];

    // Incident edge views per item: (neighbor, own wins, neighbor wins).
    let mut incident: Vec<Vec<(usize, u64, u64)>> = vec![Vec::new(); n];
    for edge in graph.edges() {
        incident[edge.i].push((edge.j, edge.wins_i, edge.wins_j));
        incident[edge.j].push((edge.i, edge.wins_j, edge.wins_i));
    }

    for (i, edges) in incident.iter().enumerate() {
        match variant {
            McVariant::Mc1 => {
                let beat_me: Vec<usize> = edges
                    .iter()
                    .filter(|&&(_, _, theirs)| theirs >= 1)
                    .map(|&(j, _, _)| j)
                    .collect();
                if !beat_me.is_empty() {
                    let share = 1.0 / beat_me.len() as f64;
                    for j in beat_me {
                        rows[i].push((j, share));
                    }
                }
            }
            McVariant::Mc2 => {
                let total_losses: u64 = edges.iter().map(|&(_, _, theirs)| theirs).sum();
                if total_losses > 0 {
                    for &(j, _, theirs) in edges {
                        if theirs > 0 {
                            rows[i].push((j, theirs as f64 / total_losses as f64));
                        }
                    }
                }
            }
            McVariant::Mc3 => {
                let total: u64 = edges.iter().map(|&(_, mine, theirs)| mine + theirs).sum();
                if total > 0 {
                    for &(j, _, theirs) in edges {
                        if theirs > 0 {
                            rows[i].push((j, theirs as f64 / total as f64));
                        }
                    }
                }
            }
            McVariant::Mc4 => {
                let neighbors = edges.len() as f64;
                for &(j, mine, theirs) in edges {
                    if theirs > mine {
                        rows[i].push((j, 1.0 / neighbors));
                    }
                }
            }
        }
    }

    let base = TransitionMatrix::from_rows(n, graph.d_max().max(1), rows)?;
    let tol = 1e-12;
    let max_iter = 10 * n + 10_000;
    if ergodic_alpha == 0.0 {
        if !base.support_strongly_connected() {
            return Err(Error::NotErgodic);
        }
        let uniform = vec![1.0 / n as f64; n];
        return power_iterate(&base, &uniform, tol, max_iter);
    }
    teleport_stationary(&base, ergodic_alpha, tol, max_iter)
}

/// Power iteration for the teleport-mixed chain
/// `P' = (1 - alpha) P + (alpha / n) 1 1^T`.
fn teleport_stationary(
    base: &TransitionMatrix,
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<StationaryResult> {
    let n = base.n();
    let mut current = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let teleport = alpha / n as f64;
    for step in 1..=max_iter {
        base.apply_left(&current, &mut next);
        for value in &mut next {
            *value = (1.0 - alpha) * *value + teleport;
        }
        let total: f64 = next.iter().sum();
        for value in &mut next {
            *value /= total;
        }
        residual = current.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut current, &mut next);
        iterations = step;
        if residual < tol {
            converged = true;
            break;
        }
    }
    Ok(StationaryResult {
        pi: ScoreVector::new(&current)?,
        iterations,
        residual,
        converged,
        irreducible: true,
    })
}
