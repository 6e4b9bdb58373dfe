//! Rank Centrality: transition matrices and their stationary distributions.
//!
//! From a comparison graph the random walk moves from item `i` to a compared
//! item `j` with probability `A_ij / d_max`, where `A_ij` is the fraction of
//! the pair's comparisons won by `j`; the remaining mass stays on `i` as a
//! self-loop. Scores are the stationary distribution of this walk, found by
//! power iteration. With exact win probabilities (the ideal chain) the walk
//! is reversible and its stationary distribution equals the true normalized
//! scores, so ranking by stationary mass is consistent.

use crate::btl::{preference_probability, ScoreVector};
use crate::graph::{connected_components, ComparisonGraph};
use crate::{Error, Result};

use nalgebra::DMatrix;
use std::collections::BTreeSet;

/// Sparse row-stochastic transition matrix with per-row self-loop mass.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    d_max: usize,
    /// Off-diagonal entries per row, sorted by column.
    rows: Vec<Vec<(usize, f64)>>,
    diag: Vec<f64>,
}

impl TransitionMatrix {
    /// Assembles a matrix from off-diagonal rows; the diagonal completes each
    /// row to sum exactly one (clamped at zero against rounding).
    pub(crate) fn from_rows(n: usize, d_max: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let mut diag = vec![0.0; n];
        for (i, row) in rows.iter().enumerate() {
            let mut sum = 0.0;
            for &(j, value) in row {
                if j >= n {
                    return Err(Error::IndexOutOfRange { index: j, n });
                }
                if value < 0.0 {
                    return Err(Error::InvalidDistribution {
                        reason: "negative transition probability",
                    });
                }
                sum += value;
            }
            if sum > 1.0 + 1e-9 {
                return Err(Error::InvalidDistribution {
                    reason: "row mass exceeds one",
                });
            }
            diag[i] = (1.0 - sum).max(0.0);
        }
        let mut matrix = Self {
            n,
            d_max,
            rows,
            diag,
        };
        for row in &mut matrix.rows {
            row.sort_unstable_by_key(|&(j, _)| j);
        }
        Ok(matrix)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Maximum degree used for the `1/d_max` scaling.
    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn diag(&self, i: usize) -> f64 {
        self.diag[i]
    }

    /// Off-diagonal entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        self.rows[i]
            .binary_search_by_key(&j, |&(col, _)| col)
            .map(|pos| self.rows[i][pos].1)
            .unwrap_or(0.0)
    }

    /// Left application `out = p^T P`.
    pub fn apply_left(&self, p: &[f64], out: &mut [f64]) {
        for (o, (&pi, &d)) in out.iter_mut().zip(p.iter().zip(&self.diag)) {
            *o = pi * d;
        }
        for (i, row) in self.rows.iter().enumerate() {
            let mass = p[i];
            if mass == 0.0 {
                continue;
            }
            for &(j, value) in row {
                out[j] += mass * value;
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut dense = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            dense[(i, i)] = self.diag[i];
            for &(j, value) in &self.rows[i] {
                dense[(i, j)] = value;
            }
        }
        dense
    }

    /// Strong connectivity of the positive off-diagonal support; this is the
    /// irreducibility test for the walk (self-loops do not help mixing).
    pub fn support_strongly_connected(&self) -> bool {
        let forward: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|&&(_, v)| v > 0.0)
                    .map(|&(j, _)| j)
                    .collect()
            })
            .collect();
        crate::scc::strongly_connected(&forward)
    }

    /// Max row-sum deviation from one; zero up to rounding by construction.
    pub fn row_sum_residual(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let sum: f64 = self.diag[i] + self.rows[i].iter().map(|&(_, v)| v).sum::<f64>();
                (sum - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Stationary distribution estimate with convergence diagnostics.
#[derive(Debug, Clone)]
pub struct StationaryResult {
    pub pi: ScoreVector,
    pub iterations: usize,
    /// L1 change of the distribution over the final step.
    pub residual: f64,
    pub converged: bool,
    /// Whether the chain's support was strongly connected, i.e. the
    /// stationary point is unique and independent of the start.
    pub irreducible: bool,
}

/// Builds the empirical transition matrix: `P_ij = A_ij / d_max` on edges,
/// self-loops completing each row. Every edge must carry at least one
/// comparison and every vertex at least one edge.
pub fn build_transition(graph: &ComparisonGraph) -> Result<TransitionMatrix> {
    build_transition_regularized(graph, 0.0)
}

/// Regularized transition matrix: each edge contributes
/// `(a_ij + epsilon) / (a_ij + a_ji + 2 epsilon) / d_max`, the posterior-mean
/// win probability under a Beta(epsilon, epsilon) prior on the pair. With
/// `epsilon = 0` this is exactly [`build_transition`]; edges with no recorded
/// comparisons become even splits when `epsilon > 0`.
pub fn build_transition_regularized(
    graph: &ComparisonGraph,
    epsilon: f64,
) -> Result<TransitionMatrix> {
    if epsilon < 0.0 {
        return Err(Error::NegativeEpsilon { epsilon });
    }
    if let Some(vertex) = graph.degrees().iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex { vertex });
    }
    let n = graph.n();
    let d_max = graph.d_max();
    let scale = 1.0 / d_max as f64;
    let mut rows = vec![Vec::new(); n];
    for edge in graph.edges() {
        let (to_j, to_i) = match (edge.a_ij(), edge.a_ji()) {
            // Compared edge: fractions sum to one exactly.
            (Some(a_ij), Some(a_ji)) => {
                let denom = 1.0 + 2.0 * epsilon;
                ((a_ij + epsilon) / denom, (a_ji + epsilon) / denom)
            }
            // No comparisons recorded: prior mean 1/2 under epsilon > 0.
            _ if epsilon > 0.0 => (0.5, 0.5),
            _ => {
                return Err(Error::ZeroComparisons {
                    i: edge.i,
                    j: edge.j,
                })
            }
        };
        rows[edge.i].push((edge.j, to_j * scale));
        rows[edge.j].push((edge.i, to_i * scale));
    }
    TransitionMatrix::from_rows(n, d_max, rows)
}

/// Ideal (infinite-sample) transition matrix for known scores:
/// `P_ij = (w_j / (w_i + w_j)) / d_max` on the given edges. Reversible with
/// stationary distribution `w`.
pub fn ideal_transition(w: &ScoreVector, edges: &[(usize, usize)]) -> Result<TransitionMatrix> {
    let n = w.len();
    let mut unique: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j) in edges {
        if i == j {
            return Err(Error::SelfComparison { item: i });
        }
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        unique.insert((i.min(j), i.max(j)));
    }
    let mut degrees = vec![0usize; n];
    for &(i, j) in &unique {
        degrees[i] += 1;
        degrees[j] += 1;
    }
    if let Some(vertex) = degrees.iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex { vertex });
    }
    let d_max = degrees.iter().copied().max().unwrap_or(0);
    let scale = 1.0 / d_max as f64;
    let mut rows = vec![Vec::new(); n];
    for &(i, j) in &unique {
        rows[i].push((j, preference_probability(w, i, j)? * scale));
        rows[j].push((i, preference_probability(w, j, i)? * scale));
    }
    TransitionMatrix::from_rows(n, d_max, rows)
}

/// Left power iteration `p_{t+1}^T = p_t^T P` until the L1 step change drops
/// below `tol` or `max_iter` is reached. Exhausting the budget is reported
/// through `converged = false`, not as an error.
pub fn power_iterate(
    matrix: &TransitionMatrix,
    p0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<StationaryResult> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidTolerance { tol });
    }
    let n = matrix.n();
    if p0.len() != n {
        return Err(Error::LengthMismatch {
            left: p0.len(),
            right: n,
        });
    }
    if p0.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidDistribution {
            reason: "negative or non-finite entry in start distribution",
        });
    }
    let mass: f64 = p0.iter().sum();
    if (mass - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution {
            reason: "start distribution does not sum to one",
        });
    }

    let mut current = p0.to_vec();
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    for step in 1..=max_iter {
        matrix.apply_left(&current, &mut next);
        residual = current.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut current, &mut next);
        iterations = step;
        if residual < tol {
            converged = true;
            break;
        }
    }

    if let Some(item) = current.iter().position(|&v| v <= 0.0) {
        return Err(Error::ZeroMass { item });
    }
    Ok(StationaryResult {
        pi: ScoreVector::new(&current)?,
        iterations,
        residual,
        converged,
        irreducible: matrix.support_strongly_connected(),
    })
}

/// Options for [`rank_centrality`].
#[derive(Debug, Clone, Copy)]
pub struct RankCentralityOptions {
    /// Pseudo-count regularization; 0 = plain Rank Centrality.
    pub epsilon: f64,
    /// L1 step-change tolerance of the power iteration.
    pub tol: f64,
    /// Iteration budget; defaults to `10 n + 1000` when `None`.
    pub max_iter: Option<usize>,
}

impl Default for RankCentralityOptions {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            tol: 1e-10,
            max_iter: None,
        }
    }
}

/// The full algorithm: build the (regularized) transition matrix, verify
/// irreducibility, and run power iteration from the uniform distribution.
pub fn rank_centrality(
    graph: &ComparisonGraph,
    options: &RankCentralityOptions,
) -> Result<StationaryResult> {
    let components = connected_components(graph);
    if components.len() > 1 {
        return Err(Error::Disconnected { components });
    }
    let matrix = build_transition_regularized(graph, options.epsilon)?;
    if !matrix.support_strongly_connected() {
        return Err(Error::OneSidedSupport);
    }
    let n = graph.n();
    let uniform = vec![1.0 / n as f64; n];
    let max_iter = options.max_iter.unwrap_or(10 * n + 1000);
    power_iterate(&matrix, &uniform, options.tol, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btl::ComparisonRecord;
    use crate::seed::rng_from;
    use approx::assert_relative_eq;

    fn record(i: usize, j: usize, wins_i: u64, wins_j: u64) -> ComparisonRecord {
        ComparisonRecord::new(i, j, wins_i, wins_j).unwrap()
    }

    fn two_node_graph() -> ComparisonGraph {
        // Item 1 preferred twice, item 0 once: a_01 = 2/3.
        ComparisonGraph::from_records(2, &[record(0, 1, 1, 2)]).unwrap()
    }

    #[test]
    fn build_transition_two_nodes() {
        let p = build_transition(&two_node_graph()).unwrap();
        assert_relative_eq!(p.entry(0, 1), 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(p.entry(0, 0), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(p.entry(1, 0), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(p.entry(1, 1), 2.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn build_transition_complete_ties() {
        let mut records = Vec::new();
        let n = 5;
        for i in 0..n {
            for j in (i + 1)..n {
                records.push(record(i, j, 3, 3));
            }
        }
        let graph = ComparisonGraph::from_records(n, &records).unwrap();
        let p = build_transition(&graph).unwrap();
        for i in 0..n {
            assert_relative_eq!(p.diag(i), 0.5, max_relative = 1e-12);
            for j in 0..n {
                if i != j {
                    assert_relative_eq!(
                        p.entry(i, j),
                        1.0 / (2.0 * (n as f64 - 1.0)),
                        max_relative = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn rows_sum_to_one() {
        let mut rng = rng_from(30, &[]);
        let w = crate::btl::generate_scores(20, 5.0, &mut rng).unwrap();
        let edges = crate::graph::erdos_renyi(20, 10.0, &mut rng).unwrap();
        let records = crate::btl::sample_comparisons(&w, &edges, 8, &mut rng).unwrap();
        let graph = ComparisonGraph::from_records(20, &records).unwrap();
        if graph.d_min() > 0 {
            let p = build_transition_regularized(&graph, 0.5).unwrap();
            assert!(p.row_sum_residual() < 1e-12);
        }
    }

    #[test]
    fn build_transition_rejects_empty_edges() {
        let graph = ComparisonGraph::from_records(2, &[record(0, 1, 0, 0)]).unwrap();
        assert!(matches!(
            build_transition(&graph),
            Err(Error::ZeroComparisons { i: 0, j: 1 })
        ));
        let isolated = ComparisonGraph::from_records(3, &[record(0, 1, 1, 1)]).unwrap();
        assert!(matches!(
            build_transition(&isolated),
            Err(Error::IsolatedVertex { vertex: 2 })
        ));
    }

    #[test]
    fn regularized_matches_plain_at_zero() {
        let graph = two_node_graph();
        let plain = build_transition(&graph).unwrap();
        let reg = build_transition_regularized(&graph, 0.0).unwrap();
        assert_eq!(plain, reg);
    }

    #[test]
    fn regularized_prior_mean_on_empty_edge() {
        let graph = ComparisonGraph::from_records(2, &[record(0, 1, 0, 0)]).unwrap();
        let p = build_transition_regularized(&graph, 2.0).unwrap();
        assert_relative_eq!(p.entry(0, 1), 0.5, max_relative = 1e-15);
        assert_relative_eq!(p.entry(1, 0), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn regularized_two_node_example() {
        // a_01 = 2/3, epsilon = 1: P_01 = (2/3 + 1) / 3 = 5/9.
        let p = build_transition_regularized(&two_node_graph(), 1.0).unwrap();
        assert_relative_eq!(p.entry(0, 1), 5.0 / 9.0, max_relative = 1e-15);
        assert!(matches!(
            build_transition_regularized(&two_node_graph(), -0.1),
            Err(Error::NegativeEpsilon { .. })
        ));
    }

    #[test]
    fn ideal_transition_examples() {
        let w = ScoreVector::new(&[0.5, 0.5]).unwrap();
        let p = ideal_transition(&w, &[(0, 1)]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(p.entry(i, j), 0.5, max_relative = 1e-15);
            }
        }
        let w = ScoreVector::new(&[0.25, 0.75]).unwrap();
        let p = ideal_transition(&w, &[(0, 1)]).unwrap();
        assert_relative_eq!(p.entry(0, 1), 0.75, max_relative = 1e-15);
        assert_relative_eq!(p.entry(1, 0), 0.25, max_relative = 1e-15);
    }

    #[test]
    fn ideal_transition_detailed_balance() {
        let mut rng = rng_from(31, &[]);
        let w = crate::btl::generate_scores(15, 8.0, &mut rng).unwrap();
        let edges = crate::graph::erdos_renyi(15, 8.0, &mut rng).unwrap();
        let degrees_ok = {
            let mut deg = [0; 15];
            for &(i, j) in &edges {
                deg[i] += 1;
                deg[j] += 1;
            }
            deg.iter().all(|&d| d > 0)
        };
        if degrees_ok {
            let p = ideal_transition(&w, &edges).unwrap();
            let mut max_residual = 0.0_f64;
            for i in 0..15 {
                for j in 0..15 {
                    let r = (w.values()[i] * p.entry(i, j) - w.values()[j] * p.entry(j, i)).abs();
                    max_residual = max_residual.max(r);
                }
            }
            assert!(max_residual < 1e-14, "residual = {max_residual}");
        }
    }

    #[test]
    fn power_iterate_uniform_on_symmetric_complete() {
        let mut records = Vec::new();
        for i in 0..4 {
            for j in (i + 1)..4 {
                records.push(record(i, j, 5, 5));
            }
        }
        let graph = ComparisonGraph::from_records(4, &records).unwrap();
        let p = build_transition(&graph).unwrap();
        let start = [0.7, 0.1, 0.1, 0.1];
        let result = power_iterate(&p, &start, 1e-12, 10_000).unwrap();
        assert!(result.converged);
        for &v in result.pi.values() {
            assert_relative_eq!(v, 0.25, epsilon = 1e-10);
        }
    }

    #[test]
    fn power_iterate_two_node_oracle() {
        // Detailed balance of the 2-state chain: v0 * P01 = v1 * P10 with
        // P01 = 2/3, P10 = 1/3 gives v = (1/3, 2/3).
        let p = build_transition(&two_node_graph()).unwrap();
        let result = power_iterate(&p, &[0.5, 0.5], 1e-12, 10_000).unwrap();
        assert!(result.converged);
        assert_relative_eq!(result.pi.values()[0], 1.0 / 3.0, epsilon = 1e-9);
        assert_relative_eq!(result.pi.values()[1], 2.0 / 3.0, epsilon = 1e-9);
        assert!(result.irreducible);
    }

    #[test]
    fn power_iterate_identity_fixed_point() {
        let identity = TransitionMatrix::from_rows(3, 1, vec![vec![], vec![], vec![]]).unwrap();
        let start = [0.2, 0.3, 0.5];
        let result = power_iterate(&identity, &start, 1e-10, 100).unwrap();
        assert!(result.converged);
        assert_eq!(result.iterations, 1);
        assert_eq!(result.pi.values(), &start);
        assert!(
            !result.irreducible,
            "identity chain must be flagged non-unique"
        );
    }

    #[test]
    fn power_iterate_fixed_point_residual() {
        let p = build_transition(&two_node_graph()).unwrap();
        let tol = 1e-10;
        let result = power_iterate(&p, &[0.9, 0.1], tol, 10_000).unwrap();
        let pi = result.pi.values();
        let mut out = vec![0.0; 2];
        p.apply_left(pi, &mut out);
        let residual: f64 = pi.iter().zip(&out).map(|(a, b)| (a - b).abs()).sum();
        assert!(residual < 2.0 * tol, "fixed-point residual = {residual}");
    }

    #[test]
    fn power_iterate_reports_nonconvergence() {
        // Period-2 chain: the alternating start never settles.
        let flip = TransitionMatrix::from_rows(2, 1, vec![vec![(1, 1.0)], vec![(0, 1.0)]]).unwrap();
        let result = power_iterate(&flip, &[0.9, 0.1], 1e-12, 50).unwrap();
        assert!(!result.converged);
        assert_eq!(result.iterations, 50);
    }

    #[test]
    fn power_iterate_validates_input() {
        let p = build_transition(&two_node_graph()).unwrap();
        assert!(matches!(
            power_iterate(&p, &[0.5, 0.5], 0.0, 10),
            Err(Error::InvalidTolerance { .. })
        ));
        assert!(matches!(
            power_iterate(&p, &[0.5], 1e-10, 10),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            power_iterate(&p, &[0.9, 0.3], 1e-10, 10),
            Err(Error::InvalidDistribution { .. })
        ));
    }

    #[test]
    fn rank_centrality_two_node() {
        let result = rank_centrality(&two_node_graph(), &RankCentralityOptions::default()).unwrap();
        assert_relative_eq!(result.pi.values()[0], 1.0 / 3.0, epsilon = 1e-9);
        assert_relative_eq!(result.pi.values()[1], 2.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn rank_centrality_symmetric_tournament() {
        let mut records = Vec::new();
        for i in 0..6 {
            for j in (i + 1)..6 {
                records.push(record(i, j, 4, 4));
            }
        }
        let graph = ComparisonGraph::from_records(6, &records).unwrap();
        let result = rank_centrality(&graph, &RankCentralityOptions::default()).unwrap();
        for &v in result.pi.values() {
            assert_relative_eq!(v, 1.0 / 6.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn rank_centrality_rejects_disconnected() {
        let records = vec![record(0, 1, 2, 1), record(2, 3, 1, 2)];
        let graph = ComparisonGraph::from_records(4, &records).unwrap();
        match rank_centrality(&graph, &RankCentralityOptions::default()) {
            Err(Error::Disconnected { components }) => {
                assert_eq!(components, vec![vec![0, 1], vec![2, 3]]);
            }
            other => panic!("expected disconnection error, got {other:?}"),
        }
    }

    #[test]
    fn rank_centrality_one_sided_needs_epsilon() {
        // Item 1 wins everything: without regularization item 0 is a sink.
        let graph = ComparisonGraph::from_records(2, &[record(0, 1, 0, 5)]).unwrap();
        assert!(matches!(
            rank_centrality(&graph, &RankCentralityOptions::default()),
            Err(Error::OneSidedSupport)
        ));
        let result = rank_centrality(
            &graph,
            &RankCentralityOptions {
                epsilon: 1.0,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(result.pi.values()[1] > result.pi.values()[0]);
    }

    #[test]
    fn rank_centrality_monotone_in_wins() {
        // More wins for item 1 at fixed k strictly raises its score.
        let mut previous = 0.0;
        for wins_j in 5..10 {
            let graph =
                ComparisonGraph::from_records(2, &[record(0, 1, 10 - wins_j, wins_j)]).unwrap();
            let result = rank_centrality(&graph, &RankCentralityOptions::default()).unwrap();
            let score = result.pi.values()[1];
            assert!(score > previous, "score {score} not above {previous}");
            previous = score;
        }
    }

    #[test]
    fn rank_centrality_scale_invariant_in_counts() {
        let base = vec![record(0, 1, 2, 6), record(1, 2, 3, 5), record(0, 2, 4, 4)];
        let scaled: Vec<ComparisonRecord> = base
            .iter()
            .map(|r| record(r.i, r.j, r.wins_i * 7, r.wins_j * 7))
            .collect();
        let g1 = ComparisonGraph::from_records(3, &base).unwrap();
        let g2 = ComparisonGraph::from_records(3, &scaled).unwrap();
        let r1 = rank_centrality(&g1, &RankCentralityOptions::default()).unwrap();
        let r2 = rank_centrality(&g2, &RankCentralityOptions::default()).unwrap();
        for (a, b) in r1.pi.values().iter().zip(r2.pi.values()) {
            assert_relative_eq!(a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn fixed_point_identity_in_win_fractions() {
        // pi(i) = sum_j pi(j) A_ji / sum_l A_il, the self-loop cancels.
        let mut rng = rng_from(32, &[]);
        let w = crate::btl::generate_scores(12, 6.0, &mut rng).unwrap();
        let edges: Vec<(usize, usize)> = (0..12)
            .flat_map(|i| ((i + 1)..12).map(move |j| (i, j)))
            .collect();
        let records = crate::btl::sample_comparisons(&w, &edges, 50, &mut rng).unwrap();
        let graph = ComparisonGraph::from_records(12, &records).unwrap();
        let tol = 1e-10;
        let result = rank_centrality(
            &graph,
            &RankCentralityOptions {
                tol,
                ..Default::default()
            },
        )
        .unwrap();
        let pi = result.pi.values();

        let mut a = vec![vec![0.0; 12]; 12];
        for edge in graph.edges() {
            a[edge.i][edge.j] = edge.a_ij().unwrap();
            a[edge.j][edge.i] = edge.a_ji().unwrap();
        }
        for i in 0..12 {
            let inflow: f64 = (0..12).map(|j| pi[j] * a[j][i]).sum();
            let outflow: f64 = (0..12).map(|l| a[i][l]).sum();
            assert!(
                (pi[i] - inflow / outflow).abs() < 10.0 * tol,
                "fixed-point violation at {i}"
            );
        }
    }

    #[test]
    fn ideal_chain_recovers_scores() {
        let mut rng = rng_from(33, &[]);
        let w = crate::btl::generate_scores(25, 9.0, &mut rng).unwrap();
        let edges: Vec<(usize, usize)> = (0..25)
            .flat_map(|i| ((i + 1)..25).map(move |j| (i, j)))
            .collect();
        let p = ideal_transition(&w, &edges).unwrap();
        let tol = 1e-12;
        let uniform = vec![1.0 / 25.0; 25];
        let result = power_iterate(&p, &uniform, tol, 100_000).unwrap();
        let error: f64 = result
            .pi
            .values()
            .iter()
            .zip(w.values())
            .map(|(a, b)| (a - b).abs())
            .sum();
        assert!(error < tol * 25.0 * 10.0, "recovery error = {error}");
    }
}
