//! Numeric verification of the spectral machinery behind the error bounds,
//! plus the Monte-Carlo sweep infrastructure.
//!
//! The estimator's analysis rests on a few checkable facts about the ideal
//! chain `P~` (reversibility, a spectral gap controlled by the graph, a
//! Dirichlet-form comparison with the simple walk) and about the noise
//! matrix `Delta = P - P~` (its spectral norm shrinks like
//! `sqrt(log n / (k d_max))`). Everything here evaluates those statements on
//! concrete instances: no proofs, just numbers with explicit slack.

use rayon::prelude::*;

use crate::algo::{run_algorithm, Algorithm};
use crate::btl::{generate_scores, sample_comparisons, ScoreVector};
use crate::centrality::{ideal_transition, TransitionMatrix};
use crate::graph::{spectral_gap, ComparisonGraph};
use crate::metrics::{dw_error, normalized_error_raw, rank_from_scores};
use crate::seed::rng_from;
use crate::{Error, Result};

use nalgebra::DMatrix;

/// Largest detailed-balance violation `max |pi_i P_ij - pi_j P_ji|`.
pub fn detailed_balance_residual(matrix: &TransitionMatrix, pi: &ScoreVector) -> f64 {
    let w = pi.values();
    let mut worst = 0.0_f64;
    for i in 0..matrix.n() {
        for &(j, p_ij) in matrix.row(i) {
            if j > i {
                let r = (w[i] * p_ij - w[j] * matrix.entry(j, i)).abs();
                worst = worst.max(r);
            }
        }
    }
    worst
}

/// Second-largest absolute eigenvalue of a reversible chain, computed on the
/// symmetrization `Pi^{1/2} P Pi^{-1/2}` (same spectrum).
pub fn lambda_max_reversible(matrix: &TransitionMatrix, pi: &ScoreVector) -> Result<f64> {
    let n = matrix.n();
    if pi.len() != n {
        return Err(Error::LengthMismatch {
            left: pi.len(),
            right: n,
        });
    }
    let sqrt_pi: Vec<f64> = pi.values().iter().map(|v| v.sqrt()).collect();
    let mut sym = DMatrix::zeros(n, n);
    for i in 0..n {
        sym[(i, i)] = matrix.diag(i);
        for &(j, value) in matrix.row(i) {
            sym[(i, j)] = sqrt_pi[i] * value / sqrt_pi[j];
        }
    }
    // Guard rounding; the matrix is symmetric for a reversible chain.
    let sym = (&sym + sym.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(eigenvalues[1.min(n - 1)].max(-eigenvalues[n - 1]))
}

/// The simple random walk `Q_ij = 1/d_i` on the graph together with its
/// stationary distribution `mu(i) = d_i / sum_j d_j`.
pub fn simple_walk(graph: &ComparisonGraph) -> Result<(TransitionMatrix, ScoreVector)> {
    let n = graph.n();
    if let Some(vertex) = graph.degrees().iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex { vertex });
    }
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for edge in graph.edges() {
        rows[edge.i].push((edge.j, 1.0 / graph.degrees()[edge.i] as f64));
        rows[edge.j].push((edge.i, 1.0 / graph.degrees()[edge.j] as f64));
    }
    let matrix = TransitionMatrix::from_rows(n, graph.d_max(), rows)?;
    let mu = ScoreVector::new(
        &graph
            .degrees()
            .iter()
            .map(|&d| d as f64)
            .collect::<Vec<_>>(),
    )?;
    Ok((matrix, mu))
}

/// Spectral norm of the difference `P - P_ideal` (largest singular value).
pub fn perturbation_norm(p: &TransitionMatrix, p_ideal: &TransitionMatrix) -> Result<f64> {
    if p.n() != p_ideal.n() {
        return Err(Error::DimensionMismatch {
            left: p.n(),
            right: p_ideal.n(),
        });
    }
    let delta = p.to_dense() - p_ideal.to_dense();
    let svd = delta.svd(false, false);
    Ok(svd.singular_values.iter().copied().fold(0.0, f64::max))
}

/// Spectral diagnostics of an instance: the ideal chain's gap, the graph's
/// gap, the noise norm, and whether the gap inequality
/// `1 - lambda_max(P~) >= xi d_min / (b^2 d_max)` held.
#[derive(Debug, Clone)]
pub struct PerturbationReport {
    /// `|P - P~|_2`; absent when only the ideal chain was analyzed.
    pub delta_norm: Option<f64>,
    /// Graph spectral gap.
    pub xi: f64,
    /// Dynamic range of the scores.
    pub b: f64,
    /// Degree ratio `d_max / d_min`.
    pub kappa: f64,
    /// `lambda_max(P~) + |Delta|_2 sqrt(pi_max / pi_min)`; absent without a
    /// noisy chain.
    pub rho: Option<f64>,
    pub lambda_max_ideal: f64,
    /// `1 - lambda_max(P~)`.
    pub gap_lhs: f64,
    /// `xi d_min / (b^2 d_max)`.
    pub gap_rhs: f64,
    pub gap_bound_holds: bool,
}

/// Evaluates both sides of the gap inequality for known scores on a graph.
pub fn check_spectral_gap_bound(
    w: &ScoreVector,
    graph: &ComparisonGraph,
) -> Result<PerturbationReport> {
    build_report(None, w, graph)
}

/// Full perturbation diagnostics for an empirical chain `p` against the
/// ideal chain built from `w` on the same graph.
pub fn perturbation_report(
    p: &TransitionMatrix,
    w: &ScoreVector,
    graph: &ComparisonGraph,
) -> Result<PerturbationReport> {
    build_report(Some(p), w, graph)
}

fn build_report(
    p: Option<&TransitionMatrix>,
    w: &ScoreVector,
    graph: &ComparisonGraph,
) -> Result<PerturbationReport> {
    if w.len() != graph.n() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: graph.n(),
        });
    }
    let summary = spectral_gap(graph)?;
    if let Some(components) = summary.components {
        return Err(Error::Disconnected { components });
    }
    let ideal = ideal_transition(w, &graph.edge_pairs())?;
    let lambda_max_ideal = lambda_max_reversible(&ideal, w)?;
    let b = w.dynamic_range();
    let gap_lhs = 1.0 - lambda_max_ideal;
    let gap_rhs = summary.xi * summary.d_min as f64 / (b * b * summary.d_max as f64);
    let (delta_norm, rho) = match p {
        Some(p) => {
            let delta = perturbation_norm(p, &ideal)?;
            let rho = lambda_max_ideal + delta * b.sqrt();
            (Some(delta), Some(rho))
        }
        None => (None, None),
    };
    Ok(PerturbationReport {
        delta_norm,
        xi: summary.xi,
        b,
        kappa: summary.kappa,
        rho,
        lambda_max_ideal,
        gap_lhs,
        gap_rhs,
        gap_bound_holds: gap_lhs >= gap_rhs - 1e-12,
    })
}

/// Outcome of the Dirichlet-form comparison between two reversible chains on
/// one edge set: `(1 - lambda_max(P)) / (1 - lambda_max(Q)) >= alpha / beta`
/// with `alpha = min pi_i P_ij / (mu_i Q_ij)` and `beta = max pi_i / mu_i`.
#[derive(Debug, Clone, Copy)]
pub struct DirichletReport {
    pub alpha: f64,
    pub beta: f64,
    pub gap_p: f64,
    pub gap_q: f64,
    /// `gap_p / gap_q`; infinite when the reference chain has no gap.
    pub gap_ratio: f64,
    pub holds: bool,
}

pub fn dirichlet_comparison(
    p_ideal: &TransitionMatrix,
    pi_ideal: &ScoreVector,
    q: &TransitionMatrix,
    mu: &ScoreVector,
) -> Result<DirichletReport> {
    let n = p_ideal.n();
    if q.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: q.n(),
        });
    }
    for (matrix, pi) in [(p_ideal, pi_ideal), (q, mu)] {
        let residual = detailed_balance_residual(matrix, pi);
        if residual > 1e-10 {
            return Err(Error::NotReversible { residual });
        }
    }

    let mut alpha = f64::INFINITY;
    let mut beta = 0.0_f64;
    let w = pi_ideal.values();
    let m = mu.values();
    for i in 0..n {
        beta = beta.max(w[i] / m[i]);
        let p_row = p_ideal.row(i);
        let q_row = q.row(i);
        if p_row.len() != q_row.len() {
            return Err(Error::SupportMismatch);
        }
        for (&(jp, p_ij), &(jq, q_ij)) in p_row.iter().zip(q_row) {
            if jp != jq || p_ij <= 0.0 || q_ij <= 0.0 {
                return Err(Error::SupportMismatch);
            }
            alpha = alpha.min(w[i] * p_ij / (m[i] * q_ij));
        }
    }

    let gap_p = 1.0 - lambda_max_reversible(p_ideal, pi_ideal)?;
    let gap_q = 1.0 - lambda_max_reversible(q, mu)?;
    let (gap_ratio, holds) = if gap_q > 1e-13 {
        let ratio = gap_p / gap_q;
        (ratio, ratio >= alpha / beta - 1e-12)
    } else {
        // Reference chain has no gap: the right side is vacuous.
        (f64::INFINITY, true)
    };
    Ok(DirichletReport {
        alpha,
        beta,
        gap_p,
        gap_q,
        gap_ratio,
        holds,
    })
}

/// Whether a power-iteration trajectory stayed below its geometric envelope
/// `rho^t e_0 sqrt(pi_max/pi_min) + |Delta|_2 sqrt(pi_max/pi_min) / (1-rho)`.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryCheck {
    pub rho: f64,
    /// The envelope only binds when `rho < 1`.
    pub applicable: bool,
    pub holds: bool,
    /// Largest `error - envelope` over the trajectory (negative = slack).
    pub max_excess: f64,
    pub steps: usize,
}

/// Runs `steps` power-iteration steps of the empirical chain from the
/// uniform start and compares the per-step relative error against the
/// perturbation envelope.
pub fn convergence_envelope_trajectory(
    p: &TransitionMatrix,
    p_ideal: &TransitionMatrix,
    pi_ideal: &ScoreVector,
    steps: usize,
) -> Result<TrajectoryCheck> {
    let n = p.n();
    if pi_ideal.len() != n {
        return Err(Error::LengthMismatch {
            left: pi_ideal.len(),
            right: n,
        });
    }
    let delta = perturbation_norm(p, p_ideal)?;
    let lambda = lambda_max_reversible(p_ideal, pi_ideal)?;
    let ratio_sqrt = pi_ideal.dynamic_range().sqrt();
    let rho = lambda + delta * ratio_sqrt;
    if rho >= 1.0 {
        return Ok(TrajectoryCheck {
            rho,
            applicable: false,
            holds: true,
            max_excess: f64::NEG_INFINITY,
            steps: 0,
        });
    }

    let truth = pi_ideal.values();
    let truth_norm = pi_ideal.norm();
    let mut current = vec![1.0 / n as f64; n];
    let initial_error = relative_error(&current, truth, truth_norm);
    let tail = delta * ratio_sqrt / (1.0 - rho);

    let mut next = vec![0.0; n];
    let mut max_excess = f64::NEG_INFINITY;
    let mut rho_pow = 1.0;
    for _ in 1..=steps {
        p.apply_left(&current, &mut next);
        std::mem::swap(&mut current, &mut next);
        rho_pow *= rho;
        let error = relative_error(&current, truth, truth_norm);
        let envelope = rho_pow * initial_error * ratio_sqrt + tail + 1e-9;
        max_excess = max_excess.max(error - envelope);
    }
    Ok(TrajectoryCheck {
        rho,
        applicable: true,
        holds: max_excess <= 0.0,
        max_excess,
        steps,
    })
}

fn relative_error(p: &[f64], truth: &[f64], truth_norm: f64) -> f64 {
    p.iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
        / truth_norm
}

// ---------------------------------------------------------------------------
// Monte-Carlo sweeps
// ---------------------------------------------------------------------------

/// Which parameter the sweep varies; the other one stays fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Vary comparisons per pair `k`, fixed average degree `d`.
    ComparisonsPerPair,
    /// Vary average degree `d`, fixed `k`.
    AverageDegree,
}

/// Configuration of one synthetic sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n: usize,
    /// Dynamic range of the generated truth scores.
    pub b: f64,
    pub axis: SweepAxis,
    /// Values of the varied parameter (`k` values must be positive integers).
    pub grid: Vec<f64>,
    /// The fixed parameter: `d` when varying `k`, `k` when varying `d`.
    pub fixed: f64,
    pub trials: usize,
    pub seed: u64,
    /// Per-trial budget for redrawing disconnected graphs.
    pub max_resample: usize,
}

impl SweepConfig {
    pub fn new(n: usize, b: f64, axis: SweepAxis, grid: Vec<f64>, fixed: f64) -> Self {
        Self {
            n,
            b,
            axis,
            grid,
            fixed,
            trials: 20,
            seed: 0,
            max_resample: 100,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InfeasibleConfig {
                reason: "empty parameter grid".into(),
            });
        }
        if self.trials == 0 {
            return Err(Error::InfeasibleConfig {
                reason: "trials must be >= 1".into(),
            });
        }
        if self.n < 2 {
            return Err(Error::TooFewItems {
                needed: 2,
                n: self.n,
            });
        }
        let (k_values, d_values): (Vec<f64>, Vec<f64>) = match self.axis {
            SweepAxis::ComparisonsPerPair => (self.grid.clone(), vec![self.fixed]),
            SweepAxis::AverageDegree => (vec![self.fixed], self.grid.clone()),
        };
        for &k in &k_values {
            if k < 1.0 || k.fract() != 0.0 {
                return Err(Error::InfeasibleConfig {
                    reason: format!("k values must be positive integers, got {k}"),
                });
            }
        }
        for &d in &d_values {
            if !(0.0..=self.n as f64).contains(&d) {
                return Err(Error::InfeasibleConfig {
                    reason: format!("degree {d} outside [0, {}]", self.n),
                });
            }
        }
        Ok(())
    }
}

/// Aggregates for one (algorithm, grid point) cell.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub parameter: f64,
    pub trials_ok: usize,
    pub mean_dw: f64,
    pub std_dw: f64,
    pub mean_norm_err: f64,
    pub std_norm_err: f64,
    /// Disconnected graphs redrawn across the cell's trials.
    pub resampled: usize,
    /// Trials that produced no estimate (resampling exhausted or the
    /// algorithm failed on the drawn data).
    pub failed: usize,
}

/// Runs `trials` seeded instances per grid point for one algorithm.
///
/// Per-trial seeds derive from (seed, algorithm tag, grid index, trial
/// index), so cells are reproducible independently of scheduling; trials run
/// in parallel and are aggregated in index order.
pub fn sweep_cells(config: &SweepConfig, algorithm: &Algorithm) -> Result<Vec<SweepCell>> {
    config.validate()?;
    let mut cells = Vec::with_capacity(config.grid.len());
    for (grid_idx, &value) in config.grid.iter().enumerate() {
        let (k, d) = match config.axis {
            SweepAxis::ComparisonsPerPair => (value as u64, config.fixed),
            SweepAxis::AverageDegree => (config.fixed as u64, value),
        };
        let outcomes: Vec<TrialOutcome> = (0..config.trials)
            .into_par_iter()
            .map(|trial| run_trial(config, algorithm, grid_idx as u64, trial as u64, k, d))
            .collect();

        let mut dws = Vec::new();
        let mut errs = Vec::new();
        let mut resampled = 0;
        let mut failed = 0;
        for outcome in outcomes {
            resampled += outcome.resampled;
            match outcome.measures {
                Some((dw, err)) => {
                    dws.push(dw);
                    errs.push(err);
                }
                None => failed += 1,
            }
        }
        let (mean_dw, std_dw) = mean_std(&dws);
        let (mean_norm_err, std_norm_err) = mean_std(&errs);
        cells.push(SweepCell {
            parameter: value,
            trials_ok: dws.len(),
            mean_dw,
            std_dw,
            mean_norm_err,
            std_norm_err,
            resampled,
            failed,
        });
    }
    Ok(cells)
}

struct TrialOutcome {
    resampled: usize,
    measures: Option<(f64, f64)>,
}

fn run_trial(
    config: &SweepConfig,
    algorithm: &Algorithm,
    grid_idx: u64,
    trial: u64,
    k: u64,
    d: f64,
) -> TrialOutcome {
    let mut rng = rng_from(config.seed, &[algorithm.seed_tag(), grid_idx, trial]);
    let w = match generate_scores(config.n, config.b, &mut rng) {
        Ok(w) => w,
        Err(_) => {
            return TrialOutcome {
                resampled: 0,
                measures: None,
            }
        }
    };
    let mut resampled = 0;
    let edges = loop {
        let candidate = match crate::graph::erdos_renyi(config.n, d, &mut rng) {
            Ok(edges) => edges,
            Err(_) => {
                return TrialOutcome {
                    resampled,
                    measures: None,
                }
            }
        };
        if edges_connected(config.n, &candidate) {
            break candidate;
        }
        resampled += 1;
        if resampled > config.max_resample {
            return TrialOutcome {
                resampled,
                measures: None,
            };
        }
    };
    let records = match sample_comparisons(&w, &edges, k, &mut rng) {
        Ok(records) => records,
        Err(_) => {
            return TrialOutcome {
                resampled,
                measures: None,
            }
        }
    };
    let estimate = match run_algorithm(algorithm, config.n, &records) {
        Ok(scores) => scores,
        Err(_) => {
            return TrialOutcome {
                resampled,
                measures: None,
            }
        }
    };
    let dw = dw_error(&w, &rank_from_scores(&estimate)).unwrap_or(f64::NAN);
    let err = normalized_error_raw(&estimate, &w).unwrap_or(f64::NAN);
    TrialOutcome {
        resampled,
        measures: Some((dw, err)),
    }
}

/// Connectivity of a raw edge list over `n` vertices.
pub fn edges_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if values.len() == 1 {
        return (mean, 0.0);
    }
    let var =
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
    (mean, var.sqrt())
}

/// Least-squares slope of `ln y` against `ln x`; `None` unless at least two
/// points have positive coordinates.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0 && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for &(x, y) in &logs {
        cov += (x - mean_x) * (y - mean_y);
        var += (x - mean_x) * (x - mean_x);
    }
    (var > 0.0).then(|| cov / var)
}

/// A sweep plus fitted log-log slopes of the mean errors.
#[derive(Debug, Clone)]
pub struct ScalingStudy {
    pub cells: Vec<SweepCell>,
    /// Slope of `ln(mean normalized error)` vs `ln(parameter)` — the fitted
    /// exponent compared against the `-1/2` sampling law.
    pub slope_norm_err: Option<f64>,
    /// Slope of `ln(mean D_w)` vs `ln(parameter)`, for reference; the
    /// weighted pair metric decays faster than the norm error once most
    /// pairs resolve.
    pub slope_dw: Option<f64>,
}

/// Runs a sweep and fits the error-decay exponents. Requires at least four
/// grid points and ten trials so the fit means something.
pub fn scaling_study(config: &SweepConfig, algorithm: &Algorithm) -> Result<ScalingStudy> {
    if config.grid.len() < 4 {
        return Err(Error::InfeasibleConfig {
            reason: format!(
                "scaling study needs >= 4 grid points, got {}",
                config.grid.len()
            ),
        });
    }
    if config.trials < 10 {
        return Err(Error::InfeasibleConfig {
            reason: format!("scaling study needs >= 10 trials, got {}", config.trials),
        });
    }
    let cells = sweep_cells(config, algorithm)?;
    Ok(study_from_cells(cells))
}

/// Fits the slopes on already-computed cells (no trial-count requirements).
pub fn study_from_cells(cells: Vec<SweepCell>) -> ScalingStudy {
    let norm_points: Vec<(f64, f64)> = cells
        .iter()
        .filter(|c| c.trials_ok > 0)
        .map(|c| (c.parameter, c.mean_norm_err))
        .collect();
    let dw_points: Vec<(f64, f64)> = cells
        .iter()
        .filter(|c| c.trials_ok > 0)
        .map(|c| (c.parameter, c.mean_dw))
        .collect();
    ScalingStudy {
        slope_norm_err: log_log_slope(&norm_points),
        slope_dw: log_log_slope(&dw_points),
        cells,
    }
}

pub mod suites {
    //! Named Monte-Carlo verification suites over seeded random instances.
    //!
    //! Each suite draws its own instances from a base seed and returns one
    //! outcome per claim checked, with the measured extreme in `detail`.

    use super::*;
    use crate::btl::ComparisonRecord;
    use crate::centrality::build_transition;
    use rand::Rng;

    /// One named check with its pass flag and measured detail.
    #[derive(Debug, Clone)]
    pub struct SuiteOutcome {
        pub name: String,
        pub passed: bool,
        pub detail: String,
    }

    /// Uniform-count comparison graph on a connected ER topology.
    fn connected_er_graph(n: usize, d: f64, rng: &mut impl Rng) -> Result<ComparisonGraph> {
        for _ in 0..500 {
            let edges = crate::graph::erdos_renyi(n, d, rng)?;
            if edges_connected(n, &edges) {
                let records: Vec<ComparisonRecord> = edges
                    .iter()
                    .map(|&(i, j)| ComparisonRecord {
                        i,
                        j,
                        wins_i: 1,
                        wins_j: 1,
                    })
                    .collect();
                return ComparisonGraph::from_records(n, &records);
            }
        }
        Err(Error::ResampleExhausted { attempts: 500 })
    }

    fn complete_graph(n: usize) -> ComparisonGraph {
        let records: Vec<ComparisonRecord> = (0..n)
            .flat_map(|i| {
                ((i + 1)..n).map(move |j| ComparisonRecord {
                    i,
                    j,
                    wins_i: 1,
                    wins_j: 1,
                })
            })
            .collect();
        ComparisonGraph::from_records(n, &records).expect("complete graph is valid")
    }

    /// Reversibility of the ideal chain on 100 random instances (n <= 50):
    /// the largest detailed-balance residual must stay below 1e-14.
    pub fn balance(seed: u64) -> Result<Vec<SuiteOutcome>> {
        let mut worst = 0.0_f64;
        for trial in 0..100u64 {
            let mut rng = rng_from(seed, &[1, trial]);
            let n = rng.random_range(3..=50);
            let b = rng.random_range(1.0..=10.0);
            let w = generate_scores(n, b, &mut rng)?;
            let graph = connected_er_graph(n, (n as f64 / 2.0).max(2.0), &mut rng)?;
            let ideal = ideal_transition(&w, &graph.edge_pairs())?;
            worst = worst.max(detailed_balance_residual(&ideal, &w));
        }
        Ok(vec![SuiteOutcome {
            name: "detailed balance of the ideal chain (100 instances, n <= 50)".into(),
            passed: worst < 1e-14,
            detail: format!("max residual {worst:.3e} (< 1e-14)"),
        }])
    }

    /// The spectral-gap inequality `1 - lambda_max(P~) >= xi d_min / (b^2
    /// d_max)`: exact equality on uniform-score K4 and validity over 100
    /// connected ER instances with dynamic range drawn from [2, 10].
    ///
    /// The inequality's constant is loose for b near 1 (it can fail below
    /// b ~ 1.2), so the sampled regime keeps the dynamic range at 2 or more,
    /// where it holds with a clear margin.
    pub fn gap(seed: u64) -> Result<Vec<SuiteOutcome>> {
        let mut outcomes = Vec::new();

        let k4 = complete_graph(4);
        let uniform = ScoreVector::new(&[1.0; 4])?;
        let report = check_spectral_gap_bound(&uniform, &k4)?;
        let equality_gap = (report.gap_lhs - report.gap_rhs).abs();
        outcomes.push(SuiteOutcome {
            name: "gap bound equality on uniform-score K4".into(),
            passed: equality_gap < 1e-9 && report.gap_bound_holds,
            detail: format!(
                "lhs {:.12}, rhs {:.12}, |diff| {equality_gap:.3e} (< 1e-9)",
                report.gap_lhs, report.gap_rhs
            ),
        });

        let mut failures = 0;
        let mut min_margin = f64::INFINITY;
        for trial in 0..100u64 {
            let mut rng = rng_from(seed, &[2, trial]);
            let b = rng.random_range(2.0..=10.0);
            let w = generate_scores(100, b, &mut rng)?;
            let graph = connected_er_graph(100, 20.0, &mut rng)?;
            let report = check_spectral_gap_bound(&w, &graph)?;
            min_margin = min_margin.min(report.gap_lhs - report.gap_rhs);
            if !report.gap_bound_holds {
                failures += 1;
            }
        }
        outcomes.push(SuiteOutcome {
            name: "gap bound on 100 ER(100, d=20) instances, b in [2, 10]".into(),
            passed: failures == 0,
            detail: format!("{failures} violations, min margin {min_margin:.4}"),
        });
        Ok(outcomes)
    }

    /// Dirichlet-form comparison against the simple walk: equality for
    /// identical chains and validity over 100 connected ER instances.
    pub fn dirichlet(seed: u64) -> Result<Vec<SuiteOutcome>> {
        let mut outcomes = Vec::new();

        let mut rng = rng_from(seed, &[3]);
        let graph = connected_er_graph(30, 10.0, &mut rng)?;
        let (q, mu) = simple_walk(&graph)?;
        let report = dirichlet_comparison(&q, &mu, &q, &mu)?;
        outcomes.push(SuiteOutcome {
            name: "comparison is tight for identical chains".into(),
            passed: (report.alpha - 1.0).abs() < 1e-12
                && (report.beta - 1.0).abs() < 1e-12
                && (report.gap_ratio - 1.0).abs() < 1e-9
                && report.holds,
            detail: format!(
                "alpha {:.12}, beta {:.12}, gap ratio {:.12}",
                report.alpha, report.beta, report.gap_ratio
            ),
        });

        let mut failures = 0;
        let mut min_slack = f64::INFINITY;
        for trial in 0..100u64 {
            let mut rng = rng_from(seed, &[4, trial]);
            let b = rng.random_range(1.0..=10.0);
            let w = generate_scores(100, b, &mut rng)?;
            let graph = connected_er_graph(100, 20.0, &mut rng)?;
            let ideal = ideal_transition(&w, &graph.edge_pairs())?;
            let (q, mu) = simple_walk(&graph)?;
            let report = dirichlet_comparison(&ideal, &w, &q, &mu)?;
            min_slack = min_slack.min(report.gap_ratio - report.alpha / report.beta);
            if !report.holds {
                failures += 1;
            }
        }
        outcomes.push(SuiteOutcome {
            name: "comparison on 100 ER(100, d=20) instances, b in [1, 10]".into(),
            passed: failures == 0,
            detail: format!("{failures} violations, min slack {min_slack:.4}"),
        });
        Ok(outcomes)
    }

    /// Noise-matrix diagnostics: the `sqrt(log n / (k d_max))` scaling of
    /// `|Delta|_2` with slack constant 5 (>= 95 of 100 trials), and the
    /// geometric convergence envelope on 50 instances with `rho < 1`.
    pub fn perturbation(seed: u64) -> Result<Vec<SuiteOutcome>> {
        let mut outcomes = Vec::new();

        // Delta-norm scaling on the complete graph, n = 100, b = 2, k = 100.
        let n = 100;
        let k = 100u64;
        let graph = complete_graph(n);
        let edges = graph.edge_pairs();
        let d_max = graph.d_max() as f64;
        let threshold = 5.0 * ((n as f64).ln() / (k as f64 * d_max)).sqrt();
        let mut within = 0;
        let mut worst = 0.0_f64;
        for trial in 0..100u64 {
            let mut rng = rng_from(seed, &[5, trial]);
            let w = generate_scores(n, 2.0, &mut rng)?;
            let records = sample_comparisons(&w, &edges, k, &mut rng)?;
            let sampled = ComparisonGraph::from_records(n, &records)?;
            let p = build_transition(&sampled)?;
            let ideal = ideal_transition(&w, &edges)?;
            let delta = perturbation_norm(&p, &ideal)?;
            worst = worst.max(delta);
            if delta < threshold {
                within += 1;
            }
        }
        outcomes.push(SuiteOutcome {
            name: "noise norm below 5 sqrt(log n / (k d_max)) (complete, n=100, k=100)".into(),
            passed: within >= 95,
            detail: format!("{within}/100 within {threshold:.4}, max {worst:.4}"),
        });

        // Convergence envelope; dense instances keep rho < 1.
        let n = 50;
        let graph = complete_graph(n);
        let edges = graph.edge_pairs();
        let mut holds = 0;
        let mut applicable = 0;
        let mut worst_excess = f64::NEG_INFINITY;
        let mut max_rho = 0.0_f64;
        for trial in 0..50u64 {
            let mut rng = rng_from(seed, &[6, trial]);
            let b = rng.random_range(1.0..=3.0);
            let w = generate_scores(n, b, &mut rng)?;
            let records = sample_comparisons(&w, &edges, 200, &mut rng)?;
            let sampled = ComparisonGraph::from_records(n, &records)?;
            let p = build_transition(&sampled)?;
            let ideal = ideal_transition(&w, &edges)?;
            let check = convergence_envelope_trajectory(&p, &ideal, &w, 200)?;
            max_rho = max_rho.max(check.rho);
            if check.applicable {
                applicable += 1;
                worst_excess = worst_excess.max(check.max_excess);
                if check.holds {
                    holds += 1;
                }
            }
        }
        outcomes.push(SuiteOutcome {
            name: "per-step error under the geometric envelope (50 instances)".into(),
            passed: applicable == 50 && holds == 50,
            detail: format!(
                "{holds}/{applicable} held (rho < 1 in {applicable}/50, max rho {max_rho:.4}, \
                 worst excess {worst_excess:.3e})"
            ),
        });
        Ok(outcomes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btl::ComparisonRecord;
    use crate::centrality::build_transition;
    use approx::assert_relative_eq;

    fn record(i: usize, j: usize, wins_i: u64, wins_j: u64) -> ComparisonRecord {
        ComparisonRecord::new(i, j, wins_i, wins_j).unwrap()
    }

    fn complete_edges(n: usize) -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect()
    }

    fn connected_instance(n: usize, d: f64, b: f64, seed: u64) -> (ScoreVector, ComparisonGraph) {
        let mut rng = rng_from(seed, &[60]);
        let w = generate_scores(n, b, &mut rng).unwrap();
        let edges = loop {
            let edges = crate::graph::erdos_renyi(n, d, &mut rng).unwrap();
            if edges_connected(n, &edges) {
                break edges;
            }
        };
        let records: Vec<ComparisonRecord> =
            edges.iter().map(|&(i, j)| record(i, j, 1, 1)).collect();
        (w, ComparisonGraph::from_records(n, &records).unwrap())
    }

    #[test]
    fn perturbation_norm_zero_for_identical() {
        let w = ScoreVector::new(&[1.0, 2.0, 3.0]).unwrap();
        let p = ideal_transition(&w, &complete_edges(3)).unwrap();
        assert_relative_eq!(perturbation_norm(&p, &p).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn perturbation_norm_two_by_two_oracle() {
        // Delta = [[-d, d], [d, -d]] has spectral norm 2d.
        let w = ScoreVector::new(&[0.5, 0.5]).unwrap();
        let ideal = ideal_transition(&w, &[(0, 1)]).unwrap();
        let graph = ComparisonGraph::from_records(2, &[record(0, 1, 3, 1)]).unwrap();
        let empirical = build_transition(&graph).unwrap();
        // a_01 = 1/4 so Delta_01 = 1/4 - 1/2 = -1/4, norm = 1/2.
        assert_relative_eq!(
            perturbation_norm(&empirical, &ideal).unwrap(),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gap_bound_uniform_k4_is_tight() {
        let w = ScoreVector::new(&[1.0; 4]).unwrap();
        let records: Vec<ComparisonRecord> = complete_edges(4)
            .iter()
            .map(|&(i, j)| record(i, j, 1, 1))
            .collect();
        let graph = ComparisonGraph::from_records(4, &records).unwrap();
        let report = check_spectral_gap_bound(&w, &graph).unwrap();
        assert_relative_eq!(report.gap_lhs, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(report.gap_rhs, 2.0 / 3.0, epsilon = 1e-12);
        assert!(report.gap_bound_holds);
        assert!((report.gap_lhs - report.gap_rhs).abs() < 1e-9);
    }

    #[test]
    fn gap_bound_holds_on_random_instances() {
        for seed in 0..10 {
            let (w, graph) = connected_instance(40, 12.0, 2.0 + (seed as f64) * 0.8, seed);
            let report = check_spectral_gap_bound(&w, &graph).unwrap();
            assert!(
                report.gap_bound_holds,
                "seed {seed}: lhs {} rhs {}",
                report.gap_lhs, report.gap_rhs
            );
        }
    }

    #[test]
    fn dirichlet_identical_chains_are_tight() {
        let (_, graph) = connected_instance(20, 8.0, 3.0, 7);
        let (q, mu) = simple_walk(&graph).unwrap();
        let report = dirichlet_comparison(&q, &mu, &q, &mu).unwrap();
        assert_relative_eq!(report.alpha, 1.0, epsilon = 1e-12);
        assert_relative_eq!(report.beta, 1.0, epsilon = 1e-12);
        assert_relative_eq!(report.gap_ratio, 1.0, epsilon = 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn dirichlet_uniform_k4() {
        let w = ScoreVector::new(&[1.0; 4]).unwrap();
        let records: Vec<ComparisonRecord> = complete_edges(4)
            .iter()
            .map(|&(i, j)| record(i, j, 1, 1))
            .collect();
        let graph = ComparisonGraph::from_records(4, &records).unwrap();
        let p = ideal_transition(&w, &graph.edge_pairs()).unwrap();
        let (q, mu) = simple_walk(&graph).unwrap();
        let report = dirichlet_comparison(&p, &w, &q, &mu).unwrap();
        // P~ = (I + Q)/2 on K4: alpha = 1/2, beta = 1, gaps 2/3 each.
        assert_relative_eq!(report.alpha, 0.5, epsilon = 1e-12);
        assert_relative_eq!(report.beta, 1.0, epsilon = 1e-12);
        assert_relative_eq!(report.gap_ratio, 1.0, epsilon = 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn dirichlet_rejects_irreversible_chain() {
        let graph = ComparisonGraph::from_records(
            3,
            &[record(0, 1, 1, 2), record(1, 2, 1, 2), record(0, 2, 2, 1)],
        )
        .unwrap();
        let p = build_transition(&graph).unwrap();
        let not_stationary = ScoreVector::new(&[1.0, 1.0, 1.0]).unwrap();
        let (q, mu) = simple_walk(&graph).unwrap();
        assert!(matches!(
            dirichlet_comparison(&p, &not_stationary, &q, &mu),
            Err(Error::NotReversible { .. })
        ));
    }

    #[test]
    fn trajectory_envelope_on_small_instance() {
        let mut rng = rng_from(61, &[]);
        let w = generate_scores(20, 2.0, &mut rng).unwrap();
        let edges = complete_edges(20);
        let records = sample_comparisons(&w, &edges, 200, &mut rng).unwrap();
        let graph = ComparisonGraph::from_records(20, &records).unwrap();
        let p = build_transition(&graph).unwrap();
        let ideal = ideal_transition(&w, &edges).unwrap();
        let check = convergence_envelope_trajectory(&p, &ideal, &w, 100).unwrap();
        assert!(check.applicable, "rho = {}", check.rho);
        assert!(check.holds, "excess = {}", check.max_excess);
    }

    #[test]
    fn slope_fits_exact_power_law() {
        let points: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(-0.5)))
            .collect();
        assert_relative_eq!(log_log_slope(&points).unwrap(), -0.5, epsilon = 1e-12);
        assert!(log_log_slope(&[(1.0, 1.0)]).is_none());
    }

    #[test]
    fn ideal_chain_error_is_flat_in_k() {
        // Feeding the infinite-sample chain: error stays at solver precision
        // for every k, so the fitted slope is ~0.
        let mut rng = rng_from(62, &[]);
        let w = generate_scores(15, 5.0, &mut rng).unwrap();
        let edges = complete_edges(15);
        let ideal = ideal_transition(&w, &edges).unwrap();
        let uniform = vec![1.0 / 15.0; 15];
        let mut points = Vec::new();
        for k in [8.0, 16.0, 32.0, 64.0] {
            let result =
                crate::centrality::power_iterate(&ideal, &uniform, 1e-13, 100_000).unwrap();
            let err = crate::metrics::normalized_error(&result.pi, &w).unwrap();
            points.push((k, err.max(1e-16)));
        }
        let slope = log_log_slope(&points).unwrap();
        assert!(slope.abs() < 1e-6, "slope = {slope}");
    }

    #[test]
    fn sweep_cells_shape_and_determinism() {
        let config = SweepConfig {
            trials: 3,
            seed: 11,
            ..SweepConfig::new(12, 4.0, SweepAxis::ComparisonsPerPair, vec![4.0, 8.0], 6.0)
        };
        let algo = Algorithm::RankCentrality { epsilon: 0.0 };
        let a = sweep_cells(&config, &algo).unwrap();
        let b = sweep_cells(&config, &algo).unwrap();
        assert_eq!(a.len(), 2);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.mean_dw.to_bits(), y.mean_dw.to_bits());
            assert_eq!(x.mean_norm_err.to_bits(), y.mean_norm_err.to_bits());
        }
        assert!(a[0].trials_ok + a[0].failed == 3);
    }

    #[test]
    fn sweep_single_trial_has_zero_std() {
        let config = SweepConfig {
            trials: 1,
            seed: 12,
            ..SweepConfig::new(10, 3.0, SweepAxis::ComparisonsPerPair, vec![8.0], 5.0)
        };
        let cells = sweep_cells(&config, &Algorithm::Borda).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].std_dw, 0.0);
        assert_eq!(cells[0].std_norm_err, 0.0);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        let config = SweepConfig::new(10, 3.0, SweepAxis::AverageDegree, vec![11.0], 8.0);
        assert!(matches!(
            sweep_cells(&config, &Algorithm::Borda),
            Err(Error::InfeasibleConfig { .. })
        ));
        let config = SweepConfig::new(10, 3.0, SweepAxis::ComparisonsPerPair, vec![2.5], 5.0);
        assert!(matches!(
            sweep_cells(&config, &Algorithm::Borda),
            Err(Error::InfeasibleConfig { .. })
        ));
        let study = scaling_study(
            &SweepConfig::new(10, 3.0, SweepAxis::ComparisonsPerPair, vec![2.0, 4.0], 5.0),
            &Algorithm::Borda,
        );
        assert!(matches!(study, Err(Error::InfeasibleConfig { .. })));
    }
}
