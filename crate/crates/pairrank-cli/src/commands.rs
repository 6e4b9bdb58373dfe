//! Subcommand implementations. Each returns the text destined for stdout;
//! machine tables go to `--out` files.

use rayon::prelude::*;

use pairrank::algo::{run_algorithm, Algorithm};
use pairrank::baselines::{markov_chain_baseline, mle_fit, MleOptions};
use pairrank::btl::{generate_scores, sample_comparisons, ComparisonRecord};
use pairrank::centrality::{rank_centrality, RankCentralityOptions, StationaryResult};
use pairrank::graph::{connected_components, erdos_renyi, ComparisonGraph};
use pairrank::metrics::{
    cramer_rao_bound, fisher_information, l1_displacement, normalized_error, rank_from_scores,
};
use pairrank::seed::rng_from;
use pairrank::theory::{
    edges_connected, study_from_cells, suites, sweep_cells, SweepAxis, SweepConfig,
};

use crate::cli::{
    AlgoName, CheckArgs, CrbArgs, RankArgs, RobustnessArgs, SuiteName, SweepArgs, VaryAxis,
};
use crate::ingest::ingest_csv;
use crate::output::{fmt_f64, write_file, Diagnostics, ParamsOut, RankingOutput, Table};
use crate::{CliError, Result};

fn params_out(algorithm: &Algorithm, seed: u64) -> ParamsOut {
    let (epsilon, lambda, alpha) = match algorithm {
        Algorithm::RankCentrality { epsilon } => (Some(*epsilon), None, None),
        Algorithm::Mle { lambda } => (None, Some(*lambda), None),
        Algorithm::Borda => (None, None, None),
        Algorithm::RatioMatrix { smooth } => (Some(*smooth), None, None),
        Algorithm::MarkovChain { alpha, .. } => (None, None, Some(*alpha)),
    };
    ParamsOut {
        epsilon,
        lambda,
        alpha,
        seed,
    }
}

/// Runs an algorithm keeping the solver diagnostics where they exist.
fn run_with_diagnostics(
    algorithm: &Algorithm,
    n: usize,
    records: &[ComparisonRecord],
) -> Result<(Vec<f64>, Option<StationaryResult>)> {
    match algorithm {
        Algorithm::RankCentrality { epsilon } => {
            let graph = ComparisonGraph::from_records(n, records)?;
            let result = rank_centrality(
                &graph,
                &RankCentralityOptions {
                    epsilon: *epsilon,
                    ..Default::default()
                },
            )?;
            Ok((result.pi.values().to_vec(), Some(result)))
        }
        Algorithm::MarkovChain { variant, alpha } => {
            let result = markov_chain_baseline(n, records, *variant, *alpha)?;
            Ok((result.pi.values().to_vec(), Some(result)))
        }
        Algorithm::Mle { lambda } => {
            let (_, scores) = mle_fit(n, records, *lambda, &MleOptions::default())?;
            Ok((scores.values().to_vec(), None))
        }
        _ => Ok((run_algorithm(algorithm, n, records)?, None)),
    }
}

pub fn cmd_rank(args: &RankArgs) -> Result<String> {
    let dataset = ingest_csv(&args.input)?;
    if dataset.empty {
        return Err(CliError::Invalid(format!(
            "{}: no data rows; nothing to rank",
            args.input.display()
        )));
    }
    let n = dataset.n();
    let algorithm = args.params.resolve(args.algo);
    let (raw_scores, stationary) = run_with_diagnostics(&algorithm, n, &dataset.records)?;

    // Simplex-normalize for output (Borda returns win rates).
    let total: f64 = raw_scores.iter().sum();
    let scores: Vec<f64> = raw_scores.iter().map(|s| s / total).collect();
    let ranking = rank_from_scores(&scores);

    let graph = ComparisonGraph::from_records(n, &dataset.records)?;
    let comparisons: u64 = graph.edges().iter().map(|e| e.total()).sum();
    let output = RankingOutput {
        items: dataset.items.clone(),
        scores,
        rank: ranking.positions().to_vec(),
        algorithm: algorithm.label(),
        params: params_out(&algorithm, args.seed),
        diagnostics: Diagnostics {
            items: n,
            edges: graph.edges().len(),
            comparisons,
            connected: connected_components(&graph).len() == 1,
            iterations: stationary.as_ref().map(|s| s.iterations),
            residual: stationary.as_ref().map(|s| s.residual),
            converged: stationary.as_ref().map(|s| s.converged),
        },
    };
    if let Some(path) = &args.out {
        output.write(path)?;
    }
    Ok(output.human_table())
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String> {
    let axis = match args.vary {
        VaryAxis::K => SweepAxis::ComparisonsPerPair,
        VaryAxis::D => SweepAxis::AverageDegree,
    };
    let config = SweepConfig {
        trials: args.trials,
        seed: args.seed,
        ..SweepConfig::new(args.n, args.b, axis, args.grid.clone(), args.fixed)
    };
    let vary_label = match args.vary {
        VaryAxis::K => "k",
        VaryAxis::D => "d",
    };

    let mut table = Table::new(&[
        "algorithm",
        "vary",
        "value",
        "trials_ok",
        "failed",
        "resampled",
        "mean_dw",
        "std_dw",
        "mean_norm_err",
        "std_norm_err",
        "slope_dw",
        "slope_norm_err",
    ]);
    for &name in &args.algos {
        let algorithm = args.params.resolve(name);
        let cells = sweep_cells(&config, &algorithm)?;
        let study = study_from_cells(cells);
        let slope_dw = study.slope_dw.map_or("NA".into(), fmt_f64);
        let slope_ne = study.slope_norm_err.map_or("NA".into(), fmt_f64);
        for cell in &study.cells {
            table.push(vec![
                algorithm.label(),
                vary_label.into(),
                fmt_f64(cell.parameter),
                cell.trials_ok.to_string(),
                cell.failed.to_string(),
                cell.resampled.to_string(),
                fmt_f64(cell.mean_dw),
                fmt_f64(cell.std_dw),
                fmt_f64(cell.mean_norm_err),
                fmt_f64(cell.std_norm_err),
                slope_dw.clone(),
                slope_ne.clone(),
            ]);
        }
    }
    if let Some(path) = &args.out {
        write_file(path, &table.to_csv())?;
    }
    Ok(table.to_human())
}

pub fn cmd_crb(args: &CrbArgs) -> Result<String> {
    if args.trials == 0 {
        return Err(CliError::Invalid("trials must be >= 1".into()));
    }
    if !(0.0..=args.n as f64).contains(&args.d) {
        return Err(CliError::Invalid(format!(
            "degree {} outside [0, {}]",
            args.d, args.n
        )));
    }
    for &k in &args.k {
        if k == 0 {
            return Err(CliError::Invalid("k values must be >= 1".into()));
        }
    }

    let mut table = Table::new(&[
        "k",
        "trials_ok",
        "failed",
        "rc_error",
        "rc_std",
        "mle_error",
        "mle_std",
        "crb",
        "crb_std",
    ]);
    for (k_idx, &k) in args.k.iter().enumerate() {
        let trials: Vec<Option<(f64, f64, f64)>> = (0..args.trials)
            .into_par_iter()
            .map(|trial| crb_trial(args, k, k_idx as u64, trial as u64))
            .collect();
        let mut rc = Vec::new();
        let mut mle = Vec::new();
        let mut crb = Vec::new();
        let mut failed = 0;
        for trial in trials {
            match trial {
                Some((a, b, c)) => {
                    rc.push(a);
                    mle.push(b);
                    crb.push(c);
                }
                None => failed += 1,
            }
        }
        let (rc_mean, rc_std) = mean_std(&rc);
        let (mle_mean, mle_std) = mean_std(&mle);
        let (crb_mean, crb_std) = mean_std(&crb);
        table.push(vec![
            k.to_string(),
            rc.len().to_string(),
            failed.to_string(),
            fmt_f64(rc_mean),
            fmt_f64(rc_std),
            fmt_f64(mle_mean),
            fmt_f64(mle_std),
            fmt_f64(crb_mean),
            fmt_f64(crb_std),
        ]);
    }
    if let Some(path) = &args.out {
        write_file(path, &table.to_csv())?;
    }
    Ok(table.to_human())
}

/// One seeded instance: RC error, MLE error, and the normalized CRB floor.
fn crb_trial(args: &CrbArgs, k: u64, k_idx: u64, trial: u64) -> Option<(f64, f64, f64)> {
    let mut rng = rng_from(args.seed, &[k_idx, trial]);
    let w = generate_scores(args.n, args.b, &mut rng).ok()?;
    let mut attempts = 0;
    let edges = loop {
        let edges = erdos_renyi(args.n, args.d, &mut rng).ok()?;
        if edges_connected(args.n, &edges) {
            break edges;
        }
        attempts += 1;
        if attempts > 100 {
            return None;
        }
    };
    let records = sample_comparisons(&w, &edges, k, &mut rng).ok()?;
    let graph = ComparisonGraph::from_records(args.n, &records).ok()?;

    let rc = rank_centrality(&graph, &RankCentralityOptions::default()).ok()?;
    let rc_err = normalized_error(&rc.pi, &w).ok()?;
    let (_, mle_scores) = mle_fit(args.n, &records, 0.0, &MleOptions::default()).ok()?;
    let mle_err = normalized_error(&mle_scores, &w).ok()?;
    let fisher = fisher_information(&w, &edges, k).ok()?;
    let bound = cramer_rao_bound(&fisher).ok()?;
    Some((rc_err, mle_err, bound.bound.sqrt() / w.norm()))
}

pub fn cmd_robustness(args: &RobustnessArgs) -> Result<String> {
    let dataset = ingest_csv(&args.input)?;
    if dataset.empty {
        return Err(CliError::Invalid(format!(
            "{}: no data rows",
            args.input.display()
        )));
    }
    for &rate in &args.rates {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(CliError::Invalid(format!(
                "sampling rate {rate} outside (0, 1]"
            )));
        }
    }
    if args.trials == 0 {
        return Err(CliError::Invalid("trials must be >= 1".into()));
    }
    let n = dataset.n();
    let graph = ComparisonGraph::from_records(n, &dataset.records)?;
    let components = connected_components(&graph);
    if components.len() > 1 {
        return Err(pairrank::Error::Disconnected { components }.into());
    }

    let mut table = Table::new(&[
        "algorithm",
        "rate",
        "trials_ok",
        "failed",
        "resampled",
        "mean_dl1",
        "std_dl1",
    ]);
    for &name in &args.algos {
        let algorithm = args.params.resolve(name);
        // Ground truth: the algorithm's own ranking on the full dataset.
        let full_scores = run_algorithm(&algorithm, n, &dataset.records)?;
        let sigma_gt = rank_from_scores(&full_scores);

        for (rate_idx, &rate) in args.rates.iter().enumerate() {
            let outcomes: Vec<(usize, Option<f64>)> = (0..args.trials)
                .into_par_iter()
                .map(|trial| {
                    robustness_trial(
                        &algorithm,
                        n,
                        &dataset.records,
                        &sigma_gt,
                        rate,
                        args.seed,
                        rate_idx as u64,
                        trial as u64,
                    )
                })
                .collect();
            let mut values = Vec::new();
            let mut resampled = 0;
            let mut failed = 0;
            for (tries, outcome) in outcomes {
                resampled += tries;
                match outcome {
                    Some(dl1) => values.push(dl1),
                    None => failed += 1,
                }
            }
            let (mean, std) = mean_std(&values);
            table.push(vec![
                algorithm.label(),
                fmt_f64(rate),
                values.len().to_string(),
                failed.to_string(),
                resampled.to_string(),
                fmt_f64(mean),
                fmt_f64(std),
            ]);
        }
    }
    if let Some(path) = &args.out {
        write_file(path, &table.to_csv())?;
    }
    Ok(table.to_human())
}

#[allow(clippy::too_many_arguments)]
fn robustness_trial(
    algorithm: &Algorithm,
    n: usize,
    records: &[ComparisonRecord],
    sigma_gt: &pairrank::metrics::Ranking,
    rate: f64,
    seed: u64,
    rate_idx: u64,
    trial: u64,
) -> (usize, Option<f64>) {
    use rand::Rng;
    let mut rng = rng_from(seed, &[algorithm.seed_tag(), rate_idx, trial]);
    let mut resampled = 0;
    // Redraw until the sampled edge set stays connected (capped).
    let kept: Vec<ComparisonRecord> = loop {
        let kept: Vec<ComparisonRecord> = records
            .iter()
            .filter(|_| rng.random::<f64>() < rate)
            .copied()
            .collect();
        let pairs: Vec<(usize, usize)> = kept.iter().map(|r| (r.i, r.j)).collect();
        if edges_connected(n, &pairs) {
            break kept;
        }
        resampled += 1;
        if resampled > 50 {
            return (resampled, None);
        }
    };
    let scores = match run_algorithm(algorithm, n, &kept) {
        Ok(scores) => scores,
        Err(_) => return (resampled, None),
    };
    let sigma = rank_from_scores(&scores);
    (resampled, l1_displacement(sigma_gt, &sigma).ok())
}

pub fn cmd_check(args: &CheckArgs) -> Result<(String, bool)> {
    let outcomes = match args.suite {
        SuiteName::Balance => suites::balance(args.seed)?,
        SuiteName::Gap => suites::gap(args.seed)?,
        SuiteName::Dirichlet => suites::dirichlet(args.seed)?,
        SuiteName::Perturbation => suites::perturbation(args.seed)?,
    };
    let mut out = String::new();
    let mut all_passed = true;
    for outcome in &outcomes {
        all_passed &= outcome.passed;
        out.push_str(&format!(
            "check {}: {} — {}\n",
            outcome.name,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail
        ));
    }
    Ok((out, all_passed))
}

/// Sample mean and standard deviation; NA-safe for empty input.
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

/// Used by `sweep --algos` validation messages and tests.
pub fn algo_names() -> &'static [AlgoName] {
    use AlgoName::*;
    &[Rc, RcReg, Mle, MleReg, Borda, Ratio, Mc1, Mc2, Mc3, Mc4]
}
