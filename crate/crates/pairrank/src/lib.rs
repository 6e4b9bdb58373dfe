//! Rank aggregation from noisy pairwise comparisons.
//!
//! Given `n` items and outcomes of repeated pairwise comparisons, this crate
//! estimates a positive score for every item. The primary estimator is
//! **Rank Centrality**: a random walk on the comparison graph that moves from
//! an item toward the items that beat it, with each item scored by its
//! stationary probability. Under the Bradley-Terry-Luce (BTL) outcome model
//! the walk's ideal version is reversible with stationary distribution equal
//! to the true (simplex-normalized) scores, which is what makes the estimator
//! consistent.
//!
//! | Module | What it provides |
//! |--------|------------------|
//! | [`btl`] | BTL score vectors, simplex distance, synthetic outcome sampling |
//! | [`graph`] | Comparison graphs, Erdős–Rényi sampling, Laplacian spectral gap |
//! | [`centrality`] | Rank Centrality transition matrices and power iteration |
//! | [`baselines`] | BTL maximum likelihood, Borda count, ratio matrix, MC1–MC4 |
//! | [`metrics`] | D_w and L1 rank errors, normalized error, Fisher/Cramér-Rao |
//! | [`theory`] | Numeric checks of the spectral bounds and scaling studies |
//! | [`algo`] | Uniform algorithm selection used by sweeps and the CLI |
//!
//! All randomness flows through caller-supplied seeded generators
//! ([`rand_chacha::ChaCha8Rng`] in practice), so every experiment is
//! reproducible from a single `u64` seed.
//!
//! ```
//! use pairrank::btl::ComparisonRecord;
//! use pairrank::centrality::{rank_centrality, RankCentralityOptions};
//! use pairrank::graph::ComparisonGraph;
//!
//! // Item 1 was preferred in two of three comparisons against item 0.
//! let records = vec![ComparisonRecord::new(0, 1, 1, 2)?];
//! let graph = ComparisonGraph::from_records(2, &records)?;
//! let result = rank_centrality(&graph, &RankCentralityOptions::default())?;
//! assert!((result.pi.values()[1] - 2.0 / 3.0).abs() < 1e-9);
//! # Ok::<(), pairrank::Error>(())
//! ```

pub mod algo;
pub mod baselines;
pub mod btl;
pub mod centrality;
pub mod graph;
pub mod metrics;
pub mod seed;
pub mod theory;

mod error;
mod scc;

pub use error::{Error, Result};
