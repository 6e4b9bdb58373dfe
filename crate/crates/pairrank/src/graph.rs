//! Comparison graphs and their spectral diagnostics.
//!
//! A comparison graph has one undirected edge per compared pair, carrying the
//! aggregated win counts of both endpoints. The degree structure and the
//! spectral gap of the simple random walk on the graph control how well the
//! scores can be recovered: `xi = 1 - max{lambda_2, -lambda_n}` of `D^{-1}B`,
//! computed here through the symmetrized matrix `D^{-1/2} B D^{-1/2}`, which
//! has the same spectrum.

use nalgebra::DMatrix;
use rand::Rng;

use crate::btl::ComparisonRecord;
use crate::{Error, Result};

/// One aggregated edge; endpoints are stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeData {
    pub i: usize,
    pub j: usize,
    pub wins_i: u64,
    pub wins_j: u64,
}

impl EdgeData {
    pub fn total(&self) -> u64 {
        self.wins_i + self.wins_j
    }

    /// Fraction of the pair's comparisons in which `j` was preferred.
    pub fn a_ij(&self) -> Option<f64> {
        let k = self.total();
        (k > 0).then(|| self.wins_j as f64 / k as f64)
    }

    /// Fraction of the pair's comparisons in which `i` was preferred.
    pub fn a_ji(&self) -> Option<f64> {
        let k = self.total();
        (k > 0).then(|| self.wins_i as f64 / k as f64)
    }
}

/// Undirected comparison graph over `n` items with aggregated counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonGraph {
    n: usize,
    edges: Vec<EdgeData>,
    degrees: Vec<usize>,
}

impl ComparisonGraph {
    /// Aggregates raw records into a graph. Duplicate pairs (in either
    /// orientation) are summed; self-comparisons and out-of-range indices are
    /// rejected.
    pub fn from_records(n: usize, records: &[ComparisonRecord]) -> Result<Self> {
        let mut counts: std::collections::BTreeMap<(usize, usize), (u64, u64)> =
            std::collections::BTreeMap::new();
        for record in records {
            if record.i == record.j {
                return Err(Error::SelfComparison { item: record.i });
            }
            for index in [record.i, record.j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            let (key, wins) = if record.i < record.j {
                ((record.i, record.j), (record.wins_i, record.wins_j))
            } else {
                ((record.j, record.i), (record.wins_j, record.wins_i))
            };
            let entry = counts.entry(key).or_insert((0, 0));
            entry.0 += wins.0;
            entry.1 += wins.1;
        }
        let edges: Vec<EdgeData> = counts
            .into_iter()
            .map(|((i, j), (wins_i, wins_j))| EdgeData {
                i,
                j,
                wins_i,
                wins_j,
            })
            .collect();
        let mut degrees = vec![0usize; n];
        for edge in &edges {
            degrees[edge.i] += 1;
            degrees[edge.j] += 1;
        }
        Ok(Self { n, edges, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn d_min(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn d_max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Degree ratio `d_max / d_min`.
    pub fn kappa(&self) -> f64 {
        self.d_max() as f64 / self.d_min() as f64
    }

    /// The edge set as index pairs (each with `i < j`).
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }

    /// One canonical record per edge; `from_records(n, to_records())`
    /// round-trips exactly.
    pub fn to_records(&self) -> Vec<ComparisonRecord> {
        self.edges
            .iter()
            .map(|e| ComparisonRecord {
                i: e.i,
                j: e.j,
                wins_i: e.wins_i,
                wins_j: e.wins_j,
            })
            .collect()
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for edge in &self.edges {
            adj[edge.i].push(edge.j);
            adj[edge.j].push(edge.i);
        }
        adj
    }
}

/// Spectral diagnostics of the simple random walk `D^{-1}B` on the graph.
#[derive(Debug, Clone)]
pub struct SpectralSummary {
    pub lambda_2: f64,
    pub lambda_n: f64,
    pub lambda_max: f64,
    /// Spectral gap `1 - lambda_max`, forced to 0 on disconnected graphs.
    pub xi: f64,
    pub d_min: usize,
    pub d_max: usize,
    pub kappa: f64,
    /// Present when the graph is disconnected; lists the vertex partition.
    pub components: Option<Vec<Vec<usize>>>,
}

/// Samples an Erdős–Rényi edge set: every pair enters independently with
/// probability `d / n`.
pub fn erdos_renyi(n: usize, d: f64, rng: &mut impl Rng) -> Result<Vec<(usize, usize)>> {
    if !(0.0..=n as f64).contains(&d) {
        return Err(Error::InvalidDegree { d, n });
    }
    let p = d / n as f64;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Row-stochastic walk matrix `L = D^{-1}B`: `L_ij = 1/d_i` on edges.
pub fn laplacian(graph: &ComparisonGraph) -> Result<DMatrix<f64>> {
    require_min_degree(graph)?;
    let n = graph.n();
    let mut matrix = DMatrix::zeros(n, n);
    for edge in graph.edges() {
        matrix[(edge.i, edge.j)] = 1.0 / graph.degrees()[edge.i] as f64;
        matrix[(edge.j, edge.i)] = 1.0 / graph.degrees()[edge.j] as f64;
    }
    Ok(matrix)
}

/// Eigenvalue diagnostics of the graph walk via the symmetrized matrix
/// `D^{-1/2} B D^{-1/2}` (same spectrum as `D^{-1}B`).
///
/// Disconnected graphs are reported with `xi = 0` and the component
/// partition attached rather than as an error.
pub fn spectral_gap(graph: &ComparisonGraph) -> Result<SpectralSummary> {
    require_min_degree(graph)?;
    let n = graph.n();
    let mut sym = DMatrix::zeros(n, n);
    for edge in graph.edges() {
        let value =
            1.0 / ((graph.degrees()[edge.i] as f64) * (graph.degrees()[edge.j] as f64)).sqrt();
        sym[(edge.i, edge.j)] = value;
        sym[(edge.j, edge.i)] = value;
    }
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let lambda_2 = eigenvalues[1.min(n - 1)];
    let lambda_n = eigenvalues[n - 1];
    let lambda_max = lambda_2.max(-lambda_n);
    let components = connected_components(graph);
    let disconnected = components.len() > 1;
    let xi = if disconnected {
        0.0
    } else {
        (1.0 - lambda_max).clamp(0.0, 1.0)
    };
    Ok(SpectralSummary {
        lambda_2,
        lambda_n,
        lambda_max,
        xi,
        d_min: graph.d_min(),
        d_max: graph.d_max(),
        kappa: graph.kappa(),
        components: disconnected.then_some(components),
    })
}

/// Vertex partition into connected components (singletons for isolated
/// vertices), each sorted, ordered by smallest member.
pub fn connected_components(graph: &ComparisonGraph) -> Vec<Vec<usize>> {
    let adj = graph.adjacency_lists();
    let mut seen = vec![false; graph.n()];
    let mut components = Vec::new();
    for start in 0..graph.n() {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    component.push(v);
                    stack.push(v);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

fn require_min_degree(graph: &ComparisonGraph) -> Result<()> {
    if let Some(vertex) = graph.degrees().iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex { vertex });
    }
    Ok(())
}
