//! Output rendering: human tables to stdout, CSV/JSON tables to files.

use std::path::Path;

use serde::Serialize;

use crate::{CliError, Result};

/// Machine-readable result of a `rank` invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RankingOutput {
    pub items: Vec<String>,
    /// Simplex-normalized scores, one per item, in input order.
    pub scores: Vec<f64>,
    /// Rank position per item (1 = best), in input order.
    pub rank: Vec<usize>,
    pub algorithm: String,
    pub params: ParamsOut,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub items: usize,
    pub edges: usize,
    pub comparisons: u64,
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}

impl RankingOutput {
    /// Human-readable table, best item first.
    pub fn human_table(&self) -> String {
        let mut order: Vec<usize> = (0..self.items.len()).collect();
        order.sort_by_key(|&i| self.rank[i]);
        let width = self.items.iter().map(|s| s.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:>4}  {:<width$}  {}\n", "rank", "item", "score");
        for &i in &order {
            out.push_str(&format!(
                "{:>4}  {:<width$}  {:.6}\n",
                self.rank[i], self.items[i], self.scores[i]
            ));
        }
        out.push_str(&format!("algorithm: {}\n", self.algorithm));
        let d = &self.diagnostics;
        out.push_str(&format!(
            "items: {}  edges: {}  comparisons: {}  connected: {}\n",
            d.items, d.edges, d.comparisons, d.connected
        ));
        if let (Some(iterations), Some(residual), Some(converged)) =
            (d.iterations, d.residual, d.converged)
        {
            out.push_str(&format!(
                "iterations: {iterations}  residual: {residual:e}  converged: {converged}\n"
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("item,score,rank\n");
        for i in 0..self.items.len() {
            out.push_str(&format!(
                "{},{},{}\n",
                self.items[i], self.scores[i], self.rank[i]
            ));
        }
        out
    }

    /// Writes JSON when the path ends in `.json`, CSV otherwise.
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = if path.extension().is_some_and(|e| e == "json") {
            self.to_json()
        } else {
            self.to_csv()
        };
        write_file(path, &text)
    }
}

/// A rectangular results table rendered as CSV or aligned text.
#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_human(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let render = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = render(&self.headers);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&render(row));
            out.push('\n');
        }
        out
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Full-precision float formatting for machine tables.
pub fn fmt_f64(value: f64) -> String {
    if value.is_nan() {
        "NA".into()
    } else {
        format!("{value}")
    }
}
