//! Comparison CSV ingestion and canonical emission.
//!
//! Wire format: UTF-8, comma separated, exact header
//! `item_i,item_j,wins_i,wins_j`. Item ids are arbitrary strings (no commas;
//! such ids are rejected rather than quoted) mapped to dense indices in
//! first-appearance order. Duplicate pairs aggregate in either orientation:
//! `a,b,x,y` and `b,a,y,x` contribute identically because win counts travel
//! with their named items.

use std::collections::HashMap;
use std::path::Path;

use pairrank::btl::ComparisonRecord;
use pairrank::graph::ComparisonGraph;

use crate::{CliError, Result};

pub const CSV_HEADER: &str = "item_i,item_j,wins_i,wins_j";

/// Parsed dataset: item names by dense index plus aggregated records.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub items: Vec<String>,
    pub records: Vec<ComparisonRecord>,
    /// True when the file had a valid header but no data rows.
    pub empty: bool,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.items.len()
    }
}

/// Reads and parses a comparison CSV from disk.
pub fn ingest_csv(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text, &path.display().to_string())
}

/// Parses CSV text; `origin` labels error messages.
pub fn parse_csv(text: &str, origin: &str) -> Result<Dataset> {
    let malformed = |line: usize, message: String| CliError::Malformed {
        path: origin.to_string(),
        line,
        message,
    };

    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, header)) => header.trim_end_matches('\r'),
        None => return Err(malformed(1, "missing header".into())),
    };
    if header != CSV_HEADER {
        return Err(malformed(
            1,
            format!("header must be exactly `{CSV_HEADER}`, got `{header}`"),
        ));
    }

    let mut items: Vec<String> = Vec::new();
    let mut index_of: HashMap<String, usize> = HashMap::new();
    let mut raw_records: Vec<ComparisonRecord> = Vec::new();
    let mut intern = |name: &str, items: &mut Vec<String>| -> usize {
        if let Some(&idx) = index_of.get(name) {
            return idx;
        }
        let idx = items.len();
        items.push(name.to_string());
        index_of.insert(name.to_string(), idx);
        idx
    };

    for (zero_based, raw_line) in lines {
        let line_no = zero_based + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(malformed(
                line_no,
                format!(
                    "expected 4 comma-separated fields, found {} (ids containing commas are \
                     not supported)",
                    fields.len()
                ),
            ));
        }
        let (name_i, name_j) = (fields[0], fields[1]);
        if name_i.is_empty() || name_j.is_empty() {
            return Err(malformed(line_no, "empty item id".into()));
        }
        if name_i == name_j {
            return Err(malformed(
                line_no,
                format!("item `{name_i}` compared with itself"),
            ));
        }
        let parse_count = |field: &str, label: &str| -> Result<u64> {
            if field.starts_with('-') {
                return Err(malformed(line_no, format!("negative count in {label}")));
            }
            field
                .parse::<u64>()
                .map_err(|_| malformed(line_no, format!("invalid count `{field}` in {label}")))
        };
        let wins_i = parse_count(fields[2], "wins_i")?;
        let wins_j = parse_count(fields[3], "wins_j")?;
        let i = intern(name_i, &mut items);
        let j = intern(name_j, &mut items);
        raw_records.push(
            ComparisonRecord::new(i, j, wins_i, wins_j)
                .map_err(|e| malformed(line_no, e.to_string()))?,
        );
    }

    let empty = raw_records.is_empty();
    // Aggregation (orientation-normalized, duplicates summed) is exactly the
    // graph constructor's job.
    let records = if empty {
        Vec::new()
    } else {
        ComparisonGraph::from_records(items.len(), &raw_records)
            .map_err(CliError::Core)?
            .to_records()
    };
    Ok(Dataset {
        items,
        records,
        empty,
    })
}

/// Canonical CSV: aggregated records sorted by index pair. Re-ingesting the
/// emitted text reproduces it byte for byte.
pub fn emit_csv(dataset: &Dataset) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in &dataset.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            dataset.items[record.i], dataset.items[record.j], record.wins_i, record.wins_j
        ));
    }
    out
}
