//! Reference state-averaged values for every 3-, 4- and 5-node network,
//! bundled as read-only CSV tables, and the comparison of a computed
//! hierarchy against them.
//!
//! Tables are named `<measure>-<nodes>` where the measure is `phi` (the IIT
//! 3.0 mean, used only as comparison data), `etc` or `lz`. Their
//! `label_order` column is the reference network number.

use std::collections::HashMap;
use std::io::Read;

use serde::Serialize;

use crate::boolnet::NetworkSpec;
use crate::error::{Error, Result};
use crate::phic::{HierarchyRow, MeasureKind};

const TABLES: [(&str, &str); 9] = [
    ("phi-3", include_str!("../data/phi-3.csv")),
    ("phi-4", include_str!("../data/phi-4.csv")),
    ("phi-5", include_str!("../data/phi-5.csv")),
    ("etc-3", include_str!("../data/etc-3.csv")),
    ("etc-4", include_str!("../data/etc-4.csv")),
    ("etc-5", include_str!("../data/etc-5.csv")),
    ("lz-3", include_str!("../data/lz-3.csv")),
    ("lz-4", include_str!("../data/lz-4.csv")),
    ("lz-5", include_str!("../data/lz-5.csv")),
];

/// Names accepted by [`bundled`].
pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    TABLES.iter().map(|(n, _)| *n)
}

/// Raw CSV text of a bundled table.
pub fn bundled_csv(name: &str) -> Option<&'static str> {
    TABLES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub network: NetworkSpec,
    pub label_order: Option<usize>,
    pub mean: f64,
    pub std: Option<f64>,
}

/// Rows of one reference table, in file order (descending mean).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceTable {
    pub name: String,
    pub rows: Vec<ReferenceRow>,
}

impl ReferenceTable {
    /// Row describing the same gate multiset as `spec`, if any.
    pub fn find(&self, spec: &NetworkSpec) -> Option<&ReferenceRow> {
        let key = spec.gate_counts();
        self.rows.iter().find(|r| r.network.gate_counts() == key)
    }
}

pub fn bundled(name: &str) -> Result<ReferenceTable> {
    let text = bundled_csv(name).ok_or_else(|| {
        Error::domain(format!(
            "no bundled table {name:?}; available: {}",
            bundled_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    read_table(name, text.as_bytes())
}

/// Bundled table for a measure and network size (3 to 5 nodes).
pub fn for_measure(kind: MeasureKind, nodes: usize) -> Option<ReferenceTable> {
    bundled(&format!("{}-{nodes}", kind.name())).ok()
}

/// Reads any CSV with `network` and `mean` columns; `label_order` and `std`
/// are picked up when present. Extra columns are ignored.
pub fn read_table<R: Read>(name: &str, reader: R) -> Result<ReferenceTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let col = |c: &str| headers.iter().position(|h| h == c);
    let need = |c: &str| {
        col(c).ok_or_else(|| Error::Schema {
            column: c.to_string(),
            message: "required column is missing".into(),
        })
    };
    let (net_col, mean_col) = (need("network")?, need("mean")?);
    let (order_col, std_col) = (col("label_order"), col("std"));

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let cell = |i: usize| record.get(i).unwrap_or("");
        let network: NetworkSpec = cell(net_col).parse().map_err(|e: Error| Error::Schema {
            column: "network".into(),
            message: format!("line {line}: {e}"),
        })?;
        let mean = parse_f64(cell(mean_col), "mean", line)?;
        let label_order = match order_col.map(cell) {
            Some(s) if !s.is_empty() => Some(s.parse::<usize>().map_err(|e| Error::Schema {
                column: "label_order".into(),
                message: format!("line {line}: {e}"),
            })?),
            _ => None,
        };
        let std = match std_col.map(cell) {
            Some(s) if !s.is_empty() && s != "NA" => Some(parse_f64(s, "std", line)?),
            _ => None,
        };
        rows.push(ReferenceRow {
            network,
            label_order,
            mean,
            std,
        });
    }
    Ok(ReferenceTable {
        name: name.to_string(),
        rows,
    })
}

fn parse_f64(s: &str, column: &str, line: usize) -> Result<f64> {
    s.parse::<f64>().map_err(|e| Error::Schema {
        column: column.into(),
        message: format!("line {line}: {s:?} ({e})"),
    })
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Ranks starting at 1; tied values share the mean of their ranks.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation: Pearson correlation of the average ranks. `None`
/// when either side has no rank variance or lengths differ.
pub fn spearman(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let (ra, rb) = (average_ranks(a), average_ranks(b));
    let n = ra.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    (saa > 0.0 && sbb > 0.0).then(|| sab / (saa * sbb).sqrt())
}

/// Smallest half-width of a comparison band, so that published `0 +- 0`
/// entries are not compared for exact equality.
pub const MIN_BAND: f64 = 0.02;

/// `max(3 * std, MIN_BAND)` around the published mean.
pub fn band_half_width(reference: &ReferenceRow) -> f64 {
    (3.0 * reference.std.unwrap_or(0.0)).max(MIN_BAND)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowComparison {
    pub ref_mean: Option<f64>,
    pub ref_std: Option<f64>,
    pub band_pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub reference: String,
    /// One entry per hierarchy row, same order.
    pub rows: Vec<RowComparison>,
    /// Over the networks present in both tables.
    pub spearman: Option<f64>,
}

pub fn compare(rows: &[HierarchyRow], reference: &ReferenceTable) -> Comparison {
    let mut ours = Vec::new();
    let mut theirs = Vec::new();
    let per_row = rows
        .iter()
        .map(|row| match reference.find(row.network()) {
            Some(r) => {
                ours.push(row.mean());
                theirs.push(r.mean);
                RowComparison {
                    ref_mean: Some(r.mean),
                    ref_std: r.std,
                    band_pass: Some((row.mean() - r.mean).abs() <= band_half_width(r)),
                }
            }
            None => RowComparison {
                ref_mean: None,
                ref_std: None,
                band_pass: None,
            },
        })
        .collect();
    Comparison {
        reference: reference.name.clone(),
        rows: per_row,
        spearman: spearman(&ours, &theirs),
    }
}

/// Published means keyed by canonical network label.
pub fn means_by_label(table: &ReferenceTable) -> HashMap<String, f64> {
    table
        .rows
        .iter()
        .map(|r| (r.network.canonical().label(), r.mean))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_table_loads() {
        for name in bundled_names() {
            let t = bundled(name).unwrap();
            let n: usize = name[name.len() - 1..].parse().unwrap();
            assert_eq!(t.rows.len(), (n + 2) * (n + 1) / 2, "{name}");
            assert!(t.rows.iter().all(|r| r.network.len() == n));
            let keys: std::collections::HashSet<_> =
                t.rows.iter().map(|r| r.network.gate_counts()).collect();
            assert_eq!(keys.len(), t.rows.len(), "{name} repeats a network");
        }
        assert!(bundled("etc-6").is_err());
    }

    #[test]
    fn spot_values() {
        let t = bundled("etc-3").unwrap();
        let xor = t.find(&"XOR-XOR-XOR".parse().unwrap()).unwrap();
        assert_eq!((xor.mean, xor.std), (0.604, Some(0.020)));
        let t = bundled("lz-4").unwrap();
        assert_eq!(t.rows[0].mean, 3.029);
        let t = bundled("phi-3").unwrap();
        assert_eq!(t.find(&"XOR-OR-AND".parse().unwrap()).unwrap().mean, 0.946);
    }

    #[test]
    fn ranks_with_ties() {
        assert_eq!(
            average_ranks(&[3.0, 1.0, 3.0, 2.0]),
            vec![3.5, 1.0, 3.5, 2.0]
        );
    }

    #[test]
    fn spearman_basics() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]), Some(1.0));
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman(&[1.0, 1.0], &[1.0, 2.0]), None);
    }

    #[test]
    fn missing_column_is_named() {
        let err = read_table("x", &b"network,avg\nOR-OR,1\n"[..]).unwrap_err();
        assert_eq!(
            err,
            Error::Schema {
                column: "mean".into(),
                message: "required column is missing".into()
            }
        );
    }
}
