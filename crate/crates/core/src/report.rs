//! Hierarchy report records and their CSV form.
//!
//! The CSV header is `network,label_order,mean,std,cov,measure,trials,seed`,
//! followed by `ref_mean,ref_std,band_pass,spearman` when a reference table
//! was compared. Missing values (an undefined coefficient of variation, a
//! network absent from the reference) are written as `NA`. Floats use the
//! shortest representation that parses back to the same value.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phic::{ExperimentConfig, HierarchyRow};
use crate::reference::Comparison;

pub const BASE_COLUMNS: [&str; 8] = [
    "network",
    "label_order",
    "mean",
    "std",
    "cov",
    "measure",
    "trials",
    "seed",
];
pub const COMPARISON_COLUMNS: [&str; 4] = ["ref_mean", "ref_std", "band_pass", "spearman"];

/// Marker written for values that do not exist.
pub const NA: &str = "NA";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceColumns {
    pub ref_mean: Option<f64>,
    pub ref_std: Option<f64>,
    pub band_pass: Option<bool>,
    pub spearman: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyRecord {
    pub network: String,
    pub label_order: usize,
    pub mean: f64,
    pub std: f64,
    pub cov: Option<f64>,
    pub measure: String,
    pub trials: usize,
    pub seed: u64,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceColumns>,
}

pub fn hierarchy_records(
    rows: &[HierarchyRow],
    config: &ExperimentConfig,
    comparison: Option<&Comparison>,
) -> Vec<HierarchyRecord> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| HierarchyRecord {
            network: row.network().label(),
            label_order: row.label_order,
            mean: row.mean(),
            std: row.std(),
            cov: row.cov(),
            measure: config.kind.name().to_string(),
            trials: config.trials,
            seed: config.seed,
            reference: comparison.map(|c| ReferenceColumns {
                ref_mean: c.rows[i].ref_mean,
                ref_std: c.rows[i].ref_std,
                band_pass: c.rows[i].band_pass,
                spearman: c.spearman,
            }),
        })
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| NA.to_string(), |x| x.to_string())
}

pub fn write_csv<W: Write>(w: W, records: &[HierarchyRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let with_ref = records.iter().any(|r| r.reference.is_some());
    let mut header: Vec<&str> = BASE_COLUMNS.to_vec();
    if with_ref {
        header.extend(COMPARISON_COLUMNS);
    }
    out.write_record(&header).map_err(csv_io)?;
    for r in records {
        let mut cells = vec![
            r.network.clone(),
            r.label_order.to_string(),
            r.mean.to_string(),
            r.std.to_string(),
            opt(r.cov),
            r.measure.clone(),
            r.trials.to_string(),
            r.seed.to_string(),
        ];
        if with_ref {
            let c = r.reference.as_ref();
            cells.push(opt(c.and_then(|c| c.ref_mean)));
            cells.push(opt(c.and_then(|c| c.ref_std)));
            cells.push(opt(c.and_then(|c| c.band_pass)));
            cells.push(opt(c.and_then(|c| c.spearman)));
        }
        out.write_record(&cells).map_err(csv_io)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a CSV written by [`write_csv`]. Every base column must be present.
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<HierarchyRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(csv_io)?.clone();
    let find = |c: &str| headers.iter().position(|h| h == c);
    let mut base = [0usize; 8];
    for (slot, name) in base.iter_mut().zip(BASE_COLUMNS) {
        *slot = find(name).ok_or_else(|| Error::Schema {
            column: name.into(),
            message: "required column is missing".into(),
        })?;
    }
    let extra: Option<Vec<usize>> = COMPARISON_COLUMNS.iter().map(|c| find(c)).collect();

    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_io)?;
        let get = |i: usize| record.get(i).unwrap_or("");
        let num = |i: usize, col: &str| -> Result<Option<f64>> {
            let s = get(i);
            if s == NA {
                return Ok(None);
            }
            s.parse().map(Some).map_err(|e| Error::Schema {
                column: col.into(),
                message: format!("{s:?}: {e}"),
            })
        };
        let int = |i: usize, col: &str| -> Result<u64> {
            get(i).parse().map_err(|e| Error::Schema {
                column: col.into(),
                message: format!("{:?}: {e}", get(i)),
            })
        };
        let required = |v: Option<f64>, col: &str| {
            v.ok_or_else(|| Error::Schema {
                column: col.into(),
                message: "value is NA".into(),
            })
        };
        let reference = match &extra {
            Some(cols) => Some(ReferenceColumns {
                ref_mean: num(cols[0], "ref_mean")?,
                ref_std: num(cols[1], "ref_std")?,
                band_pass: match get(cols[2]) {
                    "true" => Some(true),
                    "false" => Some(false),
                    _ => None,
                },
                spearman: num(cols[3], "spearman")?,
            }),
            None => None,
        };
        out.push(HierarchyRecord {
            network: get(base[0]).to_string(),
            label_order: int(base[1], "label_order")? as usize,
            mean: required(num(base[2], "mean")?, "mean")?,
            std: required(num(base[3], "std")?, "std")?,
            cov: num(base[4], "cov")?,
            measure: get(base[5]).to_string(),
            trials: int(base[6], "trials")? as usize,
            seed: int(base[7], "seed")?,
            reference,
        });
    }
    Ok(out)
}

fn csv_io(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(cov: Option<f64>, reference: Option<ReferenceColumns>) -> HierarchyRecord {
        HierarchyRecord {
            network: "XOR-XOR-XOR".into(),
            label_order: 1,
            mean: 0.6041457286432161,
            std: 0.019,
            cov,
            measure: "etc".into(),
            trials: 20,
            seed: 7,
            reference,
        }
    }

    #[test]
    fn header_and_na() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record(None, None)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "network,label_order,mean,std,cov,measure,trials,seed\n\
             XOR-XOR-XOR,1,0.6041457286432161,0.019,NA,etc,20,7\n"
        );
    }

    #[test]
    fn csv_round_trip() {
        let recs = vec![
            record(
                Some(0.1),
                Some(ReferenceColumns {
                    ref_mean: Some(0.604),
                    ref_std: Some(0.02),
                    band_pass: Some(true),
                    spearman: Some(0.95),
                }),
            ),
            record(
                None,
                Some(ReferenceColumns {
                    ref_mean: None,
                    ref_std: None,
                    band_pass: None,
                    spearman: Some(0.95),
                }),
            ),
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    }

    #[test]
    fn missing_column() {
        let err = read_csv(&b"network,mean\nOR-OR,1\n"[..]).unwrap_err();
        assert!(matches!(err, Error::Schema { ref column, .. } if column == "label_order"));
    }
}
