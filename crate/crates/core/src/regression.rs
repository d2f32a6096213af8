//! No-intercept least squares of a state-averaged measure against node
//! entropies: `y = n_high * H_high * x_high + n_low * H_low * x_low`.
//!
//! XOR nodes are high entropy; AND and OR nodes are low entropy.

use serde::Serialize;

use crate::boolnet::{gate_output_entropy, GateKind, NetworkSpec};
use crate::error::{Error, Result};

/// Output entropy of a 2-input XOR, in bits.
pub const H_HIGH: f64 = 1.0;

/// Output entropy of a 2-input AND or OR, in bits (rounded as published).
pub const H_LOW: f64 = 0.8113;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyDesignRow {
    pub n_high: usize,
    pub n_low: usize,
    pub h_high: f64,
    pub h_low: f64,
    pub y: f64,
}

impl EntropyDesignRow {
    pub fn new(n_high: usize, n_low: usize, y: f64) -> Self {
        Self {
            n_high,
            n_low,
            h_high: H_HIGH,
            h_low: H_LOW,
            y,
        }
    }

    /// Counts XOR gates as high entropy and the rest as low entropy.
    pub fn from_network(spec: &NetworkSpec, y: f64) -> Self {
        let n_high = spec.gates().iter().filter(|&&g| g == GateKind::Xor).count();
        Self::new(n_high, spec.len() - n_high, y)
    }

    fn high_term(&self) -> f64 {
        self.n_high as f64 * self.h_high
    }

    fn low_term(&self) -> f64 {
        self.n_low as f64 * self.h_low
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyFit {
    pub x_high: f64,
    pub x_low: f64,
}

/// Solves the 2x2 normal equations.
pub fn fit_entropy_model(rows: &[EntropyDesignRow]) -> Result<EntropyFit> {
    if rows.len() < 2 {
        return Err(Error::domain(format!(
            "need at least 2 rows, got {}",
            rows.len()
        )));
    }
    let (mut uu, mut uv, mut vv, mut uy, mut vy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for r in rows {
        let (u, v) = (r.high_term(), r.low_term());
        uu += u * u;
        uv += u * v;
        vv += v * v;
        uy += u * r.y;
        vy += v * r.y;
    }
    if uu == 0.0 {
        return Err(Error::RankDeficient(
            "column n_high*H_high is identically zero".into(),
        ));
    }
    if vv == 0.0 {
        return Err(Error::RankDeficient(
            "column n_low*H_low is identically zero".into(),
        ));
    }
    let det = uu * vv - uv * uv;
    if det.abs() <= 1e-12 * uu * vv {
        return Err(Error::RankDeficient(
            "columns n_high*H_high and n_low*H_low are collinear".into(),
        ));
    }
    Ok(EntropyFit {
        x_high: (vv * uy - uv * vy) / det,
        x_low: (uu * vy - uv * uy) / det,
    })
}

pub fn predict(row: &EntropyDesignRow, fit: &EntropyFit) -> f64 {
    row.high_term() * fit.x_high + row.low_term() * fit.x_low
}

/// Residuals `y - y_hat` in row order.
pub fn residuals(rows: &[EntropyDesignRow], fit: &EntropyFit) -> Vec<f64> {
    rows.iter().map(|r| r.y - predict(r, fit)).collect()
}

/// The exact entropies behind [`H_HIGH`] and [`H_LOW`].
pub fn exact_gate_entropies() -> (f64, f64) {
    (
        gate_output_entropy(GateKind::Xor, 2),
        gate_output_entropy(GateKind::And, 2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_two_exact_rows() {
        let rows = [
            EntropyDesignRow::new(2, 1, 2.0 * 1.5 + 0.8113 * 0.25),
            EntropyDesignRow::new(0, 3, 3.0 * 0.8113 * 0.25),
        ];
        let fit = fit_entropy_model(&rows).unwrap();
        assert!((fit.x_high - 1.5).abs() < 1e-12);
        assert!((fit.x_low - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_designs() {
        let only_low = [
            EntropyDesignRow::new(0, 3, 1.0),
            EntropyDesignRow::new(0, 2, 1.0),
        ];
        let err = fit_entropy_model(&only_low).unwrap_err();
        assert!(err.to_string().contains("n_high*H_high"));
        let collinear = [
            EntropyDesignRow::new(1, 2, 1.0),
            EntropyDesignRow::new(2, 4, 3.0),
        ];
        assert!(matches!(
            fit_entropy_model(&collinear),
            Err(Error::RankDeficient(_))
        ));
        assert!(fit_entropy_model(&[EntropyDesignRow::new(1, 2, 1.0)]).is_err());
    }

    #[test]
    fn empty_row_predicts_zero() {
        let fit = EntropyFit {
            x_high: 1.11,
            x_low: 0.1408,
        };
        assert_eq!(predict(&EntropyDesignRow::new(0, 0, 0.0), &fit), 0.0);
    }

    #[test]
    fn rounded_entropy_matches_exact() {
        let (hi, lo) = exact_gate_entropies();
        assert_eq!(hi, H_HIGH);
        assert!((lo - H_LOW).abs() < 1e-4);
    }

    #[test]
    fn classifies_gates() {
        let row = EntropyDesignRow::from_network(&"OR-AND-XOR".parse().unwrap(), 0.946);
        assert_eq!((row.n_high, row.n_low), (1, 2));
    }
}
