use std::collections::HashMap;

use super::SymbolSequence;
use crate::error::{Error, Result};

/// Shannon entropy in bits per symbol of the empirical symbol distribution.
pub fn shannon_entropy(seq: &SymbolSequence) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::domain("entropy of an empty sequence"));
    }
    Ok(entropy_of(seq.symbols()))
}

pub(crate) fn entropy_of(symbols: &[u32]) -> f64 {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &s in symbols {
        *counts.entry(s).or_default() += 1;
    }
    let mut freq: Vec<usize> = counts.into_values().collect();
    // Fixed summation order keeps the result independent of hash iteration.
    freq.sort_unstable();
    entropy_from_counts(&freq, symbols.len())
}

pub(crate) fn entropy_from_counts(counts: &[usize], total: usize) -> f64 {
    let n = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}
