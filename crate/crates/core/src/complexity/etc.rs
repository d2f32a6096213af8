//! Effort-To-Compress via non-sequential recursive pair substitution (NSRPS).
//!
//! Each NSRPS step finds the most frequent adjacent pair and replaces every
//! non-overlapping occurrence, scanning left to right, with a fresh symbol.
//! ETC is the number of steps until the sequence is constant or has a single
//! symbol left.
//!
//! Pair frequencies count non-overlapping occurrences: distinct-symbol pairs
//! cannot overlap themselves, and a run of `k` identical symbols contributes
//! `k / 2` copies of the identical pair. Ties go to the pair whose first
//! occurrence is leftmost. Fresh symbols are one more than the current
//! maximum.

use std::collections::HashMap;

use super::SymbolSequence;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtcResult {
    pub iterations: usize,
    /// `iterations / (L - 1)`, or 0 when `L <= 1`.
    pub normalized: f64,
}

/// The pair replaced by the next NSRPS step, or `None` for sequences shorter
/// than two symbols.
pub fn most_frequent_pair(symbols: &[u32]) -> Option<(u32, u32)> {
    let mut counts: HashMap<(u32, u32), (u32, usize)> = HashMap::new();
    let mut last_identical: Option<usize> = None;
    for (i, w) in symbols.windows(2).enumerate() {
        if w[0] == w[1] {
            // The previous window was the same identical pair and was counted:
            // this one overlaps it.
            if last_identical == Some(i.wrapping_sub(1)) {
                last_identical = None;
                continue;
            }
            last_identical = Some(i);
        }
        counts
            .entry((w[0], w[1]))
            .and_modify(|(c, _)| *c += 1)
            .or_insert((1, i));
    }
    counts
        .into_iter()
        .max_by(|(_, (ca, fa)), (_, (cb, fb))| ca.cmp(cb).then(fb.cmp(fa)))
        .map(|(pair, _)| pair)
}

fn substitute(symbols: &[u32], (a, b): (u32, u32), fresh: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(symbols.len());
    let mut i = 0;
    while i < symbols.len() {
        if i + 1 < symbols.len() && symbols[i] == a && symbols[i + 1] == b {
            out.push(fresh);
            i += 2;
        } else {
            out.push(symbols[i]);
            i += 1;
        }
    }
    out
}

/// One NSRPS step. Fails on sequences that have already halted.
pub fn nsrps_step(seq: &SymbolSequence) -> Result<SymbolSequence> {
    if seq.len() < 2 || seq.is_constant() {
        return Err(Error::domain(
            "NSRPS step on a sequence that is constant or shorter than 2",
        ));
    }
    let symbols = seq.symbols();
    let pair = most_frequent_pair(symbols).expect("length >= 2");
    let fresh = symbols.iter().copied().max().unwrap_or(0) + 1;
    Ok(SymbolSequence::intermediate(
        substitute(symbols, pair, fresh),
        seq.alphabet(),
    ))
}

/// Every sequence visited by NSRPS, starting with the input and ending with
/// the first constant (or length-1) sequence.
pub fn nsrps_trace(seq: &SymbolSequence) -> Vec<SymbolSequence> {
    let mut chain = vec![seq.clone()];
    loop {
        let last = chain.last().unwrap();
        if last.len() < 2 || last.is_constant() {
            return chain;
        }
        let next = nsrps_step(last).expect("halting checked above");
        chain.push(next);
    }
}

pub fn etc(seq: &SymbolSequence) -> EtcResult {
    let len = seq.len();
    if len <= 1 {
        return EtcResult {
            iterations: 0,
            normalized: 0.0,
        };
    }
    let mut current = seq.symbols().to_vec();
    let mut fresh = current.iter().copied().max().unwrap_or(0) + 1;
    let mut iterations = 0;
    while current.len() > 1 && current.iter().any(|&s| s != current[0]) {
        let pair = most_frequent_pair(&current).expect("length >= 2");
        current = substitute(&current, pair, fresh);
        fresh += 1;
        iterations += 1;
    }
    EtcResult {
        iterations,
        normalized: iterations as f64 / (len - 1) as f64,
    }
}

/// Normalized ETC, the per-series measure used by the phi-c pipeline.
pub fn etc_normalized(seq: &SymbolSequence) -> f64 {
    etc(seq).normalized
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> SymbolSequence {
        SymbolSequence::from_digits(s, 10).unwrap()
    }

    #[test]
    fn reference_trace() {
        let chain: Vec<String> = nsrps_trace(&digits("11010010"))
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(chain, ["11010010", "12202", "3202", "402", "52", "6"]);
        let r = etc(&digits("11010010"));
        assert_eq!(r.iterations, 5);
        assert!((r.normalized - 5.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn run_pairs_count_non_overlapping() {
        // "000" holds one countable "00"; "0101" holds two "01".
        assert_eq!(most_frequent_pair(&[0, 0, 0, 1, 0, 1]), Some((0, 1)));
        // "0000" holds two "00" and wins the tie with "01" by position.
        assert_eq!(most_frequent_pair(&[0, 0, 0, 0, 1, 0, 1]), Some((0, 0)));
    }

    #[test]
    fn two_symbols_collapse() {
        let out = nsrps_step(&digits("01")).unwrap();
        assert_eq!(out.symbols(), &[2]);
    }

    #[test]
    fn halted_inputs_rejected() {
        assert!(nsrps_step(&digits("1111")).is_err());
        assert!(nsrps_step(&digits("1")).is_err());
    }

    #[test]
    fn constant_and_degenerate() {
        assert_eq!(etc(&SymbolSequence::from_bits(&[1; 200])).iterations, 0);
        assert_eq!(etc(&SymbolSequence::from_bits(&[1])).normalized, 0.0);
        assert_eq!(etc(&SymbolSequence::from_bits(&[])).normalized, 0.0);
    }

    #[test]
    fn period_four() {
        let bits: Vec<u8> = (0..200).map(|t| u8::from(t % 4 >= 2)).collect();
        let r = etc(&SymbolSequence::from_bits(&bits));
        assert_eq!(r.iterations, 3);
        assert!((r.normalized - 0.015075).abs() < 1e-6);
    }
}
