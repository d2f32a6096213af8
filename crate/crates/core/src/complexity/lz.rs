//! Lempel-Ziv (1976) complexity.
//!
//! The sequence is scanned left to right. A component starting at position
//! `l` is extended while the growing word `S[l..=j]` still occurs somewhere
//! in `S[..j]` (the prefix that ends just before `j`, so a match may run into
//! the component itself). The first `j` for which the word is new closes the
//! component. Whatever remains at the end of the sequence forms a final
//! component even if it was seen before.
//!
//! The normalized form is `C = c(n) / n * log_alpha(n)`, which is not bounded
//! by 1 for short sequences.

use std::ops::Range;

use super::SymbolSequence;
use crate::error::{Error, Result};

/// Raw component count and normalized complexity of one sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzResult {
    pub component_count: usize,
    pub normalized: f64,
}

/// Component boundaries of the parse, as half-open index ranges.
pub fn lz_parse(seq: &SymbolSequence) -> Result<Vec<Range<usize>>> {
    let s = seq.symbols();
    let n = s.len();
    if n == 0 {
        return Err(Error::domain("LZ parse of an empty sequence"));
    }
    let mut components = Vec::new();
    let mut start = 0;
    while start < n {
        // Longest prefix of s[start..] that also starts at an earlier position.
        let mut longest = 0;
        for from in 0..start {
            let mut k = 0;
            while start + k < n && s[from + k] == s[start + k] {
                k += 1;
            }
            longest = longest.max(k);
            if start + longest == n {
                break;
            }
        }
        let end = (start + longest + 1).min(n);
        components.push(start..end);
        start = end;
    }
    Ok(components)
}

/// Number of components `c(n)` in the parse.
pub fn lz_parse_count(seq: &SymbolSequence) -> Result<usize> {
    lz_parse(seq).map(|c| c.len())
}

/// `c(n) / n * log_alpha(n)` with `alpha` the declared alphabet size.
///
/// A length-1 sequence has complexity 0.
pub fn lz_normalized(seq: &SymbolSequence) -> Result<f64> {
    lz(seq).map(|r| r.normalized)
}

pub fn lz(seq: &SymbolSequence) -> Result<LzResult> {
    let alpha = seq.alphabet();
    if alpha < 2 {
        return Err(Error::domain(format!(
            "normalized LZ needs an alphabet of at least 2 symbols, got {alpha}"
        )));
    }
    let count = lz_parse_count(seq)?;
    let n = seq.len();
    let normalized = if n == 1 {
        0.0
    } else {
        let n = n as f64;
        count as f64 / n * (n.ln() / f64::from(alpha).ln())
    };
    Ok(LzResult {
        component_count: count,
        normalized,
    })
}
