use std::fmt;

use crate::error::{Error, Result};

/// A finite sequence of small non-negative integer symbols together with the
/// alphabet size it was drawn from.
///
/// Sequences produced by pair substitution may carry symbols at or above the
/// declared alphabet size; those are built with [`SymbolSequence::intermediate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolSequence {
    symbols: Vec<u32>,
    alphabet: u32,
}

impl SymbolSequence {
    /// Builds a sequence whose symbols must all be below `alphabet`.
    pub fn new(symbols: Vec<u32>, alphabet: u32) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::domain("alphabet size must be positive"));
        }
        if let Some((pos, &s)) = symbols.iter().enumerate().find(|(_, &s)| s >= alphabet) {
            return Err(Error::domain(format!(
                "symbol {s} at position {pos} is outside alphabet of size {alphabet}"
            )));
        }
        Ok(Self { symbols, alphabet })
    }

    /// Binary sequence over {0, 1}. Any non-zero input byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self {
            symbols: bits.iter().map(|&b| u32::from(b != 0)).collect(),
            alphabet: 2,
        }
    }

    /// Sequence without the alphabet check, for pair-substitution output.
    pub fn intermediate(symbols: Vec<u32>, alphabet: u32) -> Self {
        Self {
            symbols,
            alphabet: alphabet.max(1),
        }
    }

    /// Parses a character string, assigning symbols in order of first
    /// appearance (`"aacg"` becomes `0 0 1 2`). The alphabet is the number of
    /// distinct characters, floored at 2.
    pub fn from_chars(text: &str) -> Self {
        let mut seen: Vec<char> = Vec::new();
        let symbols = text
            .chars()
            .map(|c| match seen.iter().position(|&x| x == c) {
                Some(i) => i as u32,
                None => {
                    seen.push(c);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        Self {
            symbols,
            alphabet: (seen.len() as u32).max(2),
        }
    }

    /// Parses a string of decimal digits (`"11010010"`), one symbol per digit.
    pub fn from_digits(text: &str, alphabet: u32) -> Result<Self> {
        let symbols = text
            .chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10).ok_or_else(|| {
                    Error::domain(format!("character {c:?} at position {i} is not a digit"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, alphabet)
    }

    /// Re-declares the alphabet size, checking every symbol against it.
    pub fn with_alphabet(self, alphabet: u32) -> Result<Self> {
        Self::new(self.symbols, alphabet)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// True when every symbol equals the first one (including length 0 and 1).
    pub fn is_constant(&self) -> bool {
        match self.symbols.first() {
            None => true,
            Some(&first) => self.symbols.iter().all(|&s| s == first),
        }
    }

    /// Maps `s` to `alphabet - 1 - s`; the binary complement for `alphabet == 2`.
    pub fn complement(&self) -> Self {
        let top = self.alphabet - 1;
        Self {
            symbols: self
                .symbols
                .iter()
                .map(|&s| top.saturating_sub(s))
                .collect(),
            alphabet: self.alphabet,
        }
    }
}

impl fmt::Display for SymbolSequence {
    /// Concatenated digits when every symbol is a single digit, otherwise
    /// space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.symbols.iter().all(|&s| s < 10);
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
