//! One decimal symbol per line, LF terminated.

use std::io::{BufRead, Write};

use super::SymbolSequence;
use crate::error::{Error, Result};

/// Reads symbols until EOF. Blank lines are skipped; any other non-numeric
/// line is an error carrying its 1-based line number.
pub fn read_symbols<R: BufRead>(reader: R) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let v = text.parse::<u32>().map_err(|e| Error::Parse {
            line: idx + 1,
            message: format!("{text:?} is not a non-negative integer symbol ({e})"),
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Reads a sequence. The alphabet defaults to `max(symbol) + 1`, floored at 2.
pub fn read_sequence<R: BufRead>(reader: R, alphabet: Option<u32>) -> Result<SymbolSequence> {
    let symbols = read_symbols(reader)?;
    if symbols.is_empty() {
        return Err(Error::domain("sequence file contains no symbols"));
    }
    let alphabet = alphabet.unwrap_or_else(|| (symbols.iter().max().unwrap() + 1).max(2));
    SymbolSequence::new(symbols, alphabet)
}

pub fn write_sequence<W: Write>(mut w: W, seq: &SymbolSequence) -> Result<()> {
    for s in seq.symbols() {
        writeln!(w, "{s}")?;
    }
    Ok(())
}

/// Real-valued samples in the same one-per-line layout.
pub fn write_samples<W: Write>(mut w: W, samples: &[f64]) -> Result<()> {
    for v in samples {
        writeln!(w, "{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let seq = SymbolSequence::from_digits("11010010", 2).unwrap();
        let mut buf = Vec::new();
        write_sequence(&mut buf, &seq).unwrap();
        assert_eq!(buf, b"1\n1\n0\n1\n0\n0\n1\n0\n");
        assert_eq!(read_sequence(&buf[..], None).unwrap(), seq);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = read_sequence(&b"1\n0\nx\n"[..], None).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: err_msg(&err)
            }
        );
        assert!(matches!(
            read_sequence(&b"\n\n"[..], None),
            Err(Error::Domain(_))
        ));
        assert!(read_sequence(&b"0\n3\n"[..], Some(2)).is_err());
    }

    fn err_msg(e: &Error) -> String {
        match e {
            Error::Parse { message, .. } => message.clone(),
            _ => String::new(),
        }
    }
}
