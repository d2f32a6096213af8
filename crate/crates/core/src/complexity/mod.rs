//! Sequence complexity measures: Lempel-Ziv parse counts, Effort-To-Compress
//! and Shannon entropy, plus the one-symbol-per-line text format.

mod entropy;
mod etc;
pub mod io;
mod lz;
mod sequence;

pub(crate) use entropy::entropy_from_counts;
pub use entropy::shannon_entropy;
pub use etc::{etc, etc_normalized, most_frequent_pair, nsrps_step, nsrps_trace, EtcResult};
pub use lz::{lz, lz_normalized, lz_parse, lz_parse_count, LzResult};
pub use sequence::SymbolSequence;
