//! Compression-complexity measures of integrated information.
//!
//! The crate is organised bottom-up:
//!
//! * [`complexity`] scores symbol sequences (Lempel-Ziv, Effort-To-Compress,
//!   Shannon entropy).
//! * [`boolnet`] simulates fully connected XOR/OR/AND networks with one node
//!   clamped to an external series.
//! * [`phic`] perturbs each atomic bipartition with random and constant
//!   inputs and turns the response complexities into phi-c.
//! * [`regression`] fits state-averaged measures against node entropies.
//! * [`hr_neuron`] produces Hindmarsh-Rose spike trains for the same measures.
//! * [`reference`] and [`report`] hold published comparison tables and the
//!   CSV/JSON report formats.

pub mod boolnet;
pub mod complexity;
pub mod error;
pub mod hr_neuron;
pub mod phic;
pub mod reference;
pub mod regression;
pub mod report;
pub mod seed;

pub use error::{Error, Result};
