//! The compression-complexity measure of integrated information.
//!
//! For each atomic bipartition (one node against the rest) the single node is
//! clamped twice: once to a uniform random bit series (MEP) and once to a
//! constant series (ZEP), both starting at the node's current state. Each
//! other node's response is scored with a normalized complexity measure, and
//! the MEP score minus the ZEP score is that node's differential complexity.
//! The differences are summed per bipartition and the largest sum is the
//! network's phi-c for the current state.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolnet::{enumerate_networks, simulate_clamped, NetworkSpec, NetworkState};
use crate::complexity::{etc_normalized, lz_normalized, SymbolSequence};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, task_seed, SeedPart};

/// Perturbation length used throughout unless overridden.
pub const DEFAULT_LEN: usize = 200;

/// Tolerance for the empirical lower bound `phi_c >= 0`.
pub const NEGATIVITY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Etc,
    Lz,
}

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Etc => "etc",
            MeasureKind::Lz => "lz",
        }
    }

    /// Normalized complexity of one binary response series.
    pub fn complexity(self, seq: &SymbolSequence) -> f64 {
        match self {
            MeasureKind::Etc => etc_normalized(seq),
            // Response series are binary, so the alphabet is always 2 and
            // never the number of symbols that happen to occur.
            MeasureKind::Lz => {
                let binary = SymbolSequence::intermediate(seq.symbols().to_vec(), 2);
                lz_normalized(&binary).unwrap_or(0.0)
            }
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "etc" => Ok(MeasureKind::Etc),
            "lz" => Ok(MeasureKind::Lz),
            other => Err(Error::domain(format!(
                "unknown measure {other:?}; expected etc or lz"
            ))),
        }
    }
}

fn check_bit(bit: u8) -> Result<()> {
    if bit > 1 {
        return Err(Error::domain(format!(
            "perturbation symbol {bit} is not a bit"
        )));
    }
    Ok(())
}

/// Maximum-entropy perturbation: iid fair bits, element 0 forced to
/// `first_symbol`.
pub fn gen_mep(len: usize, first_symbol: u8, seed: u64) -> Result<SymbolSequence> {
    if len == 0 {
        return Err(Error::domain("perturbation length must be positive"));
    }
    check_bit(first_symbol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits: Vec<u8> = (0..len).map(|_| u8::from(rng.gen::<f64>() > 0.5)).collect();
    bits[0] = first_symbol;
    Ok(SymbolSequence::from_bits(&bits))
}

/// Zero-entropy perturbation: `len` copies of `symbol`.
pub fn gen_zep(len: usize, symbol: u8) -> Result<SymbolSequence> {
    if len == 0 {
        return Err(Error::domain("perturbation length must be positive"));
    }
    check_bit(symbol)?;
    Ok(SymbolSequence::from_bits(&vec![symbol; len]))
}

/// Matching MEP and ZEP series for one perturbed node.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationPair {
    mep: SymbolSequence,
    zep: SymbolSequence,
}

impl PerturbationPair {
    pub fn new(mep: SymbolSequence, zep: SymbolSequence) -> Result<Self> {
        if mep.is_empty() || mep.len() != zep.len() {
            return Err(Error::domain(format!(
                "MEP and ZEP must be non-empty and of equal length ({} vs {})",
                mep.len(),
                zep.len()
            )));
        }
        if !zep.is_constant() {
            return Err(Error::domain("ZEP series is not constant"));
        }
        if mep.symbols()[0] != zep.symbols()[0] {
            return Err(Error::domain("MEP and ZEP start with different symbols"));
        }
        Ok(Self { mep, zep })
    }

    pub fn mep(&self) -> &SymbolSequence {
        &self.mep
    }

    pub fn zep(&self) -> &SymbolSequence {
        &self.zep
    }

    pub fn first_symbol(&self) -> u8 {
        self.zep.symbols()[0] as u8
    }

    pub fn len(&self) -> usize {
        self.mep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mep.is_empty()
    }
}

/// The two MEP series shared by every bipartition of one experiment: one
/// starting with 0 and one starting with 1. ZEPs follow from the state.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSet {
    mep_start0: SymbolSequence,
    mep_start1: SymbolSequence,
}

impl PerturbationSet {
    pub fn generate(len: usize, seed: u64) -> Result<Self> {
        let s0 = derive_seed(seed, &[SeedPart::Label("mep"), SeedPart::Index(0)]);
        let s1 = derive_seed(seed, &[SeedPart::Label("mep"), SeedPart::Index(1)]);
        Ok(Self {
            mep_start0: gen_mep(len, 0, s0)?,
            mep_start1: gen_mep(len, 1, s1)?,
        })
    }

    pub fn from_series(mep_start0: SymbolSequence, mep_start1: SymbolSequence) -> Result<Self> {
        if mep_start0.len() != mep_start1.len() || mep_start0.is_empty() {
            return Err(Error::domain(
                "MEP series must be non-empty and of equal length",
            ));
        }
        if mep_start0.symbols()[0] != 0 || mep_start1.symbols()[0] != 1 {
            return Err(Error::domain(
                "MEP series must start with 0 and 1 respectively",
            ));
        }
        Ok(Self {
            mep_start0,
            mep_start1,
        })
    }

    pub fn len(&self) -> usize {
        self.mep_start0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mep_start0.is_empty()
    }

    pub fn mep(&self, first: u8) -> &SymbolSequence {
        if first == 0 {
            &self.mep_start0
        } else {
            &self.mep_start1
        }
    }

    pub fn pair_for(&self, first: u8) -> PerturbationPair {
        PerturbationPair {
            mep: self.mep(first).clone(),
            zep: SymbolSequence::from_bits(&vec![first; self.len()]),
        }
    }

    /// Bit-complemented series; the complement of the start-1 MEP becomes the
    /// new start-0 MEP and vice versa.
    pub fn complemented(&self) -> Self {
        Self {
            mep_start0: self.mep_start1.complement(),
            mep_start1: self.mep_start0.complement(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DccrdEntry {
    pub node: usize,
    pub mep_complexity: f64,
    pub zep_complexity: f64,
    /// `mep_complexity - zep_complexity`.
    pub value: f64,
}

/// Differential complexity of every unperturbed node for one perturbed node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dccrd {
    pub perturbed_node: usize,
    pub entries: Vec<DccrdEntry>,
}

impl Dccrd {
    pub fn value(&self, node: usize) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.node == node)
            .map(|e| e.value)
    }
}

pub fn dccrd(
    spec: &NetworkSpec,
    state: &NetworkState,
    node: usize,
    kind: MeasureKind,
    pair: &PerturbationPair,
) -> Result<Dccrd> {
    if node >= state.len() {
        return Err(Error::domain(format!("node {node} out of range")));
    }
    if pair.first_symbol() != state.bits()[node] {
        return Err(Error::domain(format!(
            "perturbation starts with {} but node {node} is in state {}",
            pair.first_symbol(),
            state.bits()[node]
        )));
    }
    let with_mep = simulate_clamped(spec, state, node, &pair.mep)?;
    let with_zep = simulate_clamped(spec, state, node, &pair.zep)?;
    let entries = with_mep
        .outputs
        .iter()
        .zip(&with_zep.outputs)
        .map(|(m, z)| {
            let mep_complexity = kind.complexity(&m.series);
            let zep_complexity = kind.complexity(&z.series);
            DccrdEntry {
                node: m.node,
                mep_complexity,
                zep_complexity,
                value: mep_complexity - zep_complexity,
            }
        })
        .collect();
    Ok(Dccrd {
        perturbed_node: node,
        entries,
    })
}

/// Sum of the differential complexities in one distribution.
pub fn aggregate(d: &Dccrd) -> f64 {
    d.entries.iter().map(|e| e.value).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiCResult {
    /// Aggregate for each perturbed node, indexed by node.
    pub per_node_aggregate: Vec<f64>,
    pub phi_c: f64,
    /// Lowest node index attaining `phi_c`.
    pub argmax_node: usize,
    pub dccrds: Vec<Dccrd>,
}

/// Phi-c for one state with explicitly supplied perturbation series.
pub fn phi_c_with(
    spec: &NetworkSpec,
    state: &NetworkState,
    kind: MeasureKind,
    perturbations: &PerturbationSet,
) -> Result<PhiCResult> {
    let dccrds = (0..spec.len())
        .map(|i| {
            let pair = perturbations.pair_for(state.bits().get(i).copied().unwrap_or(0));
            dccrd(spec, state, i, kind, &pair)
        })
        .collect::<Result<Vec<_>>>()?;
    let per_node_aggregate: Vec<f64> = dccrds.iter().map(aggregate).collect();
    let mut argmax_node = 0;
    for (i, &v) in per_node_aggregate.iter().enumerate() {
        if v > per_node_aggregate[argmax_node] {
            argmax_node = i;
        }
    }
    Ok(PhiCResult {
        phi_c: per_node_aggregate[argmax_node],
        per_node_aggregate,
        argmax_node,
        dccrds,
    })
}

/// Phi-c for one state, with both MEP series drawn from `seed`.
pub fn phi_c(
    spec: &NetworkSpec,
    state: &NetworkState,
    kind: MeasureKind,
    seed: u64,
    len: usize,
) -> Result<PhiCResult> {
    let perturbations = PerturbationSet::generate(len, seed)?;
    phi_c_with(spec, state, kind, &perturbations)
}

/// Settings shared by state-averaged runs and sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: MeasureKind,
    pub len: usize,
    pub seed: u64,
    pub trials: usize,
}

impl ExperimentConfig {
    pub fn new(kind: MeasureKind, seed: u64) -> Self {
        Self {
            kind,
            len: DEFAULT_LEN,
            seed,
            trials: 1,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_len(mut self, len: usize) -> Self {
        self.len = len;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("trials per state must be at least 1"));
        }
        if self.len < 2 {
            return Err(Error::domain("perturbation length must be at least 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatePhiC {
    pub state: NetworkState,
    /// Mean phi-c over the trials of this state.
    pub phi_c: f64,
    pub trials: Vec<PhiCResult>,
}

/// Phi-c averaged over every current state of one network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiCSummary {
    pub network: NetworkSpec,
    pub config: ExperimentConfig,
    pub mean: f64,
    /// Sample standard deviation across states.
    pub std: f64,
    /// `std / mean`; `None` when the mean is exactly zero.
    pub cov: Option<f64>,
    pub per_state: Vec<StatePhiC>,
}

/// Mean, sample standard deviation and coefficient of variation.
pub fn describe(values: &[f64]) -> (f64, f64, Option<f64>) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0, None);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let cov = (mean != 0.0).then(|| std / mean);
    (mean, std, cov)
}

/// All trials of one state, seeded exactly as in [`phi_c_mean`].
pub fn phi_c_state(
    spec: &NetworkSpec,
    state: &NetworkState,
    config: &ExperimentConfig,
) -> Result<StatePhiC> {
    config.validate()?;
    let label = spec.label();
    let trials = (0..config.trials)
        .map(|trial| {
            let seed = task_seed(config.seed, &label, state.index(), trial);
            phi_c(spec, state, config.kind, seed, config.len)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StatePhiC {
        state: state.clone(),
        phi_c: trials.iter().map(|r| r.phi_c).sum::<f64>() / config.trials as f64,
        trials,
    })
}

pub fn phi_c_mean(spec: &NetworkSpec, config: &ExperimentConfig) -> Result<PhiCSummary> {
    config.validate()?;
    let label = spec.label();
    let n_states = spec.state_count();
    let trials = config.trials;
    let results = (0..n_states * trials)
        .into_par_iter()
        .map(|task| {
            let (state_index, trial) = (task / trials, task % trials);
            let state = NetworkState::from_index(state_index, spec.len());
            let seed = task_seed(config.seed, &label, state_index, trial);
            phi_c(spec, &state, config.kind, seed, config.len)
        })
        .collect::<Result<Vec<_>>>()?;

    let per_state: Vec<StatePhiC> = results
        .chunks(trials)
        .enumerate()
        .map(|(state_index, chunk)| StatePhiC {
            state: NetworkState::from_index(state_index, spec.len()),
            phi_c: chunk.iter().map(|r| r.phi_c).sum::<f64>() / trials as f64,
            trials: chunk.to_vec(),
        })
        .collect();
    let values: Vec<f64> = per_state.iter().map(|s| s.phi_c).collect();
    let (mean, std, cov) = describe(&values);
    Ok(PhiCSummary {
        network: spec.clone(),
        config: *config,
        mean,
        std,
        cov,
        per_state,
    })
}

/// One row of a hierarchy table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HierarchyRow {
    /// 1-based position of the network in [`enumerate_networks`] order.
    pub label_order: usize,
    pub summary: PhiCSummary,
}

impl HierarchyRow {
    pub fn network(&self) -> &NetworkSpec {
        &self.summary.network
    }

    pub fn mean(&self) -> f64 {
        self.summary.mean
    }

    pub fn std(&self) -> f64 {
        self.summary.std
    }

    pub fn cov(&self) -> Option<f64> {
        self.summary.cov
    }
}

/// State-averaged phi-c for every `n`-node network, highest mean first.
/// Equal means keep enumeration order.
pub fn hierarchy_report(n: usize, config: &ExperimentConfig) -> Result<Vec<HierarchyRow>> {
    if !(2..=5).contains(&n) {
        return Err(Error::domain(format!(
            "exhaustive sweeps support 2 to 5 nodes, got {n}"
        )));
    }
    let specs = enumerate_networks(n)?;
    let mut rows = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            Ok(HierarchyRow {
                label_order: i + 1,
                summary: phi_c_mean(spec, config)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        b.mean()
            .total_cmp(&a.mean())
            .then(a.label_order.cmp(&b.label_order))
    });
    Ok(rows)
}

/// A broken bound found by [`bound_violations`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundViolation {
    pub what: String,
    pub value: f64,
}

/// Checks the documented bounds of one phi-c result: normalized ETC values in
/// [0, 1], ETC phi-c at most `N - 1`, LZ phi-c at most `(N - 1)` times the
/// largest single-series LZ, and phi-c not below `-NEGATIVITY_EPS`.
pub fn bound_violations(result: &PhiCResult, n: usize, kind: MeasureKind) -> Vec<BoundViolation> {
    let mut out = Vec::new();
    let upper = (n - 1) as f64;
    let mut max_single: f64 = 0.0;
    for d in &result.dccrds {
        for e in &d.entries {
            for (side, v) in [("MEP", e.mep_complexity), ("ZEP", e.zep_complexity)] {
                max_single = max_single.max(v);
                if kind == MeasureKind::Etc && !(0.0..=1.0).contains(&v) {
                    out.push(BoundViolation {
                        what: format!(
                            "{side} ETC of node {} under perturbation of node {} outside [0, 1]",
                            e.node, d.perturbed_node
                        ),
                        value: v,
                    });
                }
            }
        }
    }
    let cap = match kind {
        MeasureKind::Etc => upper,
        MeasureKind::Lz => upper * max_single,
    };
    if result.phi_c > cap + NEGATIVITY_EPS {
        out.push(BoundViolation {
            what: format!("phi-c above {cap}"),
            value: result.phi_c,
        });
    }
    if result.phi_c < -NEGATIVITY_EPS {
        out.push(BoundViolation {
            what: "phi-c below zero".into(),
            value: result.phi_c,
        });
    }
    out
}
