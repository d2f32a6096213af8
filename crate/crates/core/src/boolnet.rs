//! Synchronous boolean gate networks.
//!
//! Every network is fully connected without self-loops: each node's gate reads
//! the previous states of all other nodes. All nodes update simultaneously.
//! A node can be clamped to an external input series, in which case its own
//! gate is never evaluated but its clamped value still feeds the other gates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complexity::{entropy_from_counts, SymbolSequence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Xor,
    Or,
    And,
}

impl GateKind {
    pub const ALL: [GateKind; 3] = [GateKind::Xor, GateKind::Or, GateKind::And];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Xor => "XOR",
            GateKind::Or => "OR",
            GateKind::And => "AND",
        }
    }

    /// OR and AND swap under De Morgan; XOR has no dual in this gate set.
    pub fn dual(self) -> Option<GateKind> {
        match self {
            GateKind::Or => Some(GateKind::And),
            GateKind::And => Some(GateKind::Or),
            GateKind::Xor => None,
        }
    }

    /// Output given how many of `arity` inputs are 1.
    #[inline]
    fn eval_count(self, ones: usize, arity: usize) -> u8 {
        let out = match self {
            GateKind::Or => ones > 0,
            GateKind::And => ones == arity,
            GateKind::Xor => ones % 2 == 1,
        };
        u8::from(out)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "XOR" => Ok(GateKind::Xor),
            "OR" => Ok(GateKind::Or),
            "AND" => Ok(GateKind::And),
            other => Err(Error::domain(format!(
                "unknown gate {other:?}; valid gates are XOR, OR, AND"
            ))),
        }
    }
}

/// Evaluates a gate on explicit input bits.
pub fn gate_eval(gate: GateKind, inputs: &[u8]) -> Result<u8> {
    if inputs.is_empty() {
        return Err(Error::domain("gate evaluated with no inputs"));
    }
    let ones = inputs.iter().filter(|&&b| b != 0).count();
    Ok(gate.eval_count(ones, inputs.len()))
}

/// Entropy of a gate's output when its `n_inputs` inputs are independent
/// fair bits.
pub fn gate_output_entropy(gate: GateKind, n_inputs: u32) -> f64 {
    if n_inputs == 0 || n_inputs >= 64 {
        // A zero-input gate has no output distribution; beyond 63 inputs the
        // rare outcome has probability below 2^-63 and rounds away.
        return if matches!(gate, GateKind::Xor) && n_inputs > 0 {
            1.0
        } else {
            0.0
        };
    }
    let rows = 1usize << n_inputs;
    let ones = match gate {
        GateKind::Xor => rows / 2,
        GateKind::Or => rows - 1,
        GateKind::And => 1,
    };
    entropy_from_counts(&[ones, rows - ones], rows)
}

/// Gate list of an N-node fully connected network. Node `i` carries `gates[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NetworkSpec {
    gates: Vec<GateKind>,
}

impl NetworkSpec {
    pub fn new(gates: Vec<GateKind>) -> Result<Self> {
        if gates.len() < 2 {
            return Err(Error::domain(format!(
                "a network needs at least 2 nodes, got {}",
                gates.len()
            )));
        }
        Ok(Self { gates })
    }

    pub fn gates(&self) -> &[GateKind] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Hyphen separated gate names, e.g. `OR-AND-XOR`.
    pub fn label(&self) -> String {
        self.gates
            .iter()
            .map(|g| g.name())
            .collect::<Vec<_>>()
            .join("-")
    }

    /// Number of (XOR, OR, AND) gates. Two specs with equal counts describe
    /// the same network up to node relabeling.
    pub fn gate_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for g in &self.gates {
            c[*g as usize] += 1;
        }
        c
    }

    /// The same multiset in canonical order (XOR, then OR, then AND).
    pub fn canonical(&self) -> NetworkSpec {
        let mut gates = self.gates.clone();
        gates.sort();
        NetworkSpec { gates }
    }

    /// AND and OR swapped; `None` if the spec contains XOR.
    pub fn dual(&self) -> Option<NetworkSpec> {
        let gates = self
            .gates
            .iter()
            .map(|g| g.dual())
            .collect::<Option<Vec<_>>>()?;
        Some(NetworkSpec { gates })
    }

    pub fn state_count(&self) -> usize {
        1 << self.len()
    }
}

impl fmt::Display for NetworkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for NetworkSpec {
    type Err = Error;

    /// Accepts `OR-AND-XOR` as well as the spaced `OR - AND - XOR` form.
    fn from_str(s: &str) -> Result<Self> {
        let gates = s
            .split('-')
            .map(str::parse)
            .collect::<Result<Vec<GateKind>>>()?;
        NetworkSpec::new(gates)
    }
}

/// Current state of every node, one bit per node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NetworkState {
    bits: Vec<u8>,
}

impl NetworkState {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::domain(format!("state bit {b} is not 0 or 1")));
        }
        Ok(Self { bits })
    }

    /// State number `index` of an `n`-node network; node 0 is the most
    /// significant bit, so index 4 of a 3-node network is `100`.
    pub fn from_index(index: usize, n: usize) -> Self {
        let bits = (0..n).map(|i| ((index >> (n - 1 - i)) & 1) as u8).collect();
        Self { bits }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }
}

impl fmt::Display for NetworkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for NetworkState {
    type Err = Error;

    /// A bit string such as `100`.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::domain(format!(
                    "state character {other:?} is not 0 or 1"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if bits.is_empty() {
            return Err(Error::domain("empty state string"));
        }
        Ok(Self { bits })
    }
}

fn check_state(spec: &NetworkSpec, state: &NetworkState) -> Result<()> {
    if spec.len() != state.len() {
        return Err(Error::domain(format!(
            "state has {} bits but network {} has {} nodes",
            state.len(),
            spec,
            spec.len()
        )));
    }
    Ok(())
}

/// One synchronous update of every node.
pub fn step(spec: &NetworkSpec, state: &NetworkState) -> Result<NetworkState> {
    check_state(spec, state)?;
    let mut next = vec![0; state.len()];
    advance(spec.gates(), state.bits(), &mut next, None);
    Ok(NetworkState { bits: next })
}

/// Writes the successor of `cur` into `next`, leaving `clamped` untouched.
#[inline]
fn advance(gates: &[GateKind], cur: &[u8], next: &mut [u8], clamped: Option<usize>) {
    let total: usize = cur.iter().map(|&b| b as usize).sum();
    let arity = gates.len() - 1;
    for (j, gate) in gates.iter().enumerate() {
        if Some(j) == clamped {
            continue;
        }
        next[j] = gate.eval_count(total - cur[j] as usize, arity);
    }
}

/// Output series of one unclamped node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeOutput {
    pub node: usize,
    pub series: SymbolSequence,
}

/// Responses of all unclamped nodes while one node follows an input series.
#[derive(Debug, Clone, PartialEq)]
pub struct ClampedRun {
    pub clamped_node: usize,
    pub input_series: SymbolSequence,
    /// One entry per node other than `clamped_node`, in node order.
    pub outputs: Vec<NodeOutput>,
}

impl ClampedRun {
    pub fn output(&self, node: usize) -> Option<&SymbolSequence> {
        self.outputs
            .iter()
            .find(|o| o.node == node)
            .map(|o| &o.series)
    }
}

/// Runs the network for `input.len()` time steps with `node` clamped.
///
/// Time 0 is the initial state (with the clamped node set to `input[0]`,
/// which must already equal its current state); at each later step the
/// clamped node takes `input[t]` while every other node applies its gate to
/// the state at `t - 1`. Outputs record times `0 .. input.len()`.
pub fn simulate_clamped(
    spec: &NetworkSpec,
    initial: &NetworkState,
    node: usize,
    input: &SymbolSequence,
) -> Result<ClampedRun> {
    check_state(spec, initial)?;
    let n = spec.len();
    if node >= n {
        return Err(Error::domain(format!(
            "node {node} out of range for {n}-node network"
        )));
    }
    let drive = input.symbols();
    let Some(&first) = drive.first() else {
        return Err(Error::domain("empty input series"));
    };
    if let Some(s) = drive.iter().find(|&&s| s > 1) {
        return Err(Error::domain(format!("input symbol {s} is not a bit")));
    }
    if first != u32::from(initial.bits()[node]) {
        return Err(Error::domain(format!(
            "input series starts with {first} but node {node} is in state {}",
            initial.bits()[node]
        )));
    }

    let len = drive.len();
    let mut traces: Vec<Vec<u32>> = vec![Vec::with_capacity(len); n];
    let mut cur = initial.bits().to_vec();
    let mut next = vec![0u8; n];
    for t in 0..len {
        if t > 0 {
            advance(spec.gates(), &cur, &mut next, Some(node));
            next[node] = drive[t] as u8;
            std::mem::swap(&mut cur, &mut next);
        }
        for (trace, &b) in traces.iter_mut().zip(&cur) {
            trace.push(u32::from(b));
        }
    }

    let outputs = traces
        .into_iter()
        .enumerate()
        .filter(|&(j, _)| j != node)
        .map(|(j, symbols)| NodeOutput {
            node: j,
            series: SymbolSequence::intermediate(symbols, 2),
        })
        .collect();
    Ok(ClampedRun {
        clamped_node: node,
        input_series: input.clone(),
        outputs,
    })
}

/// One canonical spec per multiset of gates, `C(N + 2, 2)` in total.
///
/// Specs are listed by descending XOR count, then descending OR count, so the
/// 3-node list starts `XOR-XOR-XOR, XOR-XOR-OR, XOR-XOR-AND, XOR-OR-OR` and
/// ends with `AND-AND-AND`.
pub fn enumerate_networks(n: usize) -> Result<Vec<NetworkSpec>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "networks need at least 2 nodes, got {n}"
        )));
    }
    let mut specs = Vec::with_capacity((n + 2) * (n + 1) / 2);
    for n_xor in (0..=n).rev() {
        for n_or in (0..=n - n_xor).rev() {
            let n_and = n - n_xor - n_or;
            let gates = std::iter::repeat_n(GateKind::Xor, n_xor)
                .chain(std::iter::repeat_n(GateKind::Or, n_or))
                .chain(std::iter::repeat_n(GateKind::And, n_and))
                .collect();
            specs.push(NetworkSpec { gates });
        }
    }
    Ok(specs)
}
