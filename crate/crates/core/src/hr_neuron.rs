//! Hindmarsh-Rose neuron, integrated with fixed-step RK4, and window-based
//! spike binarization.
//!
//! ```text
//! dS/dt = P + 3 S^2 - S^3 - Q + I
//! dP/dt = 1 - 5 S^2 - P
//! dQ/dt = -r (Q - 4 (S + 8/5))
//! ```

use serde::Serialize;

use crate::complexity::SymbolSequence;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HrState {
    /// Membrane voltage.
    pub s: f64,
    /// Recovery variable.
    pub p: f64,
    /// Adaptation variable.
    pub q: f64,
}

impl HrState {
    pub const ORIGIN: HrState = HrState {
        s: 0.0,
        p: 0.0,
        q: 0.0,
    };

    fn is_finite(&self) -> bool {
        self.s.is_finite() && self.p.is_finite() && self.q.is_finite()
    }

    fn axpy(&self, h: f64, d: &HrState) -> HrState {
        HrState {
            s: self.s + h * d.s,
            p: self.p + h * d.p,
            q: self.q + h * d.q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HrParams {
    /// External current.
    pub i: f64,
    /// Slow adaptation rate.
    pub r: f64,
}

impl HrParams {
    pub const DEFAULT_R: f64 = 0.0021;

    pub fn new(i: f64, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) || !i.is_finite() {
            return Err(Error::domain(format!(
                "invalid Hindmarsh-Rose parameters I={i}, r={r}"
            )));
        }
        Ok(Self { i, r })
    }

    pub fn with_current(i: f64) -> Self {
        Self {
            i,
            r: Self::DEFAULT_R,
        }
    }
}

/// Right-hand side of the model, returned as a state-shaped derivative.
pub fn hr_derivatives(x: &HrState, p: &HrParams) -> HrState {
    let s2 = x.s * x.s;
    HrState {
        s: x.p + 3.0 * s2 - s2 * x.s - x.q + p.i,
        p: 1.0 - 5.0 * s2 - x.p,
        q: -p.r * (x.q - 4.0 * (x.s + 8.0 / 5.0)),
    }
}

/// One classical RK4 step.
pub fn rk4_step(x: &HrState, p: &HrParams, dt: f64) -> HrState {
    let k1 = hr_derivatives(x, p);
    let k2 = hr_derivatives(&x.axpy(dt / 2.0, &k1), p);
    let k3 = hr_derivatives(&x.axpy(dt / 2.0, &k2), p);
    let k4 = hr_derivatives(&x.axpy(dt, &k3), p);
    HrState {
        s: x.s + dt / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s),
        p: x.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
        q: x.q + dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
    }
}

/// Integrates `n_steps` RK4 steps and returns `S` after every step past the
/// first `transient_steps`, i.e. `n_steps - transient_steps` samples.
pub fn integrate(
    params: &HrParams,
    dt: f64,
    n_steps: usize,
    init: HrState,
    transient_steps: usize,
) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::domain(format!(
            "time step must be positive, got {dt}"
        )));
    }
    if n_steps <= transient_steps {
        return Err(Error::domain(format!(
            "{n_steps} steps leave nothing after a transient of {transient_steps}"
        )));
    }
    let mut x = init;
    if !x.is_finite() {
        return Err(Error::Diverged { step: 0 });
    }
    let mut trace = Vec::with_capacity(n_steps - transient_steps);
    for step in 1..=n_steps {
        x = rk4_step(&x, params, dt);
        if !x.is_finite() {
            return Err(Error::Diverged { step });
        }
        if step > transient_steps {
            trace.push(x.s);
        }
    }
    Ok(trace)
}

/// Integration and binarization settings, in model time units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeuronConfig {
    pub dt: f64,
    pub duration: f64,
    pub transient: f64,
    pub window: f64,
    pub threshold: f64,
    pub init: HrState,
}

impl Default for NeuronConfig {
    fn default() -> Self {
        Self {
            dt: 0.01,
            duration: 20_000.0,
            transient: 2_000.0,
            window: 2.0,
            threshold: -0.1,
            init: HrState::ORIGIN,
        }
    }
}

impl NeuronConfig {
    /// Total and transient step counts.
    pub fn steps(&self) -> (usize, usize) {
        (
            (self.duration / self.dt).round() as usize,
            (self.transient / self.dt).round() as usize,
        )
    }
}

/// Voltage trace after the transient, and its binarized spike train.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikeRun {
    pub trace: Vec<f64>,
    pub spikes: SymbolSequence,
}

pub fn run_neuron(params: &HrParams, config: &NeuronConfig) -> Result<SpikeRun> {
    let (n_steps, transient) = config.steps();
    let trace = integrate(params, config.dt, n_steps, config.init, transient)?;
    let spikes = binarize_spikes(&trace, config.dt, config.window, config.threshold)?;
    Ok(SpikeRun { trace, spikes })
}

/// Cuts the trace into consecutive windows of `window` time units and emits 1
/// for each window whose maximum exceeds `threshold`. A trailing partial
/// window is dropped.
pub fn binarize_spikes(
    trace: &[f64],
    dt: f64,
    window: f64,
    threshold: f64,
) -> Result<SymbolSequence> {
    if trace.is_empty() {
        return Err(Error::domain("cannot binarize an empty trace"));
    }
    if !(dt > 0.0) {
        return Err(Error::domain(format!(
            "sample spacing must be positive, got {dt}"
        )));
    }
    let per_window = (window / dt).round();
    if !(per_window >= 1.0) {
        return Err(Error::domain(format!(
            "window {window} is shorter than one sample of {dt}"
        )));
    }
    let bits: Vec<u8> = trace
        .chunks_exact(per_window as usize)
        .map(|w| u8::from(w.iter().any(|&v| v > threshold)))
        .collect();
    Ok(SymbolSequence::from_bits(&bits))
}
