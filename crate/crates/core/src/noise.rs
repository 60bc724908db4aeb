//! Stochastic Pauli-fault trajectories and classical readout flips.
//!
//! Each trajectory runs the circuit on its own copy of the state. After a
//! single-qubit gate a fault fires with probability `p1` and applies X, Y or
//! Z uniformly; after a CNOT a fault fires with probability `p2` and applies
//! one of the 15 non-identity two-qubit Paulis uniformly. At most one fault
//! per gate.

use rand::Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::execute::ideal_execute;
use crate::rng::{self, domain};
use crate::statevector::{BitString, Counts, Pauli, StateVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    /// Fault probability after each single-qubit gate.
    pub p1: f64,
    /// Fault probability after each CNOT.
    pub p2: f64,
    /// Probability that a measured 0 is reported as 1.
    pub read01: f64,
    /// Probability that a measured 1 is reported as 0.
    pub read10: f64,
}

impl Default for NoiseParams {
    fn default() -> Self {
        Self::DEVICE_LIKE
    }
}

impl NoiseParams {
    pub const NONE: NoiseParams = NoiseParams {
        p1: 0.0,
        p2: 0.0,
        read01: 0.0,
        read10: 0.0,
    };

    /// Stand-in calibration where gate error dominates Trotter error at
    /// `g <= 2J`. Not a model of any particular device.
    pub const DEVICE_LIKE: NoiseParams = NoiseParams {
        p1: 0.002,
        p2: 0.02,
        read01: 0.02,
        read10: 0.02,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("p1", self.p1),
            ("p2", self.p2),
            ("read01", self.read01),
            ("read10", self.read10),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        Ok(())
    }

    pub fn gates_are_ideal(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }

    pub fn readout_is_ideal(&self) -> bool {
        self.read01 == 0.0 && self.read10 == 0.0
    }
}

const SINGLE_FAULTS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

fn insert_fault<R: Rng + ?Sized>(
    state: &mut StateVector,
    gate: &Gate,
    noise: &NoiseParams,
    rng: &mut R,
) -> Result<()> {
    match *gate {
        Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => {
            if noise.p1 > 0.0 && rng.random::<f64>() < noise.p1 {
                state.apply_pauli(qubit, SINGLE_FAULTS[rng.random_range(0..3)])?;
            }
        }
        Gate::Cnot { control, target } => {
            if noise.p2 > 0.0 && rng.random::<f64>() < noise.p2 {
                let k = rng.random_range(1..16);
                state.apply_pauli(control, Pauli::ALL[k / 4])?;
                state.apply_pauli(target, Pauli::ALL[k % 4])?;
            }
        }
    }
    Ok(())
}

/// Runs one trajectory, calling `at_mark` with the state at each step mark.
fn run_trajectory<R: Rng + ?Sized>(
    circuit: &Circuit,
    initial: &StateVector,
    noise: &NoiseParams,
    rng: &mut R,
    mut at_mark: impl FnMut(&StateVector),
) -> Result<()> {
    let mut state = initial.clone();
    let mut marks = circuit.step_marks().iter().peekable();
    for (i, gate) in circuit.gates().iter().enumerate() {
        state.apply_gate(gate)?;
        insert_fault(&mut state, gate, noise, rng)?;
        if marks.peek() == Some(&&(i + 1)) {
            marks.next();
            at_mark(&state);
        }
    }
    Ok(())
}

fn check_inputs(circuit: &Circuit, initial: &StateVector, noise: &NoiseParams, trajectories: usize) -> Result<()> {
    noise.validate()?;
    if trajectories == 0 {
        return Err(Error::NoTrajectories);
    }
    if circuit.n_qubits() != initial.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: circuit.n_qubits(),
            actual: initial.n_qubits(),
        });
    }
    Ok(())
}

/// Trajectory-averaged `⟨σᶻ_j⟩` at every step mark. Trajectory `t` draws its
/// faults from its own stream, so the result does not depend on scheduling.
/// Without gate faults every trajectory is the ideal run, which is returned
/// directly.
pub fn noisy_execute(
    circuit: &Circuit,
    initial: &StateVector,
    noise: &NoiseParams,
    trajectories: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    check_inputs(circuit, initial, noise, trajectories)?;
    if noise.gates_are_ideal() {
        return ideal_execute(circuit, initial);
    }
    let per_traj = (0..trajectories)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::stream(seed, domain::FAULTS, t as u64);
            let mut rows = Vec::with_capacity(circuit.step_marks().len());
            run_trajectory(circuit, initial, noise, &mut rng, |s| rows.push(s.expectation_z_all()))?;
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;

    let n_marks = circuit.step_marks().len();
    let n = circuit.n_qubits();
    let mut mean = vec![vec![0.0; n]; n_marks];
    for rows in &per_traj {
        for (acc, row) in mean.iter_mut().zip(rows) {
            acc.iter_mut().zip(row).for_each(|(a, v)| *a += v);
        }
    }
    let scale = 1.0 / trajectories as f64;
    mean.iter_mut().flatten().for_each(|v| *v *= scale);
    Ok(mean)
}

/// Hardware-style sampling: each trajectory contributes one shot at every
/// step mark, and readout flips are applied to each step's histogram.
/// Fault realizations match [`noisy_execute`] for the same seed.
pub fn noisy_sample_counts(
    circuit: &Circuit,
    initial: &StateVector,
    noise: &NoiseParams,
    trajectories: usize,
    seed: u64,
) -> Result<Vec<Counts>> {
    check_inputs(circuit, initial, noise, trajectories)?;
    let per_traj = (0..trajectories)
        .into_par_iter()
        .map(|t| {
            let mut faults = rng::stream(seed, domain::FAULTS, t as u64);
            let mut shots = rng::stream(seed, domain::TRAJECTORY_SHOTS, t as u64);
            let mut outcomes = Vec::with_capacity(circuit.step_marks().len());
            run_trajectory(circuit, initial, noise, &mut faults, |s| {
                outcomes.push(s.sample_index(&mut shots))
            })?;
            Ok(outcomes)
        })
        .collect::<Result<Vec<_>>>()?;

    let n = circuit.n_qubits();
    (0..circuit.step_marks().len())
        .map(|k| {
            let mut counts = Counts::new();
            for outcomes in &per_traj {
                *counts.entry(BitString::from_index(outcomes[k], n)).or_insert(0) += 1;
            }
            let mut rng = rng::stream(seed, domain::READOUT, k as u64);
            apply_readout_error_with(&counts, noise, &mut rng)
        })
        .collect()
}

/// Flips every bit of every shot independently: 0→1 with `read01`, 1→0 with
/// `read10`. Total shot count is preserved.
pub fn apply_readout_error(counts: &Counts, noise: &NoiseParams, seed: u64) -> Result<Counts> {
    let mut rng = rng::stream(seed, domain::READOUT, 0);
    apply_readout_error_with(counts, noise, &mut rng)
}

pub fn apply_readout_error_with<R: Rng + ?Sized>(
    counts: &Counts,
    noise: &NoiseParams,
    rng: &mut R,
) -> Result<Counts> {
    noise.validate()?;
    if counts.is_empty() {
        return Err(Error::EmptyCounts);
    }
    if noise.readout_is_ideal() {
        return Ok(counts.clone());
    }
    let mut out = Counts::new();
    for (bits, &count) in counts {
        for _ in 0..count {
            let mut read = bits.clone();
            for j in 0..bits.len() {
                let p = if bits.bit(j) == 0 { noise.read01 } else { noise.read10 };
                if p > 0.0 && rng.random::<f64>() < p {
                    read.flip(j);
                }
            }
            *out.entry(read).or_insert(0) += 1;
        }
    }
    Ok(out)
}
