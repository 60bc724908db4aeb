//! Circuit execution with a measurement at every step boundary.
//!
//! The state is never collapsed: each boundary is read out from the
//! statevector reached so far.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::rng::{self, domain};
use crate::statevector::{Counts, StateVector};

fn check_register(circuit: &Circuit, initial: &StateVector) -> Result<()> {
    if circuit.n_qubits() != initial.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: circuit.n_qubits(),
            actual: initial.n_qubits(),
        });
    }
    Ok(())
}

/// Calls `visit(k, state)` with the state after each completed step `k`.
pub fn for_each_step(
    circuit: &Circuit,
    initial: &StateVector,
    mut visit: impl FnMut(usize, &StateVector) -> Result<()>,
) -> Result<()> {
    check_register(circuit, initial)?;
    let mut state = initial.clone();
    for (k, gates) in circuit.steps().enumerate() {
        state.apply_gates(gates)?;
        visit(k, &state)?;
    }
    Ok(())
}

/// Exact `⟨σᶻ_j⟩` at every step mark.
pub fn ideal_execute(circuit: &Circuit, initial: &StateVector) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(circuit.step_marks().len());
    for_each_step(circuit, initial, |_, s| {
        out.push(s.expectation_z_all());
        Ok(())
    })?;
    Ok(out)
}

/// A fresh batch of `shots` measurements at every step mark; batch `k` draws
/// from its own stream of `seed`.
pub fn shot_execute(
    circuit: &Circuit,
    initial: &StateVector,
    shots: usize,
    seed: u64,
) -> Result<Vec<Counts>> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    let mut out = Vec::with_capacity(circuit.step_marks().len());
    for_each_step(circuit, initial, |k, s| {
        let mut rng = rng::stream(seed, domain::SAMPLING, 1 + k as u64);
        out.push(s.sample_with(shots, &mut rng)?);
        Ok(())
    })?;
    Ok(out)
}
