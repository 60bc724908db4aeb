//! Trotter step synthesis for the transverse-field Ising chain
//! `H = -J Σ σᶻ_j σᶻ_{j+1} - g Σ σˣ_j`.
//!
//! An X-rotation block `exp(+i g σˣ τ)` is `RX(q, -2gτ)`; a ZZ block
//! `exp(+i J σᶻσᶻ τ)` is `CNOT(a,b) RZ(b, -2Jτ) CNOT(a,b)` with the control
//! on the left site. Bonds are numbered by their left site starting at 1,
//! so "odd" bonds are (1,2), (3,4), ... and "even" bonds (2,3), (4,5), ...

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfimParams {
    pub n_spins: usize,
    /// Coupling `J`.
    pub coupling: f64,
    /// Transverse field `g`.
    pub field: f64,
    /// Trotter step `Δt`, in units of `1/J`.
    pub dt: f64,
    pub boundary: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrotterOrder {
    FirstOrder,
    SymmetricSecondOrder,
}

impl TfimParams {
    pub fn new(n_spins: usize, coupling: f64, field: f64, dt: f64) -> Self {
        Self {
            n_spins,
            coupling,
            field,
            dt,
            boundary: Boundary::Open,
        }
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_field(mut self, field: f64) -> Self {
        self.field = field;
        self
    }

    /// Checks what the Hamiltonian alone needs: a non-empty chain and finite
    /// couplings. `J = 0` and single spins are allowed here.
    pub fn validate_model(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n_spins == 0 {
            return bad("chain has no spins".into());
        }
        if self.boundary == Boundary::Periodic && self.n_spins < 3 {
            return bad("periodic chains need at least 3 spins".into());
        }
        if !self.coupling.is_finite() || !self.field.is_finite() {
            return bad(format!("J = {} and g = {} must be finite", self.coupling, self.field));
        }
        Ok(())
    }

    /// Full check for Trotter synthesis: at least two spins, `J != 0`, and a
    /// finite non-zero step. Negative steps are accepted (time reversal).
    pub fn validate(&self) -> Result<()> {
        self.validate_model()?;
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n_spins < 2 {
            return bad(format!("need at least 2 spins, got {}", self.n_spins));
        }
        if !self.dt.is_finite() || self.dt == 0.0 {
            return bad(format!("dt must be finite and non-zero, got {}", self.dt));
        }
        if self.coupling == 0.0 {
            return bad("J must be non-zero".into());
        }
        Ok(())
    }

    /// Bonds `(left, right)` as 0-based site pairs, in 1-based bond order.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_spins;
        let mut bonds: Vec<_> = (0..n.saturating_sub(1)).map(|j| (j, j + 1)).collect();
        if self.boundary == Boundary::Periodic {
            bonds.push((n - 1, 0));
        }
        bonds
    }

    /// Bonds with odd 1-based index: (1,2), (3,4), ...
    pub fn odd_bonds(&self) -> Vec<(usize, usize)> {
        self.bonds().into_iter().step_by(2).collect()
    }

    /// Bonds with even 1-based index: (2,3), (4,5), ...
    pub fn even_bonds(&self) -> Vec<(usize, usize)> {
        self.bonds().into_iter().skip(1).step_by(2).collect()
    }
}

/// `exp(+i g σˣ_j τ)` on every site, in the given site order.
fn x_layer(
    circuit: &mut Circuit,
    sites: impl Iterator<Item = usize>,
    field: f64,
    tau: f64,
) -> Result<()> {
    let theta = -2.0 * field * tau;
    sites.into_iter().try_for_each(|q| circuit.append_gate(Gate::rx(q, theta)))
}

/// `exp(+i J σᶻ_a σᶻ_b τ)` on each listed bond.
fn zz_layer<'a>(
    circuit: &mut Circuit,
    bonds: impl Iterator<Item = &'a (usize, usize)>,
    coupling: f64,
    tau: f64,
) -> Result<()> {
    let theta = -2.0 * coupling * tau;
    for &(a, b) in bonds {
        circuit.append_gate(Gate::cnot(a, b))?;
        circuit.append_gate(Gate::rz(b, theta))?;
        circuit.append_gate(Gate::cnot(a, b))?;
    }
    Ok(())
}

fn append_first_order(circuit: &mut Circuit, params: &TfimParams) -> Result<()> {
    let (j, g, dt) = (params.coupling, params.field, params.dt);
    x_layer(circuit, 0..params.n_spins, g, dt)?;
    zz_layer(circuit, params.odd_bonds().iter(), j, dt)?;
    zz_layer(circuit, params.even_bonds().iter(), j, dt)?;
    circuit.mark_step();
    Ok(())
}

/// The second half repeats the first in mirrored gate order, so the gate
/// list is a palindrome apart from the middle even-bond layer.
fn append_symmetric(circuit: &mut Circuit, params: &TfimParams) -> Result<()> {
    let (j, g, dt) = (params.coupling, params.field, params.dt);
    let half = dt / 2.0;
    let odd = params.odd_bonds();
    x_layer(circuit, 0..params.n_spins, g, half)?;
    zz_layer(circuit, odd.iter(), j, half)?;
    zz_layer(circuit, params.even_bonds().iter(), j, dt)?;
    zz_layer(circuit, odd.iter().rev(), j, half)?;
    x_layer(circuit, (0..params.n_spins).rev(), g, half)?;
    circuit.mark_step();
    Ok(())
}

/// One first-order step: X layer, then odd-bond ZZ, then even-bond ZZ.
pub fn first_order_step(params: &TfimParams) -> Result<Circuit> {
    params.validate()?;
    let mut circuit = Circuit::new(params.n_spins);
    append_first_order(&mut circuit, params)?;
    Ok(circuit)
}

/// One symmetric step: half X, half odd ZZ, full even ZZ, half odd ZZ, half X.
pub fn symmetric_step(params: &TfimParams) -> Result<Circuit> {
    params.validate()?;
    let mut circuit = Circuit::new(params.n_spins);
    append_symmetric(&mut circuit, params)?;
    Ok(circuit)
}

pub fn step(params: &TfimParams, order: TrotterOrder) -> Result<Circuit> {
    match order {
        TrotterOrder::FirstOrder => first_order_step(params),
        TrotterOrder::SymmetricSecondOrder => symmetric_step(params),
    }
}

/// `n_steps` repetitions of the chosen step, one step mark each. Half layers
/// of neighbouring symmetric steps are kept separate.
pub fn build_evolution_circuit(
    params: &TfimParams,
    n_steps: usize,
    order: TrotterOrder,
) -> Result<Circuit> {
    if n_steps == 0 {
        return Err(Error::NoSteps);
    }
    params.validate()?;
    let mut circuit = Circuit::new(params.n_spins);
    for _ in 0..n_steps {
        match order {
            TrotterOrder::FirstOrder => append_first_order(&mut circuit, params)?,
            TrotterOrder::SymmetricSecondOrder => append_symmetric(&mut circuit, params)?,
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::KindCounts;

    fn reference_params() -> TfimParams {
        TfimParams::new(5, 1.0, 1.0, 0.2)
    }

    #[test]
    fn bond_parity() {
        let p = reference_params();
        assert_eq!(p.odd_bonds(), vec![(0, 1), (2, 3)]);
        assert_eq!(p.even_bonds(), vec![(1, 2), (3, 4)]);
        let periodic = p.with_boundary(Boundary::Periodic);
        assert_eq!(periodic.odd_bonds(), vec![(0, 1), (2, 3), (4, 0)]);
    }

    #[test]
    fn first_order_structure_and_angles() {
        let c = first_order_step(&reference_params()).unwrap();
        assert_eq!(c.len(), 17);
        assert_eq!(c.step_marks(), &[17]);
        let counts = c.gate_counts();
        assert_eq!((counts.rx, counts.rz, counts.cnot), (5, 4, 8));
        for g in &c.gates()[..5] {
            let Gate::Rx { theta, .. } = g else { panic!("expected RX, got {g}") };
            assert!((theta + 0.4).abs() < 1e-15);
        }
        for g in c.gates() {
            if let Gate::Rz { theta, .. } = g {
                assert!((theta + 0.4).abs() < 1e-15);
            }
        }
        assert_eq!(c.gates()[5..8], [Gate::cnot(0, 1), Gate::rz(1, -0.4), Gate::cnot(0, 1)]);
        assert_eq!(c.gates()[11..14], [Gate::cnot(1, 2), Gate::rz(2, -0.4), Gate::cnot(1, 2)]);
    }

    #[test]
    fn two_spin_step() {
        let c = first_order_step(&TfimParams::new(2, 1.0, 1.0, 0.2)).unwrap();
        let shapes: Vec<String> = c.gates().iter().map(|g| g.to_string()).collect();
        assert_eq!(
            shapes,
            ["RX 0 -0.4", "RX 1 -0.4", "CNOT 0 1", "RZ 1 -0.4", "CNOT 0 1"]
        );
    }

    #[test]
    fn zero_field_gives_zero_x_angles() {
        let c = first_order_step(&reference_params().with_field(0.0)).unwrap();
        for g in c.gates() {
            if let Gate::Rx { theta, .. } = g {
                assert_eq!(*theta, 0.0);
            }
        }
    }

    #[test]
    fn symmetric_structure_and_angles() {
        let c = symmetric_step(&reference_params()).unwrap();
        assert_eq!(c.len(), 28);
        let counts = c.gate_counts();
        assert_eq!((counts.rx, counts.rz, counts.cnot), (10, 6, 12));
        let rz: Vec<f64> = c
            .gates()
            .iter()
            .filter_map(|g| match g {
                Gate::Rz { theta, .. } => Some(*theta),
                _ => None,
            })
            .collect();
        let expected = [-0.2, -0.2, -0.4, -0.4, -0.2, -0.2];
        for (a, b) in rz.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{rz:?}");
        }
        for g in c.gates() {
            if let Gate::Rx { theta, .. } = g {
                assert!((theta + 0.2).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn symmetric_step_is_a_palindrome() {
        let c = symmetric_step(&reference_params()).unwrap();
        let gates = c.gates();
        // Middle layer: the two even-bond blocks at positions 11..17.
        let middle = 11..17;
        for (i, a) in gates.iter().enumerate() {
            let b = &gates[gates.len() - 1 - i];
            if middle.contains(&i) {
                assert!(gates[middle.clone()].iter().any(|m| m.same_shape(b)));
            } else {
                assert!(a.same_shape(b), "position {i}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn evolution_circuit_sizes() {
        let p = reference_params();
        assert_eq!(
            build_evolution_circuit(&p, 1, TrotterOrder::FirstOrder).unwrap(),
            first_order_step(&p).unwrap()
        );
        let c = build_evolution_circuit(&p, 20, TrotterOrder::FirstOrder).unwrap();
        assert_eq!(c.len(), 340);
        assert_eq!(c.step_marks().len(), 20);
        assert_eq!(c.step_marks().last(), Some(&340));
        for n in [1, 3, 7] {
            let c = build_evolution_circuit(&p, n, TrotterOrder::SymmetricSecondOrder).unwrap();
            assert_eq!(c.len(), 28 * n);
            assert!(c
                .gate_counts()
                .per_step
                .iter()
                .all(|k| *k == KindCounts { rx: 10, rz: 6, cnot: 12 }));
        }
        assert_eq!(
            build_evolution_circuit(&p, 0, TrotterOrder::FirstOrder),
            Err(Error::NoSteps)
        );
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(first_order_step(&TfimParams::new(1, 1.0, 1.0, 0.2)).is_err());
        assert!(first_order_step(&TfimParams::new(5, 0.0, 1.0, 0.2)).is_err());
        assert!(symmetric_step(&TfimParams::new(5, 1.0, 1.0, 0.0)).is_err());
        assert!(symmetric_step(&TfimParams::new(5, 1.0, f64::NAN, 0.1)).is_err());
        assert!(first_order_step(&TfimParams::new(2, 1.0, 1.0, 0.1).with_boundary(Boundary::Periodic)).is_err());
    }
}
