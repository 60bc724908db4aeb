//! Gate list representation of Trotter circuits.
//!
//! Gates are stored in temporal order: in operator notation the last gate
//! of the list is the leftmost factor. `step_marks[k]` is the number of gates
//! executed once Trotter step `k` has completed.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::DenseOperator;
use crate::MAX_DENSE_QUBITS;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// `exp(-i θ/2 σˣ)`
    Rx { qubit: usize, theta: f64 },
    /// `exp(-i θ/2 σᶻ)`
    Rz { qubit: usize, theta: f64 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn rx(qubit: usize, theta: f64) -> Self {
        Gate::Rx { qubit, theta }
    }

    pub fn rz(qubit: usize, theta: f64) -> Self {
        Gate::Rz { qubit, theta }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => vec![qubit],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// Checks the gate against a register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        match *self {
            Gate::Rx { theta, .. } | Gate::Rz { theta, .. } if !theta.is_finite() => {
                Err(Error::NonFiniteAngle(theta))
            }
            Gate::Cnot { control, target } if control == target => {
                Err(Error::SameControlTarget(control))
            }
            _ => Ok(()),
        }
    }

    /// Same kind and qubits, ignoring angles.
    pub fn same_shape(&self, other: &Gate) -> bool {
        match (self, other) {
            (Gate::Rx { qubit: a, .. }, Gate::Rx { qubit: b, .. }) => a == b,
            (Gate::Rz { qubit: a, .. }, Gate::Rz { qubit: b, .. }) => a == b,
            (Gate::Cnot { .. }, Gate::Cnot { .. }) => self == other,
            _ => false,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Rx { qubit, theta } => write!(f, "RX {qubit} {theta}"),
            Gate::Rz { qubit, theta } => write!(f, "RZ {qubit} {theta}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    step_marks: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
            step_marks: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn step_marks(&self) -> &[usize] {
        &self.step_marks
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn append_gate(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Builder form of [`append_gate`](Self::append_gate).
    pub fn with_gate(mut self, gate: Gate) -> Result<Self> {
        self.append_gate(gate)?;
        Ok(self)
    }

    /// Closes the current Trotter step. A mark is only recorded when gates
    /// were added since the previous one, keeping marks strictly increasing.
    pub fn mark_step(&mut self) {
        if self.step_marks.last() != Some(&self.gates.len()) && !self.gates.is_empty() {
            self.step_marks.push(self.gates.len());
        }
    }

    /// Appends every gate and step mark of `other` after `self`.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        let offset = self.gates.len();
        self.gates.extend_from_slice(&other.gates);
        self.step_marks
            .extend(other.step_marks.iter().map(|m| m + offset));
        Ok(())
    }

    /// Gate slices between consecutive step marks.
    pub fn steps(&self) -> impl Iterator<Item = &[Gate]> + '_ {
        let starts = std::iter::once(0).chain(self.step_marks.iter().copied());
        starts
            .zip(self.step_marks.iter().copied())
            .map(move |(a, b)| &self.gates[a..b])
    }

    /// Full unitary, the product of gate matrices with the earliest gate
    /// rightmost. Gate matrices are assembled by Kronecker products, not by
    /// the simulator kernel.
    pub fn unitary(&self) -> Result<DenseOperator> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooLargeForDense(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut acc = DMatrix::<Complex64>::identity(dim, dim);
        for gate in &self.gates {
            acc = embed(gate, self.n_qubits) * acc;
        }
        DenseOperator::from_matrix(acc)
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            counts.add(gate);
        }
        counts.per_step = self
            .steps()
            .map(|step| {
                let mut c = KindCounts::default();
                step.iter().for_each(|g| c.add(g));
                c
            })
            .collect();
        counts
    }

    /// Line-oriented dump: `RX q theta`, `RZ q theta`, `CNOT c t`, with a
    /// `# step k` line after each completed step.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut marks = self.step_marks.iter().peekable();
        let mut step = 0;
        for (i, gate) in self.gates.iter().enumerate() {
            writeln!(f, "{gate}")?;
            if marks.peek() == Some(&&(i + 1)) {
                marks.next();
                step += 1;
                writeln!(f, "# step {step}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KindCounts {
    pub rx: usize,
    pub rz: usize,
    pub cnot: usize,
}

impl KindCounts {
    fn add(&mut self, gate: &Gate) {
        match gate {
            Gate::Rx { .. } => self.rx += 1,
            Gate::Rz { .. } => self.rz += 1,
            Gate::Cnot { .. } => self.cnot += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.rx + self.rz + self.cnot
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub rx: usize,
    pub rz: usize,
    pub cnot: usize,
    pub per_step: Vec<KindCounts>,
}

impl GateCounts {
    fn add(&mut self, gate: &Gate) {
        match gate {
            Gate::Rx { .. } => self.rx += 1,
            Gate::Rz { .. } => self.rz += 1,
            Gate::Cnot { .. } => self.cnot += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.rx + self.rz + self.cnot
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Local matrix of a one-qubit gate.
fn local_matrix(gate: &Gate) -> DMatrix<Complex64> {
    match *gate {
        Gate::Rx { theta, .. } => {
            let (s, co) = (theta / 2.0).sin_cos();
            DMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)])
        }
        Gate::Rz { theta, .. } => DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::from_polar(1.0, -theta / 2.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                Complex64::from_polar(1.0, theta / 2.0),
            ],
        ),
        Gate::Cnot { .. } => unreachable!("CNOT has no single-qubit matrix"),
    }
}

/// Full-register matrix of one gate.
fn embed(gate: &Gate, n_qubits: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_qubits;
    match *gate {
        Gate::Cnot { control, target } => {
            let mut m = DMatrix::zeros(dim, dim);
            for col in 0..dim {
                let row = if (col >> control) & 1 == 1 {
                    col ^ (1 << target)
                } else {
                    col
                };
                m[(row, col)] = c(1.0, 0.0);
            }
            m
        }
        Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => {
            let local = local_matrix(gate);
            let eye = DMatrix::<Complex64>::identity(2, 2);
            // Qubit 0 is the least significant bit, i.e. the rightmost factor.
            (0..n_qubits).rev().fold(DMatrix::identity(1, 1), |acc, j| {
                acc.kronecker(if j == qubit { &local } else { &eye })
            })
        }
    }
}
