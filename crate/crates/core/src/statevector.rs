//! Dense statevector simulator.
//!
//! Qubit `j` occupies bit `j` of the basis index (qubit 0 is the least
//! significant bit). Bit value 1 is spin-down, so `σᶻ` reads `+1` on a
//! cleared bit and `-1` on a set bit.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::rng;

/// One measurement outcome, `bits[j]` being the value read on qubit `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<u8>,
}

/// Shot histogram, ordered by bitstring so iteration is deterministic.
pub type Counts = BTreeMap<BitString, usize>;

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(b));
        }
        Ok(Self { bits })
    }

    /// All-zero string: every spin up.
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    /// All-one string: every spin down.
    pub fn ones(n: usize) -> Self {
        Self { bits: vec![1; n] }
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        Self {
            bits: (0..n).map(|j| ((index >> j) & 1) as u8).collect(),
        }
    }

    pub fn to_index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &b)| acc | ((b as usize) << j))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, j: usize) -> u8 {
        self.bits[j]
    }

    pub fn flip(&mut self, j: usize) {
        self.bits[j] ^= 1;
    }
}

impl fmt::Display for BitString {
    /// Qubit 0 printed first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Single-qubit Pauli operator, used for fault insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|bits⟩`.
    pub fn basis(n_qubits: usize, bits: &BitString) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if bits.len() != n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                actual: bits.len(),
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[bits.to_index()] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// `|↓↓…↓⟩`, the all-ones basis state.
    pub fn all_down(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, &BitString::ones(n_qubits))
    }

    /// Wraps raw amplitudes; the length must be a power of two. The vector is
    /// taken as given (not renormalized).
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two().max(2),
                actual: len,
            });
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Applies `gate` in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::Rx { qubit, theta } => {
                let c = Complex64::new((theta / 2.0).cos(), 0.0);
                let mis = Complex64::new(0.0, -(theta / 2.0).sin());
                self.apply_single(qubit, [[c, mis], [mis, c]]);
            }
            Gate::Rz { qubit, theta } => {
                let lo = Complex64::from_polar(1.0, -theta / 2.0);
                let hi = Complex64::from_polar(1.0, theta / 2.0);
                let mask = 1 << qubit;
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    *a *= if i & mask == 0 { lo } else { hi };
                }
            }
            Gate::Cnot { control, target } => {
                let cmask = 1 << control;
                let tmask = 1 << target;
                for i in 0..self.amplitudes.len() {
                    if i & cmask != 0 && i & tmask == 0 {
                        self.amplitudes.swap(i, i | tmask);
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies a sequence of gates in temporal order.
    pub fn apply_gates<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Applies a Pauli operator (no global phase convention beyond `Y = iXZ`).
    pub fn apply_pauli(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        self.check_qubit(qubit)?;
        let mask = 1 << qubit;
        match pauli {
            Pauli::I => {}
            Pauli::X => {
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        self.amplitudes.swap(i, i | mask);
                    }
                }
            }
            Pauli::Y => {
                let i_unit = Complex64::new(0.0, 1.0);
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
                        self.amplitudes[i] = -i_unit * a1;
                        self.amplitudes[i | mask] = i_unit * a0;
                    }
                }
            }
            Pauli::Z => {
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask != 0 {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }

    /// Strided 2x2 update over amplitude pairs differing in bit `qubit`.
    fn apply_single(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let stride = 1 << qubit;
        let len = self.amplitudes.len();
        let mut base = 0;
        while base < len {
            for i in base..base + stride {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i + stride];
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i + stride] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += 2 * stride;
        }
    }

    /// ⟨σᶻ_qubit⟩.
    pub fn expectation_z(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let mask = 1 << qubit;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let p = a.norm_sqr();
                if i & mask == 0 {
                    p
                } else {
                    -p
                }
            })
            .sum())
    }

    /// ⟨σᶻ_j⟩ for every qubit in one pass.
    pub fn expectation_z_all(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n_qubits];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            for (j, m) in out.iter_mut().enumerate() {
                if (i >> j) & 1 == 0 {
                    *m += p;
                } else {
                    *m -= p;
                }
            }
        }
        out
    }

    /// Draws `shots` independent full-register measurements. Deterministic in
    /// `seed`.
    pub fn sample_bitstrings(&self, shots: usize, seed: u64) -> Result<Counts> {
        let mut rng = rng::stream(seed, rng::domain::SAMPLING, 0);
        self.sample_with(shots, &mut rng)
    }

    /// As [`sample_bitstrings`](Self::sample_bitstrings) but drawing from a
    /// caller-supplied generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Result<Counts> {
        if shots == 0 {
            return Err(Error::NoShots);
        }
        let cdf = self.cumulative();
        let mut tally = vec![0usize; cdf.len()];
        for _ in 0..shots {
            tally[draw_index(&cdf, rng)] += 1;
        }
        Ok(tally
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (BitString::from_index(i, self.n_qubits), c))
            .collect())
    }

    /// Draws a single basis index.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        draw_index(&self.cumulative(), rng)
    }

    fn cumulative(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.amplitudes
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect()
    }

    /// |⟨a|b⟩|².
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        let overlap: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(overlap.norm_sqr())
    }
}

/// Inverse-CDF draw; the uniform is scaled by the total mass so rounding in
/// the norm cannot push it past the last bin.
fn draw_index<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> usize {
    let total = *cdf.last().expect("non-empty register");
    let u = rng.random::<f64>() * total;
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}
