//! Exact reference dynamics: dense Hamiltonian, eigendecomposition and the
//! propagator `V diag(e^{-iE t}) V†`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observables::MagnetizationSeries;
use crate::operator::DenseOperator;
use crate::statevector::StateVector;
use crate::trotter::TfimParams;
use crate::MAX_DENSE_QUBITS;

const HERMITIAN_TOL: f64 = 1e-12;

/// Dense `H = -J Σ_bonds σᶻσᶻ - g Σ_j σˣ_j` in the computational basis.
pub fn build_hamiltonian(params: &TfimParams) -> Result<DenseOperator> {
    if params.n_spins > MAX_DENSE_QUBITS {
        return Err(Error::TooLargeForDense(params.n_spins));
    }
    params.validate_model()?;
    let n = params.n_spins;
    let dim = 1usize << n;
    let bonds = params.bonds();
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 0..dim {
        let zz: f64 = bonds
            .iter()
            .map(|&(a, b)| if ((i >> a) ^ (i >> b)) & 1 == 0 { 1.0 } else { -1.0 })
            .sum();
        h[(i, i)] = Complex64::new(-params.coupling * zz, 0.0);
        for j in 0..n {
            h[(i ^ (1 << j), i)] -= Complex64::new(params.field, 0.0);
        }
    }
    DenseOperator::from_matrix(h)
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl Spectrum {
    pub fn of(h: &DenseOperator) -> Result<Self> {
        let defect = h.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let eig = h.matrix().clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = DVector::from_iterator(order.len(), order.iter().map(|&k| eig.eigenvalues[k]));
        let eigenvectors = eig.eigenvectors.select_columns(&order);
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V diag(f(E_k)) V†`.
    fn function_of(&self, f: impl Fn(f64) -> Complex64) -> DenseOperator {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= f(self.eigenvalues[k]);
        }
        DenseOperator::from_matrix(scaled * v.adjoint()).expect("square")
    }

    pub fn reconstruct(&self) -> DenseOperator {
        self.function_of(|e| Complex64::new(e, 0.0))
    }

    pub fn propagator(&self, t: f64) -> DenseOperator {
        self.function_of(|e| Complex64::from_polar(1.0, -e * t))
    }
}

/// `e^{-iHt}` for Hermitian `h`.
pub fn exact_propagator(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    Ok(Spectrum::of(h)?.propagator(t))
}

/// Continuous-time evolution from a single eigendecomposition.
#[derive(Debug, Clone)]
pub struct ExactEvolution {
    hamiltonian: DenseOperator,
    spectrum: Spectrum,
}

impl ExactEvolution {
    pub fn new(params: &TfimParams) -> Result<Self> {
        Self::from_hamiltonian(build_hamiltonian(params)?)
    }

    pub fn from_hamiltonian(hamiltonian: DenseOperator) -> Result<Self> {
        let spectrum = Spectrum::of(&hamiltonian)?;
        Ok(Self {
            hamiltonian,
            spectrum,
        })
    }

    pub fn hamiltonian(&self) -> &DenseOperator {
        &self.hamiltonian
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn propagator(&self, t: f64) -> DenseOperator {
        self.spectrum.propagator(t)
    }

    /// `e^{-iHt}|ψ⟩` via the eigenbasis, without forming the propagator.
    pub fn evolve(&self, initial: &StateVector, t: f64) -> Result<StateVector> {
        let v = &self.spectrum.eigenvectors;
        if initial.amplitudes().len() != v.nrows() {
            return Err(Error::DimensionMismatch {
                expected: v.nrows(),
                actual: initial.amplitudes().len(),
            });
        }
        let psi = DVector::from_column_slice(initial.amplitudes());
        let mut coeffs = v.adjoint() * psi;
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c *= Complex64::from_polar(1.0, -self.spectrum.eigenvalues[k] * t);
        }
        StateVector::from_amplitudes((v * coeffs).iter().copied().collect())
    }

    /// Local and total magnetization at each requested time.
    pub fn series(&self, initial: &StateVector, times: &[f64]) -> Result<MagnetizationSeries> {
        check_times(times)?;
        let local = times
            .iter()
            .map(|&t| Ok(self.evolve(initial, t)?.expectation_z_all()))
            .collect::<Result<Vec<_>>>()?;
        MagnetizationSeries::new(times.to_vec(), local)
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    let ascending = times.windows(2).all(|w| w[0] < w[1]);
    if !ascending || times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidTimes);
    }
    Ok(())
}

/// Exact magnetization series for `params` from `initial`.
pub fn exact_series(
    params: &TfimParams,
    initial: &StateVector,
    times: &[f64],
) -> Result<MagnetizationSeries> {
    ExactEvolution::new(params)?.series(initial, times)
}
