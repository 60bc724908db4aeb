//! Dense complex operators on the full 2^N-dimensional register.
//!
//! Only verification paths and the exact oracle build these; the simulator
//! itself never materializes a full matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevector::StateVector;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    /// Wraps a square matrix.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                actual: matrix.ncols(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// Operator product `self · rhs` (rhs acts first).
    pub fn compose(&self, rhs: &DenseOperator) -> Result<Self> {
        self.check_dim(rhs.dim())?;
        Ok(Self {
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    pub fn sub(&self, rhs: &DenseOperator) -> Result<Self> {
        self.check_dim(rhs.dim())?;
        Ok(Self {
            matrix: &self.matrix - &rhs.matrix,
        })
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &DenseOperator) -> Result<f64> {
        self.check_dim(rhs.dim())?;
        Ok(self
            .matrix
            .iter()
            .zip(rhs.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.matrix.adjoint() * &self.matrix;
        Self { matrix: product }
            .max_abs_diff(&Self::identity(self.dim()))
            .expect("square product")
    }

    /// Largest entrywise deviation of `H` from `H†`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    /// Spectral norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        self.matrix
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.check_dim(state.amplitudes().len())?;
        let amps: Vec<Complex64> = (0..self.dim())
            .map(|r| {
                self.matrix
                    .row(r)
                    .iter()
                    .zip(state.amplitudes())
                    .map(|(m, a)| m * a)
                    .sum()
            })
            .collect();
        StateVector::from_amplitudes(amps)
    }

    /// ⟨ψ|A|ψ⟩, real part.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        let image = self.apply(state)?;
        Ok(state
            .amplitudes()
            .iter()
            .zip(image.amplitudes())
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other,
            });
        }
        Ok(())
    }
}
