//! Digital simulation of transverse-field Ising chains with Trotter product
//! formulas.
//!
//! The crate is split along the data flow of an experiment:
//!
//! * [`circuit`]: gate list with Trotter-step boundary markers,
//! * [`trotter`]: first-order and symmetric second-order step synthesis,
//! * [`statevector`]: dense amplitude simulator, expectations and shot sampling,
//! * [`execute`]: ideal and shot-sampled runs measured at every step boundary,
//! * [`exact`]: dense Hamiltonian and eigendecomposition-based propagator,
//! * [`noise`]: stochastic Pauli trajectories and readout flips,
//! * [`observables`]: magnetization series, error maps, RMSE and scaling fits.

pub mod circuit;
pub mod error;
pub mod exact;
pub mod execute;
pub mod noise;
pub mod observables;
pub mod operator;
pub mod rng;
pub mod statevector;
pub mod trotter;

pub use circuit::{Circuit, Gate, GateCounts};
pub use error::{Error, Result};
pub use exact::{ExactEvolution, Spectrum};
pub use noise::NoiseParams;
pub use observables::{ErrorSummary, MagnetizationSeries, ScalingFit};
pub use operator::DenseOperator;
pub use statevector::{BitString, Counts, Pauli, StateVector};
pub use trotter::{Boundary, TfimParams, TrotterOrder};

/// Largest register for which dense 2^N x 2^N operators are built.
pub const MAX_DENSE_QUBITS: usize = 12;
