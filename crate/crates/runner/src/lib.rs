//! Experiment harness for Trotterized transverse-field Ising dynamics.
//!
//! A [`RunConfig`] fully determines a run: the circuit is synthesized,
//! executed in the configured mode with a readout at every Trotter step, and
//! compared against exact propagation on the same time grid. Sweeps and
//! order comparisons are collections of independent runs.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;

pub use config::{Mode, NoiseConfig, Order, RunConfig, Settings};
pub use error::{RunnerError, RunnerResult};
pub use experiment::{
    compare_command, run_command, scaling_command, sweep_command, CompareRow, RunResult,
    ScalingReport, SweepResult,
};
