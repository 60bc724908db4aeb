//! Run, sweep, compare and scaling experiments.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use tfim_core::execute::{ideal_execute, shot_execute};
use tfim_core::exact::ExactEvolution;
use tfim_core::noise::noisy_sample_counts;
use tfim_core::observables::{error_series, local_magnetization_from_counts, scaling_fit};
use tfim_core::trotter::{self, build_evolution_circuit};
use tfim_core::{ErrorSummary, GateCounts, MagnetizationSeries, NoiseParams, StateVector};

use crate::config::{Mode, Order, RunConfig};
use crate::error::{RunnerError, RunnerResult};
use crate::output;

/// RMSE values at or below this are treated as exactly zero when forming
/// ratios.
pub const ZERO_RMSE: f64 = 1e-12;

/// Largest single-step error below which a scaling fit is reported as
/// degenerate (all terms commute).
pub const DEGENERATE_STEP_ERROR: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: RunConfig,
    pub sim: MagnetizationSeries,
    pub exact: MagnetizationSeries,
    pub errors: ErrorSummary,
    pub gate_counts: GateCounts,
    pub wall_time: Duration,
}

/// Builds, executes and scores one configuration without touching the
/// filesystem.
pub fn execute_run(config: &RunConfig) -> RunnerResult<RunResult> {
    let started = Instant::now();
    config.validate()?;
    let params = config.params();
    let circuit = build_evolution_circuit(&params, config.steps, config.order.into())?;
    let initial = StateVector::all_down(config.n)?;
    let times = config.times();

    let local = match config.mode {
        Mode::Ideal => ideal_execute(&circuit, &initial)?,
        Mode::Shots { shots } => estimates(shot_execute(&circuit, &initial, shots, config.seed)?)?,
        Mode::Noisy {
            trajectories,
            noise,
        } => estimates(noisy_sample_counts(
            &circuit,
            &initial,
            &NoiseParams::from(noise),
            trajectories,
            config.seed,
        )?)?,
    };
    let sim = MagnetizationSeries::new(times.clone(), local)?;
    let exact = ExactEvolution::new(&params)?.series(&initial, &times)?;
    let errors = error_series(&sim, &exact)?;
    Ok(RunResult {
        config: config.clone(),
        sim,
        exact,
        errors,
        gate_counts: circuit.gate_counts(),
        wall_time: started.elapsed(),
    })
}

fn estimates(per_step: Vec<tfim_core::Counts>) -> RunnerResult<Vec<Vec<f64>>> {
    per_step
        .iter()
        .map(|c| local_magnetization_from_counts(c).map_err(RunnerError::from))
        .collect()
}

/// One run; writes series, totals and metadata when `config.out` is set.
pub fn run_command(config: &RunConfig) -> RunnerResult<RunResult> {
    let result = execute_run(config)?;
    if let Some(dir) = &config.out {
        output::write_run(dir, &result)?;
    }
    Ok(result)
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub runs: Vec<RunResult>,
}

fn require_fields(g_values: &[f64]) -> RunnerResult<()> {
    if g_values.is_empty() {
        return Err(RunnerError::config("need at least one g value"));
    }
    Ok(())
}

/// One run per field value, otherwise identical. Runs execute in parallel;
/// results keep input order. With an output directory each run goes to its
/// own `g_<value>` subdirectory next to `sweep.csv`.
pub fn sweep_command(base: &RunConfig, g_values: &[f64]) -> RunnerResult<SweepResult> {
    require_fields(g_values)?;
    let runs = g_values
        .par_iter()
        .map(|&g| execute_run(&base.with_g(g)))
        .collect::<RunnerResult<Vec<_>>>()?;
    if let Some(dir) = &base.out {
        for run in &runs {
            output::write_run(&dir.join(output::field_dir(run.config.g)), run)?;
        }
        output::write_sweep(dir, base, &runs)?;
    }
    Ok(SweepResult { runs })
}

#[derive(Debug, Clone)]
pub struct CompareRow {
    pub g: f64,
    pub first: RunResult,
    pub sym2: RunResult,
}

impl CompareRow {
    pub fn ratio_local(&self) -> Option<f64> {
        ratio(self.sym2.errors.rmse_local, self.first.errors.rmse_local)
    }

    pub fn ratio_total(&self) -> Option<f64> {
        ratio(self.sym2.errors.rmse_total, self.first.errors.rmse_total)
    }
}

/// `num / den`, or `None` when the denominator is numerically zero.
pub fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > ZERO_RMSE).then(|| num / den)
}

/// Both orders at every field value, sharing the seed.
pub fn compare_command(base: &RunConfig, g_values: &[f64]) -> RunnerResult<Vec<CompareRow>> {
    require_fields(g_values)?;
    let jobs: Vec<(f64, Order)> = g_values
        .iter()
        .flat_map(|&g| Order::BOTH.map(|o| (g, o)))
        .collect();
    let mut results = jobs
        .par_iter()
        .map(|&(g, order)| execute_run(&base.with_g(g).with_order(order)))
        .collect::<RunnerResult<Vec<_>>>()?
        .into_iter();
    let rows: Vec<CompareRow> = g_values
        .iter()
        .map(|&g| CompareRow {
            g,
            first: results.next().expect("first-order run"),
            sym2: results.next().expect("symmetric run"),
        })
        .collect();
    if let Some(dir) = &base.out {
        for row in &rows {
            let gdir = dir.join(output::field_dir(row.g));
            output::write_run(&gdir.join(Order::First.as_str()), &row.first)?;
            output::write_run(&gdir.join(Order::Sym2.as_str()), &row.sym2)?;
        }
        output::write_compare(dir, base, &rows)?;
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub dts: Vec<f64>,
    /// `errors[i][k]`: order `Order::BOTH[i]` at `dts[k]`.
    pub errors: [Vec<f64>; 2],
    /// Fitted order, `None` when degenerate.
    pub slopes: [Option<f64>; 2],
}

/// Single-step operator-norm error against the exact propagator for each
/// step size, and the log-log slope per order.
pub fn scaling_command(base: &RunConfig, dt_values: &[f64]) -> RunnerResult<ScalingReport> {
    if dt_values.len() < 3 {
        return Err(RunnerError::config(format!(
            "scaling needs at least 3 dt values, got {}",
            dt_values.len()
        )));
    }
    if let Some(dt) = dt_values.iter().find(|d| !(**d > 0.0) || !d.is_finite()) {
        return Err(RunnerError::config(format!("dt values must be positive, got {dt}")));
    }
    let params = base.params();
    params
        .with_dt(dt_values[0])
        .validate()
        .map_err(|e| RunnerError::config(e.to_string()))?;
    let exact = ExactEvolution::new(&params)?;
    let errors = Order::BOTH.map(|order| {
        dt_values
            .iter()
            .map(|&dt| {
                let u = trotter::step(&params.with_dt(dt), order.into())?.unitary()?;
                Ok(u.sub(&exact.propagator(dt))?.operator_norm())
            })
            .collect::<RunnerResult<Vec<f64>>>()
    });
    let [first, sym2] = errors;
    let errors = [first?, sym2?];
    let slopes = [0, 1].map(|i| {
        let errs = &errors[i];
        if errs.iter().copied().fold(0.0, f64::max) <= DEGENERATE_STEP_ERROR {
            None
        } else {
            scaling_fit(dt_values, errs).ok().map(|f| f.slope)
        }
    });
    let report = ScalingReport {
        dts: dt_values.to_vec(),
        errors,
        slopes,
    };
    if let Some(dir) = &base.out {
        output::write_scaling(dir, base, &report)?;
    }
    Ok(report)
}
