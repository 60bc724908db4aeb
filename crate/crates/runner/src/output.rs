//! CSV and JSON writers. Numbers in CSV files carry 12 significant digits;
//! JSON metadata keeps full `f64` precision so the embedded configuration
//! re-parses to an identical value.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tfim_core::circuit::KindCounts;

use crate::config::{Order, RunConfig};
use crate::error::{RunnerError, RunnerResult};
use crate::experiment::{CompareRow, RunResult, ScalingReport};

pub const TOOL: &str = "tfim-trotter";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const SERIES_CSV: &str = "series.csv";
pub const TOTALS_CSV: &str = "totals.csv";
pub const RUN_JSON: &str = "run.json";
pub const SWEEP_CSV: &str = "sweep.csv";
pub const SWEEP_JSON: &str = "sweep.json";
pub const COMPARE_CSV: &str = "compare.csv";
pub const COMPARE_JSON: &str = "compare.json";
pub const SCALING_CSV: &str = "scaling.csv";
pub const SCALING_ERRORS_CSV: &str = "scaling_errors.csv";
pub const SCALING_JSON: &str = "scaling.json";

/// Placeholder for an undefined ratio.
pub const NA: &str = "NA";

/// Formats `x` with 12 significant digits, plain notation for moderate
/// exponents and trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| NA.to_string(), fmt_num)
}

/// Subdirectory name for one field value, e.g. `g_2.5`.
pub fn field_dir(g: f64) -> String {
    format!("g_{}", fmt_num(g))
}

pub fn series_csv(run: &RunResult) -> String {
    let mut s = String::from("t,site,m_sim,m_exact,dm\n");
    for (k, &t) in run.sim.times.iter().enumerate() {
        for (j, dm) in run.errors.delta_local[k].iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                fmt_num(t),
                j + 1,
                fmt_num(run.sim.local[k][j]),
                fmt_num(run.exact.local[k][j]),
                fmt_num(*dm)
            );
        }
    }
    s
}

pub fn totals_csv(run: &RunResult) -> String {
    let mut s = String::from("t,m_total_sim,m_total_exact,dm_total\n");
    for (k, &t) in run.sim.times.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_num(t),
            fmt_num(run.sim.total[k]),
            fmt_num(run.exact.total[k]),
            fmt_num(run.errors.delta_total[k])
        );
    }
    s
}

#[derive(Debug, Serialize)]
struct CountsJson {
    rx: usize,
    rz: usize,
    cnot: usize,
    total: usize,
    per_step: KindCountsJson,
}

#[derive(Debug, Serialize)]
struct KindCountsJson {
    rx: usize,
    rz: usize,
    cnot: usize,
}

impl From<KindCounts> for KindCountsJson {
    fn from(k: KindCounts) -> Self {
        Self {
            rx: k.rx,
            rz: k.rz,
            cnot: k.cnot,
        }
    }
}

#[derive(Debug, Serialize)]
struct RunMeta<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    gate_counts: CountsJson,
    rmse_local: f64,
    rmse_total: f64,
}

pub fn run_json(run: &RunResult) -> String {
    let gc = &run.gate_counts;
    let meta = RunMeta {
        tool: TOOL,
        version: VERSION,
        config: &run.config,
        gate_counts: CountsJson {
            rx: gc.rx,
            rz: gc.rz,
            cnot: gc.cnot,
            total: gc.total(),
            // Every step of a Trotter circuit is identical.
            per_step: gc.per_step.first().copied().unwrap_or_default().into(),
        },
        rmse_local: run.errors.rmse_local,
        rmse_total: run.errors.rmse_total,
    };
    to_json(&meta)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable metadata");
    s.push('\n');
    s
}

fn write_file(path: PathBuf, contents: &str) -> RunnerResult<()> {
    fs::write(&path, contents).map_err(|source| RunnerError::Io { path, source })
}

fn ensure_dir(dir: &Path) -> RunnerResult<()> {
    fs::create_dir_all(dir).map_err(|source| RunnerError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn write_run(dir: &Path, run: &RunResult) -> RunnerResult<()> {
    ensure_dir(dir)?;
    write_file(dir.join(SERIES_CSV), &series_csv(run))?;
    write_file(dir.join(TOTALS_CSV), &totals_csv(run))?;
    write_file(dir.join(RUN_JSON), &run_json(run))
}

#[derive(Debug, Serialize)]
struct BatchMeta<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    values: &'a [f64],
}

fn batch_json(base: &RunConfig, values: &[f64]) -> String {
    to_json(&BatchMeta {
        tool: TOOL,
        version: VERSION,
        config: base,
        values,
    })
}

pub fn sweep_csv(runs: &[RunResult]) -> String {
    let mut s = String::from("g,rmse_local,rmse_total\n");
    for r in runs {
        let _ = writeln!(
            s,
            "{},{},{}",
            fmt_num(r.config.g),
            fmt_num(r.errors.rmse_local),
            fmt_num(r.errors.rmse_total)
        );
    }
    s
}

pub fn write_sweep(dir: &Path, base: &RunConfig, runs: &[RunResult]) -> RunnerResult<()> {
    ensure_dir(dir)?;
    let gs: Vec<f64> = runs.iter().map(|r| r.config.g).collect();
    write_file(dir.join(SWEEP_CSV), &sweep_csv(runs))?;
    write_file(dir.join(SWEEP_JSON), &batch_json(base, &gs))
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut s = String::from(
        "g,rmse_local_first,rmse_local_sym2,ratio_local,rmse_total_first,rmse_total_sym2,ratio_total\n",
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            fmt_num(r.g),
            fmt_num(r.first.errors.rmse_local),
            fmt_num(r.sym2.errors.rmse_local),
            fmt_opt(r.ratio_local()),
            fmt_num(r.first.errors.rmse_total),
            fmt_num(r.sym2.errors.rmse_total),
            fmt_opt(r.ratio_total()),
        );
    }
    s
}

pub fn write_compare(dir: &Path, base: &RunConfig, rows: &[CompareRow]) -> RunnerResult<()> {
    ensure_dir(dir)?;
    let gs: Vec<f64> = rows.iter().map(|r| r.g).collect();
    write_file(dir.join(COMPARE_CSV), &compare_csv(rows))?;
    write_file(dir.join(COMPARE_JSON), &batch_json(base, &gs))
}

pub fn scaling_csv(report: &ScalingReport) -> String {
    let mut s = String::from("order,slope\n");
    for (order, slope) in Order::BOTH.iter().zip(report.slopes) {
        let slope = slope.map_or_else(|| "degenerate".to_string(), fmt_num);
        let _ = writeln!(s, "{},{slope}", order.as_str());
    }
    s
}

pub fn scaling_errors_csv(report: &ScalingReport) -> String {
    let mut s = String::from("dt,err_first,err_sym2\n");
    for (k, dt) in report.dts.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{}",
            fmt_num(*dt),
            fmt_num(report.errors[0][k]),
            fmt_num(report.errors[1][k])
        );
    }
    s
}

pub fn write_scaling(dir: &Path, base: &RunConfig, report: &ScalingReport) -> RunnerResult<()> {
    ensure_dir(dir)?;
    write_file(dir.join(SCALING_CSV), &scaling_csv(report))?;
    write_file(dir.join(SCALING_ERRORS_CSV), &scaling_errors_csv(report))?;
    write_file(dir.join(SCALING_JSON), &batch_json(base, &report.dts))
}
