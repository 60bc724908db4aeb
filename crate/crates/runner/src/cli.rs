//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand};

use crate::config::{Order, RunConfig, Settings};
use crate::error::{RunnerError, RunnerResult};
use crate::experiment::{compare_command, run_command, scaling_command, sweep_command};
use crate::output::{fmt_num, NA};

/// Trotterized transverse-field Ising chain simulations against an exact
/// reference.
#[derive(Debug, Parser)]
#[command(name = "tfim-trotter", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single run: magnetization series, error map and RMSE
    Run(Settings),
    /// One run per value of --g-list
    Sweep(Settings),
    /// First order vs symmetric second order for each value of --g-list
    Compare(Settings),
    /// Single-step error vs step size and the fitted order for each formula
    Scaling(Settings),
}

pub const DEFAULT_G_LIST: [f64; 6] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
pub const DEFAULT_DT_LIST: [f64; 5] = [0.0125, 0.025, 0.05, 0.1, 0.2];

fn resolve(settings: Settings) -> RunnerResult<(Settings, RunConfig)> {
    let settings = settings.resolve_file()?;
    let config = settings.to_run_config()?;
    Ok((settings, config))
}

/// Executes a parsed command, printing a summary to `out`.
pub fn dispatch(command: Command, out: &mut impl Write) -> RunnerResult<()> {
    let io_err = |source| RunnerError::Io {
        path: "<stdout>".into(),
        source,
    };
    match command {
        Command::Run(s) => {
            let (_, config) = resolve(s)?;
            let r = run_command(&config)?;
            writeln!(
                out,
                "order={} g={} rmse_local={} rmse_total={} gates={} wall_time={:.3}s",
                config.order.as_str(),
                fmt_num(config.g),
                fmt_num(r.errors.rmse_local),
                fmt_num(r.errors.rmse_total),
                r.gate_counts.total(),
                r.wall_time.as_secs_f64()
            )
            .map_err(io_err)?;
        }
        Command::Sweep(s) => {
            let (s, config) = resolve(s)?;
            let gs = s.g_list.unwrap_or_else(|| DEFAULT_G_LIST.to_vec());
            let sweep = sweep_command(&config, &gs)?;
            writeln!(out, "g,rmse_local,rmse_total").map_err(io_err)?;
            for r in &sweep.runs {
                writeln!(
                    out,
                    "{},{},{}",
                    fmt_num(r.config.g),
                    fmt_num(r.errors.rmse_local),
                    fmt_num(r.errors.rmse_total)
                )
                .map_err(io_err)?;
            }
        }
        Command::Compare(s) => {
            let (s, config) = resolve(s)?;
            let gs = s.g_list.unwrap_or_else(|| DEFAULT_G_LIST.to_vec());
            let rows = compare_command(&config, &gs)?;
            writeln!(out, "g,rmse_local_first,rmse_local_sym2,ratio_local").map_err(io_err)?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    fmt_num(row.g),
                    fmt_num(row.first.errors.rmse_local),
                    fmt_num(row.sym2.errors.rmse_local),
                    row.ratio_local().map_or_else(|| NA.to_string(), fmt_num)
                )
                .map_err(io_err)?;
            }
        }
        Command::Scaling(s) => {
            let (s, config) = resolve(s)?;
            let dts = s.dt_list.unwrap_or_else(|| DEFAULT_DT_LIST.to_vec());
            let report = scaling_command(&config, &dts)?;
            for (order, slope) in Order::BOTH.iter().zip(report.slopes) {
                let slope = slope.map_or_else(|| "degenerate".to_string(), fmt_num);
                writeln!(out, "{} slope={slope}", order.as_str()).map_err(io_err)?;
            }
        }
    }
    Ok(())
}
