//! Run configuration: the resolved [`RunConfig`] and the flat [`Settings`]
//! layer shared by command-line flags and JSON config files.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use tfim_core::trotter::{Boundary, TfimParams, TrotterOrder};
use tfim_core::{NoiseParams, MAX_DENSE_QUBITS};

use crate::error::{RunnerError, RunnerResult};

pub const DEFAULT_N: usize = 5;
pub const DEFAULT_J: f64 = 1.0;
pub const DEFAULT_G: f64 = 1.0;
/// Trotter step in units of `1/J`.
pub const DEFAULT_DT: f64 = 0.2;
pub const DEFAULT_STEPS: usize = 20;
pub const DEFAULT_SHOTS: usize = 1024;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Order {
    #[serde(rename = "first")]
    #[value(name = "first")]
    First,
    #[serde(rename = "sym2")]
    #[value(name = "sym2")]
    Sym2,
}

impl Order {
    pub const BOTH: [Order; 2] = [Order::First, Order::Sym2];

    pub fn as_str(&self) -> &'static str {
        match self {
            Order::First => "first",
            Order::Sym2 => "sym2",
        }
    }
}

impl From<Order> for TrotterOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::First => TrotterOrder::FirstOrder,
            Order::Sym2 => TrotterOrder::SymmetricSecondOrder,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Ideal,
    Shots,
    Noisy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub p1: f64,
    pub p2: f64,
    pub read01: f64,
    pub read10: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseParams::DEVICE_LIKE.into()
    }
}

impl From<NoiseParams> for NoiseConfig {
    fn from(n: NoiseParams) -> Self {
        Self {
            p1: n.p1,
            p2: n.p2,
            read01: n.read01,
            read10: n.read10,
        }
    }
}

impl From<NoiseConfig> for NoiseParams {
    fn from(n: NoiseConfig) -> Self {
        Self {
            p1: n.p1,
            p2: n.p2,
            read01: n.read01,
            read10: n.read10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    /// Exact expectations from the statevector.
    Ideal,
    /// A fresh batch of shots from the statevector at every step.
    Shots { shots: usize },
    /// Pauli-fault trajectories, one shot per trajectory per step, then
    /// readout flips.
    Noisy {
        trajectories: usize,
        noise: NoiseConfig,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub j: f64,
    pub g: f64,
    pub dt: f64,
    pub steps: usize,
    pub order: Order,
    pub mode: Mode,
    pub periodic: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: DEFAULT_N,
            j: DEFAULT_J,
            g: DEFAULT_G,
            dt: DEFAULT_DT,
            steps: DEFAULT_STEPS,
            order: Order::First,
            mode: Mode::Ideal,
            periodic: false,
            seed: DEFAULT_SEED,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> TfimParams {
        let boundary = if self.periodic {
            Boundary::Periodic
        } else {
            Boundary::Open
        };
        TfimParams::new(self.n, self.j, self.g, self.dt).with_boundary(boundary)
    }

    pub fn with_g(&self, g: f64) -> Self {
        Self { g, ..self.clone() }
    }

    pub fn with_order(&self, order: Order) -> Self {
        Self {
            order,
            ..self.clone()
        }
    }

    pub fn with_out(&self, out: Option<PathBuf>) -> Self {
        Self { out, ..self.clone() }
    }

    /// Step boundaries `t_k = k Δt`, `k = 1..=steps`.
    pub fn times(&self) -> Vec<f64> {
        (1..=self.steps).map(|k| k as f64 * self.dt).collect()
    }

    pub fn validate(&self) -> RunnerResult<()> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(RunnerError::config(format!(
                "n = {} exceeds the exact-reference limit of {MAX_DENSE_QUBITS} spins",
                self.n
            )));
        }
        if self.steps == 0 {
            return Err(RunnerError::config("steps must be at least 1"));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(RunnerError::config(format!("dt must be positive, got {}", self.dt)));
        }
        self.params()
            .validate()
            .map_err(|e| RunnerError::config(e.to_string()))?;
        match self.mode {
            Mode::Ideal => {}
            Mode::Shots { shots } if shots == 0 => {
                return Err(RunnerError::config("shots must be at least 1"));
            }
            Mode::Shots { .. } => {}
            Mode::Noisy {
                trajectories,
                noise,
            } => {
                if trajectories == 0 {
                    return Err(RunnerError::config("trajectories must be at least 1"));
                }
                NoiseParams::from(noise)
                    .validate()
                    .map_err(|e| RunnerError::config(e.to_string()))?;
            }
        }
        Ok(())
    }
}

/// Every tunable as an optional value. Used both as the flag set of each
/// subcommand and as the schema of the JSON config file; flags override
/// file values.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// JSON file supplying any of the options below
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Number of spins
    #[arg(long)]
    pub n: Option<usize>,

    /// Coupling J
    #[arg(long)]
    pub j: Option<f64>,

    /// Transverse field g (units of J)
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,

    /// Comma-separated fields for sweep/compare
    #[arg(long = "g-list", value_delimiter = ',', allow_negative_numbers = true)]
    pub g_list: Option<Vec<f64>>,

    /// Trotter step (units of 1/J)
    #[arg(long)]
    pub dt: Option<f64>,

    /// Comma-separated steps for the scaling command
    #[arg(long = "dt-list", value_delimiter = ',')]
    pub dt_list: Option<Vec<f64>>,

    /// Number of Trotter steps
    #[arg(long)]
    pub steps: Option<usize>,

    #[arg(long, value_enum)]
    pub order: Option<Order>,

    #[arg(long, value_enum)]
    pub mode: Option<ModeKind>,

    /// Shots per step boundary (shots mode)
    #[arg(long)]
    pub shots: Option<usize>,

    /// Trajectories, one shot each per step boundary (noisy mode; defaults to --shots)
    #[arg(long)]
    pub traj: Option<usize>,

    /// Fault probability after single-qubit gates
    #[arg(long)]
    pub p1: Option<f64>,

    /// Fault probability after CNOT gates
    #[arg(long)]
    pub p2: Option<f64>,

    /// Readout 0 -> 1 flip probability
    #[arg(long)]
    pub read01: Option<f64>,

    /// Readout 1 -> 0 flip probability
    #[arg(long)]
    pub read10: Option<f64>,

    /// Periodic chain instead of open
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub periodic: Option<bool>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Settings {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> RunnerResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| RunnerError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| RunnerError::config(format!("{}: {e}", path.display())))
    }

    /// Values from `self` where present, otherwise from `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            config: self.config.or(base.config),
            n: self.n.or(base.n),
            j: self.j.or(base.j),
            g: self.g.or(base.g),
            g_list: self.g_list.or(base.g_list),
            dt: self.dt.or(base.dt),
            dt_list: self.dt_list.or(base.dt_list),
            steps: self.steps.or(base.steps),
            order: self.order.or(base.order),
            mode: self.mode.or(base.mode),
            shots: self.shots.or(base.shots),
            traj: self.traj.or(base.traj),
            p1: self.p1.or(base.p1),
            p2: self.p2.or(base.p2),
            read01: self.read01.or(base.read01),
            read10: self.read10.or(base.read10),
            periodic: self.periodic.or(base.periodic),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
        }
    }

    /// Flags layered over the config file named by `--config`, if any.
    pub fn resolve_file(self) -> RunnerResult<Settings> {
        match &self.config {
            Some(path) => {
                let file = Settings::load(path)?;
                Ok(self.over(file))
            }
            None => Ok(self),
        }
    }

    pub fn to_run_config(&self) -> RunnerResult<RunConfig> {
        let d = RunConfig::default();
        let shots = self.shots.unwrap_or(DEFAULT_SHOTS);
        let default_noise = NoiseConfig::default();
        let mode = match self.mode.unwrap_or(ModeKind::Ideal) {
            ModeKind::Ideal => Mode::Ideal,
            ModeKind::Shots => Mode::Shots { shots },
            ModeKind::Noisy => Mode::Noisy {
                trajectories: self.traj.unwrap_or(shots),
                noise: NoiseConfig {
                    p1: self.p1.unwrap_or(default_noise.p1),
                    p2: self.p2.unwrap_or(default_noise.p2),
                    read01: self.read01.unwrap_or(default_noise.read01),
                    read10: self.read10.unwrap_or(default_noise.read10),
                },
            },
        };
        let config = RunConfig {
            n: self.n.unwrap_or(d.n),
            j: self.j.unwrap_or(d.j),
            g: self.g.unwrap_or(d.g),
            dt: self.dt.unwrap_or(d.dt),
            steps: self.steps.unwrap_or(d.steps),
            order: self.order.unwrap_or(d.order),
            mode,
            periodic: self.periodic.unwrap_or(d.periodic),
            seed: self.seed.unwrap_or(d.seed),
            out: self.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}
