//! Magnetization observables, deviation maps and error summaries.

use crate::error::{Error, Result};
use crate::statevector::{Counts, StateVector};

const GRID_TOL: f64 = 1e-12;

/// `M_j(t_k)` for every time and site, with the site-averaged `M(t_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnetizationSeries {
    pub times: Vec<f64>,
    /// `local[k][j]`: site `j` at time `k`.
    pub local: Vec<Vec<f64>>,
    pub total: Vec<f64>,
}

impl MagnetizationSeries {
    pub fn new(times: Vec<f64>, local: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != local.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                actual: local.len(),
            });
        }
        let n_sites = local.first().map_or(0, Vec::len);
        if let Some(row) = local.iter().find(|r| r.len() != n_sites || r.is_empty()) {
            return Err(Error::DimensionMismatch {
                expected: n_sites.max(1),
                actual: row.len(),
            });
        }
        let total = local.iter().map(|row| total_magnetization(row)).collect();
        Ok(Self {
            times,
            local,
            total,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.local.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Deviations of a simulated series from the exact one.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSummary {
    /// `ΔM_j(t_k) = M_j^sim - M_j^exact`.
    pub delta_local: Vec<Vec<f64>>,
    pub delta_total: Vec<f64>,
    /// RMSE pooled over every (time, site) entry.
    pub rmse_local: f64,
    /// RMSE of the total magnetization over time.
    pub rmse_total: f64,
}

pub fn local_magnetization_from_state(state: &StateVector) -> Vec<f64> {
    state.expectation_z_all()
}

/// Shot estimate `(n_j(0) - n_j(1)) / shots` per site.
pub fn local_magnetization_from_counts(counts: &Counts) -> Result<Vec<f64>> {
    let shots: usize = counts.values().sum();
    let n_sites = counts.keys().next().map(|b| b.len()).ok_or(Error::EmptyCounts)?;
    if shots == 0 {
        return Err(Error::EmptyCounts);
    }
    let mut signed = vec![0i64; n_sites];
    for (bits, &count) in counts {
        if bits.len() != n_sites {
            return Err(Error::DimensionMismatch {
                expected: n_sites,
                actual: bits.len(),
            });
        }
        for (j, s) in signed.iter_mut().enumerate() {
            let c = count as i64;
            *s += if bits.bit(j) == 0 { c } else { -c };
        }
    }
    Ok(signed.into_iter().map(|s| s as f64 / shots as f64).collect())
}

/// Site average `(1/N) Σ_j M_j`.
pub fn total_magnetization(local: &[f64]) -> f64 {
    local.iter().sum::<f64>() / local.len() as f64
}

fn rms(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v * v, n + 1));
    if n == 0 {
        0.0
    } else {
        (sum / n as f64).sqrt()
    }
}

pub fn error_series(sim: &MagnetizationSeries, exact: &MagnetizationSeries) -> Result<ErrorSummary> {
    let same_grid = sim.times.len() == exact.times.len()
        && sim
            .times
            .iter()
            .zip(&exact.times)
            .all(|(a, b)| (a - b).abs() <= GRID_TOL);
    if !same_grid || sim.n_sites() != exact.n_sites() {
        return Err(Error::GridMismatch);
    }
    let delta_local: Vec<Vec<f64>> = sim
        .local
        .iter()
        .zip(&exact.local)
        .map(|(s, e)| s.iter().zip(e).map(|(a, b)| a - b).collect())
        .collect();
    let delta_total: Vec<f64> = sim.total.iter().zip(&exact.total).map(|(a, b)| a - b).collect();
    Ok(ErrorSummary {
        rmse_local: rms(delta_local.iter().flatten().copied()),
        rmse_total: rms(delta_total.iter().copied()),
        delta_local,
        delta_total,
    })
}

/// Least-squares line through `(ln dt, ln err)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
}

pub fn scaling_fit(dts: &[f64], errs: &[f64]) -> Result<ScalingFit> {
    if dts.len() != errs.len() {
        return Err(Error::DimensionMismatch {
            expected: dts.len(),
            actual: errs.len(),
        });
    }
    if dts.len() < 3 {
        return Err(Error::TooFewPoints(dts.len()));
    }
    if let Some(&v) = dts.iter().chain(errs).find(|&&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::NonPositive(v));
    }
    let xs: Vec<f64> = dts.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(ScalingFit {
        slope,
        intercept: my - slope * mx,
    })
}
