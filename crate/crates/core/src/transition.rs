//! Statistics-active and statistics-inactive regimes.
//!
//! Particles in a liquid swap places only on time scales longer than the
//! relaxation time. An observation at frequency `ω` (or lasting `t_obs`)
//! therefore sees exchange effects when `ωτ ≪ 1` (`t_obs ≫ τ`) and misses
//! them when `ωτ ≫ 1`. The crossover is placed at `ωτ = 1`, where `F = 1/2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::viscoelastic::response_factor;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Bounds on `ωτ` separating the three regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    active_max: f64,
    inactive_min: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self { active_max: 0.1, inactive_min: 10.0 }
    }
}

impl RegimeThresholds {
    pub fn new(active_max: f64, inactive_min: f64) -> Result<Self> {
        let ok = active_max.is_finite()
            && inactive_min.is_finite()
            && 0.0 < active_max
            && active_max < 1.0
            && 1.0 < inactive_min;
        if !ok {
            return Err(Error::Config(format!(
                "thresholds need 0 < active_max < 1 < inactive_min, got {active_max} and {inactive_min}"
            )));
        }
        Ok(Self { active_max, inactive_min })
    }

    pub fn active_max(&self) -> f64 {
        self.active_max
    }

    pub fn inactive_min(&self) -> f64 {
        self.inactive_min
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeClass {
    StatisticsActive,
    Crossover,
    StatisticsInactive,
}

impl RegimeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeClass::StatisticsActive => "statistics_active",
            RegimeClass::Crossover => "crossover",
            RegimeClass::StatisticsInactive => "statistics_inactive",
        }
    }
}

pub fn classify_regime(omega_tau: f64, th: &RegimeThresholds) -> Result<RegimeClass> {
    ensure_finite("omega_tau", omega_tau)?;
    if omega_tau < 0.0 {
        return Err(Error::Domain(format!("omega_tau must be >= 0, got {omega_tau}")));
    }
    Ok(if omega_tau < th.active_max {
        RegimeClass::StatisticsActive
    } else if omega_tau > th.inactive_min {
        RegimeClass::StatisticsInactive
    } else {
        RegimeClass::Crossover
    })
}

/// Regime seen by a measurement of duration `t_obs`, classified by `τ/t_obs`.
pub fn measurement_window(t_obs: f64, tau: f64, th: &RegimeThresholds) -> Result<RegimeClass> {
    for (name, v) in [("t_obs", t_obs), ("tau", tau)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")));
        }
    }
    classify_regime(tau / t_obs, th)
}

/// Thermally activated relaxation time `τ₀ exp(E_a/(k_B T))`.
///
/// This is a convenience knob for sweeping `τ` over many decades, not a
/// model of any particular liquid.
pub fn arrhenius_tau(tau0: f64, activation_energy: f64, temperature: f64) -> Result<f64> {
    if !(tau0.is_finite() && tau0 > 0.0) {
        return Err(Error::Domain(format!("tau0 must be finite and > 0, got {tau0}")));
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::Domain(format!("temperature must be finite and > 0, got {temperature}")));
    }
    if !(activation_energy.is_finite() && activation_energy >= 0.0) {
        return Err(Error::Domain(format!(
            "activation energy must be finite and >= 0, got {activation_energy}"
        )));
    }
    let exponent = activation_energy / (BOLTZMANN * temperature);
    let tau = tau0 * exponent.exp();
    let tau = if tau.is_finite() { tau } else { (tau0.ln() + exponent).exp() };
    if !tau.is_finite() {
        return Err(Error::Numerical(format!(
            "relaxation time overflows: tau0 = {tau0}, Ea/(kB T) = {exponent}"
        )));
    }
    Ok(tau)
}

/// How the observation is characterised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    /// Fixed angular frequency in rad/s; `ωτ = ω·τ`.
    Frequency(f64),
    /// Fixed measurement duration in s; `ωτ = τ/t_obs`.
    Window(f64),
}

impl Probe {
    fn validate(&self) -> Result<()> {
        let (name, v) = match *self {
            Probe::Frequency(w) => ("omega", w),
            Probe::Window(t) => ("t_obs", t),
        };
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("{name} must be finite and > 0, got {v}")))
        }
    }

    pub fn omega_tau(&self, tau: f64) -> f64 {
        match *self {
            Probe::Frequency(w) => w * tau,
            Probe::Window(t) => tau / t,
        }
    }

    /// Relaxation time at which `ωτ = 1`.
    pub fn crossover_tau(&self) -> f64 {
        match *self {
            Probe::Frequency(w) => 1.0 / w,
            Probe::Window(t) => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRow {
    pub tau: f64,
    pub omega_tau: f64,
    pub f: f64,
    pub regime: RegimeClass,
    pub j_modulated: Option<f64>,
    pub splitting: Option<f64>,
}

/// Location of `F = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub omega_tau: f64,
    pub tau: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSweep {
    pub rows: Vec<TransitionRow>,
    /// Present when the grid brackets `ωτ = 1`.
    pub crossover: Option<Crossover>,
}

/// Evaluates `F`, the regime and optionally `J = J₀F` across a grid of
/// relaxation times.
pub fn transition_sweep(
    probe: Probe,
    tau_grid: &[f64],
    th: &RegimeThresholds,
    j0: Option<f64>,
) -> Result<TransitionSweep> {
    probe.validate()?;
    if tau_grid.is_empty() {
        return Err(Error::Config("tau grid is empty".into()));
    }
    if let Some(bad) = tau_grid.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Config(format!("tau grid contains invalid value {bad}")));
    }
    if tau_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("tau grid is not strictly increasing".into()));
    }
    if let Some(j0) = j0 {
        ensure_finite("J0", j0)?;
    }

    let rows = tau_grid
        .par_iter()
        .map(|&tau| {
            let omega_tau = probe.omega_tau(tau);
            if !omega_tau.is_finite() {
                return Err(Error::Numerical(format!("omega_tau overflows at tau = {tau}")));
            }
            let f = response_factor(omega_tau)?;
            let j = j0.map(|j0| j0 * f);
            Ok(TransitionRow {
                tau,
                omega_tau,
                f,
                regime: classify_regime(omega_tau, th)?,
                j_modulated: j,
                splitting: j.map(|j| 2.0 * j),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let first = rows.first().map(|r| r.omega_tau).unwrap_or(f64::NAN);
    let last = rows.last().map(|r| r.omega_tau).unwrap_or(f64::NAN);
    let crossover = (first <= 1.0 && 1.0 <= last).then(|| Crossover {
        omega_tau: 1.0,
        tau: probe.crossover_tau(),
        f: 0.5,
    });
    Ok(TransitionSweep { rows, crossover })
}
