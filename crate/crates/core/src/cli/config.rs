//! JSON run configuration.
//!
//! Only `eta0` and `G0` are required. Unknown keys are rejected at every
//! level so that a typo cannot silently fall back to a default.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::error::Error;
use crate::exchange::{InteractionKernel, McSpec, Orbital, QuadratureSpec};
use crate::maxwell::{DriveKind, DriveSignal, DEFAULT_DT_OVER_TAU};
use crate::transition::{Probe, RegimeThresholds};
use crate::viscoelastic::FluidParams;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    eta0: f64,
    #[serde(rename = "G0")]
    g0: f64,
    rho: Option<f64>,
    #[serde(default)]
    grid: RawLogGrid,
    #[serde(default)]
    maxwell: RawMaxwell,
    #[serde(default)]
    drive: RawDrive,
    #[serde(default)]
    dispersion: RawDispersion,
    orbitals: Option<[RawOrbital; 2]>,
    #[serde(default)]
    kernel: RawKernel,
    #[serde(default)]
    quadrature: RawQuadrature,
    #[serde(default)]
    mc: RawMc,
    #[serde(default)]
    exchange: RawExchange,
    #[serde(default)]
    thresholds: RawThresholds,
    #[serde(default)]
    transition: RawTransition,
    #[serde(default)]
    format: OutputFormat,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLogGrid {
    min: f64,
    max: f64,
    count: usize,
}

impl Default for RawLogGrid {
    fn default() -> Self {
        Self { min: 1e-4, max: 1e4, count: 81 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DriveMode {
    Stress,
    #[default]
    Strain,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaxwell {
    #[serde(default)]
    mode: DriveMode,
    dt: Option<f64>,
    horizon: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrive {
    kind: DriveKind,
    amplitude: f64,
    #[serde(default)]
    omega: f64,
    #[serde(default)]
    phase: f64,
}

impl Default for RawDrive {
    fn default() -> Self {
        Self { kind: DriveKind::Step, amplitude: 1e-3, omega: 0.0, phase: 0.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDispersion {
    #[serde(default)]
    k_min: f64,
    k_max: Option<f64>,
    #[serde(default = "default_dispersion_count")]
    count: usize,
}

fn default_dispersion_count() -> usize {
    81
}

impl Default for RawDispersion {
    fn default() -> Self {
        Self { k_min: 0.0, k_max: None, count: default_dispersion_count() }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbital {
    center: f64,
    sigma: f64,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawKernel {
    GaussianWell {
        #[serde(rename = "U0")]
        u0: f64,
        range: f64,
    },
    SoftCoulomb {
        #[serde(rename = "U0")]
        u0: f64,
        softening: f64,
    },
}

impl Default for RawKernel {
    fn default() -> Self {
        Self::GaussianWell { u0: 1.0, range: 1.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadrature {
    #[serde(default = "default_nodes")]
    nodes: usize,
    #[serde(default = "default_padding")]
    padding: f64,
    #[serde(default = "default_norm_tolerance")]
    norm_tolerance: f64,
}

fn default_nodes() -> usize {
    QuadratureSpec::default().nodes
}

fn default_padding() -> f64 {
    QuadratureSpec::default().padding_sigmas
}

fn default_norm_tolerance() -> f64 {
    QuadratureSpec::default().norm_tolerance
}

impl Default for RawQuadrature {
    fn default() -> Self {
        Self { nodes: default_nodes(), padding: default_padding(), norm_tolerance: default_norm_tolerance() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMc {
    #[serde(default = "default_samples")]
    n_samples: u64,
    #[serde(default)]
    seed: u64,
}

fn default_samples() -> u64 {
    McSpec::default().n_samples
}

impl Default for RawMc {
    fn default() -> Self {
        Self { n_samples: default_samples(), seed: 0 }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExchange {
    #[serde(default)]
    omega_tau: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThresholds {
    active_max: f64,
    inactive_min: f64,
}

impl Default for RawThresholds {
    fn default() -> Self {
        let th = RegimeThresholds::default();
        Self { active_max: th.active_max(), inactive_min: th.inactive_min() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    omega: Option<f64>,
    t_obs: Option<f64>,
    #[serde(default = "default_tau_min")]
    tau_min: f64,
    #[serde(default = "default_tau_max")]
    tau_max: f64,
    #[serde(default = "default_tau_count")]
    count: usize,
    #[serde(rename = "J0")]
    j0: Option<f64>,
}

fn default_tau_min() -> f64 {
    1e-13
}

fn default_tau_max() -> f64 {
    1e4
}

fn default_tau_count() -> usize {
    69
}

impl Default for RawTransition {
    fn default() -> Self {
        Self {
            omega: None,
            t_obs: None,
            tau_min: default_tau_min(),
            tau_max: default_tau_max(),
            count: default_tau_count(),
            j0: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellSpec {
    pub mode: DriveMode,
    pub drive: DriveSignal,
    pub dt: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSpec {
    pub k_min: f64,
    /// `None` means four times the gap wavevector.
    pub k_max: Option<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSpec {
    pub probe: Probe,
    pub tau_grid: LogGrid,
    pub j0: Option<f64>,
}

/// Fully validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub fluid: FluidParams,
    pub grid: LogGrid,
    pub maxwell: MaxwellSpec,
    pub dispersion: DispersionSpec,
    pub orbitals: [Orbital; 2],
    pub kernel: InteractionKernel,
    pub quadrature: QuadratureSpec,
    pub mc: McSpec,
    pub exchange_omega_tau: f64,
    pub thresholds: RegimeThresholds,
    pub transition: TransitionSpec,
    pub format: OutputFormat,
}

fn field<T>(path: &str, r: crate::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| {
        let msg = match e {
            Error::Domain(m) | Error::Config(m) | Error::Numerical(m) => m,
        };
        CliError::Config(format!("{path}: {msg}"))
    })
}

fn check(path: &str, ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(format!("{path}: {what}")))
    }
}

fn log_grid(path: &str, g: &RawLogGrid) -> Result<LogGrid, CliError> {
    let grid = LogGrid { min: g.min, max: g.max, count: g.count };
    field(path, crate::viscoelastic::log_space(g.min, g.max, g.count))?;
    Ok(grid)
}

fn positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("{path}: {}", e.into_inner()))
    })?;
    validate(raw)
}

/// Reads and validates a configuration file.
pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_str(&text)
}

fn validate(raw: RawConfig) -> Result<RunConfig, CliError> {
    check("eta0", positive(raw.eta0), &format!("must be finite and > 0, got {}", raw.eta0))?;
    check("G0", positive(raw.g0), &format!("must be finite and > 0, got {}", raw.g0))?;
    let mut fluid = field("eta0", FluidParams::new(raw.eta0, raw.g0))?;
    if let Some(rho) = raw.rho {
        fluid = field("rho", fluid.with_density(rho))?;
    }
    let tau = fluid.tau();

    let grid = log_grid("grid", &raw.grid)?;

    let drive = DriveSignal {
        kind: raw.drive.kind,
        amplitude: raw.drive.amplitude,
        omega: raw.drive.omega,
        phase: raw.drive.phase,
    };
    field("drive", drive.validate())?;
    let dt = raw.maxwell.dt.unwrap_or(DEFAULT_DT_OVER_TAU * tau);
    let horizon = raw.maxwell.horizon.unwrap_or(5.0 * tau);
    check("maxwell.dt", positive(dt), &format!("must be finite and > 0, got {dt}"))?;
    check(
        "maxwell.dt",
        dt <= crate::maxwell::MAX_DT_OVER_TAU * tau,
        &format!("{dt} exceeds tau/10 = {}", crate::maxwell::MAX_DT_OVER_TAU * tau),
    )?;
    check("maxwell.horizon", horizon.is_finite() && horizon >= dt, &format!("must be >= dt, got {horizon}"))?;
    check(
        "maxwell.horizon",
        horizon / dt <= 1e7,
        &format!("horizon/dt = {} exceeds 1e7 steps", horizon / dt),
    )?;
    let maxwell = MaxwellSpec { mode: raw.maxwell.mode, drive, dt, horizon };

    let d = &raw.dispersion;
    check("dispersion.k_min", d.k_min.is_finite() && d.k_min >= 0.0, "must be finite and >= 0")?;
    if let Some(k_max) = d.k_max {
        check("dispersion.k_max", k_max.is_finite() && k_max >= d.k_min, "must be finite and >= k_min")?;
        field("dispersion", crate::viscoelastic::lin_space(d.k_min, k_max, d.count))?;
    }
    check("dispersion.count", d.count >= 1, "must be >= 1")?;
    let dispersion = DispersionSpec { k_min: d.k_min, k_max: d.k_max, count: d.count };

    let raw_orbitals = raw
        .orbitals
        .unwrap_or([RawOrbital { center: -0.5, sigma: 1.0 }, RawOrbital { center: 0.5, sigma: 1.0 }]);
    let orbitals = [
        field("orbitals[0]", Orbital::gaussian(raw_orbitals[0].center, raw_orbitals[0].sigma))?,
        field("orbitals[1]", Orbital::gaussian(raw_orbitals[1].center, raw_orbitals[1].sigma))?,
    ];
    let kernel = match raw.kernel {
        RawKernel::GaussianWell { u0, range } => field("kernel", InteractionKernel::gaussian_well(u0, range))?,
        RawKernel::SoftCoulomb { u0, softening } => {
            field("kernel", InteractionKernel::soft_coulomb(u0, softening))?
        }
    };
    let quadrature = QuadratureSpec {
        nodes: raw.quadrature.nodes,
        padding_sigmas: raw.quadrature.padding,
        norm_tolerance: raw.quadrature.norm_tolerance,
    };
    field("quadrature", quadrature.validate())?;
    check(
        "mc.n_samples",
        raw.mc.n_samples >= crate::exchange::MIN_MC_SAMPLES,
        &format!("must be >= {}, got {}", crate::exchange::MIN_MC_SAMPLES, raw.mc.n_samples),
    )?;
    let mc = McSpec { n_samples: raw.mc.n_samples, seed: raw.mc.seed };
    let w = raw.exchange.omega_tau;
    check("exchange.omega_tau", w.is_finite() && w >= 0.0, &format!("must be finite and >= 0, got {w}"))?;

    let thresholds = field(
        "thresholds",
        RegimeThresholds::new(raw.thresholds.active_max, raw.thresholds.inactive_min),
    )?;

    let t = &raw.transition;
    let probe = match (t.omega, t.t_obs) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("transition: give either omega or t_obs, not both".into()))
        }
        (Some(w), None) => {
            check("transition.omega", positive(w), &format!("must be finite and > 0, got {w}"))?;
            Probe::Frequency(w)
        }
        (None, Some(t_obs)) => {
            check("transition.t_obs", positive(t_obs), &format!("must be finite and > 0, got {t_obs}"))?;
            Probe::Window(t_obs)
        }
        (None, None) => Probe::Frequency(1.0 / tau),
    };
    let tau_grid = log_grid(
        "transition",
        &RawLogGrid { min: t.tau_min, max: t.tau_max, count: t.count },
    )?;
    if let Some(j0) = t.j0 {
        check("transition.J0", j0.is_finite(), &format!("must be finite, got {j0}"))?;
    }
    let transition = TransitionSpec { probe, tau_grid, j0: t.j0 };

    Ok(RunConfig {
        fluid,
        grid,
        maxwell,
        dispersion,
        orbitals,
        kernel,
        quadrature,
        mc,
        exchange_omega_tau: w,
        thresholds,
        transition,
        format: raw.format,
    })
}
