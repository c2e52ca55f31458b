//! Frequency-domain Maxwell–Frenkel response.
//!
//! Everything here is reduced to the dimensionless group `ωτ`. The operator
//! `1 + τ d/dt` acts on `e^{iωt}` as multiplication by `1 + iωτ`, which gives
//!
//! ```text
//! G(ω)   = G₀ iωτ / (1 + iωτ)         Re G = G₀(1 − F),  Im G = G₀ ωτ F
//! 1/η(ω) = (1 + iωτ) / η₀
//! F      = 1 / (1 + ω²τ²)
//! ```

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};

/// Above this `ωτ` the squares in the rational forms are no longer safe
/// to evaluate directly and the reciprocal forms are used.
const SQUARE_SAFE_MAX: f64 = 1e150;

/// Material state of a Maxwell liquid.
///
/// The relaxation time is always derived as `η₀/G₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    eta0: f64,
    g0: f64,
    rho: Option<f64>,
}

impl FluidParams {
    /// `eta0` is the dynamic viscosity in Pa·s, `g0` the instantaneous shear
    /// modulus in Pa.
    pub fn new(eta0: f64, g0: f64) -> Result<Self> {
        check_positive("eta0", eta0)?;
        check_positive("G0", g0)?;
        let params = Self { eta0, g0, rho: None };
        if !(params.tau().is_finite() && params.tau() > 0.0) {
            return Err(Error::Numerical(format!(
                "relaxation time eta0/G0 = {eta0}/{g0} is not representable"
            )));
        }
        Ok(params)
    }

    /// Attaches a mass density in kg/m³, needed for shear-wave propagation.
    pub fn with_density(mut self, rho: f64) -> Result<Self> {
        check_positive("rho", rho)?;
        self.rho = Some(rho);
        Ok(self)
    }

    /// Builds parameters from a relaxation time and shear modulus.
    pub fn from_tau(tau: f64, g0: f64) -> Result<Self> {
        check_positive("tau", tau)?;
        check_positive("G0", g0)?;
        Self::new(tau * g0, g0)
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    pub fn rho(&self) -> Option<f64> {
        self.rho
    }

    /// Maxwell relaxation time `τ = η₀/G₀` in seconds.
    pub fn tau(&self) -> f64 {
        self.eta0 / self.g0
    }

    pub fn omega_tau(&self, omega: f64) -> f64 {
        omega * self.tau()
    }
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

fn check_omega_tau(omega_tau: f64) -> Result<f64> {
    ensure_finite("omega_tau", omega_tau)?;
    if omega_tau < 0.0 {
        return Err(Error::Domain(format!("omega_tau must be >= 0, got {omega_tau}")));
    }
    Ok(omega_tau)
}

/// One frequency point of the linear response.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseSample {
    pub omega: f64,
    pub omega_tau: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub g_real: f64,
    pub g_imag: f64,
    pub eta_inv_real: f64,
    pub eta_inv_imag: f64,
}

/// Viscoelastic factor `F = 1/(1 + (ωτ)²)`.
///
/// `F` is 1 in the hydrodynamic limit and vanishes in the solid-like limit.
/// It stays strictly positive for `ωτ` up to about `1e154`, beyond which the
/// true value is below the smallest subnormal `f64`.
pub fn response_factor(omega_tau: f64) -> Result<f64> {
    let x = check_omega_tau(omega_tau)?;
    Ok(factor_unchecked(x))
}

fn factor_unchecked(x: f64) -> f64 {
    if x <= SQUARE_SAFE_MAX {
        1.0 / (1.0 + x * x)
    } else {
        let r = 1.0 / x;
        r * r / (1.0 + r * r)
    }
}

/// `(Re G, Im G) / G₀` at a given `ωτ`, evaluated without the cancellation
/// in `1 − F`.
fn reduced_modulus(x: f64) -> (f64, f64) {
    if x <= SQUARE_SAFE_MAX {
        let d = 1.0 + x * x;
        (x * x / d, x / d)
    } else {
        let r = 1.0 / x;
        let d = 1.0 + r * r;
        (1.0 / d, r / d)
    }
}

/// Complex shear modulus `G(ω) = G₀ iωτ/(1 + iωτ)` as `(Re G, Im G)` in Pa.
pub fn complex_shear_modulus(omega: f64, params: &FluidParams) -> Result<(f64, f64)> {
    let x = check_omega_tau(params.omega_tau(ensure_finite("omega", omega)?))?;
    Ok(modulus_at(x, params))
}

fn modulus_at(x: f64, params: &FluidParams) -> (f64, f64) {
    let (re, im) = reduced_modulus(x);
    (params.g0() * re, params.g0() * im)
}

/// Generalized inverse viscosity `(1 + iωτ)/η₀` in 1/(Pa·s).
pub fn inverse_viscosity(omega: f64, params: &FluidParams) -> Result<(f64, f64)> {
    let x = check_omega_tau(params.omega_tau(ensure_finite("omega", omega)?))?;
    Ok(inverse_viscosity_at(x, params))
}

fn inverse_viscosity_at(x: f64, params: &FluidParams) -> (f64, f64) {
    (1.0 / params.eta0(), x / params.eta0())
}

/// Full response at a dimensionless frequency `ωτ`.
pub fn response_at(omega_tau: f64, params: &FluidParams) -> Result<ResponseSample> {
    let x = check_omega_tau(omega_tau)?;
    let (g_real, g_imag) = modulus_at(x, params);
    let (eta_inv_real, eta_inv_imag) = inverse_viscosity_at(x, params);
    let sample = ResponseSample {
        omega: x / params.tau(),
        omega_tau: x,
        f: factor_unchecked(x),
        g_real,
        g_imag,
        eta_inv_real,
        eta_inv_imag,
    };
    let all = [
        sample.omega,
        sample.f,
        sample.g_real,
        sample.g_imag,
        sample.eta_inv_real,
        sample.eta_inv_imag,
    ];
    if all.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!("non-finite response at omega_tau = {x}")));
    }
    Ok(sample)
}

/// Evaluates the response over a grid of `ωτ` values.
pub fn frequency_sweep(grid: &[f64], params: &FluidParams) -> Result<Vec<ResponseSample>> {
    validate_grid("omega_tau grid", grid)?;
    grid.iter().map(|&x| response_at(x, params)).collect()
}

/// Checks that a grid is nonempty, finite, nonnegative and strictly increasing.
pub fn validate_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Config(format!("{name} is empty")));
    }
    if let Some(bad) = grid.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::Config(format!("{name} contains invalid value {bad}")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("{name} is not strictly increasing")));
    }
    Ok(())
}

/// `count` points spaced evenly in `log10` between `min` and `max`,
/// with both endpoints reproduced exactly.
pub fn log_space(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && min > 0.0 && max > 0.0) {
        return Err(Error::Config(format!(
            "log grid bounds must be finite and > 0, got [{min}, {max}]"
        )));
    }
    match count {
        0 => Err(Error::Config("log grid count must be >= 1".into())),
        1 if min == max => Ok(vec![min]),
        1 => Err(Error::Config("log grid with count 1 needs min == max".into())),
        _ if max <= min => Err(Error::Config(format!("log grid needs min < max, got [{min}, {max}]"))),
        _ => {
            let (lo, hi) = (min.log10(), max.log10());
            let last = count - 1;
            let mut grid: Vec<f64> = (0..count)
                .map(|i| match i {
                    0 => min,
                    i if i == last => max,
                    i => 10f64.powf(lo + (hi - lo) * i as f64 / last as f64),
                })
                .collect();
            // powf can land an interior point on an exact decade; keep it there
            for v in grid[1..last].iter_mut() {
                let rounded = v.log10().round();
                if (v.log10() - rounded).abs() < 1e-12 {
                    *v = format!("1e{}", rounded as i32).parse().expect("decade literal");
                }
            }
            validate_grid("log grid", &grid)?;
            Ok(grid)
        }
    }
}

/// `count` evenly spaced points from `min` to `max` inclusive.
pub fn lin_space(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::Config(format!("grid bounds must be finite, got [{min}, {max}]")));
    }
    match count {
        0 => Err(Error::Config("grid count must be >= 1".into())),
        1 if min == max => Ok(vec![min]),
        1 => Err(Error::Config("grid with count 1 needs min == max".into())),
        _ if max <= min => Err(Error::Config(format!("grid needs min < max, got [{min}, {max}]"))),
        _ => {
            let last = (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i == count - 1 { max } else { min + (max - min) * i as f64 / last })
                .collect())
        }
    }
}
