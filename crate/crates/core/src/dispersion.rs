//! Transverse waves in a Maxwell liquid.
//!
//! Replacing the viscosity in the shear Navier–Stokes equation by the
//! generalized `1/η = (1 + τ d/dt)/η₀` gives the telegrapher form
//!
//! ```text
//! ∂²v/∂t² + (1/τ) ∂v/∂t = c² ∂²v/∂x²,    c² = G₀/ρ
//! ```
//!
//! and, for `v ∝ e^{i(kx − ωt)}`, the dispersion relation
//! `ω² + iω/τ − c²k² = 0`. Its roots are
//! `ω = −i/(2τ) ± √(c²k² − 1/(4τ²))`: propagating modes exist only above the
//! gap `k_g = 1/(2cτ)`, and below it both roots are purely imaginary.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::viscoelastic::{validate_grid, FluidParams};

/// Wavevector with both complex frequency roots (`e^{−iωt}` convention,
/// decaying modes have negative imaginary part).
///
/// `omega_plus` is the root with nonnegative real part. Below the gap it is
/// the slower-decaying root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub k: f64,
    pub omega_plus: Complex64,
    pub omega_minus: Complex64,
}

fn density(params: &FluidParams) -> Result<f64> {
    params
        .rho()
        .ok_or_else(|| Error::Config("mass density rho is required for shear-wave dispersion".into()))
}

/// Transverse sound speed `c = √(G₀/ρ)` in m/s.
pub fn shear_wave_speed(params: &FluidParams) -> Result<f64> {
    Ok((params.g0() / density(params)?).sqrt())
}

/// Wavevector gap `k_g = 1/(2cτ)` in 1/m.
pub fn k_gap(params: &FluidParams) -> Result<f64> {
    Ok(1.0 / (2.0 * shear_wave_speed(params)? * params.tau()))
}

/// Both roots of `ω² + iω/τ − c²k² = 0` at wavevector `k`.
pub fn dispersion_point(k: f64, params: &FluidParams) -> Result<DispersionPoint> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::Domain(format!("k must be finite and >= 0, got {k}")));
    }
    let c = shear_wave_speed(params)?;
    let tau = params.tau();
    let half_rate = 0.5 / tau;
    let ck = c * k;

    let point = if k <= k_gap(params)? {
        // ω = −i(half_rate ∓ √(half_rate² − c²k²)); the smaller magnitude
        // root comes from Vieta (ω₊ω₋ = −c²k²) to avoid cancellation
        let root = ((half_rate - ck) * (half_rate + ck)).max(0.0).sqrt();
        let fast = half_rate + root;
        let slow = ck * ck / fast;
        DispersionPoint {
            k,
            omega_plus: Complex64::new(0.0, -slow),
            omega_minus: Complex64::new(0.0, -fast),
        }
    } else {
        let re = ((ck - half_rate) * (ck + half_rate)).sqrt();
        DispersionPoint {
            k,
            omega_plus: Complex64::new(re, -half_rate),
            omega_minus: Complex64::new(-re, -half_rate),
        }
    };
    let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
    if !(finite(point.omega_plus) && finite(point.omega_minus)) {
        return Err(Error::Numerical(format!("non-finite dispersion root at k = {k}")));
    }
    Ok(point)
}

/// Dispersion over an increasing grid of wavevectors.
pub fn dispersion_sweep(k_grid: &[f64], params: &FluidParams) -> Result<Vec<DispersionPoint>> {
    validate_grid("k grid", k_grid)?;
    density(params)?;
    k_grid.iter().map(|&k| dispersion_point(k, params)).collect()
}

/// `|ω² + iω/τ − c²k²|` for a candidate root.
pub fn root_residual(omega: Complex64, k: f64, params: &FluidParams) -> Result<f64> {
    let c = shear_wave_speed(params)?;
    let i = Complex64::i();
    Ok((omega * omega + i * omega / params.tau() - c * c * k * k).norm())
}
