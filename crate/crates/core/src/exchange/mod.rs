//! Direct and exchange integrals for two particles in one dimension.
//!
//! For real orbitals `φ₁`, `φ₂` and a pair interaction `U(x₂ − x₁)`:
//!
//! ```text
//! A  = ∫∫ U(x₂ − x₁) φ₁(x₁)² φ₂(x₂)² dx₁ dx₂
//! J₀ = ∫∫ U(x₂ − x₁) ρ₁₂(x₁) ρ₁₂(x₂) dx₁ dx₂,    ρ₁₂ = φ₁φ₂
//! ```
//!
//! The pair energies are `A ± J` for the symmetric (spin 0) and
//! antisymmetric (spin 1) spatial wavefunctions, where `J = J₀F` is the
//! exchange integral scaled by the viscoelastic factor of the liquid at the
//! frequency of observation.

mod monte_carlo;
mod quadrature;

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::viscoelastic::response_factor;

pub use monte_carlo::{mc_pair_integrals, McSpec, MC_BLOCK_SIZE, MIN_MC_SAMPLES};
pub use quadrature::{
    direct_integral, exchange_integral, norm_on_grid, quadrature_pair_integrals, QuadratureSpec,
    MIN_NODES,
};

/// Normalized real Gaussian orbital
/// `φ(x) = (πσ²)^{-1/4} exp(−(x − x₀)²/(2σ²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbital {
    center: f64,
    sigma: f64,
}

impl Orbital {
    pub fn gaussian(center: f64, sigma: f64) -> Result<Self> {
        ensure_finite("orbital center", center)?;
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain(format!("orbital sigma must be finite and > 0, got {sigma}")));
        }
        Ok(Self { center, sigma })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Amplitude in m^{-1/2}.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.sigma;
        (std::f64::consts::PI * self.sigma * self.sigma).powf(-0.25) * (-0.5 * u * u).exp()
    }

    /// Mean, variance and total weight of the product `φ₁φ₂`, which for two
    /// Gaussians is again a Gaussian.
    pub(crate) fn overlap_shape(&self, other: &Orbital) -> (f64, f64, f64) {
        let (s1, s2) = (self.sigma * self.sigma, other.sigma * other.sigma);
        let sum = s1 + s2;
        let mean = (self.center * s2 + other.center * s1) / sum;
        let var = s1 * s2 / sum;
        let d = self.center - other.center;
        let weight = (2.0 * self.sigma * other.sigma / sum).sqrt() * (-d * d / (2.0 * sum)).exp();
        (mean, var, weight)
    }
}

pub fn eval_orbital(orb: &Orbital, x: f64) -> f64 {
    orb.eval(x)
}

/// Pair interaction depending only on the separation `r = x₂ − x₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InteractionKernel {
    /// `U₀ exp(−r²/(2w²))`
    GaussianWell { strength: f64, range: f64 },
    /// `U₀ / √(r² + a²)`
    SoftCoulomb { strength: f64, softening: f64 },
}

impl InteractionKernel {
    pub fn gaussian_well(strength: f64, range: f64) -> Result<Self> {
        ensure_finite("kernel strength U0", strength)?;
        if !(range.is_finite() && range > 0.0) {
            return Err(Error::Domain(format!("kernel range w must be finite and > 0, got {range}")));
        }
        Ok(Self::GaussianWell { strength, range })
    }

    pub fn soft_coulomb(strength: f64, softening: f64) -> Result<Self> {
        ensure_finite("kernel strength U0", strength)?;
        if !(softening.is_finite() && softening > 0.0) {
            return Err(Error::Domain(format!(
                "kernel softening a must be finite and > 0, got {softening}"
            )));
        }
        Ok(Self::SoftCoulomb { strength, softening })
    }

    pub fn strength(&self) -> f64 {
        match *self {
            Self::GaussianWell { strength, .. } | Self::SoftCoulomb { strength, .. } => strength,
        }
    }

    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Self::GaussianWell { strength, range } => {
                let u = r / range;
                strength * (-0.5 * u * u).exp()
            }
            Self::SoftCoulomb { strength, softening } => strength / r.hypot(softening),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// Integrals and pair energies, in the energy unit of the kernel strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExchangeResult {
    pub method: Method,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "J0")]
    pub j0: f64,
    #[serde(rename = "J_modulated")]
    pub j_modulated: f64,
    #[serde(rename = "E_sym")]
    pub e_sym: f64,
    #[serde(rename = "E_anti")]
    pub e_anti: f64,
    #[serde(rename = "stderr_A")]
    pub stderr_a: Option<f64>,
    #[serde(rename = "stderr_J0")]
    pub stderr_j0: Option<f64>,
}

impl ExchangeResult {
    /// Unmodulated result (`ωτ = 0`, so `J = J₀`).
    pub(crate) fn new(method: Method, a: f64, j0: f64, stderr: Option<(f64, f64)>) -> Result<Self> {
        for (name, v) in [("A", a), ("J0", j0)] {
            if !v.is_finite() {
                return Err(Error::Numerical(format!("{name} evaluated to {v}")));
            }
        }
        let (e_sym, e_anti) = pair_energies(a, j0)?;
        Ok(Self {
            method,
            a,
            j0,
            j_modulated: j0,
            e_sym,
            e_anti,
            stderr_a: stderr.map(|s| s.0),
            stderr_j0: stderr.map(|s| s.1),
        })
    }

    /// Same integrals observed at `ωτ`: `J = J₀F(ωτ)`, `A` unchanged.
    pub fn modulated(&self, omega_tau: f64) -> Result<Self> {
        let j = modulated_exchange(self.j0, omega_tau)?;
        let (e_sym, e_anti) = pair_energies(self.a, j)?;
        Ok(Self { j_modulated: j, e_sym, e_anti, ..*self })
    }

    /// `E_sym − E_anti`.
    pub fn splitting(&self) -> f64 {
        self.e_sym - self.e_anti
    }
}

/// Exchange integral seen by an observation at `ωτ`: `J = J₀/(1 + ω²τ²)`.
pub fn modulated_exchange(j0: f64, omega_tau: f64) -> Result<f64> {
    ensure_finite("J0", j0)?;
    Ok(j0 * response_factor(omega_tau)?)
}

/// Symmetric and antisymmetric pair energies `(A + J, A − J)`.
pub fn pair_energies(a: f64, j: f64) -> Result<(f64, f64)> {
    ensure_finite("A", a)?;
    ensure_finite("J", j)?;
    Ok((a + j, a - j))
}
