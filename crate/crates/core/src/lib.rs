//! Maxwell–Frenkel viscoelastic response and its consequences for particle
//! exchange in quantum fluids.
//!
//! The crate is organised bottom-up:
//!
//! - [`viscoelastic`]: fluid parameters, the viscoelastic factor
//!   `F = 1/(1+ω²τ²)`, the complex shear modulus and the generalized
//!   inverse viscosity.
//! - [`maxwell`]: time-domain integration of `ds/dt = P/η₀ + (1/G₀) dP/dt`
//!   for prescribed stress or prescribed strain.
//! - [`dispersion`]: complex roots of the transverse wave equation in a
//!   viscoelastic liquid, including the wavevector gap.
//! - [`exchange`]: direct and exchange integrals for two real orbitals,
//!   by Gauss–Legendre quadrature and by seeded Monte Carlo, with the
//!   frequency-modulated exchange `J = J₀F`.
//! - [`transition`]: classification into statistics-active and
//!   statistics-inactive regimes and sweeps across the crossover.
//! - [`cli`]: the `viscoex` command-line front end.
//!
//! All units are SI.

pub mod cli;
pub mod dispersion;
mod error;
pub mod exchange;
pub mod maxwell;
pub mod rk4;
pub mod transition;
pub mod viscoelastic;

pub use error::{Error, Result};
pub use viscoelastic::FluidParams;
