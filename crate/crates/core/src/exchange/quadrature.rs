//! Tensor-product Gauss–Legendre evaluation of the pair integrals.

use gauss_quad::GaussLegendre;
use rayon::prelude::*;

use super::{ExchangeResult, InteractionKernel, Method, Orbital};
use crate::error::{Error, Result};

pub const MIN_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per axis.
    pub nodes: usize,
    /// Half-width of the domain beyond the outermost center, in units of the
    /// widest orbital's `σ`.
    pub padding_sigmas: f64,
    /// Largest accepted `|∫φ² − 1|` on the grid, per orbital.
    pub norm_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes: 200, padding_sigmas: 10.0, norm_tolerance: 1e-10 }
    }
}

impl QuadratureSpec {
    pub fn with_nodes(nodes: usize) -> Self {
        Self { nodes, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < MIN_NODES {
            return Err(Error::Config(format!(
                "quadrature needs at least {MIN_NODES} nodes per axis, got {}",
                self.nodes
            )));
        }
        if !(self.padding_sigmas.is_finite() && self.padding_sigmas > 0.0) {
            return Err(Error::Config(format!(
                "quadrature padding must be finite and > 0, got {}",
                self.padding_sigmas
            )));
        }
        if !(self.norm_tolerance.is_finite() && self.norm_tolerance > 0.0) {
            return Err(Error::Config(format!(
                "normalization tolerance must be finite and > 0, got {}",
                self.norm_tolerance
            )));
        }
        Ok(())
    }
}

/// Nodes and weights mapped onto `[−L, L]`, `L = max|center| + padding·max σ`.
struct Grid {
    x: Vec<f64>,
    w: Vec<f64>,
}

impl Grid {
    fn new(orbitals: [&Orbital; 2], spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let reach = orbitals.iter().map(|o| o.center().abs()).fold(0.0, f64::max);
        let width = orbitals.iter().map(|o| o.sigma()).fold(0.0, f64::max);
        let half = reach + spec.padding_sigmas * width;
        let rule = GaussLegendre::new(spec.nodes)
            .map_err(|e| Error::Config(format!("Gauss-Legendre rule: {e}")))?;
        let (x, w) = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(node, weight)| (half * node, half * weight))
            .unzip();
        Ok(Self { x, w })
    }

    fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.x.iter().map(|&x| f(x)).collect()
    }

    /// `Σᵢ Σⱼ wᵢ wⱼ U(xⱼ − xᵢ) f(xᵢ) g(xⱼ)`; rows are summed in parallel and
    /// reduced in index order.
    fn pair_sum(&self, kernel: &InteractionKernel, f: &[f64], g: &[f64]) -> f64 {
        let wg: Vec<f64> = self.w.iter().zip(g).map(|(w, g)| w * g).collect();
        let rows: Vec<f64> = (0..self.x.len())
            .into_par_iter()
            .map(|i| {
                let xi = self.x[i];
                let inner: f64 = self.x.iter().zip(&wg).map(|(&xj, &wgj)| kernel.eval(xj - xi) * wgj).sum();
                self.w[i] * f[i] * inner
            })
            .collect();
        rows.iter().sum()
    }

    fn check_normalized(&self, orb: &Orbital, tol: f64) -> Result<()> {
        let norm = self.norm(orb);
        if (norm - 1.0).abs() > tol {
            return Err(Error::Domain(format!(
                "orbital (center {}, sigma {}) is not normalized on the quadrature grid: \
                 integral of phi^2 = {norm}; increase nodes or padding",
                orb.center(),
                orb.sigma()
            )));
        }
        Ok(())
    }

    fn norm(&self, orb: &Orbital) -> f64 {
        self.x.iter().zip(&self.w).map(|(&x, &w)| w * orb.eval(x) * orb.eval(x)).sum()
    }
}

/// `∫φ²` evaluated on the quadrature grid built for `orb` alone.
pub fn norm_on_grid(orb: &Orbital, spec: &QuadratureSpec) -> Result<f64> {
    Ok(Grid::new([orb, orb], spec)?.norm(orb))
}

fn prepared(orb1: &Orbital, orb2: &Orbital, spec: &QuadratureSpec) -> Result<Grid> {
    let grid = Grid::new([orb1, orb2], spec)?;
    grid.check_normalized(orb1, spec.norm_tolerance)?;
    grid.check_normalized(orb2, spec.norm_tolerance)?;
    Ok(grid)
}

fn direct_on(grid: &Grid, orb1: &Orbital, orb2: &Orbital, kernel: &InteractionKernel) -> f64 {
    let rho1 = grid.sample(|x| orb1.eval(x) * orb1.eval(x));
    let rho2 = grid.sample(|x| orb2.eval(x) * orb2.eval(x));
    grid.pair_sum(kernel, &rho1, &rho2)
}

fn exchange_on(grid: &Grid, orb1: &Orbital, orb2: &Orbital, kernel: &InteractionKernel) -> f64 {
    let rho12 = grid.sample(|x| orb1.eval(x) * orb2.eval(x));
    grid.pair_sum(kernel, &rho12, &rho12)
}

/// Direct integral `A`.
pub fn direct_integral(
    orb1: &Orbital,
    orb2: &Orbital,
    kernel: &InteractionKernel,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let grid = prepared(orb1, orb2, spec)?;
    Ok(direct_on(&grid, orb1, orb2, kernel))
}

/// Exchange integral `J₀`.
pub fn exchange_integral(
    orb1: &Orbital,
    orb2: &Orbital,
    kernel: &InteractionKernel,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let grid = prepared(orb1, orb2, spec)?;
    Ok(exchange_on(&grid, orb1, orb2, kernel))
}

/// Both integrals on one grid, unmodulated.
pub fn quadrature_pair_integrals(
    orb1: &Orbital,
    orb2: &Orbital,
    kernel: &InteractionKernel,
    spec: &QuadratureSpec,
) -> Result<ExchangeResult> {
    let grid = prepared(orb1, orb2, spec)?;
    let a = direct_on(&grid, orb1, orb2, kernel);
    let j0 = exchange_on(&grid, orb1, orb2, kernel);
    ExchangeResult::new(Method::Quadrature, a, j0, None)
}
