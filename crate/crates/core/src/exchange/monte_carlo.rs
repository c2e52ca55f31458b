//! Seeded importance-sampling estimates of the pair integrals.
//!
//! `A` is estimated as the mean of `U(x₂ − x₁)` with `xₖ` drawn from `φₖ²`.
//! `J₀` uses the normalized Gaussian `g` with the shape of `φ₁φ₂` as the
//! sampling density for both coordinates and weights each draw by
//! `ρ₁₂(y₁)ρ₁₂(y₂) / (g(y₁)g(y₂))`, all evaluated pointwise.
//!
//! Samples are grouped into fixed blocks; block `b` draws from its own
//! ChaCha stream `b` under the run seed. Block statistics are merged in
//! block order, so results depend only on `(n_samples, seed)` and never on
//! the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::{ExchangeResult, InteractionKernel, Method, Orbital};
use crate::error::{Error, Result};

pub const MIN_MC_SAMPLES: u64 = 1000;
pub const MC_BLOCK_SIZE: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSpec {
    pub n_samples: u64,
    pub seed: u64,
}

impl Default for McSpec {
    fn default() -> Self {
        Self { n_samples: 1_000_000, seed: 0 }
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    #[inline]
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0.0 {
            return other;
        }
        if other.n == 0.0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * other.n / n,
            m2: self.m2 + other.m2 + delta * delta * self.n * other.n / n,
        }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2.0 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.n - 1.0) / self.n).sqrt()
    }
}

/// Normal density with the given mean and variance.
fn normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let u = x - mean;
    (-0.5 * u * u / var).exp() / (2.0 * std::f64::consts::PI * var).sqrt()
}

pub fn mc_pair_integrals(
    orb1: &Orbital,
    orb2: &Orbital,
    kernel: &InteractionKernel,
    n_samples: u64,
    seed: u64,
) -> Result<ExchangeResult> {
    if n_samples < MIN_MC_SAMPLES {
        return Err(Error::Config(format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {n_samples}"
        )));
    }

    // |φ|² is a normal density with variance σ²/2
    let sd1 = orb1.sigma() / 2f64.sqrt();
    let sd2 = orb2.sigma() / 2f64.sqrt();
    let (mid, var12, _) = orb1.overlap_shape(orb2);
    let sd12 = var12.sqrt();

    let blocks = n_samples.div_ceil(MC_BLOCK_SIZE);
    let partial: Vec<(Moments, Moments)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = MC_BLOCK_SIZE.min(n_samples - b * MC_BLOCK_SIZE);
            let (mut direct, mut exchange) = (Moments::default(), Moments::default());
            for _ in 0..len {
                let z: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
                let x1 = orb1.center() + sd1 * z[0];
                let x2 = orb2.center() + sd2 * z[1];
                direct.push(kernel.eval(x2 - x1));

                let y1 = mid + sd12 * z[2];
                let y2 = mid + sd12 * z[3];
                let weight = orb1.eval(y1) * orb2.eval(y1) * orb1.eval(y2) * orb2.eval(y2)
                    / (normal_pdf(y1, mid, var12) * normal_pdf(y2, mid, var12));
                exchange.push(weight * kernel.eval(y2 - y1));
            }
            (direct, exchange)
        })
        .collect();

    let (direct, exchange) = partial
        .into_iter()
        .fold((Moments::default(), Moments::default()), |(a, j), (pa, pj)| (a.merge(pa), j.merge(pj)));

    ExchangeResult::new(
        Method::MonteCarlo,
        direct.mean,
        exchange.mean,
        Some((direct.stderr(), exchange.stderr())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (Orbital, Orbital) {
        (Orbital::gaussian(-0.5, 1.0).unwrap(), Orbital::gaussian(0.5, 1.0).unwrap())
    }

    #[test]
    fn too_few_samples() {
        let (a, b) = pair();
        let k = InteractionKernel::gaussian_well(1.0, 1.0).unwrap();
        assert!(matches!(mc_pair_integrals(&a, &b, &k, 999, 0), Err(Error::Config(_))));
    }

    #[test]
    fn zero_kernel_is_exactly_zero() {
        let (a, b) = pair();
        let k = InteractionKernel::gaussian_well(0.0, 1.0).unwrap();
        let r = mc_pair_integrals(&a, &b, &k, 5000, 3).unwrap();
        assert_eq!((r.a, r.j0), (0.0, 0.0));
        assert_eq!((r.stderr_a, r.stderr_j0), (Some(0.0), Some(0.0)));
    }

    #[test]
    fn same_seed_same_bits() {
        let (a, b) = pair();
        let k = InteractionKernel::soft_coulomb(1.0, 1.0).unwrap();
        let r1 = mc_pair_integrals(&a, &b, &k, 40_000, 11).unwrap();
        let r2 = mc_pair_integrals(&a, &b, &k, 40_000, 11).unwrap();
        assert_eq!(r1.a.to_bits(), r2.a.to_bits());
        assert_eq!(r1.j0.to_bits(), r2.j0.to_bits());
        let r3 = mc_pair_integrals(&a, &b, &k, 40_000, 12).unwrap();
        assert_ne!(r1.a, r3.a);
    }

    #[test]
    fn independent_of_thread_count() {
        let (a, b) = pair();
        let k = InteractionKernel::gaussian_well(1.0, 0.8).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_pair_integrals(&a, &b, &k, 100_000, 5).unwrap())
        };
        let one = run(1);
        let many = run(4);
        assert_eq!(one.a.to_bits(), many.a.to_bits());
        assert_eq!(one.j0.to_bits(), many.j0.to_bits());
        assert_eq!(one.stderr_a.unwrap().to_bits(), many.stderr_a.unwrap().to_bits());
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..317].iter().for_each(|&x| a.push(x));
        xs[317..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b);
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.m2 - whole.m2).abs() < 1e-9 * whole.m2);
    }
}
