//! Reference values computed without the library's quadrature or sampling.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Density of N(mean, var) at x.
pub fn normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    (-(x - mean).powi(2) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

/// Gaussian orbitals (center, sigma) and a Gaussian kernel U0·exp(−r²/(2w²)).
///
/// |φᵢ|² is N(cᵢ, σᵢ²/2), so x₂ − x₁ ~ N(c₂ − c₁, (σ₁² + σ₂²)/2) and
/// A = U0·E[exp(−D²/(2w²))] = U0·w/√(w² + s²)·exp(−μ²/(2(w² + s²))).
pub fn direct_gaussian(o1: (f64, f64), o2: (f64, f64), u0: f64, w: f64) -> f64 {
    let mu = o2.0 - o1.0;
    let s2 = (o1.1 * o1.1 + o2.1 * o2.1) / 2.0;
    u0 * w / (w * w + s2).sqrt() * (-mu * mu / (2.0 * (w * w + s2))).exp()
}

/// φ₁φ₂ = S·N(m, v) with v = σ₁²σ₂²/(σ₁² + σ₂²) and
/// S = √(2σ₁σ₂/(σ₁² + σ₂²))·exp(−d²/(2(σ₁² + σ₂²))).
pub fn overlap_gaussian(o1: (f64, f64), o2: (f64, f64)) -> (f64, f64) {
    let (a, b) = (o1.1 * o1.1, o2.1 * o2.1);
    let d = o1.0 - o2.0;
    let s = (2.0 * o1.1 * o2.1 / (a + b)).sqrt() * (-d * d / (2.0 * (a + b))).exp();
    (s, a * b / (a + b))
}

/// J₀ = S²·U0·E[exp(−D²/(2w²))], D ~ N(0, 2v).
pub fn exchange_gaussian(o1: (f64, f64), o2: (f64, f64), u0: f64, w: f64) -> f64 {
    let (s, v) = overlap_gaussian(o1, o2);
    s * s * u0 * w / (w * w + 2.0 * v).sqrt()
}

/// Composite Simpson on [a, b] with n (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    sum * h / 3.0
}

/// A for an arbitrary kernel via the one-dimensional distribution of x₂ − x₁.
pub fn direct_by_convolution(o1: (f64, f64), o2: (f64, f64), kernel: impl Fn(f64) -> f64) -> f64 {
    let mu = o2.0 - o1.0;
    let s2 = (o1.1 * o1.1 + o2.1 * o2.1) / 2.0;
    let half = 14.0 * s2.sqrt();
    simpson(|r| kernel(r) * normal_pdf(r, mu, s2), mu - half, mu + half, 20_000)
}

/// J₀ for an arbitrary kernel via the same reduction.
pub fn exchange_by_convolution(o1: (f64, f64), o2: (f64, f64), kernel: impl Fn(f64) -> f64) -> f64 {
    let (s, v) = overlap_gaussian(o1, o2);
    let half = 14.0 * (2.0 * v).sqrt();
    s * s * simpson(|r| kernel(r) * normal_pdf(r, 0.0, 2.0 * v), -half, half, 20_000)
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}
