//! Classic fixed-step fourth-order Runge–Kutta for a scalar ODE `y' = f(t, y)`.

/// Advances `y` from `t` to `t + h`.
#[inline]
pub fn step<F>(f: &F, t: f64, y: f64, h: f64) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(t + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates `steps` steps of size `h` from `(t0, y0)` and returns every
/// state including the initial one. Times are `t0 + i·h`, not accumulated.
pub fn integrate<F>(f: F, t0: f64, y0: f64, h: f64, steps: usize) -> Vec<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push(y);
    for i in 0..steps {
        y = step(&f, t0 + i as f64 * h, y, h);
        out.push(y);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let ys = integrate(|_, y| -y, 0.0, 1.0, 0.01, 100);
        assert!((ys[100] - (-1.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let ys = integrate(|t, y| y * t.cos(), 0.0, 1.0, h, n);
            (ys[n] - 1f64.sin().exp()).abs()
        };
        let ratio = err(20) / err(40);
        assert!((ratio - 16.0).abs() < 1.5, "ratio {ratio}");
    }
}
