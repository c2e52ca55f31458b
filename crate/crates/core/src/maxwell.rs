//! Time-domain Maxwell liquid.
//!
//! The constitutive law is `ds/dt = P/η₀ + (1/G₀) dP/dt`. With the stress
//! prescribed, the strain follows by integrating the right-hand side. With
//! the strain prescribed, the stress obeys `dP/dt = G₀ ds/dt − P/τ`.
//!
//! Both paths use fixed-step RK4. Drives are switched on at `t = 0` from an
//! unloaded state; the jump in the driven quantity at `0⁺` produces an
//! instantaneous elastic response (`s = P/G₀` or `P = G₀s`) that is applied
//! analytically rather than resolved by the stepper. Every series therefore
//! starts at the `0⁺` state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rk4;
use crate::viscoelastic::FluidParams;

/// Largest accepted step as a fraction of `τ`.
pub const MAX_DT_OVER_TAU: f64 = 0.1;

/// Default step as a fraction of `τ`.
pub const DEFAULT_DT_OVER_TAU: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveKind {
    /// `A` switched on at `t = 0⁺`.
    Step,
    /// `A` held for the whole window.
    Constant,
    /// `A cos(ωt + φ)`.
    Sinusoid,
    /// `A·t`, i.e. a constant rate `A` per second.
    Ramp,
}

/// Prescribed stress (Pa) or strain (dimensionless) as a function of time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSignal {
    pub kind: DriveKind,
    pub amplitude: f64,
    pub omega: f64,
    pub phase: f64,
}

impl DriveSignal {
    pub fn step(amplitude: f64) -> Self {
        Self { kind: DriveKind::Step, amplitude, omega: 0.0, phase: 0.0 }
    }

    pub fn constant(amplitude: f64) -> Self {
        Self { kind: DriveKind::Constant, amplitude, omega: 0.0, phase: 0.0 }
    }

    pub fn sinusoid(amplitude: f64, omega: f64, phase: f64) -> Self {
        Self { kind: DriveKind::Sinusoid, amplitude, omega, phase }
    }

    pub fn ramp(rate: f64) -> Self {
        Self { kind: DriveKind::Ramp, amplitude: rate, omega: 0.0, phase: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.amplitude.is_finite() {
            return Err(Error::Domain(format!("drive amplitude must be finite, got {}", self.amplitude)));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(Error::Domain(format!("drive omega must be finite and >= 0, got {}", self.omega)));
        }
        if !self.phase.is_finite() {
            return Err(Error::Domain(format!("drive phase must be finite, got {}", self.phase)));
        }
        Ok(())
    }

    /// Value for `t ≥ 0⁺`.
    pub fn value(&self, t: f64) -> f64 {
        match self.kind {
            DriveKind::Step | DriveKind::Constant => self.amplitude,
            DriveKind::Sinusoid => self.amplitude * (self.omega * t + self.phase).cos(),
            DriveKind::Ramp => self.amplitude * t,
        }
    }

    /// Time derivative for `t > 0`.
    pub fn rate(&self, t: f64) -> f64 {
        match self.kind {
            DriveKind::Step | DriveKind::Constant => 0.0,
            DriveKind::Sinusoid => -self.amplitude * self.omega * (self.omega * t + self.phase).sin(),
            DriveKind::Ramp => self.amplitude,
        }
    }
}

/// Uniformly sampled stress/strain history.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries {
    pub t: Vec<f64>,
    pub stress: Vec<f64>,
    pub strain: Vec<f64>,
    pub strain_rate: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn dt(&self) -> Option<f64> {
        (self.t.len() >= 2).then(|| self.t[1] - self.t[0])
    }

    /// Largest residual of `ds/dt − P/η₀ − (1/G₀) dP/dt` over interior
    /// samples, with both derivatives taken as central differences of the
    /// stored strain and stress, divided by the largest `|ds/dt|` or `|P|/η₀`
    /// in the series. Returns 0 for series too short to difference or with
    /// nothing to scale by.
    pub fn max_relative_residual(&self, params: &FluidParams) -> f64 {
        let Some(dt) = self.dt() else { return 0.0 };
        if self.len() < 3 {
            return 0.0;
        }
        let scale = self
            .strain_rate
            .iter()
            .map(|r| r.abs())
            .chain(self.stress.iter().map(|p| p.abs() / params.eta0()))
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        (1..self.len() - 1)
            .map(|i| {
                let ds = (self.strain[i + 1] - self.strain[i - 1]) / (2.0 * dt);
                let dp = (self.stress[i + 1] - self.stress[i - 1]) / (2.0 * dt);
                (ds - self.stress[i] / params.eta0() - dp / params.g0()).abs()
            })
            .fold(0.0, f64::max)
            / scale
    }

    fn check_finite(&self) -> Result<()> {
        let columns = [&self.stress, &self.strain, &self.strain_rate];
        match columns.iter().flat_map(|c| c.iter()).find(|v| !v.is_finite()) {
            Some(v) => Err(Error::Numerical(format!("non-finite value {v} in Maxwell integration"))),
            None => Ok(()),
        }
    }
}

fn step_count(params: &FluidParams, dt: f64, horizon: f64) -> Result<usize> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Config(format!("dt must be finite and > 0, got {dt}")));
    }
    let tau = params.tau();
    if dt > MAX_DT_OVER_TAU * tau {
        return Err(Error::Config(format!(
            "dt = {dt} exceeds tau/10 = {}; refine the step",
            MAX_DT_OVER_TAU * tau
        )));
    }
    if !(horizon.is_finite() && horizon >= dt) {
        return Err(Error::Config(format!("horizon must be finite and >= dt, got {horizon}")));
    }
    let steps = (horizon / dt * (1.0 - 1e-12)).ceil();
    if steps > 5e8 {
        return Err(Error::Config(format!("horizon/dt = {steps} steps is too many")));
    }
    Ok(steps as usize)
}

fn times(dt: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| i as f64 * dt).collect()
}

/// Strain response to a prescribed stress history.
pub fn integrate_stress_driven(
    drive: &DriveSignal,
    params: &FluidParams,
    dt: f64,
    horizon: f64,
) -> Result<TimeSeries> {
    drive.validate()?;
    let steps = step_count(params, dt, horizon)?;
    let (eta0, g0) = (params.eta0(), params.g0());
    let rhs = |t: f64, _s: f64| drive.value(t) / eta0 + drive.rate(t) / g0;

    let t = times(dt, steps);
    let strain = rk4::integrate(rhs, 0.0, drive.value(0.0) / g0, dt, steps);
    let stress = t.iter().map(|&ti| drive.value(ti)).collect();
    let strain_rate = t.iter().map(|&ti| rhs(ti, 0.0)).collect();
    let series = TimeSeries { t, stress, strain, strain_rate };
    series.check_finite()?;
    Ok(series)
}

/// Stress response to a prescribed strain history.
pub fn integrate_strain_driven(
    drive: &DriveSignal,
    params: &FluidParams,
    dt: f64,
    horizon: f64,
) -> Result<TimeSeries> {
    drive.validate()?;
    let steps = step_count(params, dt, horizon)?;
    let (g0, tau) = (params.g0(), params.tau());
    let rhs = |t: f64, p: f64| g0 * drive.rate(t) - p / tau;

    let t = times(dt, steps);
    let stress = rk4::integrate(rhs, 0.0, g0 * drive.value(0.0), dt, steps);
    let strain = t.iter().map(|&ti| drive.value(ti)).collect();
    let strain_rate = t.iter().map(|&ti| drive.rate(ti)).collect();
    let series = TimeSeries { t, stress, strain, strain_rate };
    series.check_finite()?;
    Ok(series)
}

/// Stress response to a recorded strain history, e.g. the output of
/// [`integrate_stress_driven`].
///
/// The RK4 stages need the strain rate at half steps, so the integration
/// step is twice the recording interval and the returned series holds every
/// other input sample. The history must start from the `0⁺` state of an
/// unloaded sample.
pub fn integrate_recorded_strain(history: &TimeSeries, params: &FluidParams) -> Result<TimeSeries> {
    let dt = history
        .dt()
        .ok_or_else(|| Error::Config("recorded strain history needs at least 3 samples".into()))?;
    if history.len() < 3 {
        return Err(Error::Config("recorded strain history needs at least 3 samples".into()));
    }
    if history.strain.len() != history.len() || history.strain_rate.len() != history.len() {
        return Err(Error::Config("recorded strain history has ragged columns".into()));
    }
    let h = 2.0 * dt;
    let steps = step_count(params, h, (history.len() - 1) as f64 * dt)?;
    let steps = steps.min((history.len() - 1) / 2);
    let (g0, tau) = (params.g0(), params.tau());
    let t0 = history.t[0];
    let rates = &history.strain_rate;
    let rhs = |t: f64, p: f64| {
        let idx = ((t - t0) / dt).round() as usize;
        g0 * rates[idx] - p / tau
    };

    let stress = rk4::integrate(rhs, t0, g0 * history.strain[0], h, steps);
    let pick = |col: &[f64]| (0..=steps).map(|k| col[2 * k]).collect::<Vec<_>>();
    let series = TimeSeries {
        t: pick(&history.t),
        stress,
        strain: pick(&history.strain),
        strain_rate: pick(&history.strain_rate),
    };
    series.check_finite()?;
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> FluidParams {
        FluidParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn strain_step_relaxes_exponentially() {
        let p = FluidParams::new(2.0, 4.0).unwrap();
        let tau = p.tau();
        let s0 = 1e-3;
        let ts = integrate_strain_driven(&DriveSignal::step(s0), &p, tau / 1000.0, 5.0 * tau).unwrap();
        assert_eq!(ts.len(), 5001);
        let worst = ts
            .t
            .iter()
            .zip(&ts.stress)
            .map(|(t, s)| {
                let exact = p.g0() * s0 * (-t / tau).exp();
                ((s - exact) / exact).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "worst relative error {worst}");
    }

    #[test]
    fn creep_under_constant_stress() {
        let p = FluidParams::new(3.0, 1.5).unwrap();
        let tau = p.tau();
        let p0 = 2.0;
        let ts = integrate_stress_driven(&DriveSignal::constant(p0), &p, tau / 1000.0, 5.0 * tau).unwrap();
        assert_eq!(ts.strain[0], p0 / p.g0());
        for (t, s) in ts.t.iter().zip(&ts.strain) {
            let exact = p0 / p.g0() + p0 * t / p.eta0();
            assert!((s - exact).abs() <= 1e-12 * exact.abs());
        }
    }

    #[test]
    fn zero_drives_stay_at_rest() {
        let p = unit();
        let ts = integrate_stress_driven(&DriveSignal::step(0.0), &p, 1e-3, 1.0).unwrap();
        assert!(ts.strain.iter().all(|&s| s == 0.0));
        let ts = integrate_strain_driven(&DriveSignal::step(0.0), &p, 1e-3, 1.0).unwrap();
        assert!(ts.stress.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn sinusoidal_stress_rate_amplitude() {
        // |1 + iωτ|·A/η₀ at ωτ = 1
        let p = FluidParams::new(2.0, 2.0).unwrap();
        let a = 3.0;
        let omega = 1.0 / p.tau();
        let period = 2.0 * std::f64::consts::PI / omega;
        let dt = p.tau() / 1000.0;
        let ts = integrate_stress_driven(&DriveSignal::sinusoid(a, omega, 0.0), &p, dt, 4.0 * period).unwrap();
        let tail = ts.t.iter().position(|&t| t >= 3.0 * period).unwrap();
        let amp = ts.strain_rate[tail..].iter().map(|r| r.abs()).fold(0.0, f64::max);
        let expected = a / p.eta0() * 2f64.sqrt();
        assert!((amp - expected).abs() / expected < 1e-6, "{amp} vs {expected}");
    }

    #[test]
    fn constant_strain_rate_reaches_viscous_stress() {
        let p = FluidParams::new(5.0, 1.0).unwrap();
        let rate = 0.2;
        let ts = integrate_strain_driven(&DriveSignal::ramp(rate), &p, p.tau() / 1000.0, 20.0 * p.tau()).unwrap();
        let last = *ts.stress.last().unwrap();
        let target = p.eta0() * rate;
        assert!((last - target).abs() / target < 1e-8);
        // analytic: η₀ṡ(1 − e^{−t/τ})
        for (t, s) in ts.t.iter().zip(&ts.stress).step_by(97) {
            let exact = target * (1.0 - (-t / p.tau()).exp());
            assert!((s - exact).abs() <= 1e-9 * target);
        }
    }

    #[test]
    fn residual_is_small() {
        let p = unit();
        let drives = [
            DriveSignal::step(1.0),
            DriveSignal::sinusoid(1.0, 3.0, 0.4),
            DriveSignal::ramp(0.5),
        ];
        for d in drives {
            let a = integrate_stress_driven(&d, &p, 1e-3, 5.0).unwrap();
            let b = integrate_strain_driven(&d, &p, 1e-3, 5.0).unwrap();
            assert!(a.max_relative_residual(&p) < 1e-5, "{d:?}");
            assert!(b.max_relative_residual(&p) < 1e-5, "{d:?}");
        }
    }

    #[test]
    fn stress_and_strain_paths_agree() {
        let p = FluidParams::new(1.0, 2.0).unwrap();
        let drive = DriveSignal::sinusoid(1.5, 2.0 / p.tau(), 0.3);
        let dt = p.tau() / 1000.0;
        let forward = integrate_stress_driven(&drive, &p, dt / 2.0, 5.0 * p.tau()).unwrap();
        let back = integrate_recorded_strain(&forward, &p).unwrap();
        let scale = drive.amplitude;
        for (k, s) in back.stress.iter().enumerate() {
            assert!((s - forward.stress[2 * k]).abs() <= 1e-4 * scale);
        }
    }

    #[test]
    fn rejects_coarse_steps() {
        let p = unit();
        let err = integrate_strain_driven(&DriveSignal::step(1.0), &p, 0.2, 5.0).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(integrate_strain_driven(&DriveSignal::step(1.0), &p, 0.1, 5.0).is_ok());
        assert!(integrate_stress_driven(&DriveSignal::step(1.0), &p, 0.0, 5.0).is_err());
        assert!(integrate_stress_driven(&DriveSignal::step(1.0), &p, 0.01, 0.001).is_err());
    }

    #[test]
    fn rejects_bad_drive() {
        let p = unit();
        let d = DriveSignal::sinusoid(f64::NAN, 1.0, 0.0);
        assert!(matches!(integrate_stress_driven(&d, &p, 1e-3, 1.0), Err(Error::Domain(_))));
        let d = DriveSignal::sinusoid(1.0, -1.0, 0.0);
        assert!(matches!(integrate_stress_driven(&d, &p, 1e-3, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn step_count_covers_horizon() {
        let p = unit();
        let ts = integrate_strain_driven(&DriveSignal::step(1.0), &p, 0.01, 1.0).unwrap();
        assert_eq!(ts.len(), 101);
        assert!((ts.t[100] - 1.0).abs() < 1e-12);
        let ts = integrate_strain_driven(&DriveSignal::step(1.0), &p, 0.03, 1.0).unwrap();
        assert!(*ts.t.last().unwrap() >= 1.0);
    }
}
