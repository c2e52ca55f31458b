use proptest::prelude::*;
use viscoex::dispersion::{dispersion_point, k_gap, root_residual, shear_wave_speed};
use viscoex::exchange::{exchange_integral, modulated_exchange, pair_energies, InteractionKernel, Orbital, QuadratureSpec};
use viscoex::maxwell::{integrate_recorded_strain, integrate_stress_driven, DriveSignal};
use viscoex::transition::{classify_regime, measurement_window, RegimeClass, RegimeThresholds};
use viscoex::viscoelastic::{complex_shear_modulus, response_at, response_factor, FluidParams};

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn factor_bounds_and_monotonicity(x in 0.0..1e12f64, dx in 0.0..1e6f64) {
        let f = response_factor(x).unwrap();
        prop_assert!(f > 0.0 && f <= 1.0);
        prop_assert!(response_factor(x + dx).unwrap() <= f);
    }

    #[test]
    fn storage_identity(x in log_uniform(1e-9, 1e9), g0 in log_uniform(1e-3, 1e12), tau in log_uniform(1e-13, 1e4)) {
        let p = FluidParams::from_tau(tau, g0).unwrap();
        let s = response_at(x, &p).unwrap();
        prop_assert!(((s.g_real + p.g0() * s.f) - p.g0()).abs() <= 1e-12 * p.g0());
        prop_assert!(s.g_real.hypot(s.g_imag) <= p.g0() * (1.0 + 1e-15));
    }

    #[test]
    fn loss_to_storage_ratio(x in log_uniform(1e-6, 1e6)) {
        let p = FluidParams::new(2.0, 3.0).unwrap();
        let (re, im) = complex_shear_modulus(x / p.tau(), &p).unwrap();
        let x_used = p.omega_tau(x / p.tau());
        prop_assert!((im / re * x_used - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn scale_covariance(eta0 in log_uniform(1e-4, 1e4), g0 in log_uniform(1e-2, 1e10), lambda in log_uniform(1e-6, 1e6), x in log_uniform(1e-4, 1e4)) {
        let a = FluidParams::new(eta0, g0).unwrap();
        let b = FluidParams::new(lambda * eta0, lambda * g0).unwrap();
        prop_assert!((a.tau() - b.tau()).abs() <= 4.0 * f64::EPSILON * a.tau());
        let (sa, sb) = (response_at(x, &a).unwrap(), response_at(x, &b).unwrap());
        prop_assert_eq!(sa.f, sb.f);
        prop_assert!((sa.g_real / a.g0() - sb.g_real / b.g0()).abs() <= 1e-15);
    }

    #[test]
    fn dispersion_roots_satisfy_the_quadratic(g0 in log_uniform(0.1, 10.0), rho in log_uniform(0.1, 10.0), tau in log_uniform(0.1, 10.0), k_rel in 0.0..20.0f64) {
        let p = FluidParams::from_tau(tau, g0).unwrap().with_density(rho).unwrap();
        let c = shear_wave_speed(&p).unwrap();
        let k = k_rel * k_gap(&p).unwrap();
        let pt = dispersion_point(k, &p).unwrap();
        let scale = 1f64.max(c * c * k * k);
        prop_assert!(root_residual(pt.omega_plus, k, &p).unwrap() <= 1e-10 * scale);
        prop_assert!(root_residual(pt.omega_minus, k, &p).unwrap() <= 1e-10 * scale);
        let sum = pt.omega_plus + pt.omega_minus;
        prop_assert!(sum.re.abs() <= 1e-12 * scale && (sum.im + 1.0 / tau).abs() <= 1e-12 * scale);
        let prod = pt.omega_plus * pt.omega_minus;
        prop_assert!((prod.re + c * c * k * k).abs() <= 1e-12 * scale && prod.im.abs() <= 1e-12 * scale);
        if k_rel <= 1.0 {
            prop_assert_eq!(pt.omega_plus.re, 0.0);
            prop_assert!(pt.omega_plus.im <= 0.0 && pt.omega_minus.im < 0.0);
        } else {
            prop_assert!(pt.omega_plus.re > 0.0);
            prop_assert!((pt.omega_plus.im + 0.5 / tau).abs() <= 1e-15 / tau);
        }
    }

    #[test]
    fn modulation_bounds(j0 in 0.0..10.0f64, x in 0.0..1e6f64, dx in 0.0..100.0f64) {
        let j = modulated_exchange(j0, x).unwrap();
        prop_assert!(j >= 0.0 && j <= j0);
        prop_assert!(modulated_exchange(j0, x + dx).unwrap() <= j);
    }

    #[test]
    fn pair_energy_midpoint_is_direct(a in -1e3..1e3f64, j in -1e3..1e3f64) {
        let (s, t) = pair_energies(a, j).unwrap();
        prop_assert!(((s + t) / 2.0 - a).abs() <= 2.0 * f64::EPSILON * a.abs().max(j.abs()));
        prop_assert!(((s - t) - 2.0 * j).abs() <= 4.0 * f64::EPSILON * a.abs().max(j.abs()));
    }

    #[test]
    fn classification_agrees_with_factor(x in log_uniform(1e-6, 1e6)) {
        let th = RegimeThresholds::default();
        let f = response_factor(x).unwrap();
        match classify_regime(x, &th).unwrap() {
            RegimeClass::StatisticsActive => prop_assert!(f > 1.0 / (1.0 + 0.1f64.powi(2))),
            RegimeClass::StatisticsInactive => prop_assert!(f < 1.0 / (1.0 + 10f64.powi(2))),
            RegimeClass::Crossover => {}
        }
    }

    #[test]
    fn window_is_classify_of_ratio(t_obs in log_uniform(1e-15, 1e6), tau in log_uniform(1e-15, 1e6)) {
        let th = RegimeThresholds::default();
        prop_assert_eq!(measurement_window(t_obs, tau, &th).unwrap(), classify_regime(tau / t_obs, &th).unwrap());
    }

    #[test]
    fn classification_is_monotone(mut grid in proptest::collection::vec(log_uniform(1e-4, 1e4), 2..60)) {
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let th = RegimeThresholds::default();
        let classes: Vec<_> = grid.iter().map(|&x| classify_regime(x, &th).unwrap()).collect();
        prop_assert!(classes.windows(2).all(|w| w[0] <= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gaussian_kernel_exchange_is_nonnegative(c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, s1 in 0.5..2.0f64, s2 in 0.5..2.0f64, w in 0.2..3.0f64) {
        let k = InteractionKernel::gaussian_well(1.0, w).unwrap();
        let spec = QuadratureSpec::with_nodes(400);
        let j = exchange_integral(&Orbital::gaussian(c1, s1).unwrap(), &Orbital::gaussian(c2, s2).unwrap(), &k, &spec).unwrap();
        prop_assert!(j >= 0.0);
    }

    #[test]
    fn stress_and_strain_integrators_are_consistent(tau in log_uniform(1e-3, 1e3), g0 in log_uniform(1.0, 1e9), wt in 0.1..5.0f64, phase in 0.0..6.0f64) {
        let p = FluidParams::from_tau(tau, g0).unwrap();
        let drive = DriveSignal::sinusoid(g0 * 1e-3, wt / tau, phase);
        let dt = tau / 1000.0;
        let forward = integrate_stress_driven(&drive, &p, dt / 2.0, 3.0 * tau).unwrap();
        let back = integrate_recorded_strain(&forward, &p).unwrap();
        for (k, s) in back.stress.iter().enumerate() {
            prop_assert!((s - forward.stress[2 * k]).abs() <= 1e-4 * drive.amplitude);
        }
    }
}
