use flicker_core::noise::{
    classical_ensemble_spectrum, correction_term, fit_power_law, log_space, low_freq_asymptote, NoiseSpectrum,
    SpectrumSeries,
};
use flicker_core::{QuadConfig, ReservoirModel};
use proptest::prelude::*;

fn model(eta: f64, x: f64, theta: f64) -> ReservoirModel {
    ReservoirModel::from_x(eta, x, 1.0, 1.0, theta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_is_additive_and_nonnegative(
        eta in 1e-5f64..1e-1,
        x in 0.2f64..0.9999,
        theta in 0.0f64..400.0,
        n0 in 0.0f64..3.0,
    ) {
        let spectrum = NoiseSpectrum::new(&model(eta, x, theta), &QuadConfig::default()).unwrap();
        let omegas = log_space(1e-4, 3.0, 17);
        let series = spectrum.series(&omegas, n0).unwrap();
        for i in 0..omegas.len() {
            prop_assert!(series.s1_values[i] >= 0.0 && series.s2_values[i] >= 0.0);
            prop_assert_eq!(series.values[i], series.s1_values[i] + series.s2_values[i]);
        }
    }

    #[test]
    fn low_frequency_spectrum_is_linear_in_temperature(
        x in 0.25f64..0.9999,
        theta in 0.5f64..400.0,
    ) {
        let cfg = QuadConfig::default();
        let s = |th: f64| NoiseSpectrum::new(&model(1e-3, x, th), &cfg).unwrap().at(1e-4, 0.0).unwrap().total();
        let ratio = s(2.0 * theta) / s(theta);
        prop_assert!((ratio - 2.0).abs() <= 0.02, "ratio {}", ratio);
    }

    #[test]
    fn asymptote_holds_inside_the_wedge(
        eta in 1e-5f64..1e-3,
        x in 0.25f64..0.9999,
        theta in 0.6f64..400.0,
        log_w in -4.0f64..-2.0,
    ) {
        let cfg = QuadConfig::default();
        let m = model(eta, x, theta);
        let w = 10f64.powf(log_w);
        let exact = NoiseSpectrum::new(&m, &cfg).unwrap().at(w, 0.0).unwrap().total();
        let bound = correction_term(&m, w, &cfg).unwrap().abs() + 0.01;
        let dev = (exact / low_freq_asymptote(&m, w) - 1.0).abs();
        prop_assert!(dev <= bound, "deviation {} bound {}", dev, bound);
    }

    #[test]
    fn ensemble_spectrum_decreases(
        alpha in 0.5f64..1.5,
        log_nu1 in -4.0f64..-2.0,
        decades in 1.0f64..4.0,
        a in 1e-5f64..10.0,
        b in 1e-5f64..10.0,
    ) {
        prop_assume!((a - b).abs() > 1e-9 * a.max(b));
        let cfg = QuadConfig::default();
        let nu1 = 10f64.powf(log_nu1);
        let nu2 = nu1 * 10f64.powf(decades);
        let (lo, hi) = (a.min(b), a.max(b));
        let s_lo = classical_ensemble_spectrum(alpha, nu1, nu2, lo, &cfg).unwrap();
        let s_hi = classical_ensemble_spectrum(alpha, nu1, nu2, hi, &cfg).unwrap();
        prop_assert!(s_hi < s_lo, "S({}) = {} vs S({}) = {}", hi, s_hi, lo, s_lo);
    }

    #[test]
    fn fit_recovers_exact_power_laws(
        exponent in 0.0f64..2.0,
        prefactor in 1e-6f64..1e6,
    ) {
        let omegas = log_space(1e-5, 1e-1, 30);
        let values = omegas.iter().map(|w| prefactor * w.powf(-exponent)).collect();
        let fit = fit_power_law(&SpectrumSeries::from_values(omegas, values).unwrap(), [1e-5, 1e-1]).unwrap();
        prop_assert!((fit.exponent - exponent).abs() <= 1e-10);
        prop_assert!((fit.prefactor / prefactor - 1.0).abs() <= 1e-9);
    }
}
