use flicker_core::greens::{master_coefficients, GreensSolution, TimeGrid};
use flicker_core::oracle::master::{evolve, TruncatedDensityMatrix};
use flicker_core::spectral::{kernel_g, kernel_g_tilde};
use flicker_core::{Complex64, QuadConfig, ReservoirModel};
use proptest::prelude::*;

fn model(eta: f64, x: f64, theta: f64) -> ReservoirModel {
    ReservoirModel::from_x(eta, x, 1.0, 1.0, theta).unwrap()
}

fn mean_occupation(rho: &TruncatedDensityMatrix) -> f64 {
    (0..rho.dim).map(|j| j as f64 * rho.get(j, j).re).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn propagator_contracts_and_correlation_is_nonnegative(
        eta in 0.0f64..2e-2,
        x in 0.2f64..0.9999,
        theta in 0.0f64..400.0,
    ) {
        let m = model(eta, x, theta);
        let grid = TimeGrid::with_horizon(0.0, 5e-3, 4.0).unwrap();
        let sol = GreensSolution::solve(&m, grid, &QuadConfig::default()).unwrap();
        prop_assert_eq!(sol.u[0], Complex64::new(1.0, 0.0));
        prop_assert_eq!(sol.v[0], 0.0);
        for (u, v) in sol.u.iter().zip(&sol.v) {
            prop_assert!(u.norm() <= 1.0 + 1e-6, "|u| = {}", u.norm());
            prop_assert!(*v >= -1e-8, "v = {}", v);
        }
    }

    #[test]
    fn master_equation_reproduces_occupation(
        eta in 1e-3f64..2e-2,
        x in 0.25f64..0.75,
        theta in 0.0f64..2.0,
    ) {
        // From |1⟩ the exact dynamics give ⟨a†a⟩(t) = |u(t)|² + v(t).
        let m = model(eta, x, theta);
        let grid = TimeGrid::with_horizon(0.0, 5e-3, 3.0).unwrap();
        let sol = GreensSolution::solve(&m, grid, &QuadConfig::default()).unwrap();
        let coeffs = master_coefficients(&sol.u, &sol.v, grid).unwrap();
        let times = [0.5, 1.5, 3.0];
        let rho0 = TruncatedDensityMatrix::fock(1, 30).unwrap();
        let out = evolve(&coeffs, &rho0, &times, grid.dt).unwrap();
        for (rho, &t) in out.iter().zip(&times) {
            let k = grid.index_of(t).unwrap();
            let expect = sol.u[k].norm_sqr() + sol.v[k];
            prop_assert!((mean_occupation(rho) - expect).abs() <= 1e-6, "t={}: {} vs {}", t, mean_occupation(rho), expect);
            prop_assert!((rho.trace() - 1.0).abs() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernels_are_conjugate_symmetric(
        eta in 1e-4f64..1e-1,
        x in 0.2f64..0.9999,
        theta in 0.0f64..50.0,
        t in 0.0f64..30.0,
    ) {
        let m = model(eta, x, theta);
        let cfg = QuadConfig::default();
        let g = kernel_g(&m, t);
        prop_assert!((kernel_g(&m, -t) - g.conj()).norm() <= 1e-14 * g.norm().max(1e-300));
        let gt = kernel_g_tilde(&m, t, &cfg).unwrap();
        let gt_neg = kernel_g_tilde(&m, -t, &cfg).unwrap();
        prop_assert!((gt_neg - gt.conj()).norm() <= 1e-10 * gt.norm().max(1e-300));
    }

    #[test]
    fn dissipation_kernel_is_linear_in_coupling(
        eta in 1e-5f64..1e-1,
        x in 0.2f64..0.9999,
        t in 0.0f64..30.0,
    ) {
        let a = kernel_g(&model(eta, x, 1.0), t);
        let b = kernel_g(&model(2.0 * eta, x, 1.0), t);
        prop_assert!((b * 0.5 - a).norm() <= 1e-10 * a.norm());
    }
}
