use std::f64::consts::PI;

use flicker_core::wigner::{w_superposition, w_vacuum, wigner_field};
use flicker_core::{Complex64, GridSpec, SuperpositionState};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = SuperpositionState> {
    (0usize..6, 1usize..6).prop_map(|(n, gap)| SuperpositionState::new(n, n + gap).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fields_are_normalized_and_bounded(
        st in state(),
        r in 0.0f64..1.0,
        phase in 0.0f64..(2.0 * PI),
        v in 0.0f64..20.0,
    ) {
        let u = Complex64::from_polar(r, phase);
        let field = wigner_field(st, u, v, 0.0, &GridSpec::default()).unwrap();
        prop_assert!((field.normalization() - 1.0).abs() <= 1e-6, "norm {}", field.normalization());
        prop_assert!(field.max_abs() <= 2.0 / PI + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vacuum_superpositions_have_rotational_symmetry(
        n in 1usize..7,
        r in 0.0f64..1.0,
        phase in 0.0f64..(2.0 * PI),
        v in 0.0f64..5.0,
        rho in 0.0f64..3.0,
        arg in 0.0f64..(2.0 * PI),
    ) {
        let st = SuperpositionState::new(0, n).unwrap();
        let u = Complex64::from_polar(r, phase);
        let z = Complex64::from_polar(rho, arg);
        let turn = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
        let a = w_superposition(st, z, u, v).unwrap();
        let b = w_superposition(st, z * turn, u, v).unwrap();
        prop_assert!((a - b).abs() <= 1e-12, "{} vs {}", a, b);
    }

    #[test]
    fn fully_decayed_states_are_thermal(
        st in state(),
        v in 0.0f64..5.0,
        rho in 0.0f64..3.0,
        arg in 0.0f64..(2.0 * PI),
    ) {
        let zero = Complex64::new(0.0, 0.0);
        let z = Complex64::from_polar(rho, arg);
        let w = w_superposition(st, z, zero, v).unwrap();
        prop_assert!((w - w_vacuum(z, zero, v)).abs() <= 1e-12);
    }
}
