//! Thin wrappers over `libm` for the special functions the crate needs.

pub(crate) fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// `ln(1 + e^x)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 30.0 {
        x + libm::exp(-x)
    } else {
        libm::log1p(libm::exp(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_matches_known_values() {
        assert!((gamma(0.5) - core::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((ln_factorial(20) - libm::log(2_432_902_008_176_640_000.0)).abs() < 1e-12);
    }

    #[test]
    fn softplus_is_stable() {
        assert!((softplus(1000.0) - 1000.0).abs() < 1e-12);
        assert!((softplus(0.0) - core::f64::consts::LN_2).abs() < 1e-15);
        assert!(softplus(-800.0) >= 0.0);
    }
}
