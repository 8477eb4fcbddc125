//! Conversion from laboratory units to the dimensionless temperature `θ`.

/// Boltzmann constant in J/K (exact, SI 2019).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Reduced Planck constant in J·s (SI 2019).
pub const HBAR: f64 = 1.054_571_817e-34;

/// `θ = k_B T / (ħ ω₀)` with `ω₀` read as an angular frequency in rad/s.
pub fn theta_from_kelvin(temperature_k: f64, omega0_rad_per_s: f64) -> f64 {
    BOLTZMANN * temperature_k / (HBAR * omega0_rad_per_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_temperatures() {
        assert!((theta_from_kelvin(0.025, 5e9) - 0.654_6).abs() < 1e-3);
        assert!((theta_from_kelvin(0.025, 1e9) - 3.273).abs() < 1e-3);
        assert!((theta_from_kelvin(2.5, 1e9) - 327.3).abs() < 0.1);
    }
}
