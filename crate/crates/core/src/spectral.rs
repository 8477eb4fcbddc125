//! Frequency- and time-domain ingredients of the reservoir: the Ohmic-family
//! spectral density `J(ω)`, Bose occupation, the memory kernels `g(t)` and
//! `g̃(t)`, the self-energy shift `Δ(ω)` and the dissipationless localized
//! mode below the band edge.
//!
//! Normalization: `Σ(z) = ∫₀^∞ (dω/2π) J(ω)/(z − ω)`, so that
//! `Im Σ(ω + i0) = −J(ω)/2 = −γ(ω)` and `Re Σ(ω + i0) = Δ(ω)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, QuadConfig};
use crate::special::{gamma, ln_gamma, softplus};
#[allow(unused_imports)]
use num_traits::Float;

/// Frequencies beyond `CUTOFF_MULTIPLE · ω_c` carry a weight below `e^{-60}`
/// and are dropped from every frequency integral.
pub const CUTOFF_MULTIPLE: f64 = 60.0;

/// Reservoir and resonator parameters.
///
/// `J(ω) = 2π η ω (ω/ω_c)^{s−1} e^{−ω/ω_c}` with `s = 1 − x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirModel {
    pub eta: f64,
    pub s: f64,
    pub omega_c: f64,
    pub omega0: f64,
    /// `k_B T / (ħ ω₀)`.
    pub theta: f64,
}

impl ReservoirModel {
    pub fn new(eta: f64, s: f64, omega_c: f64, omega0: f64, theta: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter("eta must be finite and >= 0"));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParameter("s must lie in [0, 1]"));
        }
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(Error::InvalidParameter("omega_c must be > 0"));
        }
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidParameter("omega0 must be > 0"));
        }
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter("theta must be finite and >= 0"));
        }
        Ok(Self {
            eta,
            s,
            omega_c,
            omega0,
            theta,
        })
    }

    /// Build from the noise exponent `x = 1 − s`.
    pub fn from_x(eta: f64, x: f64, omega_c: f64, omega0: f64, theta: f64) -> Result<Self> {
        Self::new(eta, 1.0 - x, omega_c, omega0, theta)
    }

    pub fn x(&self) -> f64 {
        1.0 - self.s
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        Self::new(eta, self.s, self.omega_c, self.omega0, self.theta)
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        Self::new(self.eta, self.s, self.omega_c, self.omega0, theta)
    }

    /// `J(ω)/2π` for `ω ≥ 0`.
    pub(crate) fn density_over_2pi(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            return if self.s == 0.0 && omega == 0.0 {
                self.eta * self.omega_c
            } else {
                0.0
            };
        }
        self.eta * self.omega_c.powf(1.0 - self.s) * omega.powf(self.s) * (-omega / self.omega_c).exp()
    }

    fn density_over_2pi_derivative(&self, omega: f64) -> f64 {
        self.density_over_2pi(omega) * (self.s / omega - 1.0 / self.omega_c)
    }

    /// Dissipation rate `γ(ω) = J(ω)/2`.
    pub fn gamma_of(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            0.0
        } else {
            PI * self.density_over_2pi(omega)
        }
    }

    /// Bose occupation at `omega` for this model's temperature.
    pub fn occupation(&self, omega: f64) -> Result<f64> {
        occupation(self.theta, omega / self.omega0)
    }

    pub(crate) fn cutoff(&self) -> f64 {
        CUTOFF_MULTIPLE * self.omega_c
    }

    fn require_positive_s(&self) -> Result<()> {
        if self.s > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "s (kernel integrals need s > 0)",
                value: self.s,
            })
        }
    }
}

/// Ohmic-family spectral density `J(ω)`.
pub fn j_omega(model: &ReservoirModel, omega: f64) -> Result<f64> {
    if omega < 0.0 || omega.is_nan() {
        return Err(Error::Domain {
            what: "omega",
            value: omega,
        });
    }
    Ok(2.0 * PI * model.density_over_2pi(omega))
}

/// Bose occupation `1/(e^{ω/θ} − 1)`, `ω` in units of `ω₀`.
pub fn occupation(theta: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain {
            what: "omega",
            value: omega,
        });
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega / theta).exp_m1())
}

/// `n̄(y) − 1/y` with `y = ħω/k_BT`; regular at `y → 0` where it tends to −1/2.
fn occupation_minus_classical(y: f64) -> f64 {
    if y < 1e-2 {
        let y2 = y * y;
        -0.5 + y / 12.0 - y * y2 / 720.0 + y * y2 * y2 / 30240.0
    } else {
        1.0 / y.exp_m1() - 1.0 / y
    }
}

/// Dissipation kernel `g(t) = ∫₀^∞ (dω/2π) J(ω) e^{−iωt}` in closed form:
/// `η ω_c² Γ(s+1) / (1 + i ω_c t)^{s+1}`.
pub fn kernel_g(model: &ReservoirModel, t: f64) -> Complex64 {
    let amp = model.eta * model.omega_c * model.omega_c * gamma(model.s + 1.0);
    let base = Complex64::new(1.0, model.omega_c * t);
    base.powf(-(model.s + 1.0)) * amp
}

/// Fluctuation kernel `g̃(t) = ∫₀^∞ (dω/2π) J(ω) n̄(ω) e^{−iωt}`.
///
/// The `θω₀/ω` part of `n̄` carries the `ω^{s−1}` endpoint singularity and is
/// integrated in closed form, `η θ ω₀ ω_c Γ(s) / (1 + i ω_c t)^s`; the bounded
/// remainder `n̄ − θω₀/ω` is integrated adaptively.
pub fn kernel_g_tilde(model: &ReservoirModel, t: f64, cfg: &QuadConfig) -> Result<Complex64> {
    if model.theta == 0.0 || model.eta == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    model.require_positive_s()?;
    let kt = model.theta * model.omega0;
    let singular = Complex64::new(1.0, model.omega_c * t).powf(-model.s)
        * (model.eta * kt * model.omega_c * gamma(model.s));

    let mut integrand = |w: f64| {
        let weight = model.density_over_2pi(w) * occupation_minus_classical(w / kt);
        Complex64::from_polar(weight, -w * t)
    };
    let breaks = frequency_breaks(model, 0.0, &[kt]);
    let regular = integrate_with_breaks(&mut integrand, &breaks, cfg)?;
    Ok(singular + regular.value)
}

/// Panel boundaries on `[lo, cutoff]` aligned with the scales of `J`.
fn frequency_breaks(model: &ReservoirModel, lo: f64, extra: &[f64]) -> Vec<f64> {
    let wc = model.omega_c;
    let hi = model.cutoff();
    let mut b: Vec<f64> = [lo, wc, 4.0 * wc, 12.0 * wc, 30.0 * wc, hi]
        .into_iter()
        .chain(extra.iter().copied())
        .filter(|&w| w >= lo && w <= hi)
        .collect();
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Value of both kernels at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub t: f64,
    pub g: Complex64,
    pub g_tilde: Complex64,
}

pub fn kernel_samples(model: &ReservoirModel, times: &[f64], cfg: &QuadConfig) -> Result<Vec<KernelSample>> {
    times
        .iter()
        .map(|&t| {
            Ok(KernelSample {
                t,
                g: kernel_g(model, t),
                g_tilde: kernel_g_tilde(model, t, cfg)?,
            })
        })
        .collect()
}

/// `∫₀^∞ x^s e^{−x} / (x + b) dx` as a function of `ln b`.
///
/// For small `b` the incomplete-gamma series is used,
/// `Γ(s+1) e^b [ (1 − b^s Γ(1−s))/s − Σ_{k≥1} (−b)^k / (k!(k−s)) ]`,
/// with the leading bracket evaluated through `expm1` so that `s → 0` and
/// `b` far below the smallest normal double stay accurate.
pub(crate) fn shift_integral(s: f64, ln_b: f64, cfg: &QuadConfig) -> Result<f64> {
    let b = ln_b.exp();
    if s <= 0.9 && b <= 2.0 {
        let lead = -(s * ln_b + ln_gamma(1.0 - s)).exp_m1() / s;
        let mut sum = 0.0;
        let mut power = 1.0; // (−b)^k / k!
        for k in 1..200 {
            power *= -b / k as f64;
            let term = power / (k as f64 - s);
            sum += term;
            if term.abs() < 1e-17 * (lead.abs() + sum.abs()) {
                break;
            }
        }
        return Ok(gamma(s + 1.0) * b.exp() * (lead - sum));
    }
    let mut integrand = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            x.powf(s) * (-x).exp() / (x + b)
        }
    };
    let mut breaks: Vec<f64> = [0.0, b, 10.0 * b, 1.0, 5.0, 20.0, CUTOFF_MULTIPLE]
        .into_iter()
        .filter(|&x| x <= CUTOFF_MULTIPLE)
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    Ok(integrate_with_breaks(&mut integrand, &breaks, cfg)?.value)
}

/// `Δ(−a)` for `a = e^{ln_a} > 0`.
fn shift_below_band(model: &ReservoirModel, ln_a: f64, cfg: &QuadConfig) -> Result<f64> {
    let i = shift_integral(model.s, ln_a - model.omega_c.ln(), cfg)?;
    Ok(-model.eta * model.omega_c * i)
}

/// Self-energy shift `Δ(ω) = P∫₀^∞ (dω'/2π) J(ω')/(ω − ω')`.
///
/// Below the band (`ω < 0`) there is no pole and the integral is evaluated
/// analytically. Inside the band the principal value is taken by singularity
/// subtraction over `[0, 2ω]`, where `P∫ dω'/(ω − ω')` vanishes, plus a
/// regular integral over `[2ω, ∞)`.
pub fn self_energy_shift(model: &ReservoirModel, omega: f64, cfg: &QuadConfig) -> Result<f64> {
    if model.eta == 0.0 {
        return Ok(0.0);
    }
    model.require_positive_s()?;
    if omega < 0.0 {
        return shift_below_band(model, (-omega).ln(), cfg);
    }
    if omega == 0.0 {
        return Ok(-model.eta * model.omega_c * gamma(model.s));
    }

    let f0 = model.density_over_2pi(omega);
    let d0 = model.density_over_2pi_derivative(omega);
    let mut near = |w: f64| {
        let diff = omega - w;
        if diff.abs() < 1e-7 * omega {
            -d0
        } else {
            (model.density_over_2pi(w) - f0) / diff
        }
    };
    let near_breaks = [0.0, 1e-6 * omega, 1e-3 * omega, 0.5 * omega, omega, 1.5 * omega, 2.0 * omega];
    let mut total = integrate_with_breaks(&mut near, &near_breaks, cfg)?.value;

    let lo = 2.0 * omega;
    if lo < model.cutoff() {
        let mut far = |w: f64| model.density_over_2pi(w) / (omega - w);
        let mut extra = Vec::new();
        let mut w = 10.0 * lo;
        while w < model.cutoff() {
            extra.push(w);
            w *= 10.0;
        }
        let breaks = frequency_breaks(model, lo, &extra);
        total += integrate_with_breaks(&mut far, &breaks, cfg)?.value;
    }
    Ok(total)
}

/// Dissipationless bound state of `u(t)` below the band edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizedMode {
    pub exists: bool,
    /// Root of `ω − ω₀ − Δ(ω)` on `ω < 0`; `0` when the mode is absent. The
    /// root can lie below the smallest positive double, in which case this
    /// field rounds to `-0.0` and [`Self::ln_abs_omega_b`] carries its
    /// location.
    pub omega_b: f64,
    pub ln_abs_omega_b: f64,
    /// Residue `𝒵 = 1/(1 − Δ'(ω_b))`; `0` when absent.
    pub residue_z: f64,
    pub ln_residue_z: f64,
    /// `|ω_b − ω₀ − Δ(ω_b)|` at the returned root.
    pub residual: f64,
}

impl LocalizedMode {
    pub fn none() -> Self {
        Self {
            exists: false,
            omega_b: 0.0,
            ln_abs_omega_b: f64::NEG_INFINITY,
            residue_z: 0.0,
            ln_residue_z: f64::NEG_INFINITY,
            residual: 0.0,
        }
    }
}

const ROOT_TOLERANCE: f64 = 1e-12;

/// Locate the localized mode, if any.
///
/// `F(ω) = ω − ω₀ − Δ(ω)` decreases monotonically on `ω < 0` from
/// `F(0⁻) = −ω₀ + η ω_c Γ(s)` to `−∞`, so a root exists iff `F(0⁻) > 0`.
/// The search runs in `y = ln(−ω)` because for `s → 0` the root sits at
/// `|ω_b| ~ e^{−1/(ηs)}`, far below double-precision range.
pub fn find_localized_mode(model: &ReservoirModel, cfg: &QuadConfig) -> Result<LocalizedMode> {
    if model.eta == 0.0 {
        return Ok(LocalizedMode::none());
    }
    model.require_positive_s()?;
    let w0 = model.omega0;
    let edge = -w0 + model.eta * model.omega_c * gamma(model.s);
    if edge <= 0.0 {
        return Ok(LocalizedMode::none());
    }
    let f = |y: f64| -> Result<f64> { Ok(-y.exp() - w0 - shift_below_band(model, y, cfg)?) };

    let mut y_hi = (model.eta * model.omega_c * gamma(model.s)).ln() + 1.0;
    let mut f_hi = f(y_hi)?;
    let mut y_lo = y_hi.min(model.omega_c.ln()) - 1.0;
    let mut f_lo = f(y_lo)?;
    while f_lo <= 0.0 {
        y_lo = 2.0 * y_lo - 10.0;
        if y_lo < -1e9 {
            return Err(Error::RootBracketing);
        }
        f_lo = f(y_lo)?;
    }
    if f_hi >= 0.0 {
        return Err(Error::RootBracketing);
    }

    // Illinois regula falsi with a bisection step whenever progress stalls.
    let tol = ROOT_TOLERANCE * w0;
    let mut side = 0i8;
    let mut y = 0.5 * (y_lo + y_hi);
    let mut fy = f(y)?;
    let mut iterations = 0;
    while fy.abs() >= tol {
        iterations += 1;
        if iterations > 1000 || (y_hi - y_lo) <= 4.0 * f64::EPSILON * y_lo.abs().max(1.0) {
            return Err(Error::RootRefinement {
                residual: fy.abs(),
                iterations,
            });
        }
        let secant = (y_lo * f_hi - y_hi * f_lo) / (f_hi - f_lo);
        y = if iterations % 4 == 0 || !(secant > y_lo && secant < y_hi) {
            0.5 * (y_lo + y_hi)
        } else {
            secant
        };
        fy = f(y)?;
        if fy > 0.0 {
            y_lo = y;
            f_lo = fy;
            if side == 1 {
                f_hi *= 0.5;
            }
            side = 1;
        } else {
            y_hi = y;
            f_hi = fy;
            if side == -1 {
                f_lo *= 0.5;
            }
            side = -1;
        }
    }

    // Δ'(ω) = −e^{−y} dΔ/dy; dΔ/dy > 0 below the band.
    let h = 1e-4 * y.abs().max(1.0);
    let d_shift_dy = (shift_below_band(model, y + h, cfg)? - shift_below_band(model, y - h, cfg)?) / (2.0 * h);
    let ln_z = -softplus(d_shift_dy.ln() - y);
    Ok(LocalizedMode {
        exists: true,
        omega_b: -y.exp(),
        ln_abs_omega_b: y,
        residue_z: ln_z.exp(),
        ln_residue_z: ln_z,
        residual: fy.abs(),
    })
}

/// Quasi-particle peak position: the positive root of `ω − ω₀ − Δ(ω)`
/// nearest `ω₀`, by secant iteration. Falls back to `ω₀ + Δ(ω₀)` if the
/// iteration does not settle.
pub(crate) fn quasi_particle_peak(model: &ReservoirModel, cfg: &QuadConfig) -> Result<f64> {
    let w0 = model.omega0;
    let first = w0 + self_energy_shift(model, w0, cfg)?;
    if !(first > 0.0) {
        return Ok(w0);
    }
    let f = |w: f64| -> Result<f64> { Ok(w - w0 - self_energy_shift(model, w, cfg)?) };
    let (mut a, mut b) = (w0, first);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    for _ in 0..50 {
        if fb.abs() < 1e-13 * w0 || fa == fb {
            break;
        }
        let c = b - fb * (b - a) / (fb - fa);
        if !(c > 0.0) {
            return Ok(first);
        }
        a = b;
        fa = fb;
        b = c;
        fb = f(b)?;
    }
    Ok(if fb.abs() < 1e-8 * w0 { b } else { first })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;
    use approx::assert_relative_eq;

    fn model(eta: f64, s: f64) -> ReservoirModel {
        ReservoirModel::new(eta, s, 1.0, 1.0, 0.654).unwrap()
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ReservoirModel::new(-1.0, 0.5, 1.0, 1.0, 0.0).is_err());
        assert!(ReservoirModel::new(1e-3, 1.5, 1.0, 1.0, 0.0).is_err());
        assert!(ReservoirModel::new(1e-3, 0.5, 0.0, 1.0, 0.0).is_err());
        assert!(ReservoirModel::new(1e-3, 0.5, 1.0, 1.0, -0.1).is_err());
        assert!(ReservoirModel::from_x(1e-3, 0.9999, 1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn spectral_density_values() {
        let m = model(1e-3, 0.5);
        assert_eq!(j_omega(&m, 0.0).unwrap(), 0.0);
        assert_relative_eq!(j_omega(&m, 1.0).unwrap(), 2.0 * PI * 1e-3 * (-1.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(j_omega(&m, 1.0).unwrap(), 2.3115e-3, max_relative = 1e-4);
        assert!(matches!(j_omega(&m, -1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn pure_ohmic_peaks_at_cutoff() {
        let m = ReservoirModel::new(1e-3, 1.0, 2.0, 1.0, 0.0).unwrap();
        let j = |w: f64| j_omega(&m, w).unwrap();
        assert!(j(2.0) > j(1.99) && j(2.0) > j(2.01));
        assert_relative_eq!(j(0.7), 2.0 * PI * 1e-3 * 0.7 * (-0.35f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn occupation_limits() {
        let theta = 1.0 / 2f64.ln();
        assert_relative_eq!(occupation(theta, 1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_eq!(occupation(0.0, 3.0).unwrap(), 0.0);
        let n = occupation(1.0, 1e-3).unwrap();
        assert!((n - 999.5).abs() < 1e-3);
        assert!((n / 1000.0 - 1.0).abs() < 1e-3);
        assert!(occupation(1.0, 0.0).is_err());
    }

    #[test]
    fn classical_remainder_series_is_continuous() {
        for y in [0.999_999e-2f64, 1.000_001e-2] {
            let direct = 1.0 / y.exp_m1() - 1.0 / y;
            assert!((occupation_minus_classical(y) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn g_at_origin_and_ohmic_form() {
        let m = model(1e-3, 0.5);
        assert_relative_eq!(kernel_g(&m, 0.0).re, 1e-3 * gamma(1.5), max_relative = 1e-14);
        let ohmic = ReservoirModel::new(1e-3, 1.0, 1.0, 1.0, 0.0).unwrap();
        let t = 2.3;
        let expect = Complex64::new(1.0, t).powi(-2) * 1e-3;
        assert!((kernel_g(&ohmic, t) - expect).norm() < 1e-16);
    }

    #[test]
    fn g_closed_form_matches_quadrature() {
        let cfg = QuadConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_subdivisions: 4000,
        };
        for &s in &[0.75, 0.5, 0.25] {
            let m = model(1e-3, s);
            let g0 = kernel_g(&m, 0.0).norm();
            for &t in &[0.0, 0.7, 5.0, 20.0, 50.0] {
                let mut f = |w: f64| Complex64::from_polar(m.density_over_2pi(w), -w * t);
                let q = integrate_with_breaks(&mut f, &[0.0, 1e-8, 1e-4, 1.0, 5.0, 20.0, 60.0], &cfg)
                    .unwrap()
                    .value;
                assert!((q - kernel_g(&m, t)).norm() <= 1e-8 * g0, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn kernels_are_conjugate_symmetric() {
        let cfg = QuadConfig::default();
        let m = model(1e-3, 0.5);
        for &t in &[0.3, 4.0, 17.0] {
            assert!((kernel_g(&m, -t) - kernel_g(&m, t).conj()).norm() < 1e-17);
            let a = kernel_g_tilde(&m, t, &cfg).unwrap();
            let b = kernel_g_tilde(&m, -t, &cfg).unwrap();
            assert!((a - b.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn g_tilde_vanishes_at_zero_temperature() {
        let m = model(1e-3, 0.5).with_theta(0.0).unwrap();
        assert_eq!(kernel_g_tilde(&m, 1.0, &QuadConfig::default()).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn g_tilde_at_origin_two_quadratures_agree() {
        // Independent route: substitute ω = y², which removes the ω^{s−1}
        // endpoint singularity for s = 1/2, and integrate J n̄ directly.
        let m = model(1e-3, 0.5);
        let cfg = QuadConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        };
        let direct = integrate(
            |y: f64| {
                let w = y * y;
                if w == 0.0 {
                    // limit of 2y · J/2π · n̄ as y → 0
                    2.0 * m.eta * m.theta
                } else {
                    2.0 * y * m.density_over_2pi(w) / (w / m.theta).exp_m1()
                }
            },
            0.0,
            60f64.sqrt(),
            &cfg,
        )
        .unwrap()
        .value;
        let split = kernel_g_tilde(&m, 0.0, &QuadConfig::default()).unwrap();
        assert!(split.re > 0.0);
        assert!(split.im.abs() < 1e-14);
        assert!((split.re - direct).abs() <= 1e-8 * direct, "{} vs {}", split.re, direct);
    }

    #[test]
    fn shift_at_band_edge() {
        let cfg = QuadConfig::default();
        for &s in &[0.75, 0.5, 0.25, 1e-4] {
            let m = model(1e-3, s);
            let edge = -1e-3 * gamma(s);
            assert_relative_eq!(self_energy_shift(&m, 0.0, &cfg).unwrap(), edge, max_relative = 1e-14);
            // Approaching 0⁻ converges to the edge value (slowly, as |ω|^s).
            let near = self_energy_shift(&m, -1e-200, &cfg).unwrap();
            assert!(near < 0.0 && near >= edge * (1.0 + 1e-12));
        }
        let ohmic = ReservoirModel::new(1e-3, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(self_energy_shift(&ohmic, 0.0, &cfg).unwrap(), -1e-3, max_relative = 1e-14);
        assert_relative_eq!(self_energy_shift(&ohmic, -1e-12, &cfg).unwrap(), -1e-3, max_relative = 1e-9);
    }

    #[test]
    fn shift_integral_series_and_quadrature_agree() {
        let cfg = QuadConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        };
        for &s in &[0.75, 0.5, 0.25, 1e-4] {
            for &b in &[1e-3f64, 0.3, 1.9] {
                let series = shift_integral(s, b.ln(), &cfg).unwrap();
                let quad = integrate(
                    |x: f64| if x <= 0.0 { 0.0 } else { x.powf(s) * (-x).exp() / (x + b) },
                    0.0,
                    60.0,
                    &cfg,
                );
                let quad = quad
                    .or_else(|_| {
                        integrate_with_breaks(
                            &mut |x: f64| if x <= 0.0 { 0.0 } else { x.powf(s) * (-x).exp() / (x + b) },
                            &[0.0, b, 1.0, 60.0],
                            &cfg,
                        )
                    })
                    .unwrap()
                    .value;
                assert_relative_eq!(series, quad, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn shift_below_band_is_negative() {
        let cfg = QuadConfig::default();
        let m = model(1e-3, 0.5);
        for &w in &[-1e-6, -0.1, -1.0, -3.0, -50.0] {
            assert!(self_energy_shift(&m, w, &cfg).unwrap() < 0.0);
        }
    }

    #[test]
    fn shift_is_continuous_across_branch_choice() {
        let cfg = QuadConfig::default();
        let m = model(1e-2, 0.25);
        // b = 2 is the switch between series and quadrature.
        let a = self_energy_shift(&m, -1.999_999_9, &cfg).unwrap();
        let b = self_energy_shift(&m, -2.000_000_1, &cfg).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    /// Independent principal-value route: `Re Σ(ω + iε)` extrapolated to
    /// `ε → 0` (Richardson on ε, ε/2, ε/4).
    fn shift_by_lorentzian_regularization(m: &ReservoirModel, omega: f64) -> f64 {
        let cfg = QuadConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_subdivisions: 20000,
        };
        let at = |eps: f64| {
            let mut f = |w: f64| m.density_over_2pi(w) * (omega - w) / ((omega - w).powi(2) + eps * eps);
            let breaks = [
                0.0,
                omega - 100.0 * eps,
                omega - eps,
                omega,
                omega + eps,
                omega + 100.0 * eps,
                2.0 * omega + 1.0,
                10.0,
                60.0,
            ];
            let mut b: Vec<f64> = breaks.into_iter().filter(|&x| x >= 0.0).collect();
            b.sort_by(f64::total_cmp);
            integrate_with_breaks(&mut f, &b, &cfg).unwrap().value
        };
        let e = 1e-3 * omega;
        let (r1, r2, r4) = (at(e), at(e / 2.0), at(e / 4.0));
        let a1 = 2.0 * r2 - r1;
        let a2 = 2.0 * r4 - r2;
        (4.0 * a2 - a1) / 3.0
    }

    #[test]
    fn shift_satisfies_kramers_kronig() {
        let cfg = QuadConfig::default();
        for &s in &[0.75, 0.5, 0.25] {
            let m = model(1e-3, s);
            for &w in &[0.05, 0.6, 1.0, 2.5] {
                let pv = self_energy_shift(&m, w, &cfg).unwrap();
                let kk = shift_by_lorentzian_regularization(&m, w);
                assert!((pv - kk).abs() < 1e-8, "s={s} w={w}: {pv} vs {kk}");
            }
        }
    }

    #[test]
    fn kernel_and_shift_scale_linearly_in_eta() {
        let cfg = QuadConfig::default();
        let a = model(1e-3, 0.5);
        let b = a.with_eta(2e-3).unwrap();
        let g_ratio = kernel_g(&b, 0.0).norm() / kernel_g(&a, 0.0).norm();
        assert!((g_ratio / 2.0 - 1.0).abs() < 1e-10);
        let d_ratio = self_energy_shift(&b, -1e-300, &cfg).unwrap() / self_energy_shift(&a, -1e-300, &cfg).unwrap();
        assert!((d_ratio / 2.0 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn no_localized_mode_without_coupling() {
        let m = model(0.0, 0.5);
        assert!(!find_localized_mode(&m, &QuadConfig::default()).unwrap().exists);
    }

    #[test]
    fn no_localized_mode_at_weak_coupling() {
        let m = model(1e-3, 0.5);
        let edge = -1.0 + 1e-3 * gamma(0.5);
        assert!(edge < 0.0 && (edge + 1.0 - 1.772e-3).abs() < 1e-6);
        let mode = find_localized_mode(&m, &QuadConfig::default()).unwrap();
        assert!(!mode.exists);
        assert_eq!(mode.residue_z, 0.0);
    }

    #[test]
    fn localized_mode_at_strong_coupling() {
        let cfg = QuadConfig::default();
        // A bound state needs ηω_cΓ(s) > ω₀.
        assert!(!find_localized_mode(&model(0.5, 0.5), &cfg).unwrap().exists);
        let m = model(0.8, 0.5);
        let mode = find_localized_mode(&m, &cfg).unwrap();
        assert!(mode.exists);
        assert!(mode.omega_b < 0.0);
        let f = mode.omega_b - 1.0 - self_energy_shift(&m, mode.omega_b, &cfg).unwrap();
        assert!(f.abs() < 1e-12, "{f}");
        assert!(mode.residue_z > 0.0 && mode.residue_z <= 1.0);
        // Residue against a plain central difference in ω.
        let h = 1e-5 * mode.omega_b.abs();
        let d = (self_energy_shift(&m, mode.omega_b + h, &cfg).unwrap()
            - self_energy_shift(&m, mode.omega_b - h, &cfg).unwrap())
            / (2.0 * h);
        assert_relative_eq!(mode.residue_z, 1.0 / (1.0 - d), max_relative = 1e-6);
    }

    #[test]
    fn one_over_f_localized_mode_is_exponentially_small() {
        // η Γ(10⁻⁴) ≈ 10 > ω₀, so a root exists, at |ω_b| ~ e^{-1000}.
        let cfg = QuadConfig::default();
        let m = ReservoirModel::from_x(1e-3, 0.9999, 1.0, 1.0, 0.654).unwrap();
        let mode = find_localized_mode(&m, &cfg).unwrap();
        assert!(mode.exists);
        assert!(mode.ln_abs_omega_b < -700.0);
        assert!(mode.residual < 1e-12);
        assert!(mode.ln_residue_z < -700.0);
        assert!(mode.residue_z >= 0.0 && mode.residue_z < 1e-300);
    }
}
