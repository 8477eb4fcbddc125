//! Quantum noise spectrum of the resonator and classical comparison spectra.
//!
//! `S(ω) = 𝒵² n₀ δ(ω − ω_b) + S₁(ω) + S₂(ω)` with
//! `S₁ = 𝒵² J n̄ / (ω − ω_b)²` and
//! `S₂ = J n̄ / ([ω − ω₀ − Δ(ω)]² + γ²(ω))`.
//!
//! The delta term is never sampled; it is carried as a (weight, location)
//! pair on [`SpectrumSeries`].

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, QuadConfig};
use crate::spectral::{find_localized_mode, j_omega, self_energy_shift, LocalizedMode, ReservoirModel};
#[allow(unused_imports)]
use num_traits::Float;

/// One frequency sample of the exact spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub s1: f64,
    pub s2: f64,
    /// `𝒵² n₀`, the weight of the delta peak at `ω_b`.
    pub delta_weight: f64,
}

impl SpectrumPoint {
    pub fn total(&self) -> f64 {
        self.s1 + self.s2
    }
}

/// Sampled spectrum with its component breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
    pub s1_values: Vec<f64>,
    pub s2_values: Vec<f64>,
    pub initial_occupation: f64,
    pub delta_weight: f64,
    /// `ω_b` when a localized mode exists.
    pub delta_location: Option<f64>,
}

impl SpectrumSeries {
    /// A plain `(ω, S)` series without component breakdown, e.g. a classical spectrum.
    pub fn from_values(omegas: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if omegas.len() != values.len() {
            return Err(Error::LengthMismatch(omegas.len(), values.len()));
        }
        let zeros = alloc::vec![0.0; values.len()];
        Ok(Self {
            omegas,
            s1_values: zeros,
            s2_values: values.clone(),
            values,
            initial_occupation: 0.0,
            delta_weight: 0.0,
            delta_location: None,
        })
    }
}

/// Exact spectrum for one model with the localized mode resolved once.
#[derive(Debug, Clone)]
pub struct NoiseSpectrum {
    pub model: ReservoirModel,
    pub mode: LocalizedMode,
    cfg: QuadConfig,
}

impl NoiseSpectrum {
    pub fn new(model: &ReservoirModel, cfg: &QuadConfig) -> Result<Self> {
        let mode = find_localized_mode(model, cfg)?;
        Ok(Self {
            model: *model,
            mode,
            cfg: *cfg,
        })
    }

    pub fn at(&self, omega: f64, n0: f64) -> Result<SpectrumPoint> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain {
                what: "spectrum frequency",
                value: omega,
            });
        }
        if !(n0 >= 0.0) {
            return Err(Error::Domain {
                what: "initial occupation",
                value: n0,
            });
        }
        let m = &self.model;
        let z = if self.mode.exists { self.mode.residue_z } else { 0.0 };
        if self.mode.exists && omega == self.mode.omega_b {
            return Err(Error::SingularPoint(omega));
        }
        let weight = j_omega(m, omega)? * m.occupation(omega)?;
        let s1 = if z > 0.0 {
            let d = omega - self.mode.omega_b;
            z * z * weight / (d * d)
        } else {
            0.0
        };
        let gamma = m.gamma_of(omega);
        let detune = omega - m.omega0 - self_energy_shift(m, omega, &self.cfg)?;
        let s2 = weight / (detune * detune + gamma * gamma);
        Ok(SpectrumPoint {
            s1,
            s2,
            delta_weight: z * z * n0,
        })
    }

    pub fn series(&self, omegas: &[f64], n0: f64) -> Result<SpectrumSeries> {
        let mut s1_values = Vec::with_capacity(omegas.len());
        let mut s2_values = Vec::with_capacity(omegas.len());
        let mut delta_weight = 0.0;
        for &w in omegas {
            let p = self.at(w, n0)?;
            s1_values.push(p.s1);
            s2_values.push(p.s2);
            delta_weight = p.delta_weight;
        }
        if omegas.is_empty() && self.mode.exists {
            delta_weight = self.mode.residue_z * self.mode.residue_z * n0;
        }
        let values = s1_values.iter().zip(&s2_values).map(|(a, b)| a + b).collect();
        Ok(SpectrumSeries {
            omegas: omegas.to_vec(),
            values,
            s1_values,
            s2_values,
            initial_occupation: n0,
            delta_weight,
            delta_location: (self.mode.exists && self.mode.residue_z > 0.0).then_some(self.mode.omega_b),
        })
    }
}

/// `(S₁, S₂, 𝒵²n₀)` at one frequency. Resolves the localized mode on every
/// call; use [`NoiseSpectrum`] for sweeps.
pub fn s_exact(model: &ReservoirModel, omega: f64, n0: f64, cfg: &QuadConfig) -> Result<SpectrumPoint> {
    NoiseSpectrum::new(model, cfg)?.at(omega, n0)
}

/// `η′k_BT/ω^x` with `η′ = η ω_c^{1−s}/ħω₀²`, in units where `k_BT/ħ = θω₀`.
pub fn s_low_freq(model: &ReservoirModel, omega: f64) -> f64 {
    model.eta * model.omega_c.powf(1.0 - model.s) * model.theta / (model.omega0 * omega.powf(model.x()))
}

/// Leading low-frequency behaviour of `S₂` for the `J(ω)` normalization used
/// throughout, `J n̄/ω₀²` with `n̄ → θω₀/ω`. Equals `2π · s_low_freq`.
pub fn low_freq_asymptote(model: &ReservoirModel, omega: f64) -> f64 {
    2.0 * PI * s_low_freq(model, omega)
}

/// First-order correction `2ξζ` of the low-frequency expansion of `S₂`,
/// `ξ = ω₀/√(ω₀²+γ²)`, `ζ = (ω − Δ(ω))/√(ω₀²+γ²)`.
pub fn correction_term(model: &ReservoirModel, omega: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(Error::Domain {
            what: "correction frequency",
            value: omega,
        });
    }
    let gamma = model.gamma_of(omega);
    let delta = self_energy_shift(model, omega, cfg)?;
    Ok(2.0 * model.omega0 * (omega - delta) / (model.omega0 * model.omega0 + gamma * gamma))
}

/// `2ξζ` over an `(η, ω)` grid. `values[i][j]` belongs to `etas[i]`, `omegas[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityMap {
    pub etas: Vec<f64>,
    pub omegas: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

pub fn validity_map(base: &ReservoirModel, etas: &[f64], omegas: &[f64], cfg: &QuadConfig) -> Result<ValidityMap> {
    let mut values = Vec::with_capacity(etas.len());
    for &eta in etas {
        let m = base.with_eta(eta)?;
        let row = omegas
            .iter()
            .map(|&w| correction_term(&m, w, cfg))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    Ok(ValidityMap {
        etas: etas.to_vec(),
        omegas: omegas.to_vec(),
        values,
    })
}

/// `n` points spaced evenly in `log ω` between `lo` and `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut out: Vec<f64> = (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect();
    out[0] = lo;
    out[n - 1] = hi;
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// `x` in `S ∝ ω^{−x}`.
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    pub fit_range: [f64; 2],
}

pub const MIN_FIT_SAMPLES: usize = 8;

/// Unweighted least squares on `(ln ω, ln S)` over samples with `ω` in `range`.
pub fn fit_power_law(series: &SpectrumSeries, range: [f64; 2]) -> Result<PowerLawFit> {
    let mut pts = Vec::new();
    for (i, (&w, &s)) in series.omegas.iter().zip(&series.values).enumerate() {
        if w < range[0] || w > range[1] {
            continue;
        }
        if !(s > 0.0) || !(w > 0.0) {
            return Err(Error::NonPositiveSample { index: i, value: s.min(w) });
        }
        pts.push((w.ln(), s.ln()));
    }
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples {
            required: MIN_FIT_SAMPLES,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientSamples {
            required: 2,
            found: 1,
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(PowerLawFit {
        exponent: -slope,
        prefactor: intercept.exp(),
        r_squared,
        fit_range: range,
    })
}

/// Lorentzian spectrum of a random telegraph signal with switching rate `ν`.
pub fn classical_rtn_spectrum(nu: f64, omega: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain {
            what: "switching rate",
            value: nu,
        });
    }
    Ok(nu / (PI * (omega * omega + nu * nu)))
}

/// Rate-averaged RTN spectrum with `p(ν) ∝ ν^{−α}` normalized on `[ν₁, ν₂]`.
/// `ν₁ = ν₂` collapses to a single fluctuator.
pub fn classical_ensemble_spectrum(alpha: f64, nu1: f64, nu2: f64, omega: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain {
            what: "rate exponent",
            value: alpha,
        });
    }
    if !(nu1 > 0.0) || !(nu2 >= nu1) {
        return Err(Error::InvalidParameter("switching rates need 0 < nu1 <= nu2"));
    }
    if nu1 == nu2 {
        return classical_rtn_spectrum(nu1, omega);
    }
    let (a, b) = (nu1.ln(), nu2.ln());
    let span = b - a;
    let e = 1.0 - alpha;
    // ∫ ν^{−α} dν over [ν₁, ν₂], arranged to stay accurate as α → 1.
    let mass = if (e * span).abs() < 1e-12 {
        span
    } else {
        nu1.powf(e) * (e * span).exp_m1() / e
    };
    let w2 = omega * omega;
    // Substituting ν = e^y: p(ν)·S_ν(ω)·ν dy.
    let mut integrand = |y: f64| {
        let nu = y.exp();
        nu.powf(e) * nu / (PI * (w2 + nu * nu))
    };
    let mut breaks = alloc::vec![a, b];
    if omega > nu1 && omega < nu2 {
        breaks.insert(1, omega.ln());
    }
    let total = integrate_with_breaks(&mut integrand, &breaks, cfg)?.value;
    Ok(total / mass)
}

/// Stationary spectrum from a two-time correlation sampled at `τ = l·dt`,
/// `l = 0, 1, …`: `S(ω) = ∫ e^{−iωτ} C(τ) dτ = 2 Re ∫₀^∞ e^{−iωτ} C(τ) dτ`
/// for a correlation with `C(−τ) = C(τ)*`. A Gaussian window of width
/// `window` tapers the truncated tail.
pub fn spectrum_from_correlation(dt: f64, correlation: &[Complex64], omegas: &[f64], window: f64) -> Vec<f64> {
    omegas
        .iter()
        .map(|&w| {
            let step = Complex64::from_polar(1.0, -w * dt);
            let mut phase = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, c) in correlation.iter().enumerate() {
                if l % 512 == 0 {
                    phase = Complex64::from_polar(1.0, -w * dt * l as f64);
                }
                let tau = l as f64 * dt;
                let taper = (-0.5 * (tau / window).powi(2)).exp();
                let weight = if l == 0 { 0.5 } else { 1.0 };
                acc += phase * c * (weight * taper);
                phase *= step;
            }
            2.0 * acc.re * dt
        })
        .collect()
}
