//! Finite bath of harmonic modes with exact single-excitation dynamics.
//!
//! The quadratic Hamiltonian keeps the one-quantum sector closed, so the
//! Heisenberg amplitudes obey `i ψ̇ = H ψ` with the arrowhead matrix
//! `H = [[ω₀, V], [Vᵀ, diag(ω_k)]]`. With `ψ(t₀) = e₀`, `u_N = ψ₀` and
//! `v_N = Σ_k n̄(ω_k) |ψ_k|²` (the propagator is symmetric).

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::greens::TimeGrid;
use crate::spectral::{j_omega, ReservoirModel};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath {
    pub mode_freqs: Vec<f64>,
    pub couplings: Vec<f64>,
    /// Frequency interval represented by each mode, `Δω_k`.
    pub widths: Vec<f64>,
}

impl DiscreteBath {
    pub fn new(mode_freqs: Vec<f64>, couplings: Vec<f64>, widths: Vec<f64>) -> Result<Self> {
        if mode_freqs.len() != couplings.len() {
            return Err(Error::LengthMismatch(mode_freqs.len(), couplings.len()));
        }
        if mode_freqs.len() != widths.len() {
            return Err(Error::LengthMismatch(mode_freqs.len(), widths.len()));
        }
        if mode_freqs.is_empty() {
            return Err(Error::InvalidParameter("bath needs at least one mode"));
        }
        Ok(Self {
            mode_freqs,
            couplings,
            widths,
        })
    }

    /// `n` log-spaced cells on `[lo, hi]`, one mode at each cell's geometric
    /// centre with `V_k² = J(ω_k) Δω_k / 2π`.
    pub fn log_spaced(model: &ReservoirModel, n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("bath needs at least 2 modes"));
        }
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::InvalidParameter("bath band needs 0 < lo < hi"));
        }
        let ratio = (hi / lo).ln() / n as f64;
        let mut freqs = Vec::with_capacity(n);
        let mut couplings = Vec::with_capacity(n);
        let mut widths = Vec::with_capacity(n);
        for k in 0..n {
            let a = lo * (ratio * k as f64).exp();
            let b = lo * (ratio * (k + 1) as f64).exp();
            let w = (a * b).sqrt();
            let width = b - a;
            freqs.push(w);
            couplings.push((j_omega(model, w)? * width / (2.0 * PI)).sqrt());
            widths.push(width);
        }
        Self::new(freqs, couplings, widths)
    }

    /// Log-spaced bath on `[10⁻⁶, 10]·ω₀`.
    pub fn standard(model: &ReservoirModel, n: usize) -> Result<Self> {
        Self::log_spaced(model, n, 1e-6 * model.omega0, 10.0 * model.omega0)
    }

    pub fn len(&self) -> usize {
        self.mode_freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mode_freqs.is_empty()
    }

    /// `2π V_k² / Δω_k`, which reproduces `J(ω_k)`.
    pub fn sampled_density(&self) -> Vec<f64> {
        self.couplings
            .iter()
            .zip(&self.widths)
            .map(|(v, w)| 2.0 * PI * v * v / w)
            .collect()
    }

    /// `2π / min_k Δω_k`.
    pub fn min_spacing_recurrence_time(&self) -> f64 {
        let min = self.widths.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        2.0 * PI / min
    }

    /// `2π / Δω` for the cell nearest `omega`: when amplitude that left the
    /// system through modes near resonance first returns.
    pub fn recurrence_time_near(&self, omega: f64) -> f64 {
        let k = self
            .mode_freqs
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - omega).abs().total_cmp(&(b.1 - omega).abs()))
            .map(|(k, _)| k)
            .unwrap_or(0);
        2.0 * PI / self.widths[k]
    }
}

/// `(u_N, v_N)` on `grid` by fourth-order Runge–Kutta on the amplitude
/// equations, with substeps keeping `ω_max · h ≤ 0.05`.
pub fn bath_u_v(bath: &DiscreteBath, model: &ReservoirModel, grid: TimeGrid) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let n = bath.len();
    let occupations = bath
        .mode_freqs
        .iter()
        .map(|&w| model.occupation(w))
        .collect::<Result<Vec<_>>>()?;
    let w_max = bath.mode_freqs.iter().fold(model.omega0.abs(), |a, &b| a.max(b.abs()));
    let coupling_norm = bath.couplings.iter().map(|v| v * v).sum::<f64>().sqrt();
    let scale = w_max + coupling_norm;
    let sub = ((scale * grid.dt / 0.05).ceil() as usize).max(1);
    let h = grid.dt / sub as f64;

    // i ψ̇ = H ψ  ⇒  ψ̇ = −i H ψ.
    let apply = |psi: &[Complex64], out: &mut [Complex64]| {
        let mut sys = psi[0] * model.omega0;
        for k in 0..n {
            sys += psi[k + 1] * bath.couplings[k];
            out[k + 1] = Complex64::new(0.0, -1.0) * (psi[0] * bath.couplings[k] + psi[k + 1] * bath.mode_freqs[k]);
        }
        out[0] = Complex64::new(0.0, -1.0) * sys;
    };

    let zero = Complex64::new(0.0, 0.0);
    let mut psi = alloc::vec![zero; n + 1];
    psi[0] = Complex64::new(1.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        alloc::vec![zero; n + 1],
        alloc::vec![zero; n + 1],
        alloc::vec![zero; n + 1],
        alloc::vec![zero; n + 1],
        alloc::vec![zero; n + 1],
    );
    let mut us = Vec::with_capacity(grid.len());
    let mut vs = Vec::with_capacity(grid.len());
    let record = |psi: &[Complex64], us: &mut Vec<Complex64>, vs: &mut Vec<f64>| {
        us.push(psi[0]);
        vs.push(psi[1..].iter().zip(&occupations).map(|(p, nb)| nb * p.norm_sqr()).sum());
    };
    record(&psi, &mut us, &mut vs);
    for _ in 0..grid.n_steps {
        for _ in 0..sub {
            apply(&psi, &mut k1);
            for i in 0..=n {
                tmp[i] = psi[i] + k1[i] * (0.5 * h);
            }
            apply(&tmp, &mut k2);
            for i in 0..=n {
                tmp[i] = psi[i] + k2[i] * (0.5 * h);
            }
            apply(&tmp, &mut k3);
            for i in 0..=n {
                tmp[i] = psi[i] + k3[i] * h;
            }
            apply(&tmp, &mut k4);
            for i in 0..=n {
                psi[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
            }
        }
        record(&psi, &mut us, &mut vs);
    }
    Ok((us, vs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_resonant_mode_rabi() {
        let model = ReservoirModel::new(1e-3, 0.5, 1.0, 1.0, 0.0).unwrap();
        let g = 0.05;
        let bath = DiscreteBath::new(alloc::vec![1.0], alloc::vec![g], alloc::vec![1.0]).unwrap();
        let grid = TimeGrid::new(0.0, 1e-2, 2000).unwrap();
        let (u, v) = bath_u_v(&bath, &model, grid).unwrap();
        for k in (0..grid.len()).step_by(97) {
            let t = grid.time(k);
            let exact = Complex64::from_polar((g * t).cos(), -t);
            assert!((u[k] - exact).norm() < 1e-7, "t={t}");
            assert_eq!(v[k], 0.0);
        }
    }

    #[test]
    fn couplings_reproduce_density() {
        let model = ReservoirModel::from_x(1e-2, 0.5, 1.0, 1.0, 0.3).unwrap();
        let bath = DiscreteBath::standard(&model, 500).unwrap();
        for (w, j) in bath.mode_freqs.iter().zip(bath.sampled_density()) {
            assert_relative_eq!(j, j_omega(&model, *w).unwrap(), max_relative = 1e-12);
        }
        assert!(bath.recurrence_time_near(1.0) > 20.0);
        assert!(bath.min_spacing_recurrence_time() > bath.recurrence_time_near(1.0));
    }

    #[test]
    fn contractive_and_nonnegative() {
        let model = ReservoirModel::from_x(1e-2, 0.5, 1.0, 1.0, 2.0).unwrap();
        let bath = DiscreteBath::standard(&model, 200).unwrap();
        let grid = TimeGrid::new(0.0, 1e-2, 500).unwrap();
        let (u, v) = bath_u_v(&bath, &model, grid).unwrap();
        assert!(u.iter().all(|z| z.norm() <= 1.0 + 1e-9));
        assert!(v.iter().all(|&x| x >= 0.0));
        assert_eq!(v[0], 0.0);
    }
}
