//! Fock-truncated integration of the exact master equation
//!
//! `ρ̇ = −iω₀'[a†a, ρ] + γ(2aρa† − a†aρ − ρa†a) + γ̃(aρa† + a†ρa − a†aρ − ρaa†)`
//!
//! The generator couples `ρ_{jk}` only to `ρ_{j±1,k±1}`, so every diagonal
//! `j − k = d` evolves on its own. Only the diagonals that are occupied
//! initially are integrated; the rest stay exactly zero.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::greens::MasterCoefficients;
use crate::wigner::SuperpositionState;
#[allow(unused_imports)]
use num_traits::Float;

/// Trace tolerance of the integrator.
pub const TRACE_TOLERANCE: f64 = 1e-6;
/// Largest population allowed in the two highest Fock levels.
pub const LEAKAGE_TOLERANCE: f64 = 1e-6;

/// Dense `dim × dim` density matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDensityMatrix {
    pub dim: usize,
    pub entries: Vec<Complex64>,
}

impl TruncatedDensityMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn superposition(state: SuperpositionState, dim: usize) -> Result<Self> {
        if state.max_photons() >= dim {
            return Err(Error::InvalidParameter("Fock cutoff below the initial state"));
        }
        let mut rho = Self::zeros(dim);
        for &a in &[state.n, state.m] {
            for &b in &[state.n, state.m] {
                rho.set(a, b, Complex64::new(0.5, 0.0));
            }
        }
        Ok(rho)
    }

    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::InvalidParameter("Fock cutoff below the initial state"));
        }
        let mut rho = Self::zeros(dim);
        rho.set(n, n, Complex64::new(1.0, 0.0));
        Ok(rho)
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.dim + k]
    }

    pub fn set(&mut self, j: usize, k: usize, value: Complex64) {
        self.entries[j * self.dim + k] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|j| self.get(j, j).re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.dim {
            for k in j..self.dim {
                worst = worst.max((self.get(j, k) - self.get(k, j).conj()).norm());
            }
        }
        worst
    }

    /// Population of the two highest levels.
    pub fn leakage(&self) -> f64 {
        let d = self.dim;
        (d.saturating_sub(2)..d).map(|j| self.get(j, j).re.abs()).sum()
    }

    /// Offsets `j − k ≥ 0` with a nonzero entry.
    pub fn occupied_offsets(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&d| (0..self.dim - d).any(|k| self.get(k + d, k) != Complex64::new(0.0, 0.0)))
            .collect()
    }

    /// Whether `ρ + tol·I` admits a Cholesky factorization, i.e. the
    /// smallest eigenvalue is at least `−tol`.
    pub fn is_positive_within(&self, tol: f64) -> bool {
        let n = self.dim;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut diag = self.get(j, j).re + tol;
            for p in 0..j {
                diag -= l[j * n + p].norm_sqr();
            }
            if !(diag > 0.0) {
                return false;
            }
            let root = diag.sqrt();
            l[j * n + j] = Complex64::new(root, 0.0);
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for p in 0..j {
                    s -= l[i * n + p] * l[j * n + p].conj();
                }
                l[i * n + j] = s / root;
            }
        }
        true
    }
}

/// Coefficients `(ω₀', γ, γ̃)` at any time within the solved range.
pub trait CoefficientSource {
    fn start(&self) -> f64;
    fn end(&self) -> f64;
    fn at(&self, t: f64) -> Result<(f64, f64, f64)>;
    /// Upper bounds of `|ω₀'|`, `|γ|`, `|γ̃|` over the range.
    fn bounds(&self) -> Result<(f64, f64, f64)>;
}

impl CoefficientSource for MasterCoefficients {
    fn start(&self) -> f64 {
        self.grid.t0
    }

    fn end(&self) -> f64 {
        self.grid.end()
    }

    fn at(&self, t: f64) -> Result<(f64, f64, f64)> {
        MasterCoefficients::at(self, t)
    }

    fn bounds(&self) -> Result<(f64, f64, f64)> {
        let max = |s: &[Option<f64>]| -> Result<f64> {
            s.iter().enumerate().try_fold(0.0f64, |a, (k, v)| {
                v.map(|x| a.max(x.abs())).ok_or(Error::UndefinedCoefficient(k))
            })
        };
        Ok((max(&self.omega0_prime)?, max(&self.gamma)?, max(&self.gamma_tilde)?))
    }
}

/// Constant coefficients, for limits and tests.
#[derive(Debug, Clone, Copy)]
pub struct ConstantCoefficients {
    pub omega0_prime: f64,
    pub gamma: f64,
    pub gamma_tilde: f64,
    pub horizon: f64,
}

impl CoefficientSource for ConstantCoefficients {
    fn start(&self) -> f64 {
        0.0
    }

    fn end(&self) -> f64 {
        self.horizon
    }

    fn at(&self, _t: f64) -> Result<(f64, f64, f64)> {
        Ok((self.omega0_prime, self.gamma, self.gamma_tilde))
    }

    fn bounds(&self) -> Result<(f64, f64, f64)> {
        Ok((self.omega0_prime.abs(), self.gamma.abs(), self.gamma_tilde.abs()))
    }
}

/// One diagonal `c_i = ρ_{i+d, i}`.
struct Diagonal {
    offset: usize,
    values: Vec<Complex64>,
}

fn generator(d: usize, c: &[Complex64], (w, g, gt): (f64, f64, f64), out: &mut [Complex64]) {
    let len = c.len();
    let rot = Complex64::new(0.0, -w * d as f64);
    for i in 0..len {
        let (j, k) = ((i + d) as f64, i as f64);
        let up = if i + 1 < len { c[i + 1] } else { Complex64::new(0.0, 0.0) };
        let down = if i > 0 { c[i - 1] } else { Complex64::new(0.0, 0.0) };
        let s_up = ((j + 1.0) * (k + 1.0)).sqrt();
        let s_down = (j * k).sqrt();
        out[i] = rot * c[i] + (up * (2.0 * s_up) - c[i] * (j + k)) * g
            + (up * s_up + down * s_down - c[i] * (j + k + 1.0)) * gt;
    }
}

/// Fixed-step RK4 from the start of `coeffs` to each of `times` (ascending).
///
/// The step is the smaller of `max_step` and a stability bound from the
/// largest coefficients and the Fock cutoff.
pub fn evolve<C: CoefficientSource>(
    coeffs: &C,
    rho0: &TruncatedDensityMatrix,
    times: &[f64],
    max_step: f64,
) -> Result<Vec<TruncatedDensityMatrix>> {
    let dim = rho0.dim;
    let (wb, gb, gtb) = coeffs.bounds()?;
    let stiffness = wb * dim as f64 + (4.0 * gb + 2.0 * gtb) * (dim as f64 + 1.0);
    let stable = if stiffness > 0.0 { 1.0 / stiffness } else { f64::INFINITY };
    let h_max = max_step.min(stable);

    let mut diags: Vec<Diagonal> = rho0
        .occupied_offsets()
        .into_iter()
        .map(|d| Diagonal {
            offset: d,
            values: (0..dim - d).map(|i| rho0.get(i + d, i)).collect(),
        })
        .collect();

    let mut t = coeffs.start();
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        if target < t - 1e-12 || target > coeffs.end() + 1e-12 {
            return Err(Error::OutOfRange {
                time: target,
                start: coeffs.start(),
                end: coeffs.end(),
            });
        }
        let span = (target - t).max(0.0);
        let steps = (span / h_max).ceil() as usize;
        if steps > 0 {
            let h = span / steps as f64;
            for _ in 0..steps {
                let c0 = coeffs.at(t)?;
                let c1 = coeffs.at((t + 0.5 * h).min(coeffs.end()))?;
                let c2 = coeffs.at((t + h).min(coeffs.end()))?;
                for diag in diags.iter_mut() {
                    rk4_step(diag, h, c0, c1, c2);
                }
                t += h;
            }
        }
        t = target;
        let mut rho = TruncatedDensityMatrix::zeros(dim);
        for diag in &diags {
            for (i, &c) in diag.values.iter().enumerate() {
                rho.set(i + diag.offset, i, c);
                rho.set(i, i + diag.offset, c.conj());
            }
        }
        let drift = (rho.trace() - 1.0).abs();
        if drift > TRACE_TOLERANCE {
            return Err(Error::TraceDrift(drift));
        }
        let leak = rho.leakage();
        if leak > LEAKAGE_TOLERANCE {
            return Err(Error::Leakage(leak));
        }
        out.push(rho);
    }
    Ok(out)
}

fn rk4_step(diag: &mut Diagonal, h: f64, c0: (f64, f64, f64), c1: (f64, f64, f64), c2: (f64, f64, f64)) {
    let d = diag.offset;
    let n = diag.values.len();
    let zero = Complex64::new(0.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]);
    let y = &diag.values;
    generator(d, y, c0, &mut k1);
    for i in 0..n {
        tmp[i] = y[i] + k1[i] * (0.5 * h);
    }
    generator(d, &tmp, c1, &mut k2);
    for i in 0..n {
        tmp[i] = y[i] + k2[i] * (0.5 * h);
    }
    generator(d, &tmp, c1, &mut k3);
    for i in 0..n {
        tmp[i] = y[i] + k3[i] * h;
    }
    generator(d, &tmp, c2, &mut k4);
    for i in 0..n {
        diag.values[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
    }
}

/// `ρ(t)` at `times` for the initial superposition, with `n_max + 1` Fock levels.
pub fn integrate_master_equation(
    coeffs: &MasterCoefficients,
    state: SuperpositionState,
    n_max: usize,
    times: &[f64],
) -> Result<Vec<TruncatedDensityMatrix>> {
    if n_max < state.n + state.m + 8 {
        return Err(Error::InvalidParameter("Fock cutoff must be at least n + m + 8"));
    }
    let rho0 = TruncatedDensityMatrix::superposition(state, n_max + 1)?;
    evolve(coeffs, &rho0, times, coeffs.grid.dt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_limit_rotates_coherences() {
        let c = ConstantCoefficients {
            omega0_prime: 1.0,
            gamma: 0.0,
            gamma_tilde: 0.0,
            horizon: 3.0,
        };
        let st = SuperpositionState::new(0, 3).unwrap();
        let rho0 = TruncatedDensityMatrix::superposition(st, 12).unwrap();
        let out = evolve(&c, &rho0, &[0.0, 1.5, 3.0], 1e-3).unwrap();
        for (rho, &t) in out.iter().zip(&[0.0, 1.5, 3.0]) {
            assert!((rho.get(0, 0).re - 0.5).abs() < 1e-12);
            assert!((rho.get(3, 3).re - 0.5).abs() < 1e-12);
            let expect = Complex64::from_polar(0.5, -3.0 * t);
            assert!((rho.get(3, 0) - expect).norm() < 1e-10);
            assert!(rho.hermiticity_error() == 0.0);
        }
    }

    #[test]
    fn relaxes_to_thermal_state() {
        // Stationary coefficients: fixed point ρ_jj ∝ (n̄/(1+n̄))^j with
        // n̄ = γ̃/2γ.
        let (g, gt) = (0.2, 0.1);
        let nbar = gt / (2.0 * g);
        let c = ConstantCoefficients {
            omega0_prime: 1.0,
            gamma: g,
            gamma_tilde: gt,
            horizon: 150.0,
        };
        let st = SuperpositionState::new(1, 2).unwrap();
        let rho0 = TruncatedDensityMatrix::superposition(st, 30).unwrap();
        let rho = evolve(&c, &rho0, &[150.0], 1e-2).unwrap().pop().unwrap();
        let q = nbar / (1.0 + nbar);
        for j in 0..6 {
            let expect = (1.0 - q) * q.powi(j as i32);
            assert!((rho.get(j, j).re - expect).abs() < 1e-8, "level {j}");
        }
        assert!(rho.get(2, 1).norm() < 1e-8);
        assert!(rho.is_positive_within(1e-8));
    }

    #[test]
    fn truncation_errors_are_reported() {
        let c = ConstantCoefficients {
            omega0_prime: 1.0,
            gamma: 0.01,
            gamma_tilde: 5.0,
            horizon: 5.0,
        };
        let rho0 = TruncatedDensityMatrix::fock(0, 10).unwrap();
        let err = evolve(&c, &rho0, &[5.0], 1e-3).unwrap_err();
        assert!(matches!(err, Error::Leakage(_) | Error::TraceDrift(_)));
        assert!(TruncatedDensityMatrix::superposition(SuperpositionState::new(0, 12).unwrap(), 10).is_err());
    }

    #[test]
    fn positivity_check() {
        let mut rho = TruncatedDensityMatrix::fock(0, 3).unwrap();
        assert!(rho.is_positive_within(1e-8));
        rho.set(1, 1, Complex64::new(-1e-6, 0.0));
        assert!(!rho.is_positive_within(1e-8));
    }
}
