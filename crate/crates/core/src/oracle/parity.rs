//! Wigner function from a density matrix by displaced parity:
//! `W(z) = (2/π) Tr[ρ D(2z) Π] = (2/π) Σ_{jk} ρ_{jk} (−1)^j ⟨k|D(2z)|j⟩`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::oracle::master::TruncatedDensityMatrix;
use crate::special::ln_factorial;
use crate::wigner::{GridSpec, WignerField};
#[allow(unused_imports)]
use num_traits::Float;

/// `ℓ_i = ⟨i+δ|D(β)|i⟩ e^{−iδ arg β}` for `i = 0..len`:
/// `e^{−x/2} x^{δ/2} √(i!/(i+δ)!) L_i^{(δ)}(x)` with `x = |β|²`.
///
/// The Laguerre recurrence runs on a rescaled pair so that neither the
/// polynomial nor the Gaussian prefactor over- or underflows on its own.
pub fn displacement_band(delta: usize, x: f64, len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    if len == 0 {
        return out;
    }
    if x == 0.0 {
        if delta == 0 {
            out.iter_mut().for_each(|v| *v = 1.0);
        }
        return out;
    }
    let d = delta as f64;
    let base = -0.5 * x + 0.5 * d * x.ln();
    let mut scale = 0.0;
    let (mut prev, mut cur) = (0.0, 1.0);
    for (i, slot) in out.iter_mut().enumerate() {
        if i > 0 {
            let k = (i - 1) as f64;
            let next = ((2.0 * k + 1.0 + d - x) * cur - (k + d) * prev) / (k + 1.0);
            prev = cur;
            cur = next;
            let mag = cur.abs();
            if mag > 1e150 || (mag < 1e-150 && mag > 0.0) {
                prev /= mag;
                cur /= mag;
                scale += mag.ln();
            }
        }
        let ln_norm = 0.5 * (ln_factorial(i) - ln_factorial(i + delta));
        let ln_mag = base + ln_norm + scale;
        *slot = if cur == 0.0 { 0.0 } else { cur * ln_mag.exp() };
    }
    out
}

/// `W(z)` of `rho`. Only the diagonals `j − k` that hold nonzero entries
/// are visited.
pub fn wigner_at(rho: &TruncatedDensityMatrix, offsets: &[usize], z: Complex64) -> f64 {
    let beta = z * 2.0;
    let x = beta.norm_sqr();
    let phase = beta.arg();
    let dim = rho.dim;
    let mut total = 0.0;
    for &d in offsets {
        let band = displacement_band(d, x, dim - d);
        if d == 0 {
            for (j, b) in band.iter().enumerate() {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * rho.get(j, j).re * b;
            }
            continue;
        }
        // ρ_{i+d,i} ⟨i|D|i+d⟩ (−1)^{i+d} + ρ_{i,i+d} ⟨i+d|D|i⟩ (−1)^i,
        // with ⟨i|D|i+d⟩ = (−1)^d ℓ_i e^{−idφ} and ⟨i+d|D|i⟩ = ℓ_i e^{idφ}.
        let rot = Complex64::from_polar(1.0, d as f64 * phase);
        for (i, b) in band.iter().enumerate() {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let lower = rho.get(i + d, i) * rot.conj();
            let upper = rho.get(i, i + d) * rot;
            total += sign * b * (lower + upper).re;
        }
    }
    2.0 / PI * total
}

/// `W` of `rho` on the square grid of `grid`, using `half_width` directly.
pub fn wigner_from_density_matrix(
    rho: &TruncatedDensityMatrix,
    grid: &GridSpec,
    half_width: f64,
    time: f64,
    label: String,
) -> Result<WignerField> {
    let offsets = rho.occupied_offsets();
    let axis = grid.axis(half_width);
    WignerField::sample(axis.clone(), axis, time, label, |z| Ok(wigner_at(rho, &offsets, z)))
}

/// Whether the grid reaches displacements where the Fock cutoff starts to
/// matter (`|2z|² ≳ n_max`).
pub fn truncation_warning(rho: &TruncatedDensityMatrix, half_width: f64) -> bool {
    let reach = 4.0 * 2.0 * half_width * half_width;
    reach > 0.5 * rho.dim as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::{w_superposition, SuperpositionState};

    #[test]
    fn displacement_rows_are_unitary() {
        // Σ_k |⟨k|D|j⟩|² = 1 for a column j far below the cutoff.
        let x: f64 = 6.3;
        let dim = 200;
        for j in [0usize, 3, 10] {
            let mut sum = 0.0;
            for d in 0..dim - j {
                let b = displacement_band(d, x, j + 1);
                sum += b[j] * b[j];
            }
            for d in 1..=j {
                let b = displacement_band(d, x, j - d + 1);
                sum += b[j - d] * b[j - d];
            }
            assert!((sum - 1.0).abs() < 1e-12, "column {j}: {sum}");
        }
    }

    #[test]
    fn vacuum_and_one_photon() {
        let grid = GridSpec::new(3.0, 31, false).unwrap();
        let rho = TruncatedDensityMatrix::fock(0, 10).unwrap();
        let f = wigner_from_density_matrix(&rho, &grid, 3.0, 0.0, String::new()).unwrap();
        for (i, &x) in f.re_grid.iter().enumerate() {
            for (j, &y) in f.im_grid.iter().enumerate() {
                let exact = 2.0 / PI * (-2.0 * (x * x + y * y)).exp();
                assert!((f.get(i, j) - exact).abs() < 1e-14);
            }
        }
        let one = TruncatedDensityMatrix::fock(1, 10).unwrap();
        let w = wigner_at(&one, &[0], Complex64::new(0.0, 0.0));
        assert!((w + 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn matches_closed_form_superpositions() {
        for &(n, m) in &[(0, 3), (2, 3), (1, 4)] {
            let st = SuperpositionState::new(n, m).unwrap();
            let rho = TruncatedDensityMatrix::superposition(st, 40).unwrap();
            let offsets = rho.occupied_offsets();
            for k in 0..50 {
                let z = Complex64::from_polar(0.06 * k as f64, 0.37 * k as f64);
                let a = wigner_at(&rho, &offsets, z);
                let b = w_superposition(st, z, Complex64::new(1.0, 0.0), 0.0).unwrap();
                assert!((a - b).abs() < 1e-8, "({n},{m}) z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn large_displacements_do_not_overflow() {
        let band = displacement_band(2, 900.0, 400);
        assert!(band.iter().all(|v| v.is_finite() && v.abs() <= 1.0));
        assert!(band.iter().any(|v| v.abs() > 1e-3));
    }
}
