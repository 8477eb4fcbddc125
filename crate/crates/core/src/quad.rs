//! Adaptive Gauss–Kronrod quadrature and Gauss–Legendre node generation.
//!
//! The adaptive driver is the classic globally adaptive scheme: keep a list
//! of subintervals, always bisect the one with the largest error estimate,
//! stop once the summed estimate meets `max(abs_tol, rel_tol·|I|)`.
//! Subintervals are summed in interval order, so results do not depend on
//! the refinement history beyond the final partition.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Tolerances for every adaptive integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 4000,
        }
    }
}

impl QuadConfig {
    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value)
    }
}

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    const ZERO: Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

// Kronrod 21-point abscissae on [-1, 1]; odd indices are the embedded
// 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_808_185_945_185,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Single 21-point Gauss–Kronrod panel.
pub fn gauss_kronrod<T, F>(f: &mut F, a: f64, b: f64) -> Estimate<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::ZERO;
    let mut abs_sum = fc.magnitude() * WGK[10];
    let mut fvals = [T::ZERO; 20];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fvals[2 * j] = f1;
        fvals[2 * j + 1] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[j];
        abs_sum += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[10];
    for j in 0..10 {
        asc += ((fvals[2 * j] - mean).magnitude() + (fvals[2 * j + 1] - mean).magnitude()) * WGK[j];
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && error != 0.0 {
        let scale = (200.0 * error / res_asc).powf(1.5);
        error = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Estimate { value, error }
}

struct Segment<T> {
    a: f64,
    b: f64,
    est: Estimate<T>,
}

/// Globally adaptive integration over `[a, b]`.
pub fn integrate<T, F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Estimate<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_with_breaks(&mut f, &[a, b], cfg)
}

/// Adaptive integration over consecutive intervals `breaks[i]..breaks[i+1]`.
///
/// Interior break points let the caller put known features (kinks, peaks,
/// singular endpoints) at panel boundaries.
pub fn integrate_with_breaks<T, F>(f: &mut F, breaks: &[f64], cfg: &QuadConfig) -> Result<Estimate<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let mut segments: Vec<Segment<T>> = breaks
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| Segment {
            a: w[0],
            b: w[1],
            est: gauss_kronrod(f, w[0], w[1]),
        })
        .collect();
    if segments.is_empty() {
        return Ok(Estimate {
            value: T::ZERO,
            error: 0.0,
        });
    }

    loop {
        let (value, error) = total(&segments);
        let target = cfg.target(value.magnitude());
        if error <= target {
            return Ok(Estimate { value, error });
        }
        if segments.len() >= cfg.max_subdivisions {
            return Err(Error::Convergence {
                error,
                tolerance: target,
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.est.error.total_cmp(&y.1.est.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let Segment { a, b, .. } = segments[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval cannot be split further in floating point.
            return Err(Error::Convergence {
                error,
                tolerance: target,
            });
        }
        let left = Segment {
            a,
            b: mid,
            est: gauss_kronrod(f, a, mid),
        };
        let right = Segment {
            a: mid,
            b,
            est: gauss_kronrod(f, mid, b),
        };
        segments[worst] = left;
        segments.insert(worst + 1, right);
    }
}

fn total<T: QuadValue>(segments: &[Segment<T>]) -> (T, f64) {
    segments.iter().fold((T::ZERO, 0.0), |(v, e), s| {
        (v + s.est.value, e + s.est.error)
    })
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed composite Gauss–Legendre rule over the panels `breaks`, returned as
/// `(node, weight)` pairs in ascending node order.
pub fn composite_gauss_legendre(breaks: &[f64], order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let mut out = Vec::with_capacity(order * breaks.len());
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        if b <= a {
            continue;
        }
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        for i in (0..order).rev() {
            out.push((c + h * x[i], h * w[i]));
        }
    }
    out
}
