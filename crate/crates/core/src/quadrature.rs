//! Adaptive Gauss–Kronrod quadrature.
//!
//! Used by the residual-life oracle and by the distributions that have no
//! closed form in part of their parameter space.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) and weights; the
// odd-indexed abscissae are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    /// `false` when the subdivision budget ran out before the tolerance was met.
    pub converged: bool,
    pub evaluations: usize,
}

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-9,
            rel: 1e-9,
            max_intervals: 4000,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            ..Self::default()
        }
    }
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod_sum = WGK[7] * fc;
    let mut gauss_sum = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod_sum += WGK[j] * pair;
        if j % 2 == 1 {
            gauss_sum += WG[j / 2] * pair;
        }
    }
    let value = kronrod_sum * half;
    let error = ((kronrod_sum - gauss_sum) * half).abs();
    Segment {
        lo,
        hi,
        value,
        error: if error.is_nan() { f64::INFINITY } else { error },
    }
}

/// Integrate `f` over the finite interval `[lo, hi]`, bisecting the segment
/// with the largest error estimate until the total estimate is within
/// `max(tol.abs, tol.rel · |value|)`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: Tolerance) -> Quadrature {
    let first = kronrod(&mut f, lo, hi);
    let mut value = first.value;
    let mut error = first.error;
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while error > tol.abs.max(tol.rel * value.abs()) {
        if heap.len() >= tol.max_intervals || !value.is_finite() {
            return Quadrature {
                value,
                abs_error: error,
                converged: false,
                evaluations,
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval can no longer be split in floating point
            heap.push(worst);
            return Quadrature {
                value,
                abs_error: error,
                converged: false,
                evaluations,
            };
        }
        let left = kronrod(&mut f, worst.lo, mid);
        let right = kronrod(&mut f, mid, worst.hi);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of the running updates
    let value = heap.iter().map(|s| s.value).sum();
    let abs_error = heap.iter().map(|s| s.error).sum();
    Quadrature {
        value,
        abs_error,
        converged: true,
        evaluations,
    }
}

/// Integrate `f` over `[start, ∞)` through `t = start + scale · u / (1 − u)`.
///
/// `scale` should be of the order of the integrand's decay length; it only
/// affects efficiency, not the value.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    scale: f64,
    tol: Tolerance,
) -> Quadrature {
    let mapped = |u: f64| {
        let one_minus = 1.0 - u;
        let t = start + scale * u / one_minus;
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v * scale / (one_minus * one_minus)
        }
    };
    integrate(mapped, 0.0, 1.0, tol)
}
