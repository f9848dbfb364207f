//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_INTERVALS: usize = 20_000;
/// Absolute floor on the error target, relative to the L1 mass of the integrand.
const ABS_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    abs: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x), f(c + x));
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Piece { a, b, value: kronrod * h, abs: abs * h.abs(), error: ((kronrod - gauss) * h).abs() }
}

/// Integrates `f` over `[points[0], points[last]]`, with `points` giving the
/// initial subdivision (kinks and scale changes of the integrand belong here).
///
/// Refines the worst interval until the summed error estimate falls below
/// `rel_tol` times the L1 mass of `f`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, points: &[f64], rel_tol: f64) -> Result<f64> {
    integrate_tol(f, points, rel_tol, 0.0)
}

/// [`integrate`] that also stops once the error estimate is below `abs_tol`.
pub fn integrate_tol<F: Fn(f64) -> f64>(f: F, points: &[f64], rel_tol: f64, abs_tol: f64) -> Result<f64> {
    assert!(points.len() >= 2, "need at least one interval");
    let mut heap: BinaryHeap<Piece> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(&f, w[0], w[1]))
        .collect();
    loop {
        let (value, abs, error) = heap
            .iter()
            .fold((0.0, 0.0, 0.0), |(v, a, e), p| (v + p.value, a + p.abs, e + p.error));
        let target = (rel_tol * abs).max(ABS_FLOOR * abs).max(abs_tol).max(f64::MIN_POSITIVE);
        if error <= target {
            return Ok(value);
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Ok(0.0),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if heap.len() + 2 > MAX_INTERVALS || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            return Err(Error::Quadrature { value, error });
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
    }
}

/// Breakpoints `[0, s, 10 s, 100 s, …, end]` for integrands that change on
/// the scale `s` but extend to `end`.
pub fn geometric_points(scale: f64, end: f64, extra: &[f64]) -> Vec<f64> {
    let mut pts = vec![0.0, end];
    let mut x = scale;
    while x < end {
        pts.push(x);
        x *= 10.0;
    }
    pts.extend(extra.iter().copied().filter(|&e| e > 0.0 && e < end));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}
