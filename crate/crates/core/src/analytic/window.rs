use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, integrate_tol};
use crate::constants::kappa;
use crate::error::{Error, Result};
use crate::geometry::{point_from, ConvexBody, ConvexPolytope};

/// Tolerance of the angular quadratures behind box (`d = 3`) and generic
/// set covariances.
const ANGULAR_TOL: f64 = 1e-12;

/// Symbolic window description, so analytic formulas can use closed forms
/// when the shape allows it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum WindowSpec {
    Ball { d: usize, radius: f64 },
    /// Axis-parallel box with the given side lengths (its dimension is the
    /// number of sides).
    Box { sides: Vec<f64> },
    Generic(ConvexPolytope),
}

impl WindowSpec {
    pub fn ball(d: usize, radius: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::UnsupportedDimension(d));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidConfig(format!("ball radius must be positive, got {radius}")));
        }
        Ok(WindowSpec::Ball { d, radius })
    }

    pub fn cube(d: usize, side: f64) -> Result<Self> {
        Self::boxed(vec![side; d])
    }

    pub fn boxed(sides: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&sides.len()) {
            return Err(Error::UnsupportedDimension(sides.len()));
        }
        if sides.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidConfig(format!("box sides must be positive, got {sides:?}")));
        }
        Ok(WindowSpec::Box { sides })
    }

    pub fn dim(&self) -> usize {
        match self {
            WindowSpec::Ball { d, .. } => *d,
            WindowSpec::Box { sides } => sides.len(),
            WindowSpec::Generic(p) => p.dim(),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            WindowSpec::Ball { d, radius } => kappa(*d) * radius.powi(*d as i32),
            WindowSpec::Box { sides } => sides.iter().product(),
            WindowSpec::Generic(p) => p.volume(),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            WindowSpec::Ball { radius, .. } => 2.0 * radius,
            WindowSpec::Box { sides } => sides.iter().map(|s| s * s).sum::<f64>().sqrt(),
            WindowSpec::Generic(p) => p.diameter(),
        }
    }

    /// `R · W`.
    pub fn scaled(&self, s: f64) -> Self {
        match self {
            WindowSpec::Ball { d, radius } => WindowSpec::Ball { d: *d, radius: radius * s },
            WindowSpec::Box { sides } => WindowSpec::Box { sides: sides.iter().map(|x| x * s).collect() },
            WindowSpec::Generic(p) => WindowSpec::Generic(p.scaled(s)),
        }
    }

    /// Polytope realisation for the simulator. Balls have none.
    pub fn to_polytope(&self) -> Option<ConvexPolytope> {
        match self {
            WindowSpec::Ball { .. } => None,
            WindowSpec::Box { sides } => ConvexPolytope::axis_box(&vec![0.0; sides.len()], sides).ok(),
            WindowSpec::Generic(p) => Some(p.clone()),
        }
    }

    /// Points where `γ̄_W` is not smooth, useful as quadrature breakpoints.
    pub(crate) fn kinks(&self) -> Vec<f64> {
        match self {
            WindowSpec::Ball { .. } => vec![],
            WindowSpec::Box { sides } => {
                let mut k = sides.clone();
                if sides.len() == 3 {
                    for i in 0..3 {
                        for j in i + 1..3 {
                            k.push(sides[i].hypot(sides[j]));
                        }
                    }
                }
                k
            }
            WindowSpec::Generic(_) => vec![],
        }
    }
}

impl From<ConvexPolytope> for WindowSpec {
    fn from(p: ConvexPolytope) -> Self {
        WindowSpec::Generic(p)
    }
}

/// Isotropized set covariance `γ̄_W(r)`, the rotational average of
/// `Vol_d(W ∩ (W + r u))`.
///
/// Balls in `d = 2, 3` and planar boxes use closed forms. Boxes in `d = 3`
/// integrate the product form over the sphere, generic polytopes integrate
/// exact intersection volumes over directions.
pub fn isotropized_covariance(w: &WindowSpec, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidConfig(format!("lag must be nonnegative, got {r}")));
    }
    if r >= w.diameter() {
        return Ok(0.0);
    }
    if r == 0.0 {
        return Ok(w.volume());
    }
    match w {
        WindowSpec::Ball { d: 2, radius } => Ok(ball2(*radius, r)),
        WindowSpec::Ball { d: 3, radius } => Ok(ball3(*radius, r)),
        WindowSpec::Ball { d, radius } => Ok(ball_general(*d, *radius, r)),
        WindowSpec::Box { sides } if sides.len() == 2 => Ok(box2(sides[0], sides[1], r)),
        WindowSpec::Box { sides } => box3(sides, r),
        WindowSpec::Generic(p) => generic(p, r),
    }
}

fn ball2(radius: f64, r: f64) -> f64 {
    let q = r / (2.0 * radius);
    2.0 * radius * radius * q.acos() - 0.5 * r * (4.0 * radius * radius - r * r).sqrt()
}

fn ball3(radius: f64, r: f64) -> f64 {
    let q = r / radius;
    kappa(3) * radius.powi(3) * (1.0 - 0.75 * q + q.powi(3) / 16.0)
}

/// Lens volume of two unit-radius balls at distance `r`, any dimension:
/// `2 κ_{d-1} ∫_{r/2}^{1} (1 - x²)^{(d-1)/2} dx`, scaled.
fn ball_general(d: usize, radius: f64, r: f64) -> f64 {
    let h = r / (2.0 * radius);
    let cap = integrate(|x| (1.0 - x * x).max(0.0).powf((d as f64 - 1.0) / 2.0), &[h, 1.0], 1e-13)
        .expect("smooth cap integral");
    2.0 * kappa(d - 1) * cap * radius.powi(d as i32)
}

/// Rectangle `a × b`: averages `(a - r|cos θ|)(b - r|sin θ|)` over the
/// directions where both factors stay positive.
fn box2(a: f64, b: f64, r: f64) -> f64 {
    let lo = (a / r).min(1.0).acos();
    let hi = (b / r).min(1.0).asin();
    if lo >= hi {
        return 0.0;
    }
    let f = |th: f64| a * b * th + a * r * th.cos() - b * r * th.sin() + 0.5 * r * r * th.sin().powi(2);
    (2.0 / PI) * (f(hi) - f(lo))
}

fn box3(sides: &[f64], r: f64) -> Result<f64> {
    let (a, b, c) = (sides[0], sides[1], sides[2]);
    // polar angle from the z axis: c - r cos θ > 0 needs θ > acos(c/r)
    let th_lo = (c / r).min(1.0).acos();
    let inner = |th: f64| -> f64 {
        let (s, cz) = th.sin_cos();
        let fz = c - r * cz;
        if fz <= 0.0 || s == 0.0 {
            return 0.0;
        }
        let rs = r * s;
        let lo = (a / rs).min(1.0).acos();
        let hi = (b / rs).min(1.0).asin();
        if lo >= hi {
            return 0.0;
        }
        let f = |ph: f64| a * b * ph + a * rs * ph.cos() - b * rs * ph.sin() + 0.5 * rs * rs * ph.sin().powi(2);
        fz * (f(hi) - f(lo)) * s
    };
    let mut pts = vec![th_lo, PI / 2.0];
    for edge in [a, b, a.hypot(b)] {
        if edge < r {
            let th = (edge / r).asin();
            if th > th_lo && th < PI / 2.0 {
                pts.push(th);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    // octant average: 8 / (4π)
    Ok(2.0 / PI * integrate_tol(inner, &pts, ANGULAR_TOL, ANGULAR_TOL * a * b * c)?)
}

fn lag_volume(p: &ConvexPolytope, z: &[f64]) -> f64 {
    let shift = point_from(z).expect("lag vector dimension");
    p.intersection(&p.translated(&shift)).map_or(0.0, |q| q.volume())
}

fn generic(p: &ConvexPolytope, r: f64) -> Result<f64> {
    match p.dim() {
        2 => {
            let f = |th: f64| lag_volume(p, &[r * th.cos(), r * th.sin()]);
            let pts: Vec<f64> = (0..=16).map(|k| PI * k as f64 / 16.0).collect();
            Ok(integrate_tol(f, &pts, ANGULAR_TOL, ANGULAR_TOL * p.volume())? / PI)
        }
        3 => {
            let vol = p.volume();
            // upper hemisphere suffices since γ_W(z) = γ_W(-z)
            let ring = |th: f64| -> Result<f64> {
                let (s, c) = th.sin_cos();
                let f = |ph: f64| lag_volume(p, &[r * s * ph.cos(), r * s * ph.sin(), r * c]);
                let pts: Vec<f64> = (0..=8).map(|k| PI * k as f64 / 4.0).collect();
                Ok(integrate_tol(f, &pts, 1e-9, 1e-12 * vol)? * s)
            };
            let pts: Vec<f64> = (0..=4).map(|k| PI * k as f64 / 8.0).collect();
            let v = integrate_tol(|th| ring(th).unwrap_or(f64::NAN), &pts, 1e-8, 1e-11 * vol)?;
            if v.is_nan() {
                return Err(Error::Quadrature { value: v, error: f64::INFINITY });
            }
            Ok(v / (2.0 * PI))
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ball_endpoints() {
        let b3 = WindowSpec::ball(3, 2.0).unwrap();
        assert_relative_eq!(isotropized_covariance(&b3, 0.0).unwrap(), 4.0 * PI / 3.0 * 8.0);
        let b2 = WindowSpec::ball(2, 1.5).unwrap();
        assert_eq!(isotropized_covariance(&b2, 3.0).unwrap(), 0.0);
        assert!(ball2(1.5, 3.0 - 1e-9).abs() < 1e-12);
        let b = WindowSpec::ball(3, 1.0).unwrap();
        assert_relative_eq!(isotropized_covariance(&b, 1.0).unwrap(), 4.0 * PI / 3.0 * 5.0 / 16.0, max_relative = 1e-14);
    }

    #[test]
    fn general_ball_lens_matches_closed_forms() {
        for r in [0.1, 0.7, 1.3, 1.9] {
            assert_relative_eq!(ball_general(2, 1.0, r), ball2(1.0, r), max_relative = 1e-10);
            assert_relative_eq!(ball_general(3, 1.0, r), ball3(1.0, r), max_relative = 1e-10);
        }
    }

    #[test]
    fn small_lag_square_expansion() {
        // for r ≤ min(a, b): ab − (2/π)(a + b) r + r²/π
        let (a, b, r) = (1.0, 2.0, 0.4);
        assert_relative_eq!(box2(a, b, r), a * b - 2.0 / PI * (a + b) * r + r * r / PI, max_relative = 1e-14);
    }

    #[test]
    fn generic_matches_box_closed_form() {
        let p = ConvexPolytope::axis_box(&[0.0, 0.0], &[1.0, 2.0]).unwrap();
        let g = WindowSpec::Generic(p);
        let b = WindowSpec::boxed(vec![1.0, 2.0]).unwrap();
        for r in [0.3, 1.0, 1.5, 2.1] {
            let (x, y) = (isotropized_covariance(&g, r).unwrap(), isotropized_covariance(&b, r).unwrap());
            assert_relative_eq!(x, y, max_relative = 1e-9, epsilon = 1e-12);
        }
    }

    #[test]
    fn cube_small_lag_slope() {
        // γ̄(r) = V − S r / 4 + O(r²) for convex bodies in R³
        let w = WindowSpec::cube(3, 1.0).unwrap();
        let r = 1e-5;
        let g = isotropized_covariance(&w, r).unwrap();
        assert_relative_eq!((1.0 - g) / r, 1.5, max_relative = 1e-4);
    }

    #[test]
    fn generic_cube_matches_box() {
        let p = ConvexPolytope::cube(1.0).unwrap();
        let g = WindowSpec::Generic(p);
        let b = WindowSpec::cube(3, 1.0).unwrap();
        for r in [0.5, 1.2] {
            let (x, y) = (isotropized_covariance(&g, r).unwrap(), isotropized_covariance(&b, r).unwrap());
            assert_relative_eq!(x, y, max_relative = 1e-6);
        }
    }

    #[test]
    fn monotone_nonincreasing() {
        for w in [WindowSpec::ball(2, 1.0).unwrap(), WindowSpec::boxed(vec![1.0, 3.0]).unwrap(), WindowSpec::cube(3, 1.0).unwrap()] {
            let mut prev = f64::INFINITY;
            for k in 0..=40 {
                let g = isotropized_covariance(&w, w.diameter() * k as f64 / 40.0).unwrap();
                assert!(g >= 0.0 && g <= prev + 1e-12, "{w:?} at {k}");
                prev = g;
            }
        }
    }
}
