use std::cell::RefCell;
use std::f64::consts::PI;

use super::quadrature::{geometric_points, integrate};
use super::window::{isotropized_covariance, WindowSpec};
use crate::constants::{gamma_half, kappa, segment_constant, sphere_area};
use crate::error::{Error, Result};

/// Relative tolerance of the radial quadratures.
pub const RADIAL_TOL: f64 = 1e-11;

/// Below this `tR` the closed 3-ball variance switches to its power series.
const BALL3_SERIES_BELOW: f64 = 1.0;

/// `(1 - e^{-x}) / x`, finite at 0.
pub(crate) fn one_minus_exp_over(x: f64) -> f64 {
    if x < 1e-8 {
        1.0 - 0.5 * x
    } else {
        -(-x).exp_m1() / x
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("t must be positive, got {t}")))
    }
}

/// `∫_0^{diam W} γ̄_W(r) h(r) dr` with breakpoints on the scale `scale`.
fn radial<F: Fn(f64) -> f64>(w: &WindowSpec, scale: f64, h: F) -> Result<f64> {
    let pts = geometric_points(scale, w.diameter(), &w.kinks());
    let failure = RefCell::new(None);
    let v = integrate(
        |r| match isotropized_covariance(w, r) {
            Ok(g) => g * h(r),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        &pts,
        RADIAL_TOL,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => v,
    }
}

/// Variance of the total surface area of an isotropic STIT tessellation with
/// surface density `t` in `W`:
///
/// `(d(d-1)κ_d / 2) ∫_0^∞ γ̄_W(r) r^{d-3} (1 - e^{-c t r}) dr`,
/// `c = 2κ_{d-1} / (dκ_d)`.
pub fn exact_variance(w: &WindowSpec, t: f64) -> Result<f64> {
    check_t(t)?;
    let d = w.dim();
    let ct = segment_constant(d) * t;
    let k = d as f64 * (d as f64 - 1.0) * kappa(d) / 2.0;
    // r^{d-3}(1 - e^{-ctr}) = ct · r^{d-2} · (1 - e^{-ctr}) / (ctr)
    let v = radial(w, 1.0 / ct, |r| ct * r.powi(d as i32 - 2) * one_minus_exp_over(ct * r))?;
    Ok(k * v)
}

/// Closed form of [`exact_variance`] for the 3-ball of radius `R`:
/// `(4π² / (3t⁴)) (x²(12 - 8x + 3x²) + 24(1 + x)e^{-x} - 24)` with `x = tR`.
///
/// For small `x` the bracket cancels to `O(x⁵)`, so it is summed as the
/// series `24 Σ_{n≥5} (-1)^{n+1} (n-1) xⁿ / n!` there.
pub fn variance_ball3d_closed(t: f64, radius: f64) -> Result<f64> {
    check_t(t)?;
    if !(radius > 0.0) {
        return Err(Error::InvalidConfig(format!("radius must be positive, got {radius}")));
    }
    let x = t * radius;
    // bracket / x⁴, so that tiny t cannot underflow through t⁴
    let scaled = if x < BALL3_SERIES_BELOW {
        let mut term = x / 120.0; // x^{n-4} / n!
        let mut sum = 0.0f64;
        let mut n = 5;
        while term.abs() > 1e-18 * sum.abs() || n < 8 {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * (n as f64 - 1.0) * term;
            n += 1;
            term *= x / n as f64;
        }
        24.0 * sum
    } else {
        (x * x * (12.0 - 8.0 * x + 3.0 * x * x) + 24.0 * (1.0 + x) * (-x).exp() - 24.0) / x.powi(4)
    };
    Ok(4.0 * PI * PI / 3.0 * radius.powi(4) * scaled)
}

/// `E_2(W) = ∫_W ∫_W ‖x - y‖^{-2} dx dy = dκ_d ∫ γ̄_W(r) r^{d-3} dr`, `d ≥ 3`.
pub fn energy2(w: &WindowSpec) -> Result<f64> {
    let d = w.dim();
    if d < 3 {
        return Err(Error::Divergent("the 2-energy diverges for planar windows".into()));
    }
    Ok(sphere_area(d) * radial(w, w.diameter(), |r| r.powi(d as i32 - 3))?)
}

/// `E_2(B_1^d) = 2π^d / ((d-1)(d-2) Γ(d/2)²)`.
pub fn energy2_ball(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::Divergent(format!("the 2-energy of the unit ball diverges in dimension {d}")));
    }
    let df = d as f64;
    Ok(2.0 * PI.powi(d as i32) / ((df - 1.0) * (df - 2.0) * gamma_half(d).powi(2)))
}

/// Chord-power integral `I_{d-1}(B_1^d) = d 2^{d-2} κ_d κ_{2d-2} / κ_{d-1}`.
pub fn chord_power_ball(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::Divergent(format!("chord-power relation needs d >= 3, got {d}")));
    }
    Ok(d as f64 * 2f64.powi(d as i32 - 2) * kappa(d) * kappa(2 * d - 2) / kappa(d - 1))
}

/// Large-window variance of `W_R = R·W`: `π Vol_2(W) R² log(tR)` in the
/// plane, `R^{2(d-1)} (d-1)/2 · E_2(W)` for `d ≥ 3`.
pub fn asymptotic_variance(w: &WindowSpec, radius: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    let d = w.dim();
    if d == 2 {
        Ok(PI * w.volume() * radius * radius * (t * radius).ln())
    } else {
        Ok(radius.powi(2 * (d as i32 - 1)) * (d as f64 - 1.0) / 2.0 * energy2(w)?)
    }
}

/// Variance through the pair-correlation function:
/// `dκ_d t² ∫ γ̄_W(r) (g_d(r) - 1) r^{d-1} dr`.
pub fn variance_via_pcf(w: &WindowSpec, t: f64) -> Result<f64> {
    check_t(t)?;
    let d = w.dim();
    let ct = segment_constant(d) * t;
    let v = radial(w, 1.0 / ct, |r| super::pcf::stit_excess(r, t, d) * r.powi(d as i32 - 1))?;
    Ok(sphere_area(d) * t * t * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ball(d: usize, r: f64) -> WindowSpec {
        WindowSpec::ball(d, r).unwrap()
    }

    #[test]
    fn closed_ball_value() {
        let v = variance_ball3d_closed(1.0, 1.0).unwrap();
        assert_relative_eq!(v, 4.0 * PI * PI / 3.0 * (48.0 / 1f64.exp() - 17.0), max_relative = 1e-13);
        assert!((v - 8.66).abs() < 0.01);
    }

    #[test]
    fn closed_ball_series_is_continuous() {
        let below = variance_ball3d_closed(1.0, BALL3_SERIES_BELOW * (1.0 - 1e-12)).unwrap();
        let above = variance_ball3d_closed(1.0, BALL3_SERIES_BELOW * (1.0 + 1e-12)).unwrap();
        assert_relative_eq!(below, above, max_relative = 1e-10);
    }

    #[test]
    fn closed_ball_small_t_limit() {
        // leading series term 24·(4/5!)·x⁵ = 0.8 x⁵
        let t = 1e-5;
        let v = variance_ball3d_closed(t, 1.0).unwrap();
        assert_relative_eq!(v / t, 4.0 * PI * PI / 3.0 * 0.8, max_relative = 1e-4);
        assert!(variance_ball3d_closed(1e-150, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn quadrature_matches_closed_ball() {
        for t in [0.5, 1.0, 2.0] {
            for r in [0.5, 1.0, 2.0] {
                let q = exact_variance(&ball(3, r), t).unwrap();
                let c = variance_ball3d_closed(t, r).unwrap();
                assert_relative_eq!(q, c, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn small_t_linearization() {
        // value / t → (d(d-1)κ_d/2) c ∫ γ̄ r^{d-2} dr, here π (2/π) ∫ γ̄ dr
        let w = ball(2, 1.0);
        let lin = integrate(|r| isotropized_covariance(&w, r).unwrap(), &[0.0, 2.0], 1e-13).unwrap();
        let expected = PI * (2.0 / PI) * lin;
        let t = 1e-6;
        assert_relative_eq!(exact_variance(&w, t).unwrap() / t, expected, max_relative = 1e-5);
    }

    #[test]
    fn scaling_identity() {
        for (w, d) in [(WindowSpec::cube(2, 1.0).unwrap(), 2), (ball(3, 1.0), 3), (ball(2, 0.7), 2)] {
            for t in [0.5, 2.0] {
                let r = 3.0;
                let lhs = exact_variance(&w.scaled(r), t).unwrap();
                let rhs = t.powi(2 - 2 * d) * exact_variance(&w.scaled(t * r), 1.0).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn monotone_in_t() {
        for w in [ball(2, 1.0), ball(3, 1.0)] {
            let vs: Vec<f64> = [0.5, 1.0, 2.0, 4.0].iter().map(|&t| exact_variance(&w, t).unwrap()).collect();
            assert!(vs.windows(2).all(|p| p[1] > p[0]), "{vs:?}");
        }
    }

    #[test]
    fn ball_energies() {
        assert_relative_eq!(energy2_ball(3).unwrap(), 4.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(chord_power_ball(3).unwrap(), 4.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(energy2_ball(4).unwrap(), PI.powi(4) / 3.0, max_relative = 1e-14);
        assert_relative_eq!(chord_power_ball(4).unwrap(), PI.powi(4), max_relative = 1e-14);
        for d in 3..=5 {
            let df = d as f64;
            let rel = 2.0 / ((df - 1.0) * (df - 2.0)) * chord_power_ball(d).unwrap();
            assert_relative_eq!(energy2_ball(d).unwrap(), rel, max_relative = 1e-12);
        }
        assert!(energy2_ball(2).is_err());
        assert!(chord_power_ball(2).is_err());
    }

    #[test]
    fn quadrature_energy_matches_ball() {
        for d in 3..=5 {
            assert_relative_eq!(energy2(&ball(d, 1.0)).unwrap(), energy2_ball(d).unwrap(), max_relative = 1e-9);
        }
        assert!(matches!(energy2(&ball(2, 1.0)), Err(Error::Divergent(_))));
    }

    #[test]
    fn asymptotic_examples() {
        let e = 1f64.exp();
        assert_relative_eq!(asymptotic_variance(&WindowSpec::cube(2, 1.0).unwrap(), e, 1.0).unwrap(), PI * e * e);
        assert_relative_eq!(asymptotic_variance(&ball(3, 1.0), 5.0, 1.0).unwrap(), 4.0 * PI * PI * 625.0, max_relative = 1e-9);
        for d in [3, 4] {
            let df = d as f64;
            let lhs = (df - 1.0) / 2.0 * energy2_ball(d).unwrap();
            let rhs = chord_power_ball(d).unwrap() / (df - 2.0);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn large_ball_ratio() {
        let v = variance_ball3d_closed(1.0, 1e3).unwrap();
        assert!((v / (4.0 * PI * PI * 1e12) - 1.0).abs() < 0.01);
    }

    #[test]
    fn planar_trend_toward_asymptotic() {
        let sq = WindowSpec::cube(2, 1.0).unwrap();
        let dev: Vec<f64> = [1e2, 1e3, 1e4, 1e5]
            .iter()
            .map(|&r| {
                let v = exact_variance(&sq.scaled(r), 1.0).unwrap();
                (v / (PI * r * r * r.ln()) - 1.0).abs()
            })
            .collect();
        assert!(dev.windows(2).all(|p| p[1] < p[0]), "{dev:?}");
    }

    #[test]
    fn pcf_path_agrees() {
        for w in [ball(2, 1.0), ball(3, 1.0), WindowSpec::cube(2, 2.0).unwrap()] {
            for t in [1.0, 2.0] {
                assert_relative_eq!(variance_via_pcf(&w, t).unwrap(), exact_variance(&w, t).unwrap(), max_relative = 1e-8);
            }
        }
        assert_relative_eq!(variance_via_pcf(&ball(3, 1.0), 1.0).unwrap(), variance_ball3d_closed(1.0, 1.0).unwrap(), max_relative = 1e-6);
    }

    #[test]
    fn rejects_bad_t() {
        assert!(exact_variance(&ball(2, 1.0), 0.0).is_err());
        assert!(variance_ball3d_closed(-1.0, 1.0).is_err());
    }
}
