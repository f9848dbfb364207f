//! Unit-ball volumes and the derived constants used throughout.

use std::f64::consts::PI;

/// Volume of the `j`-dimensional unit ball, `π^{j/2} / Γ(j/2 + 1)`.
///
/// Evaluated through the recursion `κ_j = (2π / j) κ_{j-2}` from `κ_0 = 1`,
/// `κ_1 = 2`, which is exact up to rounding of the products.
pub fn kappa(j: usize) -> f64 {
    match j {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / j as f64 * kappa(j - 2),
    }
}

/// `Γ(d/2)` for a positive integer `d`.
pub fn gamma_half(d: usize) -> f64 {
    assert!(d >= 1, "gamma_half needs d >= 1");
    if d.is_multiple_of(2) {
        // (d/2 - 1)!
        (1..d / 2).map(|k| k as f64).product()
    } else {
        // Γ(1/2) = √π, Γ(x + 1) = x Γ(x)
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x < d as f64 / 2.0 - 0.25 {
            g *= x;
            x += 1.0;
        }
        g
    }
}

/// Surface area of the unit sphere in `R^d`, `d κ_d`.
pub fn sphere_area(d: usize) -> f64 {
    d as f64 * kappa(d)
}

/// The isotropic segment constant `2 κ_{d-1} / (d κ_d)`: the isotropic
/// hitting measure of a segment per unit length.
///
/// Equals `2/π` for `d = 2` and `1/2` for `d = 3`.
pub fn segment_constant(d: usize) -> f64 {
    2.0 * kappa(d - 1) / (d as f64 * kappa(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensional_balls() {
        assert!((kappa(1) - 2.0).abs() < 1e-14);
        assert!((kappa(2) - PI).abs() < 1e-14);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((kappa(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn kappa_matches_gamma_form() {
        for j in 1..12 {
            let via_gamma = PI.powf(j as f64 / 2.0) / gamma_half(j + 2);
            assert!((kappa(j) - via_gamma).abs() < 1e-13 * via_gamma, "j = {j}");
        }
    }

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(3) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(gamma_half(6), 2.0);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn segment_constants() {
        assert!((segment_constant(2) - 2.0 / PI).abs() < 1e-15);
        assert!((segment_constant(3) - 0.5).abs() < 1e-15);
    }
}
