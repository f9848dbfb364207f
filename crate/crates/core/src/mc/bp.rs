use std::sync::Arc;

use super::{mc_mean, Estimate};
use crate::constants::{kappa, sphere_area};
use crate::error::Result;
use crate::geometry::{Point, Region, Window};
use crate::measure::DirectionalMeasure;
use crate::rng::{derive_seed, unit_vector};

pub type PairFn = Arc<dyn Fn(&Point, &Point) -> f64 + Send + Sync>;

/// Integrand `g(x, y)` of the two-sided transformation check.
#[derive(Clone)]
pub enum TestFunction {
    One,
    Zero,
    /// `e^{-‖x - y‖}`
    ExpDistance,
    Custom(PairFn),
}

impl TestFunction {
    pub fn eval(&self, x: &Point, y: &Point) -> f64 {
        match self {
            TestFunction::One => 1.0,
            TestFunction::Zero => 0.0,
            TestFunction::ExpDistance => (-(x - y).norm()).exp(),
            TestFunction::Custom(f) => f(x, y),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BpReport {
    /// `∫_{[W]} ∫∫_{W∩H} g dx dy Λ_iso(dH)` by hyperplane sampling.
    pub lhs: Estimate,
    /// `((d-1) κ_{d-1} / (d κ_d)) ∫_W ∫_W g(x,y) / ‖x-y‖ dx dy` by polar sampling.
    pub rhs: Estimate,
    /// `(lhs - rhs)` in combined standard errors.
    pub z: f64,
}

/// Estimates both sides of the hyperplane/point-pair transformation formula
/// for the isotropic measure with independent samplers.
///
/// The right side is sampled in polar coordinates about `x`: `y = x + ρu`
/// with `ρ` uniform on `[0, diam W]`, which cancels the `1/‖x-y‖` singularity
/// and keeps the estimator bounded.
pub fn bp_check<W: Window>(window: &W, g: &TestFunction, n: usize, seed: u64) -> Result<BpReport> {
    let dim = Region::dim(window);
    let iso = DirectionalMeasure::isotropic(dim)?;
    let hitting = iso.body_hitting_measure(window)?;
    let lhs = mc_mean(n, derive_seed(seed, 0), |rng| {
        let h = iso.sample_hyperplane(window, rng)?;
        let Some(section) = window.section(&h) else { return Ok(0.0) };
        let area = section.measure();
        let x = section.sample_point(rng);
        let y = section.sample_point(rng);
        Ok(hitting * area * area * g.eval(&x, &y))
    })?;

    let constant = (dim - 1) as f64 * kappa(dim - 1) / (dim as f64 * kappa(dim));
    let diam = Region::diameter(window);
    let scale = constant * window.volume() * sphere_area(dim) * diam;
    let rhs = mc_mean(n, derive_seed(seed, 1), |rng| {
        let x = window.sample_point(rng);
        let u = unit_vector(dim, rng);
        let rho = diam * rand::Rng::random::<f64>(rng);
        let y = x + u * rho;
        if !window.contains(&y) {
            return Ok(0.0);
        }
        Ok(scale * rho.powi(dim as i32 - 2) * g.eval(&x, &y))
    })?;
    Ok(BpReport { lhs, rhs, z: lhs.z_between(&rhs) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexPolytope;

    #[test]
    fn zero_function() {
        let w = ConvexPolytope::square(1.0).unwrap();
        let r = bp_check(&w, &TestFunction::Zero, 10_000, 3).unwrap();
        assert_eq!(r.lhs.value, 0.0);
        assert_eq!(r.rhs.value, 0.0);
        assert_eq!(r.z, 0.0);
    }

    #[test]
    fn unit_square_small_run() {
        let w = ConvexPolytope::square(1.0).unwrap();
        let r = bp_check(&w, &TestFunction::One, 200_000, 5).unwrap();
        assert!(r.z.abs() < 4.0, "{r:?}");
    }
}
