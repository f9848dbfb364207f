use rand::Rng;
use rayon::prelude::*;

use super::stats::Moments;
use super::Estimate;
use crate::constants::sphere_area;
use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::rng::{derive_seed, stream, unit_vector};

/// Number of distance shells the 2-energy estimator stratifies over.
pub const ENERGY_STRATA: usize = 64;

/// `E_2(W) = ∫_W ∫_W ‖x - y‖^{-2} dx dy` for `d ≥ 3`.
///
/// Polar coordinates about `x` turn the integrand into
/// `Vol(W) · dκ_d · ∫_0^D P(x + ρu ∈ W) ρ^{d-3} dρ`. The radial integral is
/// stratified into equal shells of `[0, D]` with `n / ENERGY_STRATA` draws
/// each, and every draw evaluates the antithetic pair `x ± ρu`.
pub fn mc_energy2<W: Region>(window: &W, n: usize, seed: u64) -> Result<Estimate> {
    let dim = window.dim();
    if dim < 3 {
        return Err(Error::Divergent(format!(
            "the 2-energy ∫∫‖x-y‖^-2 diverges in dimension {dim}"
        )));
    }
    let per = (n / ENERGY_STRATA).max(2);
    let diam = window.diameter();
    let shell = diam / ENERGY_STRATA as f64;
    let scale = window.volume() * sphere_area(dim);
    let strata: Vec<Moments> = (0..ENERGY_STRATA)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(derive_seed(seed, k as u64));
            let mut m = Moments::default();
            for _ in 0..per {
                let rho = shell * (k as f64 + rng.random::<f64>());
                let x = window.sample_point(&mut rng);
                let u = unit_vector(dim, &mut rng);
                let hits = window.contains(&(x + u * rho)) as u8 + window.contains(&(x - u * rho)) as u8;
                m.push(scale * rho.powi(dim as i32 - 3) * f64::from(hits) / 2.0);
            }
            m
        })
        .collect();
    let value = strata.iter().map(|m| shell * m.mean).sum();
    let var: f64 = strata.iter().map(|m| shell * shell * m.variance() / m.n as f64).sum();
    Ok(Estimate { value, se: var.sqrt(), n: per * ENERGY_STRATA })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Ball, ConvexPolytope};

    #[test]
    fn planar_rejected() {
        assert!(matches!(mc_energy2(&ConvexPolytope::square(1.0).unwrap(), 1000, 1), Err(Error::Divergent(_))));
    }

    #[test]
    fn unit_ball_rough() {
        let e = mc_energy2(&Ball::centered(3, 1.0), 400_000, 1).unwrap();
        let exact = 4.0 * std::f64::consts::PI.powi(2);
        assert!(e.z_against(exact).abs() < 4.0, "{e:?}");
    }
}
