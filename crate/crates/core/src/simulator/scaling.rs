use super::{construct, Tessellation};
use crate::error::Result;
use crate::geometry::ConvexPolytope;
use crate::mc::{replicate_values, SampleSummary};
use crate::measure::DirectionalMeasure;
use crate::rng::derive_seed;

/// Two-sample comparison of `t · Y(t, W/t)` against `Y(1, W)`.
#[derive(Clone, Debug)]
pub struct ScalingReport {
    pub t: f64,
    /// Total surface of `Y(1, W)`.
    pub reference: SampleSummary,
    /// Total surface of `t · Y(t, W/t)`.
    pub rescaled: SampleSummary,
    pub mean_z: f64,
    pub variance_z: f64,
}

impl ScalingReport {
    pub fn passed(&self, z_max: f64) -> bool {
        self.mean_z.abs() <= z_max && self.variance_z.abs() <= z_max
    }
}

/// Builds `t · Y(t, W/t)` from a seed.
pub fn rescaled_replicate(window: &ConvexPolytope, measure: &DirectionalMeasure, t: f64, seed: u64) -> Result<Tessellation> {
    Ok(construct(&window.scaled(1.0 / t), measure, t, seed)?.scaled(t))
}

/// Compares total-surface mean and variance of `t · Y(t, W/t)` and
/// `Y(1, W)` over independent replicate sets.
pub fn scaling_check(
    window: &ConvexPolytope,
    measure: &DirectionalMeasure,
    t: f64,
    replicates: usize,
    seed: u64,
) -> Result<ScalingReport> {
    let ref_seed = derive_seed(seed, 0);
    let scaled_seed = derive_seed(seed, 1);
    let reference = replicate_values(replicates, ref_seed, |s| Ok(construct(window, measure, 1.0, s)?.total_surface()))?;
    let rescaled = replicate_values(replicates, scaled_seed, |s| Ok(rescaled_replicate(window, measure, t, s)?.total_surface()))?;
    let reference = SampleSummary::from_values(&reference);
    let rescaled = SampleSummary::from_values(&rescaled);
    Ok(ScalingReport {
        t,
        mean_z: reference.mean_z(&rescaled),
        variance_z: reference.variance_z(&rescaled),
        reference,
        rescaled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_factor_is_identical() {
        let w = ConvexPolytope::square(1.0).unwrap();
        let iso = DirectionalMeasure::isotropic(2).unwrap();
        let a = rescaled_replicate(&w, &iso, 1.0, 42).unwrap();
        let b = construct(&w, &iso, 1.0, 42).unwrap();
        assert_eq!(a, b);
    }
}
