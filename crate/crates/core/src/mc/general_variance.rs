use super::{mc_mean, Estimate};
use crate::error::{Error, Result};
use crate::geometry::Window;
use crate::measure::DirectionalMeasure;
use crate::simulator::FaceFunctional;

const MAX_TANGENT_RESAMPLES: usize = 1_000;

/// Importance-sampling estimate of
/// `∫_{[W]} ζ²(n(H)) ∫∫_{W∩H} (1 - e^{-tΛ([xy])}) / Λ([xy]) dx dy Λ(dH)`,
/// the variance of `Σ_φ` for the tessellation at time `t` in `W`.
///
/// `H` is drawn from `Λ` restricted to `[W]`, `x, y` uniformly on `W ∩ H`; a
/// draw contributes `Λ([W]) Vol_{d-1}(W∩H)² ζ² (1 - e^{-tΛ([xy])}) / Λ([xy])`.
pub fn mc_general_variance<W: Window>(
    window: &W,
    measure: &DirectionalMeasure,
    phi: &FaceFunctional,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<Estimate> {
    if n < 1_000 {
        return Err(Error::InvalidConfig(format!("need at least 1000 samples, got {n}")));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidConfig(format!("t must be positive, got {t}")));
    }
    let hitting = measure.body_hitting_measure(window)?;
    mc_mean(n, seed, |rng| {
        for _ in 0..MAX_TANGENT_RESAMPLES {
            let h = measure.sample_hyperplane(window, rng)?;
            let zeta = phi.zeta(h.normal());
            if zeta == 0.0 {
                return Ok(0.0);
            }
            let Some(section) = window.section(&h) else { continue };
            let area = section.measure();
            let x = section.sample_point(rng);
            let y = section.sample_point(rng);
            let lam = measure.segment_hitting_measure(&x, &y)?;
            let kernel = if lam > 0.0 { -(-t * lam).exp_m1() / lam } else { t };
            return Ok(hitting * area * area * zeta * zeta * kernel);
        }
        Err(Error::RejectionCap(MAX_TANGENT_RESAMPLES))
    })
}
