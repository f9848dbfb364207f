use super::{mc_mean, Estimate};
use crate::geometry::Region;
use crate::rng::unit_vector;

/// `γ̄_W(r) = Vol_d(W) · P(x + r u ∈ W)` with `x` uniform in `W` and `u`
/// uniform on the sphere.
pub fn mc_covariance<W: Region>(window: &W, r: f64, n: usize, seed: u64) -> Estimate {
    let vol = window.volume();
    let dim = window.dim();
    mc_mean(n, seed, |rng| {
        let x = window.sample_point(rng);
        let u = unit_vector(dim, rng);
        Ok(if window.contains(&(x + u * r)) { vol } else { 0.0 })
    })
    .expect("covariance sampling is infallible")
}
