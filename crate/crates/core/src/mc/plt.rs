use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::geometry::{Ball, ConvexBody, ConvexPolytope, Facet};
use crate::measure::DirectionalMeasure;
use crate::rng::stream;

/// Segments of an isotropic Poisson line process with length density `t`,
/// clipped to a planar window.
///
/// Lines are drawn in the circumscribed disk of the window (their number is
/// Poisson with mean `t Λ_iso([disk])`) and kept when they cross the window.
/// Every segment carries birth time `t`.
pub fn poisson_line_segments(window: &ConvexPolytope, t: f64, seed: u64) -> Result<Vec<Facet>> {
    if window.dim() != 2 {
        return Err(Error::UnsupportedDimension(window.dim()));
    }
    let center = window.vertex_centroid();
    let radius = window.vertices().iter().map(|v| (v - center).norm()).fold(0.0, f64::max);
    let disk = Ball::new(2, center, radius);
    let iso = DirectionalMeasure::isotropic(2)?;
    let mut rng = stream(seed);
    let mean = t * disk.mean_width();
    let count = Poisson::new(mean).map_err(|e| Error::InvalidConfig(e.to_string()))?.sample(&mut rng) as usize;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let h = iso.sample_hyperplane(&disk, &mut rng)?;
        if let Some(pts) = window.section_loop(&h) {
            out.push(Facet::new(2, pts, *h.normal(), t));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::SampleSummary;

    #[test]
    fn length_density() {
        let w = ConvexPolytope::square(2.0).unwrap();
        let totals: Vec<f64> = (0..2000)
            .map(|s| poisson_line_segments(&w, 1.5, s).unwrap().iter().map(Facet::area).sum())
            .collect();
        let s = SampleSummary::from_values(&totals);
        assert!(s.mean_estimate().z_against(1.5 * 4.0).abs() < 3.5, "{s:?}");
    }
}
