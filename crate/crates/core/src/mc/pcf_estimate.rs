use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::stats::z;
use super::SampleSummary;
use crate::analytic::quadrature::integrate;
use crate::analytic::{isotropized_covariance, WindowSpec};
use crate::error::{Error, Result};
use crate::geometry::Facet;
use crate::rng::{derive_seed, stream};
use crate::simulator::Tessellation;

#[derive(Debug, Clone)]
pub struct PcfConfig {
    /// Increasing evaluation distances.
    pub r: Vec<f64>,
    /// Half-width of the Epanechnikov kernel.
    pub bandwidth: f64,
    pub pairs_per_replicate: usize,
}

impl PcfConfig {
    /// Default bandwidth `0.05 / t`.
    pub fn new(r: Vec<f64>, t: f64, pairs_per_replicate: usize) -> Self {
        PcfConfig { r, bandwidth: 0.05 / t, pairs_per_replicate }
    }

    fn validate(&self) -> Result<()> {
        if self.r.is_empty() || self.r.windows(2).any(|w| w[1] <= w[0]) || self.r[0] < 0.0 {
            return Err(Error::InvalidConfig("r grid must be nonempty, nonnegative and increasing".into()));
        }
        if !(self.bandwidth > 0.0) || self.pairs_per_replicate == 0 {
            return Err(Error::InvalidConfig("bandwidth and pair budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PcfBin {
    pub r: f64,
    /// `None` where the window has no pairs at this distance.
    pub g: Option<f64>,
    pub se: Option<f64>,
    /// Sampled pairs that landed in the kernel support, over all replicates.
    pub pairs: usize,
}

impl PcfBin {
    pub fn z_against(&self, reference: f64) -> Option<f64> {
        Some(z(self.g? - reference, self.se?))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PcfEstimate {
    pub t: f64,
    pub bandwidth: f64,
    pub replicates: usize,
    pub bins: Vec<PcfBin>,
}

fn epanechnikov(u: f64, h: f64) -> f64 {
    let q = u / h;
    if q.abs() < 1.0 {
        0.75 / h * (1.0 - q * q)
    } else {
        0.0
    }
}

fn weight(window: &WindowSpec, s: f64, r: f64, h: f64) -> f64 {
    2.0 * std::f64::consts::PI * s * isotropized_covariance(window, s).unwrap_or(0.0) * epanechnikov(s - r, h)
}

/// Kernel support clipped to `[0, diam W]`, split at the kernel centre.
fn support(window: &WindowSpec, r: f64, h: f64) -> Option<[f64; 3]> {
    let lo = (r - h).max(0.0);
    let hi = (r + h).min(window.diameter());
    (hi > lo).then(|| [lo, r.clamp(lo, hi), hi])
}

/// `∫ 2πs γ̄_W(s) k_h(s - r) ds`, or `None` when it vanishes.
fn normaliser(window: &WindowSpec, r: f64, h: f64) -> Result<Option<f64>> {
    let Some(pts) = support(window, r, h) else {
        return Ok(None);
    };
    let den = integrate(|s| weight(window, s, r, h), &pts, 1e-10)?;
    Ok((den > 1e-14 * window.volume() * h).then_some(den))
}

/// `∫ f(s) w(s) ds / ∫ w(s) ds` with `w(s) = 2πs γ̄_W(s) k_h(s - r)`: the
/// value a kernel pair-correlation estimate in `W` targets when the true
/// function is `f`. `None` when the weight vanishes.
pub fn kernel_average<F: Fn(f64) -> f64>(window: &WindowSpec, f: F, r: f64, h: f64) -> Result<Option<f64>> {
    let Some(den) = normaliser(window, r, h)? else {
        return Ok(None);
    };
    let pts = support(window, r, h).expect("nonempty support");
    Ok(Some(integrate(|s| f(s) * weight(window, s, r, h), &pts, 1e-10)? / den))
}

/// Kernel estimate of the pair-correlation function of planar segment
/// systems observed in `window` with length density `t`.
///
/// Each replicate contributes `L² / M · Σ k_h(‖x - y‖ - r)` over `M` pairs of
/// points drawn from the length measure, divided by
/// `t² ∫ 2πs γ̄_W(s) k_h(s - r) ds`; the bins report mean and standard error
/// across replicates.
pub fn estimate_pcf_segments(
    sets: &[Vec<Facet>],
    t: f64,
    window: &WindowSpec,
    cfg: &PcfConfig,
    seed: u64,
) -> Result<PcfEstimate> {
    if sets.is_empty() {
        return Err(Error::InvalidConfig("empty replicate set".into()));
    }
    if window.dim() != 2 || sets.iter().flatten().any(|f| f.dim != 2) {
        return Err(Error::UnsupportedDimension(window.dim().max(3)));
    }
    cfg.validate()?;
    let h = cfg.bandwidth;
    let norm: Vec<Option<f64>> = cfg
        .r
        .iter()
        .map(|&r| normaliser(window, r, h))
        .collect::<Result<_>>()?;
    let per_rep: Vec<(Vec<f64>, Vec<usize>)> = sets
        .par_iter()
        .enumerate()
        .map(|(i, facets)| replicate_sums(facets, cfg, derive_seed(seed, i as u64)))
        .collect();
    let bins = cfg
        .r
        .iter()
        .enumerate()
        .map(|(b, &r)| {
            let pairs = per_rep.iter().map(|(_, c)| c[b]).sum();
            match norm[b] {
                Some(n) if sets.len() >= 2 => {
                    let vals: Vec<f64> = per_rep.iter().map(|(s, _)| s[b] / (t * t * n)).collect();
                    let s = SampleSummary::from_values(&vals);
                    PcfBin { r, g: Some(s.mean), se: Some(s.se_mean), pairs }
                }
                _ => PcfBin { r, g: None, se: None, pairs },
            }
        })
        .collect();
    Ok(PcfEstimate { t, bandwidth: h, replicates: sets.len(), bins })
}

fn replicate_sums(facets: &[Facet], cfg: &PcfConfig, seed: u64) -> (Vec<f64>, Vec<usize>) {
    let nb = cfg.r.len();
    let mut sums = vec![0.0; nb];
    let mut counts = vec![0; nb];
    let mut cumulative = Vec::with_capacity(facets.len());
    let mut total = 0.0;
    for f in facets {
        total += f.area();
        cumulative.push(total);
    }
    if total <= 0.0 {
        return (sums, counts);
    }
    let h = cfg.bandwidth;
    let mut rng = stream(seed);
    let draw = |rng: &mut crate::rng::Stream| {
        let u = rng.random::<f64>() * total;
        let i = cumulative.partition_point(|&c| c < u).min(facets.len() - 1);
        let v = &facets[i].vertices;
        v[0] + (v[1] - v[0]) * rng.random::<f64>()
    };
    for _ in 0..cfg.pairs_per_replicate {
        let s = (draw(&mut rng) - draw(&mut rng)).norm();
        let first = cfg.r.partition_point(|&r| r <= s - h);
        for b in first..nb {
            if cfg.r[b] >= s + h {
                break;
            }
            sums[b] += epanechnikov(s - cfg.r[b], h);
            counts[b] += 1;
        }
    }
    let scale = total * total / cfg.pairs_per_replicate as f64;
    sums.iter_mut().for_each(|s| *s *= scale);
    (sums, counts)
}

/// [`estimate_pcf_segments`] on the facets of simulated tessellations.
pub fn estimate_pcf(replicates: &[Tessellation], window: &WindowSpec, cfg: &PcfConfig, seed: u64) -> Result<PcfEstimate> {
    let t = replicates.first().ok_or_else(|| Error::InvalidConfig("empty replicate set".into()))?.time;
    if replicates.iter().any(|r| r.time != t) {
        return Err(Error::InvalidConfig("replicates must share t".into()));
    }
    let sets: Vec<Vec<Facet>> = replicates.iter().map(|r| r.facets.clone()).collect();
    estimate_pcf_segments(&sets, t, window, cfg, seed)
}
