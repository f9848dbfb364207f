use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::rng::{derive_seed, stream, Stream};

/// Samples per independently seeded batch.
pub const BATCH: usize = 8_192;

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
    pub n: usize,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, se: 0.0, n: 0 }
    }

    /// `(value - reference) / se`; zero when both agree exactly.
    pub fn z_against(&self, reference: f64) -> f64 {
        z(self.value - reference, self.se)
    }

    /// Two-sample z-score for independent estimates.
    pub fn z_between(&self, other: &Estimate) -> f64 {
        z(self.value - other.value, self.se.hypot(other.se))
    }
}

pub(crate) fn z(diff: f64, se: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else if se == 0.0 {
        f64::INFINITY.copysign(diff)
    } else {
        diff / se
    }
}

/// Running count, mean and sum of squared deviations (Welford / Chan).
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Moments {
    pub n: usize,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64,
        }
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn estimate(&self) -> Estimate {
        Estimate { value: self.mean, se: (self.variance() / self.n.max(1) as f64).sqrt(), n: self.n }
    }
}

/// Mean of `n` draws of `sample`, in parallel batches seeded from `seed`.
pub fn mc_mean<F>(n: usize, seed: u64, sample: F) -> Result<Estimate>
where
    F: Fn(&mut Stream) -> Result<f64> + Sync,
{
    let batches = n.div_ceil(BATCH);
    let parts: Vec<Moments> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(derive_seed(seed, b as u64));
            let count = BATCH.min(n - b * BATCH);
            let mut m = Moments::default();
            for _ in 0..count {
                m.push(sample(&mut rng)?);
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(Moments::default(), Moments::merge).estimate())
}

/// Mean and unbiased variance of a sample, each with a standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub se_mean: f64,
    /// `sqrt((μ4 - σ⁴ (n-3)/(n-1)) / n)` with plug-in central moments.
    pub se_variance: f64,
}

impl SampleSummary {
    pub fn from_values(xs: &[f64]) -> Self {
        let n = xs.len();
        let nf = n as f64;
        let mean = xs.iter().sum::<f64>() / nf;
        let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
        let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / nf;
        let variance = if n > 1 { m2 / (nf - 1.0) } else { 0.0 };
        let se_mean = if n > 0 { (variance / nf).sqrt() } else { 0.0 };
        let se_variance = if n > 3 {
            ((m4 - variance * variance * (nf - 3.0) / (nf - 1.0)) / nf).max(0.0).sqrt()
        } else {
            0.0
        };
        SampleSummary { n, mean, variance, se_mean, se_variance }
    }

    pub fn mean_estimate(&self) -> Estimate {
        Estimate { value: self.mean, se: self.se_mean, n: self.n }
    }

    pub fn variance_estimate(&self) -> Estimate {
        Estimate { value: self.variance, se: self.se_variance, n: self.n }
    }

    pub fn mean_z(&self, other: &SampleSummary) -> f64 {
        self.mean_estimate().z_between(&other.mean_estimate())
    }

    pub fn variance_z(&self, other: &SampleSummary) -> f64 {
        self.variance_estimate().z_between(&other.variance_estimate())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn uniform_mean() {
        let e = mc_mean(100_000, 1, |rng| Ok(rng.random::<f64>())).unwrap();
        assert_eq!(e.n, 100_000);
        assert!(e.z_against(0.5).abs() < 4.0);
        assert!((e.se - (1.0f64 / 12.0 / 1e5).sqrt()).abs() < 1e-5);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let f = |rng: &mut Stream| Ok(rng.random::<f64>().powi(3));
        let a = mc_mean(50_000, 9, f).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| mc_mean(50_000, 9, f).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn merge_matches_direct() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|x| whole.push(*x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..333].iter().for_each(|x| a.push(*x));
        xs[333..].iter().for_each(|x| b.push(*x));
        let m = a.merge(b);
        assert!((m.mean - whole.mean).abs() < 1e-12);
        assert!((m.variance() - whole.variance()).abs() < 1e-9);
    }

    #[test]
    fn summary_of_constant_sample() {
        let s = SampleSummary::from_values(&[2.0; 10]);
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.se_variance, 0.0);
    }

    #[test]
    fn variance_se_for_normal_sample() {
        // For normal data Var(s²) ≈ 2σ⁴/(n-1).
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = crate::rng::stream(3);
        let xs: Vec<f64> = (0..20_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let s = SampleSummary::from_values(&xs);
        let expected = (2.0 / 19_999.0f64).sqrt();
        assert!((s.se_variance / expected - 1.0).abs() < 0.1);
    }
}
