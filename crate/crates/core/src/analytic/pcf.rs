use std::io::Write;

use serde::{Deserialize, Serialize};

use super::variance::one_minus_exp_over;
use crate::constants::segment_constant;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PcfModel {
    Stit,
    /// Poisson hyperplane tessellation with the same surface density.
    Pht,
}

/// `g_d(r) - 1` for STIT: `(d-1) / (2t²r²) · (1 - e^{-ctr})`.
pub(crate) fn stit_excess(r: f64, t: f64, d: usize) -> f64 {
    let ct = segment_constant(d) * t;
    (d as f64 - 1.0) / (2.0 * t * t * r * r) * ct * r * one_minus_exp_over(ct * r)
}

/// `g^{PHT}_d(r) - 1 = (d-1) c / (2tr)`.
pub(crate) fn pht_excess(r: f64, t: f64, d: usize) -> f64 {
    (d as f64 - 1.0) * segment_constant(d) / (2.0 * t * r)
}

/// Pair-correlation function of the surface measure at distance `r > 0`.
pub fn pcf(model: PcfModel, r: f64, t: f64, d: usize) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidConfig(format!("pair correlation has a pole at r = 0, got r = {r}")));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidConfig(format!("t must be positive, got {t}")));
    }
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(1.0
        + match model {
            PcfModel::Stit => stit_excess(r, t, d),
            PcfModel::Pht => pht_excess(r, t, d),
        })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcfCurve {
    pub model: PcfModel,
    pub t: f64,
    pub d: usize,
    pub r: Vec<f64>,
    pub g: Vec<f64>,
}

impl PcfCurve {
    /// Evaluates `model` on `steps` equally spaced points of `(0, r_max]`.
    pub fn tabulate(model: PcfModel, t: f64, d: usize, r_max: f64, steps: usize) -> Result<Self> {
        if steps == 0 || !(r_max > 0.0) {
            return Err(Error::InvalidConfig(format!("need r_max > 0 and steps > 0, got {r_max}, {steps}")));
        }
        let r: Vec<f64> = (1..=steps).map(|k| r_max * k as f64 / steps as f64).collect();
        let g = r.iter().map(|&x| pcf(model, x, t, d)).collect::<Result<_>>()?;
        Ok(PcfCurve { model, t, d, r, g })
    }
}

/// Writes `r,g_stit,g_pht` rows for both models on a common grid.
pub fn write_comparison_csv<W: Write>(mut out: W, t: f64, d: usize, r_max: f64, steps: usize) -> Result<()> {
    let stit = PcfCurve::tabulate(PcfModel::Stit, t, d, r_max, steps)?;
    let pht = PcfCurve::tabulate(PcfModel::Pht, t, d, r_max, steps)?;
    writeln!(out, "r,g_stit,g_pht")?;
    for i in 0..stit.r.len() {
        writeln!(out, "{:.10e},{:.15e},{:.15e}", stit.r[i], stit.g[i], pht.g[i])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn plane_values() {
        let g = pcf(PcfModel::Stit, 1.0, 1.0, 2).unwrap();
        assert_relative_eq!(g, 1.0 + 0.5 * (1.0 - (-2.0 / PI).exp()), max_relative = 1e-15);
        assert!((g - 1.2354).abs() < 1e-4);
        assert_relative_eq!(pcf(PcfModel::Pht, 1.0, 1.0, 2).unwrap(), 1.0 + 1.0 / PI, max_relative = 1e-15);
    }

    #[test]
    fn spatial_reduction() {
        for r in [0.01, 0.5, 3.0] {
            let expect = 1.0 + (1.0 - (-r / 2.0f64).exp()) / (r * r);
            assert_relative_eq!(pcf(PcfModel::Stit, r, 1.0, 3).unwrap(), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn pole_rejected() {
        assert!(pcf(PcfModel::Stit, 0.0, 1.0, 2).is_err());
    }

    #[test]
    fn ordering_and_small_r_limit() {
        for d in 2..=4 {
            let c = segment_constant(d);
            let r = 1e-6;
            let diff = pcf(PcfModel::Stit, r, 1.0, d).unwrap() - pcf(PcfModel::Pht, r, 1.0, d).unwrap();
            assert!((diff + (d as f64 - 1.0) * c * c / 4.0).abs() < 1e-4, "d={d}: {diff}");
            let curve = PcfCurve::tabulate(PcfModel::Stit, 1.0, d, 10.0, 1000).unwrap();
            let pht = PcfCurve::tabulate(PcfModel::Pht, 1.0, d, 10.0, 1000).unwrap();
            assert!(curve.g.iter().zip(&pht.g).all(|(s, p)| s < p && *s > 1.0));
            assert!(curve.g.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn tail_tends_to_one() {
        let c = PcfCurve::tabulate(PcfModel::Stit, 1.0, 2, 50.0, 500).unwrap();
        assert!((c.g.last().unwrap() - 1.0).abs() < 1e-3);
    }
}
