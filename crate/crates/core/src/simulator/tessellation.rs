use serde::{Deserialize, Serialize};

use super::FaceFunctional;
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolytope, Facet};
use crate::measure::DirectionalMeasure;
use crate::rng::derive_seed;

/// Output of the construction: window, time, measure, seed, the maximal
/// facets in birth order and the final cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tessellation {
    pub window: ConvexPolytope,
    #[serde(rename = "t")]
    pub time: f64,
    pub measure: DirectionalMeasure,
    pub seed: u64,
    pub facets: Vec<Facet>,
    pub cells: Vec<ConvexPolytope>,
}

impl Tessellation {
    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    /// `Vol_{d-1}` of the cell boundaries inside the window.
    pub fn total_surface(&self) -> f64 {
        self.facets.iter().fold(0.0, |s, f| s + f.area())
    }

    /// `Σ_φ(Y)`: sum of `φ` over the maximal facets.
    pub fn sigma_phi(&self, phi: &FaceFunctional) -> f64 {
        self.facets.iter().fold(0.0, |s, f| s + phi.eval(f))
    }

    /// `Y ∩ V` for a convex `V` inside the window.
    pub fn restrict(&self, v: &ConvexPolytope) -> Result<Tessellation> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        if !v.vertices().iter().all(|x| self.window.contains(x)) {
            return Err(Error::NotContained);
        }
        Ok(Tessellation {
            window: v.clone(),
            time: self.time,
            measure: self.measure.clone(),
            seed: self.seed,
            facets: self.facets.iter().filter_map(|f| f.restrict(v)).collect(),
            cells: self.cells.iter().filter_map(|c| c.intersection(v)).collect(),
        })
    }

    /// Image under `x ↦ s x`. Surface intensity and birth times scale by `1/s`.
    pub fn scaled(&self, s: f64) -> Tessellation {
        Tessellation {
            window: self.window.scaled(s),
            time: self.time / s,
            measure: self.measure.clone(),
            seed: self.seed,
            facets: self
                .facets
                .iter()
                .map(|f| Facet { birth_time: f.birth_time / s, ..f.scaled(s) })
                .collect(),
            cells: self.cells.iter().map(|c| c.scaled(s)).collect(),
        }
    }

    /// Cell volumes add up to the window volume and birth times lie in `(0, t]`.
    pub fn validate(&self) -> Result<()> {
        let w = self.window.volume();
        let total: f64 = self.cells.iter().map(|c| c.volume()).sum();
        if (total - w).abs() > 1e-8 * w {
            return Err(Error::InvalidPolytope(format!("cell volumes sum to {total}, window has {w}")));
        }
        if let Some(f) = self.facets.iter().find(|f| !(f.birth_time > 0.0 && f.birth_time <= self.time)) {
            return Err(Error::InvalidConfig(format!("facet birth time {} outside (0, {}]", f.birth_time, self.time)));
        }
        Ok(())
    }
}

/// Window, measure, time, master seed and replicate count of an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub window: ConvexPolytope,
    pub measure: DirectionalMeasure,
    pub t: f64,
    pub seed: u64,
    pub replicates: usize,
}

impl SimConfig {
    pub fn new(window: ConvexPolytope, measure: DirectionalMeasure, t: f64, seed: u64, replicates: usize) -> Result<Self> {
        let cfg = SimConfig { window, measure, t, seed, replicates };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::InvalidConfig(format!("t must be positive, got {}", self.t)));
        }
        if self.replicates < 1 {
            return Err(Error::InvalidConfig("at least one replicate is required".into()));
        }
        if self.window.dim() != self.measure.dim() {
            return Err(Error::DimensionMismatch { expected: self.measure.dim(), found: self.window.dim() });
        }
        Ok(())
    }

    /// Seed of replicate `i`.
    pub fn replicate_seed(&self, i: usize) -> u64 {
        derive_seed(self.seed, i as u64)
    }

    /// Replicate `i` of the experiment.
    pub fn replicate(&self, i: usize) -> Result<Tessellation> {
        super::construct(&self.window, &self.measure, self.t, self.replicate_seed(i))
    }
}
