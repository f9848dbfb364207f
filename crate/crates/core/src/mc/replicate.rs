use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::SampleSummary;
use crate::error::Result;
use crate::rng::derive_seed;
use crate::simulator::{FaceFunctional, SimConfig};

/// Evaluates `f` on `n` replicate seeds derived from `seed`, in parallel;
/// the output order follows the replicate index.
pub fn replicate_values<F>(n: usize, seed: u64, f: F) -> Result<Vec<f64>>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    (0..n).into_par_iter().map(|i| f(derive_seed(seed, i as u64))).collect()
}

/// One line of the per-replicate summary CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplicateRow {
    pub seed: u64,
    pub facets: usize,
    pub total_surface: f64,
    pub cells: usize,
    pub sigma: f64,
}

#[derive(Clone, Debug)]
pub struct ReplicateStats {
    pub summary: SampleSummary,
    pub rows: Vec<ReplicateRow>,
}

impl ReplicateStats {
    /// `seed,facets,total_surface,cells,sigma` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "seed,facets,total_surface,cells,sigma")?;
        for r in &self.rows {
            writeln!(w, "{},{},{:.17e},{},{:.17e}", r.seed, r.facets, r.total_surface, r.cells, r.sigma)?;
        }
        Ok(())
    }
}

/// Sample mean and variance of `Σ_φ` over `cfg.replicates` independent runs.
pub fn replicate_stats(cfg: &SimConfig, phi: &FaceFunctional) -> Result<ReplicateStats> {
    cfg.validate()?;
    let rows: Vec<ReplicateRow> = (0..cfg.replicates)
        .into_par_iter()
        .map(|i| {
            let y = cfg.replicate(i)?;
            Ok(ReplicateRow {
                seed: cfg.replicate_seed(i),
                facets: y.facets.len(),
                total_surface: y.total_surface(),
                cells: y.cells.len(),
                sigma: y.sigma_phi(phi),
            })
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = rows.iter().map(|r| r.sigma).collect();
    Ok(ReplicateStats { summary: SampleSummary::from_values(&values), rows })
}
