use rand::Rng;

use super::{SimConfig, Tessellation};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolytope, Facet};
use crate::measure::DirectionalMeasure;
use crate::rng::{derive_seed, stream};

/// Split depth allowed along one lineage.
pub const MAX_DEPTH: usize = 100_000;
/// Resampling attempts after degenerate (tangent) splits.
const MAX_RESAMPLES: usize = 1_000;

struct Pending {
    cell: ConvexPolytope,
    born: f64,
    seed: u64,
    depth: usize,
}

/// Builds `Y(tΛ, W)` for the configuration's window, measure, time and seed.
pub fn mnw_construct(cfg: &SimConfig) -> Result<Tessellation> {
    cfg.validate()?;
    construct(&cfg.window, &cfg.measure, cfg.t, cfg.seed)
}

/// Builds `Y(tΛ, W)`.
///
/// Every cell owns a random stream derived from its parent's. A cell born at
/// `s` lives an exponential time with rate `Λ([cell])`; if it dies before `t`
/// it is cut by a hyperplane drawn from `Λ` restricted to `[cell]` and both
/// pieces are processed the same way. Facets come out ordered by birth time.
pub fn construct(window: &ConvexPolytope, measure: &DirectionalMeasure, t: f64, seed: u64) -> Result<Tessellation> {
    if window.dim() != measure.dim() {
        return Err(Error::DimensionMismatch { expected: measure.dim(), found: window.dim() });
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidConfig(format!("t must be positive, got {t}")));
    }
    let dim = window.dim();
    let mut facets = Vec::new();
    let mut cells = Vec::new();
    let mut stack = vec![Pending { cell: window.clone(), born: 0.0, seed, depth: 0 }];

    while let Some(Pending { cell, born, seed, depth }) = stack.pop() {
        let mut rng = stream(seed);
        let rate = measure.body_hitting_measure(&cell)?;
        let lifetime = -(1.0 - rng.random::<f64>()).ln() / rate;
        let death = born + lifetime;
        if death > t {
            cells.push(cell);
            continue;
        }
        if depth >= MAX_DEPTH {
            return Err(Error::DepthExceeded(MAX_DEPTH));
        }
        let mut attempt = 0;
        let (split, plane) = loop {
            let h = measure.sample_hyperplane(&cell, &mut rng)?;
            match cell.split(&h) {
                Ok(s) => break (s, h),
                Err(Error::DegenerateSplit) if attempt < MAX_RESAMPLES => attempt += 1,
                Err(e) => return Err(e),
            }
        };
        facets.push(Facet::new(dim, split.section, *plane.normal(), death));
        stack.push(Pending { cell: split.minus, born: death, seed: derive_seed(seed, 1), depth: depth + 1 });
        stack.push(Pending { cell: split.plus, born: death, seed: derive_seed(seed, 0), depth: depth + 1 });
    }

    facets.sort_by(|a, b| a.birth_time.total_cmp(&b.birth_time));
    Ok(Tessellation {
        window: window.clone(),
        time: t,
        measure: measure.clone(),
        seed,
        facets,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::simulator::FaceFunctional;

    fn square_cfg(a: f64, t: f64, seed: u64) -> SimConfig {
        SimConfig::new(ConvexPolytope::square(a).unwrap(), DirectionalMeasure::isotropic(2).unwrap(), t, seed, 1).unwrap()
    }

    #[test]
    fn tiny_time_leaves_window_intact() {
        let y = mnw_construct(&square_cfg(1.0, 1e-12, 3)).unwrap();
        assert!(y.facets.is_empty());
        assert_eq!(y.cells.len(), 1);
        assert_eq!(y.cells[0], y.window);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = mnw_construct(&square_cfg(2.0, 3.0, 99)).unwrap();
        let b = mnw_construct(&square_cfg(2.0, 3.0, 99)).unwrap();
        assert_eq!(a, b);
        let c = mnw_construct(&square_cfg(2.0, 3.0, 100)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn tessellation_invariants_2d_and_3d() {
        for seed in 0..20 {
            let y = mnw_construct(&square_cfg(2.0, 2.0, seed)).unwrap();
            y.validate().unwrap();
            assert_eq!(y.cells.len(), y.facets.len() + 1);
            let cube = ConvexPolytope::cube(1.0).unwrap();
            let y3 = construct(&cube, &DirectionalMeasure::isotropic(3).unwrap(), 3.0, seed).unwrap();
            y3.validate().unwrap();
            assert_eq!(y3.cells.len(), y3.facets.len() + 1);
            for c in &y3.cells {
                c.validate().unwrap();
            }
        }
    }

    #[test]
    fn mondrian_facets_are_axis_parallel() {
        let sq = ConvexPolytope::square(1.0).unwrap();
        let axes = DirectionalMeasure::axes(2).unwrap();
        for seed in 0..50 {
            let y = construct(&sq, &axes, 4.0, seed).unwrap();
            for f in &y.facets {
                assert!(f.normal == Point::x() || f.normal == Point::y());
            }
        }
    }

    #[test]
    fn birth_times_sorted_within_horizon() {
        let y = mnw_construct(&square_cfg(3.0, 2.0, 5)).unwrap();
        assert!(y.facets.windows(2).all(|w| w[0].birth_time <= w[1].birth_time));
        assert!(y.facets.iter().all(|f| f.birth_time > 0.0 && f.birth_time <= 2.0));
    }

    #[test]
    fn axis_functional_partitions_length() {
        let sq = ConvexPolytope::square(2.0).unwrap();
        let axes = DirectionalMeasure::axes(2).unwrap();
        let vertical = FaceFunctional::new(1.0, |u: &Point| if u.x != 0.0 { 1.0 } else { 0.0 });
        let horizontal = FaceFunctional::new(1.0, |u: &Point| if u.y != 0.0 { 1.0 } else { 0.0 });
        for seed in 0..30 {
            let y = construct(&sq, &axes, 2.0, seed).unwrap();
            let total = y.sigma_phi(&FaceFunctional::surface_area());
            let v = y.sigma_phi(&vertical);
            let h = y.sigma_phi(&horizontal);
            assert!((v - (total - h)).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let cube = ConvexPolytope::cube(1.0).unwrap();
        assert!(construct(&cube, &DirectionalMeasure::isotropic(2).unwrap(), 1.0, 0).is_err());
        assert!(construct(&cube, &DirectionalMeasure::isotropic(3).unwrap(), 0.0, 0).is_err());
    }
}
