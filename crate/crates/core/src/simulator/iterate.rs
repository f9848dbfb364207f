use super::{construct, Tessellation};
use crate::error::{Error, Result};
use crate::geometry::ConvexPolytope;
use crate::measure::DirectionalMeasure;
use crate::rng::derive_seed;

/// `m`-fold iteration followed by rescaling, realised in the window `W`.
///
/// A frame tessellation at intensity `t` is built in `W/m`; in each of
/// `m - 1` nesting rounds every current cell is subdivided by an independent
/// tessellation at intensity `t` grown inside that cell. Coordinates are then
/// multiplied by `m`. For a STIT law the result is again `Y(t, W)`.
///
/// Facets of round `k` get birth time `(k t + s) / m`, where `s` is their
/// birth time within the round, so all birth times lie in `(0, t]`.
pub fn iterate_rescale(window: &ConvexPolytope, measure: &DirectionalMeasure, t: f64, m: usize, seed: u64) -> Result<Tessellation> {
    if m < 2 {
        return Err(Error::InvalidConfig(format!("iteration needs m >= 2, got {m}")));
    }
    iterate_rescale_rounds(window, measure, t, m, m - 1, seed)
}

/// [`iterate_rescale`] with an explicit number of nesting rounds.
pub fn iterate_rescale_rounds(
    window: &ConvexPolytope,
    measure: &DirectionalMeasure,
    t: f64,
    m: usize,
    rounds: usize,
    seed: u64,
) -> Result<Tessellation> {
    if m < 1 {
        return Err(Error::InvalidConfig("m must be positive".into()));
    }
    let scale = m as f64;
    let small = window.scaled(1.0 / scale);
    let frame = construct(&small, measure, t, derive_seed(seed, 0))?;
    let mut facets = frame.facets;
    let mut cells = frame.cells;
    for round in 1..=rounds {
        let round_seed = derive_seed(seed, round as u64);
        let mut next_cells = Vec::with_capacity(cells.len());
        let offset = round as f64 * t;
        for (j, cell) in cells.iter().enumerate() {
            let nested = construct(cell, measure, t, derive_seed(round_seed, j as u64))?;
            facets.extend(nested.facets.into_iter().map(|mut f| {
                f.birth_time += offset;
                f
            }));
            next_cells.extend(nested.cells);
        }
        cells = next_cells;
    }
    facets.sort_by(|a, b| a.birth_time.total_cmp(&b.birth_time));
    let total_time = (rounds + 1) as f64 * t;
    Ok(Tessellation {
        window: small,
        time: total_time,
        measure: measure.clone(),
        seed,
        facets,
        cells,
    }
    .scaled(scale))
}
