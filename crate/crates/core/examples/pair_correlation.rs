//! Pair-correlation functions of STIT and Poisson line tessellations, with a
//! kernel estimate from simulated replicates.

use stit::analytic::{pcf, PcfModel, WindowSpec};
use stit::geometry::ConvexPolytope;
use stit::mc::{estimate_pcf_segments, kernel_average, poisson_line_segments, PcfConfig};
use stit::rng::derive_seed;
use stit::simulator::construct;
use stit::DirectionalMeasure;

fn main() -> stit::Result<()> {
    let (t, side, reps) = (1.0, 4.0, 200u64);
    let window = ConvexPolytope::square(side)?;
    let spec = WindowSpec::cube(2, side)?;
    let iso = DirectionalMeasure::isotropic(2)?;
    let stit_sets = (0..reps)
        .map(|i| construct(&window, &iso, t, derive_seed(1, i)).map(|y| y.facets))
        .collect::<stit::Result<Vec<_>>>()?;
    let line_sets = (0..reps)
        .map(|i| poisson_line_segments(&window, t, derive_seed(2, i)))
        .collect::<stit::Result<Vec<_>>>()?;
    let cfg = PcfConfig::new(vec![0.25, 0.5, 1.0, 1.5, 2.0], t, 40_000);
    let a = estimate_pcf_segments(&stit_sets, t, &spec, &cfg, 3)?;
    let b = estimate_pcf_segments(&line_sets, t, &spec, &cfg, 4)?;
    println!("{:>5} {:>8} {:>18} {:>8} {:>18}", "r", "STIT", "estimate", "lines", "estimate");
    for (x, y) in a.bins.iter().zip(&b.bins) {
        let smooth = |m| kernel_average(&spec, |s| pcf(m, s, t, 2).unwrap(), x.r, cfg.bandwidth).map(|v| v.unwrap_or(f64::NAN));
        println!(
            "{:>5.2} {:>8.4} {:>9.4} ± {:<6.4} {:>8.4} {:>9.4} ± {:<6.4}",
            x.r,
            smooth(PcfModel::Stit)?,
            x.g.unwrap_or(f64::NAN),
            x.se.unwrap_or(f64::NAN),
            smooth(PcfModel::Pht)?,
            y.g.unwrap_or(f64::NAN),
            y.se.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
