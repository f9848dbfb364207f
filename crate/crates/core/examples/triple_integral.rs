//! Variance of a directional surface functional from the triple-integral
//! formula, checked against simulation for an anisotropic measure.

use stit::geometry::ConvexPolytope;
use stit::mc::{mc_general_variance, replicate_stats};
use stit::simulator::{FaceFunctional, SimConfig};
use stit::{DirectionalMeasure, Point};

fn main() -> stit::Result<()> {
    let window = ConvexPolytope::square(2.0)?;
    let s = 0.5f64.sqrt();
    let measure = DirectionalMeasure::discrete(
        2,
        vec![(Point::new(1.0, 0.0, 0.0), 0.5), (Point::new(s, s, 0.0), 0.3), (Point::new(0.0, 1.0, 0.0), 0.2)],
    )?;
    let phi = FaceFunctional::new(1.0, |u: &Point| u.x * u.x);
    let integral = mc_general_variance(&window, &measure, &phi, 1.0, 1_000_000, 1)?;
    let sim = replicate_stats(&SimConfig::new(window, measure, 1.0, 2, 4000)?, &phi)?;
    println!("triple integral  {:.5} ± {:.5}", integral.value, integral.se);
    println!("simulation       {:.5} ± {:.5}", sim.summary.variance, sim.summary.se_variance);
    println!("z = {:+.2}", integral.z_between(&sim.summary.variance_estimate()));
    Ok(())
}
