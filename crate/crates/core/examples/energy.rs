//! 2-energy of windows in space: Monte Carlo, quadrature and the ball
//! closed forms, plus superadditivity for two separated cubes.

use stit::analytic::{chord_power_ball, energy2, energy2_ball, WindowSpec};
use stit::geometry::{Ball, ConvexPolytope, RegionUnion};
use stit::mc::mc_energy2;
use stit::Point;

fn main() -> stit::Result<()> {
    let mc = mc_energy2(&Ball::centered(3, 1.0), 10_000_000, 1)?;
    println!("E2(B^3): MC {:.5} ± {:.5}, quadrature {:.10}, closed {:.10}", mc.value, mc.se, energy2(&WindowSpec::ball(3, 1.0)?)?, energy2_ball(3)?);
    for d in 3..=6 {
        println!("d = {d}: E2 = {:.10}, I_(d-1) = {:.10}", energy2_ball(d)?, chord_power_ball(d)?);
    }
    let a = ConvexPolytope::cube(1.0)?;
    let b = a.translated(&Point::new(2.0, 0.0, 0.0));
    let single = mc_energy2(&a, 4_000_000, 2)?;
    let pair = mc_energy2(&RegionUnion::new(vec![a, b])?, 4_000_000, 3)?;
    println!("cube {:.4} ± {:.4}; two cubes {:.4} ± {:.4} (> {:.4})", single.value, single.se, pair.value, pair.se, 2.0 * single.value);
    Ok(())
}
