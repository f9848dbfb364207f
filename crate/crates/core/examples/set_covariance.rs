//! Isotropized set covariance: closed forms and angular quadrature against the
//! Monte Carlo estimate.

use stit::analytic::{isotropized_covariance, WindowSpec};
use stit::geometry::{Ball, ConvexPolytope};
use stit::mc::mc_covariance;

fn main() -> stit::Result<()> {
    let disk = WindowSpec::ball(2, 1.0)?;
    let rect = WindowSpec::boxed(vec![1.0, 2.0])?;
    let rect_poly = ConvexPolytope::axis_box(&[0.0, 0.0], &[1.0, 2.0])?;
    println!("{:>5} {:>10} {:>18} {:>10} {:>18}", "r", "disk", "disk MC", "rect", "rect MC");
    for k in 0..=8 {
        let r = 0.25 * k as f64;
        let d = isotropized_covariance(&disk, r)?;
        let dm = mc_covariance(&Ball::centered(2, 1.0), r, 200_000, k);
        let b = isotropized_covariance(&rect, r)?;
        let bm = mc_covariance(&rect_poly, r, 200_000, 100 + k);
        println!("{r:>5.2} {d:>10.6} {:>9.6} ± {:<6.4} {b:>10.6} {:>9.6} ± {:<6.4}", dm.value, dm.se, bm.value, bm.se);
    }
    // a generic polygon goes through exact intersection volumes
    let hex = ConvexPolytope::regular_polygon(stit::Point::zeros(), 1.0, 6)?;
    println!("hexagon gamma(0.5) = {:.8}", isotropized_covariance(&WindowSpec::Generic(hex), 0.5)?);
    Ok(())
}
