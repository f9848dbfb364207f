//! Variance of the total surface area: quadrature, the closed 3-ball form and
//! the large-window asymptotics.

use stit::analytic::{asymptotic_variance, exact_variance, variance_ball3d_closed, WindowSpec};

fn main() -> stit::Result<()> {
    println!("3-ball, t = 1");
    println!("{:>8} {:>16} {:>16} {:>12}", "R", "quadrature", "closed", "/ 4pi^2 R^4");
    let ball = WindowSpec::ball(3, 1.0)?;
    for r in [0.5, 1.0, 10.0, 100.0, 1000.0] {
        let q = exact_variance(&ball.scaled(r), 1.0)?;
        let c = variance_ball3d_closed(1.0, r)?;
        println!("{r:>8} {q:>16.8e} {c:>16.8e} {:>12.6}", c / asymptotic_variance(&ball, r, 1.0)?);
    }

    println!("\nunit square scaled by R, t = 1");
    println!("{:>8} {:>16} {:>16} {:>10}", "R", "exact", "pi R^2 log R", "ratio");
    let square = WindowSpec::cube(2, 1.0)?;
    for r in [1e2, 1e3, 1e4, 1e5] {
        let v = exact_variance(&square.scaled(r), 1.0)?;
        let a = asymptotic_variance(&square, r, 1.0)?;
        println!("{r:>8.0e} {v:>16.8e} {a:>16.8e} {:>10.6}", v / a);
    }
    Ok(())
}
