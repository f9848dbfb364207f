//! Both sides of the hyperplane/point-pair transformation formula, estimated
//! independently.

use stit::geometry::{Ball, ConvexPolytope};
use stit::mc::{bp_check, TestFunction};

fn main() -> stit::Result<()> {
    let square = ConvexPolytope::square(1.0)?;
    for (name, g) in [("g = 1", TestFunction::One), ("g = exp(-|x-y|)", TestFunction::ExpDistance)] {
        let r = bp_check(&square, &g, 1_000_000, 1)?;
        println!("square, {name}: {:.5} ± {:.5} vs {:.5} ± {:.5}, z = {:+.2}", r.lhs.value, r.lhs.se, r.rhs.value, r.rhs.se, r.z);
    }
    let r = bp_check(&Ball::centered(3, 1.0), &TestFunction::One, 1_000_000, 2)?;
    println!("3-ball, g = 1: {:.5} ± {:.5} vs {:.5} ± {:.5}, z = {:+.2}", r.lhs.value, r.lhs.se, r.rhs.value, r.rhs.se, r.z);
    Ok(())
}
