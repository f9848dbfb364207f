//! Iteration stability, consistency under restriction and scaling, each as a
//! two-sample comparison of total edge length.

use stit::checks::{run_suite, CheckConfig, Suite};

fn main() -> stit::Result<()> {
    let cfg = CheckConfig { replicates: 1000, ..CheckConfig::default() };
    for suite in [Suite::Stit, Suite::Consistency, Suite::Scaling] {
        print!("{}", run_suite(suite, &cfg)?);
    }
    Ok(())
}
