//! Grows an isotropic STIT tessellation in a square and prints a summary,
//! then the tessellation as JSON when `--json` is given.
//!
//!     cargo run --release --example simulate -- 2.0 1.5 7 [--json]

use stit::geometry::ConvexPolytope;
use stit::simulator::construct;
use stit::DirectionalMeasure;

fn main() -> stit::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let side: f64 = args.first().map_or(2.0, |s| s.parse().expect("side"));
    let t: f64 = args.get(1).map_or(1.0, |s| s.parse().expect("t"));
    let seed: u64 = args.get(2).map_or(7, |s| s.parse().expect("seed"));

    let window = ConvexPolytope::square(side)?;
    let y = construct(&window, &DirectionalMeasure::isotropic(2)?, t, seed)?;
    y.validate()?;
    println!("window [0,{side}]^2, t = {t}, seed = {seed}");
    println!("cells: {}, facets: {}", y.cells.len(), y.facets.len());
    println!("total edge length {:.4} (expected mean {:.4})", y.total_surface(), t * side * side);
    for f in y.facets.iter().take(5) {
        println!("  born {:.4}, length {:.4}", f.birth_time, f.area());
    }
    if args.iter().any(|a| a == "--json") {
        println!("{}", serde_json::to_string_pretty(&y)?);
    }
    Ok(())
}
