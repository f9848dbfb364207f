//! Nesting: cells of a frame tessellation are subdivided by independent
//! tessellations, and the rescaled result is again a STIT tessellation.

use stit::geometry::ConvexPolytope;
use stit::simulator::{construct, iterate_rescale};
use stit::DirectionalMeasure;

fn main() -> stit::Result<()> {
    let w = ConvexPolytope::square(1.0)?;
    let iso = DirectionalMeasure::isotropic(2)?;
    for m in 2..=4 {
        let y = iterate_rescale(&w, &iso, 3.0, m, 1)?;
        y.validate()?;
        let last = y.facets.last().map_or(0.0, |f| f.birth_time);
        println!("m = {m}: {} cells, length {:.4}, last birth {last:.4}", y.cells.len(), y.total_surface());
    }
    let direct = construct(&w, &iso, 3.0, 1)?;
    println!("direct: {} cells, length {:.4}", direct.cells.len(), direct.total_surface());
    Ok(())
}
