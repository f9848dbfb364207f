//! Axis-parallel cuts (the Mondrian process) in a unit cube: the hyperplane
//! measure puts mass 1/3 on each coordinate direction.

use stit::geometry::ConvexPolytope;
use stit::simulator::{construct, FaceFunctional};
use stit::{DirectionalMeasure, Point};

fn main() -> stit::Result<()> {
    let cube = ConvexPolytope::cube(1.0)?;
    let axes = DirectionalMeasure::axes(3)?;
    let y = construct(&cube, &axes, 3.0, 11)?;
    println!("{} cells, {} facets, total area {:.4}", y.cells.len(), y.facets.len(), y.total_surface());
    for (k, name) in ["x", "y", "z"].iter().enumerate() {
        let phi = FaceFunctional::new(1.0, move |u: &Point| u[k].abs());
        println!("  area of facets normal to {name}: {:.4}", y.sigma_phi(&phi));
    }
    let smallest = y.cells.iter().map(|c| c.volume()).fold(f64::INFINITY, f64::min);
    println!("smallest cell volume {smallest:.3e}");
    Ok(())
}
