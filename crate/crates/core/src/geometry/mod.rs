//! Convex geometry for the construction and the Monte Carlo oracles.
//!
//! Points live in `R^3`; planar objects keep a zero third coordinate so that
//! dot products, widths and support functions are shared between `d = 2` and
//! `d = 3`. Only volumes, splits and sections look at the dimension.

mod ball;
mod facet;
mod polytope;
mod section;
mod serde_impl;
mod split;

use rand::Rng;

pub use ball::{Ball, Segment};
pub use facet::Facet;
pub use polytope::{ConvexPolytope, Face, RegionUnion};
pub use section::Section;
pub use split::Split;

use crate::measure::Hyperplane;

pub type Point = nalgebra::Vector3<f64>;

/// Relative geometric tolerance; absolute tolerances are this times the
/// diameter of the object at hand.
pub const REL_EPS: f64 = 1e-9;

/// Support-function view of a compact convex body.
pub trait ConvexBody: Sync {
    fn dim(&self) -> usize;

    /// `h(K, u) = max_{x ∈ K} ⟨x, u⟩`.
    fn support(&self, u: &Point) -> f64;

    fn width(&self, u: &Point) -> f64 {
        self.support(u) + self.support(&-u)
    }

    fn diameter(&self) -> f64;

    /// Width averaged over uniformly distributed directions.
    fn mean_width(&self) -> f64;
}

/// A bounded region that can be sampled uniformly; need not be convex.
pub trait Region: Sync {
    fn dim(&self) -> usize;
    fn volume(&self) -> f64;
    fn diameter(&self) -> f64;
    fn contains(&self, x: &Point) -> bool;
    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point;
}

/// A convex observation window: a body whose hyperplane sections are
/// available for integration.
pub trait Window: ConvexBody + Region {
    fn section(&self, h: &Hyperplane) -> Option<Section>;
}

/// Orthonormal `(e1, e2)` with `e1 × e2 = n` for a unit `n`.
pub fn plane_basis(n: &Point) -> (Point, Point) {
    let helper = if n.x.abs() < 0.9 { Point::x() } else { Point::y() };
    let e1 = helper.cross(n).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

pub(crate) fn coords(p: &Point, dim: usize) -> Vec<f64> {
    p.as_slice()[..dim].to_vec()
}

pub(crate) fn point_from(c: &[f64]) -> Option<Point> {
    match c.len() {
        2 => Some(Point::new(c[0], c[1], 0.0)),
        3 => Some(Point::new(c[0], c[1], c[2])),
        _ => None,
    }
}

/// Area of a planar polygon loop in `R^3` (Newell).
pub(crate) fn loop_area(points: &[Point]) -> f64 {
    loop_normal(points).norm() / 2.0
}

/// Unnormalised Newell normal; its length is twice the loop area.
pub(crate) fn loop_normal(points: &[Point]) -> Point {
    let n = points.len();
    let mut acc = Point::zeros();
    if n < 3 {
        return acc;
    }
    let o = points[0];
    for i in 1..n - 1 {
        acc += (points[i] - o).cross(&(points[i + 1] - o));
    }
    acc
}
