use rand::Rng;

use super::{plane_basis, Point};

/// A hyperplane section `W ∩ H` prepared for uniform sampling.
#[derive(Clone, Debug)]
pub enum Section {
    Segment(Point, Point),
    /// Convex polygon, fan-triangulated from its first vertex; `cumulative`
    /// holds running triangle areas.
    Polygon { points: Vec<Point>, cumulative: Vec<f64> },
    Disk { center: Point, radius: f64, basis: (Point, Point) },
}

impl Section {
    pub fn polygon(points: Vec<Point>) -> Self {
        let o = points[0];
        let mut acc = 0.0;
        let cumulative = points[1..]
            .windows(2)
            .map(|w| {
                acc += (w[0] - o).cross(&(w[1] - o)).norm() / 2.0;
                acc
            })
            .collect();
        Section::Polygon { points, cumulative }
    }

    pub fn disk(center: Point, radius: f64, normal: &Point) -> Self {
        Section::Disk { center, radius, basis: plane_basis(normal) }
    }

    /// `(d-1)`-dimensional volume.
    pub fn measure(&self) -> f64 {
        match self {
            Section::Segment(a, b) => (b - a).norm(),
            Section::Polygon { cumulative, .. } => cumulative.last().copied().unwrap_or(0.0),
            Section::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
        }
    }

    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match self {
            Section::Segment(a, b) => a + (b - a) * rng.random::<f64>(),
            Section::Polygon { points, cumulative } => {
                let total = *cumulative.last().unwrap();
                let target = rng.random::<f64>() * total;
                let k = cumulative.partition_point(|&c| c < target).min(cumulative.len() - 1);
                let (o, p, q) = (points[0], points[k + 1], points[k + 2]);
                let (mut s, mut t) = (rng.random::<f64>(), rng.random::<f64>());
                if s + t > 1.0 {
                    s = 1.0 - s;
                    t = 1.0 - t;
                }
                o + (p - o) * s + (q - o) * t
            }
            Section::Disk { center, radius, basis } => {
                let rho = radius * rng.random::<f64>().sqrt();
                let phi = std::f64::consts::TAU * rng.random::<f64>();
                center + basis.0 * (rho * phi.cos()) + basis.1 * (rho * phi.sin())
            }
        }
    }
}
