use rand::Rng;

use super::{polytope::segment_mean_width, ConvexBody, Point, Region, Section, Window};
use crate::measure::Hyperplane;
use crate::rng::unit_vector;

/// Euclidean ball `B_R(c)` in `R^2` or `R^3`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub dim: usize,
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(dim: usize, center: Point, radius: f64) -> Self {
        assert!(dim == 2 || dim == 3, "Ball: unsupported dimension {dim}");
        assert!(radius > 0.0, "Ball: radius must be positive");
        Ball { dim, center, radius }
    }

    pub fn centered(dim: usize, radius: f64) -> Self {
        Ball::new(dim, Point::zeros(), radius)
    }
}

impl ConvexBody for Ball {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support(&self, u: &Point) -> f64 {
        self.center.dot(u) + self.radius * u.norm()
    }

    fn diameter(&self) -> f64 {
        2.0 * self.radius
    }

    fn mean_width(&self) -> f64 {
        2.0 * self.radius
    }
}

impl Region for Ball {
    fn dim(&self) -> usize {
        self.dim
    }

    fn volume(&self) -> f64 {
        crate::constants::kappa(self.dim) * self.radius.powi(self.dim as i32)
    }

    fn diameter(&self) -> f64 {
        2.0 * self.radius
    }

    fn contains(&self, x: &Point) -> bool {
        (x - self.center).norm_squared() <= self.radius * self.radius
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let u = unit_vector(self.dim, rng);
        let rho = self.radius * rng.random::<f64>().powf(1.0 / self.dim as f64);
        self.center + u * rho
    }
}

impl Window for Ball {
    fn section(&self, h: &Hyperplane) -> Option<Section> {
        let u = h.normal();
        let p = h.offset() - u.dot(&self.center);
        if p.abs() >= self.radius {
            return None;
        }
        let foot = self.center + u * p;
        let rho = (self.radius * self.radius - p * p).sqrt();
        Some(match self.dim {
            2 => {
                let e = Point::new(-u.y, u.x, 0.0);
                Section::Segment(foot - e * rho, foot + e * rho)
            }
            _ => Section::disk(foot, rho, u),
        })
    }
}

/// Closed segment `[a, b]`, a degenerate convex body.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub dim: usize,
    pub a: Point,
    pub b: Point,
}

impl ConvexBody for Segment {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support(&self, u: &Point) -> f64 {
        self.a.dot(u).max(self.b.dot(u))
    }

    fn diameter(&self) -> f64 {
        (self.b - self.a).norm()
    }

    fn mean_width(&self) -> f64 {
        segment_mean_width(self.dim, (self.b - self.a).norm())
    }
}
