use std::fmt;
use std::sync::Arc;

use crate::geometry::{Facet, Point};

/// `φ(f) = Vol_{d-1}(f) ζ(n(f))` for a bounded directional weight `ζ`.
#[derive(Clone)]
pub struct FaceFunctional {
    zeta: Arc<dyn Fn(&Point) -> f64 + Send + Sync>,
    bound: f64,
}

impl FaceFunctional {
    /// `ζ` must satisfy `|ζ(u)| ≤ bound` on the unit sphere.
    pub fn new(bound: f64, zeta: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        FaceFunctional { zeta: Arc::new(zeta), bound }
    }

    /// `ζ ≡ 1`: total surface area.
    pub fn surface_area() -> Self {
        FaceFunctional::new(1.0, |_| 1.0)
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn zeta(&self, u: &Point) -> f64 {
        let z = (self.zeta)(u);
        debug_assert!(z.abs() <= self.bound * (1.0 + 1e-12), "ζ exceeds its declared bound");
        z
    }

    pub fn eval(&self, f: &Facet) -> f64 {
        f.area() * self.zeta(&f.normal)
    }
}

impl fmt::Debug for FaceFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FaceFunctional").field("bound", &self.bound).finish_non_exhaustive()
    }
}
