use super::{coords, loop_area, ConvexBody, ConvexPolytope, Point, REL_EPS};

/// A maximal `(d-1)`-polytope created by one split: a segment for `d = 2`, a
/// planar convex polygon for `d = 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub dim: usize,
    pub vertices: Vec<Point>,
    /// Canonically oriented unit normal of the splitting hyperplane.
    pub normal: Point,
    pub birth_time: f64,
}

impl Facet {
    pub fn new(dim: usize, vertices: Vec<Point>, normal: Point, birth_time: f64) -> Self {
        Facet { dim, vertices, normal, birth_time }
    }

    /// `(d-1)`-dimensional volume.
    pub fn area(&self) -> f64 {
        match self.dim {
            2 => (self.vertices[1] - self.vertices[0]).norm(),
            _ => loop_area(&self.vertices),
        }
    }

    /// `F ∩ V`, or `None` if the intersection has no positive area.
    pub fn restrict(&self, window: &ConvexPolytope) -> Option<Facet> {
        let scale = self
            .vertices
            .iter()
            .flat_map(|a| self.vertices.iter().map(move |b| (a - b).norm()))
            .fold(0.0, f64::max);
        let eps = REL_EPS * scale.max(ConvexBody::diameter(window));
        let mut pts = self.vertices.clone();
        for (n, b) in window.halfspaces() {
            pts = match self.dim {
                2 => clip_segment(&pts, &n, b)?,
                _ => clip_loop(&pts, &n, b),
            };
            if pts.len() < self.dim {
                return None;
            }
        }
        let f = Facet { vertices: pts, ..self.clone() };
        let floor = if self.dim == 2 { eps } else { eps * eps };
        (f.area() > floor).then_some(f)
    }

    pub fn scaled(&self, s: f64) -> Facet {
        Facet { vertices: self.vertices.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    pub(crate) fn vertex_coords(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| coords(v, self.dim)).collect()
    }
}

fn clip_segment(pts: &[Point], n: &Point, b: f64) -> Option<Vec<Point>> {
    let (p, q) = (pts[0], pts[1]);
    let (sp, sq) = (n.dot(&p) - b, n.dot(&q) - b);
    match (sp <= 0.0, sq <= 0.0) {
        (true, true) => Some(vec![p, q]),
        (false, false) => None,
        (true, false) => Some(vec![p, p + (q - p) * (sp / (sp - sq))]),
        (false, true) => Some(vec![p + (q - p) * (sp / (sp - sq)), q]),
    }
}

/// Sutherland–Hodgman step keeping `⟨x, n⟩ ≤ b`.
fn clip_loop(pts: &[Point], n: &Point, b: f64) -> Vec<Point> {
    let m = pts.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..m {
        let p = pts[i];
        let q = pts[(i + 1) % m];
        let (sp, sq) = (n.dot(&p) - b, n.dot(&q) - b);
        if sp <= 0.0 {
            out.push(p);
        }
        if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
            out.push(p + (q - p) * (sp / (sp - sq)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn restrict_segment_to_unit_square() {
        let f = Facet::new(2, vec![Point::new(0.0, 1.0, 0.0), Point::new(2.0, 1.0, 0.0)], Point::y(), 0.5);
        let w = ConvexPolytope::square(1.0).unwrap();
        let r = f.restrict(&w).unwrap();
        assert_relative_eq!(r.area(), 1.0, epsilon = 1e-14);
        assert_eq!(r.birth_time, 0.5);
    }

    #[test]
    fn restrict_misses() {
        let f = Facet::new(2, vec![Point::new(3.0, 0.0, 0.0), Point::new(3.0, 1.0, 0.0)], Point::x(), 0.5);
        assert!(f.restrict(&ConvexPolytope::square(1.0).unwrap()).is_none());
    }

    #[test]
    fn restrict_polygon_in_cube() {
        let sq = vec![
            Point::new(-1.0, -1.0, 0.5),
            Point::new(2.0, -1.0, 0.5),
            Point::new(2.0, 2.0, 0.5),
            Point::new(-1.0, 2.0, 0.5),
        ];
        let f = Facet::new(3, sq, Point::z(), 1.0);
        assert_relative_eq!(f.area(), 9.0, epsilon = 1e-12);
        let r = f.restrict(&ConvexPolytope::cube(1.0).unwrap()).unwrap();
        assert_relative_eq!(r.area(), 1.0, epsilon = 1e-12);
    }
}
