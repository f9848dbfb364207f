use std::collections::HashMap;

use rand::Rng;

use super::{loop_area, loop_normal, ConvexBody, Point, Region, Window, REL_EPS};
use crate::constants::segment_constant;
use crate::error::{Error, Result};
use crate::geometry::Section;
use crate::measure::Hyperplane;

/// A face of a polyhedron: a vertex-index loop, counterclockwise when seen
/// from outside, with its outward unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub indices: Vec<usize>,
    pub normal: Point,
}

/// A convex polygon (`d = 2`, counterclockwise vertex ring) or polyhedron
/// (`d = 3`, vertices plus outward-oriented face loops).
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolytope {
    pub(super) dim: usize,
    pub(super) vertices: Vec<Point>,
    pub(super) faces: Vec<Face>,
}

impl ConvexPolytope {
    /// Polygon from a vertex ring in either orientation.
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolytope("a polygon needs at least 3 vertices".into()));
        }
        let mut vertices: Vec<Point> = vertices.into_iter().map(|p| Point::new(p.x, p.y, 0.0)).collect();
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        let p = ConvexPolytope { dim: 2, vertices, faces: Vec::new() };
        p.validate()?;
        Ok(p)
    }

    /// Polyhedron from vertices and face loops. Loop orientation is fixed up
    /// so that normals point outward.
    pub fn polyhedron(vertices: Vec<Point>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if vertices.len() < 4 || faces.len() < 4 {
            return Err(Error::InvalidPolytope("a polyhedron needs at least 4 vertices and 4 faces".into()));
        }
        let inner = vertices.iter().sum::<Point>() / vertices.len() as f64;
        let mut out = Vec::with_capacity(faces.len());
        for mut indices in faces {
            if indices.len() < 3 || indices.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidPolytope("bad face loop".into()));
            }
            let pts: Vec<Point> = indices.iter().map(|&i| vertices[i]).collect();
            let mut n = loop_normal(&pts);
            let len = n.norm();
            if len == 0.0 {
                return Err(Error::InvalidPolytope("face with zero area".into()));
            }
            n /= len;
            if n.dot(&(pts[0] - inner)) < 0.0 {
                indices.reverse();
                n = -n;
            }
            out.push(Face { indices, normal: n });
        }
        let p = ConvexPolytope { dim: 3, vertices, faces: out };
        p.validate()?;
        Ok(p)
    }

    /// Axis-parallel box `[lo_1, hi_1] × … × [lo_d, hi_d]` for `d ∈ {2, 3}`.
    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        if lo.iter().zip(hi).any(|(a, b)| !(b > a)) {
            return Err(Error::InvalidPolytope("box with empty extent".into()));
        }
        match lo.len() {
            2 => ConvexPolytope::polygon(vec![
                Point::new(lo[0], lo[1], 0.0),
                Point::new(hi[0], lo[1], 0.0),
                Point::new(hi[0], hi[1], 0.0),
                Point::new(lo[0], hi[1], 0.0),
            ]),
            3 => {
                let v = |i: usize| {
                    Point::new(
                        if i & 1 == 0 { lo[0] } else { hi[0] },
                        if i & 2 == 0 { lo[1] } else { hi[1] },
                        if i & 4 == 0 { lo[2] } else { hi[2] },
                    )
                };
                let vertices = (0..8).map(v).collect();
                let faces = vec![
                    vec![0, 2, 3, 1],
                    vec![4, 5, 7, 6],
                    vec![0, 1, 5, 4],
                    vec![2, 6, 7, 3],
                    vec![0, 4, 6, 2],
                    vec![1, 3, 7, 5],
                ];
                ConvexPolytope::polyhedron(vertices, faces)
            }
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// `[0, a]^2`.
    pub fn square(a: f64) -> Result<Self> {
        ConvexPolytope::axis_box(&[0.0, 0.0], &[a, a])
    }

    /// `[0, a]^3`.
    pub fn cube(a: f64) -> Result<Self> {
        ConvexPolytope::axis_box(&[0.0; 3], &[a; 3])
    }

    /// Regular `n`-gon inscribed in the circle of the given radius.
    pub fn regular_polygon(center: Point, radius: f64, n: usize) -> Result<Self> {
        let step = std::f64::consts::TAU / n as f64;
        let vertices = (0..n)
            .map(|k| {
                let a = step * k as f64;
                Point::new(center.x + radius * a.cos(), center.y + radius * a.sin(), 0.0)
            })
            .collect();
        ConvexPolytope::polygon(vertices)
    }

    /// Intersection of `start` with the halfspaces `⟨x, n⟩ ≤ b`.
    pub fn from_halfspaces(start: ConvexPolytope, halfspaces: &[(Point, f64)]) -> Result<Self> {
        let mut p = start;
        for (n, b) in halfspaces {
            p = p
                .clip(n, *b)
                .ok_or_else(|| Error::InvalidPolytope("halfspace intersection is empty".into()))?;
        }
        Ok(p)
    }

    /// Polytope approximation of the centred ball of radius `radius`.
    ///
    /// Planar: inscribed regular polygon with `resolution` vertices.
    /// Spatial: circumscribed polyhedron cut from a cube by `resolution`
    /// tangent planes at Fibonacci-sphere directions.
    pub fn ball_approximation(dim: usize, radius: f64, resolution: usize) -> Result<Self> {
        match dim {
            2 => ConvexPolytope::regular_polygon(Point::zeros(), radius, resolution.max(3)),
            3 => {
                let cube = ConvexPolytope::axis_box(&[-radius; 3], &[radius; 3])?;
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                let n = resolution.max(8);
                let planes: Vec<(Point, f64)> = (0..n)
                    .map(|k| {
                        let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                        let r = (1.0 - z * z).sqrt();
                        let phi = golden * k as f64;
                        (Point::new(r * phi.cos(), r * phi.sin(), z), radius)
                    })
                    .collect();
                ConvexPolytope::from_halfspaces(cube, &planes)
            }
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Face loops; empty for polygons.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn volume(&self) -> f64 {
        match self.dim {
            2 => shoelace(&self.vertices),
            _ => {
                let o = self.vertices[0];
                let mut six_v = 0.0;
                for f in &self.faces {
                    let a = self.vertices[f.indices[0]] - o;
                    for w in f.indices[1..].windows(2) {
                        let b = self.vertices[w[0]] - o;
                        let c = self.vertices[w[1]] - o;
                        six_v += a.dot(&b.cross(&c));
                    }
                }
                six_v / 6.0
            }
        }
    }

    /// Boundary measure: perimeter for polygons, surface area for polyhedra.
    pub fn boundary_measure(&self) -> f64 {
        match self.dim {
            2 => self.ring_edges().map(|(a, b)| (b - a).norm()).sum(),
            _ => (0..self.faces.len()).map(|i| self.face_area(i)).sum(),
        }
    }

    pub fn face_area(&self, face: usize) -> f64 {
        let pts: Vec<Point> = self.faces[face].indices.iter().map(|&i| self.vertices[i]).collect();
        loop_area(&pts)
    }

    /// Average of the vertices; an interior point of a valid polytope.
    pub fn vertex_centroid(&self) -> Point {
        self.vertices.iter().sum::<Point>() / self.vertices.len() as f64
    }

    /// Absolute tolerance `ε_geom` for this polytope.
    pub fn eps(&self) -> f64 {
        REL_EPS * ConvexBody::diameter(self)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    /// Outward unit normals and offsets `(n, b)` with `P = ∩ {⟨x, n⟩ ≤ b}`.
    pub fn halfspaces(&self) -> Vec<(Point, f64)> {
        match self.dim {
            2 => self
                .ring_edges()
                .map(|(a, b)| {
                    let e = b - a;
                    let n = Point::new(e.y, -e.x, 0.0).normalize();
                    (n, n.dot(&a))
                })
                .collect(),
            _ => self
                .faces
                .iter()
                .map(|f| (f.normal, f.normal.dot(&self.vertices[f.indices[0]])))
                .collect(),
        }
    }

    /// Undirected edges with the two adjacent faces (polyhedra only).
    pub fn edges(&self) -> Vec<((usize, usize), [usize; 2])> {
        let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            let n = f.indices.len();
            for k in 0..n {
                let (a, b) = (f.indices[k], f.indices[(k + 1) % n]);
                map.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        let mut edges: Vec<_> = map
            .into_iter()
            .filter(|(_, fs)| fs.len() == 2)
            .map(|(e, fs)| (e, [fs[0], fs[1]]))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn contains(&self, x: &Point) -> bool {
        let eps = self.eps();
        self.halfspaces().iter().all(|(n, b)| n.dot(x) <= b + eps)
    }

    pub fn translated(&self, z: &Point) -> Self {
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v += z;
        }
        p
    }

    /// Image under `x ↦ s x` for `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v *= s;
        }
        p
    }

    /// Intersection with the halfspace `⟨x, n⟩ ≤ b`; `None` when empty or
    /// thinner than the tolerance.
    pub fn clip(&self, n: &Point, b: f64) -> Option<ConvexPolytope> {
        let eps = self.eps();
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|v| n.dot(v) - b)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
        if hi <= eps {
            return Some(self.clone());
        }
        if lo >= -eps {
            return None;
        }
        let h = Hyperplane::from_raw(*n, b);
        match self.split(&h) {
            Ok(s) => Some(if h.normal().dot(n) > 0.0 { s.minus } else { s.plus }),
            Err(_) => None,
        }
    }

    pub fn intersection(&self, other: &ConvexPolytope) -> Option<ConvexPolytope> {
        let mut p = self.clone();
        for (n, b) in other.halfspaces() {
            p = p.clip(&n, b)?;
        }
        Some(p)
    }

    /// Checks convexity, nondegeneracy and (for polyhedra) planarity and the
    /// Euler characteristic.
    pub fn validate(&self) -> Result<()> {
        let diam = ConvexBody::diameter(self);
        let eps = REL_EPS * diam;
        if !self.vertices.iter().all(|v| v.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidPolytope("non-finite vertex".into()));
        }
        let vol = self.volume();
        if !(vol > 1e-12 * diam.powi(self.dim as i32)) {
            return Err(Error::InvalidPolytope(format!("degenerate volume {vol:e}")));
        }
        for (n, b) in self.halfspaces() {
            if let Some(v) = self.vertices.iter().find(|v| n.dot(v) > b + eps) {
                return Err(Error::InvalidPolytope(format!("vertex {v:?} violates convexity")));
            }
        }
        if self.dim == 3 {
            for f in &self.faces {
                let b = f.normal.dot(&self.vertices[f.indices[0]]);
                if f.indices.iter().any(|&i| (f.normal.dot(&self.vertices[i]) - b).abs() > eps) {
                    return Err(Error::InvalidPolytope("non-planar face".into()));
                }
            }
            let v = self.vertices.len() as i64;
            let e = self.edges().len() as i64;
            let f = self.faces.len() as i64;
            if v - e + f != 2 {
                return Err(Error::InvalidPolytope(format!("Euler characteristic V-E+F = {}", v - e + f)));
            }
        }
        Ok(())
    }

    pub(super) fn ring_edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

fn shoelace(ring: &[Point]) -> f64 {
    let n = ring.len();
    let o = ring[0];
    let mut acc = 0.0;
    for i in 1..n.saturating_sub(1) {
        let a = ring[i] - o;
        let b = ring[i + 1] - o;
        acc += a.x * b.y - a.y * b.x;
    }
    acc / 2.0
}

impl ConvexBody for ConvexPolytope {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support(&self, u: &Point) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    fn width(&self, u: &Point) -> f64 {
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|v| v.dot(u))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
        hi - lo
    }

    fn diameter(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max((a - b).norm_squared());
            }
        }
        best.sqrt()
    }

    /// Planar: perimeter / π. Spatial: `(1/4π) Σ_e ℓ_e α_e` with `α_e` the
    /// angle between the outward normals of the faces meeting at edge `e`.
    fn mean_width(&self) -> f64 {
        match self.dim {
            2 => self.boundary_measure() / std::f64::consts::PI,
            _ => {
                let mut acc = 0.0;
                for ((a, b), [f, g]) in self.edges() {
                    let len = (self.vertices[a] - self.vertices[b]).norm();
                    let cos = self.faces[f].normal.dot(&self.faces[g].normal).clamp(-1.0, 1.0);
                    acc += len * cos.acos();
                }
                acc / (4.0 * std::f64::consts::PI)
            }
        }
    }
}

impl Region for ConvexPolytope {
    fn dim(&self) -> usize {
        self.dim
    }

    fn volume(&self) -> f64 {
        ConvexPolytope::volume(self)
    }

    fn diameter(&self) -> f64 {
        ConvexBody::diameter(self)
    }

    fn contains(&self, x: &Point) -> bool {
        ConvexPolytope::contains(self, x)
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let (lo, hi) = self.bounding_box();
        let halfspaces = self.halfspaces();
        loop {
            let mut p = Point::zeros();
            for k in 0..self.dim {
                p[k] = rng.random_range(lo[k]..=hi[k]);
            }
            if halfspaces.iter().all(|(n, b)| n.dot(&p) <= *b) {
                return p;
            }
        }
    }
}

impl Window for ConvexPolytope {
    fn section(&self, h: &Hyperplane) -> Option<Section> {
        let pts = self.section_loop(h)?;
        Some(match self.dim {
            2 => Section::Segment(pts[0], pts[1]),
            _ => Section::polygon(pts),
        })
    }
}

/// Disjoint union of convex polytopes, used as an integration region.
#[derive(Clone, Debug)]
pub struct RegionUnion {
    parts: Vec<ConvexPolytope>,
    volumes: Vec<f64>,
    diameter: f64,
}

impl RegionUnion {
    /// The parts must share a dimension and have disjoint interiors; the
    /// latter is the caller's responsibility.
    pub fn new(parts: Vec<ConvexPolytope>) -> Result<Self> {
        let dim = parts.first().ok_or_else(|| Error::InvalidPolytope("empty union".into()))?.dim;
        if let Some(p) = parts.iter().find(|p| p.dim != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim });
        }
        let all: Vec<Point> = parts.iter().flat_map(|p| p.vertices.iter().copied()).collect();
        let mut diameter: f64 = 0.0;
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                diameter = diameter.max((a - b).norm());
            }
        }
        let volumes = parts.iter().map(|p| p.volume()).collect();
        Ok(RegionUnion { parts, volumes, diameter })
    }

    pub fn parts(&self) -> &[ConvexPolytope] {
        &self.parts
    }
}

impl Region for RegionUnion {
    fn dim(&self) -> usize {
        self.parts[0].dim
    }

    fn volume(&self) -> f64 {
        self.volumes.iter().sum()
    }

    fn diameter(&self) -> f64 {
        self.diameter
    }

    fn contains(&self, x: &Point) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let mut target = rng.random::<f64>() * self.volume();
        for (p, v) in self.parts.iter().zip(&self.volumes) {
            if target < *v {
                return p.sample_point(rng);
            }
            target -= v;
        }
        self.parts.last().unwrap().sample_point(rng)
    }
}

/// Mean width of a segment of length `len` in `R^d`.
pub(crate) fn segment_mean_width(dim: usize, len: f64) -> f64 {
    segment_constant(dim) * len
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, unit_vector};
    use approx::assert_relative_eq;

    #[test]
    fn unit_cube_and_square() {
        let c = ConvexPolytope::cube(1.0).unwrap();
        assert_relative_eq!(c.volume(), 1.0, epsilon = 1e-14);
        assert_eq!(c.faces().len(), 6);
        for i in 0..6 {
            assert_relative_eq!(c.face_area(i), 1.0, epsilon = 1e-14);
        }
        let s = ConvexPolytope::square(1.0).unwrap();
        assert_relative_eq!(s.volume(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(s.boundary_measure(), 4.0, epsilon = 1e-14);
    }

    #[test]
    fn orientation_is_normalised() {
        let cw = vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(0.0, 1.0, 0.0),
            Point::new(1.0, 1.0, 0.0),
            Point::new(1.0, 0.0, 0.0),
        ];
        let p = ConvexPolytope::polygon(cw).unwrap();
        assert!(p.volume() > 0.0);
    }

    #[test]
    fn rejects_nonconvex_and_degenerate() {
        let dart = vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(2.0, 0.0, 0.0),
            Point::new(1.0, 0.2, 0.0),
            Point::new(1.0, 2.0, 0.0),
        ];
        assert!(ConvexPolytope::polygon(dart).is_err());
        let flat = vec![Point::new(0.0, 0.0, 0.0), Point::new(1.0, 0.0, 0.0), Point::new(2.0, 0.0, 0.0)];
        assert!(ConvexPolytope::polygon(flat).is_err());
    }

    #[test]
    fn disk_polygon_width() {
        let disk = ConvexPolytope::regular_polygon(Point::zeros(), 1.0, 720).unwrap();
        let mut rng = stream(3);
        for _ in 0..200 {
            let u = unit_vector(2, &mut rng);
            assert!((disk.width(&u) - 2.0).abs() < 1e-4);
        }
    }

    #[test]
    fn cube_mean_width_is_three_halves() {
        let c = ConvexPolytope::cube(1.0).unwrap();
        assert_relative_eq!(c.mean_width(), 1.5, epsilon = 1e-12);
        let s = ConvexPolytope::square(1.0).unwrap();
        assert_relative_eq!(s.mean_width(), 4.0 / std::f64::consts::PI, epsilon = 1e-14);
    }

    #[test]
    fn mean_width_matches_direction_average() {
        let c = ConvexPolytope::axis_box(&[0.0, 0.0, 0.0], &[1.0, 2.0, 0.5]).unwrap();
        let mut rng = stream(11);
        let n = 200_000;
        let avg: f64 = (0..n).map(|_| c.width(&unit_vector(3, &mut rng))).sum::<f64>() / n as f64;
        assert!((avg - c.mean_width()).abs() < 5e-3, "{avg} vs {}", c.mean_width());
    }

    #[test]
    fn sphere_approximation_is_valid() {
        let b = ConvexPolytope::ball_approximation(3, 1.0, 120).unwrap();
        b.validate().unwrap();
        let v = b.volume();
        let exact = 4.0 * std::f64::consts::PI / 3.0;
        assert!(v > exact && v < 1.05 * exact, "{v}");
    }

    #[test]
    fn contains_and_translation() {
        let c = ConvexPolytope::cube(2.0).unwrap();
        assert!(c.contains(&Point::new(1.0, 1.0, 1.0)));
        assert!(!c.contains(&Point::new(2.5, 1.0, 1.0)));
        let z = Point::new(0.3, -4.0, 7.0);
        let t = c.translated(&z);
        assert_relative_eq!(t.volume(), c.volume(), epsilon = 1e-10);
        assert!(t.contains(&(Point::new(1.0, 1.0, 1.0) + z)));
    }

    #[test]
    fn intersection_of_squares() {
        let a = ConvexPolytope::square(2.0).unwrap();
        let b = a.translated(&Point::new(1.0, 1.5, 0.0));
        let i = a.intersection(&b).unwrap();
        assert_relative_eq!(i.volume(), 0.5, epsilon = 1e-12);
        let far = a.translated(&Point::new(5.0, 0.0, 0.0));
        assert!(a.intersection(&far).is_none());
    }

    #[test]
    fn union_region_volume() {
        let a = ConvexPolytope::cube(1.0).unwrap();
        let b = a.translated(&Point::new(2.0, 0.0, 0.0));
        let u = RegionUnion::new(vec![a, b]).unwrap();
        assert_relative_eq!(u.volume(), 2.0, epsilon = 1e-12);
        assert_relative_eq!(u.diameter(), 11f64.sqrt(), epsilon = 1e-12);
        assert!(!u.contains(&Point::new(1.5, 0.5, 0.5)));
    }
}
