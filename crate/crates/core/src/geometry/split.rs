use std::collections::HashMap;

use super::{loop_area, plane_basis, ConvexPolytope, Face, Point};
use crate::error::{Error, Result};
use crate::measure::Hyperplane;

/// Result of cutting a polytope by a hyperplane `H = {⟨x, u⟩ = r}`.
#[derive(Clone, Debug)]
pub struct Split {
    /// Piece on the side `⟨x, u⟩ ≥ r`.
    pub plus: ConvexPolytope,
    /// Piece on the side `⟨x, u⟩ ≤ r`.
    pub minus: ConvexPolytope,
    /// `P ∩ H`: two endpoints for polygons, a loop counterclockwise about `u`
    /// for polyhedra.
    pub section: Vec<Point>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Minus,
    On,
    Plus,
}

fn classify(s: f64, eps: f64) -> Side {
    if s > eps {
        Side::Plus
    } else if s < -eps {
        Side::Minus
    } else {
        Side::On
    }
}

fn crossing(a: &Point, b: &Point, sa: f64, sb: f64) -> Point {
    a + (b - a) * (sa / (sa - sb))
}

impl ConvexPolytope {
    /// Cuts the polytope in two along `h`.
    ///
    /// Fails with [`Error::DegenerateSplit`] when either side is thinner than
    /// `ε_geom` or the section has no positive `(d-1)`-volume.
    pub fn split(&self, h: &Hyperplane) -> Result<Split> {
        let eps = self.eps();
        let u = h.normal();
        let s: Vec<f64> = self.vertices.iter().map(|v| u.dot(v) - h.offset()).collect();
        let side: Vec<Side> = s.iter().map(|&x| classify(x, eps)).collect();
        if !side.contains(&Side::Plus) || !side.contains(&Side::Minus) {
            return Err(Error::DegenerateSplit);
        }
        match self.dim {
            2 => self.split_polygon(u, eps, &s, &side),
            _ => self.split_polyhedron(u, eps, &s, &side),
        }
    }

    fn split_polygon(&self, u: &Point, eps: f64, s: &[f64], side: &[Side]) -> Result<Split> {
        let n = self.vertices.len();
        let mut plus = Vec::with_capacity(n + 2);
        let mut minus = Vec::with_capacity(n + 2);
        let mut section = Vec::with_capacity(2);
        for i in 0..n {
            let j = (i + 1) % n;
            let a = self.vertices[i];
            if side[i] != Side::Minus {
                plus.push(a);
            }
            if side[i] != Side::Plus {
                minus.push(a);
            }
            if side[i] == Side::On {
                section.push(a);
            }
            if (side[i] == Side::Plus && side[j] == Side::Minus) || (side[i] == Side::Minus && side[j] == Side::Plus) {
                let p = crossing(&a, &self.vertices[j], s[i], s[j]);
                plus.push(p);
                minus.push(p);
                section.push(p);
            }
        }
        // Extreme points along the line; more than two only under round-off.
        let dir = Point::new(-u.y, u.x, 0.0);
        let lo = section.iter().copied().min_by(|a, b| dir.dot(a).total_cmp(&dir.dot(b)));
        let hi = section.iter().copied().max_by(|a, b| dir.dot(a).total_cmp(&dir.dot(b)));
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) if (hi - lo).norm() > eps => (lo, hi),
            _ => return Err(Error::DegenerateSplit),
        };
        Ok(Split {
            plus: ConvexPolytope { dim: 2, vertices: plus, faces: Vec::new() },
            minus: ConvexPolytope { dim: 2, vertices: minus, faces: Vec::new() },
            section: vec![lo, hi],
        })
    }

    fn split_polyhedron(&self, u: &Point, eps: f64, s: &[f64], side: &[Side]) -> Result<Split> {
        let mut vertices = self.vertices.clone();
        let mut cut: HashMap<(usize, usize), usize> = HashMap::new();
        let mut on_plane: Vec<usize> = (0..side.len()).filter(|&i| side[i] == Side::On).collect();

        let mut plus_faces = Vec::with_capacity(self.faces.len() + 1);
        let mut minus_faces = Vec::with_capacity(self.faces.len() + 1);
        for f in &self.faces {
            let m = f.indices.len();
            let mut p = Vec::with_capacity(m + 2);
            let mut q = Vec::with_capacity(m + 2);
            let mut has_plus = false;
            let mut has_minus = false;
            for k in 0..m {
                let a = f.indices[k];
                let b = f.indices[(k + 1) % m];
                match side[a] {
                    Side::Plus => {
                        has_plus = true;
                        p.push(a);
                    }
                    Side::Minus => {
                        has_minus = true;
                        q.push(a);
                    }
                    Side::On => {
                        p.push(a);
                        q.push(a);
                    }
                }
                let strict = (side[a] == Side::Plus && side[b] == Side::Minus)
                    || (side[a] == Side::Minus && side[b] == Side::Plus);
                if strict {
                    let key = (a.min(b), a.max(b));
                    let idx = *cut.entry(key).or_insert_with(|| {
                        vertices.push(crossing(&self.vertices[a], &self.vertices[b], s[a], s[b]));
                        vertices.len() - 1
                    });
                    p.push(idx);
                    q.push(idx);
                }
            }
            if has_plus {
                plus_faces.push(Face { indices: p, normal: f.normal });
            }
            if has_minus {
                minus_faces.push(Face { indices: q, normal: f.normal });
            }
        }

        on_plane.extend(cut.values().copied());
        let ring = order_about(&vertices, on_plane, u);
        let section: Vec<Point> = ring.iter().map(|&i| vertices[i]).collect();
        if section.len() < 3 || loop_area(&section) <= eps * eps {
            return Err(Error::DegenerateSplit);
        }
        // Plus side's outward normal at the cut is -u, so its loop runs clockwise about u.
        let mut reversed = ring.clone();
        reversed.reverse();
        plus_faces.push(Face { indices: reversed, normal: -u });
        minus_faces.push(Face { indices: ring, normal: *u });

        Ok(Split {
            plus: compact(&vertices, plus_faces),
            minus: compact(&vertices, minus_faces),
            section,
        })
    }

    /// Ordered vertices of `P ∩ H`, or `None` when `H` misses the interior.
    pub fn section_loop(&self, h: &Hyperplane) -> Option<Vec<Point>> {
        let eps = self.eps();
        let u = h.normal();
        let s: Vec<f64> = self.vertices.iter().map(|v| u.dot(v) - h.offset()).collect();
        let side: Vec<Side> = s.iter().map(|&x| classify(x, eps)).collect();
        if !side.contains(&Side::Plus) || !side.contains(&Side::Minus) {
            return None;
        }
        let mut pts: Vec<Point> = (0..side.len()).filter(|&i| side[i] == Side::On).map(|i| self.vertices[i]).collect();
        let mut push_edge = |a: usize, b: usize| {
            let strict = (side[a] == Side::Plus && side[b] == Side::Minus) || (side[a] == Side::Minus && side[b] == Side::Plus);
            if strict {
                pts.push(crossing(&self.vertices[a], &self.vertices[b], s[a], s[b]));
            }
        };
        match self.dim {
            2 => {
                let n = self.vertices.len();
                for i in 0..n {
                    push_edge(i, (i + 1) % n);
                }
                let dir = Point::new(-u.y, u.x, 0.0);
                let lo = pts.iter().copied().min_by(|a, b| dir.dot(a).total_cmp(&dir.dot(b)))?;
                let hi = pts.iter().copied().max_by(|a, b| dir.dot(a).total_cmp(&dir.dot(b)))?;
                ((hi - lo).norm() > eps).then(|| vec![lo, hi])
            }
            _ => {
                for ((a, b), _) in self.edges() {
                    push_edge(a, b);
                }
                let idx: Vec<usize> = (0..pts.len()).collect();
                let ring = order_about(&pts, idx, u);
                let ordered: Vec<Point> = ring.into_iter().map(|i| pts[i]).collect();
                (ordered.len() >= 3 && loop_area(&ordered) > eps * eps).then_some(ordered)
            }
        }
    }
}

/// Sorts coplanar points counterclockwise about `normal`, dropping
/// near-duplicates.
fn order_about(points: &[Point], mut idx: Vec<usize>, normal: &Point) -> Vec<usize> {
    if idx.is_empty() {
        return idx;
    }
    let c = idx.iter().map(|&i| points[i]).sum::<Point>() / idx.len() as f64;
    let (e1, e2) = plane_basis(normal);
    let angle = |i: usize| {
        let d = points[i] - c;
        d.dot(&e2).atan2(d.dot(&e1))
    };
    idx.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    let scale = idx.iter().map(|&i| (points[i] - c).norm()).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut out: Vec<usize> = Vec::with_capacity(idx.len());
    for i in idx {
        if out.last().is_none_or(|&j| (points[i] - points[j]).norm() > tol) {
            out.push(i);
        }
    }
    if out.len() > 1 && (points[out[0]] - points[*out.last().unwrap()]).norm() <= tol {
        out.pop();
    }
    out
}

/// Keeps the vertices referenced by `faces` and renumbers them.
fn compact(vertices: &[Point], mut faces: Vec<Face>) -> ConvexPolytope {
    let mut remap = vec![usize::MAX; vertices.len()];
    let mut kept = Vec::new();
    for f in &mut faces {
        for i in &mut f.indices {
            if remap[*i] == usize::MAX {
                remap[*i] = kept.len();
                kept.push(vertices[*i]);
            }
            *i = remap[*i];
        }
    }
    ConvexPolytope { dim: 3, vertices: kept, faces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexBody, Facet};
    use crate::rng::{stream, unit_vector};
    use approx::assert_relative_eq;
    use rand::Rng;

    fn h(u: Point, r: f64) -> Hyperplane {
        Hyperplane::new(u, r).unwrap()
    }

    #[test]
    fn unit_square_half_split() {
        let sq = ConvexPolytope::square(1.0).unwrap();
        let s = sq.split(&h(Point::x(), 0.5)).unwrap();
        assert_relative_eq!(s.plus.volume(), 0.5, epsilon = 1e-14);
        assert_relative_eq!(s.minus.volume(), 0.5, epsilon = 1e-14);
        assert_relative_eq!((s.section[1] - s.section[0]).norm(), 1.0, epsilon = 1e-14);
        s.plus.validate().unwrap();
        s.minus.validate().unwrap();
    }

    #[test]
    fn cube_diagonal_split_gives_hexagon() {
        let c = ConvexPolytope::cube(1.0).unwrap();
        let u = Point::new(1.0, 1.0, 1.0).normalize();
        let s = c.split(&h(u, 1.5 / 3f64.sqrt())).unwrap();
        assert_relative_eq!(s.plus.volume(), 0.5, epsilon = 1e-12);
        assert_relative_eq!(s.minus.volume(), 0.5, epsilon = 1e-12);
        assert_eq!(s.section.len(), 6);
        // regular hexagon with side √2/2
        let side = 2f64.sqrt() / 2.0;
        assert_relative_eq!(loop_area(&s.section), 3.0 * 3f64.sqrt() / 2.0 * side * side, epsilon = 1e-12);
        s.plus.validate().unwrap();
        s.minus.validate().unwrap();
    }

    #[test]
    fn split_through_vertex_only_is_rejected() {
        let tri = ConvexPolytope::polygon(vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(1.0, 0.0, 0.0),
            Point::new(0.0, 1.0, 0.0),
        ])
        .unwrap();
        // the line x + y = 1 touches the triangle along an edge only
        let u = Point::new(1.0, 1.0, 0.0).normalize();
        assert!(matches!(tri.split(&h(u, 1.0 / 2f64.sqrt())), Err(Error::DegenerateSplit)));
        // the line x = 0 passes through two vertices and leaves one side empty
        assert!(matches!(tri.split(&h(Point::x(), 0.0)), Err(Error::DegenerateSplit)));
        // a line missing the triangle entirely
        assert!(matches!(tri.split(&h(Point::x(), 3.0)), Err(Error::DegenerateSplit)));
    }

    #[test]
    fn split_through_vertex_and_edge() {
        let tri = ConvexPolytope::polygon(vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(2.0, 0.0, 0.0),
            Point::new(0.0, 2.0, 0.0),
        ])
        .unwrap();
        let u = Point::new(1.0, -1.0, 0.0).normalize();
        let s = tri.split(&h(u, 0.0)).unwrap();
        assert_relative_eq!(s.plus.volume(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(s.minus.volume(), 1.0, epsilon = 1e-14);
        assert_relative_eq!((s.section[1] - s.section[0]).norm(), 2f64.sqrt(), epsilon = 1e-14);
    }

    fn random_polytope(dim: usize, rng: &mut impl Rng) -> ConvexPolytope {
        let start = match dim {
            2 => ConvexPolytope::square(2.0).unwrap(),
            _ => ConvexPolytope::cube(2.0).unwrap(),
        };
        let center = Point::new(1.0, 1.0, if dim == 3 { 1.0 } else { 0.0 });
        let mut p = start;
        for _ in 0..rng.random_range(0..6) {
            let u = unit_vector(dim, rng);
            let b = u.dot(&center) + rng.random_range(0.3..1.2);
            if let Some(q) = p.clip(&u, b) {
                p = q;
            }
        }
        p.translated(&Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), 0.0))
    }

    #[test]
    fn random_split_fuzzing() {
        let mut rng = stream(2024);
        for trial in 0..1000 {
            let dim = if trial % 2 == 0 { 2 } else { 3 };
            let p = random_polytope(dim, &mut rng);
            p.validate().unwrap();
            let c = p.vertex_centroid();
            let u = unit_vector(dim, &mut rng);
            let w = p.width(&u);
            let r = u.dot(&c) + rng.random_range(-0.3..0.3) * w;
            let plane = h(u, r);
            let Ok(s) = p.split(&plane) else { continue };
            let v = p.volume();
            assert!((s.plus.volume() + s.minus.volume() - v).abs() <= 1e-9 * v, "trial {trial}");
            s.plus.validate().unwrap();
            s.minus.validate().unwrap();
            let eps = p.eps();
            for x in &s.section {
                assert!((plane.normal().dot(x) - plane.offset()).abs() < eps);
            }
            for k in 0..8 {
                let a = (k as f64 * 0.7).sin();
                let d = unit_vector(dim, &mut rng) * a.signum();
                assert!(s.plus.width(&d).max(s.minus.width(&d)) <= p.width(&d) + eps);
            }
            let f = Facet::new(dim, s.section.clone(), *plane.normal(), 1.0);
            assert!(f.area() > 0.0);
        }
    }

    #[test]
    fn section_matches_split() {
        let c = ConvexPolytope::cube(1.0).unwrap();
        let u = Point::new(0.2, 0.5, 1.0).normalize();
        let plane = h(u, u.dot(&Point::new(0.5, 0.5, 0.5)));
        let a = c.section_loop(&plane).unwrap();
        let b = c.split(&plane).unwrap().section;
        assert_relative_eq!(loop_area(&a), loop_area(&b), epsilon = 1e-12);
        assert!(c.section_loop(&h(Point::z(), 2.0)).is_none());
    }
}
