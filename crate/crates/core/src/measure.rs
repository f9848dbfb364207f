//! Translation-invariant hyperplane measures.
//!
//! A measure is a directional part times Lebesgue measure on offsets. Directions
//! are canonically oriented (first nonzero coordinate positive) so that every
//! hyperplane has exactly one parametrisation, and the directional part has
//! total mass one. With that normalisation the induced Poisson hyperplane
//! process, and the STIT tessellation at time `t`, have surface density `t`.
//!
//! The hitting measure of a convex body is then the directional average of
//! its width; for a segment in the isotropic case it is
//! `2 κ_{d-1} / (d κ_d)` times the length.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constants::segment_constant;
use crate::error::{Error, Result};
use crate::geometry::{coords, point_from, ConvexBody, Point};
use crate::rng::unit_vector;

const UNIT_TOL: f64 = 1e-12;
/// Proposals allowed per isotropic draw. The acceptance probability is
/// mean width over diameter, never below 1/2, so hitting this means the body
/// is broken.
pub const REJECTION_CAP: usize = 10_000;

/// `H = {x : ⟨x, normal⟩ = offset}` with a canonically oriented unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyperplane {
    normal: Point,
    offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        let len = normal.norm();
        if !(len > 0.0) || !len.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidConfig(format!("bad hyperplane normal {normal:?}")));
        }
        let (normal, offset) = canonical(normal / len, offset / len);
        Ok(Hyperplane { normal, offset })
    }

    /// For internally generated unit normals.
    pub(crate) fn from_raw(normal: Point, offset: f64) -> Self {
        Hyperplane::new(normal, offset).expect("hyperplane with zero normal")
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed distance of `x` from the hyperplane.
    pub fn signed_distance(&self, x: &Point) -> f64 {
        self.normal.dot(x) - self.offset
    }

    pub fn hits<B: ConvexBody + ?Sized>(&self, body: &B) -> bool {
        let hi = body.support(&self.normal);
        let lo = -body.support(&-self.normal);
        lo < self.offset && self.offset < hi
    }
}

fn canonical(u: Point, r: f64) -> (Point, f64) {
    match u.iter().find(|c| **c != 0.0) {
        Some(c) if *c < 0.0 => (-u, -r),
        _ => (u, r),
    }
}

/// One direction of a discrete directional measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub direction: Point,
    pub weight: f64,
}

/// Directional part of a translation-invariant hyperplane measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub enum DirectionalMeasure {
    /// Uniform distribution of normals.
    Isotropic { dim: usize },
    /// Finitely many normal directions with weights summing to one.
    Discrete { dim: usize, atoms: Vec<Atom> },
}

impl DirectionalMeasure {
    pub fn isotropic(dim: usize) -> Result<Self> {
        match dim {
            2 | 3 => Ok(DirectionalMeasure::Isotropic { dim }),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// Validates the atoms: unit-normalisable, pairwise distinct up to sign,
    /// positive weights summing to one and directions spanning `R^d`.
    pub fn discrete(dim: usize, atoms: Vec<(Point, f64)>) -> Result<Self> {
        if !(dim == 2 || dim == 3) {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for (u, w) in atoms {
            if dim == 2 && u.z != 0.0 {
                return Err(Error::DimensionMismatch { expected: 2, found: 3 });
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidMeasure(format!("weight {w} must be positive")));
            }
            let len = u.norm();
            if !(len > 0.0) {
                return Err(Error::InvalidMeasure("zero direction".into()));
            }
            let (direction, _) = canonical(u / len, 0.0);
            if out.iter().any(|a| (a.direction - direction).norm() < UNIT_TOL) {
                return Err(Error::InvalidMeasure("repeated or antipodal directions".into()));
            }
            out.push(Atom { direction, weight: w });
        }
        let total: f64 = out.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, expected 1")));
        }
        if !spans(dim, &out) {
            return Err(Error::InvalidMeasure(format!("directions do not span R^{dim}")));
        }
        Ok(DirectionalMeasure::Discrete { dim, atoms: out })
    }

    /// Equal weights on the coordinate axes: the Mondrian measure.
    pub fn axes(dim: usize) -> Result<Self> {
        let atoms = (0..dim)
            .map(|k| {
                let mut e = Point::zeros();
                e[k] = 1.0;
                (e, 1.0 / dim as f64)
            })
            .collect();
        DirectionalMeasure::discrete(dim, atoms)
    }

    pub fn dim(&self) -> usize {
        match self {
            DirectionalMeasure::Isotropic { dim } | DirectionalMeasure::Discrete { dim, .. } => *dim,
        }
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, DirectionalMeasure::Isotropic { .. })
    }

    /// `Λ([xy])`, the measure of hyperplanes separating `x` and `y`.
    pub fn segment_hitting_measure(&self, x: &Point, y: &Point) -> Result<f64> {
        let dim = self.dim();
        if dim == 2 && (x.z != 0.0 || y.z != 0.0) {
            return Err(Error::DimensionMismatch { expected: 2, found: 3 });
        }
        let d = y - x;
        Ok(match self {
            DirectionalMeasure::Isotropic { .. } => segment_constant(dim) * d.norm(),
            DirectionalMeasure::Discrete { atoms, .. } => atoms.iter().map(|a| a.weight * a.direction.dot(&d).abs()).sum(),
        })
    }

    /// `Λ([K])`, the measure of hyperplanes hitting `K`.
    pub fn body_hitting_measure<B: ConvexBody + ?Sized>(&self, body: &B) -> Result<f64> {
        if body.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: body.dim() });
        }
        let v = match self {
            DirectionalMeasure::Isotropic { .. } => body.mean_width(),
            DirectionalMeasure::Discrete { atoms, .. } => atoms.iter().map(|a| a.weight * body.width(&a.direction)).sum(),
        };
        if !(v > 1e-14) {
            return Err(Error::NonPositiveRate(v));
        }
        Ok(v)
    }

    /// Draws `H` from `Λ` restricted to `[K]` and normalised.
    ///
    /// Isotropic: a uniform direction is accepted with probability
    /// `width(K, u) / diam(K)`; the offset is uniform on the support interval.
    /// Discrete: direction `i` with probability proportional to
    /// `w_i width(K, u_i)`, offset uniform.
    pub fn sample_hyperplane<B, R>(&self, body: &B, rng: &mut R) -> Result<Hyperplane>
    where
        B: ConvexBody + ?Sized,
        R: Rng + ?Sized,
    {
        if body.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: body.dim() });
        }
        let u = match self {
            DirectionalMeasure::Isotropic { dim } => {
                let diam = body.diameter();
                let mut accepted = None;
                for _ in 0..REJECTION_CAP {
                    let u = unit_vector(*dim, rng);
                    if rng.random::<f64>() * diam < body.width(&u) {
                        accepted = Some(u);
                        break;
                    }
                }
                accepted.ok_or(Error::RejectionCap(REJECTION_CAP))?
            }
            DirectionalMeasure::Discrete { atoms, .. } => {
                let weights: Vec<f64> = atoms.iter().map(|a| a.weight * body.width(&a.direction)).collect();
                let total: f64 = weights.iter().sum();
                let mut target = rng.random::<f64>() * total;
                let mut pick = atoms.len() - 1;
                for (i, w) in weights.iter().enumerate() {
                    if target < *w {
                        pick = i;
                        break;
                    }
                    target -= w;
                }
                atoms[pick].direction
            }
        };
        let hi = body.support(&u);
        let lo = -body.support(&-u);
        let offset = lo + (hi - lo) * rng.random::<f64>();
        Ok(Hyperplane::from_raw(u, offset))
    }
}

fn spans(dim: usize, atoms: &[Atom]) -> bool {
    let tol = 1e-9;
    match dim {
        2 => atoms
            .iter()
            .enumerate()
            .any(|(i, a)| atoms[i + 1..].iter().any(|b| a.direction.cross(&b.direction).norm() > tol)),
        _ => {
            let n = atoms.len();
            (0..n).any(|i| {
                (i + 1..n).any(|j| {
                    let c = atoms[i].direction.cross(&atoms[j].direction);
                    (j + 1..n).any(|k| c.dot(&atoms[k].direction).abs() > tol)
                })
            })
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum MeasureRepr {
    Isotropic { d: usize },
    Discrete { atoms: Vec<AtomRepr> },
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    u: Vec<f64>,
    w: f64,
}

impl TryFrom<MeasureRepr> for DirectionalMeasure {
    type Error = Error;

    fn try_from(r: MeasureRepr) -> Result<Self> {
        match r {
            MeasureRepr::Isotropic { d } => DirectionalMeasure::isotropic(d),
            MeasureRepr::Discrete { atoms } => {
                let dim = atoms.first().map(|a| a.u.len()).ok_or_else(|| Error::InvalidMeasure("no atoms".into()))?;
                let atoms = atoms
                    .iter()
                    .map(|a| {
                        if a.u.len() != dim {
                            return Err(Error::DimensionMismatch { expected: dim, found: a.u.len() });
                        }
                        let u = point_from(&a.u).ok_or(Error::UnsupportedDimension(a.u.len()))?;
                        Ok((u, a.w))
                    })
                    .collect::<Result<Vec<_>>>()?;
                DirectionalMeasure::discrete(dim, atoms)
            }
        }
    }
}

impl From<DirectionalMeasure> for MeasureRepr {
    fn from(m: DirectionalMeasure) -> Self {
        match m {
            DirectionalMeasure::Isotropic { dim } => MeasureRepr::Isotropic { d: dim },
            DirectionalMeasure::Discrete { dim, atoms } => MeasureRepr::Discrete {
                atoms: atoms.iter().map(|a| AtomRepr { u: coords(&a.direction, dim), w: a.weight }).collect(),
            },
        }
    }
}
