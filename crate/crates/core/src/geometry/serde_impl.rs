//! JSON forms: `{"d":2,"vertices":[[x,y],...]}` and
//! `{"d":3,"vertices":[...],"faces":[[i,j,k,...],...]}` for polytopes,
//! `{"vertices":[...],"normal":[...],"birth_time":t}` for facets.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{coords, point_from, ConvexPolytope, Facet, Point};
use crate::error::Error;

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    d: usize,
    vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<Vec<usize>>>,
}

impl TryFrom<PolytopeRepr> for ConvexPolytope {
    type Error = Error;

    fn try_from(r: PolytopeRepr) -> Result<Self, Error> {
        let vertices = r
            .vertices
            .iter()
            .map(|c| {
                if c.len() != r.d {
                    return Err(Error::DimensionMismatch { expected: r.d, found: c.len() });
                }
                point_from(c).ok_or(Error::UnsupportedDimension(c.len()))
            })
            .collect::<Result<Vec<Point>, Error>>()?;
        match (r.d, r.faces) {
            (2, _) => ConvexPolytope::polygon(vertices),
            (3, Some(faces)) => ConvexPolytope::polyhedron(vertices, faces),
            (3, None) => Err(Error::InvalidPolytope("polyhedron JSON needs \"faces\"".into())),
            (d, _) => Err(Error::UnsupportedDimension(d)),
        }
    }
}

impl From<&ConvexPolytope> for PolytopeRepr {
    fn from(p: &ConvexPolytope) -> Self {
        PolytopeRepr {
            d: p.dim,
            vertices: p.vertices.iter().map(|v| coords(v, p.dim)).collect(),
            faces: (p.dim == 3).then(|| p.faces.iter().map(|f| f.indices.clone()).collect()),
        }
    }
}

impl Serialize for ConvexPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolytopeRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexPolytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolytopeRepr::deserialize(d)?;
        ConvexPolytope::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct FacetRepr {
    vertices: Vec<Vec<f64>>,
    normal: Vec<f64>,
    birth_time: f64,
}

impl Serialize for Facet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FacetRepr {
            vertices: self.vertex_coords(),
            normal: coords(&self.normal, self.dim),
            birth_time: self.birth_time,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Facet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = FacetRepr::deserialize(d)?;
        let dim = r.normal.len();
        let normal = point_from(&r.normal).ok_or_else(|| D::Error::custom("normal must have 2 or 3 coordinates"))?;
        let vertices = r
            .vertices
            .iter()
            .map(|c| point_from(c).filter(|_| c.len() == dim))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| D::Error::custom("facet vertex dimension mismatch"))?;
        Ok(Facet::new(dim, vertices, normal, r.birth_time))
    }
}
