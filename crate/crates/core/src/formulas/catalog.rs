//! Facet, face and edge data of `Y_m` cut on one facet, with external
//! angles derived from the facet normals meeting at each representative.

use serde::Serialize;

use super::Evaluator;
use crate::error::{Error, Result};
use crate::interval::{atan, tan, Interval};
use crate::lattice::{dot, Coord, Polytope};

/// Spherical triangle area from its three side arcs:
/// `tan(E/4)² = tan(s/2) tan((s−a)/2) tan((s−b)/2) tan((s−c)/2)`.
pub fn lhuilier_area(a: Interval, b: Interval, c: Interval) -> Result<Interval> {
    let pos = [a, b, c].iter().all(|x| x.lo() > 0.0);
    let tri = (a + b).certainly_gt(c) && (a + c).certainly_gt(b) && (b + c).certainly_gt(a);
    if !pos || !tri {
        return Err(Error::Domain(format!(
            "not a certified spherical triangle: {a:?}, {b:?}, {c:?}"
        )));
    }
    let s = a + b + c;
    let two = Interval::point(2.0);
    let four = Interval::point(4.0);
    let args = [s, s - two * a, s - two * b, s - two * c].map(|x| x.checked_div(four));
    let mut prod = Interval::ONE;
    for x in args {
        prod = prod * tan(x?)?;
    }
    // each factor is positive once the triangle inequalities hold
    let t = prod.clamp_nonneg().sqrt()?;
    Ok(atan(t)? * four)
}

/// External angles of the cut polytope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FaceAngleTable {
    pub facet: Interval,
    pub face_square: Interval,
    pub face_triangular: Interval,
    pub edge_square: Interval,
    pub edge_other: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dim {
    Facet,
    Face,
    Edge,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub dim: Dim,
    pub name: &'static str,
    pub count: u32,
    /// 3-volume, area or length of one member.
    pub measure: Interval,
    pub angle: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceEdgeCatalog {
    pub m: u32,
    pub h: u32,
    pub entries: Vec<CatalogEntry>,
    pub angles: FaceAngleTable,
}

/// Representative vertices at `(m, h)`. Faces and edges are given by enough
/// vertices to pin down their affine hull.
fn representatives(m: i64, h: i64) -> [(&'static str, Vec<Coord>); 9] {
    let v0 = [2 * m - h, -h, h, -h];
    let v1 = [2 * m - h, -h, h, h];
    [
        (
            "Q",
            vec![v1, [2 * m - h, -h, -h, h], v0, [2 * m - h, -h, -h, -h]],
        ),
        ("H", vec![v0, v1, [m, m - 2 * h, m, m]]),
        ("tri_cut", vec![v1, [m, -m, m, m], [m, m - 2 * h, m, m]]),
        ("trapezium", vec![v0, v1, [m, -m, m, m], [m, -m, m, -m]]),
        (
            "tri",
            vec![[m, -m, m, -m], [0, -2 * m, 0, 0], [m, -m, m, m]],
        ),
        ("E_sq", vec![v0, v1]),
        ("E_hex", vec![v0, [m, m - 2 * h, m, -m]]),
        ("E_tri", vec![v0, [m, -m, m, -m]]),
        ("E", vec![[m, -m, m, -m], [0, -2 * m, 0, 0]]),
    ]
}

/// Reference cut used to read off normal cones; they do not depend on
/// `(m, h)` as long as `0 < h < m`.
const REFERENCE: (i64, i64) = (5, 2);

fn reference_normals(name: &str) -> Vec<Coord> {
    let (m, h) = REFERENCE;
    let poly = Polytope::single_facet(m as u32, h as u32);
    let (_, pts) = representatives(m, h)
        .into_iter()
        .find(|(n, _)| *n == name)
        .expect("known representative");
    poly.active_normals(&pts)
}

impl Evaluator {
    /// Angle between two facet normals; they are signed permutations of
    /// `(1,1,0,0)` so the cosine is `dot/2`.
    fn normal_angle(&self, a: Coord, b: Coord) -> Result<Interval> {
        let pi = self.constants.pi;
        match dot(a, b) {
            1 => pi.checked_div(Interval::point(3.0)),
            0 => pi.checked_div(Interval::point(2.0)),
            d => Err(Error::Internal(format!("unexpected normal product {d}"))),
        }
    }

    fn face_angle(&self, name: &str) -> Result<Interval> {
        let ns = reference_normals(name);
        if ns.len() != 2 {
            return Err(Error::Internal(format!(
                "face {name} has {} active facets",
                ns.len()
            )));
        }
        let two_pi = self.constants.pi * Interval::point(2.0);
        self.normal_angle(ns[0], ns[1])?.checked_div(two_pi)
    }

    fn edge_angle(&self, name: &str) -> Result<Interval> {
        let ns = reference_normals(name);
        if ns.len() != 3 {
            return Err(Error::Internal(format!(
                "edge {name} has {} active facets",
                ns.len()
            )));
        }
        let area = lhuilier_area(
            self.normal_angle(ns[0], ns[1])?,
            self.normal_angle(ns[0], ns[2])?,
            self.normal_angle(ns[1], ns[2])?,
        )?;
        area.checked_div(self.constants.pi * Interval::point(4.0))
    }

    pub fn face_angle_table(&self) -> Result<FaceAngleTable> {
        Ok(FaceAngleTable {
            facet: Interval::point(0.5),
            face_square: self.face_angle("Q")?,
            face_triangular: self.face_angle("tri")?,
            edge_square: self.edge_angle("E_sq")?,
            edge_other: self.edge_angle("E")?,
        })
    }

    /// Every facet, face and edge class of `Y_m` cut by `h` layers on one
    /// facet, `0 ≤ h ≤ m`.
    pub fn face_edge_catalog(&self, m: u32, h: u32) -> Result<FaceEdgeCatalog> {
        if h > m {
            return Err(Error::Domain(format!("h = {h} exceeds m = {m}")));
        }
        let c = &self.constants;
        let (mi, hi) = (m as i64, h as i64);
        let n = |x: i64| Interval::from_int(x);
        let frac = |a: i64, b: i64| n(a).checked_div(n(b)).expect("nonzero");
        let r2 = c.sqrt2;
        let r3 = c.sqrt3;
        let mh = mi + hi;

        let facet = |name, count, vol| CatalogEntry {
            dim: Dim::Facet,
            name,
            count,
            measure: vol,
            angle: Interval::point(0.5),
        };
        let facets = [
            facet("X_cut", 1, frac(8, 3) * r2 * n(mh.pow(3) - 3 * hi.pow(3))),
            facet(
                "X_adjacent_hex",
                8,
                frac(2, 3) * r2 * n(5 * mi.pow(3) + 3 * hi.pow(3) - mh.pow(3)),
            ),
            facet(
                "X_adjacent_vertex",
                6,
                frac(4, 3) * r2 * n(2 * mi.pow(3) - hi.pow(3)),
            ),
            facet("X_octahedron", 9, frac(8, 3) * r2 * n(mi.pow(3))),
        ];

        let face_sq = self.face_angle("Q")?;
        let face_tri = [
            self.face_angle("H")?,
            self.face_angle("tri_cut")?,
            self.face_angle("trapezium")?,
            self.face_angle("tri")?,
        ];
        let face = |name, count, area, angle| CatalogEntry {
            dim: Dim::Face,
            name,
            count,
            measure: area,
            angle,
        };
        let faces = [
            face("Q", 6, n(4 * hi * hi), face_sq),
            face("H", 8, r3 * n(mh * mh - 3 * hi * hi), face_tri[0]),
            face("triangle_cut", 12, r3 * n((mi - hi).pow(2)), face_tri[1]),
            face("trapezium", 24, r3 * n(mi * mi - hi * hi), face_tri[2]),
            face("triangle", 52, r3 * n(mi * mi), face_tri[3]),
        ];

        let edge = |name, count, len, angle| CatalogEntry {
            dim: Dim::Edge,
            name,
            count,
            measure: len,
            angle,
        };
        let edges = [
            edge("E_square", 24, n(2 * hi), self.edge_angle("E_sq")?),
            edge("E_hexagon", 12, n(2 * (mi - hi)), self.edge_angle("E_hex")?),
            edge(
                "E_shortened",
                24,
                n(2 * (mi - hi)),
                self.edge_angle("E_tri")?,
            ),
            edge("E", 60, n(2 * mi), self.edge_angle("E")?),
        ];

        let entries = facets.into_iter().chain(faces).chain(edges).collect();
        Ok(FaceEdgeCatalog {
            m,
            h,
            entries,
            angles: self.face_angle_table()?,
        })
    }

    /// `Σ count · measure · angle · κ` over entries of one dimension, with
    /// `κ = 2, π, 4π/3` for facets, faces, edges.
    pub fn catalog_term(&self, cat: &FaceEdgeCatalog, dim: Dim) -> Interval {
        let kappa = match dim {
            Dim::Facet => Interval::point(2.0),
            Dim::Face => self.constants.kappa2,
            Dim::Edge => self.constants.kappa3,
        };
        cat.entries
            .iter()
            .filter(|e| e.dim == dim)
            .map(|e| Interval::from_int(e.count as i64) * e.measure * e.angle * kappa)
            .sum()
    }
}

/// Vertex lists used by the catalog, for coordinate-level checks.
pub fn representative_vertices(m: u32, h: u32) -> Vec<(&'static str, Vec<Coord>)> {
    representatives(m as i64, h as i64).into_iter().collect()
}
