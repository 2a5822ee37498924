//! Exact integer model of D4 (coordinates all even or all odd, minimal
//! distance 2), the 24-cell `Y_m` as an intersection of half-spaces, and its
//! truncation on facets 1, 16 and 17.
//!
//! Facet `i` of `Y_m` is `{x : n_i · x ≤ 2m}` where `n_i` ranges over the 24
//! signed permutations of `(1,1,0,0)`. Truncating `h` layers moves the
//! right-hand side to `2(m - h)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Coord = [i64; 4];

/// Default largest `m` accepted by [`count_points_oracle`].
pub const ORACLE_CAP: u32 = 17;

/// Facet indices carrying the three truncations, in `h` order.
pub const TRUNCATED_FACETS: [usize; 3] = [1, 16, 17];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePoint(Coord);

impl LatticePoint {
    pub fn new(x: Coord) -> Result<Self> {
        if is_d4_point(x) {
            Ok(LatticePoint(x))
        } else {
            Err(Error::Domain(format!("{x:?} has mixed parity")))
        }
    }

    pub fn coords(self) -> Coord {
        self.0
    }
}

impl std::ops::Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

pub fn is_d4_point(x: Coord) -> bool {
    let p = x[0].rem_euclid(2);
    x.iter().all(|c| c.rem_euclid(2) == p)
}

pub fn dot(a: Coord, b: Coord) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dist_sq(a: Coord, b: Coord) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FacetNormal {
    pub n: Coord,
    /// 1-based.
    pub index: usize,
}

const PINNED: [(usize, Coord); 3] = [(1, [1, 1, 0, 0]), (16, [-1, 0, -1, 0]), (17, [0, -1, 1, 0])];

/// All 24 facet normals; indices 1, 16 and 17 are pinned, the rest follow in
/// lexicographic order.
pub fn facet_normals() -> Vec<FacetNormal> {
    let mut all = Vec::with_capacity(24);
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    let mut n = [0; 4];
                    n[i] = si;
                    n[j] = sj;
                    all.push(n);
                }
            }
        }
    }
    all.sort();
    let mut rest = all
        .into_iter()
        .filter(|n| !PINNED.iter().any(|(_, p)| p == n));
    (1..=24)
        .map(|index| {
            let n = PINNED
                .iter()
                .find(|(i, _)| *i == index)
                .map(|(_, p)| *p)
                .unwrap_or_else(|| rest.next().expect("24 normals"));
            FacetNormal { n, index }
        })
        .collect()
}

/// `Y_m` truncated by `h[0]`, `h[1]`, `h[2]` layers on facets 1, 16, 17.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TruncationSpec {
    pub m: u32,
    pub h: [u32; 3],
}

impl TruncationSpec {
    pub fn new(m: u32, h: [u32; 3]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        let cap = Self::max_layers(m);
        if let Some(bad) = h.iter().find(|&&x| x > cap) {
            return Err(Error::Domain(format!(
                "h = {bad} exceeds the disjointness bound ⌊(m-1)/2⌋ = {cap} for m = {m}"
            )));
        }
        Ok(TruncationSpec { m, h })
    }

    pub fn untruncated(m: u32) -> Result<Self> {
        Self::new(m, [0; 3])
    }

    /// Largest admissible `h_i`.
    pub fn max_layers(m: u32) -> u32 {
        m.saturating_sub(1) / 2
    }

    /// Same spec with `h` sorted ascending.
    pub fn canonical(self) -> Self {
        let mut h = self.h;
        h.sort_unstable();
        TruncationSpec { m: self.m, h }
    }

    pub fn is_canonical(&self) -> bool {
        self.h[0] <= self.h[1] && self.h[1] <= self.h[2]
    }

    /// `p_k = Σ h_i^k`.
    pub fn power_sum(&self, k: u32) -> i128 {
        self.h.iter().map(|&x| (x as i128).pow(k)).sum()
    }

    /// Right-hand side `n_i · x ≤ rhs` for each facet, indexed like [`facet_normals`].
    pub fn rhs(&self) -> [i64; 24] {
        let mut r = [2 * self.m as i64; 24];
        for (k, &f) in TRUNCATED_FACETS.iter().enumerate() {
            r[f - 1] = 2 * (self.m as i64 - self.h[k] as i64);
        }
        r
    }
}

/// Canonical specs at `m` with every `h_i ≤ h_max` (clamped to the
/// disjointness bound), in lexicographic order.
pub fn canonical_specs(m: u32, h_max: u32) -> Vec<TruncationSpec> {
    let cap = h_max.min(TruncationSpec::max_layers(m));
    let mut out = Vec::new();
    for a in 0..=cap {
        for b in a..=cap {
            for c in b..=cap {
                out.push(TruncationSpec { m, h: [a, b, c] });
            }
        }
    }
    out
}

/// Every spec at `m` (all orderings) with `h_i ≤ h_max`.
pub fn all_specs(m: u32, h_max: u32) -> Vec<TruncationSpec> {
    let cap = h_max.min(TruncationSpec::max_layers(m));
    let mut out = Vec::new();
    for a in 0..=cap {
        for b in 0..=cap {
            for c in 0..=cap {
                out.push(TruncationSpec { m, h: [a, b, c] });
            }
        }
    }
    out
}

/// Half-space description of a polytope `{x : n_i · x ≤ rhs_i}`.
#[derive(Clone, Debug)]
pub struct Polytope {
    normals: Vec<Coord>,
    rhs: Vec<i64>,
}

impl Polytope {
    pub fn truncated(spec: &TruncationSpec) -> Self {
        Self::with_rhs(spec.rhs())
    }

    /// `Y_m` with `h` layers removed from facet 1 only; unlike
    /// [`TruncationSpec`] this allows any `0 ≤ h ≤ m`.
    pub fn single_facet(m: u32, h: u32) -> Self {
        let mut r = [2 * m as i64; 24];
        r[0] = 2 * (m as i64 - h as i64);
        Self::with_rhs(r)
    }

    fn with_rhs(rhs: [i64; 24]) -> Self {
        Polytope {
            normals: facet_normals().into_iter().map(|f| f.n).collect(),
            rhs: rhs.to_vec(),
        }
    }

    pub fn contains(&self, x: Coord) -> bool {
        self.normals
            .iter()
            .zip(&self.rhs)
            .all(|(n, &r)| dot(*n, x) <= r)
    }

    /// Normals whose hyperplane contains every point of `pts`.
    pub fn active_normals(&self, pts: &[Coord]) -> Vec<Coord> {
        self.normals
            .iter()
            .zip(&self.rhs)
            .filter(|(n, &r)| pts.iter().all(|p| dot(**n, *p) == r))
            .map(|(n, _)| *n)
            .collect()
    }
}

fn check_cap(m: u32, cap: u32) -> Result<()> {
    if m > cap {
        return Err(Error::Resource(format!(
            "oracle enumeration capped at m = {cap}, requested m = {m}"
        )));
    }
    Ok(())
}

/// Counts lattice points of `spec`'s polytope by enumerating the box
/// `[-2m, 2m]^4`, parity-filtered, in exact integer arithmetic.
pub fn count_points_oracle(spec: &TruncationSpec) -> Result<u64> {
    count_points_oracle_capped(spec, ORACLE_CAP)
}

pub fn count_points_oracle_capped(spec: &TruncationSpec, cap: u32) -> Result<u64> {
    check_cap(spec.m, cap)?;
    let poly = Polytope::truncated(spec);
    let b = 2 * spec.m as i64;
    let total = (-b..=b)
        .into_par_iter()
        .map(|x0| {
            let mut c = 0u64;
            let start = |lo: i64| {
                if (lo - x0).rem_euclid(2) == 0 {
                    lo
                } else {
                    lo + 1
                }
            };
            let s = start(-b);
            for x1 in (s..=b).step_by(2) {
                for x2 in (s..=b).step_by(2) {
                    for x3 in (s..=b).step_by(2) {
                        if poly.contains([x0, x1, x2, x3]) {
                            c += 1;
                        }
                    }
                }
            }
            c
        })
        .sum();
    Ok(total)
}

/// Lists the lattice points (lexicographic order) for small `m`.
pub fn enumerate_points(spec: &TruncationSpec, cap: u32) -> Result<Vec<Coord>> {
    check_cap(spec.m, cap)?;
    let poly = Polytope::truncated(spec);
    let b = 2 * spec.m as i64;
    let mut out = Vec::new();
    for x0 in -b..=b {
        for x1 in -b..=b {
            for x2 in -b..=b {
                for x3 in -b..=b {
                    let x = [x0, x1, x2, x3];
                    if is_d4_point(x) && poly.contains(x) {
                        out.push(x);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the representative-point checks for one `(m, h)`.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentativeReport {
    pub m: u32,
    pub h: u32,
    /// `(check name, passed)`; every entry is true when returned as `Ok`.
    pub checks: Vec<(String, bool)>,
}

/// Exact checks that the new vertices, edges and faces created by cutting
/// `h` layers from facet 1 carry D4 points at the expected spacing.
///
/// Needs `1 ≤ h ≤ m - 1` so the cut is a proper facet.
pub fn check_representative_points(m: u32, h: u32) -> Result<RepresentativeReport> {
    if h == 0 || h >= m {
        return Err(Error::Domain(format!(
            "representative checks need 1 ≤ h ≤ m-1, got m = {m}, h = {h}"
        )));
    }
    let (mi, hi) = (m as i64, h as i64);
    let poly = Polytope::single_facet(m, h);
    let mut checks = Vec::new();
    let mut record = |name: &str, ok: bool| checks.push((name.to_string(), ok));

    let on_face = |face: &[Coord], p: Coord| {
        let active = poly.active_normals(face);
        let rhs_of = |n: Coord| dot(n, face[0]);
        is_d4_point(p) && poly.contains(p) && active.iter().all(|&n| dot(n, p) == rhs_of(n))
    };

    // vertex
    let v0 = [2 * mi - hi, -hi, hi, -hi];
    record("vertex: D4 point", is_d4_point(v0));
    record(
        "vertex: on truncating hyperplane",
        dot([1, 1, 0, 0], v0) == 2 * (mi - hi),
    );
    record("vertex: inside polytope", poly.contains(v0));

    // square edge
    let e_sq = [v0, [2 * mi - hi, -hi, hi, hi]];
    let p_sq = [2 * mi - hi, -hi, hi, 2 - hi];
    record("square edge: point on edge", on_face(&e_sq, p_sq));
    record("square edge: distance 2", dist_sq(p_sq, v0) == 4);

    // hexagon edge
    let e_hex = [v0, [mi, mi - 2 * hi, mi, -mi]];
    let p_hex = [2 * mi - hi - 1, 1 - hi, hi + 1, -(hi + 1)];
    record("hexagon edge: point on edge", on_face(&e_hex, p_hex));
    record("hexagon edge: distance 2", dist_sq(p_hex, v0) == 4);

    // square face
    let q = [
        [2 * mi - hi, -hi, hi, hi],
        [2 * mi - hi, -hi, -hi, hi],
        [2 * mi - hi, -hi, hi, -hi],
        [2 * mi - hi, -hi, -hi, -hi],
    ];
    let sq = [
        q[0],
        [2 * mi - hi, -hi, hi, hi - 2],
        [2 * mi - hi, -hi, hi - 2, hi],
        [2 * mi - hi, -hi, hi - 2, hi - 2],
    ];
    record(
        "square face: points on face",
        sq.iter().all(|&p| on_face(&q, p)),
    );
    let sides = [(0, 1), (0, 2), (1, 3), (2, 3)]
        .iter()
        .all(|&(a, b)| dist_sq(sq[a], sq[b]) == 4);
    let diags = dist_sq(sq[0], sq[3]) == 8 && dist_sq(sq[1], sq[2]) == 8;
    record("square face: side-2 square", sides && diags);

    // hexagon face
    let hex = [
        [2 * mi - hi, -hi, hi, -hi],
        [2 * mi - hi, -hi, hi, hi],
        [mi, mi - 2 * hi, mi, mi],
    ];
    let tri = [
        hex[1],
        [2 * mi - hi - 1, 1 - hi, hi + 1, hi + 1],
        [2 * mi - hi - 1, 1 - hi, hi + 1, hi - 1],
    ];
    record(
        "hexagon face: points on face",
        tri.iter().all(|&p| on_face(&hex, p)),
    );
    let equilateral = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .all(|&(a, b)| dist_sq(tri[a], tri[b]) == 4);
    record("hexagon face: side-2 triangle", equilateral);

    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::VerificationFailure(format!(
            "{name} (m = {m}, h = {h})"
        )));
    }
    Ok(RepresentativeReport { m, h, checks })
}
