//! Volumes `vol(P + B⁴)` as exact rational combinations of a fixed set of
//! transcendental constants.

use num_rational::Ratio;
use serde::Serialize;

use super::Evaluator;
use crate::interval::Interval;
use crate::lattice::TruncationSpec;

pub type Q = Ratio<i128>;

/// Constants spanning every volume term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    One,
    Sqrt2,
    Pi,
    Sqrt3Pi,
    /// `3·arccos(1/3) − π`, the area of the spherical triangle with all
    /// sides `π/3`.
    EdgeExcess,
    /// `arctan(3 − 2√2)`.
    AtanSilver,
    PiSq,
}

pub const BASIS_LEN: usize = 7;

impl Basis {
    pub const ALL: [Basis; BASIS_LEN] = [
        Basis::One,
        Basis::Sqrt2,
        Basis::Pi,
        Basis::Sqrt3Pi,
        Basis::EdgeExcess,
        Basis::AtanSilver,
        Basis::PiSq,
    ];
}

/// `Σ coeff[b] · b` over [`Basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(pub [Q; BASIS_LEN]);

impl Default for LinearForm {
    fn default() -> Self {
        LinearForm([Q::from_integer(0); BASIS_LEN])
    }
}

impl LinearForm {
    pub fn term(b: Basis, c: Q) -> Self {
        let mut f = LinearForm::default();
        f.0[b as usize] = c;
        f
    }

    pub fn coeff(&self, b: Basis) -> Q {
        self.0[b as usize]
    }

    pub fn plus(mut self, b: Basis, c: Q) -> Self {
        self.0[b as usize] += c;
        self
    }
}

impl std::ops::Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

fn z(n: i128) -> Q {
    Q::from_integer(n)
}

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// `vol(Y_m + B⁴) = 32m⁴ + 64√2m³ + 16√3πm² + 192(arccos(1/3) − π/3)m + π²/2`.
pub fn y_plus_ball_form(m: u32) -> LinearForm {
    let m = m as i128;
    LinearForm::term(Basis::One, z(32 * m.pow(4)))
        .plus(Basis::Sqrt2, z(64 * m.pow(3)))
        .plus(Basis::Sqrt3Pi, z(16 * m * m))
        // 192(arccos(1/3) − π/3) = 64(3 arccos(1/3) − π)
        .plus(Basis::EdgeExcess, z(64 * m))
        .plus(Basis::PiSq, q(1, 2))
}

/// The triple-truncation volume polynomial in `m` and the power sums `p_k`.
pub fn truncated_form(spec: &TruncationSpec) -> LinearForm {
    let m = spec.m as i128;
    let p = |k| spec.power_sum(k);
    let (p1, p2, p3, p4) = (p(1), p(2), p(3), p(4));
    let one =
        z(32 * m.pow(4)) - q(16, 3) * z(p1 * m.pow(3)) - z(8 * p2 * m * m) - q(16, 3) * z(p3 * m)
            + q(8, 3) * z(p4);
    let sqrt2 = z(64 * m.pow(3)) - z(8 * p1 * m * m) - z(8 * p2 * m) - q(8, 3) * z(p3);
    let sqrt3pi = z(16 * m * m) - q(4, 3) * z(p1 * m) - q(14, 3) * z(p2);
    LinearForm::term(Basis::One, one)
        .plus(Basis::Sqrt2, sqrt2)
        .plus(Basis::Sqrt3Pi, sqrt3pi)
        .plus(Basis::Pi, z(6 * p2))
        .plus(Basis::EdgeExcess, z(64 * m - 24 * p1))
        .plus(Basis::AtanSilver, z(64 * p1))
        .plus(Basis::PiSq, q(1, 2))
}

/// Steiner split of `vol(P + B⁴)` for `P = Y_m` cut by `h` layers on a single facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakdownForms {
    pub vol4: LinearForm,
    pub facet: LinearForm,
    pub face: LinearForm,
    pub edge: LinearForm,
    pub ball: LinearForm,
}

impl BreakdownForms {
    pub fn single(m: u32, h: u32) -> Self {
        let (m, h) = (m as i128, h as i128);
        let mh = m + h;
        let vol4 = z(32 * m.pow(4)) - q(4, 3) * z(mh.pow(4) - m.pow(4) - 3 * h.pow(4));
        let facet = q(8, 3) * z(25 * m.pow(3) - mh.pow(3));
        // 2√3π/3 (24m² − 2mh + (3√3 − 7)h²); the 3√3·√3 part is 6πh²
        let face = LinearForm::term(
            Basis::Sqrt3Pi,
            q(2, 3) * z(24 * m * m - 2 * m * h - 7 * h * h),
        )
        .plus(Basis::Pi, z(6 * h * h));
        let edge = LinearForm::term(Basis::EdgeExcess, z(64 * m - 24 * h))
            .plus(Basis::AtanSilver, z(64 * h));
        BreakdownForms {
            vol4: LinearForm::term(Basis::One, vol4),
            facet: LinearForm::term(Basis::Sqrt2, facet),
            face,
            edge,
            ball: LinearForm::term(Basis::PiSq, q(1, 2)),
        }
    }

    /// Three disjoint cuts: each term of `Y_m` is corrected by the sum of
    /// the three single-cut corrections.
    pub fn triple(spec: &TruncationSpec) -> Self {
        let base = Self::single(spec.m, 0);
        let mut acc = base.clone();
        for &h in &spec.h {
            let cut = Self::single(spec.m, h);
            acc.vol4 = acc.vol4 + diff(&cut.vol4, &base.vol4);
            acc.facet = acc.facet + diff(&cut.facet, &base.facet);
            acc.face = acc.face + diff(&cut.face, &base.face);
            acc.edge = acc.edge + diff(&cut.edge, &base.edge);
        }
        acc
    }

    pub fn total(&self) -> LinearForm {
        self.vol4.clone()
            + self.facet.clone()
            + self.face.clone()
            + self.edge.clone()
            + self.ball.clone()
    }
}

fn diff(a: &LinearForm, b: &LinearForm) -> LinearForm {
    let mut out = a.clone();
    for (x, y) in out.0.iter_mut().zip(b.0) {
        *x -= y;
    }
    out
}

/// Interval values of the Steiner split.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SteinerBreakdown {
    pub vol4: Interval,
    pub facet_term: Interval,
    pub face_term: Interval,
    pub edge_term: Interval,
    pub ball_term: Interval,
}

impl SteinerBreakdown {
    pub fn sum(&self) -> Interval {
        self.vol4 + self.facet_term + self.face_term + self.edge_term + self.ball_term
    }
}

impl Evaluator {
    pub fn eval_form(&self, f: &LinearForm) -> Interval {
        let k = &self.kernel;
        Basis::ALL
            .iter()
            .filter(|b| *f.coeff(**b).numer() != 0)
            .map(|&b| k.mul(k.ratio(&f.coeff(b)), self.basis_value(b)))
            .fold(Interval::ZERO, |a, t| k.add(a, t))
    }

    pub fn vol_y_plus_ball(&self, m: u32) -> Interval {
        self.eval_form(&y_plus_ball_form(m))
    }

    pub fn steiner_truncated(&self, spec: &TruncationSpec) -> Interval {
        self.eval_form(&truncated_form(spec))
    }

    /// Single cut of `h` layers on facet 1; `0 ≤ h ≤ m`.
    pub fn steiner_breakdown(&self, m: u32, h: u32) -> SteinerBreakdown {
        self.eval_breakdown(&BreakdownForms::single(m, h))
    }

    pub fn steiner_breakdown_spec(&self, spec: &TruncationSpec) -> SteinerBreakdown {
        self.eval_breakdown(&BreakdownForms::triple(spec))
    }

    fn eval_breakdown(&self, f: &BreakdownForms) -> SteinerBreakdown {
        SteinerBreakdown {
            vol4: self.eval_form(&f.vol4),
            facet_term: self.eval_form(&f.facet),
            face_term: self.eval_form(&f.face),
            edge_term: self.eval_form(&f.edge),
            ball_term: self.eval_form(&f.ball),
        }
    }
}
