//! Closed intervals with binary64 endpoints and outward rounding.
//!
//! Every endpoint operation is followed by a check with an error-free
//! transformation (TwoSum, or an `fma` residual); if the rounded value fell on
//! the unsafe side of the exact result it is moved one ulp outward. Results
//! whose exactness cannot be established (underflow, overflow) are widened
//! unconditionally.
//!
//! A [`Kernel`] carries an optional extra widening factor used by the stress
//! mode. It is an explicit value so that concurrent callers do not interfere.

mod constants;
mod elementary;

pub use constants::{ConstantName, ConstantTable, STANDARD_CONSTANTS};
pub use elementary::{atan, cos_point, sin_point, tan};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Below this magnitude an `fma` residual may lose bits to underflow.
const TINY: f64 = 1.0e-280;

#[derive(Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

#[inline]
fn down(x: f64) -> f64 {
    if x == f64::INFINITY {
        f64::MAX
    } else {
        x.next_down()
    }
}

#[inline]
fn up(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        f64::MIN
    } else {
        x.next_up()
    }
}

/// Rounding direction for endpoint computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

impl Dir {
    /// Corrects `s` given the sign of `exact - s`.
    #[inline]
    fn settle(self, s: f64, residual_sign: f64) -> f64 {
        match self {
            Dir::Down if residual_sign < 0.0 => down(s),
            Dir::Up if residual_sign > 0.0 => up(s),
            _ => s,
        }
    }

    #[inline]
    fn blind(self, s: f64) -> f64 {
        match self {
            Dir::Down => down(s),
            Dir::Up => up(s),
        }
    }
}

fn add_dir(a: f64, b: f64, dir: Dir) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s.is_nan() {
            s
        } else {
            clamp_overflow(s, dir)
        };
    }
    // TwoSum
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    dir.settle(s, err)
}

fn mul_dir(a: f64, b: f64, dir: Dir) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return clamp_overflow(p, dir);
    }
    if p.abs() < TINY {
        return dir.blind(p);
    }
    let err = a.mul_add(b, -p);
    dir.settle(p, err)
}

fn div_dir(a: f64, b: f64, dir: Dir) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return clamp_overflow(q, dir);
    }
    if q.abs() < TINY || a.abs() < TINY || b.is_infinite() {
        return dir.blind(q);
    }
    // a - q*b is exact; exact quotient exceeds q iff that residual has the sign of b.
    let r = (-q).mul_add(b, a);
    let sign = if b > 0.0 { r } else { -r };
    dir.settle(q, sign)
}

fn sqrt_dir(a: f64, dir: Dir) -> f64 {
    let s = a.sqrt();
    if a == 0.0 || a == f64::INFINITY {
        return if a == f64::INFINITY && dir == Dir::Down {
            f64::MAX.sqrt()
        } else {
            s
        };
    }
    if a < TINY {
        return dir.blind(s).max(0.0);
    }
    let r = (-s).mul_add(s, a);
    dir.settle(s, r).max(0.0)
}

/// Overflow to an infinity is kept only where it is the safe direction.
fn clamp_overflow(s: f64, dir: Dir) -> f64 {
    match dir {
        Dir::Down if s == f64::INFINITY => f64::MAX,
        Dir::Up if s == f64::NEG_INFINITY => f64::MIN,
        _ => s,
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// The whole (extended) line, used as the result of unbounded ops.
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::Domain("interval endpoint is NaN".into()));
        }
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// Builds an interval from trusted endpoints; used for constant tables.
    pub(crate) const fn from_bits(lo: u64, hi: u64) -> Self {
        Interval {
            lo: f64::from_bits(lo),
            hi: f64::from_bits(hi),
        }
    }

    /// # Panics
    /// If `x` is NaN.
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "point interval from NaN");
        Interval { lo: x, hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128)
    }

    pub fn from_i128(n: i128) -> Self {
        let f = n as f64;
        // `as` rounds to nearest; detect exactness through the back-conversion.
        // f64 values above 2^127 saturate on the way back, so compare in f64 order.
        if f.abs() < 1.6e38 && f as i128 == n {
            return Interval { lo: f, hi: f };
        }
        if f.abs() >= 1.6e38 {
            return Interval {
                lo: down(f),
                hi: up(f),
            };
        }
        if (f as i128) < n {
            Interval { lo: f, hi: up(f) }
        } else {
            Interval { lo: down(f), hi: f }
        }
    }

    /// Enclosure of an exact rational.
    pub fn from_ratio(q: &Ratio<i128>) -> Self {
        let n = Self::from_i128(*q.numer());
        let d = Self::from_i128(*q.denom());
        // denominators are positive and nonzero by construction of Ratio
        n.checked_div(d).expect("nonzero denominator")
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return if self.lo == -self.hi {
                0.0
            } else {
                (self.lo + self.hi) / 2.0
            };
        }
        self.lo / 2.0 + self.hi / 2.0
    }

    /// Width rounded upward.
    pub fn width(self) -> f64 {
        add_dir(self.hi, -self.lo, Dir::Up)
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn encloses(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Certainly `self < other` for every choice of members.
    pub fn certainly_lt(self, other: Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(self, other: Interval) -> bool {
        self.lo > other.hi
    }

    /// Three-way certified comparison.
    pub fn compare(self, other: Interval) -> Certainty {
        if self.certainly_gt(other) {
            Certainty::Greater
        } else if self.certainly_lt(other) {
            Certainty::Less
        } else {
            Certainty::Overlap
        }
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: (-self.lo).max(self.hi),
            }
        }
    }

    /// Magnitude upper bound `max |x|`.
    pub fn mag(self) -> f64 {
        (-self.lo).max(self.hi)
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::Domain(format!(
                "division by interval containing 0: {rhs:?}"
            )));
        }
        let c = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        Ok(extremes(c, div_dir))
    }

    pub fn recip(self) -> Result<Interval> {
        Interval::ONE.checked_div(self)
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::Domain(format!(
                "sqrt of interval with negative part: {self:?}"
            )));
        }
        Ok(Interval {
            lo: sqrt_dir(self.lo, Dir::Down),
            hi: sqrt_dir(self.hi, Dir::Up),
        })
    }

    pub fn sqr(self) -> Interval {
        let a = self.abs();
        Interval {
            lo: mul_dir(a.lo, a.lo, Dir::Down),
            hi: mul_dir(a.hi, a.hi, Dir::Up),
        }
    }

    /// Integer power with a tight result for even powers of sign-crossing intervals.
    pub fn powi(self, n: u32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        let pow_dir = |x: f64, dir: Dir| {
            let mut acc = 1.0;
            for _ in 0..n {
                acc = mul_dir(acc, x, dir);
            }
            acc
        };
        if n.is_multiple_of(2) {
            let a = self.abs();
            Interval {
                lo: pow_dir(a.lo, Dir::Down),
                hi: pow_dir(a.hi, Dir::Up),
            }
        } else if self.lo >= 0.0 {
            Interval {
                lo: pow_dir(self.lo, Dir::Down),
                hi: pow_dir(self.hi, Dir::Up),
            }
        } else if self.hi <= 0.0 {
            -((-self).powi(n))
        } else {
            Interval {
                lo: -pow_dir(-self.lo, Dir::Up),
                hi: pow_dir(self.hi, Dir::Up),
            }
        }
    }

    pub fn scale_int(self, k: i64) -> Interval {
        self * Interval::from_int(k)
    }

    /// Intersects with `[0, ∞)`; callers use it only when the quantity is
    /// known to be nonnegative for other reasons.
    pub fn clamp_nonneg(self) -> Interval {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }

    /// Widens each endpoint by `ulps` units in the last place.
    pub fn widen_ulps(self, ulps: f64) -> Interval {
        if ulps <= 0.0 {
            return self;
        }
        let lo_ulp = ulp(self.lo);
        let hi_ulp = ulp(self.hi);
        Interval {
            lo: add_dir(self.lo, -(lo_ulp * ulps), Dir::Down),
            hi: add_dir(self.hi, hi_ulp * ulps, Dir::Up),
        }
    }
}

fn ulp(x: f64) -> f64 {
    if !x.is_finite() {
        return 0.0;
    }
    let a = x.abs();
    a.next_up() - a
}

fn extremes(pairs: [(f64, f64); 4], f: fn(f64, f64, Dir) -> f64) -> Interval {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (a, b) in pairs {
        lo = lo.min(f(a, b, Dir::Down));
        hi = hi.max(f(a, b, Dir::Up));
    }
    Interval { lo, hi }
}

/// Outcome of a certified comparison of two enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certainty {
    Less,
    Greater,
    Overlap,
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_dir(self.lo, rhs.lo, Dir::Down),
            hi: add_dir(self.hi, rhs.hi, Dir::Up),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.lo >= 0.0 && rhs.lo >= 0.0 {
            return Interval {
                lo: mul_dir(self.lo, rhs.lo, Dir::Down),
                hi: mul_dir(self.hi, rhs.hi, Dir::Up),
            };
        }
        extremes(
            [
                (self.lo, rhs.lo),
                (self.lo, rhs.hi),
                (self.hi, rhs.lo),
                (self.hi, rhs.hi),
            ],
            mul_dir,
        )
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

/// Operation context. `extra_ulps` is added on top of the kernel's own
/// rounding after each operation routed through it; zero means none.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Kernel {
    pub extra_ulps: f64,
}

impl Default for Kernel {
    fn default() -> Self {
        Kernel::EXACT
    }
}

impl Kernel {
    pub const EXACT: Kernel = Kernel { extra_ulps: 0.0 };

    /// Stress factor `f` means every endpoint is pushed `f` ulps outward
    /// instead of one. Factors `≤ 1` leave the kernel unchanged.
    pub fn stressed(factor: f64) -> Result<Kernel> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(Error::Usage(format!(
                "stress factor must be positive and finite, got {factor}"
            )));
        }
        Ok(Kernel {
            extra_ulps: (factor - 1.0).max(0.0),
        })
    }

    #[inline]
    pub fn settle(&self, x: Interval) -> Interval {
        x.widen_ulps(self.extra_ulps)
    }

    pub fn add(&self, a: Interval, b: Interval) -> Interval {
        self.settle(a + b)
    }

    pub fn sub(&self, a: Interval, b: Interval) -> Interval {
        self.settle(a - b)
    }

    pub fn mul(&self, a: Interval, b: Interval) -> Interval {
        self.settle(a * b)
    }

    pub fn div(&self, a: Interval, b: Interval) -> Result<Interval> {
        Ok(self.settle(a.checked_div(b)?))
    }

    pub fn sqrt(&self, a: Interval) -> Result<Interval> {
        Ok(self.settle(a.sqrt()?).clamp_nonneg())
    }

    pub fn powi(&self, a: Interval, n: u32) -> Interval {
        self.settle(a.powi(n))
    }

    pub fn scale_int(&self, a: Interval, k: i64) -> Interval {
        self.settle(a.scale_int(k))
    }

    pub fn ratio(&self, q: &Ratio<i128>) -> Interval {
        self.settle(Interval::from_ratio(q))
    }
}

/// Rounding side for [`ceil_conservative`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// `⌈x.lo⌉` for [`Side::Lower`], `⌈x.hi⌉` for [`Side::Upper`].
pub fn ceil_conservative(x: Interval, side: Side) -> Result<i64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("ceil of non-finite interval {x:?}")));
    }
    let v = match side {
        Side::Lower => x.lo,
        Side::Upper => x.hi,
    }
    .ceil();
    if v.abs() >= 9.0e18 {
        return Err(Error::Domain(format!("ceil out of i64 range: {v}")));
    }
    Ok(v as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn add_is_exact_when_representable() {
        let s = iv(1.0, 2.0) + iv(3.0, 4.0);
        assert_eq!((s.lo(), s.hi()), (4.0, 6.0));
    }

    #[test]
    fn add_widens_when_inexact() {
        let s = Interval::point(0.1) + Interval::point(0.2);
        assert!(s.lo() < s.hi());
        assert_eq!(s.hi().next_down(), s.lo());
    }

    #[test]
    fn mixed_sign_product() {
        let p = iv(-1.0, 2.0) * iv(3.0, 4.0);
        assert_eq!((p.lo(), p.hi()), (-4.0, 8.0));
    }

    #[test]
    fn sqrt_of_square_is_exact() {
        let r = Interval::point(4.0).sqrt().unwrap();
        assert_eq!((r.lo(), r.hi()), (2.0, 2.0));
        let r2 = Interval::point(2.0).sqrt().unwrap();
        assert!(r2.lo() < r2.hi() && r2.lo().next_up() == r2.hi());
    }

    #[test]
    fn domain_errors() {
        assert!(iv(-1.0, 1.0).recip().is_err());
        assert!(iv(-1e-300, 1.0).sqrt().is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn division_cases() {
        let q = iv(1.0, 2.0).checked_div(iv(-4.0, -2.0)).unwrap();
        assert_eq!((q.lo(), q.hi()), (-1.0, -0.25));
        let t = Interval::ONE.checked_div(Interval::point(3.0)).unwrap();
        // fl(1/3) lies just below 1/3
        assert_eq!((t.lo(), t.hi()), (1.0 / 3.0, (1.0f64 / 3.0).next_up()));
    }

    #[test]
    fn even_power_of_crossing_interval() {
        let p = iv(-3.0, 2.0).powi(2);
        assert_eq!((p.lo(), p.hi()), (0.0, 9.0));
        let c = iv(-3.0, 2.0).powi(3);
        assert_eq!((c.lo(), c.hi()), (-27.0, 8.0));
    }

    #[test]
    fn large_integers_enclosed() {
        let n: i128 = (1 << 60) + 1;
        let x = Interval::from_i128(n);
        assert!(x.lo() < x.hi());
        assert!((x.lo() as i128) <= n && n <= x.hi() as i128);
        assert_eq!(Interval::from_i128(12345).lo(), 12345.0);
    }

    #[test]
    fn ceil_sides() {
        assert_eq!(ceil_conservative(iv(2.1, 2.9), Side::Lower).unwrap(), 3);
        assert_eq!(ceil_conservative(iv(2.1, 3.2), Side::Upper).unwrap(), 4);
        assert_eq!(ceil_conservative(iv(5.0, 5.0), Side::Lower).unwrap(), 5);
        assert!(ceil_conservative(Interval::ENTIRE, Side::Lower).is_err());
    }

    #[test]
    fn stress_widens() {
        let k = Kernel::stressed(1e6).unwrap();
        let x = k.add(Interval::ONE, Interval::ONE);
        assert!(x.width() > 1e-10);
        assert_eq!(Kernel::stressed(1.0).unwrap(), Kernel::EXACT);
        assert!(Kernel::stressed(0.0).is_err());
    }
}
