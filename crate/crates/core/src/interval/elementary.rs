//! Restricted elementary functions: `tan` on `(-π/2, π/2)` and `atan` on the
//! real line, as needed by the spherical-excess formula. Point values come
//! from interval Taylor series with explicit remainder terms; monotonicity
//! then gives interval results from the two endpoints.

use super::{Interval, STANDARD_CONSTANTS};
use crate::error::{Error, Result};

const SERIES_TERMS: u32 = 30;

/// Adds `[-r, r]`.
fn with_remainder(x: Interval, r: f64) -> Interval {
    x + Interval { lo: -r, hi: r }
}

/// Enclosure of `sin(x)` for `|x| ≤ 4`.
pub fn sin_point(x: f64) -> Result<Interval> {
    taylor_trig(x, 1)
}

/// Enclosure of `cos(x)` for `|x| ≤ 4`.
pub fn cos_point(x: f64) -> Result<Interval> {
    taylor_trig(x, 0)
}

/// Σ (-1)^k x^(2k+start) / (2k+start)!, remainder bounded by the first
/// omitted term (valid once terms decrease, which holds for |x| ≤ 4 and 30 terms).
fn taylor_trig(x: f64, start: u32) -> Result<Interval> {
    if x.is_nan() || x.abs() > 4.0 {
        return Err(Error::Domain(format!(
            "trig series argument out of range: {x}"
        )));
    }
    let xi = Interval::point(x);
    let x2 = xi.sqr();
    let mut term = if start == 0 { Interval::ONE } else { xi };
    let mut sum = term;
    let mut k = start;
    for _ in 0..SERIES_TERMS {
        let d = Interval::from_int(((k + 1) * (k + 2)) as i64);
        term = -(term * x2).checked_div(d)?;
        sum = sum + term;
        k += 2;
    }
    let d = Interval::from_int(((k + 1) * (k + 2)) as i64);
    let next = (term * x2).checked_div(d)?;
    Ok(with_remainder(sum, next.mag()))
}

fn tan_point(x: f64) -> Result<Interval> {
    let c = cos_point(x)?;
    if c.lo() <= 0.0 {
        return Err(Error::Domain(format!(
            "tan argument not certified inside (-π/2, π/2): {x}"
        )));
    }
    sin_point(x)?.checked_div(c)
}

/// `tan` on an interval contained in `(-π/2, π/2)`.
pub fn tan(x: Interval) -> Result<Interval> {
    let half_pi = STANDARD_CONSTANTS.pi.lo() / 2.0;
    if !(x.lo() > -half_pi && x.hi() < half_pi) {
        return Err(Error::Domain(format!(
            "tan argument outside (-π/2, π/2): {x:?}"
        )));
    }
    let lo = tan_point(x.lo())?.lo();
    let hi = tan_point(x.hi())?.hi();
    Interval::new(lo, hi)
}

/// atan on an interval inside [0, 1] by two half-angle reductions and the
/// alternating series.
fn atan_small(y: Interval) -> Result<Interval> {
    let mut z = y;
    for _ in 0..2 {
        // atan(z) = 2 atan(z / (1 + sqrt(1 + z²)))
        let den = Interval::ONE + (Interval::ONE + z.sqr()).sqrt()?;
        z = z.checked_div(den)?;
    }
    let z2 = z.sqr();
    let mut power = z;
    let mut sum = z;
    for k in 1..=SERIES_TERMS {
        power = -(power * z2);
        sum = sum + power.checked_div(Interval::from_int(2 * k as i64 + 1))?;
    }
    let next = (power * z2).checked_div(Interval::from_int(2 * SERIES_TERMS as i64 + 3))?;
    Ok(with_remainder(sum, next.mag()).scale_int(4))
}

fn atan_nonneg_point(x: f64) -> Result<Interval> {
    if x <= 1.0 {
        return atan_small(Interval::point(x));
    }
    let half_pi = STANDARD_CONSTANTS.pi.checked_div(Interval::point(2.0))?;
    if x.is_infinite() {
        return Ok(half_pi);
    }
    let inv = Interval::point(x).recip()?;
    Ok(half_pi - atan_small(inv)?)
}

fn atan_point(x: f64) -> Result<Interval> {
    if x.is_nan() {
        return Err(Error::Domain("atan of NaN".into()));
    }
    if x < 0.0 {
        Ok(-atan_nonneg_point(-x)?)
    } else {
        atan_nonneg_point(x)
    }
}

/// `atan` on any interval.
pub fn atan(x: Interval) -> Result<Interval> {
    let lo = atan_point(x.lo())?.lo();
    let hi = atan_point(x.hi())?.hi();
    Interval::new(lo, hi)
}
