//! Coverage of every large sphere count by untruncated 24-cells.
//!
//! For `m ≥ 1` the packing `Y_m ∩ D4` with all but `G(Y_{m−1}) + 1` points
//! removed has approximate density `f_Y(m) = num(m)·κ4 / den(m)` with
//! `num(x) = 4x⁴ − 8x³ + 8x² − 4x + 2` and `den(x) = vol(Y_x + B⁴)`. The sign
//! of `f_Y'` is the sign of `g_Y = num'·den − num·den'`. If `g_Y > 0` on
//! `[x0, ∞)` then `f_Y` increases there while the sausage density decreases,
//! so one certified win at `m0 ≥ x0` covers every count from `G(Y_{m0−1}) + 1` up.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{g_y, Basis, DensityOrder, Evaluator, PackingSummary};
use crate::interval::{Certainty, Interval, Kernel};
use crate::lattice::TruncationSpec;

/// Ascending coefficients.
pub type Poly = Vec<Interval>;

fn poly_mul(k: &Kernel, a: &[Interval], b: &[Interval]) -> Poly {
    let mut out = vec![Interval::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(*x, *y));
        }
    }
    out
}

fn poly_sub(k: &Kernel, a: &[Interval], b: &[Interval]) -> Poly {
    (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Interval::ZERO);
            let y = b.get(i).copied().unwrap_or(Interval::ZERO);
            k.sub(x, y)
        })
        .collect()
}

fn poly_derivative(k: &Kernel, a: &[Interval]) -> Poly {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.scale_int(*c, i as i64))
        .collect()
}

pub fn poly_eval(k: &Kernel, a: &[Interval], x: Interval) -> Interval {
    a.iter()
        .rev()
        .fold(Interval::ZERO, |acc, c| k.add(k.mul(acc, x), *c))
}

#[derive(Clone, Debug, Serialize)]
pub struct TailPolynomials {
    pub numerator: Poly,
    pub denominator: Poly,
    /// `num'·den − num·den'`, degree 7 with a vanishing top coefficient.
    pub g: Poly,
}

impl TailPolynomials {
    pub fn build(ev: &Evaluator) -> Self {
        let k = &ev.kernel;
        let n = |v: i64| Interval::from_int(v);
        let numerator = vec![n(2), n(-4), n(8), n(-8), n(4)];
        let b = |x: Basis| ev.basis_value(x);
        let denominator = vec![
            k.mul(Interval::point(0.5), b(Basis::PiSq)),
            k.scale_int(b(Basis::EdgeExcess), 64),
            k.scale_int(b(Basis::Sqrt3Pi), 16),
            k.scale_int(b(Basis::Sqrt2), 64),
            n(32),
        ];
        let g = poly_sub(
            k,
            &poly_mul(k, &poly_derivative(k, &numerator), &denominator),
            &poly_mul(k, &numerator, &poly_derivative(k, &denominator)),
        );
        TailPolynomials {
            numerator,
            denominator,
            g,
        }
    }

    /// `f_Y(x)` enclosed.
    pub fn f_y(&self, ev: &Evaluator, x: Interval) -> Result<Interval> {
        let k = &ev.kernel;
        let num = poly_eval(k, &self.numerator, x);
        let den = poly_eval(k, &self.denominator, x);
        k.div(k.mul(num, ev.constants.kappa4), den)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityCertificate {
    pub leading: Interval,
    pub leading_target: Interval,
    pub leading_contains_target: bool,
    pub top_vanishes: bool,
    pub coefficient_bound: f64,
    pub lower_coefficients_bounded: bool,
    pub x0: u32,
    /// `a6·x0⁶ − B·Σ_{i≤5} x0^i`.
    pub margin: Interval,
    pub positive_from_x0: bool,
}

impl PositivityCertificate {
    pub fn holds(&self) -> bool {
        self.top_vanishes && self.lower_coefficients_bounded && self.positive_from_x0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EndpointCheck {
    pub m: u32,
    pub points: u64,
    pub r_lo: u64,
    pub r_hi: u64,
    pub first_covered: u64,
    pub below: (u64, Interval, Interval),
    pub at: (u64, Interval, Interval),
    pub below_loses: bool,
    pub at_wins: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainCheck {
    pub m_from: u32,
    pub m_to: u32,
    /// `(m, min L̃(Y_{m+1}), G(Y_m) + 1)` for the first failure.
    pub first_failure: Option<(u32, Option<u64>, u64)>,
    pub top_covered: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCheck {
    pub m0: u32,
    pub worst_count: u64,
    pub f_y: Interval,
    pub sausage: Interval,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailOutcome {
    pub polynomials: TailPolynomials,
    pub positivity: PositivityCertificate,
    pub endpoint: EndpointCheck,
    pub chain: ChainCheck,
    pub extension: ExtensionCheck,
    pub f_y_43_lt_44: bool,
}

impl TailOutcome {
    pub fn certified(&self) -> bool {
        self.positivity.holds()
            && self.endpoint.at_wins
            && self.chain.first_failure.is_none()
            && self.extension.holds
    }

    /// Every count `≥` this is covered by some `Y_m`, if certified.
    pub fn start(&self) -> u64 {
        self.endpoint.first_covered
    }
}

pub const COEFFICIENT_BOUND: f64 = 4345.0;
pub const POSITIVITY_FROM: u32 = 43;
pub const ENDPOINT_M: u32 = 104;

pub fn positivity_certificate(ev: &Evaluator, polys: &TailPolynomials) -> PositivityCertificate {
    let k = &ev.kernel;
    let g = &polys.g;
    let leading = g[6];
    let leading_target = k.scale_int(k.add(ev.constants.sqrt2, Interval::ONE), 256);
    let top_vanishes = g.len() == 8 && g[7] == Interval::ZERO;
    let bound = Interval::point(COEFFICIENT_BOUND);
    let lower_coefficients_bounded = g[..6].iter().all(|a| a.abs().certainly_lt(bound));
    let x0 = Interval::from_int(POSITIVITY_FROM as i64);
    let tail_sum = (0..6).fold(Interval::ZERO, |acc, i| k.add(acc, k.powi(x0, i)));
    let margin = k.sub(k.mul(leading, k.powi(x0, 6)), k.mul(bound, tail_sum));
    PositivityCertificate {
        leading,
        leading_target,
        leading_contains_target: leading.intersects(leading_target),
        top_vanishes,
        coefficient_bound: COEFFICIENT_BOUND,
        lower_coefficients_bounded,
        x0: POSITIVITY_FROM,
        positive_from_x0: margin.lo() > 0.0 && leading.lo() > 0.0,
        margin,
    }
}

fn y_summary(ev: &Evaluator, m: u32) -> Result<PackingSummary> {
    ev.summarize(&TruncationSpec::untruncated(m)?)
}

fn y_count(m: u32) -> Result<u64> {
    u64::try_from(g_y(m)).map_err(|_| Error::Domain(format!("G(Y_{m}) exceeds u64")))
}

pub fn endpoint_check(ev: &Evaluator, m: u32) -> Result<EndpointCheck> {
    let s = y_summary(ev, m)?;
    let first = s.points - s.r_lo;
    let pair = |n: u64| -> Result<(u64, Interval, Interval)> {
        Ok((n, ev.approx_density(&s, n)?, ev.sausage_density(n)?))
    };
    let below = pair(first - 1)?;
    let at = pair(first)?;
    Ok(EndpointCheck {
        m,
        points: s.points,
        r_lo: s.r_lo,
        r_hi: s.r_hi,
        first_covered: first,
        below_loses: below.1.compare(below.2) == Certainty::Less,
        at_wins: s.order == DensityOrder::Denser && at.1.compare(at.2) == Certainty::Greater,
        below,
        at,
    })
}

/// Checks `min L̃(Y_{m+1}) ≤ G(Y_m) + 1` for `m_from ≤ m ≤ m_to`.
pub fn chain_check(ev: &Evaluator, m_from: u32, m_to: u32) -> Result<ChainCheck> {
    let mut first_failure = None;
    for m in m_from..=m_to {
        let next = y_summary(ev, m + 1)?;
        let need = y_count(m)? + 1;
        let lo = next.shrunken_range().map(|r| r.0);
        if !lo.is_some_and(|lo| lo <= need) {
            first_failure = Some((m, lo, need));
            break;
        }
    }
    Ok(ChainCheck {
        m_from,
        m_to,
        first_failure,
        top_covered: y_count(m_to + 1)?,
    })
}

pub fn extension_check(ev: &Evaluator, polys: &TailPolynomials, m0: u32) -> Result<ExtensionCheck> {
    let worst_count = y_count(m0 - 1)? + 1;
    let f_y = polys.f_y(ev, Interval::from_int(m0 as i64))?;
    let sausage = ev.sausage_density(worst_count)?;
    Ok(ExtensionCheck {
        m0,
        worst_count,
        f_y,
        sausage,
        holds: m0 >= POSITIVITY_FROM && f_y.compare(sausage) == Certainty::Greater,
    })
}

/// Runs every part of the tail argument, sampling the chain up to `chain_to`.
pub fn tail_check(ev: &Evaluator, chain_to: u32) -> Result<TailOutcome> {
    if chain_to < ENDPOINT_M {
        return Err(Error::Usage(format!(
            "chain range must reach at least m = {ENDPOINT_M}"
        )));
    }
    let polynomials = TailPolynomials::build(ev);
    let positivity = positivity_certificate(ev, &polynomials);
    let endpoint = endpoint_check(ev, ENDPOINT_M)?;
    let chain = chain_check(ev, ENDPOINT_M, chain_to)?;
    let extension = extension_check(ev, &polynomials, chain_to + 1)?;
    let f43 = polynomials.f_y(ev, Interval::from_int(43))?;
    let f44 = polynomials.f_y(ev, Interval::from_int(44))?;
    Ok(TailOutcome {
        polynomials,
        positivity,
        endpoint,
        chain,
        extension,
        f_y_43_lt_44: f43.certainly_lt(f44),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerator_is_previous_count_plus_one() {
        let ev = Evaluator::default();
        let p = TailPolynomials::build(&ev);
        for m in 1..60u32 {
            let v = poly_eval(&ev.kernel, &p.numerator, Interval::from_int(m as i64));
            assert_eq!(v.lo(), (g_y(m - 1) + 1) as f64);
        }
    }

    #[test]
    fn denominator_is_y_volume() {
        let ev = Evaluator::default();
        let p = TailPolynomials::build(&ev);
        for m in [1u32, 17, 104] {
            let v = poly_eval(&ev.kernel, &p.denominator, Interval::from_int(m as i64));
            assert!(v.intersects(ev.vol_y_plus_ball(m)));
        }
    }

    #[test]
    fn f_y_matches_worst_case_density() {
        let ev = Evaluator::default();
        let p = TailPolynomials::build(&ev);
        let s = y_summary(&ev, 50).unwrap();
        let direct = ev.approx_density(&s, y_count(49).unwrap() + 1).unwrap();
        assert!(p
            .f_y(&ev, Interval::from_int(50))
            .unwrap()
            .intersects(direct));
    }
}
