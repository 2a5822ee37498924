//! Theorem-level searches: the smallest packing beating the sausage, the
//! coverage of every count from the lower threshold upward, and the tail.

mod coverage;
mod report;
mod scan;
mod tail;

pub use coverage::{
    admissible_m, build_coverage, contribution, find_witness, m_window, Contribution,
    CoverageBuild, CoverageMode, CoverageSet,
};
pub use report::{Verdict, VerificationReport};
pub use scan::{flip_check, scan, scan_m17, FlipCheck, ScanOutcome};
pub use tail::{
    chain_check, endpoint_check, extension_check, poly_eval, positivity_certificate, tail_check,
    ChainCheck, EndpointCheck, ExtensionCheck, PositivityCertificate, TailOutcome, TailPolynomials,
    COEFFICIENT_BOUND, ENDPOINT_M, POSITIVITY_FROM,
};

use std::time::Instant;

use serde_json::json;

use crate::error::{Error, Result};
use crate::formulas::Evaluator;
use crate::interval::Interval;
use crate::lattice::TruncationSpec;

/// Bounds the derived claims are compared with.
pub const REFERENCE_N4_BOUND: u64 = 338_196;
pub const REFERENCE_LOWER_THRESHOLD: u64 = 516_946;
pub const REFERENCE_TAIL_START: u64 = 459_118_697;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub scan_m: u32,
    pub h_max: u32,
    pub m_from: u32,
    pub m_to: u32,
    /// Counts the coverage must contain.
    pub n_from: u64,
    pub n_to: u64,
    pub chain_to: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            scan_m: 17,
            h_max: 8,
            m_from: 17,
            m_to: 104,
            n_from: REFERENCE_LOWER_THRESHOLD,
            n_to: REFERENCE_TAIL_START,
            chain_to: 200,
        }
    }
}

/// The fewest-point packing at `opts.scan_m` and its removal radius.
pub fn verify_n4(ev: &Evaluator, opts: &VerifyOptions) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let out = scan(ev, opts.scan_m, opts.h_max)?;
    let mut r = VerificationReport::new(
        "n4_upper_bound",
        Verdict::Inconclusive,
        &ev.constants,
        ev.kernel,
    );
    let all_losing = out.denser.is_empty() && out.inconclusive.is_empty();
    r.verdict = match (&out.best, &out.flip) {
        (Some(_), Some(f)) if f.kept_wins => Verdict::Certified,
        (None, _) if all_losing => Verdict::Refuted,
        _ => Verdict::Inconclusive,
    };
    if r.verdict == Verdict::Certified {
        r.bound = out.bound();
    }
    let best = out.best.map(|b| {
        let spec = match b.shape {
            crate::formulas::Shape::Truncated(s) => s,
            crate::formulas::Shape::Sausage => unreachable!("scan only produces truncations"),
        };
        json!({
            "m": spec.m,
            "h": spec.h,
            "points": b.points,
            "hull_volume": b.hull_volume,
            "density": b.density,
            "sausage_density": b.sausage_density,
            "r_lo": b.r_lo,
            "r_hi": b.r_hi,
        })
    });
    r.witness = json!({
        "scan_m": out.m,
        "h_max": out.h_max,
        "candidates": out.candidates,
        "denser_count": out.denser.len(),
        "inconclusive": out.inconclusive,
        "best": best,
        "flip": out.flip,
        "flip_exact": out.flip.map(|f| f.exact()),
        "reference_bound": REFERENCE_N4_BOUND,
        "matches_reference": out.bound().map(|b| b == REFERENCE_N4_BOUND),
    });
    r.runtime_ms = t0.elapsed().as_millis() as u64;
    Ok(r)
}

/// Whether no packing at scale `m` or above can cover `n`: every member `N`
/// of any `L̃` satisfies `N κ4 / V > 3π/16`, and the smallest volume at
/// scale `m`, that of the deepest truncation, grows with `m`.
pub fn unreachable_beyond(ev: &Evaluator, n: u64, m: u32) -> Result<bool> {
    let k = &ev.kernel;
    let cap = TruncationSpec::max_layers(m);
    let v = ev.steiner_truncated(&TruncationSpec::new(m, [cap; 3])?);
    let limit = k.div(k.scale_int(ev.constants.pi, 3), Interval::point(16.0))?;
    let needed = k.div(k.mul(limit, v), ev.constants.kappa4)?;
    Ok(needed.lo() > n as f64)
}

/// Coverage of `[opts.n_from, opts.n_to]` by truncations plus the tail.
pub fn verify_big_n4(ev: &Evaluator, opts: &VerifyOptions) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if opts.n_from > opts.n_to {
        return Err(Error::Usage(format!(
            "empty count range {}..{}",
            opts.n_from, opts.n_to
        )));
    }
    let shrunken = build_coverage(ev, opts.m_from, opts.m_to, CoverageMode::Shrunken, true)?;
    let tail = tail_check(ev, opts.chain_to)?;

    let mut tail_ranges = vec![(tail.endpoint.first_covered, tail.endpoint.points)];
    for m in ENDPOINT_M + 1..=opts.chain_to + 1 {
        let s = ev.summarize(&TruncationSpec::untruncated(m)?)?;
        tail_ranges.extend(s.shrunken_range());
    }
    let tail_set = CoverageSet::from_ranges(tail_ranges);
    let combined = shrunken.set.union(&tail_set);

    let gaps = combined.find_gaps(opts.n_from, opts.n_to)?;
    let top = tail.chain.top_covered;
    let block = combined
        .ranges()
        .iter()
        .find(|&&(a, b)| a <= top && top <= b)
        .copied();

    // counts in the range that not even the inflated coverage reaches
    let inflated = build_coverage(ev, 1, opts.m_to, CoverageMode::Inflated, true)?;
    let mut hard_gaps = Vec::new();
    for (a, b) in inflated.set.find_gaps(opts.n_from, opts.n_to)? {
        if unreachable_beyond(ev, b, opts.m_to + 1)? {
            hard_gaps.push((a, b));
        }
    }

    let mut r = VerificationReport::new(
        "big_n4_upper_bound",
        Verdict::Inconclusive,
        &ev.constants,
        ev.kernel,
    );
    r.verdict = if !hard_gaps.is_empty() {
        Verdict::Refuted
    } else if gaps.is_empty() && tail.certified() && block.is_some() {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    if r.verdict == Verdict::Certified {
        r.bound = block.map(|b| b.0);
    }
    r.gaps = gaps;

    let wit = |n: u64| {
        shrunken
            .witness(n)
            .map(|c| json!({"n": n, "m": c.spec.m, "h": c.spec.h, "lo": c.lo, "hi": c.hi}))
    };
    let below = opts.n_from.saturating_sub(1);
    let below_gap = inflated
        .set
        .find_gaps(below.saturating_sub(10_000), below)?
        .into_iter()
        .find(|&(a, b)| a <= below && below <= b);
    r.witness = json!({
        "m_range": [opts.m_from, opts.m_to],
        "count_range": [opts.n_from, opts.n_to],
        "evaluated_specs": shrunken.evaluated,
        "inconclusive_specs": shrunken.inconclusive,
        "coverage_ranges": shrunken.set.ranges().len(),
        "first_count": wit(opts.n_from),
        "last_count": wit(opts.n_to),
        "covered_block": block,
        "tail": {
            "certified": tail.certified(),
            "start": tail.start(),
            "endpoint": tail.endpoint,
            "leading_coefficient": tail.positivity.leading,
            "coefficients": tail.polynomials.g,
            "positivity": tail.positivity,
            "chain": tail.chain,
            "extension": tail.extension,
        },
        "below_threshold": {
            "count": below,
            "in_inflated_coverage": inflated.set.contains(below),
            "large_m_excluded": unreachable_beyond(ev, below, opts.m_to + 1)?,
            "gap": below_gap,
        },
        "reference_bound": REFERENCE_LOWER_THRESHOLD,
    });
    r.runtime_ms = t0.elapsed().as_millis() as u64;
    Ok(r)
}

pub fn verify_theorems(
    ev: &Evaluator,
    opts: &VerifyOptions,
) -> Result<(VerificationReport, VerificationReport)> {
    Ok((verify_n4(ev, opts)?, verify_big_n4(ev, opts)?))
}
