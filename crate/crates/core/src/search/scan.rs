//! Smallest truncated packing at fixed `m` that beats the sausage.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{DensityOrder, Evaluator, PackingSummary};
use crate::interval::{Certainty, Interval};
use crate::lattice::{canonical_specs, TruncationSpec};

/// Approximate density against the sausage on both sides of the removal
/// radius: keeping `n − r` points still wins, keeping `n − r − 1` loses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlipCheck {
    pub removed: u64,
    pub kept: u64,
    pub approx_kept: Interval,
    pub sausage_kept: Interval,
    pub approx_next: Interval,
    pub sausage_next: Interval,
    /// `approx_kept > sausage_kept` certified.
    pub kept_wins: bool,
    /// `approx_next < sausage_next` certified.
    pub next_loses: bool,
}

impl FlipCheck {
    /// Both sides certified, so the removal radius is exact.
    pub fn exact(&self) -> bool {
        self.kept_wins && self.next_loses
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOutcome {
    pub m: u32,
    pub h_max: u32,
    pub candidates: usize,
    pub denser: Vec<PackingSummary>,
    pub inconclusive: Vec<TruncationSpec>,
    /// Certified-denser summary with the fewest points.
    pub best: Option<PackingSummary>,
    pub flip: Option<FlipCheck>,
}

impl ScanOutcome {
    pub fn bound(&self) -> Option<u64> {
        self.best.map(|b| b.points - b.r_lo)
    }
}

/// Evaluates the comparison after removing `removed` of the packing's points.
pub fn flip_check(ev: &Evaluator, s: &PackingSummary, removed: u64) -> Result<FlipCheck> {
    let kept = s.points - removed;
    let approx_kept = ev.approx_density(s, kept)?;
    let sausage_kept = ev.sausage_density(kept)?;
    let (approx_next, sausage_next) = if kept > 1 {
        (
            ev.approx_density(s, kept - 1)?,
            ev.sausage_density(kept - 1)?,
        )
    } else {
        (Interval::ZERO, Interval::ONE)
    };
    Ok(FlipCheck {
        removed,
        kept,
        approx_kept,
        sausage_kept,
        approx_next,
        sausage_next,
        kept_wins: approx_kept.compare(sausage_kept) == Certainty::Greater,
        next_loses: approx_next.compare(sausage_next) == Certainty::Less,
    })
}

/// Scans canonical `h` with every `h_i ≤ h_max` at scale `m`.
pub fn scan(ev: &Evaluator, m: u32, h_max: u32) -> Result<ScanOutcome> {
    let cap = TruncationSpec::max_layers(m);
    if h_max > cap {
        return Err(Error::Usage(format!(
            "h_max = {h_max} exceeds ⌊(m-1)/2⌋ = {cap}"
        )));
    }
    let specs = canonical_specs(m, h_max);
    let summaries = specs
        .par_iter()
        .map(|s| ev.summarize(s))
        .collect::<Result<Vec<_>>>()?;
    let denser: Vec<_> = summaries
        .iter()
        .filter(|s| s.order == DensityOrder::Denser)
        .copied()
        .collect();
    let inconclusive = specs
        .iter()
        .zip(&summaries)
        .filter(|(_, s)| s.order == DensityOrder::Inconclusive)
        .map(|(sp, _)| *sp)
        .collect();
    // ties resolved by spec order, which `canonical_specs` already follows
    let best = denser.iter().min_by_key(|s| s.points).copied();
    let flip = best.map(|b| flip_check(ev, &b, b.r_lo)).transpose()?;
    Ok(ScanOutcome {
        m,
        h_max,
        candidates: specs.len(),
        denser,
        inconclusive,
        best,
        flip,
    })
}

pub fn scan_m17(ev: &Evaluator, h_max: u32) -> Result<ScanOutcome> {
    scan(ev, 17, h_max)
}
