//! Unions of covered sphere counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{g_truncated, DensityOrder, Evaluator, PackingSummary};
use crate::lattice::{all_specs, canonical_specs, TruncationSpec};

/// Sorted, disjoint, non-adjacent inclusive ranges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverageSet {
    ranges: Vec<(u64, u64)>,
}

impl CoverageSet {
    pub fn from_ranges(mut ranges: Vec<(u64, u64)>) -> Self {
        ranges.retain(|(a, b)| a <= b);
        ranges.sort_unstable();
        let mut out: Vec<(u64, u64)> = Vec::with_capacity(ranges.len());
        for (a, b) in ranges {
            match out.last_mut() {
                Some(last) if a <= last.1.saturating_add(1) => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        CoverageSet { ranges: out }
    }

    pub fn ranges(&self) -> &[(u64, u64)] {
        &self.ranges
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        let i = self.ranges.partition_point(|&(_, b)| b < n);
        self.ranges.get(i).is_some_and(|&(a, _)| a <= n)
    }

    /// Whether every member of `self` is in `other`.
    pub fn is_subset_of(&self, other: &CoverageSet) -> bool {
        self.ranges
            .iter()
            .all(|&(a, b)| other.find_gaps(a, b).map(|g| g.is_empty()).unwrap_or(false))
    }

    pub fn union(&self, other: &CoverageSet) -> CoverageSet {
        CoverageSet::from_ranges(self.ranges.iter().chain(&other.ranges).copied().collect())
    }

    /// Maximal sub-ranges of `[from, to]` not in the set.
    pub fn find_gaps(&self, from: u64, to: u64) -> Result<Vec<(u64, u64)>> {
        if from > to {
            return Err(Error::Usage(format!("empty query range {from}..{to}")));
        }
        let mut gaps = Vec::new();
        let mut cursor = from;
        let start = self.ranges.partition_point(|&(_, b)| b < from);
        for &(a, b) in &self.ranges[start..] {
            if a > to {
                break;
            }
            if a > cursor {
                gaps.push((cursor, a - 1));
            }
            if b >= to {
                return Ok(gaps);
            }
            cursor = cursor.max(b + 1);
        }
        gaps.push((cursor, to));
        Ok(gaps)
    }
}

/// Which removal-radius bound a coverage uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CoverageMode {
    /// Certified comparisons and `r_lo`: every member is truly covered.
    Shrunken,
    /// Undecided comparisons count as denser and `r_hi` is used: every truly
    /// covered count is a member.
    Inflated,
}

/// One packing's contribution `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Contribution {
    pub spec: TruncationSpec,
    pub lo: u64,
    pub hi: u64,
    pub order: DensityOrder,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageBuild {
    pub mode: CoverageMode,
    pub m_from: u32,
    pub m_to: u32,
    pub set: CoverageSet,
    /// Sorted by `(lo, hi, spec)`.
    pub contributions: Vec<Contribution>,
    pub evaluated: usize,
    pub inconclusive: usize,
}

impl CoverageBuild {
    /// A contribution containing `n`, preferring the smallest `m`, then spec order.
    pub fn witness(&self, n: u64) -> Option<&Contribution> {
        let end = self.contributions.partition_point(|c| c.lo <= n);
        self.contributions[..end]
            .iter()
            .filter(|c| c.hi >= n)
            .min_by_key(|c| c.spec)
    }
}

pub fn contribution(
    summary: &PackingSummary,
    spec: TruncationSpec,
    mode: CoverageMode,
) -> Option<Contribution> {
    let range = match mode {
        CoverageMode::Shrunken => summary.shrunken_range(),
        CoverageMode::Inflated => summary.inflated_range(),
    };
    range.map(|(lo, hi)| Contribution {
        spec,
        lo,
        hi,
        order: summary.order,
    })
}

/// Coverage from all specs with `m_from ≤ m ≤ m_to`. With `canonical` only
/// sorted `h`-triples are evaluated; the count and volume depend on `h` only
/// through its power sums, so the set is the same either way.
pub fn build_coverage(
    ev: &Evaluator,
    m_from: u32,
    m_to: u32,
    mode: CoverageMode,
    canonical: bool,
) -> Result<CoverageBuild> {
    if m_from == 0 || m_from > m_to {
        return Err(Error::Usage(format!("invalid m range {m_from}..{m_to}")));
    }
    let per_m: Vec<Result<(Vec<Contribution>, usize, usize)>> = (m_from..=m_to)
        .into_par_iter()
        .map(|m| {
            let specs = if canonical {
                canonical_specs(m, u32::MAX)
            } else {
                all_specs(m, u32::MAX)
            };
            let mut out = Vec::new();
            let mut inconclusive = 0;
            for spec in &specs {
                let s = ev.summarize(spec)?;
                if s.order == DensityOrder::Inconclusive {
                    inconclusive += 1;
                }
                out.extend(contribution(&s, *spec, mode));
            }
            Ok((out, specs.len(), inconclusive))
        })
        .collect();
    let mut contributions = Vec::new();
    let (mut evaluated, mut inconclusive) = (0, 0);
    for r in per_m {
        let (c, e, i) = r?;
        contributions.extend(c);
        evaluated += e;
        inconclusive += i;
    }
    contributions.sort_by_key(|c| (c.lo, c.hi, c.spec));
    let set = CoverageSet::from_ranges(contributions.iter().map(|c| (c.lo, c.hi)).collect());
    Ok(CoverageBuild {
        mode,
        m_from,
        m_to,
        set,
        contributions,
        evaluated,
        inconclusive,
    })
}

/// The range of counts that some spec at `m` could cover:
/// `[G(t_max) − r_hi(t_max), G(Y_m)]` with every `h_i` at its maximum.
pub fn m_window(ev: &Evaluator, m: u32) -> Result<(u64, u64)> {
    let cap = TruncationSpec::max_layers(m);
    let deepest = TruncationSpec::new(m, [cap; 3])?;
    let s = ev.summarize(&deepest)?;
    let top = g_truncated(&TruncationSpec::untruncated(m)?)?;
    Ok((s.points - s.r_hi, top))
}

/// Values of `m` in `[m_from, m_to]` whose window contains `n`.
pub fn admissible_m(ev: &Evaluator, n: u64, m_from: u32, m_to: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for m in m_from..=m_to {
        let (lo, hi) = m_window(ev, m)?;
        if lo <= n && n <= hi {
            out.push(m);
        }
    }
    Ok(out)
}

/// Searches the admissible `m` for a spec whose shrunken range contains `n`.
pub fn find_witness(
    ev: &Evaluator,
    n: u64,
    m_from: u32,
    m_to: u32,
) -> Result<Option<Contribution>> {
    for m in admissible_m(ev, n, m_from, m_to)? {
        for spec in canonical_specs(m, u32::MAX) {
            let s = ev.summarize(&spec)?;
            if let Some(c) = contribution(&s, spec, CoverageMode::Shrunken) {
                if c.lo <= n && n <= c.hi {
                    return Ok(Some(c));
                }
            }
        }
    }
    Ok(None)
}
