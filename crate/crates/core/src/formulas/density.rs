//! Densities against the sausage, and removal radii.
//!
//! A sausage of `n` unit balls has hull volume `κ4 + 2(n−1)κ3`.
//! Removing `k` points from a packing `C` of `n` points keeps the
//! approximate density `(n−k)κ4 / vol(conv C + B⁴)` above the sausage of
//! `n−k` balls exactly when `k < (V_S(n) − V)/(2κ3)`; the largest such `k`
//! is the removal radius.

use serde::Serialize;

use super::{g_truncated, Evaluator};
use crate::error::{Error, Result};
use crate::interval::{ceil_conservative, Certainty, Interval, Side};
use crate::lattice::TruncationSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    Truncated(TruncationSpec),
    Sausage,
}

/// Certified comparison of a packing's density against the sausage with
/// the same number of balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DensityOrder {
    Denser,
    NotDenser,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PackingSummary {
    pub shape: Shape,
    pub points: u64,
    pub hull_volume: Interval,
    pub density: Interval,
    pub sausage_density: Interval,
    pub order: DensityOrder,
    pub r_lo: u64,
    pub r_hi: u64,
}

impl PackingSummary {
    /// `[points − r_lo, points]` when the comparison is certified.
    pub fn shrunken_range(&self) -> Option<(u64, u64)> {
        (self.order == DensityOrder::Denser).then(|| (self.points - self.r_lo, self.points))
    }

    /// `[points − r_hi, points]` unless the packing is certainly not denser.
    pub fn inflated_range(&self) -> Option<(u64, u64)> {
        (self.order != DensityOrder::NotDenser).then(|| (self.points - self.r_hi, self.points))
    }
}

impl Evaluator {
    pub fn sausage_hull_volume(&self, n: u64) -> Result<Interval> {
        if n == 0 {
            return Err(Error::Domain("a sausage needs at least one ball".into()));
        }
        let k = &self.kernel;
        let c = &self.constants;
        let links = k.mul(Interval::from_i128(2 * (n as i128 - 1)), c.kappa3);
        Ok(k.add(c.kappa4, links))
    }

    pub fn sausage_density(&self, n: u64) -> Result<Interval> {
        let v = self.sausage_hull_volume(n)?;
        self.kernel.div(
            self.kernel
                .mul(Interval::from_i128(n as i128), self.constants.kappa4),
            v,
        )
    }

    fn density_from_volume(&self, n: u64, v: Interval) -> Result<Interval> {
        self.kernel.div(
            self.kernel
                .mul(Interval::from_i128(n as i128), self.constants.kappa4),
            v,
        )
    }

    /// `(V_S(n) − V)/(2κ3) − 1` enclosed.
    pub fn removal_quantity(&self, n: u64, v: Interval) -> Result<Interval> {
        let k = &self.kernel;
        let diff = k.sub(self.sausage_hull_volume(n)?, v);
        let scaled = k.div(diff, k.scale_int(self.constants.kappa3, 2))?;
        Ok(k.sub(scaled, Interval::ONE))
    }

    fn summarize_volume(
        &self,
        shape: Shape,
        points: u64,
        hull_volume: Interval,
    ) -> Result<PackingSummary> {
        let density = self.density_from_volume(points, hull_volume)?;
        let sausage_density = self.sausage_density(points)?;
        let order = match density.compare(sausage_density) {
            Certainty::Greater => DensityOrder::Denser,
            Certainty::Less => DensityOrder::NotDenser,
            Certainty::Overlap => DensityOrder::Inconclusive,
        };
        let x = self.removal_quantity(points, hull_volume)?;
        let clamp = |r: i64| (r.max(0) as u64).min(points);
        let r_lo = clamp(ceil_conservative(x, Side::Lower)?);
        let r_hi = clamp(ceil_conservative(x, Side::Upper)?);
        Ok(PackingSummary {
            shape,
            points,
            hull_volume,
            density,
            sausage_density,
            order,
            r_lo,
            r_hi,
        })
    }

    pub fn summarize(&self, spec: &TruncationSpec) -> Result<PackingSummary> {
        let points = g_truncated(spec)?;
        self.summarize_volume(
            Shape::Truncated(*spec),
            points,
            self.steiner_truncated(spec),
        )
    }

    pub fn summarize_sausage(&self, n: u64) -> Result<PackingSummary> {
        self.summarize_volume(Shape::Sausage, n, self.sausage_hull_volume(n)?)
    }

    /// `n κ4 / vol(conv C + B⁴)`, `n ≤ points`.
    pub fn approx_density(&self, s: &PackingSummary, n: u64) -> Result<Interval> {
        if n > s.points {
            return Err(Error::Domain(format!(
                "n = {n} exceeds the {} points of the packing",
                s.points
            )));
        }
        self.density_from_volume(n, s.hull_volume)
    }

    /// `(r_lo, r_hi)` with the true removal radius in between.
    pub fn removal_radius(&self, s: &PackingSummary) -> (u64, u64) {
        (s.r_lo, s.r_hi)
    }
}
