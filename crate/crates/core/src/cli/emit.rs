//! CSV data sets behind the density and coverage plots.
//!
//! Every interval is written as a `_lo,_hi` pair with 17 significant digits.
//! Rows are computed in parallel but assembled in a fixed order, so the output
//! does not depend on the worker count.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{DensityOrder, Evaluator};
use crate::interval::Interval;
use crate::lattice::{canonical_specs, TruncationSpec};
use crate::search::{contribution, CoverageMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        write_csv(self, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

pub fn write_csv<W: Write>(table: &CsvTable, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn pair(x: Interval) -> [String; 2] {
    [num(x.lo()), num(x.hi())]
}

fn spec_cols(s: &TruncationSpec) -> [String; 4] {
    [s.m, s.h[0], s.h[1], s.h[2]].map(|v| v.to_string())
}

/// One row per canonical `h` with every `h_i ≤ h_max` (clamped to the
/// admissible depth) and `m_from ≤ m ≤ m_to`. `minimal_denser` marks the
/// certified-denser row with the fewest points at each `m`.
pub fn density_scan(ev: &Evaluator, m_from: u32, m_to: u32, h_max: u32) -> Result<CsvTable> {
    let mut t = CsvTable::new(&[
        "m",
        "h1",
        "h16",
        "h17",
        "G",
        "vol_lo",
        "vol_hi",
        "density_lo",
        "density_hi",
        "sausage_density_lo",
        "sausage_density_hi",
        "denser_flag",
        "minimal_denser",
    ]);
    let per_m: Vec<Result<Vec<Vec<String>>>> = (m_from..=m_to)
        .into_par_iter()
        .map(|m| {
            let h = h_max.min(TruncationSpec::max_layers(m));
            let specs = canonical_specs(m, h);
            let sums = specs
                .iter()
                .map(|s| ev.summarize(s))
                .collect::<Result<Vec<_>>>()?;
            let best = sums
                .iter()
                .enumerate()
                .filter(|(_, s)| s.order == DensityOrder::Denser)
                .min_by_key(|(_, s)| s.points)
                .map(|(i, _)| i);
            Ok(specs
                .iter()
                .zip(&sums)
                .enumerate()
                .map(|(i, (spec, s))| {
                    let mut row = spec_cols(spec).to_vec();
                    row.push(s.points.to_string());
                    row.extend(pair(s.hull_volume));
                    row.extend(pair(s.density));
                    row.extend(pair(s.sausage_density));
                    row.push(
                        match s.order {
                            DensityOrder::Denser => "1",
                            DensityOrder::NotDenser => "0",
                            DensityOrder::Inconclusive => "?",
                        }
                        .to_string(),
                    );
                    row.push(u8::from(best == Some(i)).to_string());
                    row
                })
                .collect())
        })
        .collect();
    for rows in per_m {
        t.rows.extend(rows?);
    }
    Ok(t)
}

/// Three rows per packing whose range is non-empty under `mode`: vertex 0 is
/// `(G − r, δ(S_{G−r}))`, vertex 1 is `(G, δ(S_G))`, vertex 2 is `(G, δ(C))`.
pub fn coverage_triangles(
    ev: &Evaluator,
    m_from: u32,
    m_to: u32,
    mode: CoverageMode,
) -> Result<CsvTable> {
    let mut t = CsvTable::new(&[
        "m",
        "h1",
        "h16",
        "h17",
        "vertex_index",
        "N",
        "density_lo",
        "density_hi",
    ]);
    let per_m: Vec<Result<Vec<Vec<String>>>> = (m_from..=m_to)
        .into_par_iter()
        .map(|m| {
            let mut rows = Vec::new();
            for spec in canonical_specs(m, u32::MAX) {
                let s = ev.summarize(&spec)?;
                let Some(c) = contribution(&s, spec, mode) else {
                    continue;
                };
                let verts = [
                    (c.lo, ev.sausage_density(c.lo)?),
                    (c.hi, s.sausage_density),
                    (c.hi, s.density),
                ];
                for (i, (n, d)) in verts.into_iter().enumerate() {
                    let mut row = spec_cols(&spec).to_vec();
                    row.push(i.to_string());
                    row.push(n.to_string());
                    row.extend(pair(d));
                    rows.push(row);
                }
            }
            Ok(rows)
        })
        .collect();
    for rows in per_m {
        t.rows.extend(rows?);
    }
    Ok(t)
}

/// Every integer up to 100 in range plus `samples` log-spaced counts.
pub fn sausage_grid(from: u64, to: u64, samples: usize) -> Vec<u64> {
    let mut grid: Vec<u64> = (from..=to.min(100)).collect();
    if samples > 1 {
        let (a, b) = ((from as f64).ln(), (to as f64).ln());
        for i in 0..samples {
            let x = (a + (b - a) * i as f64 / (samples - 1) as f64)
                .exp()
                .round() as u64;
            grid.push(x.clamp(from, to));
        }
    }
    grid.push(from);
    grid.push(to);
    grid.sort_unstable();
    grid.dedup();
    grid
}

pub fn sausage_curve(ev: &Evaluator, from: u64, to: u64, samples: usize) -> Result<CsvTable> {
    if from == 0 || from > to {
        return Err(Error::Usage(format!("invalid count range {from}..{to}")));
    }
    let mut t = CsvTable::new(&["n", "density_lo", "density_hi"]);
    let rows = sausage_grid(from, to, samples)
        .par_iter()
        .map(|&n| {
            let d = ev.sausage_density(n)?;
            let [lo, hi] = pair(d);
            Ok(vec![n.to_string(), lo, hi])
        })
        .collect::<Result<Vec<_>>>()?;
    t.rows = rows;
    Ok(t)
}
