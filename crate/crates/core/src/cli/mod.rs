//! Command-line orchestration.
//!
//! Each command is a plain function of a [`RunConfig`] so that tests can run
//! it without spawning a process. Parallel work runs inside a dedicated
//! thread pool sized by `--workers`.

mod emit;

pub use emit::{coverage_triangles, density_scan, sausage_curve, write_csv, CsvTable};

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::formulas::{g_truncated, Evaluator};
use crate::interval::Kernel;
use crate::lattice::{count_points_oracle, TruncationSpec, ORACLE_CAP};
use crate::search::{
    build_coverage, verify_big_n4, verify_n4, CoverageMode, VerificationReport, VerifyOptions,
};

/// Largest `m` accepted anywhere on the command line.
pub const M_CAP: u32 = 10_000;
/// Largest sphere count accepted in `--n-range`.
pub const N_CAP: u64 = 1_000_000_000_000;

/// Inclusive range written `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span<T> {
    pub from: T,
    pub to: T,
}

impl<T: FromStr + PartialOrd + Copy + std::fmt::Display> FromStr for Span<T> {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
        let parse = |x: &str| {
            x.trim()
                .replace('_', "")
                .parse::<T>()
                .map_err(|_| format!("invalid bound `{x}`"))
        };
        let (from, to) = (parse(a)?, parse(b)?);
        if from > to {
            return Err(format!("empty range {from}..{to}"));
        }
        Ok(Span { from, to })
    }
}

/// `a,b,c` triple of truncation depths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triple(pub [u32; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<_> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parts.as_slice() {
            [Ok(a), Ok(b), Ok(c)] => Ok(Triple([*a, *b, *c])),
            _ => Err(format!(
                "expected three comma-separated integers, got `{s}`"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Fewest balls for which a lattice packing beats the sausage.
    #[value(name = "n4")]
    Small,
    /// Threshold above which the sausage never wins.
    #[value(name = "N4")]
    Big,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Dataset {
    DensityScan,
    CoverageTriangles,
    SausageCurve,
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Widen every interval operation by this many ulps instead of one.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub stress: f64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Run a theorem-level verification and write a JSON report.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Scale scanned for the small threshold.
        #[arg(long, default_value_t = 17)]
        m: u32,
        #[arg(long, default_value_t = 8)]
        h_max: u32,
        /// Scales searched for coverage.
        #[arg(long, default_value = "17..104")]
        m_range: Span<u32>,
        /// Counts that must be covered.
        #[arg(long, default_value = "516946..459118697")]
        n_range: Span<u64>,
        /// Last scale sampled when chaining untruncated packings.
        #[arg(long, default_value_t = 200)]
        chain_to: u32,
    },
    /// Write a CSV data set.
    Emit {
        #[arg(value_enum)]
        dataset: Dataset,
        #[arg(long)]
        m_range: Option<Span<u32>>,
        #[arg(long, default_value_t = u32::MAX)]
        h_max: u32,
        #[arg(long, default_value = "1..1000000000")]
        n_range: Span<u64>,
        #[arg(long, value_enum, default_value = "shrunken")]
        mode: CoverageMode,
    },
    /// Count lattice points by enumeration and compare with the closed form.
    Oracle {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "0,0,0")]
        h: Triple,
    },
    /// List counts in a range missing from a coverage.
    Gaps {
        #[arg(long, default_value = "1..104")]
        m_range: Span<u32>,
        #[arg(long)]
        n_range: Span<u64>,
        #[arg(long, value_enum, default_value = "inflated")]
        mode: CoverageMode,
    },
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "sausage",
    version,
    about = "Certified D4 packing densities against sausages"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Validated run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub stress: f64,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let cfg = RunConfig {
            command: cli.command,
            out: cli.common.out,
            workers: cli.common.workers,
            stress: cli.common.stress,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let check_m = |s: &Span<u32>| {
            if s.from == 0 || s.to > M_CAP {
                return Err(Error::Usage(format!("m range must lie in 1..{M_CAP}")));
            }
            Ok(())
        };
        let check_n = |s: &Span<u64>| {
            if s.from == 0 || s.to > N_CAP {
                return Err(Error::Usage(format!("count range must lie in 1..{N_CAP}")));
            }
            Ok(())
        };
        match &self.command {
            Command::Verify {
                m,
                m_range,
                n_range,
                chain_to,
                ..
            } => {
                check_m(m_range)?;
                check_n(n_range)?;
                if *m == 0 || *m > M_CAP || *chain_to > M_CAP {
                    return Err(Error::Usage(format!("scales must lie in 1..{M_CAP}")));
                }
            }
            Command::Emit {
                m_range, n_range, ..
            } => {
                if let Some(r) = m_range {
                    check_m(r)?;
                }
                check_n(n_range)?;
            }
            Command::Oracle { m, .. } => {
                if *m == 0 {
                    return Err(Error::Usage("m must be positive".into()));
                }
            }
            Command::Gaps {
                m_range, n_range, ..
            } => {
                check_m(m_range)?;
                check_n(n_range)?;
            }
        }
        if self.workers == Some(0) {
            return Err(Error::Usage("--workers must be positive".into()));
        }
        Kernel::stressed(self.stress)?;
        Ok(())
    }

    pub fn evaluator(&self) -> Result<Evaluator> {
        Ok(Evaluator::with_kernel(Kernel::stressed(self.stress)?))
    }

    /// Runs `f` on a pool with the configured worker count.
    pub fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            b = b.num_threads(w);
        }
        let pool = b
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

/// What a command produced.
#[derive(Debug)]
pub enum Outcome {
    Report(VerificationReport),
    Csv(CsvTable),
    Text { body: String, ok: bool },
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Report(r) => r.verdict.exit_code(),
            Outcome::Csv(_) => 0,
            Outcome::Text { ok, .. } => {
                if *ok {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Outcome::Report(r) => r.to_json() + "\n",
            Outcome::Csv(t) => t.to_csv_string(),
            Outcome::Text { body, .. } => body.clone(),
        }
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let Command::Verify {
        target,
        m,
        h_max,
        m_range,
        n_range,
        chain_to,
    } = &cfg.command
    else {
        return Err(Error::Internal(
            "cmd_verify called for another command".into(),
        ));
    };
    let ev = cfg.evaluator()?;
    let opts = VerifyOptions {
        scan_m: *m,
        h_max: *h_max,
        m_from: m_range.from,
        m_to: m_range.to,
        n_from: n_range.from,
        n_to: n_range.to,
        chain_to: *chain_to,
    };
    let report = cfg.in_pool(|| match target {
        Target::Small => verify_n4(&ev, &opts),
        Target::Big => verify_big_n4(&ev, &opts),
    })??;
    Ok(Outcome::Report(report))
}

pub fn cmd_emit(cfg: &RunConfig) -> Result<Outcome> {
    let Command::Emit {
        dataset,
        m_range,
        h_max,
        n_range,
        mode,
    } = &cfg.command
    else {
        return Err(Error::Internal(
            "cmd_emit called for another command".into(),
        ));
    };
    let ev = cfg.evaluator()?;
    let table = cfg.in_pool(|| match dataset {
        Dataset::DensityScan => {
            let r = m_range.unwrap_or(Span { from: 17, to: 17 });
            density_scan(&ev, r.from, r.to, *h_max)
        }
        Dataset::CoverageTriangles => {
            let r = m_range.unwrap_or(Span { from: 17, to: 21 });
            coverage_triangles(&ev, r.from, r.to, *mode)
        }
        Dataset::SausageCurve => sausage_curve(&ev, n_range.from, n_range.to, 256),
    })??;
    Ok(Outcome::Csv(table))
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<Outcome> {
    let Command::Oracle { m, h } = &cfg.command else {
        return Err(Error::Internal(
            "cmd_oracle called for another command".into(),
        ));
    };
    let spec = TruncationSpec::new(*m, h.0)?;
    if spec.m > ORACLE_CAP {
        return Err(Error::Resource(format!(
            "oracle enumeration capped at m = {ORACLE_CAP}"
        )));
    }
    let oracle = cfg.in_pool(|| count_points_oracle(&spec))??;
    let formula = g_truncated(&spec)?;
    let verdict = if oracle == formula {
        "MATCH"
    } else {
        "MISMATCH"
    };
    let body = format!(
        "m = {}, h = ({},{},{})\noracle:  {oracle}\nformula: {formula}\n{verdict}\n",
        spec.m, spec.h[0], spec.h[1], spec.h[2]
    );
    Ok(Outcome::Text {
        body,
        ok: oracle == formula,
    })
}

pub fn cmd_gaps(cfg: &RunConfig) -> Result<Outcome> {
    let Command::Gaps {
        m_range,
        n_range,
        mode,
    } = &cfg.command
    else {
        return Err(Error::Internal(
            "cmd_gaps called for another command".into(),
        ));
    };
    let ev = cfg.evaluator()?;
    let build = cfg.in_pool(|| build_coverage(&ev, m_range.from, m_range.to, *mode, true))??;
    let gaps = build.set.find_gaps(n_range.from, n_range.to)?;
    let mut body = String::from("from,to\n");
    for (a, b) in &gaps {
        body.push_str(&format!("{a},{b}\n"));
    }
    Ok(Outcome::Text { body, ok: true })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Verify { .. } => cmd_verify(cfg),
        Command::Emit { .. } => cmd_emit(cfg),
        Command::Oracle { .. } => cmd_oracle(cfg),
        Command::Gaps { .. } => cmd_gaps(cfg),
    }
}

/// Parses, runs and writes output; returns the process exit status.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let outcome = run(&cfg)?;
        let text = outcome.render();
        match &cfg.out {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(outcome.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sausage: {e}");
            1
        }
    }
}
