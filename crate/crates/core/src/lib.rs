//! Certified computations for finite packings of unit 4-balls centred on the
//! D4 lattice inside truncated 24-cells, compared against sausage
//! arrangements.
//!
//! * [`interval`]: outward-rounded interval kernel and constant enclosures.
//! * [`lattice`]: exact integer model of D4, the 24-cell facets, and a
//!   brute-force point counter.
//! * [`formulas`]: closed-form counts, Steiner volumes, densities and
//!   removal radii.
//! * [`search`]: the m = 17 scan, coverage of sphere counts, and the tail
//!   certificate.
//! * [`cli`]: command-line orchestration, reports and CSV output.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod interval;
pub mod lattice;
pub mod search;

pub use error::{Error, Result};
pub use interval::{Interval, Kernel};
pub use lattice::TruncationSpec;
