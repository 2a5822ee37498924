//! Stored enclosures of the transcendental constants.
//!
//! Each pair brackets the true value between adjacent doubles. The test suite
//! recomputes every constant with a fixed-point series oracle and checks the
//! brackets.

use std::str::FromStr;

use serde::Serialize;

use super::Interval;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantName {
    Sqrt2,
    Sqrt3,
    Pi,
    PiSq,
    AcosOneThird,
    AtanSilver,
    Kappa2,
    Kappa3,
    Kappa4,
}

impl ConstantName {
    pub const ALL: [ConstantName; 9] = [
        ConstantName::Sqrt2,
        ConstantName::Sqrt3,
        ConstantName::Pi,
        ConstantName::PiSq,
        ConstantName::AcosOneThird,
        ConstantName::AtanSilver,
        ConstantName::Kappa2,
        ConstantName::Kappa3,
        ConstantName::Kappa4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstantName::Sqrt2 => "sqrt2",
            ConstantName::Sqrt3 => "sqrt3",
            ConstantName::Pi => "pi",
            ConstantName::PiSq => "pi_sq",
            ConstantName::AcosOneThird => "acos_one_third",
            ConstantName::AtanSilver => "atan_silver",
            ConstantName::Kappa2 => "kappa2",
            ConstantName::Kappa3 => "kappa3",
            ConstantName::Kappa4 => "kappa4",
        }
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ConstantName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown constant `{s}`")))
    }
}

/// `kappa_d` is the volume of the unit ball in dimension `d`;
/// `atan_silver` is `arctan(3 - 2√2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantTable {
    pub sqrt2: Interval,
    pub sqrt3: Interval,
    pub pi: Interval,
    pub pi_sq: Interval,
    pub acos_one_third: Interval,
    pub atan_silver: Interval,
    pub kappa2: Interval,
    pub kappa3: Interval,
    pub kappa4: Interval,
}

pub const STANDARD_CONSTANTS: ConstantTable = ConstantTable {
    sqrt2: Interval::from_bits(0x3ff6a09e667f3bcc, 0x3ff6a09e667f3bcd),
    sqrt3: Interval::from_bits(0x3ffbb67ae8584caa, 0x3ffbb67ae8584cab),
    pi: Interval::from_bits(0x400921fb54442d18, 0x400921fb54442d19),
    pi_sq: Interval::from_bits(0x4023bd3cc9be45de, 0x4023bd3cc9be45df),
    acos_one_third: Interval::from_bits(0x3ff3b2028082e8d3, 0x3ff3b2028082e8d4),
    atan_silver: Interval::from_bits(0x3fc5bfe34f051112, 0x3fc5bfe34f051113),
    kappa2: Interval::from_bits(0x400921fb54442d18, 0x400921fb54442d19),
    kappa3: Interval::from_bits(0x4010c152382d7365, 0x4010c152382d7366),
    kappa4: Interval::from_bits(0x4013bd3cc9be45de, 0x4013bd3cc9be45df),
};

impl Default for ConstantTable {
    fn default() -> Self {
        STANDARD_CONSTANTS
    }
}

impl ConstantTable {
    pub fn get(&self, name: ConstantName) -> Interval {
        match name {
            ConstantName::Sqrt2 => self.sqrt2,
            ConstantName::Sqrt3 => self.sqrt3,
            ConstantName::Pi => self.pi,
            ConstantName::PiSq => self.pi_sq,
            ConstantName::AcosOneThird => self.acos_one_third,
            ConstantName::AtanSilver => self.atan_silver,
            ConstantName::Kappa2 => self.kappa2,
            ConstantName::Kappa3 => self.kappa3,
            ConstantName::Kappa4 => self.kappa4,
        }
    }

    /// Lookup by textual key.
    pub fn by_name(&self, name: &str) -> Result<Interval, Error> {
        Ok(self.get(name.parse()?))
    }

    pub fn entries(&self) -> impl Iterator<Item = (ConstantName, Interval)> + '_ {
        ConstantName::ALL.into_iter().map(|c| (c, self.get(c)))
    }
}
