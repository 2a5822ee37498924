use std::collections::BTreeMap;

use serde::Serialize;

use crate::interval::{ConstantTable, Interval, Kernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// Process exit status for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// Worst of two verdicts: refuted beats inconclusive beats certified.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Certified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub verdict: Verdict,
    pub witness: serde_json::Value,
    pub bound: Option<u64>,
    pub gaps: Vec<(u64, u64)>,
    pub runtime_ms: u64,
    pub constants: BTreeMap<&'static str, Interval>,
    pub kernel: Kernel,
}

impl VerificationReport {
    pub fn new(claim: &str, verdict: Verdict, constants: &ConstantTable, kernel: Kernel) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            verdict,
            witness: serde_json::Value::Null,
            bound: None,
            gaps: Vec::new(),
            runtime_ms: 0,
            constants: constants.entries().map(|(k, v)| (k.as_str(), v)).collect(),
            kernel,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::STANDARD_CONSTANTS;

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Certified.and(Certified), Certified);
        assert_eq!(Certified.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Refuted), Refuted);
        assert_eq!(
            [Certified, Refuted, Inconclusive].map(Verdict::exit_code),
            [0, 1, 2]
        );
    }

    #[test]
    fn json_keys() {
        let r =
            VerificationReport::new("x", Verdict::Certified, &STANDARD_CONSTANTS, Kernel::EXACT);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "claim",
            "verdict",
            "witness",
            "bound",
            "gaps",
            "runtime_ms",
            "constants",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["verdict"], "CERTIFIED");
        assert!(v["constants"]["pi"]["lo"].as_f64().unwrap() < 3.1415926535897936);
    }
}
