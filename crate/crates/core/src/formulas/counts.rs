//! Closed-form lattice-point counts.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::TruncationSpec;

type Q = Ratio<i128>;

/// `|Y_m ∩ D4| = 4m⁴ + 8m³ + 8m² + 4m + 1`.
///
/// # Panics
/// On `u128` overflow, which needs `m ≥ 2^31`.
pub fn g_y(m: u32) -> u128 {
    let m = m as u128;
    let mut acc: u128 = 0;
    for c in [4u128, 8, 8, 4, 1] {
        acc = acc
            .checked_mul(m)
            .and_then(|a| a.checked_add(c))
            .expect("g_y overflow");
    }
    acc
}

/// `|t_h³(Y_m) ∩ D4|` from the power sums `p_k = Σ h_i^k`.
pub fn g_truncated(spec: &TruncationSpec) -> Result<u64> {
    let m = Q::from_integer(spec.m as i128);
    let p = |k| Q::from_integer(spec.power_sum(k));
    let (p1, p2, p3, p4) = (p(1), p(2), p(3), p(4));
    let q = |n: i128, d: i128| Q::new(n, d);
    let coeffs = [
        q(4, 1),
        q(8, 1) - q(2, 3) * p1,
        q(8, 1) - (p2 + p1),
        q(4, 1) - (q(2, 1) * p3 + q(3, 1) * p2 + q(2, 1) * p1) / q(3, 1),
        q(1, 1) - (q(-2, 1) * p4 + q(2, 1) * p3 + q(5, 1) * p2 + p1) / q(6, 1),
    ];
    let value = coeffs.iter().fold(Q::from_integer(0), |acc, c| acc * m + c);
    if !value.is_integer() {
        return Err(Error::Internal(format!(
            "non-integral point count {value} for {spec:?}"
        )));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("point count {value} out of range for {spec:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_counts() {
        assert_eq!(g_y(0), 1);
        assert_eq!(g_y(1), 25);
        assert_eq!(g_y(17), 375_769);
    }

    #[test]
    fn truncated_counts() {
        let s = TruncationSpec::new(17, [1, 3, 4]).unwrap();
        assert_eq!(g_truncated(&s).unwrap(), 338_224);
        for m in 1..40 {
            let s = TruncationSpec::untruncated(m).unwrap();
            assert_eq!(g_truncated(&s).unwrap() as u128, g_y(m));
        }
    }
}
