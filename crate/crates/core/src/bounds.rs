//! Capacity brackets from a single maximum code size `δ_n(D)`.
//!
//! With `r`, `r1`, `r2` the zero-run parameters of `D` and any
//! `n ≥ r1 + r2`:
//!
//! ```text
//! (log2 δ_n - (r1 + r2)) / (n + r + 1 - (r1 + r2))  ≤  cap(D)  ≤  log2 δ_n / n
//! ```
//!
//! All brackets are clamped to `[0, 1]` and widened by [`ROUNDING_SLACK`] so
//! floating-point rounding never makes them claim more than they prove.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::{PatternSet, ZeroParams};

/// Outward rounding applied to every bracket end.
pub const ROUNDING_SLACK: f64 = 1e-12;

impl From<&PatternSet> for ZeroParams {
    fn from(d: &PatternSet) -> Self {
        d.zero_params()
    }
}

/// A capacity bracket in bits per symbol.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityBracket {
    pub n: usize,
    pub delta_n: u64,
    pub lower: f64,
    pub upper: f64,
    /// The lower expression before clamping at zero; may be negative for small `n`.
    pub raw_lower: f64,
}

impl CapacityBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, cap: f64) -> bool {
        self.lower <= cap && cap <= self.upper
    }
}

fn check_delta(n: usize, delta_n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if delta_n == 0 {
        return Err(Error::InvalidArgument("δ_n is at least 1".into()));
    }
    Ok(())
}

fn bracket(n: usize, delta_n: u64, raw_lower: f64) -> CapacityBracket {
    let log_delta = (delta_n as f64).log2();
    CapacityBracket {
        n,
        delta_n,
        lower: (raw_lower - ROUNDING_SLACK).clamp(0.0, 1.0),
        upper: (log_delta / n as f64 + ROUNDING_SLACK).clamp(0.0, 1.0),
        raw_lower,
    }
}

/// The general sandwich bound. Pass `&PatternSet` or, for the empty set,
/// [`ZeroParams::EMPTY`].
pub fn theorem1_bracket(
    n: usize,
    delta_n: u64,
    zeros: impl Into<ZeroParams>,
) -> Result<CapacityBracket> {
    let ZeroParams { r, r1, r2 } = zeros.into();
    check_delta(n, delta_n)?;
    if n < r1 + r2 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is below r1 + r2 = {}",
            r1 + r2
        )));
    }
    let shift = (r1 + r2) as f64;
    let raw = ((delta_n as f64).log2() - shift) / ((n + r + 1) as f64 - shift);
    Ok(bracket(n, delta_n, raw))
}

/// Which specialization of the sandwich bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corollary2Case {
    /// No pattern contains a zero: `n·cap ≤ log2 δ_n ≤ (n+1)·cap`.
    ZeroFree,
    /// No pattern starts or ends with a zero: `n·cap ≤ log2 δ_n ≤ (n+r+1)·cap`.
    NoBoundaryZeros,
}

/// The specialized bracket for sets without zeros, or without leading and
/// trailing zeros. Other sets must use [`theorem1_bracket`].
pub fn corollary2_bracket(
    n: usize,
    delta_n: u64,
    d: &PatternSet,
) -> Result<(Corollary2Case, CapacityBracket)> {
    check_delta(n, delta_n)?;
    let log_delta = (delta_n as f64).log2();
    if d.is_zero_free() {
        Ok((Corollary2Case::ZeroFree, bracket(n, delta_n, log_delta / (n + 1) as f64)))
    } else if d.r1() == 0 && d.r2() == 0 {
        Ok((
            Corollary2Case::NoBoundaryZeros,
            bracket(n, delta_n, log_delta / (n + d.r() + 1) as f64),
        ))
    } else {
        Err(Error::InvalidArgument(format!(
            "{d} has patterns starting or ending with zero; use the general bracket"
        )))
    }
}

/// `2^(r1 + r2)`: when the capacity is zero, no code avoiding `D` is larger.
pub fn zero_capacity_code_bound(d: &PatternSet) -> u64 {
    1u64 << (d.r1() + d.r2())
}

/// `1 / (2M + m)`, a floor on any positive capacity.
pub fn positive_floor(d: &PatternSet) -> f64 {
    1.0 / (2 * d.total_len() + d.m()) as f64
}

/// Smallest `n` for which `max(r1 + r2, r + 1) / n ≤ eps`, so the gap
/// between `log2 δ_n / n` and the capacity is at most `eps`.
pub fn n_for_accuracy(zeros: impl Into<ZeroParams>, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let ZeroParams { r, r1, r2 } = zeros.into();
    let k = (r1 + r2).max(r + 1) as f64;
    Ok(((k / eps) - 1e-9).ceil().max(1.0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> PatternSet {
        PatternSet::from_list(s).unwrap()
    }

    #[test]
    fn empty_set_upper_is_attained() {
        for n in 1..=20 {
            let b = theorem1_bracket(n, 1 << n, ZeroParams::EMPTY).unwrap();
            assert_eq!(b.upper, 1.0);
            assert!((b.raw_lower - n as f64 / (n + 1) as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_capacity_lower_is_attained() {
        for m in 2..=6 {
            let d = set(&format!("{}+", "0".repeat(m - 1)));
            for n in m - 1..=30 {
                let b = theorem1_bracket(n, 1 << (m - 1), &d).unwrap();
                assert_eq!(b.lower, 0.0);
                assert!(b.raw_lower.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_short_n() {
        let d = set("00+00");
        assert!(theorem1_bracket(3, 4, &d).is_err());
        assert!(theorem1_bracket(4, 4, &d).is_ok());
        assert!(theorem1_bracket(4, 0, &d).is_err());
    }

    #[test]
    fn specializations_agree_with_general_bound() {
        for (list, case) in [
            ("++- +-+", Corollary2Case::ZeroFree),
            ("+0+0+", Corollary2Case::NoBoundaryZeros),
            ("+00-", Corollary2Case::NoBoundaryZeros),
        ] {
            let d = set(list);
            for n in 1..15 {
                let delta = 1 + 3 * n as u64;
                let (c, b) = corollary2_bracket(n, delta, &d).unwrap();
                assert_eq!(c, case);
                let t = theorem1_bracket(n, delta, &d).unwrap();
                assert!((b.lower - t.lower).abs() < 1e-15 && (b.upper - t.upper).abs() < 1e-15);
            }
        }
        assert!(corollary2_bracket(4, 3, &set("0+")).is_err());
    }

    #[test]
    fn zero_free_width_at_ten() {
        // width = log2 δ / (n(n+1)) ≤ 1/11 whatever δ_10 ≤ 2^10 is
        let d = set("+-+");
        for delta in [1u64, 100, 1024] {
            let (_, b) = corollary2_bracket(10, delta, &d).unwrap();
            assert!(b.width() <= 0.1);
        }
    }

    #[test]
    fn code_bound_and_floor() {
        for m in 2..=6 {
            assert_eq!(zero_capacity_code_bound(&set(&format!("{}+", "0".repeat(m - 1)))), 1 << (m - 1));
        }
        assert_eq!(zero_capacity_code_bound(&set("+-+ --")), 1);
        assert_eq!(positive_floor(&set("0++")), 1.0 / 9.0);
        assert_eq!(positive_floor(&set("+++-")), 1.0 / 12.0);
        assert!(positive_floor(&set("0++")) <= 0.69424191);
        assert!(positive_floor(&set("+++-")) <= 0.90053676);
    }

    #[test]
    fn accuracy_schedule() {
        assert_eq!(n_for_accuracy(&set("++-"), 0.1).unwrap(), 10);
        assert_eq!(n_for_accuracy(&set("+0+0+"), 0.2).unwrap(), 10);
        for list in ["+0+0+", "00+0", "+-", "0+00"] {
            let d = set(list);
            let k = (d.r1() + d.r2()).max(d.r() + 1);
            assert_eq!(n_for_accuracy(&d, 1.0).unwrap(), k);
        }
        assert!(n_for_accuracy(&set("+"), 0.0).is_err());
    }
}
