//! Probability values that stay exact when they come from integer counts.

use std::cmp::Ordering;

use serde::{Serialize, Serializer};

/// Floating-point probabilities closer than this are treated as equal.
pub const PROB_TOL: f64 = 1e-9;

/// Relative tolerance used when comparing a support distance with a window length.
pub const DIST_RTOL: f64 = 1e-9;

/// `d <= eps` up to the relative distance tolerance.
#[inline]
pub(crate) fn dist_le(d: f64, eps: f64) -> bool {
    d <= eps + DIST_RTOL * eps.abs()
}

/// A probability: either an exact fraction of integer counts or a float.
#[derive(Debug, Clone, Copy)]
pub enum Prob {
    Exact { num: u64, den: u64 },
    Approx(f64),
}

impl Prob {
    pub fn value(&self) -> f64 {
        match *self {
            Prob::Exact { num, den } => num as f64 / den as f64,
            Prob::Approx(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Prob::Exact { .. })
    }

    /// Exact difference `self - other` as a float whose sign is always correct
    /// when both sides are exact.
    pub fn diff(&self, other: &Prob) -> f64 {
        match (*self, *other) {
            (Prob::Exact { num: a, den: b }, Prob::Exact { num: c, den: d }) => {
                let lhs = a as i128 * d as i128;
                let rhs = c as i128 * b as i128;
                (lhs - rhs) as f64 / (b as f64 * d as f64)
            }
            _ => self.value() - other.value(),
        }
    }

    /// Exact ordering for two exact values; `None` otherwise.
    pub fn exact_cmp(&self, other: &Prob) -> Option<Ordering> {
        match (*self, *other) {
            (Prob::Exact { num: a, den: b }, Prob::Exact { num: c, den: d }) => {
                Some((a as u128 * d as u128).cmp(&(c as u128 * b as u128)))
            }
            _ => None,
        }
    }

    /// Ordering with the float tolerance applied when either side is inexact.
    pub fn cmp_tol(&self, other: &Prob, tol: f64) -> Ordering {
        self.exact_cmp(other).unwrap_or_else(|| float_cmp(self.value() - other.value(), tol))
    }

    /// Equality in the sense of [`Prob::cmp_tol`] with [`PROB_TOL`].
    pub fn approx_eq(&self, other: &Prob) -> bool {
        self.cmp_tol(other, PROB_TOL) == Ordering::Equal
    }
}

pub(crate) fn float_cmp(diff: f64, tol: f64) -> Ordering {
    if diff.abs() <= tol {
        Ordering::Equal
    } else if diff > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl Serialize for Prob {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl std::fmt::Display for Prob {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prob::Exact { num, den } => write!(f, "{num}/{den}"),
            Prob::Approx(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_comparison_ignores_representation() {
        let a = Prob::Exact { num: 1, den: 2 };
        let b = Prob::Exact { num: 2, den: 4 };
        assert_eq!(a.exact_cmp(&b), Some(Ordering::Equal));
        assert_eq!(a.diff(&b), 0.0);
        let c = Prob::Exact { num: 32, den: 71 };
        let d = Prob::Exact { num: 134, den: 168 };
        assert_eq!(c.cmp_tol(&d, 1.0), Ordering::Less);
    }

    #[test]
    fn float_tolerance() {
        let a = Prob::Approx(0.5);
        let b = Prob::Approx(0.5 + 1e-12);
        assert!(a.approx_eq(&b));
        assert_eq!(a.cmp_tol(&Prob::Approx(0.6), PROB_TOL), Ordering::Less);
    }

    #[test]
    fn distance_tolerance_is_relative() {
        assert!(dist_le(0.30000000000000004, 0.3));
        assert!(!dist_le(1e-12, 0.0));
        assert!(!dist_le(2.0, 1.0));
    }
}
