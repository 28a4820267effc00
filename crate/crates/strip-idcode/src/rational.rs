//! Exact fractions on 64-bit integers.
//!
//! Densities and cycle means are always compared exactly: every comparison
//! cross-multiplies in 128 bits, so no behavior ever depends on floating
//! point. Floats appear only in display helpers.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    /// Builds `num/den` in lowest terms. The sign lives in the numerator.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let sign = if den < 0 { -1 } else { 1 };
        Rational { num: sign * (num / g), den: (den / g).abs() }
    }

    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    pub fn from_integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Exact division by a positive integer.
    pub fn div_int(&self, d: i64) -> Self {
        assert!(d > 0, "division by non-positive integer");
        Rational::new(self.num, self.den.checked_mul(d).expect("denominator overflow"))
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Compares two fractions given as raw pairs, without reducing.
/// Denominators must be positive.
pub(crate) fn cmp_frac(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Ordering {
    debug_assert!(a_den > 0 && b_den > 0);
    (a_num as i128 * b_den as i128).cmp(&(b_num as i128 * a_den as i128))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Rational::new(6, 14), Rational::new(3, 7));
        assert_eq!(Rational::new(-6, 14), Rational::new(-3, 7));
        assert_eq!(Rational::new(6, -14), Rational::new(-3, 7));
        assert_eq!(Rational::new(-6, -14), Rational::new(3, 7));
        assert_eq!(Rational::new(0, -5), Rational::ZERO);
        assert_eq!(Rational::new(3, 7).num(), 3);
        assert_eq!(Rational::new(3, 7).den(), 7);
    }

    #[test]
    fn ordering_is_exact_near_overflow() {
        // Denominators large enough that a naive i64 cross product would wrap.
        let a = Rational::new(i64::MAX / 3, i64::MAX / 2);
        let b = Rational::new(i64::MAX / 3 + 1, i64::MAX / 2);
        assert!(a < b);
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::new(7, 18) < Rational::new(2, 5));
        assert!(Rational::new(-1, 2) < Rational::ZERO);
    }

    #[test]
    fn div_int_stays_reduced() {
        assert_eq!(Rational::new(6, 7).div_int(2), Rational::new(3, 7));
        assert_eq!(Rational::new(7, 6).div_int(3), Rational::new(7, 18));
    }

    #[test]
    fn displays_as_fraction() {
        assert_eq!(Rational::new(6, 14).to_string(), "3/7");
        assert!((Rational::new(3, 7).to_f64() - 0.428_571_4).abs() < 1e-6);
    }
}
