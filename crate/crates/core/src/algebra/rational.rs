//! Exact rational scalars.
//!
//! Every number the engine produces is an [`ExactRational`]; there is no
//! floating-point path anywhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ExactRational = BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// `num / den`, normalized. Panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n` choose `k` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders as `num/den`, or just `num` for integers.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Inverse of [`format_rational`]. Accepts `a`, `a/b` with `b != 0`.
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(ExactRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(ExactRational::from_integer),
    }
}

/// Builds a rational from decimal numerator/denominator strings, rejecting
/// non-canonical pairs (zero or negative denominator, common factors).
pub fn from_decimal_parts(num: &str, den: &str) -> Option<ExactRational> {
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if !d.is_positive() {
        return None;
    }
    let q = ExactRational::new(n.clone(), d.clone());
    (q.numer() == &n && q.denom() == &d).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_drops_unit_denominator() {
        assert_eq!(format_rational(&int(2875)), "2875");
        assert_eq!(format_rational(&frac(4876875, 10)), "975375/2");
        assert_eq!(format_rational(&frac(-3, 6)), "-1/2");
    }

    #[test]
    fn parse_roundtrip() {
        for q in [int(0), int(-7), frac(22, 7), frac(-1, 1_000_000_007)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn decimal_parts_must_be_canonical() {
        assert_eq!(from_decimal_parts("3", "4"), Some(frac(3, 4)));
        assert_eq!(from_decimal_parts("6", "8"), None);
        assert_eq!(from_decimal_parts("3", "-4"), None);
        assert_eq!(from_decimal_parts("3", "0"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }
}
