//! Exact rational scalars.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so it is used directly; this module only adds the handful of
//! constructors and combinatorial helpers the rest of the crate needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Falling factorial `x (x-1) ... (x-n+1)`; `(x)_0 = 1`.
pub fn falling_factorial(x: i64, n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..n as i64 {
        acc *= BigInt::from(x - t);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as i64).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

pub fn binomial(n: u32, r: u32) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for t in 0..r {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Renders `3`, `-1/2`, ... the way the expression grammar reads them.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `serialize_with` helper: rationals as `"p/q"` strings.
pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// `serialize_with` helper for lists of rationals.
pub fn serialize_vec<S: serde::Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(format_rational))
}

pub(crate) fn is_one(q: &Rational) -> bool {
    q.is_one()
}
