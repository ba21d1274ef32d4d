//! Exact rational scalars and their text forms.
//!
//! [`ExactScalar`] is an arbitrary-precision rational that is always kept in
//! lowest terms with a positive denominator. Serialized form is `num/den`,
//! with the denominator written even when it is 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactScalar = BigRational;

pub fn int(v: impl Into<BigInt>) -> ExactScalar {
    BigRational::from_integer(v.into())
}

/// `num / den`. Panics if `den == 0`.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactScalar {
    BigRational::new(num.into(), den.into())
}

/// `x^e` for `e ≥ 0`, with `0^0 = 1`.
pub fn pow(x: &ExactScalar, e: u32) -> ExactScalar {
    num_traits::pow(x.clone(), e as usize)
}

/// `x^e` for any integer `e`; `x` must be nonzero when `e < 0`.
pub fn powi(x: &ExactScalar, e: i64) -> ExactScalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "zero raised to a negative power");
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// Returns the integer value of `x` when its denominator is 1.
pub fn as_integer(x: &ExactScalar) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn to_f64(x: &ExactScalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Ratio's conversion only fails for values outside f64 range.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn format_exact(x: &ExactScalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_exact(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn one() -> ExactScalar {
    ExactScalar::one()
}

pub fn zero() -> ExactScalar {
    ExactScalar::zero()
}
