//! Exact rationals.
//!
//! [`Scalar`] is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator after each operation. Text form is always
//! `"num/den"`, also for integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(value: BigInt) -> Scalar {
    Scalar::from_integer(value)
}

/// `"num/den"`, denominators included even when they are 1.
pub fn to_fraction_string(value: &Scalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"num/den"` or a bare integer. Decimal points are rejected.
pub fn parse_fraction(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = |msg: &str| Error::format("fraction", format!("{msg}: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Scalar::new(num, den))
}

/// True when the value is stored in lowest terms with a positive denominator.
pub fn is_canonical(value: &Scalar) -> bool {
    use num_integer::Integer;
    value.denom().is_positive() && value.numer().gcd(value.denom()).is_one()
}

/// Human-readable form: integers without a denominator.
pub fn display(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
