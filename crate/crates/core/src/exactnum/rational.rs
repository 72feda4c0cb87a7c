use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Nearest `f64` to the rational.
pub fn to_f64(value: &Rational) -> f64 {
    if let Some(v) = value.to_f64() {
        return v;
    }
    // Fallback for magnitudes the direct conversion cannot handle.
    let numer = value.numer().to_f64().unwrap_or(f64::NAN);
    let denom = value.denom().to_f64().unwrap_or(f64::NAN);
    numer / denom
}

/// The exact dyadic rational equal to a finite `f64`.
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// `true` when the denominator is positive and coprime to the numerator.
pub fn is_canonical(value: &Rational) -> bool {
    value.denom().is_positive() && value.numer().gcd(value.denom()).is_one()
}

/// Serializes as `"num/den"`, or `"num"` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let trimmed = input.trim();
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| err())?;
    let denom: BigInt = denom.parse().map_err(|_| err())?;
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}
