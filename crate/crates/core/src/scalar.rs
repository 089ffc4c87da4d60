//! Scalar traits shared by the polynomial, field and numeric layers.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with unit. Blanket-implemented.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Ring with exact (or at least total for nonzero) division.
pub trait Field: Ring + std::ops::Div<Output = Self> {}

impl<T> Field for T where T: Ring + std::ops::Div<Output = T> {}

/// Image of an integer in a ring.
pub trait FromInteger {
    fn from_integer(n: BigInt) -> Self;

    fn from_i64(n: i64) -> Self
    where
        Self: Sized,
    {
        Self::from_integer(BigInt::from(n))
    }
}

impl FromInteger for BigInt {
    fn from_integer(n: BigInt) -> Self {
        n
    }
}

impl FromInteger for BigRational {
    fn from_integer(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
}

impl FromInteger for f64 {
    fn from_integer(n: BigInt) -> Self {
        num_traits::ToPrimitive::to_f64(&n).unwrap_or(f64::NAN)
    }
}

/// Error for [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `p/q`, decimal and scientific literals exactly.
///
/// ```
/// use cyclogon::scalar::parse_rational;
/// assert_eq!(parse_rational("0.125").unwrap().to_string(), "1/8");
/// assert_eq!(parse_rational("-3/6").unwrap().to_string(), "-1/2");
/// assert_eq!(parse_rational("1e-3").unwrap().to_string(), "1/1000");
/// ```
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| err())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{}{}", int_part, frac_part);
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(q)
}

/// Exact square root of a rational, if it exists.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// `floor(sqrt(q) * 2^bits)` for nonnegative `q`.
pub(crate) fn scaled_isqrt_floor(q: &BigRational, bits: u32) -> BigInt {
    if !q.is_positive() {
        return BigInt::zero();
    }
    let scaled = (q.numer() << (2 * bits as usize)).div_floor(q.denom());
    scaled.sqrt()
}

/// Converts a rational to the nearest representable f64.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Rescale huge numerators/denominators before dividing.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift >= 0 {
        q.numer().clone() / (q.denom() << shift as usize)
    } else {
        (q.numer() << (-shift) as usize) / q.denom()
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Best-effort conversion of an f64 to an exact rational.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators, always nonnegative.
pub fn gcd_numerators<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

/// Serde helpers that write big numbers as decimal strings.
pub mod serde_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize_rational<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }

    pub fn serialize_int<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize_int<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("42").unwrap(), q(42, 1));
        assert_eq!(parse_rational(" 7/21 ").unwrap(), q(1, 3));
        assert_eq!(parse_rational("-2.5").unwrap(), q(-5, 2));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2.5e2").unwrap(), q(250, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn scaled_sqrt_brackets() {
        let two = q(2, 1);
        let f = scaled_isqrt_floor(&two, 20);
        let lo = rational_to_f64(&BigRational::new(f.clone(), BigInt::one() << 20));
        let hi = rational_to_f64(&BigRational::new(f + 1, BigInt::one() << 20));
        assert!(lo <= 2f64.sqrt() && 2f64.sqrt() < hi);
    }

    #[test]
    fn f64_conversion_handles_huge_parts() {
        let big = BigInt::from(10).pow(400u32);
        let x = BigRational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&x) - 3.0).abs() < 1e-12);
    }
}
