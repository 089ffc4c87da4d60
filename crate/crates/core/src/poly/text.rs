//! Human-readable text and JSON forms of polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BiPoly, UniPoly};
use crate::scalar::{parse_rational, Ring};

/// How a coefficient prints inside a sum.
pub trait CoeffText {
    /// `(negative, magnitude text, magnitude is one)`.
    fn split_sign(&self) -> (bool, String, bool);
}

impl CoeffText for BigInt {
    fn split_sign(&self) -> (bool, String, bool) {
        (self.is_negative(), self.abs().to_string(), self.abs().is_one())
    }
}

impl CoeffText for BigRational {
    fn split_sign(&self) -> (bool, String, bool) {
        (self.is_negative(), self.abs().to_string(), self.abs().is_one())
    }
}

impl CoeffText for f64 {
    fn split_sign(&self) -> (bool, String, bool) {
        (*self < 0.0, format!("{}", self.abs()), self.abs() == 1.0)
    }
}

impl<T: Ring + CoeffText> CoeffText for UniPoly<T> {
    fn split_sign(&self) -> (bool, String, bool) {
        match self.coeffs().iter().filter(|c| !c.is_zero()).count() {
            0 => (false, "0".into(), false),
            1 => {
                let k = self.valuation().unwrap();
                let (neg, mag, one) = self.coeff(k).split_sign();
                let mono = monomial_text(&[(self.var(), k as u32)]);
                if mono.is_empty() {
                    (neg, mag, one)
                } else if one {
                    (neg, mono, false)
                } else {
                    (neg, format!("{}*{}", mag, mono), false)
                }
            }
            _ => (false, format!("({})", self), false),
        }
    }
}

impl CoeffText for BiPoly {
    fn split_sign(&self) -> (bool, String, bool) {
        let terms: Vec<_> = self.terms().collect();
        match terms.len() {
            0 => (false, "0".into(), false),
            1 => {
                let (&(i, j), c) = terms[0];
                let (neg, mag, one) = c.split_sign();
                let mono = monomial_text(&[(self.vars().0, i), (self.vars().1, j)]);
                if mono.is_empty() {
                    (neg, mag, one)
                } else if one {
                    (neg, mono, false)
                } else {
                    (neg, format!("{}*{}", mag, mono), false)
                }
            }
            _ => (false, format!("({})", self), false),
        }
    }
}

pub(crate) fn monomial_text(parts: &[(char, u32)]) -> String {
    parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn write_term<C: CoeffText>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &C,
    mono: &str,
) -> fmt::Result {
    let (neg, mag, one) = c.split_sign();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if mono.is_empty() {
        write!(f, "{}", mag)
    } else if one {
        write!(f, "{}", mono)
    } else {
        write!(f, "{}*{}", mag, mono)
    }
}

impl<T: Ring + CoeffText> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_poly() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, &monomial_text(&[(self.var(), k as u32)]))?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    var: String,
    coeffs: Vec<String>,
}

macro_rules! poly_serde {
    ($t:ty, $parse:expr) => {
        impl Serialize for UniPoly<$t> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                PolyJson {
                    var: self.var().to_string(),
                    coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
                }
                .serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for UniPoly<$t> {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let j = PolyJson::deserialize(d)?;
                let mut chars = j.var.chars();
                let var = match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => return Err(D::Error::custom("variable must be one character")),
                };
                let coeffs = j
                    .coeffs
                    .iter()
                    .map(|c| $parse(c.as_str()).ok_or_else(|| D::Error::custom(format!("bad coefficient `{}`", c))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(UniPoly::new(coeffs, var))
            }
        }
    };
}

poly_serde!(BigInt, |s: &str| s.parse::<BigInt>().ok());
poly_serde!(BigRational, |s: &str| parse_rational(s).ok());

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QPoly, ZPoly};

    #[test]
    fn integer_text() {
        let p = ZPoly::from_i64s(&[0, 0, -63, 0, 1280, 0, -8192, 0, 16384], 'x');
        assert_eq!(p.to_string(), "16384*x^8 - 8192*x^6 + 1280*x^4 - 63*x^2");
        assert_eq!(ZPoly::from_i64s(&[-1, 0, -1], 'y').to_string(), "-y^2 - 1");
        assert_eq!(ZPoly::from_i64s(&[], 'x').to_string(), "0");
        assert_eq!(ZPoly::from_i64s(&[5], 'x').to_string(), "5");
    }

    #[test]
    fn rational_text() {
        let p = QPoly::from_ratios(&[(1, 2), (-3, 4)], 'x');
        assert_eq!(p.to_string(), "-3/4*x + 1/2");
    }

    #[test]
    fn json_round_trip() {
        let p = QPoly::from_ratios(&[(1, 2), (0, 1), (-7, 3)], 't');
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"var":"t","coeffs":["1/2","0","-7/3"]}"#);
        let back: QPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn nested_text() {
        let a = QPoly::from_ratios(&[(0, 1), (3, 1)], 'a');
        let two = QPoly::from_ratios(&[(2, 1), (1, 1)], 'a');
        let p = UniPoly::new(vec![two, QPoly::zero_in('a'), a], 'x');
        assert_eq!(p.to_string(), "3*a*x^2 + (a + 2)");
    }
}
