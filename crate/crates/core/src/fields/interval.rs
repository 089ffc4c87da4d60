use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::{rational_to_f64, scaled_isqrt_floor};

/// Closed interval with rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RealInterval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        RealInterval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RealInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Self {
        RealInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RealInterval { lo, hi }
    }

    /// Outward-rounded square root on the dyadic grid `2^-bits`. Negative parts are clipped.
    pub fn sqrt(&self, bits: u32) -> Self {
        let den = BigInt::from(1) << bits as usize;
        let lo = if self.lo.is_positive() {
            BigRational::new(scaled_isqrt_floor(&self.lo, bits), den.clone())
        } else {
            BigRational::zero()
        };
        let hi = if self.hi.is_positive() {
            BigRational::new(scaled_isqrt_floor(&self.hi, bits) + 1, den)
        } else {
            BigRational::zero()
        };
        RealInterval { lo, hi }
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_bounds();
        write!(f, "[{:e}, {:e}]", a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn products_cover_all_sign_cases() {
        let a = RealInterval::new(q(-1, 1), q(2, 1));
        let b = RealInterval::new(q(-3, 1), q(1, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, q(-6, 1));
        assert_eq!(p.hi, q(3, 1));
    }

    #[test]
    fn sqrt_encloses() {
        let s = RealInterval::point(q(2, 1)).sqrt(30);
        let (lo, hi) = s.to_f64_bounds();
        assert!(lo <= 2f64.sqrt() && 2f64.sqrt() <= hi);
        assert!(hi - lo < 1e-8);
        let perfect = RealInterval::point(q(9, 4)).sqrt(8);
        assert!(perfect.contains(&q(3, 2)));
    }
}
