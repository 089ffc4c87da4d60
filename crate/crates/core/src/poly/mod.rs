//! Dense univariate and sparse bivariate polynomials.

mod bi;
pub mod text;
mod uni;

pub use bi::BiPoly;
pub use uni::{primitive_gcd, pseudo_rem, squarefree_decomposition, UniPoly};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type QPoly = UniPoly<BigRational>;
pub type ZPoly = UniPoly<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials in different variables `{0}` and `{1}`")]
    VariableMismatch(char, char),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

impl QPoly {
    /// Parses text such as `16384*x^8 - 63*x^2` in the given variable.
    pub fn parse(text: &str, var: char) -> Result<QPoly, PolyError> {
        let e = crate::series::QuadExpr::parse_in(text, var).map_err(|e| PolyError::Parse(e.to_string()))?;
        match e.as_rational_function() {
            Some(Ok((num, den))) if den.degree() == Some(0) => {
                let c = den.coeff(0);
                Ok(num.map(|a| a / &c).with_var(var))
            }
            _ => Err(PolyError::Parse(format!("`{}` is not a polynomial", text))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c, 'x')
    }

    #[test]
    fn arithmetic_basics() {
        let p = z(&[1, 1]);
        let q = z(&[-1, 1]);
        assert_eq!(&p * &q, z(&[-1, 0, 1]));
        assert_eq!(&p + &q, z(&[0, 2]));
        assert_eq!(&p - &p, z(&[]));
        assert_eq!(p.pow(3), z(&[1, 3, 3, 1]));
        assert_eq!(z(&[3, 0, 1]).eval(&BigInt::from(2)), BigInt::from(7));
    }

    #[test]
    fn mixing_variables_is_rejected() {
        let p = ZPoly::from_i64s(&[0, 1], 'x');
        let q = ZPoly::from_i64s(&[0, 1], 'y');
        assert_eq!(p.checked_mul(&q), Err(PolyError::VariableMismatch('x', 'y')));
        assert!(p.checked_mul(&ZPoly::from_i64s(&[2], 'y')).is_ok());
    }

    #[test]
    fn shift_and_scale() {
        let p = z(&[2, 0, 1]);
        assert_eq!(p.substitute_shift(&BigInt::one()), z(&[3, 2, 1]));
        assert_eq!(p.substitute_scale(&BigInt::from(3)), z(&[2, 0, 9]));
        assert_eq!(z(&[1, 2, 3]).reversed(), z(&[3, 2, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = QPoly::from_ratios(&[(-1, 1), (0, 1), (1, 1)], 'x');
        let b = QPoly::from_ratios(&[(1, 1), (1, 1)], 'x');
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, QPoly::from_ratios(&[(-1, 1), (1, 1)], 'x'));
        assert!(r.is_zero());
        let g = a.gcd(&QPoly::from_ratios(&[(2, 1), (2, 1)], 'x'));
        assert_eq!(g, b);
        assert!(a.div_rem(&QPoly::zero_in('x')).is_err());
    }

    #[test]
    fn exact_integer_division() {
        let f = z(&[-2, 0, 2]);
        assert_eq!(f.div_exact(&z(&[1, 1])), Some(z(&[-2, 2])));
        assert_eq!(z(&[1, 0, 1]).div_exact(&z(&[0, 2])), None);
    }

    #[test]
    fn squarefree_parts() {
        // (x - 1)^2 (x + 2)^3 x
        let f = &(&z(&[-1, 1]).pow(2) * &z(&[2, 1]).pow(3)) * &z(&[0, 1]);
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts, vec![(z(&[0, 1]), 1), (z(&[-1, 1]), 2), (z(&[2, 1]), 3)]);
    }

    #[test]
    fn parse_polynomial_text() {
        let p = QPoly::parse("16384*x^8 - 8192*x^6 + 1280*x^4 - 63*x^2", 'x').unwrap();
        assert_eq!(p.primitive_integer(), z(&[0, 0, -63, 0, 1280, 0, -8192, 0, 16384]));
        assert!(QPoly::parse("1/x", 'x').is_err());
        assert_eq!(QPoly::parse("(y+1)^2/2", 'y').unwrap(), QPoly::from_ratios(&[(1, 2), (1, 1), (1, 2)], 'y'));
    }

    #[test]
    fn reciprocal_examples() {
        let v = ('x', 'y');
        let x = BiPoly::x_in(v);
        let y = BiPoly::y_in(v);
        let one = BiPoly::constant(BigRational::one(), v);
        // x*y - 1  ->  y - t
        let w = x.clone() * y.clone() - one.clone();
        let r = w.reciprocal_transform().unwrap();
        assert_eq!(r, y.clone() - x.clone());
        // (x^2 + 1) y + x  ->  (1 + t^2) y + t
        let w2 = (x.clone() * x.clone() + one.clone()) * y.clone() + x.clone();
        let r2 = w2.reciprocal_transform().unwrap();
        assert_eq!(r2, (one + x.clone() * x.clone()) * y + x);
        assert!(BiPoly::zero_in(v).reciprocal_transform().is_err());
    }

    #[test]
    fn content_primitive_sign_convention() {
        let p = QPoly::from_ratios(&[(1, 2), (-3, 4)], 'x');
        let (c, prim) = p.content_primitive();
        assert_eq!(prim, z(&[-2, 3]));
        assert_eq!(c, BigRational::new((-1).into(), 4.into()));
        assert!(QPoly::zero_in('x').content_primitive().0.is_zero());
    }
}
