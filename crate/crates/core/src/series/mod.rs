//! Quadratic-radical expressions and their dyadic expansions at `0+`.

mod dyadic;
mod expr;

pub use dyadic::{series_from_ratfunc, DyadicSeries, Limit, SeriesJson, TermJson};
pub use expr::QuadExpr;

use serde::Serialize;

use crate::fields::FieldError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("cannot parse expression: {0}")]
    Parse(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("denominator `{0}` is identically zero")]
    ZeroDenominator(String),
    #[error("no right neighborhood of 0 in the domain: radicand `{0}` is negative near 0+")]
    EmptyRightNeighborhood(String),
    #[error("leading coefficient {0} is negative")]
    NegativeLeadingCoefficient(String),
    #[error("series vanishes through the requested order")]
    InsufficientOrder,
    #[error(transparent)]
    Field(#[from] FieldError),
}

const MAX_REFINEMENTS: u32 = 6;

/// Expansion of `e` at `0+` with `order` coefficients from the leading one.
///
/// A result that vanishes through the working precision is returned as
/// [`DyadicSeries::zero_through`].
///
/// ```
/// use cyclogon::series::{expand_expr, QuadExpr};
/// let e = QuadExpr::parse("sqrt(1/x) - sqrt(1/(x + x^2))").unwrap();
/// let s = expand_expr(&e, 4).unwrap();
/// assert_eq!((s.depth(), s.start()), (1, 1));
/// assert_eq!(s.coeff(1).to_string(), "1/2");
/// assert_eq!(s.coeff(3).to_string(), "-3/8");
/// ```
pub fn expand_expr(e: &QuadExpr, order: usize) -> Result<DyadicSeries, SeriesError> {
    let mut leaf = order + 4;
    let mut last = None;
    for _ in 0..MAX_REFINEMENTS {
        let s = expand(e, leaf)?;
        if !s.is_zero_through() && s.relative_order() >= order {
            return Ok(s.truncate(order));
        }
        last = Some(s);
        leaf *= 2;
    }
    let s = last.expect("at least one attempt");
    Ok(if s.is_zero_through() { s } else { s.truncate(order) })
}

fn expand(e: &QuadExpr, leaf: usize) -> Result<DyadicSeries, SeriesError> {
    use QuadExpr::*;
    if let Some(rf) = e.as_rational_function() {
        let (n, d) = rf?;
        return series_from_ratfunc(&n, &d, leaf);
    }
    Ok(match e {
        Const(c) => DyadicSeries::constant(c.clone(), leaf),
        Var => unreachable!("variables are rational functions"),
        Add(a, b) => expand(a, leaf)?.add(&expand(b, leaf)?),
        Sub(a, b) => expand(a, leaf)?.sub(&expand(b, leaf)?),
        Mul(a, b) => expand(a, leaf)?.mul(&expand(b, leaf)?),
        Div(a, b) => expand(a, leaf)?.div(&expand(b, leaf)?)?,
        Neg(a) => expand(a, leaf)?.neg(),
        Pow(a, k) => expand(a, leaf)?.powi(*k)?,
        Sqrt(a) => {
            let s = expand(a, leaf)?;
            s.sqrt().map_err(|err| match err {
                SeriesError::NegativeLeadingCoefficient(_) => SeriesError::EmptyRightNeighborhood(a.to_string()),
                other => other,
            })?
        }
    })
}

/// `lim_{x -> 0+} e`, from an expansion of the given order.
pub fn limit_at_zero_plus(e: &QuadExpr, order: usize) -> Result<Limit, SeriesError> {
    expand_expr(e, order)?.limit_at_zero_plus()
}

/// One sample of [`series_numeric_check`].
#[derive(Clone, Debug, Serialize)]
pub struct NumericSample {
    pub r: f64,
    pub direct: f64,
    pub partial_sum: f64,
    pub difference: f64,
    pub allowed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericCheck {
    pub passed: bool,
    pub samples: Vec<NumericSample>,
    pub skipped: Vec<f64>,
}

/// Compares direct evaluation with partial sums. Points outside the domain are skipped.
///
/// The allowance at `r` is `tol` plus a multiple of the first omitted term scale.
pub fn series_numeric_check(e: &QuadExpr, s: &DyadicSeries, points: &[f64], tol: f64) -> NumericCheck {
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    let bound = s.coeffs().iter().map(|c| c.to_f64().abs()).fold(1.0, f64::max);
    for &r in points {
        match e.eval_f64(r) {
            Some(direct) if direct.is_finite() => {
                let partial = s.partial_sum_f64(r);
                let allowed = tol * direct.abs().max(1.0) + 4.0 * bound * s.truncation_scale(r);
                samples.push(NumericSample { r, direct, partial_sum: partial, difference: (direct - partial).abs(), allowed });
            }
            _ => skipped.push(r),
        }
    }
    let passed = samples.iter().all(|x| x.difference <= x.allowed);
    NumericCheck { passed, samples, skipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::TowerElement;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> TowerElement {
        TowerElement::from(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn cancelling_roots() {
        let e = QuadExpr::parse("sqrt(1/x) - sqrt(1/(x + x^2))").unwrap();
        let s = expand_expr(&e, 6).unwrap();
        assert_eq!(s.depth(), 1);
        assert_eq!(s.start(), 1);
        assert_eq!(s.coeff(1), q(1, 2));
        assert_eq!(s.coeff(2), q(0, 1));
        assert_eq!(s.coeff(3), q(-3, 8));
        assert_eq!(limit_at_zero_plus(&e, 4).unwrap(), Limit::Zero);
    }

    #[test]
    fn empty_neighborhood() {
        let e = QuadExpr::parse("sqrt(-1 - x^2) + x - sqrt(-1 - x^2)").unwrap();
        assert!(matches!(expand_expr(&e, 4), Err(SeriesError::EmptyRightNeighborhood(_))));
        let e = QuadExpr::parse("sqrt(x - x^2) - sqrt(x)").unwrap();
        assert!(expand_expr(&e, 4).is_ok());
    }

    #[test]
    fn identically_zero_is_reported() {
        let e = QuadExpr::parse("sqrt(x) * sqrt(x) - x").unwrap();
        let s = expand_expr(&e, 5).unwrap();
        assert!(s.is_zero_through());
        assert!(matches!(s.limit_at_zero_plus(), Err(SeriesError::InsufficientOrder)));
    }

    #[test]
    fn irrational_limit() {
        let e = QuadExpr::parse("(sqrt(2 + x) - sqrt(2))/x").unwrap();
        match limit_at_zero_plus(&e, 4).unwrap() {
            Limit::Value(v) => assert!((v.to_f64() - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn numeric_agreement() {
        let e = QuadExpr::parse("sqrt(1 + x) / (1 - x)").unwrap();
        let s = expand_expr(&e, 12).unwrap();
        let rep = series_numeric_check(&e, &s, &[1e-2, 1e-3, 1e-4], 1e-9);
        assert!(rep.passed, "{:?}", rep.samples);
    }
}
