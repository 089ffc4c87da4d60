use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::SeriesError;
use crate::fields::TowerElement;
use crate::poly::QPoly;

/// Expression over the rationals in one variable with `+ - * /`, integer powers and square roots.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadExpr {
    Const(TowerElement),
    Var,
    Add(Box<QuadExpr>, Box<QuadExpr>),
    Sub(Box<QuadExpr>, Box<QuadExpr>),
    Mul(Box<QuadExpr>, Box<QuadExpr>),
    Div(Box<QuadExpr>, Box<QuadExpr>),
    Neg(Box<QuadExpr>),
    Pow(Box<QuadExpr>, i32),
    Sqrt(Box<QuadExpr>),
}

type RatFn = (QPoly, QPoly);

impl QuadExpr {
    pub fn parse(text: &str) -> Result<QuadExpr, SeriesError> {
        Self::parse_in(text, 'x')
    }

    /// Parses with `var` as the variable name.
    pub fn parse_in(text: &str, var: char) -> Result<QuadExpr, SeriesError> {
        let mut p = ExprParser { chars: text.chars().collect(), i: 0, var };
        let e = p.expr()?;
        p.ws();
        if p.i != p.chars.len() {
            return Err(SeriesError::Parse(format!("unexpected `{}` at position {}", p.chars[p.i], p.i)));
        }
        Ok(e)
    }

    pub fn constant(q: BigRational) -> QuadExpr {
        QuadExpr::Const(TowerElement::from_rational(q))
    }

    pub fn int(n: i64) -> QuadExpr {
        QuadExpr::constant(BigRational::from_integer(n.into()))
    }

    pub fn sqrt(e: QuadExpr) -> QuadExpr {
        QuadExpr::Sqrt(Box::new(e))
    }

    pub fn is_sqrt_free(&self) -> bool {
        use QuadExpr::*;
        match self {
            Const(c) => c.as_rational().is_some(),
            Var => true,
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.is_sqrt_free() && b.is_sqrt_free(),
            Neg(a) | Pow(a, _) => a.is_sqrt_free(),
            Sqrt(_) => false,
        }
    }

    /// Reduced `num/den` for a square-root-free expression.
    ///
    /// `None` if the expression has roots or irrational constants; an error if
    /// some denominator is the zero polynomial.
    pub fn as_rational_function(&self) -> Option<Result<RatFn, SeriesError>> {
        if !self.is_sqrt_free() {
            return None;
        }
        Some(self.ratfn())
    }

    fn ratfn(&self) -> Result<RatFn, SeriesError> {
        use QuadExpr::*;
        let one = || QPoly::constant(BigRational::one(), 'x');
        Ok(match self {
            Const(c) => (QPoly::constant(c.as_rational().unwrap(), 'x'), one()),
            Var => (QPoly::x('x'), one()),
            Add(a, b) | Sub(a, b) => {
                let (n1, d1) = a.ratfn()?;
                let (n2, d2) = b.ratfn()?;
                let l = &n1 * &d2;
                let r = &n2 * &d1;
                let n = if matches!(self, Add(..)) { &l + &r } else { &l - &r };
                reduce(n, &d1 * &d2)
            }
            Mul(a, b) => {
                let (n1, d1) = a.ratfn()?;
                let (n2, d2) = b.ratfn()?;
                reduce(&n1 * &n2, &d1 * &d2)
            }
            Div(a, b) => {
                let (n1, d1) = a.ratfn()?;
                let (n2, d2) = b.ratfn()?;
                if n2.is_zero_poly() {
                    return Err(SeriesError::ZeroDenominator(b.to_string()));
                }
                reduce(&n1 * &d2, &d1 * &n2)
            }
            Neg(a) => {
                let (n, d) = a.ratfn()?;
                (-n, d)
            }
            Pow(a, e) => {
                let (n, d) = a.ratfn()?;
                if *e >= 0 {
                    (n.pow(*e as u32), d.pow(*e as u32))
                } else {
                    if n.is_zero_poly() {
                        return Err(SeriesError::ZeroDenominator(a.to_string()));
                    }
                    (d.pow(e.unsigned_abs()), n.pow(e.unsigned_abs()))
                }
            }
            Sqrt(_) => unreachable!("checked by is_sqrt_free"),
        })
    }

    /// Exact value at a rational point; fails where a denominator vanishes or a radicand is negative.
    pub fn eval(&self, r: &BigRational) -> Result<TowerElement, SeriesError> {
        use QuadExpr::*;
        Ok(match self {
            Const(c) => c.clone(),
            Var => TowerElement::from_rational(r.clone()),
            Add(a, b) => &a.eval(r)? + &b.eval(r)?,
            Sub(a, b) => &a.eval(r)? - &b.eval(r)?,
            Mul(a, b) => &a.eval(r)? * &b.eval(r)?,
            Div(a, b) => {
                let d = b.eval(r)?;
                if d.is_zero_element() {
                    return Err(SeriesError::Domain(format!("denominator `{}` vanishes", b)));
                }
                let n = a.eval(r)?;
                n.checked_div(&d)?
            }
            Neg(a) => -a.eval(r)?,
            Pow(a, e) => {
                let v = a.eval(r)?;
                if *e >= 0 {
                    v.pow(*e as u32)
                } else {
                    if v.is_zero_element() {
                        return Err(SeriesError::Domain(format!("base `{}` vanishes", a)));
                    }
                    v.checked_inv()?.pow(e.unsigned_abs())
                }
            }
            Sqrt(a) => {
                let v = a.eval(r)?;
                if v.sign() < 0 {
                    return Err(SeriesError::Domain(format!("radicand `{}` is negative", a)));
                }
                v.sqrt()?
            }
        })
    }

    /// Floating-point value, `None` outside the domain.
    pub fn eval_f64(&self, r: f64) -> Option<f64> {
        use QuadExpr::*;
        Some(match self {
            Const(c) => c.to_f64(),
            Var => r,
            Add(a, b) => a.eval_f64(r)? + b.eval_f64(r)?,
            Sub(a, b) => a.eval_f64(r)? - b.eval_f64(r)?,
            Mul(a, b) => a.eval_f64(r)? * b.eval_f64(r)?,
            Div(a, b) => {
                let d = b.eval_f64(r)?;
                if d == 0.0 {
                    return None;
                }
                a.eval_f64(r)? / d
            }
            Neg(a) => -a.eval_f64(r)?,
            Pow(a, e) => {
                let v = a.eval_f64(r)?;
                if *e < 0 && v == 0.0 {
                    return None;
                }
                v.powi(*e)
            }
            Sqrt(a) => {
                let v = a.eval_f64(r)?;
                if v < 0.0 {
                    return None;
                }
                v.sqrt()
            }
        })
    }

    fn precedence(&self) -> u8 {
        use QuadExpr::*;
        match self {
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Neg(_) => 3,
            Pow(..) => 4,
            Const(c) if c.as_rational().is_some_and(|q| q.is_negative() || !q.is_integer()) => 2,
            Const(_) | Var | Sqrt(_) => 5,
        }
    }
}

fn reduce(n: QPoly, d: QPoly) -> RatFn {
    if n.is_zero_poly() {
        return (n, QPoly::constant(BigRational::one(), 'x'));
    }
    let g = n.gcd(&d);
    let (n, _) = n.div_rem(&g).expect("gcd is nonzero");
    let (d, _) = d.div_rem(&g).expect("gcd is nonzero");
    let l = d.leading().unwrap().clone();
    (n.scale(&l.recip()), d.scale(&l.recip()))
}

impl fmt::Display for QuadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QuadExpr::*;
        let wrap = |f: &mut fmt::Formatter<'_>, e: &QuadExpr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({})", e)
            } else {
                write!(f, "{}", e)
            }
        };
        match self {
            Const(c) => match c.as_rational() {
                Some(q) => write!(f, "{}", q),
                None => write!(f, "{}", c.to_compact_string()),
            },
            Var => write!(f, "x"),
            Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Pow(a, e) => {
                wrap(f, a, 5)?;
                if *e < 0 {
                    write!(f, "^({})", e)
                } else {
                    write!(f, "^{}", e)
                }
            }
            Sqrt(a) => write!(f, "sqrt({})", a),
        }
    }
}

struct ExprParser {
    chars: Vec<char>,
    i: usize,
    var: char,
}

impl ExprParser {
    fn ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, what: &str) -> Result<T, SeriesError> {
        Err(SeriesError::Parse(format!("{} at position {}", what, self.i)))
    }

    fn expr(&mut self) -> Result<QuadExpr, SeriesError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = QuadExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = QuadExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<QuadExpr, SeriesError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = QuadExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = QuadExpr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadExpr, SeriesError> {
        if self.eat('-') {
            return Ok(QuadExpr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QuadExpr, SeriesError> {
        let base = self.atom()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            self.ws();
            let start = self.i;
            while self.i < self.chars.len() && self.chars[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if start == self.i {
                return self.err("expected an integer exponent");
            }
            let s: String = self.chars[start..self.i].iter().collect();
            let mut e: i32 = s.parse().map_err(|_| SeriesError::Parse(format!("exponent `{}` too large", s)))?;
            if neg {
                e = -e;
            }
            if paren && !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(QuadExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QuadExpr, SeriesError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_alphabetic() => {
                let start = self.i;
                while self.i < self.chars.len() && self.chars[self.i].is_alphanumeric() {
                    self.i += 1;
                }
                let word: String = self.chars[start..self.i].iter().collect();
                if word.len() == 1 && c == self.var {
                    return Ok(QuadExpr::Var);
                }
                if word == "sqrt" {
                    if !self.eat('(') {
                        return self.err("expected `(` after sqrt");
                    }
                    let e = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    return Ok(QuadExpr::Sqrt(Box::new(e)));
                }
                self.i = start;
                self.err(&format!("unknown identifier `{}`", word))
            }
            Some(c) => self.err(&format!("unexpected `{}`", c)),
            None => self.err("unexpected end of input"),
        }
    }

    fn number(&mut self) -> Result<QuadExpr, SeriesError> {
        let start = self.i;
        while self.i < self.chars.len() && (self.chars[self.i].is_ascii_digit() || self.chars[self.i] == '.') {
            self.i += 1;
        }
        if self.i < self.chars.len() && matches!(self.chars[self.i], 'e' | 'E') {
            let save = self.i;
            self.i += 1;
            if self.i < self.chars.len() && matches!(self.chars[self.i], '+' | '-') {
                self.i += 1;
            }
            let ds = self.i;
            while self.i < self.chars.len() && self.chars[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if ds == self.i {
                self.i = save;
            }
        }
        let s: String = self.chars[start..self.i].iter().collect();
        let q = crate::scalar::parse_rational(&s).map_err(|e| SeriesError::Parse(e.to_string()))?;
        Ok(QuadExpr::constant(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_print() {
        let e = QuadExpr::parse("sqrt(1/x) - sqrt(1/(x + x^2))").unwrap();
        assert_eq!(e.to_string(), "sqrt(1/x) - sqrt(1/(x + x^2))");
        let e2 = QuadExpr::parse(&e.to_string()).unwrap();
        assert_eq!(e, e2);
        assert!(QuadExpr::parse("sqrt(x").is_err());
        assert!(QuadExpr::parse("y + 1").is_err());
        assert!(QuadExpr::parse("2 3").is_err());
        assert_eq!(QuadExpr::parse("x^(-2)").unwrap(), QuadExpr::Pow(Box::new(QuadExpr::Var), -2));
    }

    #[test]
    fn exact_evaluation() {
        let e = QuadExpr::parse("sqrt(x) * sqrt(x) + 1/x").unwrap();
        assert_eq!(e.eval(&q(2, 1)).unwrap(), TowerElement::from(q(5, 2)));
        let bad = QuadExpr::parse("1/(x - 1)").unwrap();
        assert!(matches!(bad.eval(&q(1, 1)), Err(SeriesError::Domain(_))));
        let neg = QuadExpr::parse("sqrt(x - 3)").unwrap();
        assert!(matches!(neg.eval(&q(1, 1)), Err(SeriesError::Domain(_))));
        let nested = QuadExpr::parse("sqrt(2 + sqrt(2))").unwrap();
        let v = nested.eval(&q(0, 1)).unwrap();
        assert!((v.to_f64() - (2.0 + 2f64.sqrt()).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rational_function_reduction() {
        let e = QuadExpr::parse("(x^2 - 1)/(x - 1)").unwrap();
        let (n, d) = e.as_rational_function().unwrap().unwrap();
        assert_eq!(n, QPoly::from_ratios(&[(1, 1), (1, 1)], 'x'));
        assert_eq!(d, QPoly::constant(q(1, 1), 'x'));
        assert!(QuadExpr::parse("1/(x - x)").unwrap().as_rational_function().unwrap().is_err());
        assert!(QuadExpr::parse("sqrt(x)").unwrap().as_rational_function().is_none());
    }

    #[test]
    fn float_evaluation_respects_domain() {
        let e = QuadExpr::parse("sqrt(-1 - x^2)").unwrap();
        assert_eq!(e.eval_f64(0.5), None);
        let e = QuadExpr::parse("1.5e1*x").unwrap();
        assert_eq!(e.eval_f64(2.0), Some(30.0));
    }
}
