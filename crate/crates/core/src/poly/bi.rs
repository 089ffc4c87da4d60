use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PolyError, QPoly, UniPoly};
use crate::scalar::FromInteger;

/// Sparse bivariate polynomial over the rationals. Keys are `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
    vars: (char, char),
}

impl BiPoly {
    pub fn zero_in(vars: (char, char)) -> Self {
        BiPoly { terms: BTreeMap::new(), vars }
    }

    pub fn constant(c: BigRational, vars: (char, char)) -> Self {
        let mut p = Self::zero_in(vars);
        p.add_term(0, 0, c);
        p
    }

    pub fn term(c: BigRational, i: u32, j: u32, vars: (char, char)) -> Self {
        let mut p = Self::zero_in(vars);
        p.add_term(i, j, c);
        p
    }

    /// First variable.
    pub fn x_in(vars: (char, char)) -> Self {
        Self::term(BigRational::one(), 1, 0, vars)
    }

    /// Second variable.
    pub fn y_in(vars: (char, char)) -> Self {
        Self::term(BigRational::one(), 0, 1, vars)
    }

    pub fn vars(&self) -> (char, char) {
        self.vars
    }

    pub fn with_vars(mut self, vars: (char, char)) -> Self {
        self.vars = vars;
        self
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    fn merged_vars(&self, other: &Self) -> (char, char) {
        if self.is_constant() {
            other.vars
        } else {
            self.vars
        }
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .sum()
    }

    /// Fixes the first variable, leaving a polynomial in the second.
    pub fn specialize_x(&self, x: &BigRational) -> QPoly {
        let mut out = vec![BigRational::zero(); self.degree_y().map_or(0, |d| d as usize + 1)];
        for (&(i, j), c) in &self.terms {
            out[j as usize] += c * num_traits::pow(x.clone(), i as usize);
        }
        UniPoly::new(out, self.vars.1)
    }

    /// Fixes the second variable.
    pub fn specialize_y(&self, y: &BigRational) -> QPoly {
        let mut out = vec![BigRational::zero(); self.degree_x().map_or(0, |d| d as usize + 1)];
        for (&(i, j), c) in &self.terms {
            out[i as usize] += c * num_traits::pow(y.clone(), j as usize);
        }
        UniPoly::new(out, self.vars.0)
    }

    /// Coefficients in the second variable, each a polynomial in the first.
    pub fn as_poly_in_y(&self) -> Vec<QPoly> {
        let dy = self.degree_y().map_or(0, |d| d as usize + 1);
        let dx = self.degree_x().map_or(0, |d| d as usize + 1);
        let mut out = vec![vec![BigRational::zero(); dx]; dy];
        for (&(i, j), c) in &self.terms {
            out[j as usize][i as usize] = c.clone();
        }
        out.into_iter().map(|v| UniPoly::new(v, self.vars.0)).collect()
    }

    /// Builds from `sum_j a_j(x) y^j`.
    pub fn from_poly_in_y(coeffs: &[QPoly], vars: (char, char)) -> Self {
        let mut p = Self::zero_in(vars);
        for (j, a) in coeffs.iter().enumerate() {
            for (i, c) in a.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// Flattens a polynomial in `y` whose coefficients are polynomials in `x`.
    pub fn from_nested(p: &UniPoly<QPoly>, x_var: char) -> Self {
        Self::from_poly_in_y(p.coeffs(), (x_var, p.var()))
    }

    /// Embeds a polynomial in the first variable.
    pub fn from_univariate_x(p: &QPoly, vars: (char, char)) -> Self {
        let mut out = Self::zero_in(vars);
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    /// `x <- 1/t`, cleared by the least power of `t`, then made integral and primitive.
    ///
    /// The result keeps the variable names; the first one now stands for `t`.
    pub fn reciprocal_transform(&self) -> Result<BiPoly, PolyError> {
        if self.terms.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        let d = self.degree_x().unwrap_or(0);
        let mut flipped = Self::zero_in(self.vars);
        for (&(i, j), c) in &self.terms {
            flipped.add_term(d - i, j, c.clone());
        }
        let out = flipped;
        Ok(out.primitive())
    }

    /// Integral primitive associate with positive leading term in `(deg_y, deg_x)` order.
    pub fn primitive(&self) -> BiPoly {
        if self.terms.is_empty() {
            return self.clone();
        }
        let den = crate::scalar::lcm_denominators(self.terms.values());
        let num = crate::scalar::gcd_numerators(self.terms.values());
        let mut scale = BigRational::new(den, num);
        let lead = self
            .terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(_, c)| c.clone())
            .unwrap();
        if lead < BigRational::zero() {
            scale = -scale;
        }
        let mut out = Self::zero_in(self.vars);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c * &scale);
        }
        out
    }

    /// True if `other = c * t^k * self` for a nonzero rational `c` and integer `k`.
    pub fn is_associate(&self, other: &BiPoly) -> bool {
        let a = self.normalized_shift();
        let b = other.normalized_shift();
        a.primitive().terms == b.primitive().terms
    }

    fn normalized_shift(&self) -> BiPoly {
        let m = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let mut out = Self::zero_in(self.vars);
        for (&(i, j), c) in &self.terms {
            out.add_term(i - m, j, c.clone());
        }
        out
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        Self::zero_in(('a', 'b'))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::constant(BigRational::one(), ('a', 'b'))
    }
}

impl FromInteger for BiPoly {
    fn from_integer(n: BigInt) -> Self {
        Self::constant(BigRational::from_integer(n), ('a', 'b'))
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: Self) -> Self {
        let vars = self.merged_vars(&rhs);
        let mut out = self.with_vars(vars);
        for ((i, j), c) in rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> Self {
        BiPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(), vars: self.vars }
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero_in(self.merged_vars(&rhs));
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let mono = super::text::monomial_text(&[(self.vars.0, i), (self.vars.1, j)]);
            super::text::write_term(f, first, c, &mono)?;
            first = false;
        }
        Ok(())
    }
}
