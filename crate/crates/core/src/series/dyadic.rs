use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::SeriesError;
use crate::fields::TowerElement;
use crate::poly::QPoly;
use crate::scalar::rational_to_f64;

/// Truncated series `sum_{j >= start} c_j x^(j / 2^depth)` known for indices `< prec`.
///
/// `coeffs[0]` is nonzero unless the series is zero through `prec`, in which case
/// `coeffs` is empty and `start == prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicSeries {
    depth: u32,
    start: i64,
    coeffs: Vec<TowerElement>,
    prec: i64,
}

/// Behavior of a series as `x -> 0+`.
#[derive(Clone, Debug, PartialEq)]
pub enum Limit {
    Value(TowerElement),
    Zero,
    PlusInfinity,
    MinusInfinity,
}

impl DyadicSeries {
    /// Builds from raw data and strips leading zeros.
    pub fn new(depth: u32, start: i64, coeffs: Vec<TowerElement>) -> Self {
        let prec = start + coeffs.len() as i64;
        let mut s = DyadicSeries { depth, start, coeffs, prec };
        s.normalize();
        s
    }

    /// Zero known through index `prec` on grid `depth`.
    pub fn zero_through(depth: u32, prec: i64) -> Self {
        DyadicSeries { depth, start: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(c: TowerElement, terms: usize) -> Self {
        let mut coeffs = vec![TowerElement::zero(); terms.max(1)];
        coeffs[0] = c;
        Self::new(0, 0, coeffs)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Index of the leading coefficient.
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Number of known coefficients from the leading one.
    pub fn relative_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    /// Coefficient at index `j` (zero outside the stored range).
    pub fn coeff(&self, j: i64) -> TowerElement {
        if j < self.start || j >= self.prec {
            return TowerElement::zero();
        }
        self.coeffs[(j - self.start) as usize].clone()
    }

    pub fn is_zero_through(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&TowerElement> {
        self.coeffs.first()
    }

    /// Exponent of the leading term, `start / 2^depth`.
    pub fn leading_exponent(&self) -> BigRational {
        dyadic(self.start, self.depth)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(BigRational, TowerElement)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_element())
            .map(|(i, c)| (dyadic(self.start + i as i64, self.depth), c.clone()))
            .collect()
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero_element());
        match lead {
            None => {
                self.coeffs.clear();
                self.start = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.start += i as i64;
            }
        }
        self.coarsen();
    }

    /// Lowers the grid depth while every stored index stays integral.
    fn coarsen(&mut self) {
        while self.depth > 0 && !self.coeffs.is_empty() && self.start % 2 == 0 {
            let odd_nonzero = self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero_element());
            if odd_nonzero {
                break;
            }
            if self.coeffs.len() % 2 == 1 {
                // The next odd slot is unknown, so the last even one cannot be kept.
                if self.coeffs.len() == 1 {
                    break;
                }
                self.coeffs.pop();
            }
            self.coeffs =self.coeffs.iter().step_by(2).cloned().collect();
            self.start /= 2;
            self.prec = self.start + self.coeffs.len() as i64;
            self.depth -= 1;
        }
    }

    /// Same series on grid `depth` (at least the current one).
    pub fn regrid(&self, depth: u32) -> Self {
        assert!(depth >= self.depth);
        let f = 1i64 << (depth - self.depth);
        if self.coeffs.is_empty() {
            return Self::zero_through(depth, self.prec * f);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * f as usize);
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone());
            if i + 1 < self.coeffs.len() {
                coeffs.extend(std::iter::repeat_n(TowerElement::zero(), f as usize - 1));
            }
        }
        // Indices strictly between the last known coefficient and the old precision are also known.
        coeffs.extend(std::iter::repeat_n(TowerElement::zero(), f as usize - 1));
        DyadicSeries { depth, start: self.start * f, coeffs, prec: self.prec * f }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let d = a.depth.max(b.depth);
        (a.regrid(d), b.regrid(d))
    }

    /// Keeps at most `n` coefficients past the leading one.
    pub fn truncate(&self, n: usize) -> Self {
        let mut s = self.clone();
        if s.coeffs.len() > n {
            s.coeffs.truncate(n);
            s.prec = s.start + n as i64;
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let prec = a.prec.min(b.prec);
        let lo = a.start.min(b.start).min(prec);
        let coeffs = (lo..prec).map(|j| &a.coeff(j) + &b.coeff(j)).collect();
        let mut s = DyadicSeries { depth: a.depth, start: lo, coeffs, prec };
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        DyadicSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &TowerElement) -> Self {
        let mut s = DyadicSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect(), ..self.clone() };
        s.normalize();
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let start = a.start + b.start;
        let n = a.coeffs.len().min(b.coeffs.len());
        if n == 0 {
            let prec = (a.prec + b.start).min(b.prec + a.start);
            return Self::zero_through(a.depth, prec);
        }
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = TowerElement::zero();
            for i in 0..=k {
                acc = &acc + &(&a.coeffs[i] * &b.coeffs[k - i]);
            }
            coeffs.push(acc);
        }
        let mut s = DyadicSeries { depth: a.depth, start, coeffs, prec: start + n as i64 };
        s.normalize();
        s
    }

    /// Multiplicative inverse; fails when the series is zero through its precision.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let lead = self.leading().ok_or(SeriesError::InsufficientOrder)?.clone();
        let li = lead.checked_inv()?;
        let a: Vec<TowerElement> = self.coeffs.iter().map(|c| c * &li).collect();
        let n = a.len();
        let mut e = vec![TowerElement::one()];
        for j in 1..n {
            let mut acc = TowerElement::zero();
            for i in 1..=j {
                acc = &acc + &(&a[i] * &e[j - i]);
            }
            e.push(-acc);
        }
        let coeffs = e.iter().map(|c| c * &li).collect();
        let mut s = DyadicSeries { depth: self.depth, start: -self.start, coeffs, prec: -self.start + n as i64 };
        s.normalize();
        Ok(s)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn powi(&self, e: i32) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let n = self.coeffs.len().max(1);
        let mut acc = DyadicSeries::constant(TowerElement::one(), n);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Square root with positive leading coefficient.
    ///
    /// An even leading index stays on the same grid; an odd one moves to the next finer grid.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if self.coeffs.is_empty() {
            return Ok(Self::zero_through(self.depth + 1, self.prec));
        }
        let lead = &self.coeffs[0];
        let sign = lead.sign();
        if sign < 0 {
            return Err(SeriesError::NegativeLeadingCoefficient(lead.to_compact_string()));
        }
        let li = lead.checked_inv()?;
        let a: Vec<TowerElement> = self.coeffs.iter().map(|c| c * &li).collect();
        let n = a.len();
        let half = TowerElement::from(BigRational::new(BigInt::one(), BigInt::from(2)));
        let mut b = vec![TowerElement::one()];
        for j in 1..n {
            // 2 b_j + sum_{t=1}^{j-1} b_t b_{j-t} = a_j
            let mut acc = a[j].clone();
            for t in 1..j {
                acc = &acc - &(&b[t] * &b[j - t]);
            }
            b.push(&acc * &half);
        }
        let root = lead.sqrt()?;
        let mut coeffs = Vec::with_capacity(2 * n);
        for (i, c) in b.iter().enumerate() {
            coeffs.push(c * &root);
            if i + 1 < n {
                coeffs.push(TowerElement::zero());
            }
        }
        coeffs.push(TowerElement::zero());
        let start = self.start;
        let mut s = DyadicSeries { depth: self.depth + 1, start, prec: start + coeffs.len() as i64, coeffs };
        s.normalize();
        Ok(s)
    }

    /// `lim_{x -> 0+}` read off the leading term.
    pub fn limit_at_zero_plus(&self) -> Result<Limit, SeriesError> {
        let lead = self.leading().ok_or(SeriesError::InsufficientOrder)?;
        Ok(match self.start {
            t if t < 0 => {
                if lead.sign() > 0 {
                    Limit::PlusInfinity
                } else {
                    Limit::MinusInfinity
                }
            }
            0 => Limit::Value(lead.clone()),
            _ => Limit::Zero,
        })
    }

    /// Partial sum at a positive point.
    pub fn partial_sum_f64(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_element())
            .map(|(i, c)| c.to_f64() * r.powf(exponent_f64(self.start + i as i64, self.depth)))
            .sum()
    }

    /// Size of the first omitted term scale, `r^(prec / 2^depth)`.
    pub fn truncation_scale(&self, r: f64) -> f64 {
        r.powf(exponent_f64(self.prec, self.depth))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            depth: self.depth,
            start: self.start,
            prec: self.prec,
            leading_exponent: self.leading_exponent().to_string(),
            terms: self
                .terms()
                .into_iter()
                .map(|(e, c)| TermJson { exponent: e.to_string(), coeff: c.reduced(), approx: c.to_f64() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub exponent: String,
    pub coeff: TowerElement,
    pub approx: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesJson {
    pub depth: u32,
    pub start: i64,
    pub prec: i64,
    pub leading_exponent: String,
    pub terms: Vec<TermJson>,
}

fn dyadic(j: i64, k: u32) -> BigRational {
    BigRational::new(BigInt::from(j), BigInt::one() << k as usize)
}

fn exponent_f64(j: i64, k: u32) -> f64 {
    let e = dyadic(j, k);
    e.to_f64().unwrap_or_else(|| rational_to_f64(&e))
}

/// Laurent expansion of `num/den` at zero with `terms` coefficients from the leading one.
pub fn series_from_ratfunc(num: &QPoly, den: &QPoly, terms: usize) -> Result<DyadicSeries, SeriesError> {
    let n0 = den.valuation().ok_or_else(|| SeriesError::ZeroDenominator(den.to_string()))?;
    let Some(m0) = num.valuation() else {
        return Ok(DyadicSeries::zero_through(0, terms as i64));
    };
    let h: Vec<BigRational> = num.coeffs()[m0..].to_vec();
    let g: Vec<BigRational> = den.coeffs()[n0..].to_vec();
    let g0 = g[0].clone();
    let mut c: Vec<BigRational> = Vec::with_capacity(terms);
    for j in 0..terms {
        let mut acc = h.get(j).cloned().unwrap_or_else(BigRational::zero);
        for i in 1..=j.min(g.len() - 1) {
            acc -= &g[i] * &c[j - i];
        }
        c.push(acc / &g0);
    }
    let start = m0 as i64 - n0 as i64;
    Ok(DyadicSeries::new(0, start, c.into_iter().map(TowerElement::from).collect()))
}

impl fmt::Display for DyadicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "O(x^{})", self.leading_exponent());
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            let text = c.to_compact_string();
            match (i, text.strip_prefix('-')) {
                (0, _) => write!(f, "{}", text)?,
                (_, Some(rest)) => write!(f, " - {}", rest)?,
                (_, None) => write!(f, " + {}", text)?,
            }
            write!(f, "*x^({})", e)?;
        }
        write!(f, " + O(x^({}))", dyadic(self.prec, self.depth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn te(n: i64, d: i64) -> TowerElement {
        TowerElement::from(q(n, d))
    }

    fn binom_half(j: usize) -> BigRational {
        let mut c = BigRational::one();
        for i in 0..j {
            c = c * (q(1, 2) - BigRational::from_integer((i as i64).into())) / BigRational::from_integer(((i + 1) as i64).into());
        }
        c
    }

    #[test]
    fn sqrt_one_plus_x_matches_binomial() {
        let s = series_from_ratfunc(&QPoly::from_ratios(&[(1, 1), (1, 1)], 'x'), &QPoly::constant(q(1, 1), 'x'), 20).unwrap();
        let r = s.sqrt().unwrap();
        assert_eq!(r.depth(), 0);
        assert_eq!(r.start(), 0);
        for j in 0..=16 {
            assert_eq!(r.coeff(j as i64), TowerElement::from(binom_half(j)), "j = {}", j);
        }
        assert_eq!(r.coeff(2), te(-1, 8));
    }

    #[test]
    fn odd_leading_index_refines_grid() {
        let x = series_from_ratfunc(&QPoly::x('x'), &QPoly::constant(q(1, 1), 'x'), 8).unwrap();
        let r = x.sqrt().unwrap();
        assert_eq!(r.depth(), 1);
        assert_eq!(r.start(), 1);
        assert_eq!(r.leading_exponent(), q(1, 2));
    }

    #[test]
    fn inverse_round_trip() {
        let s = DyadicSeries::new(0, -1, vec![te(2, 1), te(1, 1), te(-3, 1), te(0, 1), te(5, 7)]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.start(), 1);
        let p = s.mul(&inv);
        assert_eq!(p.start(), 0);
        assert_eq!(p.coeff(0), te(1, 1));
        for j in 1..p.prec() {
            assert!(p.coeff(j).is_zero_element());
        }
    }

    #[test]
    fn zero_series_has_no_inverse() {
        assert!(matches!(DyadicSeries::zero_through(0, 5).inverse(), Err(SeriesError::InsufficientOrder)));
    }

    #[test]
    fn negative_leading_coefficient_has_no_root() {
        let s = DyadicSeries::new(0, 0, vec![te(-1, 1), te(1, 1)]);
        assert!(matches!(s.sqrt(), Err(SeriesError::NegativeLeadingCoefficient(_))));
    }

    #[test]
    fn mixed_grids_add() {
        let a = DyadicSeries::new(1, 1, vec![te(1, 1), te(0, 1), te(1, 1), te(0, 1)]);
        let b = DyadicSeries::new(0, 0, vec![te(1, 1), te(1, 1)]);
        let s = a.add(&b);
        assert_eq!(s.depth(), 1);
        assert_eq!(s.start(), 0);
        assert_eq!(s.coeff(1), te(1, 1));
        assert_eq!(s.coeff(2), te(1, 1));
        assert_eq!(s.coeff(3), te(1, 1));
    }

    #[test]
    fn limits() {
        let s = DyadicSeries::new(0, -2, vec![te(-3, 1)]);
        assert_eq!(s.limit_at_zero_plus().unwrap(), Limit::MinusInfinity);
        let s = DyadicSeries::new(0, 0, vec![te(3, 1)]);
        assert_eq!(s.limit_at_zero_plus().unwrap(), Limit::Value(te(3, 1)));
        let s = DyadicSeries::new(1, 1, vec![te(3, 1)]);
        assert_eq!(s.limit_at_zero_plus().unwrap(), Limit::Zero);
    }
}
