use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::PolyError;
use crate::scalar::{FromInteger, Ring};

/// Dense univariate polynomial, lowest degree first, with a variable tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
    var: char,
}

impl<T: Ring> UniPoly<T> {
    pub fn new(coeffs: Vec<T>, var: char) -> Self {
        let mut p = UniPoly { coeffs, var };
        p.trim();
        p
    }

    pub fn zero_in(var: char) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn constant(c: T, var: char) -> Self {
        Self::new(vec![c], var)
    }

    /// `c * var^k`.
    pub fn monomial(c: T, k: usize, var: char) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, var)
    }

    /// The variable itself.
    pub fn x(var: char) -> Self {
        Self::monomial(T::one(), 1, var)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `var^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check_vars(&self, other: &Self) -> Result<char, PolyError> {
        if self.var == other.var || other.is_constant() {
            Ok(self.var)
        } else if self.is_constant() {
            Ok(other.var)
        } else {
            Err(PolyError::VariableMismatch(self.var, other.var))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.check_vars(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Self::new(coeffs, var))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.check_vars(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Ok(Self::new(coeffs, var))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.check_vars(other)?;
        if self.is_zero_poly() || other.is_zero_poly() {
            return Ok(Self::zero_in(var));
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.clone() * b.clone();
                let slot = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = slot + prod;
            }
        }
        Ok(Self::new(out, var))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.var)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(T::one(), self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluation into an algebra over the coefficient ring.
    pub fn eval_with<U, F>(&self, x: &U, lift: F) -> U
    where
        U: Ring,
        F: Fn(&T) -> U,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, c| acc * x.clone() + lift(c))
    }

    /// `p(q(x))`, result in the variable of `q`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero_in(q.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone(), q.var);
        }
        acc.with_var(q.var)
    }

    /// `p(x + c)`.
    pub fn substitute_shift(&self, c: &T) -> Self {
        // Repeated synthetic division (Taylor shift).
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone() * c.clone();
                let s = std::mem::replace(&mut a[j], T::zero());
                a[j] = s + t;
            }
        }
        Self::new(a, self.var)
    }

    /// `p(c * x)`.
    pub fn substitute_scale(&self, c: &T) -> Self {
        let mut pw = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Self::new(out, self.var)
    }

    /// `p(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k > 0);
        let mut out = vec![T::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a.clone();
        }
        Self::new(out, self.var)
    }

    /// Inverse of [`inflate`](Self::inflate) when every exponent is a multiple of `k`.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        assert!(k > 0);
        if self.coeffs.iter().enumerate().any(|(i, c)| i % k != 0 && !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().step_by(k).cloned().collect(), self.var))
    }

    /// Divides by `var^k`, `None` if that is not exact.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect(), self.var))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero_poly() {
            return self.clone();
        }
        let mut out = vec![T::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Self::new(out, self.var)
    }

    /// Coefficient-wise map into another ring.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Reverses the coefficient list (`x^deg p(1/x)`).
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c, self.var)
    }
}

impl<T: Ring + FromPrimitive> UniPoly<T> {
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_usize(i).expect("index fits the ring"))
            .collect();
        Self::new(coeffs, self.var)
    }
}

impl<T: Ring> UniPoly<T>
where
    T: std::ops::Div<Output = T>,
{
    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dl = d.leading().ok_or(PolyError::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero_in(self.var), self.clone()));
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() / dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = c.clone() * dj.clone();
                let s = std::mem::replace(&mut r[i + j], T::zero());
                r[i + j] = s - t;
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q, self.var), Self::new(r, self.var)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect(), self.var)
            }
            None => self.clone(),
        }
    }
}

impl<T: Ring> Zero for UniPoly<T> {
    fn zero() -> Self {
        Self::zero_in('x')
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for UniPoly<T> {
    fn one() -> Self {
        Self::constant(T::one(), 'x')
    }
}

impl<T: Ring + FromInteger> FromInteger for UniPoly<T> {
    fn from_integer(n: BigInt) -> Self {
        Self::constant(T::from_integer(n), 'x')
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<T: Ring> $tr for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $m(self, rhs: Self) -> Self {
                self.$checked(&rhs).expect("polynomial variables differ")
            }
        }
        impl<'a, T: Ring> $tr<&'a UniPoly<T>> for &'a UniPoly<T> {
            type Output = UniPoly<T>;
            fn $m(self, rhs: &'a UniPoly<T>) -> UniPoly<T> {
                self.$checked(rhs).expect("polynomial variables differ")
            }
        }
    };
}

bin_op!(Add, add, checked_add);
bin_op!(Sub, sub, checked_sub);
bin_op!(Mul, mul, checked_mul);

impl<T: Ring> Neg for UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> Self {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), var: self.var }
    }
}

impl<T: Ring + fmt::Debug> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({:?} in {})", self.coeffs, self.var)
    }
}

// Integer and rational specifics.

impl UniPoly<BigInt> {
    pub fn from_i64s(coeffs: &[i64], var: char) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), var)
    }

    pub fn to_rational(&self) -> UniPoly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero_poly() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.map(|a| a / &c)
    }

    /// Exact division over the integers, `None` if the quotient is not integral.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dl = d.leading()?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if self.is_zero_poly() {
            return Some(self.clone());
        }
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let (c, rem) = r[i + dd].div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q, self.var))
    }

    /// Sum of squares of the coefficients.
    pub fn norm2_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl UniPoly<BigRational> {
    pub fn from_ratios(coeffs: &[(i64, i64)], var: char) -> Self {
        Self::new(
            coeffs.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect(),
            var,
        )
    }

    /// `(content, primitive)` with integral primitive part and positive leading coefficient.
    ///
    /// ```
    /// use cyclogon::QPoly;
    /// let p = QPoly::from_ratios(&[(-2, 3), (0, 1), (4, 9)], 'x');
    /// let (c, prim) = p.content_primitive();
    /// assert_eq!(c.to_string(), "2/9");
    /// assert_eq!(prim.to_string(), "2*x^2 - 3");
    /// ```
    pub fn content_primitive(&self) -> (BigRational, UniPoly<BigInt>) {
        if self.is_zero_poly() {
            return (BigRational::zero(), UniPoly::zero_in(self.var));
        }
        let den = crate::scalar::lcm_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let zp = UniPoly::new(ints, self.var);
        let mut g = zp.content();
        if zp.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        let prim = zp.map(|a| a / &g);
        (BigRational::new(g, den), prim)
    }

    /// Integral primitive associate.
    pub fn primitive_integer(&self) -> UniPoly<BigInt> {
        self.content_primitive().1
    }

    /// Monic gcd over the rationals via primitive remainder sequences.
    pub fn gcd(&self, other: &Self) -> Self {
        let a = self.primitive_integer();
        let b = other.primitive_integer();
        primitive_gcd(&a, &b).to_rational().monic()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// Gcd of integer polynomials (primitive, positive leading coefficient).
pub fn primitive_gcd(a: &UniPoly<BigInt>, b: &UniPoly<BigInt>) -> UniPoly<BigInt> {
    let var = a.var();
    let mut a = a.primitive();
    let mut b = b.primitive();
    if a.is_zero_poly() {
        return b;
    }
    if b.is_zero_poly() {
        return a;
    }
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero_poly() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r.primitive();
    }
    a.primitive().with_var(var)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
pub fn pseudo_rem(a: &UniPoly<BigInt>, b: &UniPoly<BigInt>) -> UniPoly<BigInt> {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let mut r = a.coeffs().to_vec();
    while r.len() > db && !r.is_empty() {
        let n = r.len() - 1;
        let lr = r[n].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            r[n - db + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    UniPoly::new(r, a.var())
}

/// Squarefree decomposition `p = c * prod a_i^i` over the integers.
/// Returns `(a_i, i)` pairs with nonconstant primitive `a_i`.
pub fn squarefree_decomposition(p: &UniPoly<BigInt>) -> Vec<(UniPoly<BigInt>, usize)> {
    let f = p.primitive();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    // Yun's algorithm over Q on primitive integer representatives.
    let fq = f.to_rational();
    let d = fq.derivative();
    let a = fq.gcd(&d);
    let (mut b, _) = fq.div_rem(&a).expect("nonzero gcd");
    let (c0, _) = d.div_rem(&a).expect("nonzero gcd");
    let mut c = &c0 - &b.derivative();
    let mut i = 1;
    loop {
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let g = b.gcd(&c);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.primitive_integer(), i));
        }
        let (nb, _) = b.div_rem(&g).unwrap();
        let (nc, _) = c.div_rem(&g).unwrap();
        c = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    out
}
