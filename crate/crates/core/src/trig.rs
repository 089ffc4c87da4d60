//! Multiple-angle polynomials and the polynomial families attached to cyclic polygons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::fields::{FieldError, TowerElement};
use crate::numeric::{self, PolygonSpec};
use crate::poly::{QPoly, UniPoly, ZPoly};
use crate::scalar::{FromInteger, Ring};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TrigError {
    #[error("{0}")]
    Parity(String),
    #[error("{0}")]
    Parameter(String),
    #[error("no prime choice for n = {0}")]
    Range(u32),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("no admissible root: {0}")]
    NoAdmissibleRoot(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

fn one_minus_x2<T: Ring + FromInteger>(var: char) -> UniPoly<T> {
    UniPoly::new(vec![T::one(), T::zero(), -T::one()], var)
}

fn sign_pow(e: u32) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `s_k` with `s_k(sin g) = sin(k g)`, for odd `k`.
pub fn sin_multiple_poly(k: u32) -> Result<ZPoly, TrigError> {
    if k.is_multiple_of(2) {
        return Err(TrigError::Parity(format!("sine multiple-angle polynomial needs odd k, got {}", k)));
    }
    let base = one_minus_x2::<BigInt>('x');
    let mut acc = ZPoly::zero_in('x');
    for j in (1..=k).step_by(2) {
        let c = sign_pow((j - 1) / 2) * binomial(k, j);
        let term = base.pow((k - j) / 2).shift_up(j as usize).scale(&c);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `c_k` with `c_k(sin g) = cos(k g)`, for even `k`.
pub fn cos_multiple_poly(k: u32) -> Result<ZPoly, TrigError> {
    if k % 2 == 1 {
        return Err(TrigError::Parity(format!("cosine multiple-angle polynomial needs even k, got {}", k)));
    }
    let base = one_minus_x2::<BigInt>('x');
    let mut acc = ZPoly::zero_in('x');
    for j in (0..=k).step_by(2) {
        let c = sign_pow(j / 2) * binomial(k, j);
        let term = base.pow((k - j) / 2).shift_up(j as usize).scale(&c);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `T_k` with `T_k(cos g) = cos(k g)`, any `k`.
pub fn cos_of_cos_poly(k: u32) -> ZPoly {
    let base = one_minus_x2::<BigInt>('x');
    let mut acc = ZPoly::zero_in('x');
    for j in (0..=k).step_by(2) {
        let c = sign_pow(j / 2) * binomial(k, j);
        let term = base.pow(j / 2).shift_up((k - j) as usize).scale(&c);
        acc = &acc + &term;
    }
    acc
}

fn lift<T: Ring + FromInteger>(p: &ZPoly) -> UniPoly<T> {
    p.map(|c| T::from_integer(c.clone()))
}

/// `q(c x)` with `q` integral.
fn scaled<T: Ring + FromInteger>(p: &ZPoly, c: &T) -> UniPoly<T> {
    lift::<T>(p).substitute_scale(c)
}

/// The polynomial `W_{k,m}(a, b, x)` whose root is `1/(2r)` for `P(a^k, b^m)`.
///
/// Works over any coefficient ring, so `a`, `b` may be rationals or symbols.
pub fn w_poly<T: Ring + FromInteger>(k: u32, m: u32, a: &T, b: &T) -> Result<UniPoly<T>, TrigError> {
    if k == 0 || m == 0 {
        return Err(TrigError::Parameter("k and m must be positive".into()));
    }
    let one = UniPoly::constant(T::one(), 'x');
    Ok(match (k % 2, m % 2) {
        (1, 1) => &scaled(&sin_multiple_poly(k)?, a) - &scaled(&sin_multiple_poly(m)?, b),
        (0, 0) => &scaled(&cos_multiple_poly(k)?, a) + &scaled(&cos_multiple_poly(m)?, b),
        (1, 0) => {
            let s = scaled(&sin_multiple_poly(k)?, a);
            let c = scaled(&cos_multiple_poly(m)?, b);
            &(&(&s * &s) + &(&c * &c)) - &one
        }
        _ => {
            let c = scaled(&cos_multiple_poly(k)?, a);
            let s = scaled(&sin_multiple_poly(m)?, b);
            &(&(&c * &c) + &(&s * &s)) - &one
        }
    })
}

fn check_even_family(n: u32, p: u32) -> Result<(), TrigError> {
    if n % 2 == 1 || n < 8 {
        return Err(TrigError::Parameter(format!("n = {} must be even and at least 8", n)));
    }
    if p.is_multiple_of(2) || !is_prime(p as u64) || 2 * p <= n || p >= n {
        return Err(TrigError::Parameter(format!("p = {} must be an odd prime in (n/2, n)", p)));
    }
    Ok(())
}

/// Which combination of the two sine sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FVariant {
    Difference,
    Sum,
}

/// `s_p(a x) ∓ s_{n-p}(b x)` for the sides `P(a^p, b^(n-p))`.
pub fn f_p_poly(n: u32, p: u32, a: &BigInt, b: &BigInt, v: FVariant) -> Result<ZPoly, TrigError> {
    check_even_family(n, p)?;
    let s1 = sin_multiple_poly(p)?.substitute_scale(a);
    let s2 = sin_multiple_poly(n - p)?.substitute_scale(b);
    Ok(match v {
        FVariant::Difference => &s1 - &s2,
        FVariant::Sum => &s1 + &s2,
    })
}

/// `T_p(a x) + T_{n-p}(b x)`; its root is `1/r` for `D(a^p, b^(n-p))`.
pub fn g_p_poly(n: u32, p: u32, a: &BigInt, b: &BigInt) -> Result<ZPoly, TrigError> {
    check_even_family(n, p)?;
    Ok(distance_two_length_poly(p, n - p, a, b))
}

/// `T_k(a x) + T_m(b x)` for `D(a^k, b^m)`, any counts.
pub fn distance_two_length_poly<T: Ring + FromInteger>(k: u32, m: u32, a: &T, b: &T) -> UniPoly<T> {
    &scaled(&cos_of_cos_poly(k), a) + &scaled(&cos_of_cos_poly(m), b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime of the form `2^m + 1` (then `m` is a power of two).
pub fn is_fermat_prime(p: u64) -> bool {
    p >= 3 && is_prime(p) && (p - 1).is_power_of_two()
}

/// Regular `n`-gon constructibility.
pub fn gauss_wantzel(n: u64) -> bool {
    if n < 3 {
        return false;
    }
    let mut m = n >> n.trailing_zeros();
    let mut d = 3;
    while d * d <= m {
        if m.is_multiple_of(d) {
            if !is_fermat_prime(d) {
                return false;
            }
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += 2;
    }
    m == 1 || is_fermat_prime(m)
}

const PRIME_TABLE: [(u32, u32, u32); 4] = [(8, 13, 7), (14, 25, 13), (26, 45, 23), (46, 85, 43)];

/// A non-Fermat prime in `(n/2, n)` for `n = 5` or `n >= 8`.
pub fn choose_prime(n: u32) -> Result<u32, TrigError> {
    if n == 5 {
        return Ok(3);
    }
    if n < 8 {
        return Err(TrigError::Range(n));
    }
    if let Some(&(_, _, p)) = PRIME_TABLE.iter().find(|(lo, hi, _)| (*lo..=*hi).contains(&n)) {
        return Ok(p);
    }
    (n / 2 + 1..n)
        .find(|&p| is_prime(p as u64) && !is_fermat_prime(p as u64))
        .ok_or(TrigError::Range(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideSelection {
    pub n: u32,
    pub p: u32,
    #[serde(serialize_with = "crate::scalar::serde_str::serialize_int")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::scalar::serde_str::serialize_int")]
    pub b: BigInt,
}

impl SideSelection {
    /// `p` copies of `a` followed by `n - p` copies of `b`.
    pub fn lengths(&self) -> Vec<Q> {
        let mut v = vec![Q::from_integer(self.a.clone()); self.p as usize];
        v.extend(vec![Q::from_integer(self.b.clone()); (self.n - self.p) as usize]);
        v
    }
}

/// Lengths `a ≡ 1`, `b ≡ 0 (mod p^2)` with `a/b` closest to one; candidates are bounded by `2p^2`.
pub fn choose_sides(n: u32, p: u32) -> Result<SideSelection, TrigError> {
    let p2 = BigInt::from(p) * BigInt::from(p);
    let bound = &p2 * 2;
    let mut best: Option<(Q, SideSelection)> = None;
    let mut a = BigInt::one();
    while a <= bound {
        let mut b = p2.clone();
        while b <= bound {
            let sel = SideSelection { n, p, a: a.clone(), b: b.clone() };
            let spec = PolygonSpec::from_lengths(sel.lengths());
            if numeric::exists_cyclic(&spec) {
                let dist = (Q::new(a.clone(), b.clone()) - Q::one()).abs();
                if best.as_ref().is_none_or(|(d, _)| dist < *d) {
                    best = Some((dist, sel));
                }
            }
            b += &p2;
        }
        a += &p2;
    }
    best.map(|(_, s)| s)
        .ok_or_else(|| TrigError::Parameter(format!("no admissible sides for n = {}, p = {}", n, p)))
}

/// `c1^2 + c2^2 + c3^2 + 2 c1 c2 c3 - 1`, vanishing when the three angles sum to `pi`.
pub fn three_angle_poly<T: Ring + FromInteger>(c1: &UniPoly<T>, c2: &UniPoly<T>, c3: &UniPoly<T>) -> UniPoly<T> {
    let two = UniPoly::constant(T::from_i64(2), c1.var());
    let one = UniPoly::constant(T::one(), c1.var());
    let s = &(&(c1 * c1) + &(c2 * c2)) + &(c3 * c3);
    let p = &(&(&two * c1) * c2) * c3;
    &(&s + &p) - &one
}

fn linear(c0: Q, c1: Q) -> QPoly {
    QPoly::new(vec![c0, c1], 'u')
}

/// Hexagon `P(a, a, b, b, c, c)`: `(h1, h2)` with `h1(u) = 0` for `u = (1/(2r))^2` and `h2(2u) = 0`.
pub fn hexagon_three_pairs_poly(a: &Q, b: &Q, c: &Q) -> (ZPoly, ZPoly) {
    let m2 = Q::from_integer((-2).into());
    let cs: Vec<QPoly> = [a, b, c].iter().map(|s| linear(Q::one(), &m2 * (*s * *s))).collect();
    let h1 = three_angle_poly(&cs[0], &cs[1], &cs[2]).primitive_integer();
    let h2 = h1.to_rational().substitute_scale(&Q::new(1.into(), 2.into())).primitive_integer();
    (h1, h2)
}

/// Triangle `D(d1, d2, d3)`: `(h, h3)` with `h(1/r) = 0` and `h3(2/r) = 0`.
pub fn d3_poly(d: &[Q; 3]) -> (ZPoly, ZPoly) {
    let cs: Vec<QPoly> = d.iter().map(|di| linear(Q::zero(), di.clone())).collect();
    let h = three_angle_poly(&cs[0], &cs[1], &cs[2]).primitive_integer();
    let h3 = h.to_rational().substitute_scale(&Q::new(1.into(), 2.into())).primitive_integer();
    (h, h3)
}

fn double_angle(d: &Q) -> QPoly {
    // cos 2a = 2 cos^2 a - 1 with cos a = d u
    QPoly::new(vec![-Q::one(), Q::zero(), Q::from_integer(2.into()) * d * d], 'u')
}

/// Pentagon `D(d1, d1, d3, d3, d5)`; root `1/r`.
pub fn d5_poly(d: &[Q; 5]) -> Result<ZPoly, TrigError> {
    if d[0] != d[1] || d[2] != d[3] {
        return Err(TrigError::Parameter("expected d1 = d2 and d3 = d4".into()));
    }
    let p = three_angle_poly(&double_angle(&d[0]), &double_angle(&d[2]), &linear(Q::zero(), d[4].clone()));
    Ok(p.primitive_integer())
}

/// Hexagon `D(d1^4, d5, d6)`: the degree-8 polynomial in `u = 1/r` and the cubic satisfied by `u^2`.
pub fn d6_poly(d: &[Q; 6]) -> Result<(ZPoly, ZPoly), TrigError> {
    if !(d[0] == d[1] && d[1] == d[2] && d[2] == d[3]) {
        return Err(TrigError::Parameter("expected d1 = d2 = d3 = d4".into()));
    }
    let c = &d[0];
    let c2 = c * c;
    let eight = Q::from_integer(8.into());
    // cos 4a = 8 cos^4 a - 8 cos^2 a + 1
    let quad = QPoly::new(vec![Q::one(), Q::zero(), -(&eight * &c2), Q::zero(), &eight * &c2 * &c2], 'u');
    let full = three_angle_poly(&quad, &linear(Q::zero(), d[4].clone()), &linear(Q::zero(), d[5].clone()));
    let octic = full.primitive_integer();
    let low = octic.valuation().unwrap_or(0);
    let reduced = octic.shift_down(low).expect("valuation divides");
    let cubic = reduced
        .deflate(2)
        .ok_or_else(|| TrigError::DegenerateInput("odd-degree terms survive".into()))?
        .primitive()
        .with_var('x');
    Ok((full.map(|q| q.clone()).primitive_integer_keep_scale(), cubic))
}

impl QPoly {
    /// The integral multiple with denominators cleared but the numerator content kept.
    fn primitive_integer_keep_scale(&self) -> ZPoly {
        let den = crate::scalar::lcm_denominators(self.coeffs().iter());
        self.map(|c| (c * Q::from_integer(den.clone())).to_integer())
    }
}

/// Quadrangle `D(d1..d4)`: coefficients `(c2, c0)` with `c2 u^2 + c0 = 0` for `u = 1/r`.
pub fn d4_radius_coeffs(d: &[Q; 4]) -> Result<(Q, Q), TrigError> {
    let c: Vec<QPoly> = d.iter().map(|di| linear(Q::zero(), di.clone())).collect();
    let sq: Vec<QPoly> = c.iter().map(|x| x * x).collect();
    let k = |n: i64| QPoly::constant(Q::from_integer(n.into()), 'u');
    let mut s4 = QPoly::zero_in('u');
    for x in &sq {
        s4 = &s4 + &(x * x);
    }
    let mut pairs = QPoly::zero_in('u');
    let mut triples = QPoly::zero_in('u');
    for j in 0..4 {
        for s in j + 1..4 {
            pairs = &pairs + &(&sq[j] * &sq[s]);
            for t in s + 1..4 {
                triples = &triples + &(&(&sq[j] * &sq[s]) * &sq[t]);
            }
        }
    }
    let prod = &(&(&c[0] * &c[1]) * &c[2]) * &c[3];
    let sum_sq = &(&(&sq[0] + &sq[1]) + &sq[2]) + &sq[3];
    let total = &(&(&s4 - &(&k(2) * &pairs)) + &(&(&k(4) * &prod) * &(&sum_sq - &k(2)))) + &(&k(4) * &triples);
    let reduced = total
        .shift_down(4)
        .ok_or_else(|| TrigError::DegenerateInput("identity has terms below u^4".into()))?;
    if reduced.coeff(1) != Q::zero() || reduced.degree().unwrap_or(0) > 2 {
        return Err(TrigError::DegenerateInput("unexpected shape of the quadrangle identity".into()));
    }
    let c2 = reduced.coeff(2);
    if c2.is_zero() {
        return Err(TrigError::DegenerateInput("c2 = 0".into()));
    }
    Ok((c2, reduced.coeff(0)))
}

/// Exact circumradius of `D(d1..d4)`.
pub fn d4_radius(d: &[Q; 4]) -> Result<TowerElement, TrigError> {
    let (c2, c0) = d4_radius_coeffs(d)?;
    let r2 = -&c2 / &c0;
    if c0.is_zero() || !r2.is_positive() {
        return Err(TrigError::NoAdmissibleRoot(format!("r^2 = -c2/c0 = {} is not positive", r2)));
    }
    Ok(TowerElement::from(r2).sqrt()?)
}

/// `cos` of the angle between the sides `a1` and `a3` in the law-of-cosines relation.
pub fn quadrangle_cos(a: &[Q; 4]) -> Result<Q, TrigError> {
    let den = Q::from_integer(2.into()) * (&a[0] * &a[2] + &a[1] * &a[3]);
    if den.is_zero() {
        return Err(TrigError::DegenerateInput("zero side lengths".into()));
    }
    Ok((&a[0] * &a[0] + &a[2] * &a[2] - &a[1] * &a[1] - &a[3] * &a[3]) / den)
}

/// Exact circumradius of a cyclic quadrangle with the given sides.
pub fn quadrangle_radius(a: &[Q; 4]) -> Result<TowerElement, TrigError> {
    let c = quadrangle_cos(a)?;
    let one_minus = Q::one() - &c * &c;
    if !one_minus.is_positive() {
        return Err(TrigError::DegenerateInput("|cos| >= 1".into()));
    }
    let diag2 = &a[0] * &a[0] + &a[2] * &a[2] - Q::from_integer(2.into()) * &a[0] * &a[2] * &c;
    let r2 = diag2 / (Q::from_integer(4.into()) * one_minus);
    Ok(TowerElement::from(r2).sqrt()?)
}

/// Exact circumradius of a triangle with the given sides.
pub fn triangle_radius(a: &[Q; 3]) -> Result<TowerElement, TrigError> {
    let s = [&a[0] + &a[1] + &a[2], -&a[0] + &a[1] + &a[2], &a[0] - &a[1] + &a[2], &a[0] + &a[1] - &a[2]];
    let heron: Q = s.iter().cloned().product();
    if !heron.is_positive() {
        return Err(TrigError::DegenerateInput("triangle inequality fails".into()));
    }
    let r2 = (&a[0] * &a[0]) * (&a[1] * &a[1]) * (&a[2] * &a[2]) / heron;
    Ok(TowerElement::from(r2).sqrt()?)
}

/// Exact `u = 1/(2r)` for the hexagon `P(a^k, b^(6-k))`.
pub fn hexagon_two_lengths_radius(k: u32, a: &Q, b: &Q) -> Result<TowerElement, TrigError> {
    if k == 0 || k >= 6 {
        return Err(TrigError::Parameter(format!("k = {} must lie in 1..=5", k)));
    }
    if a == b {
        return Ok(TowerElement::from(Q::one() / (Q::from_integer(2.into()) * a)));
    }
    let (k, a, b) = if k > 3 { (6 - k, b, a) } else { (k, a, b) };
    let w = w_poly(k, 6 - k, a, b)?;
    let low = w.valuation().unwrap_or(0);
    let z_poly = w
        .shift_down(low)
        .and_then(|p| p.deflate(2))
        .ok_or_else(|| TrigError::DegenerateInput("factor is not even".into()))?;
    let candidates = roots_deg_le_2(&z_poly)?;
    let mut lengths = vec![a.clone(); k as usize];
    lengths.extend(vec![b.clone(); 6 - k as usize]);
    let target = numeric::circumradius_sides::<f64>(&PolygonSpec::from_lengths(lengths), &numeric::SolverConfig::default())
        .map_err(|e| TrigError::NoAdmissibleRoot(e.to_string()))?;
    let u_target = 1.0 / (2.0 * target.radius);
    let mut best: Option<(f64, TowerElement)> = None;
    for z in candidates {
        if z.sign() <= 0 {
            continue;
        }
        let u = z.sqrt()?;
        let err = (u.to_f64() - u_target).abs();
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, u));
        }
    }
    match best {
        Some((err, u)) if err < 1e-9 * u_target.max(1.0) => Ok(u),
        _ => Err(TrigError::NoAdmissibleRoot("no root matches the numeric radius".into())),
    }
}

/// Real roots of a polynomial of degree at most two, as tower elements.
fn roots_deg_le_2(p: &QPoly) -> Result<Vec<TowerElement>, TrigError> {
    match p.degree() {
        Some(1) => Ok(vec![TowerElement::from(-p.coeff(0) / p.coeff(1))]),
        Some(2) => {
            let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
            let disc = &b * &b - Q::from_integer(4.into()) * &a * &c;
            if disc.is_negative() {
                return Ok(Vec::new());
            }
            let s = TowerElement::from(disc).sqrt()?;
            let two_a = TowerElement::from(Q::from_integer(2.into()) * &a);
            let mb = TowerElement::from(-b);
            Ok(vec![(&mb + &s).checked_div(&two_a)?, (&mb - &s).checked_div(&two_a)?])
        }
        _ => Err(TrigError::DegenerateInput(format!("expected degree 1 or 2, got {}", p))),
    }
}

/// Monic-free integer gcd helper for tests and callers that need it.
pub fn integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BiPoly;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c, 'x')
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn small_multiple_angle_polys() {
        assert_eq!(sin_multiple_poly(3).unwrap(), z(&[0, 3, 0, -4]));
        assert_eq!(cos_multiple_poly(2).unwrap(), z(&[1, 0, -2]));
        assert_eq!(cos_multiple_poly(4).unwrap(), z(&[1, 0, -8, 0, 8]));
        assert_eq!(cos_multiple_poly(2).unwrap().leading().unwrap(), &BigInt::from(-2));
        assert!(matches!(sin_multiple_poly(4), Err(TrigError::Parity(_))));
        assert!(matches!(cos_multiple_poly(3), Err(TrigError::Parity(_))));
        assert_eq!(cos_of_cos_poly(4), z(&[1, 0, -8, 0, 8]));
        assert_eq!(cos_of_cos_poly(3), z(&[0, -3, 0, 4]));
    }

    #[test]
    fn pentagon_polynomial() {
        let w = w_poly(1, 4, &q(1), &q(2)).unwrap();
        assert_eq!(w.primitive_integer(), z(&[0, 0, -63, 0, 1280, 0, -8192, 0, 16384]));
        assert_eq!(w.to_string(), "16384*x^8 - 8192*x^6 + 1280*x^4 - 63*x^2");
    }

    fn sym() -> (BiPoly, BiPoly) {
        let v = ('a', 'b');
        (BiPoly::x_in(v), BiPoly::y_in(v))
    }

    fn bi(terms: &[(i64, u32, u32)]) -> BiPoly {
        let mut p = BiPoly::zero_in(('a', 'b'));
        for &(c, i, j) in terms {
            p.add_term(i, j, q(c));
        }
        p
    }

    #[test]
    fn symbolic_hexagon_factors() {
        let (a, b) = sym();
        let w15 = w_poly(1, 5, &a, &b).unwrap();
        let expect15 = UniPoly::new(
            vec![BiPoly::zero(), bi(&[(1, 1, 0), (-5, 0, 1)]), BiPoly::zero(), bi(&[(20, 0, 3)]), BiPoly::zero(), bi(&[(-16, 0, 5)])],
            'x',
        );
        assert_eq!(w15, expect15);
        let w24 = w_poly(2, 4, &a, &b).unwrap();
        let expect24 = UniPoly::new(
            vec![bi(&[(2, 0, 0)]), BiPoly::zero(), bi(&[(-8, 0, 2), (-2, 2, 0)]), BiPoly::zero(), bi(&[(8, 0, 4)])],
            'x',
        );
        assert_eq!(w24, expect24);
        let w33 = w_poly(3, 3, &a, &b).unwrap();
        let expect33 = UniPoly::new(
            vec![BiPoly::zero(), bi(&[(-3, 0, 1), (3, 1, 0)]), BiPoly::zero(), bi(&[(4, 0, 3), (-4, 3, 0)])],
            'x',
        );
        assert_eq!(w33, expect33);
        assert!(w_poly(3, 3, &q(7), &q(7)).unwrap().is_zero_poly());
        assert!(!w_poly(2, 2, &q(7), &q(7)).unwrap().is_zero_poly());
    }

    #[test]
    fn prime_table() {
        assert_eq!(choose_prime(5).unwrap(), 3);
        for n in 8..=13 {
            assert_eq!(choose_prime(n).unwrap(), 7);
        }
        for n in 46..=85 {
            assert_eq!(choose_prime(n).unwrap(), 43);
        }
        for n in [3, 4, 6, 7] {
            assert!(matches!(choose_prime(n), Err(TrigError::Range(_))));
        }
        for n in 86..200 {
            let p = choose_prime(n).unwrap();
            assert!(2 * p > n && p < n && is_prime(p as u64) && !is_fermat_prime(p as u64));
        }
    }

    #[test]
    fn fermat_and_gauss() {
        assert!(is_fermat_prime(65537));
        assert!(!is_fermat_prime(7));
        assert!(!gauss_wantzel(7));
        assert!(gauss_wantzel(17));
        assert!(gauss_wantzel(15));
        assert!(!gauss_wantzel(9));
        assert!(!gauss_wantzel(25));
        assert!(gauss_wantzel(65537 * 2));
    }

    #[test]
    fn side_choice() {
        let s = choose_sides(8, 7).unwrap();
        assert_eq!((s.a.clone(), s.b.clone()), (BigInt::from(50), BigInt::from(49)));
        let s = choose_sides(12, 7).unwrap();
        assert_eq!((s.a, s.b), (BigInt::from(50), BigInt::from(49)));
    }

    #[test]
    fn f_family_congruences() {
        let (a, b) = (BigInt::from(50), BigInt::from(49));
        let f = f_p_poly(8, 7, &a, &b, FVariant::Difference).unwrap();
        assert_eq!(f.degree(), Some(7));
        assert!(f.coeff(0).is_zero());
        let p2 = BigInt::from(49);
        assert_eq!(f.coeff(1).mod_floor(&p2), BigInt::from(7));
        assert!(matches!(f_p_poly(9, 7, &a, &b, FVariant::Sum), Err(TrigError::Parameter(_))));
        assert!(matches!(f_p_poly(8, 3, &a, &b, FVariant::Sum), Err(TrigError::Parameter(_))));
    }

    #[test]
    fn g_matches_an_f_variant() {
        let (a, b) = (BigInt::from(50), BigInt::from(49));
        for n in [8u32, 10] {
            let g = g_p_poly(n, 7, &a, &b).unwrap();
            let f1 = f_p_poly(n, 7, &a, &b, FVariant::Difference).unwrap();
            let f2 = f_p_poly(n, 7, &a, &b, FVariant::Sum).unwrap();
            let ng = -g.clone();
            assert!([&g, &ng].iter().any(|x| **x == f1 || **x == f2), "n = {}", n);
        }
    }

    #[test]
    fn three_angle_instances() {
        let (h1, h2) = hexagon_three_pairs_poly(&q(1), &q(2), &q(3));
        assert_eq!(h1, ZPoly::from_i64s(&[-1, 28, -196, 144], 'u'));
        assert_eq!(h2, ZPoly::from_i64s(&[-1, 14, -49, 18], 'u'));
        let (h, h3) = d3_poly(&[q(1), q(2), q(3)]);
        assert_eq!(h, ZPoly::from_i64s(&[-1, 0, 14, 12], 'u'));
        assert_eq!(h3, ZPoly::from_i64s(&[-2, 0, 7, 3], 'u'));
        let half = QPoly::constant(Q::new(1.into(), 2.into()), 'u');
        assert!(three_angle_poly(&half, &half, &half).is_zero_poly());
    }

    #[test]
    fn d5_and_d6_instances() {
        // the reference quintic belongs to a last distance of 3
        let reference = ZPoly::new(
            ["1", "6", "-1995995", "-5988012", "498005992004", "1494006000000"].iter().map(|s| s.parse().unwrap()).collect(),
            'u',
        );
        assert_eq!(d5_poly(&[q(499), q(499), q(500), q(500), q(3)]).unwrap(), reference);
        let d5 = d5_poly(&[q(499), q(499), q(500), q(500), q(501)]).unwrap();
        let expect = ZPoly::new(
            ["1", "1002", "-1745003", "-999998004", "498005992004", "249499002000000"].iter().map(|s| s.parse().unwrap()).collect(),
            'u',
        );
        assert_eq!(d5, expect);
        let (octic, cubic) = d6_poly(&[q(1000), q(1000), q(1000), q(1000), q(999), q(1001)]).unwrap();
        assert_eq!(octic.degree(), Some(8));
        assert!(octic.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero()));
        assert_eq!(octic.coeff(0), BigInt::zero());
        assert_eq!(octic.coeff(1), BigInt::zero());
        let g = octic.content();
        assert!((&g % BigInt::from(4_000_000)).is_zero());
        let expect = ZPoly::new(
            ["-3", "16000004", "-28000004000000", "16000000000000000000"].iter().map(|s| s.parse().unwrap()).collect(),
            'x',
        );
        assert_eq!(cubic, expect);
        assert!(d6_poly(&[q(1), q(2), q(1), q(1), q(1), q(1)]).is_err());
    }

    #[test]
    fn quadrangle_formulas() {
        assert_eq!(quadrangle_cos(&[q(1), q(1), q(1), q(1)]).unwrap(), q(0));
        assert_eq!(quadrangle_cos(&[q(3), q(1), q(3), q(1)]).unwrap(), Q::new(4.into(), 5.into()));
        let r = d4_radius(&[q(1), q(1), q(1), q(1)]).unwrap();
        assert_eq!(&r * &r, TowerElement::from(q(2)));
        let (c2, c0) = d4_radius_coeffs(&[q(1), q(1), q(1), q(2)]).unwrap();
        assert_eq!((c2, c0), (q(108), q(-27)));
        let tri = triangle_radius(&[q(3), q(4), q(5)]).unwrap();
        assert_eq!(tri, TowerElement::from(Q::new(5.into(), 2.into())));
    }

    #[test]
    fn two_length_hexagons() {
        let u = hexagon_two_lengths_radius(2, &q(3), &q(3)).unwrap();
        assert_eq!(u, TowerElement::from(Q::new(1.into(), 6.into())));
        for k in 1..=5 {
            let u = hexagon_two_lengths_radius(k, &q(1), &q(2)).unwrap();
            let mut sides = vec![q(1); k as usize];
            sides.extend(vec![q(2); 6 - k as usize]);
            let r = numeric::circumradius_sides::<f64>(&PolygonSpec::from_lengths(sides), &numeric::SolverConfig::default())
                .unwrap()
                .radius;
            assert!((u.to_f64() - 1.0 / (2.0 * r)).abs() < 1e-12, "k = {}", k);
        }
    }
}
