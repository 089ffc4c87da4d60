use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldError, RealInterval};
use crate::scalar::{rational_sqrt, rational_to_f64, FromInteger};

type Q = BigRational;

/// Real quadratic tower `Q = K_0 ⊂ K_1 ⊂ … ⊂ K_L`, `K_{j+1} = K_j(sqrt(d_j))`.
///
/// Radicand `d_j` is stored as its coordinate vector in `K_j` (length `2^j`).
/// Every stored radicand is positive and not a square in its level.
#[derive(Clone)]
pub struct QuadraticTower {
    levels: Arc<Vec<Vec<Q>>>,
}

/// Element of a [`QuadraticTower`] as `2^L` rational coordinates.
///
/// Coordinate `i` multiplies `prod_{bit j of i} sqrt(d_j)`.
#[derive(Clone)]
pub struct TowerElement {
    tower: QuadraticTower,
    coords: Vec<Q>,
}

/// Outcome of adjoining a square root.
#[derive(Clone, Debug)]
pub struct SqrtAdjunction {
    /// Tower containing the root: the input tower or a one-level extension.
    pub tower: QuadraticTower,
    /// The nonnegative square root.
    pub root: TowerElement,
    pub extended: bool,
}

impl QuadraticTower {
    /// The rationals.
    pub fn rationals() -> Self {
        QuadraticTower { levels: Arc::new(Vec::new()) }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Radicand `d_j` as an element of the prefix tower `K_j`.
    pub fn radicand(&self, j: usize) -> TowerElement {
        TowerElement { tower: self.prefix(j), coords: self.levels[j].clone() }
    }

    pub fn prefix(&self, depth: usize) -> QuadraticTower {
        if depth == self.depth() {
            return self.clone();
        }
        QuadraticTower { levels: Arc::new(self.levels[..depth].to_vec()) }
    }

    pub fn is_prefix_of(&self, other: &QuadraticTower) -> bool {
        if Arc::ptr_eq(&self.levels, &other.levels) {
            return true;
        }
        self.depth() <= other.depth() && self.levels[..] == other.levels[..self.depth()]
    }

    pub fn same_as(&self, other: &QuadraticTower) -> bool {
        self.depth() == other.depth() && self.is_prefix_of(other)
    }

    pub(crate) fn levels(&self) -> &[Vec<Q>] {
        &self.levels
    }

    fn push(&self, radicand: Vec<Q>) -> QuadraticTower {
        let mut v = (*self.levels).clone();
        v.push(radicand);
        QuadraticTower { levels: Arc::new(v) }
    }

    pub fn zero(&self) -> TowerElement {
        TowerElement { tower: self.clone(), coords: vec![Q::zero(); 1 << self.depth()] }
    }

    /// Embeds a rational.
    pub fn element(&self, q: Q) -> TowerElement {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    /// The generator `sqrt(d_{depth-1})` of the top level.
    pub fn generator(&self) -> Option<TowerElement> {
        let l = self.depth().checked_sub(1)?;
        let mut e = self.zero();
        e.coords[1 << l] = Q::one();
        Some(e)
    }

    /// Square root of `c`, reusing the tower when `c` is already a square in it.
    pub fn adjoin_sqrt(&self, c: &TowerElement) -> Result<SqrtAdjunction, FieldError> {
        let c = c.coerce_into(self);
        match c.sign() {
            s if s < 0 => return Err(FieldError::NegativeRadicand(c.to_compact_string())),
            0 => {
                return Ok(SqrtAdjunction { tower: c.tower.clone(), root: c.tower.zero(), extended: false });
            }
            _ => {}
        }
        if let Some(w) = c.is_square() {
            let root = if w.sign() < 0 { -w } else { w };
            return Ok(SqrtAdjunction { tower: c.tower.clone(), root, extended: false });
        }
        let tower = c.tower.push(c.coords.clone());
        let root = tower.generator().unwrap();
        Ok(SqrtAdjunction { tower, root, extended: true })
    }
}

impl fmt::Debug for QuadraticTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower[")?;
        for j in 0..self.depth() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.radicand(j).to_compact_string())?;
        }
        write!(f, "]")
    }
}

// Slice kernels. `levels[j]` is the radicand of level `j + 1` over `K_j`.

fn split(x: &[Q]) -> (&[Q], &[Q]) {
    x.split_at(x.len() / 2)
}

fn depth_of(x: &[Q]) -> usize {
    x.len().trailing_zeros() as usize
}

fn is_zero_slice(x: &[Q]) -> bool {
    x.iter().all(|c| c.is_zero())
}

fn add_slices(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub_slices(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn scale_slice(x: &[Q], c: &Q) -> Vec<Q> {
    x.iter().map(|a| a * c).collect()
}

fn concat(a: Vec<Q>, b: Vec<Q>) -> Vec<Q> {
    let mut v = a;
    v.extend(b);
    v
}

fn mul_rec(x: &[Q], y: &[Q], levels: &[Vec<Q>]) -> Vec<Q> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    if is_zero_slice(x) || is_zero_slice(y) {
        return vec![Q::zero(); x.len()];
    }
    let l = depth_of(x) - 1;
    let (a1, b1) = split(x);
    let (a2, b2) = split(y);
    let b1z = is_zero_slice(b1);
    let b2z = is_zero_slice(b2);
    if b1z && b2z {
        return concat(mul_rec(a1, a2, levels), vec![Q::zero(); a1.len()]);
    }
    if b1z {
        return concat(mul_rec(a1, a2, levels), mul_rec(a1, b2, levels));
    }
    if b2z {
        return concat(mul_rec(a1, a2, levels), mul_rec(b1, a2, levels));
    }
    let d = &levels[l];
    let bb = mul_rec(b1, b2, levels);
    let lo = add_slices(&mul_rec(a1, a2, levels), &mul_rec(&bb, d, levels));
    let hi = add_slices(&mul_rec(a1, b2, levels), &mul_rec(a2, b1, levels));
    concat(lo, hi)
}

fn inv_rec(x: &[Q], levels: &[Vec<Q>]) -> Option<Vec<Q>> {
    if x.len() == 1 {
        return if x[0].is_zero() { None } else { Some(vec![x[0].recip()]) };
    }
    let l = depth_of(x) - 1;
    let (a, b) = split(x);
    if is_zero_slice(b) {
        return Some(concat(inv_rec(a, levels)?, vec![Q::zero(); a.len()]));
    }
    let d = &levels[l];
    let norm = sub_slices(&mul_rec(a, a, levels), &mul_rec(&mul_rec(b, b, levels), d, levels));
    let ni = inv_rec(&norm, levels)?;
    let lo = mul_rec(a, &ni, levels);
    let hi: Vec<Q> = mul_rec(b, &ni, levels).into_iter().map(|c| -c).collect();
    Some(concat(lo, hi))
}

fn sqrt_rec(x: &[Q], levels: &[Vec<Q>]) -> Option<Vec<Q>> {
    if x.len() == 1 {
        return rational_sqrt(&x[0]).map(|r| vec![r]);
    }
    let l = depth_of(x) - 1;
    let (a, b) = split(x);
    let half = a.len();
    let d = &levels[l];
    if is_zero_slice(b) {
        if let Some(r) = sqrt_rec(a, levels) {
            return Some(concat(r, vec![Q::zero(); half]));
        }
        let di = inv_rec(d, levels)?;
        let r = sqrt_rec(&mul_rec(a, &di, levels), levels)?;
        return Some(concat(vec![Q::zero(); half], r));
    }
    // (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 = (a ± sqrt(a^2 - b^2 d)) / 2,  v = b / (2u).
    let norm = sub_slices(&mul_rec(a, a, levels), &mul_rec(&mul_rec(b, b, levels), d, levels));
    let n = sqrt_rec(&norm, levels)?;
    let half_q = Q::new(BigInt::one(), BigInt::from(2));
    for s in [n.clone(), n.iter().map(|c| -c).collect()] {
        let u2 = scale_slice(&add_slices(a, &s), &half_q);
        if is_zero_slice(&u2) {
            continue;
        }
        if let Some(u) = sqrt_rec(&u2, levels) {
            let two_u = scale_slice(&u, &Q::from_integer(2.into()));
            let v = mul_rec(b, &inv_rec(&two_u, levels)?, levels);
            return Some(concat(u, v));
        }
    }
    None
}

fn enclose_rec(x: &[Q], levels: &[Vec<Q>], bits: u32) -> RealInterval {
    if x.len() == 1 {
        return RealInterval::point(x[0].clone());
    }
    let l = depth_of(x) - 1;
    let (a, b) = split(x);
    let ai = enclose_rec(a, levels, bits);
    if is_zero_slice(b) {
        return ai;
    }
    let bi = enclose_rec(b, levels, bits);
    let di = enclose_rec(&levels[l], levels, bits + 2);
    ai.add(&bi.mul(&di.sqrt(bits + 2)))
}

fn exact_sign_rec(x: &[Q], levels: &[Vec<Q>]) -> i8 {
    if x.len() == 1 {
        return sign_q(&x[0]);
    }
    let l = depth_of(x) - 1;
    let (a, b) = split(x);
    let sa = exact_sign_rec(a, levels);
    let sb = exact_sign_rec(b, levels);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    let norm = sub_slices(&mul_rec(a, a, levels), &mul_rec(&mul_rec(b, b, levels), &levels[l], levels));
    sa * exact_sign_rec(&norm, levels)
}

fn sign_q(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn pad(coords: &[Q], depth: usize) -> Vec<Q> {
    let mut v = coords.to_vec();
    v.resize(1 << depth, Q::zero());
    v
}

impl TowerElement {
    pub fn from_rational(q: Q) -> Self {
        QuadraticTower::rationals().element(q)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Q::from_integer(n.into()))
    }

    pub fn tower(&self) -> &QuadraticTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Builds an element from raw coordinates (length `2^depth`).
    pub fn from_coords(tower: &QuadraticTower, coords: Vec<Q>) -> Result<Self, FieldError> {
        if coords.len() != 1 << tower.depth() {
            return Err(FieldError::InvalidTower(format!(
                "expected {} coordinates, got {}",
                1 << tower.depth(),
                coords.len()
            )));
        }
        Ok(TowerElement { tower: tower.clone(), coords })
    }

    pub fn is_zero_element(&self) -> bool {
        is_zero_slice(&self.coords)
    }

    /// Smallest level `j` with the element in `K_j`.
    pub fn level(&self) -> usize {
        match self.coords.iter().rposition(|c| !c.is_zero()) {
            None | Some(0) => 0,
            Some(i) => usize::BITS as usize - i.leading_zeros() as usize,
        }
    }

    /// The rational value, if the element lies in the base field.
    pub fn as_rational(&self) -> Option<Q> {
        (self.level() == 0).then(|| self.coords[0].clone())
    }

    /// Restricts to the smallest prefix tower containing the element.
    pub fn reduced(&self) -> TowerElement {
        let l = self.level();
        TowerElement { tower: self.tower.prefix(l), coords: self.coords[..1 << l].to_vec() }
    }

    /// Same value in `target`, which must extend (or be extendable to contain) this tower.
    pub fn coerce_into(&self, target: &QuadraticTower) -> TowerElement {
        if self.tower.is_prefix_of(target) {
            return TowerElement { tower: target.clone(), coords: pad(&self.coords, target.depth()) };
        }
        let r = self.reduced();
        if r.tower.is_prefix_of(target) {
            return TowerElement { tower: target.clone(), coords: pad(&r.coords, target.depth()) };
        }
        embed(&r, target)
    }

    fn unify(&self, other: &Self) -> (QuadraticTower, Vec<Q>, Vec<Q>) {
        if self.tower.is_prefix_of(&other.tower) {
            let d = other.tower.depth();
            return (other.tower.clone(), pad(&self.coords, d), other.coords.clone());
        }
        if other.tower.is_prefix_of(&self.tower) {
            let d = self.tower.depth();
            return (self.tower.clone(), self.coords.clone(), pad(&other.coords, d));
        }
        let (a, b) = (self.reduced(), other.reduced());
        if a.tower.is_prefix_of(&b.tower) || b.tower.is_prefix_of(&a.tower) {
            return a.unify(&b);
        }
        let b2 = embed(&b, &a.tower);
        let d = b2.tower.depth();
        (b2.tower.clone(), pad(&a.coords, d), b2.coords)
    }

    pub fn checked_inv(&self) -> Result<TowerElement, FieldError> {
        inv_rec(&self.coords, self.tower.levels())
            .map(|coords| TowerElement { tower: self.tower.clone(), coords })
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn checked_div(&self, other: &Self) -> Result<TowerElement, FieldError> {
        let (t, _, b) = self.unify(other);
        let inv = TowerElement { tower: t, coords: b }.checked_inv()?;
        Ok(self * &inv)
    }

    /// A square root inside the current tower, if one exists.
    pub fn is_square(&self) -> Option<TowerElement> {
        sqrt_rec(&self.coords, self.tower.levels())
            .map(|coords| TowerElement { tower: self.tower.clone(), coords })
    }

    /// Nonnegative square root, extending the tower if needed.
    pub fn sqrt(&self) -> Result<TowerElement, FieldError> {
        Ok(self.tower.adjoin_sqrt(self)?.root)
    }

    /// Conjugate over the previous level (`sqrt(d_top) -> -sqrt(d_top)`).
    pub fn conjugate_top(&self) -> TowerElement {
        let mut c = self.coords.clone();
        let half = c.len() / 2;
        if half > 0 {
            for v in &mut c[half..] {
                *v = -v.clone();
            }
        }
        TowerElement { tower: self.tower.clone(), coords: c }
    }

    pub fn pow(&self, e: u32) -> TowerElement {
        let mut acc = self.tower.element(Q::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Enclosure whose square-root roundings use `bits` fractional bits.
    pub fn enclose(&self, bits: u32) -> RealInterval {
        enclose_rec(&self.coords, self.tower.levels(), bits)
    }

    /// Exact sign, by refining enclosures until zero is excluded.
    pub fn sign(&self) -> i8 {
        if self.is_zero_element() {
            return 0;
        }
        let mut bits = 32;
        loop {
            if let Some(s) = self.enclose(bits).sign() {
                return s;
            }
            bits *= 2;
        }
    }

    /// Exact sign by the recursive norm rule, without approximation.
    pub fn sign_by_norms(&self) -> i8 {
        exact_sign_rec(&self.coords, self.tower.levels())
    }

    pub fn abs(&self) -> TowerElement {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Enclosure narrower than `2^-bits` around the value.
    pub fn approximate(&self, bits: u32) -> RealInterval {
        let mut b = bits + 8;
        loop {
            let iv = self.enclose(b);
            let target = Q::new(BigInt::one(), BigInt::one() << bits as usize);
            if iv.width() <= target {
                return iv;
            }
            b *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return rational_to_f64(&q);
        }
        let mag = self.enclose(16).hi.abs();
        let extra = (mag.numer().bits() as i64 - mag.denom().bits() as i64).max(0) as u32;
        rational_to_f64(&self.approximate(64 + extra).midpoint())
    }

    pub fn compare(&self, other: &Self) -> std::cmp::Ordering {
        match (self - other).sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }
}

/// Maps `x` into an extension of `target` by adjoining images of its generators.
fn embed(x: &TowerElement, target: &QuadraticTower) -> TowerElement {
    let mut tower = target.clone();
    let mut images: Vec<TowerElement> = Vec::new();
    for j in 0..x.tower.depth() {
        let d = evaluate(&x.tower.levels()[j], &images, &tower);
        let adj = tower.adjoin_sqrt(&d).expect("radicands of a real tower are positive");
        tower = adj.tower;
        images.push(adj.root);
    }
    evaluate(&x.coords, &images, &tower).coerce_into(&tower)
}

fn evaluate(coords: &[Q], images: &[TowerElement], tower: &QuadraticTower) -> TowerElement {
    if coords.len() == 1 {
        return tower.element(coords[0].clone());
    }
    let l = depth_of(coords) - 1;
    let (a, b) = split(coords);
    let ea = evaluate(a, images, tower);
    if is_zero_slice(b) {
        return ea;
    }
    let eb = evaluate(b, images, tower);
    &ea + &(&eb * &images[l])
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        let (_, a, b) = self.unify(other);
        a == b
    }
}

impl Eq for TowerElement {}

impl PartialOrd for TowerElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact_string())
    }
}

impl<'a> Add<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &'a TowerElement) -> TowerElement {
        let (tower, a, b) = self.unify(rhs);
        TowerElement { tower, coords: add_slices(&a, &b) }
    }
}

impl<'a> Sub<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn sub(self, rhs: &'a TowerElement) -> TowerElement {
        let (tower, a, b) = self.unify(rhs);
        TowerElement { tower, coords: sub_slices(&a, &b) }
    }
}

impl<'a> Mul<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &'a TowerElement) -> TowerElement {
        let (tower, a, b) = self.unify(rhs);
        let coords = mul_rec(&a, &b, tower.levels());
        TowerElement { tower, coords }
    }
}

impl<'a> Div<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn div(self, rhs: &'a TowerElement) -> TowerElement {
        self.checked_div(rhs).expect("division by zero in a quadratic tower")
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl $tr for TowerElement {
            type Output = TowerElement;
            fn $m(self, rhs: TowerElement) -> TowerElement {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);
owned_op!(Div, div);

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement { tower: self.tower, coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

impl Zero for TowerElement {
    fn zero() -> Self {
        Self::from_rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_element()
    }
}

impl One for TowerElement {
    fn one() -> Self {
        Self::from_rational(Q::one())
    }
}

impl FromInteger for TowerElement {
    fn from_integer(n: BigInt) -> Self {
        Self::from_rational(Q::from_integer(n))
    }
}

impl From<Q> for TowerElement {
    fn from(q: Q) -> Self {
        Self::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> TowerElement {
        TowerElement::from_i64(n)
    }

    fn sqrt(x: &TowerElement) -> TowerElement {
        x.sqrt().unwrap()
    }

    #[test]
    fn sqrt_two_extends() {
        let t = QuadraticTower::rationals();
        let adj = t.adjoin_sqrt(&q(2)).unwrap();
        assert!(adj.extended);
        assert_eq!(adj.tower.depth(), 1);
        assert_eq!(&adj.root * &adj.root, q(2));
    }

    #[test]
    fn square_in_tower_reuses_it() {
        // 3 + 2 sqrt 2 = (1 + sqrt 2)^2
        let s2 = sqrt(&q(2));
        let c = &q(3) + &(&q(2) * &s2);
        let adj = s2.tower().adjoin_sqrt(&c).unwrap();
        assert!(!adj.extended);
        assert_eq!(adj.root, &q(1) + &s2);
    }

    #[test]
    fn nested_square_detection() {
        // sqrt(2 + sqrt 2) is not in Q(sqrt 2); its square is.
        let s2 = sqrt(&q(2));
        let r = sqrt(&(&q(2) + &s2));
        assert_eq!(r.tower().depth(), 2);
        assert_eq!(&r * &r, &q(2) + &s2);
        // 2 * 3 = 6 is a square times sqrt 2 sqrt 3
        let s3 = sqrt(&q(3));
        let s6 = &s2 * &s3;
        assert_eq!(s6.tower().depth(), 2);
        let direct = s6.tower().adjoin_sqrt(&q(6)).unwrap();
        assert!(!direct.extended);
        assert_eq!(direct.root, s6);
    }

    #[test]
    fn sqrt_of_d_times_square() {
        let s5 = sqrt(&q(5));
        let x = &q(20) * &TowerElement::one();
        let adj = s5.tower().adjoin_sqrt(&x).unwrap();
        assert!(!adj.extended);
        assert_eq!(adj.root, &q(2) * &s5);
    }

    #[test]
    fn negative_radicand_is_rejected() {
        let err = QuadraticTower::rationals().adjoin_sqrt(&q(-1)).unwrap_err();
        assert!(matches!(err, FieldError::NegativeRadicand(_)));
        let s2 = sqrt(&q(2));
        assert!((&q(1) - &s2).sqrt().is_err());
    }

    #[test]
    fn inverse_and_division() {
        let s2 = sqrt(&q(2));
        let x = &q(1) + &s2;
        let inv = x.checked_inv().unwrap();
        assert_eq!(&x * &inv, q(1));
        assert_eq!(inv, &s2 - &q(1));
        assert!(TowerElement::zero().checked_inv().is_err());
    }

    #[test]
    fn signs_of_near_cancellations() {
        let s2 = sqrt(&q(2));
        // 99/70 > sqrt 2 > 140/99
        let a = &TowerElement::from(Q::new(99.into(), 70.into())) - &s2;
        let b = &TowerElement::from(Q::new(140.into(), 99.into())) - &s2;
        assert_eq!(a.sign(), 1);
        assert_eq!(b.sign(), -1);
        assert_eq!(a.sign_by_norms(), 1);
        assert_eq!(b.sign_by_norms(), -1);
    }

    #[test]
    fn independent_towers_merge() {
        let s2 = sqrt(&q(2));
        let s3 = sqrt(&q(3));
        let sum = &s2 + &s3;
        assert_eq!(sum.tower().depth(), 2);
        let sq = &sum * &sum;
        assert_eq!(sq, &q(5) + &(&q(2) * &(&s2 * &s3)));
        assert!((sum.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-15);
        // sqrt 8 built in its own tower equals 2 sqrt 2
        let s8 = sqrt(&q(8));
        assert_eq!(s8, &q(2) * &s2);
        let s6 = sqrt(&q(6));
        assert_eq!(s6, &s2 * &s3);
    }

    #[test]
    fn level_and_reduction() {
        let s3 = sqrt(&q(3));
        let s5 = sqrt(&q(5));
        let x = &(&s3 * &s5) - &(&s3 * &s5) + q(7);
        assert_eq!(x.level(), 0);
        assert_eq!(x.as_rational(), Some(Q::from_integer(7.into())));
        assert_eq!((&s3 + &s5).level(), 2);
    }
}
