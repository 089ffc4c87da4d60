//! Numeric existence checks and circumradius solvers.

mod real;

pub use real::{with_precision, HighPrec, Real, DEFAULT_PRECISION};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::UniPoly;
use crate::scalar::rational_to_f64;

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("no cyclic polygon with these data: {0}")]
    NonExistent(String),
    #[error("invalid polygon data: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sides,
    Distances,
}

/// A polygon given by side lengths or by distances of the sides from the center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonSpec {
    pub mode: Mode,
    #[serde(
        serialize_with = "ser_values",
        deserialize_with = "de_values"
    )]
    pub values: Vec<Q>,
}

fn ser_values<S: serde::Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

fn de_values<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
    let raw = Vec::<String>::deserialize(d)?;
    raw.iter()
        .map(|s| crate::scalar::parse_rational(s).map_err(serde::de::Error::custom))
        .collect()
}

impl PolygonSpec {
    pub fn from_lengths(values: Vec<Q>) -> Self {
        PolygonSpec { mode: Mode::Sides, values }
    }

    pub fn from_distances(values: Vec<Q>) -> Self {
        PolygonSpec { mode: Mode::Distances, values }
    }

    /// `count` copies of each value, in order.
    pub fn from_counts(mode: Mode, groups: &[(Q, usize)]) -> Self {
        let values = groups.iter().flat_map(|(v, c)| std::iter::repeat_n(v.clone(), *c)).collect();
        PolygonSpec { mode, values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `(value, count)` pairs, sorted by value.
    pub fn compressed(&self) -> Vec<(Q, usize)> {
        let mut v = self.values.clone();
        v.sort();
        let mut out: Vec<(Q, usize)> = Vec::new();
        for x in v {
            match out.last_mut() {
                Some((y, c)) if *y == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    fn validate(&self) -> Result<(), NumericError> {
        if self.order() < 3 {
            return Err(NumericError::Invalid(format!("need at least 3 values, got {}", self.order())));
        }
        match self.mode {
            Mode::Sides if self.values.iter().any(|a| !a.is_positive()) => {
                Err(NumericError::Invalid("side lengths must be positive".into()))
            }
            Mode::Distances if self.values.iter().filter(|d| d.is_negative()).count() > 1 => {
                Err(NumericError::Invalid("at most one distance may be negative".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Side mode: each side shorter than the sum of the others. Distance mode: the solver finds a radius.
pub fn exists_cyclic(spec: &PolygonSpec) -> bool {
    if spec.validate().is_err() {
        return false;
    }
    match spec.mode {
        Mode::Sides => {
            let total: Q = spec.values.iter().sum();
            spec.values.iter().all(|a| a + a < total)
        }
        Mode::Distances => circumradius_distances::<f64>(spec, &SolverConfig::default()).is_ok(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Required residual of the angle equation.
    pub tol: f64,
    /// Iterations allowed beyond the working precision.
    pub extra_steps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-12, extra_steps: 16 }
    }
}

#[derive(Clone, Debug)]
pub struct Circumradius<T> {
    pub radius: T,
    /// `|angle equation|` at the returned radius.
    pub residual: f64,
    /// False when the center lies outside the polygon.
    pub center_inside: bool,
    pub steps: usize,
}

/// Root of `f` on a sign-changing bracket: Illinois steps, bisection when they stall.
fn bisect<T: Real>(f: &dyn Fn(&T) -> T, lo: T, hi: T, cfg: &SolverConfig) -> (T, usize) {
    let two = T::from_f64(2.0);
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(&a), f(&b));
    if fa == T::zero() {
        return (a, 0);
    }
    let eps = T::from_f64(2f64.powi(-(T::precision_bits() as i32) + 4));
    // below this the function value is rounding noise
    let tiny = T::from_f64(2f64.powi(-(T::precision_bits() as i32) + 12));
    let steps = T::precision_bits() + cfg.extra_steps;
    for i in 0..steps {
        let width = (b.clone() - a.clone()).abs();
        if width <= eps.clone() * b.clone().abs() {
            return (b, i);
        }
        let secant = b.clone() - fb.clone() * (b.clone() - a.clone()) / (fb.clone() - fa.clone());
        let (x0, x1) = if a < b { (&a, &b) } else { (&b, &a) };
        // fall back to the midpoint when the secant leaves the bracket
        let c = if secant > *x0 && secant < *x1 && i % 8 != 7 {
            secant
        } else {
            (a.clone() + b.clone()) / two.clone()
        };
        let fc = f(&c);
        if fc.clone().abs() <= tiny {
            return (c, i);
        }
        if (fc < T::zero()) != (fb < T::zero()) {
            a = b;
            fa = fb;
        } else {
            fa = fa / two.clone();
        }
        b = c;
        fb = fc;
    }
    (b, steps)
}

/// Shrinks `[lo, hi]` around a double-precision guess when the sign change survives.
fn narrow<T: Real>(f: &dyn Fn(&T) -> T, lo: T, hi: T, guess: Option<f64>) -> (T, T) {
    let Some(g) = guess.filter(|_| T::precision_bits() > 53) else {
        return (lo, hi);
    };
    for rel in [1e-10, 1e-7] {
        let a = T::from_f64(g * (1.0 - rel));
        let b = T::from_f64(g * (1.0 + rel));
        if a >= lo && b <= hi && (f(&a) < T::zero()) != (f(&b) < T::zero()) {
            return (a, b);
        }
    }
    (lo, hi)
}

/// Loose settings for the double-precision seed.
const SEED: SolverConfig = SolverConfig { tol: 1e-6, extra_steps: 16 };

/// Grows `hi` by doubling until `pred(hi)`.
fn expand_until<T: Real>(start: T, pred: impl Fn(&T) -> bool) -> Option<T> {
    let mut hi = start;
    for _ in 0..200 {
        hi = hi.clone() + hi.clone();
        if pred(&hi) {
            return Some(hi);
        }
    }
    None
}

fn residual_ok(res: f64, cfg: &SolverConfig) -> bool {
    res.is_finite() && res < cfg.tol.max(1e-300)
}

/// Circumradius from side lengths, allowing the center outside the polygon.
pub fn circumradius_sides<T: Real>(spec: &PolygonSpec, cfg: &SolverConfig) -> Result<Circumradius<T>, NumericError> {
    if spec.mode != Mode::Sides {
        return Err(NumericError::Invalid("expected side lengths".into()));
    }
    if !exists_cyclic(spec) {
        return Err(NumericError::NonExistent("some side is at least the sum of the others".into()));
    }
    let guess = (T::precision_bits() > 53)
        .then(|| circumradius_sides::<f64>(spec, &SEED).ok().map(|c| c.radius))
        .flatten();
    let sides: Vec<T> = spec.values.iter().map(T::from_rational).collect();
    let imax = (0..sides.len())
        .max_by(|&i, &j| spec.values[i].cmp(&spec.values[j]))
        .expect("nonempty");
    let two = T::from_f64(2.0);
    let amax = sides[imax].clone();
    let half_angle = |a: &T, r: &T| (a.clone() / (two.clone() * r.clone())).asin();
    let others = |r: &T| {
        sides
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != imax)
            .fold(T::zero(), |acc, (_, a)| acc + half_angle(a, r))
    };
    let inside = |r: &T| others(r) + half_angle(&amax, r) - T::pi();
    let outside = |r: &T| others(r) - half_angle(&amax, r);
    let lo = amax.clone() / two.clone();
    let f0 = inside(&lo);
    let (radius, steps, center_inside, residual) = if f0 >= T::zero() {
        let hi = expand_until(lo.clone(), |r| inside(r) < T::zero())
            .ok_or_else(|| NumericError::NonExistent("no sign change".into()))?;
        let (lo, hi) = narrow(&inside, lo, hi, guess);
        let (r, k) = if f0 == T::zero() { (lo.clone(), 0) } else { bisect(&inside, lo, hi, cfg) };
        let res = inside(&r).abs().to_f64();
        (r, k, true, res)
    } else {
        let hi = expand_until(lo.clone(), |r| outside(r) > T::zero())
            .ok_or_else(|| NumericError::NonExistent("no sign change in the reflex equation".into()))?;
        let (lo, hi) = narrow(&outside, lo, hi, guess);
        let (r, k) = bisect(&outside, lo, hi, cfg);
        let res = outside(&r).abs().to_f64();
        (r, k, false, res)
    };
    if !residual_ok(residual, cfg) {
        return Err(NumericError::NonExistent(format!("residual {} above tolerance", residual)));
    }
    Ok(Circumradius { radius, residual, center_inside, steps })
}

/// Circumradius from the distances of the sides to the center.
///
/// Solves `sum arccos(d_i / r) = pi`; a negative distance marks the side whose
/// chord separates the center from the rest of the polygon.
pub fn circumradius_distances<T: Real>(spec: &PolygonSpec, cfg: &SolverConfig) -> Result<Circumradius<T>, NumericError> {
    if spec.mode != Mode::Distances {
        return Err(NumericError::Invalid("expected distances".into()));
    }
    spec.validate()?;
    let ds: Vec<T> = spec.values.iter().map(T::from_rational).collect();
    let g = |r: &T| ds.iter().fold(T::zero(), |acc, d| acc + (d.clone() / r.clone()).acos()) - T::pi();
    let dmax = spec.values.iter().map(|d| d.abs()).max().expect("nonempty");
    if dmax.is_zero() {
        return Err(NumericError::NonExistent("all distances are zero".into()));
    }
    let lo = T::from_rational(&dmax);
    let g0 = g(&lo);
    let any_negative = spec.values.iter().any(|d| d.is_negative());
    let (lo, hi) = if !any_negative {
        // increasing in r with limit n pi / 2 - pi > 0
        if g0 > T::zero() {
            return Err(NumericError::NonExistent("angles exceed pi already at the largest distance".into()));
        }
        let hi = expand_until(lo.clone(), |r| g(r) > T::zero())
            .ok_or_else(|| NumericError::NonExistent("no sign change".into()))?;
        (lo, hi)
    } else {
        // scan a geometric grid for the first sign change
        let mut prev = lo.clone();
        let mut pv = g0.clone();
        let step = T::from_f64(1.0625);
        let mut found = None;
        for _ in 0..2000 {
            let next = prev.clone() * step.clone();
            let nv = g(&next);
            if (pv <= T::zero()) != (nv <= T::zero()) {
                found = Some((prev.clone(), next));
                break;
            }
            prev = next;
            pv = nv;
        }
        found.ok_or_else(|| NumericError::NonExistent("no radius balances the angles".into()))?
    };
    let guess = (T::precision_bits() > 53)
        .then(|| circumradius_distances::<f64>(spec, &SEED).ok().map(|c| c.radius))
        .flatten();
    let (lo, hi) = narrow(&g, lo, hi, guess);
    let (radius, steps) = bisect(&g, lo, hi, cfg);
    let residual = g(&radius).abs().to_f64();
    if !residual_ok(residual, cfg) {
        return Err(NumericError::NonExistent(format!("residual {} above tolerance", residual)));
    }
    let center_inside = !any_negative;
    Ok(Circumradius { radius, residual, center_inside, steps })
}

/// Evaluates an exact polynomial at a real point.
pub fn eval_poly<T: Real>(p: &UniPoly<Q>, x: &T) -> T {
    p.coeffs().iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + T::from_rational(c))
}

/// Circumradius of the regular `n`-gon with unit sides.
pub fn regular_radius<T: Real>(n: usize) -> T {
    let two = T::from_f64(2.0);
    T::one() / (two * (T::pi() / T::from_f64(n as f64)).sin())
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitRow {
    pub eps: f64,
    pub radius: f64,
    pub difference: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitDemo {
    pub n: usize,
    pub l: usize,
    pub limit_radius: f64,
    pub rows: Vec<LimitRow>,
    /// Differences strictly decrease along the sequence.
    pub monotone: bool,
}

/// Radii of `P(1^l, eps^(n-l))` against the regular `l`-gon radius.
pub fn limit_demo<T: Real>(n: usize, l: usize, eps: &[Q], cfg: &SolverConfig) -> Result<LimitDemo, NumericError> {
    if l < 3 || l >= n {
        return Err(NumericError::Invalid(format!("need 3 <= l < n, got l = {}, n = {}", l, n)));
    }
    let target = regular_radius::<T>(l);
    let mut rows = Vec::new();
    for e in eps {
        let spec = PolygonSpec::from_counts(Mode::Sides, &[(Q::from_integer(1.into()), l), (e.clone(), n - l)]);
        let r = circumradius_sides::<T>(&spec, cfg)?;
        let diff = (r.radius.clone() - target.clone()).abs();
        rows.push(LimitRow { eps: rational_to_f64(e), radius: r.radius.to_f64(), difference: diff.to_f64() });
    }
    let monotone = rows.windows(2).all(|w| w[1].difference < w[0].difference);
    Ok(LimitDemo { n, l, limit_radius: target.to_f64(), rows, monotone })
}

/// `1/100, 1/200, ...` down to at most `1/10^6`.
pub fn halving_sequence() -> Vec<Q> {
    let mut out = Vec::new();
    let mut e = Q::new(1.into(), 100.into());
    let stop = Q::new(1.into(), 1_000_000.into());
    while e >= stop {
        out.push(e.clone());
        e /= Q::from_integer(2.into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPoly;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn sides(v: &[i64]) -> PolygonSpec {
        PolygonSpec::from_lengths(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn existence() {
        assert!(exists_cyclic(&sides(&[1, 1, 1])));
        assert!(!exists_cyclic(&sides(&[5, 1, 1, 1])));
        assert!(!exists_cyclic(&sides(&[3, 1, 1, 1])));
        assert!(exists_cyclic(&sides(&[1, 2, 2, 2, 2])));
        assert!(!exists_cyclic(&sides(&[1, 1])));
    }

    #[test]
    fn right_triangle_and_hexagon() {
        let r = circumradius_sides::<f64>(&sides(&[3, 4, 5]), &SolverConfig::default()).unwrap();
        assert!((r.radius - 2.5).abs() < 1e-12);
        let r = circumradius_sides::<HighPrec>(&sides(&[1; 6]), &SolverConfig::default()).unwrap();
        assert!((r.radius.to_f64() - 1.0).abs() < 1e-15);
        assert!(r.residual < 1e-60);
    }

    #[test]
    fn obtuse_triangle_puts_center_outside() {
        let r = circumradius_sides::<f64>(&sides(&[2, 2, 3]), &SolverConfig::default()).unwrap();
        assert!(!r.center_inside);
        // abc / (4 area), area from Heron
        let s: f64 = 3.5;
        let area = (s * (s - 2.0) * (s - 2.0) * (s - 3.0)).sqrt();
        assert!((r.radius - 12.0 / (4.0 * area)).abs() < 1e-12);
    }

    #[test]
    fn distance_instances() {
        let cfg = SolverConfig::default();
        let r = circumradius_distances::<f64>(&PolygonSpec::from_distances(vec![q(1); 4]), &cfg).unwrap();
        assert!((r.radius - 2f64.sqrt()).abs() < 1e-12);
        let r = circumradius_distances::<HighPrec>(&PolygonSpec::from_distances(vec![q(1), q(2), q(3)]), &cfg).unwrap();
        let p = QPoly::from_ratios(&[(-1, 1), (0, 1), (14, 1), (12, 1)], 'u');
        let u = HighPrec::one() / r.radius;
        assert!(eval_poly(&p, &u).abs().to_f64() < 1e-40);
    }

    #[test]
    fn negative_distance_is_the_reflex_side() {
        // obtuse triangle 2,2,3: far side distance is negative
        let rr = 12.0 / (4.0 * (3.5f64 * 1.5 * 1.5 * 0.5).sqrt());
        let d = |a: f64| (rr * rr - a * a / 4.0).sqrt();
        let vals = [d(2.0), d(2.0), -d(3.0)];
        let spec = PolygonSpec::from_distances(vals.iter().map(|&x| Q::from_float(x).unwrap()).collect());
        let r = circumradius_distances::<f64>(&spec, &SolverConfig { tol: 1e-9, ..Default::default() }).unwrap();
        assert!((r.radius - rr).abs() < 1e-9);
    }

    #[test]
    fn scale_equivariance() {
        let cfg = SolverConfig::default();
        let base = circumradius_sides::<f64>(&sides(&[1, 2, 2, 2, 2]), &cfg).unwrap().radius;
        let s2 = circumradius_sides::<f64>(&sides(&[2, 4, 4, 4, 4]), &cfg).unwrap().radius;
        assert!((s2 - 2.0 * base).abs() < 1e-12);
    }

    #[test]
    fn limit_towards_regular() {
        let eps = [Q::new(1.into(), 100.into()), Q::new(1.into(), 1000.into()), Q::new(1.into(), 10000.into())];
        let demo = limit_demo::<f64>(6, 5, &eps, &SolverConfig::default()).unwrap();
        assert!(demo.monotone);
        assert!(demo.rows[2].difference < 1e-3);
        assert_eq!(halving_sequence().len(), 14);
    }
}
