//! Rational specialization search over a one-parameter polynomial family.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{nonconstructibility_verdict, Status, Verdict};
use crate::numeric::{self, PolygonSpec, SolverConfig};
use crate::poly::{BiPoly, QPoly, ZPoly};
use crate::scalar::serde_str;
use crate::trig;

type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum ParamRange {
    /// Open interval, visited in Farey order (smaller denominators first).
    Interval(Q, Q),
    /// `start, start + 1, ...`
    IntegerRay(BigInt),
    List(Vec<Q>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchBudget {
    pub max_candidates: usize,
    pub time: Option<Duration>,
    /// Stop after this many hits.
    pub max_hits: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_candidates: 200, time: Some(Duration::from_secs(60)), max_hits: Some(1) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    #[serde(serialize_with = "serde_str::serialize_rational")]
    pub value: Q,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub hits: Vec<SearchHit>,
    pub tried: usize,
    /// Candidates where no root could be located or the verdict failed.
    pub skipped: usize,
    /// Verdicts other than NonConstructible.
    pub misses: usize,
    pub budget_exceeded: bool,
}

/// Rationals in `(lo, hi)` ordered by denominator, then numerator.
pub fn farey_candidates(lo: Q, hi: Q) -> impl Iterator<Item = Q> {
    (1u64..).flat_map(move |d| {
        let den = BigInt::from(d);
        let start = (lo.clone() * Q::from_integer(den.clone())).floor().to_integer() + 1;
        let end = (hi.clone() * Q::from_integer(den.clone())).ceil().to_integer();
        let den2 = den.clone();
        num_iter(start, end)
            .filter(move |n| n.gcd(&den2).is_one())
            .map(move |n| Q::new(n, den.clone()))
            .collect::<Vec<_>>()
    })
}

fn num_iter(start: BigInt, end: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = start;
    std::iter::from_fn(move || {
        if cur < end {
            let out = cur.clone();
            cur += 1;
            Some(out)
        } else {
            None
        }
    })
}

fn candidates(range: &ParamRange) -> Box<dyn Iterator<Item = Q> + '_> {
    match range {
        ParamRange::Interval(lo, hi) => Box::new(farey_candidates(lo.clone(), hi.clone())),
        ParamRange::IntegerRay(s) => {
            let s = s.clone();
            Box::new((0u64..).map(move |k| Q::from_integer(&s + BigInt::from(k))))
        }
        ParamRange::List(v) => Box::new(v.iter().cloned()),
    }
}

/// Rational bracket for the root of interest of a specialized member.
pub type RootBracket<'a> = dyn Fn(&Q, &ZPoly) -> Option<(Q, Q)> + 'a;

/// Specializes the first variable of `family` over `range` and runs the verdict on each member.
///
/// `root` gives a rational bracket for the quantity of interest, or `None` to skip the candidate.
pub fn specialization_search(
    family: &BiPoly,
    range: &ParamRange,
    budget: &SearchBudget,
    root: &RootBracket<'_>,
) -> SearchReport {
    let start = Instant::now();
    let mut report = SearchReport { hits: Vec::new(), tried: 0, skipped: 0, misses: 0, budget_exceeded: false };
    for t in candidates(range) {
        if report.tried >= budget.max_candidates || budget.time.is_some_and(|lim| start.elapsed() > lim) {
            report.budget_exceeded = true;
            break;
        }
        if budget.max_hits.is_some_and(|m| report.hits.len() >= m) {
            break;
        }
        report.tried += 1;
        let member: QPoly = family.specialize_x(&t);
        if member.is_zero_poly() || member.degree().unwrap_or(0) == 0 {
            report.skipped += 1;
            continue;
        }
        let z = member.primitive_integer();
        let Some(bracket) = root(&t, &z) else {
            report.skipped += 1;
            continue;
        };
        match nonconstructibility_verdict(&z, &bracket) {
            Ok(v) if v.status == Status::NonConstructible => report.hits.push(SearchHit { value: t, verdict: v }),
            Ok(_) => report.misses += 1,
            Err(_) => report.skipped += 1,
        }
    }
    report
}

/// `W_{k,m}(1, c, x)` as a polynomial in `(c, x)`; its root is `1/(2r)` for `P(1^k, c^m)`.
pub fn polygon_family(k: u32, m: u32) -> Result<BiPoly, trig::TrigError> {
    let one = QPoly::constant(Q::one(), 'c');
    let c = QPoly::x('c');
    let w = trig::w_poly(k, m, &one, &c)?;
    Ok(BiPoly::from_nested(&w, 'c'))
}

/// Bracket for `1/(2r)` of `P(1^k, c^m)` from the numeric solver.
pub fn polygon_root_bracket(k: usize, m: usize, c: &Q) -> Option<(Q, Q)> {
    if !c.is_zero() && c > &Q::zero() {
        let spec = PolygonSpec::from_counts(numeric::Mode::Sides, &[(Q::one(), k), (c.clone(), m)]);
        let r = numeric::circumradius_sides::<f64>(&spec, &SolverConfig::default()).ok()?;
        Some(super::bracket_around(1.0 / (2.0 * r.radius), 1e-9))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn farey_order() {
        let v: Vec<String> = farey_candidates(Q::zero(), Q::one()).take(6).map(|q| q.to_string()).collect();
        assert_eq!(v, ["1/2", "1/3", "2/3", "1/4", "3/4", "1/5"]);
    }

    #[test]
    fn square_family_has_no_hits() {
        // y^2 - t at perfect squares
        let mut fam = BiPoly::zero_in(('t', 'y'));
        fam.add_term(0, 2, Q::one());
        fam.add_term(1, 0, -Q::one());
        let list = ParamRange::List((1..6).map(|k| Q::from_integer(BigInt::from(k * k))).collect());
        let budget = SearchBudget { max_hits: None, ..Default::default() };
        let rep = specialization_search(&fam, &list, &budget, &|t, _| {
            let r = crate::scalar::rational_to_f64(t).sqrt();
            Some(super::super::bracket_around(r, 1e-9))
        });
        assert!(rep.hits.is_empty());
        assert_eq!(rep.misses, 5);
    }

    #[test]
    fn pentagon_family_specializes_to_the_known_octic() {
        let fam = polygon_family(1, 4).unwrap();
        let p = fam.specialize_x(&Q::from_integer(2.into())).primitive_integer();
        assert_eq!(p, ZPoly::from_i64s(&[0, 0, -63, 0, 1280, 0, -8192, 0, 16384], 'x'));
    }
}
