//! Irreducibility certificates over the rationals and constructibility verdicts.

mod factor;
pub mod fp;
mod search;

pub use factor::{factor_mod_p, factor_over_rationals, modular_pattern, Factorization, ModularPattern, MAX_DEGREE};
pub use search::{
    farey_candidates, polygon_family, polygon_root_bracket, specialization_search, ParamRange, SearchBudget, SearchHit, SearchReport,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::fields::TowerElement;
use crate::poly::{QPoly, ZPoly};
use crate::scalar::{rational_to_f64, serde_str};
use crate::trig::is_prime;
use fp::Fp;

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IrrError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("prime {0} divides the leading coefficient or the reduction is not squarefree")]
    LeadingCoefficientVanishes(u64),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("no root of the polynomial in the bracket [{0}, {1}]")]
    NoRootInBracket(String, String),
    #[error("several factors have roots in the bracket [{0}, {1}]")]
    AmbiguousBracket(String, String),
    #[error("integer too large to factor by trial division: {0}")]
    IntegerTooLarge(String),
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn miller_rabin(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (n % p).is_zero() {
            return *n == BigInt::from(p);
        }
    }
    let m = n - 1u32;
    let s = m.trailing_zeros().unwrap_or(0);
    let d = &m >> s;
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == m {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == m {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `|n|` by trial division and a probable-prime test on the cofactor.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>, IrrError> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return Err(IrrError::IntegerTooLarge("0".into()));
    }
    let mut d = 2u64;
    while d < TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            let mut e = 0;
            while (&m % &bd).is_zero() {
                m /= &bd;
                e += 1;
            }
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let small = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if m < small || miller_rabin(&m) {
            out.push((m, 1));
        } else {
            return Err(IrrError::IntegerTooLarge(n.to_string()));
        }
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, IrrError> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factor_integer(n)? {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
        if out.len() > 1 << 20 {
            return Err(IrrError::Budget("too many divisors".into()));
        }
    }
    Ok(out)
}

fn eval_q(f: &ZPoly, x: &Q) -> Q {
    f.coeffs().iter().rev().fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
}

/// Exact rational roots, sorted and without repetition.
pub fn rational_root_screen(f: &ZPoly) -> Result<Vec<Q>, IrrError> {
    Ok(rational_root_screen_counted(f)?.0)
}

fn rational_root_screen_counted(f: &ZPoly) -> Result<(Vec<Q>, usize), IrrError> {
    if f.is_zero_poly() {
        return Err(IrrError::ZeroPolynomial);
    }
    let v = f.valuation().unwrap_or(0);
    let g = f.shift_down(v).expect("valuation");
    let mut roots = Vec::new();
    if v > 0 {
        roots.push(Q::zero());
    }
    let mut tested = 0;
    if g.degree().unwrap_or(0) > 0 {
        let nums = divisors(&g.coeff(0))?;
        let dens = divisors(g.leading().unwrap())?;
        for d in &dens {
            for n in &nums {
                if !n.gcd(d).is_one() {
                    continue;
                }
                for s in [n.clone(), -n.clone()] {
                    tested += 1;
                    let x = Q::new(s, d.clone());
                    if eval_q(&g, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok((roots, tested))
}

fn shift_order(max_shift: u32) -> Vec<i64> {
    let mut v = vec![0];
    for s in 1..=max_shift as i64 {
        v.push(s);
        v.push(-s);
    }
    v
}

fn eisenstein_at(g: &ZPoly, p: &BigInt) -> bool {
    let n = match g.degree() {
        Some(n) if n > 0 => n,
        _ => return false,
    };
    let p2 = p * p;
    !(g.coeff(n) % p).is_zero()
        && (0..n).all(|i| (g.coeff(i) % p).is_zero())
        && !(g.coeff(0) % &p2).is_zero()
}

/// First Eisenstein witness for `f(x + s)` over shifts `0, 1, -1, ..., ±max_shift`.
pub fn eisenstein(f: &ZPoly, max_shift: u32) -> Option<Certificate> {
    if f.degree().unwrap_or(0) == 0 {
        return None;
    }
    for s in shift_order(max_shift) {
        let g = f.substitute_shift(&BigInt::from(s));
        let n = g.degree().unwrap();
        let c0 = g.coeff(0);
        if c0.is_zero() {
            continue;
        }
        let gcd = (0..n).fold(BigInt::zero(), |acc, i| acc.gcd(&g.coeff(i)));
        if gcd.is_one() {
            continue;
        }
        let primes: Vec<BigInt> = match factor_integer(&gcd) {
            Ok(fs) => fs.into_iter().map(|(p, _)| p).collect(),
            Err(_) => (2..TRIAL_LIMIT)
                .filter(|&p| is_prime(p) && (&gcd % p).is_zero())
                .map(BigInt::from)
                .collect(),
        };
        for p in primes {
            if eisenstein_at(&g, &p) {
                return Some(Certificate::Eisenstein { prime: p, shift: s });
            }
        }
    }
    None
}

/// Irreducibility modulo `prime`, which implies irreducibility over the rationals.
pub fn mod_p_irreducible(f: &ZPoly, prime: u64) -> Result<bool, IrrError> {
    let fp = Fp::new(prime);
    let lc = f.leading().ok_or(IrrError::ZeroPolynomial)?;
    if fp.reduce_int(lc) == 0 {
        return Err(IrrError::LeadingCoefficientVanishes(prime));
    }
    Ok(fp.is_irreducible(&fp.from_zpoly(f)))
}

/// Smallest prime below `limit` modulo which `f` stays irreducible.
pub fn mod_p_search(f: &ZPoly, limit: u64) -> Option<u64> {
    (2..limit).filter(|&p| is_prime(p)).find(|&p| mod_p_irreducible(f, p).unwrap_or(false))
}

/// Re-checkable evidence that a polynomial is irreducible over the rationals.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Degree at most three with no rational root.
    RationalRootScreen { degree: usize, candidates_tested: usize },
    Eisenstein {
        #[serde(serialize_with = "serde_str::serialize_int")]
        prime: BigInt,
        shift: i64,
    },
    ModPIrreducible { prime: u64 },
    /// Complete factorization found a single factor; degree patterns modulo a few primes for reference.
    FullFactorization { patterns: Vec<ModularPattern> },
}

impl Certificate {
    /// Independent re-verification for `f`.
    pub fn recheck(&self, f: &ZPoly) -> bool {
        match self {
            Certificate::RationalRootScreen { degree, .. } => {
                f.degree() == Some(*degree)
                    && *degree <= 3
                    && *degree >= 1
                    && rational_root_screen(f).is_ok_and(|r| r.is_empty() || *degree == 1)
            }
            Certificate::Eisenstein { prime, shift } => {
                miller_rabin(prime) && eisenstein_at(&f.substitute_shift(&BigInt::from(*shift)), prime)
            }
            Certificate::ModPIrreducible { prime } => {
                is_prime(*prime) && f.degree().unwrap_or(0) > 0 && mod_p_irreducible(f, *prime).unwrap_or(false)
            }
            Certificate::FullFactorization { patterns } => {
                factor_over_rationals(f).is_ok_and(|fa| fa.is_irreducible())
                    && patterns.iter().all(|pat| modular_pattern(f, pat.prime).as_ref() == Some(pat))
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::RationalRootScreen { .. } => "RationalRootScreen",
            Certificate::Eisenstein { .. } => "Eisenstein",
            Certificate::ModPIrreducible { .. } => "ModPIrreducible",
            Certificate::FullFactorization { .. } => "FullFactorization",
        }
    }
}

const MOD_P_LIMIT: u64 = 2000;

/// A certificate if `f` (primitive, positive degree) is irreducible, `None` if it factors.
pub fn certify_irreducible(f: &ZPoly) -> Result<Option<Certificate>, IrrError> {
    let n = f.degree().ok_or(IrrError::ZeroPolynomial)?;
    if n == 0 {
        return Ok(None);
    }
    if n <= 3 {
        let (roots, tested) = rational_root_screen_counted(f)?;
        if n > 1 && !roots.is_empty() {
            return Ok(None);
        }
        return Ok(Some(Certificate::RationalRootScreen { degree: n, candidates_tested: tested }));
    }
    if let Some(c) = eisenstein(f, 2) {
        return Ok(Some(c));
    }
    if let Some(p) = mod_p_search(f, MOD_P_LIMIT) {
        return Ok(Some(Certificate::ModPIrreducible { prime: p }));
    }
    let fact = factor_over_rationals(f)?;
    if !fact.is_irreducible() {
        return Ok(None);
    }
    let patterns = (3..200u64)
        .filter(|&p| is_prime(p))
        .filter_map(|p| modular_pattern(f, p))
        .take(3)
        .collect();
    Ok(Some(Certificate::FullFactorization { patterns }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    NonConstructible,
    Constructible,
    Unknown,
}

/// Explicit value showing constructibility.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub description: String,
    /// Exact value in the quadratic-tower text form.
    pub value: String,
    pub approx: f64,
}

impl Witness {
    pub fn rational(description: &str, q: &Q) -> Self {
        Witness { description: description.into(), value: q.to_string(), approx: rational_to_f64(q) }
    }

    pub fn tower(description: &str, x: &TowerElement) -> Self {
        Witness { description: description.into(), value: x.to_compact_string(), approx: x.to_f64() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// The polynomial the verdict was computed from.
    pub polynomial: ZPoly,
    /// Irreducible factor vanishing at the root.
    pub factor: ZPoly,
    pub degree: usize,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    /// Root approximation from exact bisection of the factor.
    pub root: f64,
    /// Relative residual of the factor at `root`.
    pub residual: f64,
}

impl Verdict {
    /// Verdict from a closed-form construction.
    pub fn constructible(polynomial: ZPoly, witness: Witness) -> Self {
        let root = witness.approx;
        Verdict {
            status: Status::Constructible,
            degree: polynomial.degree().unwrap_or(0),
            factor: polynomial.clone(),
            polynomial,
            certificate: None,
            witness: Some(witness),
            root,
            residual: 0.0,
        }
    }

    /// Certificate and status consistency, re-derived from the payload.
    pub fn recheck(&self) -> bool {
        let divides = self.polynomial.div_exact(&self.factor).is_some() || self.certificate.is_none();
        match self.status {
            Status::NonConstructible => {
                divides
                    && !self.degree.is_power_of_two()
                    && self.factor.degree() == Some(self.degree)
                    && self.certificate.as_ref().is_some_and(|c| c.recheck(&self.factor))
            }
            Status::Constructible => self.witness.is_some() || self.degree == 1,
            Status::Unknown => self.degree.is_power_of_two(),
        }
    }
}

fn sign_q(f: &ZPoly, x: &Q) -> i8 {
    let v = eval_q(f, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Shrinks `[lo, hi]` around a simple root of `f` with a sign change (or endpoint root).
fn refine_root(f: &ZPoly, lo: &Q, hi: &Q, steps: usize) -> (Q, Q) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if sign_q(f, &lo) == 0 {
        return (lo.clone(), lo);
    }
    if sign_q(f, &hi) == 0 {
        return (hi.clone(), hi);
    }
    let slo = sign_q(f, &lo);
    let two = Q::from_integer(2.into());
    for _ in 0..steps {
        let mid = (&lo + &hi) / &two;
        let s = sign_q(f, &mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn relative_residual(f: &ZPoly, x: f64) -> f64 {
    let (mut v, mut scale) = (0.0f64, 0.0f64);
    for c in f.coeffs().iter().rev() {
        let c = crate::scalar::rational_to_f64(&Q::from_integer(c.clone()));
        v = v * x + c;
        scale = scale * x.abs() + c.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        v.abs() / scale
    }
}

/// Verdict for the root of `f` in `[lo, hi]`.
///
/// The factor is located by an exact sign change; its degree decides the status.
pub fn nonconstructibility_verdict(f: &ZPoly, bracket: &(Q, Q)) -> Result<Verdict, IrrError> {
    let (lo, hi) = if bracket.0 <= bracket.1 { bracket.clone() } else { (bracket.1.clone(), bracket.0.clone()) };
    let fact = factor_over_rationals(f)?;
    let hits: Vec<&ZPoly> = fact
        .factors
        .iter()
        .map(|(g, _)| g)
        .filter(|g| {
            let (a, b) = (sign_q(g, &lo), sign_q(g, &hi));
            a == 0 || b == 0 || a != b
        })
        .collect();
    let g = match hits.as_slice() {
        [] => return Err(IrrError::NoRootInBracket(lo.to_string(), hi.to_string())),
        [g] => (*g).clone(),
        _ => return Err(IrrError::AmbiguousBracket(lo.to_string(), hi.to_string())),
    };
    let (rl, rh) = refine_root(&g, &lo, &hi, 80);
    let mid = (&rl + &rh) / Q::from_integer(2.into());
    let root = rational_to_f64(&mid);
    let residual = relative_residual(&g, root);
    let degree = g.degree().unwrap();
    let polynomial = f.clone();
    Ok(if degree == 1 {
        let r = Q::new(-g.coeff(0), g.coeff(1));
        Verdict {
            status: Status::Constructible,
            polynomial,
            factor: g,
            degree,
            certificate: None,
            witness: Some(Witness::rational("rational root", &r)),
            root,
            residual,
        }
    } else if degree.is_power_of_two() {
        Verdict { status: Status::Unknown, polynomial, factor: g, degree, certificate: None, witness: None, root, residual }
    } else {
        let certificate = certify_irreducible(&g)?;
        debug_assert!(certificate.is_some());
        Verdict { status: Status::NonConstructible, polynomial, factor: g, degree, certificate, witness: None, root, residual }
    })
}

/// Rational bracket `[x - w, x + w]` with `w = max(|x|, 1) * rel`.
pub fn bracket_around(x: f64, rel: f64) -> (Q, Q) {
    let w = x.abs().max(1.0) * rel;
    let q = |v: f64| Q::from_float(v).expect("finite");
    (q(x - w), q(x + w))
}

/// Polynomial in `QPoly` form with denominators and content cleared.
pub fn content_clear(p: &QPoly) -> ZPoly {
    p.primitive_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c, 'x')
    }

    #[test]
    fn root_screen() {
        assert!(rational_root_screen(&z(&[-2, 0, 7, 3])).unwrap().is_empty());
        assert_eq!(
            rational_root_screen(&z(&[-1, 0, 1])).unwrap(),
            vec![Q::from_integer((-1).into()), Q::one()]
        );
        assert!(rational_root_screen(&z(&[-1, 14, -49, 18])).unwrap().is_empty());
        assert!(matches!(rational_root_screen(&z(&[])), Err(IrrError::ZeroPolynomial)));
        assert_eq!(rational_root_screen(&z(&[-2, 3])).unwrap(), vec![Q::new(2.into(), 3.into())]);
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein(&z(&[-2, 0, 0, 1]), 0), Some(Certificate::Eisenstein { prime: 2.into(), shift: 0 }));
        assert_eq!(eisenstein(&z(&[1, 0, 1]), 0), None);
        assert!(eisenstein(&z(&[1, 0, 1]), 1).is_some());
    }

    #[test]
    fn mod_p_examples() {
        assert!(mod_p_irreducible(&z(&[1, 0, 1]), 3).unwrap());
        assert!(!mod_p_irreducible(&z(&[-1, 0, 1]), 3).unwrap());
        assert!(matches!(mod_p_irreducible(&z(&[1, 0, 3]), 3), Err(IrrError::LeadingCoefficientVanishes(3))));
        let pent = z(&[-63, 0, 1280, 0, -8192, 0, 16384]);
        let p = mod_p_search(&pent, 2000).unwrap();
        assert!(Certificate::ModPIrreducible { prime: p }.recheck(&pent));
    }

    #[test]
    fn pentagon_factorization() {
        let w = z(&[0, 0, -63, 0, 1280, 0, -8192, 0, 16384]);
        let f = factor_over_rationals(&w).unwrap();
        assert_eq!(f.factors, vec![(z(&[0, 1]), 2), (z(&[-63, 0, 1280, 0, -8192, 0, 16384]), 1)]);
        assert!(factor_over_rationals(&z(&[-1, 28, -196, 144])).unwrap().is_irreducible());
    }

    #[test]
    fn verdicts() {
        let two = z(&[-2, 0, 1]);
        let v = nonconstructibility_verdict(&two, &bracket_around(2f64.sqrt(), 1e-6)).unwrap();
        assert_eq!(v.status, Status::Unknown);
        let cubic = z(&[-2, 0, 0, 1]);
        let v = nonconstructibility_verdict(&cubic, &bracket_around(2f64.cbrt(), 1e-6)).unwrap();
        assert_eq!(v.status, Status::NonConstructible);
        assert!(v.recheck());
        assert!(matches!(
            nonconstructibility_verdict(&cubic, &bracket_around(5.0, 1e-6)),
            Err(IrrError::NoRootInBracket(_, _))
        ));
        let lin = &z(&[-1, 2]) * &cubic;
        let v = nonconstructibility_verdict(&lin, &bracket_around(0.5, 1e-6)).unwrap();
        assert_eq!(v.status, Status::Constructible);
    }

    #[test]
    fn integer_factoring() {
        let n: BigInt = "249499002000000".parse().unwrap();
        let fs = factor_integer(&n).unwrap();
        let back = fs.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(back, n);
    }
}
