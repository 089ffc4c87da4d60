//! Factorization over the integers: modular factorization, Hensel lifting, recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fp::{symmetric, Fp, Fpx};
use super::IrrError;
use crate::poly::{squarefree_decomposition, ZPoly};
use crate::trig::is_prime;

pub const MAX_DEGREE: usize = 64;
const PRIMES_TRIED: usize = 8;
const SUBSET_BUDGET: u64 = 1 << 22;

/// `unit * prod factor^multiplicity`, factors primitive with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::scalar::serde_str::serialize_int")]
    pub unit: BigInt,
    pub factors: Vec<(ZPoly, usize)>,
    /// Prime used for the modular step of the largest squarefree part, if any.
    pub prime: Option<u64>,
}

impl Factorization {
    pub fn expand(&self, var: char) -> ZPoly {
        self.factors
            .iter()
            .fold(ZPoly::constant(self.unit.clone(), var), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Degree patterns of the factors modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularPattern {
    pub prime: u64,
    pub degrees: Vec<usize>,
}

fn subset_sums(degrees: &[usize]) -> u128 {
    degrees.iter().fold(1u128, |acc, &d| acc | (acc << d))
}

/// Squarefree modulo `p` with nonvanishing leading coefficient.
fn good_prime(f: &ZPoly, p: u64) -> Option<Fpx> {
    let fp = Fp::new(p);
    if fp.reduce_int(f.leading()?) == 0 {
        return None;
    }
    let g = fp.from_zpoly(f);
    fp.is_squarefree(&g).then_some(g)
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&p| is_prime(p))
}

fn rng_for(p: u64, f: &ZPoly) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(p ^ ((f.degree().unwrap_or(0) as u64) << 32))
}

/// Monic factors of `f` modulo `p`, `f` squarefree there.
pub fn factor_mod_p(f: &ZPoly, p: u64) -> Result<Vec<Fpx>, IrrError> {
    let fp = Fp::new(p);
    let g = good_prime(f, p).ok_or(IrrError::LeadingCoefficientVanishes(p))?;
    if p == 2 {
        return Err(IrrError::Budget("the factoring step needs an odd prime".into()));
    }
    Ok(fp.factor_squarefree(&fp.monic(&g), &mut rng_for(p, f)))
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn zreduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

/// Lifts `F ≡ g h (mod p)` (all monic) to `mod p^k`.
fn hensel_pair(fp: &Fp, big_f: &[BigInt], g: &Fpx, h: &Fpx, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = BigInt::from(fp.p);
    let modulus = p.pow(k);
    let (one, s, t) = fp.ext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let mut gg = to_big(g);
    let mut hh = to_big(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let prod = zmul(&gg, &hh, &modulus);
        let n = big_f.len().max(prod.len());
        let e: Vec<u64> = (0..n)
            .map(|i| {
                let d = big_f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default();
                fp.reduce_int(&(d / &pj))
            })
            .collect();
        let e = super::fp::trim(e);
        let (q, sigma) = fp.div_rem(&fp.mul_poly(&s, &e), h);
        let tau = fp.add_poly(&fp.mul_poly(&t, &e), &fp.mul_poly(&q, g));
        let lift = |base: &mut Vec<BigInt>, corr: &Fpx| {
            if base.len() < corr.len() {
                base.resize(corr.len(), BigInt::zero());
            }
            for (i, &c) in corr.iter().enumerate() {
                base[i] += &pj * BigInt::from(c);
            }
        };
        lift(&mut gg, &tau);
        lift(&mut hh, &sigma);
        pj *= &p;
        gg = zreduce(&gg, &modulus);
        hh = zreduce(&hh, &modulus);
    }
    (gg, hh)
}

/// Lifts the whole list of monic modular factors of a monic `F`.
fn hensel_all(fp: &Fp, big_f: &[BigInt], factors: &[Fpx], k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![big_f.to_vec()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Fpx]| fs.iter().fold(vec![1u64], |acc, g| fp.mul_poly(&acc, g));
    let (gl, hl) = hensel_pair(fp, big_f, &prod(&factors[..mid]), &prod(&factors[mid..]), k);
    let mut out = hensel_all(fp, &gl, &factors[..mid], k);
    out.extend(hensel_all(fp, &hl, &factors[mid..], k));
    out
}

/// Coefficient bound for `lc(f) * g` with `g | f`.
fn lifting_bound(f: &ZPoly) -> BigInt {
    let norm = f.norm2_squared().sqrt() + 1;
    let deg = f.degree().unwrap_or(0);
    let lc = f.leading().expect("nonzero").abs();
    (BigInt::one() << deg) * norm * lc * 2
}

/// Irreducible factors of a primitive squarefree `f` of positive degree.
fn zassenhaus(f: &ZPoly) -> Result<(Vec<ZPoly>, Option<u64>), IrrError> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return Ok((vec![f.primitive()], None));
    }
    let mut best: Option<(u64, Vec<Fpx>)> = None;
    let mut possible = u128::MAX;
    let full = 1u128 | (1u128 << n);
    let mut tried = 0;
    for p in primes_from(3) {
        if tried >= PRIMES_TRIED {
            break;
        }
        if p > 100_000 {
            return Err(IrrError::Budget("no good prime below 100000".into()));
        }
        if good_prime(f, p).is_none() {
            continue;
        }
        tried += 1;
        let fs = factor_mod_p(f, p)?;
        if fs.len() == 1 {
            return Ok((vec![f.primitive()], Some(p)));
        }
        let degs: Vec<usize> = fs.iter().map(|g| g.len() - 1).collect();
        possible &= subset_sums(&degs);
        if possible & ((1u128 << (n + 1)) - 1) == full {
            return Ok((vec![f.primitive()], Some(p)));
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
    }
    let (p, modular) = best.expect("at least one good prime");
    let fp = Fp::new(p);
    let bound = lifting_bound(f);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lc = f.leading().unwrap().clone();
    let lc_inv = lc.modinv(&modulus).expect("p does not divide lc");
    let big_f: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let lifted = hensel_all(&fp, &big_f, &modular, k);
    recombine(f, lifted, &modulus, possible, p)
}

fn recombine(
    f: &ZPoly,
    mut lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
    possible: u128,
    p: u64,
) -> Result<(Vec<ZPoly>, Option<u64>), IrrError> {
    let var = f.var();
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    let mut budget = SUBSET_BUDGET;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        let r = lifted.len();
        let mut combo: Vec<usize> = (0..size).collect();
        'search: loop {
            if budget == 0 {
                return Err(IrrError::Budget("factor recombination exceeded its subset budget".into()));
            }
            budget -= 1;
            let deg: usize = combo.iter().map(|&i| lifted[i].len() - 1).sum();
            if possible >> deg & 1 == 1 {
                let lc = rest.leading().unwrap().clone();
                // constant term screen before the full product
                let c0 = combo.iter().fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(modulus));
                let c0 = symmetric(&c0, modulus);
                let f0 = rest.coeff(0);
                let plausible = c0.is_zero() || (lc.clone() * &f0) % &c0 == BigInt::zero();
                if plausible {
                    let prod = combo
                        .iter()
                        .fold(vec![lc.clone()], |acc, &i| zmul(&acc, &lifted[i], modulus));
                    let cand = ZPoly::new(prod.iter().map(|c| symmetric(c, modulus)).collect(), var).primitive();
                    if let Some(q) = rest.div_exact(&cand) {
                        hit = Some((combo.clone(), cand, q));
                        break 'search;
                    }
                }
            }
            // next combination
            let mut i = size;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if combo[i] < r - size + i {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break 'search;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                rest = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest.primitive());
    }
    Ok((found, Some(p)))
}

/// Complete factorization over the integers, up to a unit.
pub fn factor_over_rationals(f: &ZPoly) -> Result<Factorization, IrrError> {
    if f.is_zero_poly() {
        return Err(IrrError::ZeroPolynomial);
    }
    let deg = f.degree().unwrap();
    if deg > MAX_DEGREE {
        return Err(IrrError::Budget(format!("degree {} above {}", deg, MAX_DEGREE)));
    }
    let var = f.var();
    let mut unit = f.content();
    if f.leading().unwrap().is_negative() {
        unit = -unit;
    }
    let prim = f.primitive();
    let v = prim.valuation().unwrap_or(0);
    let core = prim.shift_down(v).expect("valuation");
    let mut factors: Vec<(ZPoly, usize)> = Vec::new();
    if v > 0 {
        factors.push((ZPoly::x(var), v));
    }
    let mut prime = None;
    for (g, m) in squarefree_decomposition(&core) {
        let g = g.with_var(var);
        // cheap proofs of irreducibility skip the lifting
        if g.degree().unwrap_or(0) <= 1 || super::eisenstein(&g, 0).is_some() || super::mod_p_search(&g, 60).is_some() {
            factors.push((g, m));
            continue;
        }
        let (fs, p) = zassenhaus(&g)?;
        prime = prime.or(p);
        factors.extend(fs.into_iter().map(|h| (h, m)));
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .cmp(&(b.0.degree(), b.0.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()))
    });
    let fact = Factorization { unit, factors, prime };
    debug_assert_eq!(fact.expand(var), *f);
    Ok(fact)
}

/// Degree pattern of `f` modulo `p`, if `p` is good for `f`.
pub fn modular_pattern(f: &ZPoly, p: u64) -> Option<ModularPattern> {
    let fs = factor_mod_p(f, p).ok()?;
    let mut degrees: Vec<usize> = fs.iter().map(|g| g.len() - 1).collect();
    degrees.sort();
    Some(ModularPattern { prime: p, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c, 'x')
    }

    #[test]
    fn x4_minus_1() {
        let f = factor_over_rationals(&z(&[-1, 0, 0, 0, 1])).unwrap();
        let fs: Vec<ZPoly> = f.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(fs, vec![z(&[-1, 1]), z(&[1, 1]), z(&[1, 0, 1])]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (x^2 - 2)(x^2 - 3)(x^2 - 5) splits into quadratics mod every prime
        let f = &(&z(&[-2, 0, 1]) * &z(&[-3, 0, 1])) * &z(&[-5, 0, 1]);
        let fact = factor_over_rationals(&f).unwrap();
        assert_eq!(fact.factors.len(), 3);
        assert_eq!(fact.expand('x'), f);
        // x^4 - 10x^2 + 1 is irreducible but reducible mod every prime
        let g = z(&[1, 0, -10, 0, 1]);
        assert!(factor_over_rationals(&g).unwrap().is_irreducible());
    }

    #[test]
    fn multiplicities_and_units() {
        let f = &(&z(&[0, 0, -6]) * &z(&[1, 1]).pow(3)) * &z(&[1, 0, 1]);
        let fact = factor_over_rationals(&f).unwrap();
        assert_eq!(fact.unit, BigInt::from(-6));
        assert!(fact.factors.contains(&(z(&[0, 1]), 2)));
        assert!(fact.factors.contains(&(z(&[1, 1]), 3)));
        assert_eq!(fact.expand('x'), f);
    }

    #[test]
    fn non_monic_factors() {
        let f = &z(&[3, 2, 7]) * &z(&[-5, 0, 0, 4]);
        let fact = factor_over_rationals(&f).unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert_eq!(fact.expand('x'), f);
    }
}
