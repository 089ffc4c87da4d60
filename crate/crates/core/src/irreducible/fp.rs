//! Dense polynomials over a prime field `Z/p`, `p < 2^32`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::poly::ZPoly;

/// Coefficients lowest first, trimmed.
pub type Fpx = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p));
        Fp { p }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }

    pub fn from_zpoly(&self, f: &ZPoly) -> Fpx {
        trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    pub fn add_poly(&self, a: &[u64], b: &[u64]) -> Fpx {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
    }

    pub fn sub_poly(&self, a: &[u64], b: &[u64]) -> Fpx {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Fpx {
        trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> Fpx {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        let p = self.p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % p;
            }
        }
        trim(out.into_iter().map(|v| v as u64).collect())
    }

    /// `(q, r)` with `a = q b + r`; `b` nonzero.
    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Fpx, Fpx) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), trim(r));
        }
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + b.len() - 1], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
        }
        r.truncate(b.len() - 1);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Fpx {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Fpx {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Fpx {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Fpx, Fpx, Fpx) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("not both zero"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> Fpx {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect())
    }

    pub fn mul_mod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Fpx {
        self.rem(&self.mul_poly(a, b), m)
    }

    /// `base^e mod m` for a big exponent given as a BigInt.
    pub fn pow_mod(&self, base: &[u64], e: &BigInt, m: &[u64]) -> Fpx {
        let mut result = self.rem(&[1], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.mul_mod(&result, &result, m);
            if e.bit(i) {
                result = self.mul_mod(&result, &b, m);
            }
        }
        result
    }

    /// `x^(p^k) mod m`.
    pub fn frobenius_power(&self, k: usize, m: &[u64]) -> Fpx {
        let mut x = self.rem(&[0, 1], m);
        let p = BigInt::from(self.p);
        for _ in 0..k {
            x = self.pow_mod(&x, &p, m);
        }
        x
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Rabin's test; `f` of positive degree with invertible leading coefficient.
    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let f = self.monic(f);
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x: Fpx = self.rem(&[0, 1], &f);
        for r in prime_divisors(n) {
            let h = self.frobenius_power(n / r, &f);
            let g = self.gcd(&f, &self.sub_poly(&h, &x));
            if g.len() != 1 {
                return false;
            }
        }
        self.sub_poly(&self.frobenius_power(n, &f), &x).is_empty()
    }

    /// Distinct-degree factorization of a monic squarefree `f`: `(product, degree)` pairs.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Fpx, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let mut h = self.rem(&[0, 1], &f);
        let p = BigInt::from(self.p);
        let mut d = 0;
        while f.len() > 1 && 2 * (d + 1) < f.len() {
            d += 1;
            h = self.pow_mod(&h, &p, &f);
            let g = self.gcd(&f, &self.sub_poly(&h, &[0, 1]));
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Splits a monic product of distinct degree-`d` irreducibles (odd `p`).
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<Fpx> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigInt::from(self.p).pow(d as u32) - 1) / 2;
        loop {
            let a: Fpx = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let g0 = self.gcd(f, &a);
            let g = if g0.len() > 1 {
                g0
            } else {
                let b = self.pow_mod(&a, &e, f);
                self.gcd(f, &self.sub_poly(&b, &[1]))
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree `f` (odd `p`).
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<Fpx> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }
}

pub fn trim(mut v: Fpx) -> Fpx {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficients as integers in `(-m/2, m/2]`.
pub fn symmetric(n: &BigInt, m: &BigInt) -> BigInt {
    let r = n.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

pub fn is_zero_mod(n: &BigInt, m: &BigInt) -> bool {
    n.mod_floor(m).is_zero()
}
