//! Finite fields `F_q`, `q = p^f`, with a deterministic defining polynomial.
//!
//! Elements are stored as coefficient vectors in `F_p[t]/(m(t))`, where `m` is
//! the lexicographically smallest monic irreducible of degree `f` (tuples
//! compared constant term first).

mod poly;

pub use poly::{fq_reduce, fq_roots, FqPoly, DEFAULT_SPLIT_SEED};
pub(crate) use poly::factor_squarefree;

use crate::error::{invalid, Result};
use crate::poly::is_prime_u64;
use std::fmt;

/// Largest supported extension degree.
pub const MAX_LEVEL: u32 = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem {
    c: [u32; MAX_LEVEL as usize],
}

impl FqElem {
    pub const ZERO: FqElem = FqElem {
        c: [0; MAX_LEVEL as usize],
    };

    pub fn from_coeffs(coeffs: &[u32]) -> Self {
        let mut c = [0; MAX_LEVEL as usize];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Self { c }
    }

    /// Element of the prime field.
    pub fn constant(v: u32) -> Self {
        let mut c = [0; MAX_LEVEL as usize];
        c[0] = v;
        Self { c }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// True when the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0)
    }
}

/// Written as a polynomial in `t`, e.g. `2t`, `1+t^2`.
impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &v) in self.c.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, v) {
                (0, _) => write!(f, "{}", v)?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{}t", v)?,
                (_, 1) => write!(f, "t^{}", i)?,
                _ => write!(f, "{}t^{}", v, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqField {
    p: u64,
    f: u32,
    /// Monic, ascending, length `f + 1`.
    modulus: Vec<u64>,
}

impl FqField {
    /// The prime field, with defining polynomial `t`.
    pub fn prime(p: u64) -> Result<Self> {
        fq_construct(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// `q = p^f` if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.f)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn n(&self) -> usize {
        self.f as usize
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::constant(1)
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem::constant(v.rem_euclid(self.p as i64) as u32)
    }

    /// Builds an element from arbitrary (possibly unreduced) coefficients of `t^i`.
    pub fn from_u64s(&self, coeffs: &[u64]) -> FqElem {
        let mut acc = [0u64; 2 * MAX_LEVEL as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            acc[i] = c % self.p;
        }
        self.reduce_wide(&mut acc, coeffs.len().max(1))
    }

    /// `t` (or the constant 0 when `f = 1`, where `t` reduces to 0).
    pub fn generator(&self) -> FqElem {
        self.from_u64s(&[0, 1])
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let mut out = FqElem::ZERO;
        let p = self.p as u32;
        for i in 0..self.n() {
            let s = a.c[i] + b.c[i];
            out.c[i] = if s >= p { s - p } else { s };
        }
        out
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let mut out = FqElem::ZERO;
        let p = self.p as u32;
        for i in 0..self.n() {
            out.c[i] = if a.c[i] == 0 { 0 } else { p - a.c[i] };
        }
        out
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let n = self.n();
        if n == 1 {
            return FqElem::constant(((a.c[0] as u64 * b.c[0] as u64) % self.p) as u32);
        }
        let mut acc = [0u64; 2 * MAX_LEVEL as usize];
        // below 2^28 every slot stays under 2^60 without intermediate reduction
        let lazy = self.p < 1 << 28;
        for i in 0..n {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..n {
                let t = acc[i + j] + a.c[i] as u64 * b.c[j] as u64;
                acc[i + j] = if lazy { t } else { t % self.p };
            }
        }
        self.reduce_wide(&mut acc, 2 * n - 1)
    }

    fn reduce_wide(&self, acc: &mut [u64], len: usize) -> FqElem {
        let n = self.n();
        let p = self.p;
        let lazy = p < 1 << 28;
        for i in (n..len).rev() {
            let top = acc[i] % p;
            acc[i] = 0;
            if top == 0 {
                continue;
            }
            for j in 0..n {
                let t = acc[i - n + j] + (p - top) * self.modulus[j];
                acc[i - n + j] = if lazy { t } else { t % p };
            }
        }
        let mut out = FqElem::ZERO;
        for i in 0..n {
            out.c[i] = (acc[i] % p) as u32;
        }
        out
    }

    pub fn pow(&self, a: FqElem, mut e: u128) -> FqElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `F_p[t]`.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        let p = self.p;
        if self.f == 1 {
            return Some(FqElem::constant(inv_mod(a.c[0] as u64, p) as u32));
        }
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.c[..self.n()].iter().map(|&x| x as u64).collect();
        trim_u64(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = divrem_u64(&r0, &r1, p);
            let s2 = sub_u64(&s0, &mul_u64(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p);
        let coeffs: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
        Some(self.from_u64s(&coeffs))
    }

    /// Every element, in coefficient-tuple order; intended for small fields.
    pub fn elements(&self) -> Vec<FqElem> {
        let q = self.order().expect("field too large to enumerate") as u64;
        (0..q)
            .map(|mut k| {
                let mut c = [0u32; MAX_LEVEL as usize];
                for slot in c.iter_mut().take(self.n()) {
                    *slot = (k % self.p) as u32;
                    k /= self.p;
                }
                FqElem { c }
            })
            .collect()
    }
}

/// Constructs `F_{p^f}` with the lexicographically smallest monic irreducible
/// modulus. The same `(p, f)` always yields an identical field.
pub fn fq_construct(p: u64, f: u32) -> Result<FqField> {
    if !is_prime_u64(p) {
        return invalid(format!("{} is not prime", p));
    }
    if p >= 1 << 31 {
        return invalid("characteristic must be below 2^31");
    }
    if f == 0 || f > MAX_LEVEL {
        return invalid(format!("extension degree must be in 1..={}", MAX_LEVEL));
    }
    if f == 1 {
        return Ok(FqField {
            p,
            f,
            modulus: vec![0, 1],
        });
    }
    let n = f as usize;
    let total = (p as u128).pow(f);
    for k in 0..total {
        // c_0 is the most significant digit of the tuple
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = k;
        for i in (0..n).rev() {
            coeffs[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        coeffs[n] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if is_irreducible_mod_p(&coeffs, p) {
            return Ok(FqField {
                p,
                f,
                modulus: coeffs,
            });
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin-style test: no factor of degree `i <= n/2`, checked by
/// `gcd(g, x^(p^i) - x) = 1`.
pub(crate) fn is_irreducible_mod_p(g: &[u64], p: u64) -> bool {
    let n = g.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    let mut h: Vec<u64> = vec![0, 1];
    for _ in 0..n / 2 {
        h = powmod_u64(&h, p, g, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        trim_u64(&mut hx);
        if gcd_u64(g, &hx, p).len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

fn trim_u64(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul_u64(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_u64(&mut out);
    out
}

fn sub_u64(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim_u64(&mut out);
    out
}

fn divrem_u64(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut q = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i] * inv % p;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for j in 0..=db {
            rem[i - db + j] = (rem[i - db + j] + (p - c) * b[j]) % p;
        }
    }
    trim_u64(&mut rem);
    trim_u64(&mut q);
    (q, rem)
}

fn gcd_u64(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim_u64(&mut a);
    trim_u64(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem_u64(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn powmod_u64(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = divrem_u64(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem_u64(&mul_u64(&acc, &b, p), m, p).1;
        }
        e >>= 1;
        if e > 0 {
            b = divrem_u64(&mul_u64(&b, &b, p), m, p).1;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn construction_examples() {
        assert_eq!(fq_construct(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(fq_construct(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(fq_construct(5, 1).unwrap().modulus(), &[0, 1]);
        assert!(fq_construct(6, 1).is_err());
        assert!(fq_construct(3, 0).is_err());
        assert!(fq_construct(3, MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn construction_is_lexicographically_first() {
        // brute force: a polynomial of degree <= 3 is irreducible iff it has no root
        for &p in &[2u64, 3, 5, 7] {
            for f in 2..=3u32 {
                let field = fq_construct(p, f).unwrap();
                let n = f as usize;
                let mut best = None;
                'outer: for k in 0..p.pow(f) {
                    let mut c = vec![0u64; n + 1];
                    let mut r = k;
                    for i in (0..n).rev() {
                        c[i] = r % p;
                        r /= p;
                    }
                    c[n] = 1;
                    for x in 0..p {
                        let v = c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p);
                        if v == 0 {
                            continue 'outer;
                        }
                    }
                    best = Some(c);
                    break;
                }
                assert_eq!(field.modulus(), best.unwrap().as_slice(), "p={p} f={f}");
            }
        }
    }

    #[test]
    fn determinism() {
        for &(p, f) in &[(2, 3), (3, 2), (7, 3), (5, 4)] {
            assert_eq!(fq_construct(p, f).unwrap(), fq_construct(p, f).unwrap());
        }
    }

    #[test]
    fn frobenius_identity_and_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(p, f) in &[(2u64, 1u32), (2, 3), (3, 2), (5, 3), (7, 2), (7, 3), (11, 2)] {
            let field = fq_construct(p, f).unwrap();
            let q = field.order().unwrap();
            for _ in 0..500 {
                let coeffs: Vec<u64> = (0..f).map(|_| rng.gen_range(0..p)).collect();
                let e = field.from_u64s(&coeffs);
                assert_eq!(field.pow(e, q), e);
                if !e.is_zero() {
                    assert_eq!(field.mul(e, field.inv(e).unwrap()), field.one());
                }
            }
        }
    }

    #[test]
    fn generator_squares_to_minus_one_in_f9() {
        let f9 = fq_construct(3, 2).unwrap();
        let t = f9.generator();
        assert_eq!(f9.mul(t, t), f9.from_int(-1));
        assert_eq!(t.to_string(), "t");
        assert_eq!(f9.add(t, t).to_string(), "2t");
    }
}
