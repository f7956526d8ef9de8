use super::{FqElem, FqField};
use crate::error::{invalid, Result};
use crate::poly::IntPoly;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for equal-degree splitting when the caller does not supply one.
pub const DEFAULT_SPLIT_SEED: u64 = 0x5eed_0f_f1e1d;

/// Polynomial over `F_q`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(field: &FqField, r: FqElem) -> Self {
        Self::new(vec![field.neg(r), field.one()])
    }

    pub fn x() -> Self {
        Self::new(vec![FqElem::ZERO, FqElem::constant(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, field: &FqField, x: FqElem) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, o: &Self, field: &FqField) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| field.add(self.get(i), o.get(i)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self, field: &FqField) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| field.sub(self.get(i), o.get(i)))
                .collect(),
        )
    }

    fn get(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn mul(&self, o: &Self, field: &FqField) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: FqElem, field: &FqField) -> Self {
        Self::new(self.coeffs.iter().map(|&c| field.mul(c, k)).collect())
    }

    pub fn monic(&self, field: &FqField) -> Self {
        match field.inv(self.leading()) {
            Some(inv) => self.scale(inv, field),
            None => Self::zero(),
        }
    }

    pub fn divrem(&self, d: &Self, field: &FqField) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = field.inv(d.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![FqElem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = field.mul(rem[i], inv);
            q[i - dd] = c;
            for j in 0..=dd {
                rem[i - dd + j] = field.sub(rem[i - dd + j], field.mul(c, d.coeffs[j]));
            }
        }
        (Self::new(q), Self::new(rem))
    }

    pub fn rem(&self, d: &Self, field: &FqField) -> Self {
        self.divrem(d, field).1
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self, field: &FqField) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field);
            a = std::mem::replace(&mut b, r);
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: &FqField) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(c, field.from_int((i as u64 % field.p()) as i64)))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Self, field: &FqField) -> Self {
        let mut acc = Self::constant(field.one()).rem(m, field);
        let base = self.rem(m, field);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, field).rem(m, field);
            if e.bit(i) {
                acc = acc.mul(&base, field).rem(m, field);
            }
        }
        acc
    }

    /// `self^(p^k) mod m`, by `k` successive `p`-th powers.
    fn frobenius_pow(&self, k: u64, m: &Self, field: &FqField) -> Self {
        let p = BigUint::from(field.p());
        let mut acc = self.rem(m, field);
        for _ in 0..k {
            acc = acc.powmod(&p, m, field);
        }
        acc
    }

    /// Multiplicity of `r` as a root (0 if it is not a root).
    pub fn root_multiplicity(&self, r: FqElem, field: &FqField) -> usize {
        let mut g = self.clone();
        let lin = Self::linear_root(field, r);
        let mut m = 0;
        while !g.is_zero() {
            let (q, rem) = g.divrem(&lin, field);
            if !rem.is_zero() {
                break;
            }
            g = q;
            m += 1;
        }
        m
    }
}

/// Coefficientwise reduction mod `p`, embedded in the prime subfield.
pub fn fq_reduce(f: &IntPoly, field: &FqField) -> FqPoly {
    let p = num_bigint::BigInt::from(field.p());
    FqPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                FqElem::constant(c.mod_floor(&p).to_u32().unwrap())
            })
            .collect(),
    )
}

/// Distinct roots of `g` in `F_q`, sorted.
///
/// Roots are isolated by `gcd(g, x^q - x)` and then separated by seeded
/// equal-degree splitting; the result does not depend on the seed.
pub fn fq_roots(g: &FqPoly, field: &FqField, seed: u64) -> Result<Vec<FqElem>> {
    if g.is_zero() {
        return invalid("roots of the zero polynomial");
    }
    let g = g.monic(field);
    if g.deg() == 0 {
        return Ok(vec![]);
    }
    if g.deg() == 1 {
        return Ok(vec![field.neg(g.coeffs[0])]);
    }
    let xq = FqPoly::x().frobenius_pow(field.degree() as u64, &g, field);
    let split = g.gcd(&xq.sub(&FqPoly::x(), field), field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots = Vec::with_capacity(split.deg());
    let mut factors = Vec::new();
    equal_degree_split(&split, 1, field, &mut rng, &mut factors);
    for lin in factors {
        roots.push(field.neg(lin.monic(field).coeffs[0]));
    }
    roots.sort();
    Ok(roots)
}

/// Splits a monic squarefree `g` whose irreducible factors all have degree
/// `k` into those factors.
fn equal_degree_split(
    g: &FqPoly,
    k: usize,
    field: &FqField,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FqPoly>,
) {
    let n = g.deg();
    if n == 0 {
        return;
    }
    if n == k {
        out.push(g.clone());
        return;
    }
    let p = field.p();
    let f = field.degree() as u64;
    loop {
        let a = random_poly(n, field, rng);
        if a.deg() == 0 {
            continue;
        }
        let w = if p == 2 {
            // absolute trace to F_2 of a over F_{q^k}
            let mut t = a.rem(g, field);
            let mut acc = t.clone();
            for _ in 1..(k as u64 * f) {
                t = t.mul(&t, field).rem(g, field);
                acc = acc.add(&t, field);
            }
            acc
        } else {
            let q = BigUint::from(p).pow((k as u64 * f) as u32);
            let e = (q - 1u32) >> 1;
            a.powmod(&e, g, field)
                .sub(&FqPoly::constant(field.one()), field)
        };
        let d = g.gcd(&w, field);
        if d.deg() > 0 && d.deg() < n {
            let (rest, _) = g.divrem(&d, field);
            equal_degree_split(&d, k, field, rng, out);
            equal_degree_split(&rest.monic(field), k, field, rng, out);
            return;
        }
    }
}

fn random_poly(n: usize, field: &FqField, rng: &mut ChaCha8Rng) -> FqPoly {
    let f = field.degree() as usize;
    FqPoly::new(
        (0..n)
            .map(|_| {
                let c: Vec<u64> = (0..f).map(|_| rng.gen_range(0..field.p())).collect();
                field.from_u64s(&c)
            })
            .collect(),
    )
}

/// Irreducible factors of a monic squarefree polynomial (distinct-degree
/// then equal-degree factorization), sorted by degree then coefficients.
pub(crate) fn factor_squarefree(g: &FqPoly, field: &FqField, seed: u64) -> Vec<FqPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rest = g.monic(field);
    let mut out = Vec::new();
    let x = FqPoly::x();
    let mut h = x.rem(&rest, field);
    let mut i = 0;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = h.frobenius_pow(field.degree() as u64, &rest, field);
        let d = rest.gcd(&h.sub(&x, field), field);
        if d.deg() > 0 {
            equal_degree_split(&d, i, field, &mut rng, &mut out);
            rest = rest.divrem(&d, field).0.monic(field);
            h = h.rem(&rest, field);
        }
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::fq_construct;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn reduce_examples() {
        let f5 = fq_construct(5, 1).unwrap();
        let f2 = fq_construct(2, 1).unwrap();
        let r = fq_reduce(&ip(&[-1, -1, 1]), &f5);
        assert_eq!(r, FqPoly::new(vec![f5.from_int(4), f5.from_int(4), f5.one()]));
        let r = fq_reduce(&ip(&[1, 0, 1]), &f2);
        let x1 = FqPoly::new(vec![f2.one(), f2.one()]);
        assert_eq!(r, x1.mul(&x1, &f2));
        assert_eq!(fq_reduce(&ip(&[1, 0, 5]), &f5), FqPoly::constant(f5.one()));
    }

    #[test]
    fn root_examples() {
        let g = ip(&[1, 0, 1]);
        let f5 = fq_construct(5, 1).unwrap();
        let roots = fq_roots(&fq_reduce(&g, &f5), &f5, 1).unwrap();
        assert_eq!(roots, vec![f5.from_int(2), f5.from_int(3)]);
        let f3 = fq_construct(3, 1).unwrap();
        assert!(fq_roots(&fq_reduce(&g, &f3), &f3, 1).unwrap().is_empty());
        let f9 = fq_construct(3, 2).unwrap();
        let roots = fq_roots(&fq_reduce(&g, &f9), &f9, 1).unwrap();
        let t = f9.generator();
        let mut expect = vec![t, f9.add(t, t)];
        expect.sort();
        assert_eq!(roots, expect);
        assert!(fq_roots(&FqPoly::zero(), &f9, 1).is_err());
    }

    fn exhaustive_roots(g: &FqPoly, field: &FqField) -> Vec<FqElem> {
        let mut v: Vec<FqElem> = field
            .elements()
            .into_iter()
            .filter(|&e| g.eval(field, e).is_zero())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn roots_agree_with_exhaustive_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(p, f) in &[(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 2), (11, 2)] {
            let field = fq_construct(p, f).unwrap();
            for _ in 0..100 {
                let deg = rng.gen_range(1..=7);
                let mut g = random_poly(deg + 1, &field, &mut rng);
                if g.is_zero() {
                    g = FqPoly::x();
                }
                let roots = fq_roots(&g, &field, rng.gen()).unwrap();
                assert_eq!(roots, exhaustive_roots(&g, &field), "p={p} f={f} g={g:?}");
                // |roots| = deg gcd(g, x^q - x)
                let xq = FqPoly::x().frobenius_pow(f as u64, &g.monic(&field), &field);
                let split = g.gcd(&xq.sub(&FqPoly::x(), &field), &field);
                assert_eq!(roots.len(), split.deg());
            }
        }
    }

    #[test]
    fn roots_independent_of_seed() {
        let field = fq_construct(7, 3).unwrap();
        let g = fq_reduce(&ip(&[-1, 0, 0, 0, 0, 0, 1]), &field);
        let a = fq_roots(&g, &field, 1).unwrap();
        let b = fq_roots(&g, &field, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn squarefree_factorization_multiplies_back() {
        let field = fq_construct(3, 1).unwrap();
        // x^8 - 1 over F_3 is squarefree
        let g = fq_reduce(&ip(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]), &field);
        let factors = factor_squarefree(&g, &field, 5);
        let prod = factors
            .iter()
            .fold(FqPoly::constant(field.one()), |acc, h| acc.mul(h, &field));
        assert_eq!(prod, g);
        let degs: Vec<usize> = factors.iter().map(|h| h.deg()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2]);
    }
}
