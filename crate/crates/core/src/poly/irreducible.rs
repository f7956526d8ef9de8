//! Irreducibility over Q: mod-p certificates first, then an exact
//! Hensel-lift-and-recombine search (Zassenhaus) bounded by a work budget.

use super::{discriminant, discriminant_i128, IntPoly};
use crate::error::{invalid, Result};
use crate::ff::{factor_squarefree, inv_mod, is_irreducible_mod_p, FqElem, FqField, FqPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Maximum number of candidate subsets tried during recombination.
pub const DEFAULT_RECOMBINATION_BUDGET: u64 = 1 << 16;

/// Number of good primes tried for a mod-p certificate.
const CERTIFICATE_PRIMES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Irreducible,
    Reducible,
    DegreeOne,
    /// The exact fallback ran out of budget; never treated as irreducible.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `f mod p` is irreducible of full degree.
    ModP(u64),
    /// No subset of the modular factors at `prime` lifts to a true factor.
    Recombination { prime: u64, modular_factors: usize },
    /// `f = factors.0 * factors.1` up to sign, both of positive degree.
    Factors(IntPoly, IntPoly),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub verdict: Verdict,
    pub witness: Certificate,
}

impl IrreducibilityCertificate {
    /// Irreducible or linear.
    pub fn is_irreducible(&self) -> bool {
        matches!(self.verdict, Verdict::Irreducible | Verdict::DegreeOne)
    }

    fn new(verdict: Verdict, witness: Certificate) -> Self {
        Self { verdict, witness }
    }
}

pub fn is_irreducible_over_q(f: &IntPoly) -> Result<IrreducibilityCertificate> {
    is_irreducible_with_budget(f, DEFAULT_RECOMBINATION_BUDGET)
}

pub fn is_irreducible_with_budget(f: &IntPoly, budget: u64) -> Result<IrreducibilityCertificate> {
    is_irreducible_seeded(f, budget, crate::ff::DEFAULT_SPLIT_SEED)
}

/// As [`is_irreducible_with_budget`], with the seed used for modular factoring.
pub fn is_irreducible_seeded(f: &IntPoly, budget: u64, seed: u64) -> Result<IrreducibilityCertificate> {
    let d = match f.degree() {
        None | Some(0) => return invalid("irreducibility needs degree at least 1"),
        Some(d) => d,
    };
    if !f.is_primitive() {
        return invalid("irreducibility test needs a primitive polynomial");
    }
    if d == 1 {
        return Ok(IrreducibilityCertificate::new(Verdict::DegreeOne, Certificate::None));
    }
    if f.constant_term().is_zero() {
        let x = IntPoly::monomial(1);
        let rest = f.div_exact(&x).expect("x divides f");
        return Ok(reducible(x, rest));
    }
    let g = f.gcd(&f.derivative());
    if g.deg() > 0 {
        let rest = f.div_exact(&g).expect("gcd divides f");
        return Ok(reducible(g, rest));
    }

    let disc = match f.to_i64s() {
        Some(c) => discriminant_i128(&c)
            .map(BigInt::from)
            .unwrap_or_else(|| discriminant(f).unwrap()),
        None => discriminant(f)?,
    };
    let bad = f.leading() * disc;
    let mut good_primes = Vec::new();
    let mut p = 1u64;
    while good_primes.len() < CERTIFICATE_PRIMES {
        p = next_prime(p);
        if (&bad % p).is_zero() {
            continue;
        }
        good_primes.push(p);
        if is_irreducible_mod_p(&reduce_monic_u64(f, p), p) {
            return Ok(IrreducibilityCertificate::new(Verdict::Irreducible, Certificate::ModP(p)));
        }
    }
    zassenhaus(f, &good_primes, budget, seed)
}

fn reducible(a: IntPoly, b: IntPoly) -> IrreducibilityCertificate {
    IrreducibilityCertificate::new(Verdict::Reducible, Certificate::Factors(a, b))
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if super::is_prime_u64(n) {
            return n;
        }
    }
}

/// `f mod p` scaled to be monic; `p` must not divide the leading coefficient.
fn reduce_monic_u64(f: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let red: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    let inv = inv_mod(*red.last().unwrap(), p);
    red.iter().map(|&c| c * inv % p).collect()
}

fn to_fq(coeffs: &[u64]) -> FqPoly {
    FqPoly::new(coeffs.iter().map(|&c| FqElem::constant(c as u32)).collect())
}

fn fq_to_big(g: &FqPoly) -> Vec<BigInt> {
    g.coeffs().iter().map(|c| BigInt::from(c.coeffs()[0])).collect()
}

fn big_to_fq(v: &[BigInt], field: &FqField) -> FqPoly {
    let p = BigInt::from(field.p());
    FqPoly::new(
        v.iter()
            .map(|c| FqElem::constant(c.mod_floor(&p).to_u32().unwrap()))
            .collect(),
    )
}

fn zassenhaus(f: &IntPoly, primes: &[u64], budget: u64, seed: u64) -> Result<IrreducibilityCertificate> {
    // pick the prime with the fewest modular factors among the first few
    let mut best: Option<(u64, Vec<FqPoly>, FqField)> = None;
    for &p in primes.iter().take(5) {
        let field = FqField::prime(p)?;
        let g = to_fq(&reduce_monic_u64(f, p));
        let factors = factor_squarefree(&g, &field, seed);
        if best.as_ref().is_none_or(|b| factors.len() < b.1.len()) {
            best = Some((p, factors, field));
        }
    }
    let (p, factors, field) = best.expect("at least one prime");
    let r = factors.len();
    if r == 1 {
        return Ok(IrreducibilityCertificate::new(Verdict::Irreducible, Certificate::ModP(p)));
    }

    let d = f.deg();
    let lc = f.leading();
    // B = 2^d sqrt(d+1) H(f) |a_d|; lift until p^k > 2B
    let sqrt_ceil = BigInt::from(((d + 1) as f64).sqrt().ceil() as u64);
    let bound = (BigInt::one() << d) * sqrt_ceil * f.height() * lc.abs();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }

    let lc_inv = lc.modinv(&modulus).expect("p does not divide lc");
    let target: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * &lc_inv).mod_floor(&modulus))
        .collect();
    let lifted = hensel_lift_all(&target, &factors, &field, k);

    let half = &modulus >> 1;
    let symmetric = |c: BigInt| if c > half { c - &modulus } else { c };
    let mut spent = 0u64;
    for size in 1..=r / 2 {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            spent += 1;
            if spent > budget {
                return Ok(IrreducibilityCertificate::new(Verdict::Unverified, Certificate::None));
            }
            let mut prod = vec![lc.mod_floor(&modulus)];
            for &i in &subset {
                prod = mul_mod(&prod, &lifted[i], &modulus);
            }
            let cand = IntPoly::new(prod.into_iter().map(&symmetric).collect()).primitive_part();
            if cand.deg() > 0 && (f.constant_term() % cand.constant_term()).is_zero() {
                if let Some(q) = f.div_exact(&cand) {
                    return Ok(reducible(cand, q));
                }
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
    }
    Ok(IrreducibilityCertificate::new(
        Verdict::Irreducible,
        Certificate::Recombination {
            prime: p,
            modular_factors: r,
        },
    ))
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// Lifts monic factors of `target mod p` to monic factors mod `p^k`.
fn hensel_lift_all(target: &[BigInt], factors: &[FqPoly], field: &FqField, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[FqPoly]| {
        fs.iter()
            .fold(FqPoly::constant(field.one()), |acc, g| acc.mul(g, field))
    };
    let (g, h) = hensel_lift_pair(target, &prod(&factors[..mid]), &prod(&factors[mid..]), field, k);
    let mut out = hensel_lift_all(&g, &factors[..mid], field, k);
    out.extend(hensel_lift_all(&h, &factors[mid..], field, k));
    out
}

/// Linear Hensel lifting of `target = g h (mod p)` to `mod p^k`, `g`, `h`
/// monic and coprime mod `p`, `target` monic.
fn hensel_lift_pair(
    target: &[BigInt],
    g0: &FqPoly,
    h0: &FqPoly,
    field: &FqField,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = BigInt::from(field.p());
    let t = bezout(g0, h0, field).1;
    let mut g = fq_to_big(g0);
    let mut h = fq_to_big(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let gh = mul_mod(&g, &h, &(&pj * &p));
        let e: Vec<BigInt> = (0..target.len())
            .map(|i| {
                let diff = &target[i] - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&diff % &pj).is_zero());
                diff / &pj
            })
            .collect();
        let e = big_to_fq(&e, field);
        let te = t.mul(&e, field);
        let big_g = te.rem(g0, field);
        let (big_h, rem) = e.sub(&big_g.mul(h0, field), field).divrem(g0, field);
        debug_assert!(rem.is_zero());
        let next = &pj * &p;
        add_scaled(&mut g, &fq_to_big(&big_g), &pj, &next);
        add_scaled(&mut h, &fq_to_big(&big_h), &pj, &next);
        pj = next;
    }
    (g, h)
}

fn add_scaled(a: &mut Vec<BigInt>, b: &[BigInt], scale: &BigInt, m: &BigInt) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = (&*x + y * scale).mod_floor(m);
    }
}

/// `(s, t)` with `s g + t h = 1` over `F_p`.
fn bezout(g: &FqPoly, h: &FqPoly, field: &FqField) -> (FqPoly, FqPoly) {
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (FqPoly::constant(field.one()), FqPoly::zero());
    let (mut t0, mut t1) = (FqPoly::zero(), FqPoly::constant(field.one()));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1, field);
        let s2 = s0.sub(&q.mul(&s1, field), field);
        let t2 = t0.sub(&q.mul(&t1, field), field);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = field.inv(r0.leading()).expect("coprime factors");
    (s0.scale(inv, field), t0.scale(inv, field))
}
