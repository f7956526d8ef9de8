//! Independent p-adic oracles built from plain integer arithmetic.
//!
//! The branch-tree oracle refines residue classes `a + p^k Z_p` until each
//! class provably holds no root or exactly one root. Writing
//! `f(a + p^k y) = sum t_i p^(ik) y^i`, a class is empty when the constant
//! term strictly dominates (`v(t_0) < v(t_i) + ik` for all `i >= 1`), and
//! holds a single root when `k > m` and `v(t_0) >= k + m` with `m = v(t_1)`.

use lehmer_core::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveCount {
    pub integral: usize,
    pub nonintegral: usize,
    /// Residues mod p of the integral roots.
    pub residues: BTreeMap<u64, usize>,
}

/// Coefficients of `f(a + z)`.
fn taylor(c: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut t = c.to_vec();
    let n = t.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let hi = &t[j + 1] * a;
            t[j] += hi;
        }
    }
    t
}

fn ord(n: &BigInt, p: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Roots in `Z_p` of `c` (ascending coefficients), restricted to the listed
/// starting residues; `None` if some class is still undecided at `p^kmax`.
fn integral_roots(c: &[BigInt], p: u64, starts: &[u64], kmax: u64) -> Option<BTreeMap<u64, usize>> {
    let pb = BigInt::from(p);
    let mut found = BTreeMap::new();
    let mut stack: Vec<(BigInt, u64, BigInt, u64)> = starts
        .iter()
        .map(|&r| (BigInt::from(r), 1, pb.clone(), r))
        .collect();
    while let Some((a, k, pk, r)) = stack.pop() {
        let t = taylor(c, &a);
        let v = ord(&t[0], &pb);
        let rest = t
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, ti)| ord(ti, &pb).map(|w| w + i as u64 * k))
            .min();
        if let (Some(v), Some(rest)) = (v, rest) {
            if v < rest {
                continue;
            }
        }
        if let Some(m) = ord(&t[1], &pb) {
            if k > m && v.is_none_or(|v| v >= k + m) {
                *found.entry(r).or_insert(0) += 1;
                continue;
            }
        }
        if k >= kmax {
            return None;
        }
        let next = &pk * &pb;
        for j in 0..p {
            stack.push((&a + &pk * j, k + 1, next.clone(), r));
        }
    }
    Some(found)
}

/// Level-1 root counts of a squarefree `f` with `f(0) != 0`.
pub fn naive_level1(f: &IntPoly, p: u64) -> Option<NaiveCount> {
    let disc = lehmer_core::poly::discriminant(f).ok()?;
    let pb = BigInt::from(p);
    let lead = ord(&f.leading(), &pb)?;
    let kmax = 2 * (ord(&disc, &pb)? + f.deg() as u64 * lead) + 4;
    let all: Vec<u64> = (0..p).collect();
    let residues = integral_roots(f.coeffs(), p, &all, kmax)?;
    let nonintegral = if lead > 0 {
        let rev: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
        integral_roots(&rev, p, &[0], kmax)?.values().sum()
    } else {
        0
    };
    Some(NaiveCount {
        integral: residues.values().sum(),
        nonintegral,
        residues,
    })
}

fn linear(a: i64, b: i64) -> IntPoly {
    // b x - a
    IntPoly::from_i64s(&[-a, b])
}

/// Random squarefree instance with `f(0) != 0`, mixing plain random
/// polynomials with clusters of p-adically close roots and roots of
/// negative valuation.
pub fn random_instance<R: Rng>(rng: &mut R, p: u64) -> IntPoly {
    let pi = p as i64;
    loop {
        let f = match rng.gen_range(0..3) {
            0 => {
                let d = rng.gen_range(2..=7);
                let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-40..=40)).collect();
                if c[d] == 0 {
                    c[d] = 1;
                }
                IntPoly::from_i64s(&c)
            }
            1 => {
                let a = rng.gen_range(-30..=30);
                let k = rng.gen_range(1..=4u32);
                let mut f = &linear(a, 1) * &linear(a + pi.pow(k) * rng.gen_range(1..=3), 1);
                if rng.gen_bool(0.5) {
                    f = &f * &linear(a + pi.pow(k + 1), 1);
                }
                let g: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-9..=9)).chain([1]).collect();
                &f * &IntPoly::from_i64s(&g)
            }
            _ => {
                let k = rng.gen_range(1..=3u32);
                let mut f = linear(rng.gen_range(1..=9), pi.pow(k));
                f = &f * &linear(rng.gen_range(-20..=20), rng.gen_range(1..=3));
                let g: Vec<i64> = (0..rng.gen_range(2..=4)).map(|_| rng.gen_range(-9..=9)).collect();
                &f * &IntPoly::from_i64s(&g)
            }
        };
        if f.deg() < 1 || f.constant_term().is_zero() {
            continue;
        }
        let f = f.primitive_part();
        let f = if f.leading().is_negative() { -&f } else { f };
        if f.is_squarefree() {
            return f;
        }
    }
}

/// A polynomial with known `Q_p` roots: distinct integers `a_i` times a monic
/// factor of degree 2 or 3 with no roots mod p.
#[derive(Clone, Debug)]
pub struct Planted {
    pub poly: IntPoly,
    pub roots: Vec<i64>,
    /// Degree of the factor without roots mod p.
    pub tail_degree: usize,
}

impl Planted {
    pub fn residues(&self, p: u64) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for &a in &self.roots {
            *h.entry(a.rem_euclid(p as i64) as u64).or_insert(0) += 1;
        }
        h
    }
}

pub fn planted_instance<R: Rng>(rng: &mut R, p: u64) -> Planted {
    let k = rng.gen_range(1..=3);
    let mut roots: Vec<i64> = Vec::new();
    while roots.len() < k {
        let a = rng.gen_range(-20..=20);
        if a != 0 && !roots.contains(&a) {
            roots.push(a);
        }
    }
    let tail_degree = rng.gen_range(2..=3);
    let tail = loop {
        let c: Vec<i64> = (0..tail_degree).map(|_| rng.gen_range(-6..=6)).chain([1]).collect();
        let g = IntPoly::from_i64s(&c);
        let rootless = (0..p).all(|x| !(g.eval(&BigInt::from(x)) % p).is_zero());
        if rootless {
            break g;
        }
    };
    let poly = roots.iter().fold(tail, |acc, &a| &acc * &linear(a, 1));
    Planted {
        poly,
        roots,
        tail_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hand_examples() {
        // x^2 - 2 over Q_7: 3^2 = 9 = 2 mod 7
        let c = naive_level1(&IntPoly::from_i64s(&[-2, 0, 1]), 7).unwrap();
        assert_eq!(c.integral, 2);
        assert_eq!(c.residues, BTreeMap::from([(3, 1), (4, 1)]));
        // 2x - 1 has its root 1/2 outside Z_2
        let c = naive_level1(&IntPoly::from_i64s(&[-1, 2]), 2).unwrap();
        assert_eq!((c.integral, c.nonintegral), (0, 1));
        // (x - 1)(x - 9) over Q_2: one residue class, two roots
        let c = naive_level1(&IntPoly::from_i64s(&[9, -10, 1]), 2).unwrap();
        assert_eq!(c.residues, BTreeMap::from([(1, 2)]));
        // x^2 + 1 has no root in Q_3
        assert_eq!(naive_level1(&IntPoly::from_i64s(&[1, 0, 1]), 3).unwrap().integral, 0);
    }

    #[test]
    fn generators_produce_valid_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3, 5] {
            for _ in 0..30 {
                let f = random_instance(&mut rng, p);
                assert!(f.is_squarefree() && !f.constant_term().is_zero());
                let pl = planted_instance(&mut rng, p);
                assert!(pl.poly.is_squarefree());
                assert_eq!(pl.poly.deg(), pl.roots.len() + pl.tail_degree);
            }
        }
    }
}
