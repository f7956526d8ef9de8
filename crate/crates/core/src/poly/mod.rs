//! Exact integer polynomials.
//!
//! [`IntPoly`] stores coefficients in ascending order (`coeffs[i]` is the
//! coefficient of `x^i`) with no trailing zeros, so the zero polynomial is the
//! empty vector and the degree is `len - 1`.

mod irreducible;
mod parse;
mod resultant;

pub use irreducible::{
    is_irreducible_over_q, is_irreducible_seeded, is_irreducible_with_budget, Certificate, IrreducibilityCertificate,
    Verdict, DEFAULT_RECOMBINATION_BUDGET,
};
pub use resultant::{discriminant, discriminant_i128, resultant, resultant_i128};

use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.exact_div_scalar(&c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; `k` must divide all of them.
    pub fn exact_div_scalar(&self, k: &BigInt) -> Self {
        debug_assert!(self.coeffs.iter().all(|c| (c % k).is_zero()));
        Self::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `x^d f(1/x)`; requires a nonzero constant term.
    pub fn reverse(&self) -> Result<Self> {
        if self.constant_term().is_zero() {
            return invalid("reversal needs a nonzero constant term");
        }
        Ok(Self::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// `f(r + p*y) / p^s` where `s` is the minimal coefficient valuation of
    /// `f(r + p*y)`; returns the rescaled polynomial together with `s`.
    pub fn shift_scale(&self, r: &BigInt, p: &BigInt) -> Result<(Self, u64)> {
        if self.is_zero() {
            return invalid("cannot shift the zero polynomial");
        }
        let linear = Self::new(vec![r.clone(), p.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &linear) + &Self::constant(c.clone());
        }
        let s = acc
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| ord_p_int(c, p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap_or(0);
        let scale = num_traits::pow(p.clone(), s as usize);
        Ok((acc.exact_div_scalar(&scale), s))
    }

    /// Division with remainder when the divisor's leading coefficient is a
    /// unit; otherwise exact division is attempted via [`IntPoly::div_exact`].
    pub fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic() || divisor.leading() == BigInt::from(-1));
        let lc = divisor.leading();
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] * &lc;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient `self / divisor` over Z, or `None` if the division
    /// leaves a remainder or a non-integral quotient.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = divisor.deg();
        if self.deg() < dd {
            return None;
        }
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut e = self.deg() - dd + 1;
        for i in (dd..rem.len()).rev() {
            let top = std::mem::take(&mut rem[i]);
            for c in rem[..i].iter_mut() {
                *c *= &lc;
            }
            if !top.is_zero() {
                for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                    rem[i - dd + j] -= &top * dc;
                }
            }
            e -= 1;
        }
        debug_assert_eq!(e, 0);
        rem.truncate(dd);
        Self::new(rem)
    }

    /// Primitive gcd over Z with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Squarefree part: primitive `f / gcd(f, f')`, with the same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.deg() == 0 {
            return invalid("squarefree part of a constant polynomial");
        }
        let g = self.gcd(&self.derivative());
        let pp = self.primitive_part();
        if g.deg() == 0 {
            return Ok(pp);
        }
        pp.div_exact(&g)
            .map(|q| q.primitive_part())
            .ok_or_else(|| Error::Internal("gcd does not divide its argument".into()))
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() >= 1 && self.gcd(&self.derivative()).deg() == 0
    }

    /// Number of trailing zero coefficients (multiplicity of the root 0).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Removes the factor `x^k` with `k` the multiplicity of the root 0.
    pub fn strip_zero_roots(&self) -> Self {
        let k = self.zero_root_multiplicity();
        Self::new(self.coeffs[k..].to_vec())
    }

    /// Ascending coefficient list, e.g. `[1,-2,0,1]`.
    pub fn to_list_string(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(","))
    }
}

/// Largest `k` with `p^k | n`.
pub fn ord_p_int(n: &BigInt, p: &BigInt) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::InfiniteValuation);
    }
    if *p <= BigInt::one() {
        return invalid("valuation base must be at least 2");
    }
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

/// `ord_p` for machine integers.
pub fn ord_p_u64(mut n: u64, p: u64) -> u64 {
    assert!(n != 0 && p >= 2);
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

/// Caret notation with descending powers, e.g. `x^3-2x+1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if i == 0 || !a.is_one() {
                write!(f, "{}", a)?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2)
        assert_eq!(p(&[2, -3, 0, 1]).squarefree_part().unwrap(), p(&[-2, 1, 1]));
        assert_eq!(p(&[0, 0, 0, 0, 1]).squarefree_part().unwrap(), p(&[0, 1]));
        let f = p(&[-1, -1, 1]);
        assert_eq!(f.squarefree_part().unwrap(), f);
        assert!(p(&[3]).squarefree_part().is_err());
    }

    #[test]
    fn reverse_and_shift_examples() {
        assert_eq!(p(&[1, 3, 2]).reverse().unwrap(), p(&[2, 3, 1]));
        assert!(p(&[0, 1, 1]).reverse().is_err());
        let two = BigInt::from(2);
        let (g, s) = p(&[-2, 0, 1]).shift_scale(&BigInt::zero(), &two).unwrap();
        assert_eq!((g, s), (p(&[-1, 0, 2]), 1));
        let (g, s) = p(&[-1, -1, 1])
            .shift_scale(&BigInt::from(3), &BigInt::from(5))
            .unwrap();
        assert_eq!((g, s), (p(&[1, 5, 5]), 1));
    }

    #[test]
    fn valuation_examples() {
        let v = |n: i64, q: i64| ord_p_int(&BigInt::from(n), &BigInt::from(q));
        assert_eq!(v(48, 2), Ok(4));
        assert_eq!(v(5, 5), Ok(1));
        assert_eq!(v(-108, 3), Ok(3));
        assert_eq!(v(0, 3), Err(Error::InfiniteValuation));
    }

    #[test]
    fn display_and_list() {
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "x^3-2x+1");
        assert_eq!(p(&[-1, 0, -3]).to_string(), "-3x^2-1");
        assert_eq!(p(&[1, -2, 0, 1]).to_list_string(), "[1,-2,0,1]");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        let g = (&a * &p(&[3, 0, 2])).gcd(&(&a * &p(&[5, 1])));
        assert_eq!(g, a);
        assert_eq!(p(&[6, 4, 2]).primitive_part(), p(&[3, 2, 1]));
        assert_eq!(p(&[-6, -4, -2]).primitive_part(), p(&[3, 2, 1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[1, 0, 3]);
        let r = a.pseudo_rem(&b);
        // 3^3 * a - r must be divisible by b
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        assert!(lhs.div_exact(&b).is_some());
        assert!(r.deg() < 2);
    }
}
