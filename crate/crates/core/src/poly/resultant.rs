//! Resultants and discriminants via the subresultant remainder sequence.
//!
//! The sequence is written once over [`Coef`] so the same code runs on
//! `BigInt` and on overflow-checked `i128`; the latter is the fast path used
//! by large enumeration scans and falls back to `BigInt` on overflow.

use super::IntPoly;
use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

trait Coef: Clone + PartialEq {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_sub(&self, o: &Self) -> Option<Self>;
    fn r_mul(&self, o: &Self) -> Option<Self>;
    fn r_neg(&self) -> Option<Self>;
    /// Exact division; the caller guarantees divisibility.
    fn r_div_exact(&self, o: &Self) -> Option<Self>;
    fn r_gcd(&self, o: &Self) -> Self;

    fn r_pow(&self, mut e: usize) -> Option<Self> {
        let mut base = self.clone();
        let mut acc = Self::r_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.r_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.r_mul(&base)?;
            }
        }
        Some(acc)
    }
}

impl Coef for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn r_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn r_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn r_div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % o)));
        Some(self / o)
    }
    fn r_gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
}

impl Coef for i128 {
    fn r_zero() -> Self {
        0
    }
    fn r_one() -> Self {
        1
    }
    fn r_is_zero(&self) -> bool {
        *self == 0
    }
    fn r_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn r_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn r_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn r_div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert_eq!(self % o, 0);
        self.checked_div(*o)
    }
    fn r_gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i128
    }
}

fn trim<T: Coef>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.r_is_zero()) {
        v.pop();
    }
}

fn content<T: Coef>(v: &[T]) -> T {
    v.iter().fold(T::r_zero(), |g, c| g.r_gcd(c))
}

fn pseudo_rem<T: Coef>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut rem = a.to_vec();
    for i in (db..rem.len()).rev() {
        let top = std::mem::replace(&mut rem[i], T::r_zero());
        for c in rem[..i].iter_mut() {
            *c = c.r_mul(lc)?;
        }
        if !top.r_is_zero() {
            for j in 0..db {
                rem[i - db + j] = rem[i - db + j].r_sub(&top.r_mul(&b[j])?)?;
            }
        }
    }
    rem.truncate(db);
    trim(&mut rem);
    Some(rem)
}

/// Subresultant resultant (Collins / Brown-Traub with content removal).
fn subresultant<T: Coef>(a: &[T], b: &[T]) -> Option<T> {
    if a.is_empty() || b.is_empty() {
        return Some(T::r_zero());
    }
    let ca = content(a);
    let cb = content(b);
    let mut pa: Vec<T> = a.iter().map(|c| c.r_div_exact(&ca)).collect::<Option<_>>()?;
    let mut pb: Vec<T> = b.iter().map(|c| c.r_div_exact(&cb)).collect::<Option<_>>()?;
    let (da, db) = (pa.len() - 1, pb.len() - 1);
    let t = ca.r_pow(db)?.r_mul(&cb.r_pow(da)?)?;
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut pa, &mut pb);
        if da % 2 == 1 && db % 2 == 1 {
            negate = true;
        }
    }
    let mut g = T::r_one();
    let mut h = T::r_one();
    while pb.len() > 1 {
        let (na, nb) = (pa.len() - 1, pb.len() - 1);
        let delta = na - nb;
        if na % 2 == 1 && nb % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&pa, &pb)?;
        pa = pb;
        if r.is_empty() {
            return Some(T::r_zero());
        }
        let divisor = g.r_mul(&h.r_pow(delta)?)?;
        pb = r
            .iter()
            .map(|c| c.r_div_exact(&divisor))
            .collect::<Option<_>>()?;
        g = pa.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.r_pow(delta)?.r_div_exact(&h.r_pow(delta - 1)?)?
        };
    }
    let na = pa.len() - 1;
    let lb = pb.last().unwrap();
    let tail = if na == 0 {
        T::r_one()
    } else {
        lb.r_pow(na)?.r_div_exact(&h.r_pow(na - 1)?)?
    };
    let res = t.r_mul(&tail)?;
    if negate {
        res.r_neg()
    } else {
        Some(res)
    }
}

/// `Res(f, g)`; zero if either argument is zero.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    subresultant(f.coeffs(), g.coeffs()).expect("BigInt arithmetic cannot overflow")
}

/// `Res(f, g)` in `i128`, or `None` on overflow.
pub fn resultant_i128(f: &[i128], g: &[i128]) -> Option<i128> {
    let mut f = f.to_vec();
    let mut g = g.to_vec();
    trim(&mut f);
    trim(&mut g);
    subresultant(&f, &g)
}

/// `D(f) = (-1)^(d(d-1)/2) Res(f, f') / a_d`; 1 for linear `f`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = match f.degree() {
        None | Some(0) => return invalid("discriminant needs degree at least 1"),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative());
    let mut disc = r / f.leading();
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}

/// Discriminant of a machine-integer polynomial (ascending coefficients,
/// nonzero leading term, degree at least 1), or `None` on overflow.
pub fn discriminant_i128(f: &[i64]) -> Option<i128> {
    let d = f.len().checked_sub(1)?;
    if d == 0 || f[d] == 0 {
        return None;
    }
    if d == 1 {
        return Some(1);
    }
    let fi: Vec<i128> = f.iter().map(|&c| c as i128).collect();
    let df: Vec<i128> = fi
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as i128)
        .collect();
    let r = subresultant(&fi, &df)?;
    let disc = r / fi[d];
    Some(if (d * (d - 1) / 2) % 2 == 1 { -disc } else { disc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Sylvester-matrix determinant by fraction-free Bareiss elimination.
    fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
        let (m, n) = (f.deg(), g.deg());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * &mat[size - 1][size - 1]
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, -1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])).unwrap(), BigInt::from(-108));
        assert_eq!(discriminant(&p(&[7, 3])).unwrap(), BigInt::one());
        assert!(discriminant(&p(&[4])).is_err());
        assert!(discriminant(&IntPoly::zero()).is_err());
        // ax^2+bx+c with a != 1
        assert_eq!(discriminant(&p(&[1, 3, 2])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn lehmer_discriminant_matches_root_product_oracle() {
        // 200-bit root-product evaluation of prod (b_i - b_j)^2, rounded.
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert_eq!(
            discriminant(&lehmer).unwrap(),
            BigInt::from(1_332_031_009_i64)
        );
        assert_eq!(
            discriminant_i128(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]),
            Some(1_332_031_009)
        );
    }

    #[test]
    fn resultant_edge_cases() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 0, 1])), BigInt::from(9));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[3])), BigInt::from(9));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])), BigInt::zero());
        assert_eq!(resultant(&IntPoly::zero(), &p(&[1, 1])), BigInt::zero());
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
            .prop_map(|c| IntPoly::from_i64s(&c))
            .prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #[test]
        fn subresultant_matches_sylvester(f in small_poly(6), g in small_poly(6)) {
            prop_assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
        }

        #[test]
        fn resultant_vanishes_iff_common_factor(f in small_poly(6), g in small_poly(6)) {
            let common = f.gcd(&g).deg() > 0;
            prop_assert_eq!(resultant(&f, &g).is_zero(), common);
        }

        #[test]
        fn i128_path_agrees(c in prop::collection::vec(-20i64..=20, 2..=9)) {
            let f = IntPoly::from_i64s(&c);
            prop_assume!(f.deg() >= 1 && c.last() != Some(&0));
            if let Some(fast) = discriminant_i128(&c) {
                prop_assert_eq!(BigInt::from(fast), discriminant(&f).unwrap());
            }
        }

        #[test]
        fn i128_path_never_overflows_in_scan_regime(c in prop::collection::vec(-5i64..=5, 2..=7)) {
            prop_assume!(c.last() != Some(&0));
            let fast = discriminant_i128(&c);
            prop_assert_eq!(fast.map(BigInt::from), Some(discriminant(&IntPoly::from_i64s(&c)).unwrap()));
        }

        #[test]
        fn disc_nonzero_iff_squarefree(c in prop::collection::vec(-4i64..=4, 2..=6)) {
            let f = IntPoly::from_i64s(&c);
            prop_assume!(f.deg() >= 1);
            let nonzero = !discriminant(&f).unwrap().is_zero();
            prop_assert_eq!(nonzero, f.squarefree_part().unwrap() == f.primitive_part());
        }
    }
}
