//! Exact arithmetic in the unramified ring `Z[t]/(M(t))`, `M` the integer
//! lift of the residue field modulus. Nothing is truncated modulo `p^k`.

use crate::ff::{FqElem, FqField, FqPoly};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct UnramifiedRing {
    field: FqField,
    p: BigInt,
    /// Monic, ascending, length `f + 1`.
    modulus: Vec<BigInt>,
}

/// Element of the unramified ring; `c[i]` is the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OkElem {
    c: Vec<BigInt>,
}

impl OkElem {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl UnramifiedRing {
    pub fn new(field: FqField) -> Self {
        let p = BigInt::from(field.p());
        let modulus = field.modulus().iter().map(|&c| BigInt::from(c)).collect();
        Self { field, p, modulus }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    fn n(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn zero(&self) -> OkElem {
        OkElem {
            c: vec![BigInt::zero(); self.n()],
        }
    }

    pub fn from_int(&self, v: &BigInt) -> OkElem {
        let mut e = self.zero();
        e.c[0] = v.clone();
        e
    }

    /// Representative of a residue with coefficients in `[0, p)`.
    pub fn lift(&self, r: FqElem) -> OkElem {
        OkElem {
            c: r.coeffs()[..self.n()].iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn reduce(&self, a: &OkElem) -> FqElem {
        let coeffs: Vec<u64> = a
            .c
            .iter()
            .map(|x| x.mod_floor(&self.p).to_u64().unwrap())
            .collect();
        self.field.from_u64s(&coeffs)
    }

    pub fn add(&self, a: &OkElem, b: &OkElem) -> OkElem {
        OkElem {
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn mul(&self, a: &OkElem, b: &OkElem) -> OkElem {
        let n = self.n();
        if n == 1 {
            return OkElem {
                c: vec![&a.c[0] * &b.c[0]],
            };
        }
        let mut acc = vec![BigInt::zero(); 2 * n - 1];
        for i in 0..n {
            if a.c[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc[i + j] += &a.c[i] * &b.c[j];
            }
        }
        for i in (n..acc.len()).rev() {
            let top = std::mem::take(&mut acc[i]);
            if top.is_zero() {
                continue;
            }
            for j in 0..n {
                acc[i - n + j] -= &top * &self.modulus[j];
            }
        }
        acc.truncate(n);
        OkElem { c: acc }
    }

    pub fn scale(&self, a: &OkElem, k: &BigInt) -> OkElem {
        OkElem {
            c: a.c.iter().map(|x| x * k).collect(),
        }
    }

    /// Minimum coefficient valuation; `None` for zero. Valid because
    /// `1, t, ..., t^(f-1)` is an integral basis of the unramified ring.
    pub fn valuation(&self, a: &OkElem) -> Option<u64> {
        a.c.iter()
            .filter(|x| !x.is_zero())
            .map(|x| crate::poly::ord_p_int(x, &self.p).unwrap())
            .min()
    }
}

/// Polynomial with coefficients in the unramified ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkPoly {
    coeffs: Vec<OkElem>,
}

impl OkPoly {
    pub fn from_int_poly(f: &IntPoly, ring: &UnramifiedRing) -> Self {
        Self::trimmed(f.coeffs().iter().map(|c| ring.from_int(c)).collect())
    }

    fn trimmed(mut coeffs: Vec<OkElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[OkElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn reduce(&self, ring: &UnramifiedRing) -> FqPoly {
        FqPoly::new(self.coeffs.iter().map(|c| ring.reduce(c)).collect())
    }

    /// Minimum valuation over the coefficients; `None` for the zero polynomial.
    pub fn valuation(&self, ring: &UnramifiedRing) -> Option<u64> {
        self.coeffs.iter().filter_map(|c| ring.valuation(c)).min()
    }

    /// `g(r + p y) / p^s` with `s` the minimal coefficient valuation, so the
    /// result has a unit coefficient.
    pub fn shift_scale(&self, r: &OkElem, ring: &UnramifiedRing) -> (OkPoly, u64) {
        let p = ring.p.clone();
        // Horner with the linear polynomial r + p*y
        let mut acc: Vec<OkElem> = Vec::new();
        for c in self.coeffs.iter().rev() {
            let mut next = vec![ring.zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] = ring.add(&next[i], &ring.mul(a, r));
                next[i + 1] = ring.add(&next[i + 1], &ring.scale(a, &p));
            }
            next[0] = ring.add(&next[0], c);
            acc = next;
        }
        let shifted = Self::trimmed(acc);
        let s = shifted.valuation(ring).unwrap_or(0);
        if s == 0 {
            return (shifted, 0);
        }
        let div = num_traits::pow(p, s as usize);
        let coeffs = shifted
            .coeffs
            .iter()
            .map(|c| OkElem {
                c: c.c.iter().map(|x| x / &div).collect(),
            })
            .collect();
        (Self { coeffs }, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::fq_construct;

    #[test]
    fn shift_matches_integer_version() {
        let ring = UnramifiedRing::new(fq_construct(5, 1).unwrap());
        let f = IntPoly::from_i64s(&[-1, -1, 1]);
        let (g, s) = OkPoly::from_int_poly(&f, &ring).shift_scale(&ring.from_int(&3.into()), &ring);
        assert_eq!(s, 1);
        assert_eq!(g, OkPoly::from_int_poly(&IntPoly::from_i64s(&[1, 5, 5]), &ring));
    }

    #[test]
    fn multiplication_reduces_by_modulus() {
        // Z[t]/(t^2+1): t * t = -1
        let ring = UnramifiedRing::new(fq_construct(3, 2).unwrap());
        let t = ring.lift(ring.field().generator());
        let tt = ring.mul(&t, &t);
        assert_eq!(tt, ring.from_int(&(-1).into()));
        assert_eq!(ring.valuation(&ring.from_int(&18.into())), Some(2));
        assert_eq!(ring.valuation(&ring.zero()), None);
    }
}
