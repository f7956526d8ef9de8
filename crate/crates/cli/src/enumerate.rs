//! Canonical enumeration of integer polynomials with bounded coefficients.
//!
//! Polynomials are ordered by degree, then by the coefficient tuple
//! `(a_0, ..., a_d)` compared lexicographically. Only primitive polynomials
//! with positive leading coefficient and `a_0 != 0` are admissible.

use crate::config::ScanConfig;
use crate::error::{invalid, CliResult};
use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub degree_min: usize,
    pub degree_max: usize,
    pub bound: i64,
    pub monic: bool,
}

impl Family {
    pub fn new(degree_min: usize, degree_max: usize, bound: i64, monic: bool) -> Self {
        Self {
            degree_min,
            degree_max,
            bound,
            monic,
        }
    }

    pub fn from_config(c: &ScanConfig) -> Self {
        Self::new(c.degree_min, c.degree_max, c.coef_bound.min(i64::MAX as u64) as i64, c.monic)
    }

    fn base(&self) -> u64 {
        2 * self.bound as u64 + 1
    }

    fn leads(&self) -> u64 {
        if self.monic {
            1
        } else {
            self.bound as u64
        }
    }

    fn block(&self, d: usize) -> Option<u64> {
        self.base().checked_pow(d as u32)?.checked_mul(self.leads())
    }

    /// Number of raw coefficient tuples, admissible or not.
    pub fn size(&self) -> CliResult<u64> {
        let mut total = 0u64;
        for d in self.degree_min..=self.degree_max {
            match self.block(d).and_then(|b| total.checked_add(b)) {
                Some(t) => total = t,
                None => return invalid("enumeration too large"),
            }
        }
        Ok(total)
    }

    /// Coefficients `a_0..a_d` of the tuple with canonical index `idx`.
    pub fn tuple(&self, mut idx: u64) -> Option<Vec<i64>> {
        for d in self.degree_min..=self.degree_max {
            let b = self.block(d)?;
            if idx >= b {
                idx -= b;
                continue;
            }
            let mut c = vec![0i64; d + 1];
            c[d] = (idx % self.leads()) as i64 + 1;
            idx /= self.leads();
            for i in (0..d).rev() {
                c[i] = (idx % self.base()) as i64 - self.bound;
                idx /= self.base();
            }
            return Some(c);
        }
        None
    }

    /// Inverse of [`Family::tuple`].
    pub fn index_of(&self, c: &[i64]) -> Option<u64> {
        let d = c.len().checked_sub(1)?;
        if d < self.degree_min || d > self.degree_max {
            return None;
        }
        let lead = c[d];
        if lead < 1 || lead as u64 > self.leads() || c[..d].iter().any(|x| x.abs() > self.bound) {
            return None;
        }
        let mut offset = 0;
        for k in self.degree_min..d {
            offset += self.block(k)?;
        }
        let mut idx = 0u64;
        for &x in &c[..d] {
            idx = idx * self.base() + (x + self.bound) as u64;
        }
        Some(offset + idx * self.leads() + (lead - 1) as u64)
    }

    /// Admissible tuples in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.size().unwrap_or(0)).filter_map(|i| self.tuple(i)).filter(|c| admissible(c))
    }
}

/// Primitive, `a_0 != 0`, positive leading coefficient.
pub fn admissible(c: &[i64]) -> bool {
    match (c.first(), c.last()) {
        (Some(&a0), Some(&lead)) if a0 != 0 && lead > 0 => c.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_inverse() {
        let fam = Family::new(1, 3, 2, false);
        let n = fam.size().unwrap();
        assert_eq!(n, 5 * 2 + 25 * 2 + 125 * 2);
        let mut prev: Option<Vec<i64>> = None;
        for i in 0..n {
            let c = fam.tuple(i).unwrap();
            assert_eq!(fam.index_of(&c), Some(i));
            if let Some(p) = prev {
                assert!((p.len(), &p) < (c.len(), &c));
            }
            prev = Some(c);
        }
        assert!(fam.tuple(n).is_none());
    }

    #[test]
    fn monic_quadratics() {
        let fam = Family::new(2, 2, 2, true);
        let all: Vec<_> = fam.iter().collect();
        // b in [-2, 2], c in [-2, 2] \ {0}
        assert_eq!(all.len(), 20);
        assert_eq!(all[0], vec![-2, -2, 1]);
    }

    #[test]
    fn admissibility() {
        assert!(admissible(&[1, 0, 1]));
        assert!(!admissible(&[0, 1, 1]));
        assert!(!admissible(&[2, 0, 2]));
        assert!(!admissible(&[1, 0, -1]));
    }
}
