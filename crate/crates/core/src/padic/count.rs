use super::okring::{OkPoly, UnramifiedRing};
use crate::error::{invalid, Error, Result};
use crate::ff::{fq_construct, fq_roots, FqElem, FqField, DEFAULT_SPLIT_SEED};
use crate::poly::{discriminant, ord_p_int, IntPoly};
use num_bigint::BigInt;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

thread_local! {
    static FIELDS: RefCell<HashMap<(u64, u32), FqField>> = RefCell::new(HashMap::new());
}

fn field(p: u64, level: u32) -> Result<FqField> {
    FIELDS.with(|cache| {
        if let Some(f) = cache.borrow().get(&(p, level)) {
            return Ok(f.clone());
        }
        let f = fq_construct(p, level)?;
        cache.borrow_mut().insert((p, level), f.clone());
        Ok(f)
    })
}

/// Roots of `f` in the unramified extension of `Q_p` of degree `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedLevelStats {
    pub level: u32,
    pub membership_count: usize,
    pub integral_count: usize,
    pub nonintegral_count: usize,
    /// Residues of the integral roots in `F_{p^level}`.
    pub residue_histogram: BTreeMap<FqElem, usize>,
    /// Deepest shift used by the Hensel recursion.
    pub max_depth: u64,
}

pub fn count_roots_unramified(f: &IntPoly, p: u64, level: u32) -> Result<UnramifiedLevelStats> {
    if f.deg() == 0 {
        return invalid("root count of a constant polynomial");
    }
    if f.constant_term() == BigInt::from(0) {
        return invalid("polynomial has the root 0");
    }
    if !f.is_squarefree() {
        return invalid("polynomial is not squarefree");
    }
    let disc = discriminant(f)?;
    let budget = ord_p_int(&disc, &BigInt::from(p))? + 1;
    count_with_budget(f, p, level, budget, DEFAULT_SPLIT_SEED)
}

/// Unchecked variant: `f` squarefree with `a_0 != 0`, `budget` the allowed
/// recursion depth, `seed` the splitting seed.
pub(crate) fn count_with_budget(
    f: &IntPoly,
    p: u64,
    level: u32,
    budget: u64,
    seed: u64,
) -> Result<UnramifiedLevelStats> {
    let ring = UnramifiedRing::new(field(p, level)?);
    let mut walk = Walk {
        ring: &ring,
        budget,
        seed,
        max_depth: 0,
        found: Vec::new(),
    };

    let f = f.primitive_part();
    let g = OkPoly::from_int_poly(&f, &ring);
    walk.descend(&g, 0, None, false)?;
    let integral: Vec<FqElem> = std::mem::take(&mut walk.found);

    // roots of positive valuation in the reverse need p | a_d
    if (f.leading() % BigInt::from(p)) == BigInt::from(0) {
        let rev = OkPoly::from_int_poly(&f.reverse()?, &ring);
        walk.descend(&rev, 0, None, true)?;
    }
    let nonintegral = walk.found.len();

    let mut residue_histogram = BTreeMap::new();
    for r in &integral {
        *residue_histogram.entry(*r).or_insert(0) += 1;
    }
    Ok(UnramifiedLevelStats {
        level,
        membership_count: integral.len() + nonintegral,
        integral_count: integral.len(),
        nonintegral_count: nonintegral,
        residue_histogram,
        max_depth: walk.max_depth,
    })
}

struct Walk<'a> {
    ring: &'a UnramifiedRing,
    budget: u64,
    seed: u64,
    max_depth: u64,
    found: Vec<FqElem>,
}

impl Walk<'_> {
    /// Collects one entry per root of `g` in the ring of integers, tagged with
    /// the residue at depth 0. `g` must have a unit coefficient.
    fn descend(&mut self, g: &OkPoly, depth: u64, tag: Option<FqElem>, only_zero: bool) -> Result<()> {
        if depth > self.budget {
            return Err(Error::Internal(format!(
                "Hensel recursion deeper than the discriminant allows ({depth} > {})",
                self.budget
            )));
        }
        self.max_depth = self.max_depth.max(depth);
        let field = self.ring.field();
        let gbar = g.reduce(self.ring);
        if gbar.deg() == 0 {
            return Ok(());
        }
        let dbar = gbar.derivative(field);
        let mut roots = fq_roots(&gbar, field, self.seed)?;
        if only_zero {
            roots.retain(|r| r.is_zero());
        }
        for r in roots {
            let tag = tag.unwrap_or(r);
            if !dbar.eval(field, r).is_zero() {
                self.found.push(tag);
                continue;
            }
            let (next, _) = g.shift_scale(&self.ring.lift(r), self.ring);
            self.descend(&next, depth + 1, Some(tag), false)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(c: &[i64], p: u64, level: u32) -> UnramifiedLevelStats {
        count_roots_unramified(&IntPoly::from_i64s(c), p, level).unwrap()
    }

    #[test]
    fn examples() {
        let s = stats(&[1, 0, 1], 5, 1);
        assert_eq!(s.integral_count, 2);
        assert_eq!(s.nonintegral_count, 0);
        let hist: Vec<_> = s.residue_histogram.iter().map(|(k, v)| (k.coeffs()[0], *v)).collect();
        assert_eq!(hist, vec![(2, 1), (3, 1)]);

        assert_eq!(stats(&[-2, 0, 1], 2, 1).membership_count, 0);

        let s = stats(&[1, 0, 1], 3, 2);
        assert_eq!(s.integral_count, 2);
        let keys: Vec<String> = s.residue_histogram.keys().map(|k| k.to_string()).collect();
        assert_eq!(keys, vec!["t", "2t"]);
    }

    #[test]
    fn golden_ratio_is_not_5_adic() {
        let s = stats(&[-1, -1, 1], 5, 1);
        assert_eq!(s.membership_count, 0);
        assert_eq!(s.max_depth, 1);
    }

    #[test]
    fn nonintegral_roots_come_from_reverse() {
        // 2x - 1 has the root 1/2, non-integral at 2; 3x^2 - ... roots 1/3, -1/3 at 3
        assert_eq!(stats(&[-1, 2], 2, 1).nonintegral_count, 1);
        let s = stats(&[-1, 0, 9], 3, 1);
        assert_eq!((s.integral_count, s.nonintegral_count), (0, 2));
    }

    #[test]
    fn clustered_roots_recurse() {
        // (x - 1)(x - 1 - 3^4)(x + 1)
        let f = &(&IntPoly::from_i64s(&[-1, 1]) * &IntPoly::from_i64s(&[-82, 1])) * &IntPoly::from_i64s(&[1, 1]);
        let s = count_roots_unramified(&f, 3, 1).unwrap();
        assert_eq!(s.integral_count, 3);
        assert_eq!(s.max_depth, 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(count_roots_unramified(&IntPoly::from_i64s(&[1, 2, 1]), 3, 1).is_err());
        assert!(count_roots_unramified(&IntPoly::from_i64s(&[0, 1, 1]), 3, 1).is_err());
    }
}
