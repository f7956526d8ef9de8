use super::count::{count_with_budget, UnramifiedLevelStats};
use super::newton::{newton_polygon, NewtonPolygon};
use crate::error::{invalid, Error, Result};
use crate::ff::{FqElem, DEFAULT_SPLIT_SEED, MAX_LEVEL};
use crate::poly::{discriminant, is_prime_u64, ord_p_int, IntPoly};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Roots sorted by the exact unramified level they generate.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Partition {
    pub counts: BTreeMap<u32, usize>,
    pub histograms: BTreeMap<u32, BTreeMap<FqElem, usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalProfile {
    pub prime: u64,
    pub degree: usize,
    pub polygon: NewtonPolygon,
    /// `levels[i]` describes level `i + 1`.
    pub levels: Vec<UnramifiedLevelStats>,
    pub exact_generator_counts: BTreeMap<u32, usize>,
    pub exact_generator_histograms: BTreeMap<u32, BTreeMap<FqElem, usize>>,
    pub unaccounted_count: usize,
    pub ramified_or_deep_flag: bool,
    pub ord_p_disc: u64,
}

impl LocalProfile {
    pub fn level(&self, f: u32) -> Option<&UnramifiedLevelStats> {
        self.levels.get((f as usize).checked_sub(1)?)
    }

    pub fn f_max(&self) -> u32 {
        self.levels.len() as u32
    }
}

fn check_levels(f_max: u32) -> Result<()> {
    if f_max == 0 || f_max > MAX_LEVEL {
        return invalid(format!("level cap must lie in 1..={MAX_LEVEL}"));
    }
    // Histogram subtraction embeds lower levels; only the prime field embeds canonically.
    match (2..=f_max).find(|&l| !is_prime_u64(l as u64)) {
        Some(l) => Err(Error::UnsupportedLevel(l)),
        None => Ok(()),
    }
}

fn partition_levels(levels: &[UnramifiedLevelStats]) -> Partition {
    let mut out = Partition::default();
    for stats in levels {
        let l = stats.level;
        let lower: usize = (1..l).filter(|d| l % d == 0).map(|d| out.counts[&d]).sum();
        out.counts.insert(l, stats.membership_count - lower);
        let mut hist = stats.residue_histogram.clone();
        if l > 1 {
            // level-1 residues are constants, with the same key in F_{p^l}
            for (r, n) in &out.histograms[&1] {
                let slot = hist.get_mut(r).expect("level-1 root missing at a higher level");
                *slot -= n;
            }
            hist.retain(|_, n| *n > 0);
        }
        out.histograms.insert(l, hist);
    }
    out
}

fn validate(f: &IntPoly) -> Result<()> {
    if f.deg() == 0 {
        return invalid("local analysis of a constant polynomial");
    }
    if f.constant_term() == BigInt::from(0) {
        return invalid("polynomial has the root 0");
    }
    if !f.is_squarefree() {
        return invalid("polynomial is not squarefree");
    }
    Ok(())
}

pub fn subfield_partition(f: &IntPoly, p: u64, f_max: u32) -> Result<Partition> {
    Ok(local_profile(f, p, f_max)?.partition())
}

impl LocalProfile {
    pub fn partition(&self) -> Partition {
        Partition {
            counts: self.exact_generator_counts.clone(),
            histograms: self.exact_generator_histograms.clone(),
        }
    }
}

pub fn local_profile(f: &IntPoly, p: u64, f_max: u32) -> Result<LocalProfile> {
    validate(f)?;
    let disc = discriminant(f)?;
    build(f, p, f_max, &disc, DEFAULT_SPLIT_SEED)
}

/// As [`local_profile`] with the discriminant supplied by the caller; the
/// squarefree check is replaced by `disc != 0`.
pub fn local_profile_with_disc(f: &IntPoly, p: u64, f_max: u32, disc: &BigInt) -> Result<LocalProfile> {
    local_profile_seeded(f, p, f_max, disc, DEFAULT_SPLIT_SEED)
}

/// As [`local_profile_with_disc`], with an explicit root-splitting seed.
pub fn local_profile_seeded(f: &IntPoly, p: u64, f_max: u32, disc: &BigInt, seed: u64) -> Result<LocalProfile> {
    if f.deg() == 0 || f.constant_term() == BigInt::from(0) || *disc == BigInt::from(0) {
        return invalid("local analysis needs a squarefree polynomial without the root 0");
    }
    build(f, p, f_max, disc, seed)
}

fn build(f: &IntPoly, p: u64, f_max: u32, disc: &BigInt, seed: u64) -> Result<LocalProfile> {
    if !is_prime_u64(p) {
        return invalid(format!("{p} is not prime"));
    }
    check_levels(f_max)?;
    let ord_p_disc = ord_p_int(disc, &BigInt::from(p))?;
    let polygon = newton_polygon(f, p)?;
    let levels = (1..=f_max)
        .map(|l| count_with_budget(f, p, l, ord_p_disc + 1, seed))
        .collect::<Result<Vec<_>>>()?;
    let part = partition_levels(&levels);
    let accounted: usize = part.counts.values().sum();
    let unaccounted_count = f.deg() - accounted;
    Ok(LocalProfile {
        prime: p,
        degree: f.deg(),
        ramified_or_deep_flag: unaccounted_count > 0 || polygon.has_fractional_slope(),
        polygon,
        levels,
        exact_generator_counts: part.counts,
        exact_generator_histograms: part.histograms,
        unaccounted_count,
        ord_p_disc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(f: &IntPoly, p: u64, f_max: u32) -> Vec<(u32, usize)> {
        subfield_partition(f, p, f_max).unwrap().counts.into_iter().collect()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(counts(&IntPoly::from_i64s(&[1, 0, 1]), 3, 2), vec![(1, 0), (2, 2)]);
        assert_eq!(counts(&IntPoly::from_i64s(&[-1, 0, 1]), 3, 2), vec![(1, 2), (2, 0)]);
        let f = &IntPoly::from_i64s(&[-1, 1]) * &IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(counts(&f, 3, 2), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn profile_examples() {
        let golden = local_profile(&IntPoly::from_i64s(&[-1, -1, 1]), 5, 3).unwrap();
        assert_eq!(golden.levels[0].membership_count, 0);
        assert_eq!(golden.unaccounted_count, 2);
        assert!(golden.ramified_or_deep_flag);
        assert_eq!(golden.ord_p_disc, 1);

        let x4 = local_profile(&IntPoly::from_i64s(&[1, 0, 0, 0, 1]), 2, 2).unwrap();
        assert!(x4.levels.iter().all(|s| s.membership_count == 0));
        assert_eq!(x4.unaccounted_count, 4);
        assert!(x4.ramified_or_deep_flag);

        let i = local_profile(&IntPoly::from_i64s(&[1, 0, 1]), 3, 2).unwrap();
        assert_eq!(i.unaccounted_count, 0);
        assert!(!i.ramified_or_deep_flag);
    }

    #[test]
    fn histograms_drop_lower_level_roots() {
        // (x - 1)(x^2 + 1) at 3, level 2: residues {1, t, 2t}; exact level 2 keeps {t, 2t}
        let f = &IntPoly::from_i64s(&[-1, 1]) * &IntPoly::from_i64s(&[1, 0, 1]);
        let prof = local_profile(&f, 3, 2).unwrap();
        assert_eq!(prof.levels[1].residue_histogram.len(), 3);
        let keys: Vec<String> = prof.exact_generator_histograms[&2].keys().map(|k| k.to_string()).collect();
        assert_eq!(keys, vec!["t", "2t"]);
    }

    #[test]
    fn composite_levels_are_rejected() {
        let f = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(local_profile(&f, 3, 4).unwrap_err(), Error::UnsupportedLevel(4));
        assert!(local_profile(&f, 3, 3).is_ok());
    }
}
