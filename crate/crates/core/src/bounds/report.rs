use super::*;
use crate::error::Error;
use crate::heights::{is_torsion, mahler_height_tol, HeightEstimate, DEFAULT_TOLERANCE};
use crate::ff::DEFAULT_SPLIT_SEED;
use crate::padic::{local_profile_seeded, LocalProfile};
use crate::poly::{discriminant, is_irreducible_seeded, Verdict, DEFAULT_RECOMBINATION_BUDGET};
use crate::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub primes: Vec<u64>,
    pub f_max: u32,
    /// Parameter of the membership threshold `h >= c / d`.
    pub c: f64,
    pub tolerance: f64,
    /// Seed for every randomized splitting step.
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5, 7],
            f_max: 3,
            c: 2f64.ln(),
            tolerance: DEFAULT_TOLERANCE,
            seed: DEFAULT_SPLIT_SEED,
        }
    }
}

/// Per-(p, level) quantities, with membership counts.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelEntry {
    pub prime: u64,
    pub level: u32,
    pub membership: usize,
    pub thm1: f64,
    pub prop2: ThresholdResult,
    pub prop2_member: bool,
    pub growth: Option<GrowthMembership>,
    pub proof: ProofInequalityReport,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ReportFlags {
    pub torsion: bool,
    pub non_monic: bool,
    pub reducible: bool,
    pub irreducibility_unverified: bool,
    /// `(p, unaccounted conjugates)` for primes whose ramified part was dropped.
    pub ramified_dropped: Vec<(u64, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub polynomial: IntPoly,
    pub degree: usize,
    pub height: HeightEstimate,
    pub discriminant: BigInt,
    pub irreducibility: Verdict,
    pub options: AnalyzeOptions,
    pub profiles: Vec<LocalProfile>,
    pub levels: Vec<LevelEntry>,
    /// Multi-field bounds; `None` for non-monic input.
    pub thm3: Option<f64>,
    pub cor1: Option<f64>,
    pub exact_disc: Option<f64>,
    pub mahler: MahlerInequalityReport,
    pub flags: ReportFlags,
}

impl BoundReport {
    /// Theorems apply: irreducible, and not a root of unity.
    pub fn hypotheses_hold(&self) -> bool {
        self.irreducibility == Verdict::Irreducible || self.irreducibility == Verdict::DegreeOne
    }

    pub fn vacuous(&self) -> bool {
        self.flags.torsion || !self.hypotheses_hold()
    }

    /// Whether some bound is positive; otherwise the report carries no
    /// information about `h` beyond what the hypotheses give.
    pub fn informative(&self) -> bool {
        !self.vacuous() && self.bound_values().iter().any(|(_, v)| *v > 0.0)
    }

    pub fn best_thm1(&self) -> f64 {
        self.levels
            .iter()
            .map(|l| l.thm1)
            .fold(baseline(self.degree), f64::max)
    }

    /// All bound values, labelled.
    pub fn bound_values(&self) -> Vec<(String, f64)> {
        let mut out: Vec<(String, f64)> = self
            .levels
            .iter()
            .map(|l| (format!("thm1[p={},f={}]", l.prime, l.level), l.thm1))
            .collect();
        for (name, v) in [("thm3", self.thm3), ("cor1", self.cor1), ("exact_disc", self.exact_disc)] {
            if let Some(v) = v {
                out.push((name.to_string(), v));
            }
        }
        out
    }

    /// Failed checks: bounds above the height, membership guarantees
    /// contradicted, violated inequalities, and dominance failures.
    pub fn violations(&self, slack: f64) -> Vec<String> {
        let mut out = Vec::new();
        if !self.mahler.holds(slack) {
            out.push(format!("mahler inequality margin {}", self.mahler.margin_lower));
        }
        for l in &self.levels {
            if l.proof.margin < 0 {
                out.push(format!("proof inequality at p={} f={}: margin {}", l.prime, l.level, l.proof.margin));
            }
        }
        if self.vacuous() {
            return out;
        }
        let h_hi = self.height.height + self.height.height_error;
        for (name, v) in self.bound_values() {
            if v > h_hi + slack {
                out.push(format!("{name} = {v} exceeds h = {}", self.height.height));
            }
        }
        let d = self.degree as f64;
        for l in &self.levels {
            if l.prop2_member && h_hi + slack < self.options.c / d {
                out.push(format!("membership at p={} f={} without h >= c/d", l.prime, l.level));
            }
        }
        if let (Some(e), Some(c)) = (self.exact_disc, self.cor1) {
            if e + slack < c {
                out.push(format!("exact_disc {e} below cor1 {c}"));
            }
        }
        out
    }
}

pub fn analyze(f: &IntPoly, options: &AnalyzeOptions) -> Result<BoundReport> {
    if f.deg() == 0 {
        return invalid("analysis needs a polynomial of degree >= 1");
    }
    if !f.is_primitive() {
        return invalid("polynomial is not primitive");
    }
    if f.constant_term().is_zero() {
        return invalid("polynomial has the root 0");
    }
    if options.primes.is_empty() {
        return invalid("prime set is empty");
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return invalid("polynomial is not squarefree");
    }
    let cert = is_irreducible_seeded(f, DEFAULT_RECOMBINATION_BUDGET, options.seed)?;
    let d = f.deg();
    let height = mahler_height_tol(f, options.tolerance)?;
    let monic = f.leading().abs().is_one();
    let mut flags = ReportFlags {
        torsion: matches!(cert.verdict, Verdict::Irreducible | Verdict::DegreeOne) && is_torsion(f),
        non_monic: !monic,
        reducible: cert.verdict == Verdict::Reducible,
        irreducibility_unverified: cert.verdict == Verdict::Unverified,
        ramified_dropped: Vec::new(),
    };

    let mut profiles = Vec::with_capacity(options.primes.len());
    let mut levels = Vec::new();
    for &p in &options.primes {
        let prof = local_profile_seeded(f, p, options.f_max, &disc, options.seed)?;
        if prof.ramified_or_deep_flag {
            flags.ramified_dropped.push((p, prof.unaccounted_count));
        }
        for stats in &prof.levels {
            let k = LocalFieldDescriptor::unramified(p, stats.level)?;
            let s = stats.membership_count;
            let prop2 = prop2_threshold(d, &k, options.c)?;
            levels.push(LevelEntry {
                prime: p,
                level: stats.level,
                membership: s,
                thm1: thm1_bound(d, s, &k)?,
                prop2,
                prop2_member: prop2.is_member(s),
                growth: if d >= 2 { Some(cor_i_member(d, &k, s)?) } else { None },
                proof: proof_inequality_from_profile(&prof, stats.level)
                    .ok_or_else(|| Error::Internal("missing level".into()))?,
            });
        }
        profiles.push(prof);
    }
    let (thm3, cor1, exact_disc) = if monic {
        (
            Some(thm3_bound(&profiles, d)),
            Some(cor1_bound(&profiles, d)),
            Some(exact_disc_bound(&profiles, d)),
        )
    } else {
        (None, None, None)
    };
    let mahler = mahler_margin(d, log_abs(&disc), height.log_mahler, height.log_mahler_error);
    Ok(BoundReport {
        polynomial: f.clone(),
        degree: d,
        height,
        discriminant: disc,
        irreducibility: cert.verdict,
        options: options.clone(),
        profiles,
        levels,
        thm3,
        cor1,
        exact_disc,
        mahler,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(c: &[i64]) -> BoundReport {
        analyze(&IntPoly::from_i64s(c), &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn lehmer_report_is_safe() {
        let r = run(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!((r.height.height - 0.01623576120077381394321988035549658077079).abs() < 1e-12);
        assert!(!r.vacuous());
        assert!(r.violations(1e-9).is_empty(), "{:?}", r.violations(1e-9));
        assert_eq!(r.discriminant, BigInt::from(1332031009));
    }

    #[test]
    fn torsion_and_zero_height() {
        let r = run(&[1, 1, 1]);
        assert!(r.flags.torsion && r.vacuous());
        let r = run(&[1, 0, 1]);
        assert!(r.height.height.abs() < 1e-12);
        assert!(r.bound_values().iter().all(|(_, v)| *v <= 0.0));
        assert!(!r.informative());
    }

    #[test]
    fn non_monic_input_skips_multi_field_bounds() {
        let r = run(&[1, 1, 2]);
        assert!(r.flags.non_monic && r.thm3.is_none());
        assert!(r.violations(1e-9).is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let o = AnalyzeOptions::default();
        assert!(analyze(&IntPoly::from_i64s(&[2, 4]), &o).is_err());
        assert!(analyze(&IntPoly::from_i64s(&[0, 1, 1]), &o).is_err());
        assert!(analyze(&IntPoly::from_i64s(&[1, 2, 1]), &o).is_err());
    }
}
