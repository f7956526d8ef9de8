//! Explicit lower bounds for the Weil height from p-adic root statistics,
//! membership thresholds, and checks of the inequalities behind them.

mod report;

pub use report::{analyze, AnalyzeOptions, BoundReport, LevelEntry, ReportFlags};

use crate::error::{invalid, Result};
use crate::padic::LocalProfile;
use crate::poly::is_prime_u64;

/// A finite extension of `Q_p` described by its ramification index and
/// inertia degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalFieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub f: u32,
}

impl LocalFieldDescriptor {
    pub fn new(p: u64, e: u32, f: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return invalid(format!("{p} is not prime"));
        }
        if e == 0 || f == 0 {
            return invalid("ramification index and inertia degree must be positive");
        }
        Ok(Self { p, e, f })
    }

    pub fn unramified(p: u64, f: u32) -> Result<Self> {
        Self::new(p, 1, f)
    }

    /// Residue field size `p^f`.
    pub fn q(&self) -> f64 {
        (self.p as f64).powi(self.f as i32)
    }

    pub fn n(&self) -> u32 {
        self.e * self.f
    }

    pub fn log_q(&self) -> f64 {
        self.f as f64 * (self.p as f64).ln()
    }
}

/// `-(log d) / (2d)`, the value every bound takes without p-adic input.
pub fn baseline(d: usize) -> f64 {
    let d = d as f64;
    -d.ln() / (2.0 * d)
}

/// `max{0, s^2/(q+1) - d} log p / (2 e d^2) - log d / (2d)`.
pub fn thm1_bound(d: usize, s: usize, k: &LocalFieldDescriptor) -> Result<f64> {
    if d == 0 {
        return invalid("degree must be positive");
    }
    if s > d {
        return invalid(format!("{s} conjugates cannot exceed the degree {d}"));
    }
    let (df, sf) = (d as f64, s as f64);
    let gain = (sf * sf / (k.q() + 1.0) - df).max(0.0);
    Ok(gain * (k.p as f64).ln() / (2.0 * k.e as f64 * df * df) + baseline(d))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdResult {
    pub threshold: f64,
    pub required_count: u64,
    pub feasible: bool,
}

impl ThresholdResult {
    fn new(threshold: f64, d: usize) -> Self {
        Self {
            threshold,
            required_count: threshold.ceil() as u64,
            feasible: threshold <= d as f64,
        }
    }

    pub fn is_member(&self, s: usize) -> bool {
        s as f64 >= self.threshold
    }
}

/// Conjugate count above which `h >= c / d` is guaranteed.
pub fn prop2_threshold(d: usize, k: &LocalFieldDescriptor, c: f64) -> Result<ThresholdResult> {
    if !(c > 0.0) {
        return invalid("c must be positive");
    }
    if d == 0 {
        return invalid("degree must be positive");
    }
    let df = d as f64;
    let lead = 2.0 * (k.q() + 1.0) * k.n() as f64 * df / k.log_q();
    let t = (lead * (c + (k.q() * df).ln() / 2.0)).sqrt();
    Ok(ThresholdResult::new(t, d))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthMembership {
    pub threshold: ThresholdResult,
    pub member: bool,
    /// `s - threshold`.
    pub margin: f64,
    /// `(q^3 log q - q - 1) / (2 (q + 1))`, at least 2/5 for `q >= 2`.
    pub growth_coefficient: f64,
    /// Bound on the error term, `log q / (2 n)`.
    pub error_term: f64,
}

impl GrowthMembership {
    /// Lower bound on `d h` when the membership holds.
    pub fn guaranteed_dh(&self, d: usize) -> Option<f64> {
        self.member
            .then(|| self.growth_coefficient * (d as f64).ln() - self.error_term)
    }
}

/// Membership in the growth family `s >= sqrt(q^3 n d log d)`.
pub fn cor_i_member(d: usize, k: &LocalFieldDescriptor, s: usize) -> Result<GrowthMembership> {
    if d < 2 {
        return invalid("degree must be at least 2");
    }
    let (q, df) = (k.q(), d as f64);
    let threshold = ThresholdResult::new((q.powi(3) * k.n() as f64 * df * df.ln()).sqrt(), d);
    Ok(GrowthMembership {
        threshold,
        member: threshold.is_member(s),
        margin: s as f64 - threshold.threshold,
        growth_coefficient: (q.powi(3) * q.ln() - q - 1.0) / (2.0 * (q + 1.0)),
        error_term: k.log_q() / (2.0 * k.n() as f64),
    })
}

fn unramified_fields(prof: &LocalProfile) -> impl Iterator<Item = (u32, usize)> + '_ {
    prof.exact_generator_counts
        .iter()
        .filter(|(_, &s)| s > 0)
        .map(|(&l, &s)| (l, s))
}

/// Multi-field bound over the unramified fields recorded in each profile.
///
/// With `t = sum s_K` over the recorded fields the per-prime term is
/// `max{0, t^2 / (d^2 sum q_K) - t / d^2} log p`; when every conjugate is
/// accounted for (`t = d`) this is `max{0, 1/sum q_K - (1/d^2) sum s_K} log p`.
pub fn thm3_bound(profiles: &[LocalProfile], d: usize) -> f64 {
    let mut total = 0.0;
    for prof in profiles {
        let fields: Vec<(LocalFieldDescriptor, usize)> = unramified_fields(prof)
            .map(|(l, s)| (LocalFieldDescriptor { p: prof.prime, e: 1, f: l }, s))
            .collect();
        total += thm3_prime_term(d, &fields);
    }
    total / 2.0 + baseline(d)
}

/// Contribution of one prime from its fields `(K, s_K)`, all over the same `p`:
/// `max{0, t^2 / (d^2 sum e_K q_K) - (1/d^2) sum s_K / e_K} log p`.
pub fn thm3_prime_term(d: usize, fields: &[(LocalFieldDescriptor, usize)]) -> f64 {
    let Some((first, _)) = fields.first() else {
        return 0.0;
    };
    let df = d as f64;
    let t: f64 = fields.iter().map(|(_, s)| *s as f64).sum();
    let sum_eq: f64 = fields.iter().map(|(k, _)| k.e as f64 * k.q()).sum();
    let sum_s: f64 = fields.iter().map(|(k, s)| *s as f64 / k.e as f64).sum();
    (t * t / (df * df * sum_eq) - sum_s / (df * df)).max(0.0) * (first.p as f64).ln()
}

/// `(1/2) sum_p max{0, (1/d^2) sum_K (s_K^2/q_K - s_K) log q_K / n_K} - log d / (2d)`.
pub fn cor1_bound(profiles: &[LocalProfile], d: usize) -> f64 {
    let df = d as f64;
    let mut total = 0.0;
    for prof in profiles {
        let p = prof.prime as f64;
        let inner: f64 = unramified_fields(prof)
            .map(|(l, s)| {
                let (s, q) = (s as f64, p.powi(l as i32));
                // log q_K / n_K = log p for unramified K
                (s * s / q - s) * p.ln()
            })
            .sum();
        total += (inner / (df * df)).max(0.0);
    }
    total / 2.0 + baseline(d)
}

/// Residue collisions summed directly:
/// `(1/(2 d^2)) sum_p sum_K sum_x N_x (N_x - 1) log p - log d / (2d)`.
pub fn exact_disc_bound(profiles: &[LocalProfile], d: usize) -> f64 {
    let df = d as f64;
    let mut total = 0.0;
    for prof in profiles {
        let collisions: usize = prof
            .exact_generator_histograms
            .values()
            .flat_map(|h| h.values())
            .map(|&n| n * (n - 1))
            .sum();
        total += collisions as f64 * (prof.prime as f64).ln();
    }
    total / (2.0 * df * df) + baseline(d)
}

/// Lower bound for totally p-adic integers: `(log p)/(2p) max{0, 1 - p/d} - log d/(2d)`.
pub fn totally_p_adic_bound(p: u64, d: usize) -> f64 {
    let (pf, df) = (p as f64, d as f64);
    pf.ln() / (2.0 * pf) * (1.0 - pf / df).max(0.0) + baseline(d)
}

/// `log(p/2) / (p + 1)`.
pub fn pottmeyer_constant(p: u64) -> f64 {
    let pf = p as f64;
    (pf / 2.0).ln() / (pf + 1.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofInequalityReport {
    pub prime: u64,
    pub level: u32,
    pub ord_p_disc: u64,
    /// `(s - r')(s - r' - 1) + sum_x N_x (N_x - 1)`.
    pub rhs: u64,
    pub margin: i64,
}

/// Both sides of `ord_p(D) >= (s - r')(s - r' - 1) + sum N_x (N_x - 1)` for
/// one unramified level of a profile (membership counts).
pub fn proof_inequality_from_profile(prof: &LocalProfile, level: u32) -> Option<ProofInequalityReport> {
    let stats = prof.level(level)?;
    let outside = stats.nonintegral_count as u64;
    let mut rhs = outside * outside.saturating_sub(1);
    rhs += stats
        .residue_histogram
        .values()
        .map(|&n| (n * (n - 1)) as u64)
        .sum::<u64>();
    Some(ProofInequalityReport {
        prime: prof.prime,
        level,
        ord_p_disc: prof.ord_p_disc,
        rhs,
        margin: prof.ord_p_disc as i64 - rhs as i64,
    })
}

pub fn proof_inequality_check(f: &crate::IntPoly, p: u64, level: u32) -> Result<ProofInequalityReport> {
    let prof = crate::padic::local_profile(f, p, level)?;
    proof_inequality_from_profile(&prof, level)
        .ok_or_else(|| crate::Error::Internal("level missing from profile".into()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MahlerInequalityReport {
    pub log_abs_disc: f64,
    /// `d log d + (2d - 2) log M` at the center of the height estimate.
    pub rhs: f64,
    pub margin: f64,
    /// Margin with `log M` at the bottom of its error interval.
    pub margin_lower: f64,
}

impl MahlerInequalityReport {
    pub fn holds(&self, slack: f64) -> bool {
        self.margin_lower >= -slack
    }
}

pub fn mahler_margin(d: usize, log_abs_disc: f64, log_m: f64, log_m_error: f64) -> MahlerInequalityReport {
    let df = d as f64;
    let dlogd = if d > 1 { df * df.ln() } else { 0.0 };
    let rhs = dlogd + (2.0 * df - 2.0) * log_m;
    let lower = dlogd + (2.0 * df - 2.0) * (log_m - log_m_error);
    // one ulp-scale allowance for the f64 sums themselves
    let fp = 8.0 * f64::EPSILON * (rhs.abs() + log_abs_disc.abs() + 1.0);
    MahlerInequalityReport {
        log_abs_disc,
        rhs,
        margin: rhs - log_abs_disc,
        margin_lower: lower - log_abs_disc - fp,
    }
}

pub fn mahler_inequality_check(f: &crate::IntPoly) -> Result<MahlerInequalityReport> {
    let disc = crate::poly::discriminant(f)?;
    if disc == num_bigint::BigInt::from(0) {
        return invalid("discriminant vanishes");
    }
    let h = crate::heights::mahler_height(f)?;
    Ok(mahler_margin(f.deg(), log_abs(&disc), h.log_mahler, h.log_mahler_error))
}

/// `log |n|` for a nonzero integer.
pub fn log_abs(n: &num_bigint::BigInt) -> f64 {
    let b = n.bits();
    if b <= 1000 {
        return num_traits::ToPrimitive::to_f64(n).unwrap().abs().ln();
    }
    let top = num_traits::Signed::abs(&(n >> (b - 64) as usize));
    num_traits::ToPrimitive::to_f64(&top).unwrap().ln() + (b - 64) as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::local_profile;
    use crate::IntPoly;

    fn k(p: u64, f: u32) -> LocalFieldDescriptor {
        LocalFieldDescriptor::unramified(p, f).unwrap()
    }

    #[test]
    fn thm1_examples() {
        let v = thm1_bound(50, 50, &k(3, 1)).unwrap();
        assert!((v - 0.08722018314255116).abs() < 1e-12);
        assert!((v - (575.0 * 3f64.ln() / 5000.0 - 50f64.ln() / 100.0)).abs() < 1e-14);
        assert!((thm1_bound(2, 2, &k(5, 1)).unwrap() + 2f64.ln() / 4.0).abs() < 1e-15);
        assert_eq!(thm1_bound(7, 0, &k(2, 1)).unwrap(), baseline(7));
        assert!(thm1_bound(3, 4, &k(2, 1)).is_err());
    }

    #[test]
    fn thm1_is_monotone_in_s() {
        for d in [2usize, 5, 17, 100] {
            for (p, f) in [(2, 1), (3, 2), (7, 1)] {
                let vals: Vec<f64> = (0..=d).map(|s| thm1_bound(d, s, &k(p, f)).unwrap()).collect();
                assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn thresholds() {
        let t = prop2_threshold(100, &k(3, 1), 2f64.ln()).unwrap();
        assert!((t.threshold - 50.80813342653589).abs() < 1e-9);
        assert_eq!(t.required_count, 51);
        assert!(t.is_member(60));
        assert!(thm1_bound(100, 60, &k(3, 1)).unwrap() >= 2f64.ln() / 100.0);
        assert!(prop2_threshold(100, &k(3, 1), 0.0).is_err());

        let c = cor_i_member(100, &k(2, 1), 61).unwrap();
        assert_eq!(c.threshold.required_count, 61);
        assert!(c.member && (c.threshold.threshold - 60.697).abs() < 1e-3);
        assert!(c.growth_coefficient >= 0.4);
        let tiny = cor_i_member(2, &k(2, 1), 2).unwrap();
        assert!(!tiny.threshold.feasible && !tiny.member);
        assert!(cor_i_member(1000, &k(2, 1), 1000).unwrap().member);
    }

    #[test]
    fn multi_field_examples() {
        // two 5-adic roots with equal residue: (x - 1)(x - 6)
        let f = IntPoly::from_i64s(&[6, -7, 1]);
        let prof = local_profile(&f, 5, 1).unwrap();
        let v = exact_disc_bound(&[prof.clone()], 2);
        assert!((v - 0.22907268296853875).abs() < 1e-12);
        assert!(v >= cor1_bound(&[prof], 2));

        let i = local_profile(&IntPoly::from_i64s(&[1, 0, 1]), 5, 3).unwrap();
        let base = -2f64.ln() / 4.0;
        assert!((exact_disc_bound(&[i.clone()], 2) - base).abs() < 1e-15);
        assert!((cor1_bound(&[i], 2) - base).abs() < 1e-15);
        assert_eq!(thm3_bound(&[], 9), baseline(9));
        assert_eq!(thm3_prime_term(10, &[(k(2, 10), 10)]), 0.0);
        // one totally 3-adic field of degree 30 gives the closed form
        let v = thm3_prime_term(30, &[(k(3, 1), 30)]) / 2.0 + baseline(30);
        assert!((v - totally_p_adic_bound(3, 30)).abs() < 1e-15);
    }

    #[test]
    fn totally_p_adic_consistency() {
        let v = totally_p_adic_bound(3, 30);
        assert!((v - 0.10810522027251387).abs() < 1e-12);
        assert!((v - (0.5 * (1.0 / 3.0 - 1.0 / 30.0) * 3f64.ln() - 30f64.ln() / 60.0)).abs() < 1e-15);
    }

    #[test]
    fn proof_inequality_examples() {
        let r = proof_inequality_check(&IntPoly::from_i64s(&[1, 0, 1]), 5, 1).unwrap();
        assert_eq!((r.ord_p_disc, r.rhs, r.margin), (0, 0, 0));
        let r = proof_inequality_check(&IntPoly::from_i64s(&[6, -7, 1]), 5, 1).unwrap();
        assert_eq!((r.ord_p_disc, r.rhs), (2, 2));
    }

    #[test]
    fn mahler_inequality_examples() {
        let r = mahler_inequality_check(&IntPoly::from_i64s(&[-1, -1, 1])).unwrap();
        assert!((r.log_abs_disc - 1.6094379124341003).abs() < 1e-12);
        assert!((r.rhs - 2.3487).abs() < 1e-4);
        let r = mahler_inequality_check(&IntPoly::from_i64s(&[-2, 1])).unwrap();
        assert!(r.margin.abs() < 1e-12 && r.holds(1e-12));
    }
}
