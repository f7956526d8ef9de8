//! Property suites. Each check reports the number of cases, failures and the
//! worst margin (negative margins are failures).

use crate::enumerate::{admissible, Family};
use crate::error::{invalid, CliResult};
use crate::oracle::{naive_level1, planted_instance, random_instance};
use lehmer_core::bounds::{
    analyze, cor_i_member, mahler_margin, pottmeyer_constant, prop2_threshold, totally_p_adic_bound,
    AnalyzeOptions, LocalFieldDescriptor,
};
use lehmer_core::heights::{
    complex_roots, is_torsion, log_mahler_fast, mahler_height, mahler_height_at_precision, mignotte_with_roots,
};
use lehmer_core::padic::count_roots_unramified;
use lehmer_core::poly::{discriminant, discriminant_i128, is_irreducible_over_q, Verdict};
use lehmer_core::IntPoly;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

pub const SUITES: [&str; 5] = ["heights", "padic", "bounds", "mignotte", "all"];

/// Frozen from an independent 256-bit root computation.
pub const LEHMER_HEIGHT: f64 = 0.01623576120077381394321988035549658077079;
pub const LEHMER_MAHLER: f64 = 1.176280818259917506544070338474035050693;
pub const SCHINZEL_CONSTANT: f64 = 0.240605912529801723748879456712;
/// Allowance on `log |D|` comparisons, for cases of exact equality.
pub const LOG_SLACK: f64 = 1e-9;
const LEHMER: [i64; 11] = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub worst_margin: f64,
    pub worst_case: String,
    pub notes: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            worst_margin: f64::INFINITY,
            worst_case: String::new(),
            notes: Vec::new(),
        }
    }

    /// Records one case; a negative margin counts as a failure.
    fn observe(&mut self, margin: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        let bad = margin < 0.0 || margin.is_nan();
        if bad {
            self.failures += 1;
        }
        if margin < self.worst_margin || (bad && self.worst_margin >= 0.0) {
            self.worst_margin = margin;
            self.worst_case = case();
            if bad && self.notes.len() < 5 {
                self.notes.push(format!("failed: {}", self.worst_case));
            }
        }
    }

    fn fail(&mut self, case: String) {
        self.observe(-1.0, || case);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures, worst margin {:.3e} at {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures,
            self.worst_margin,
            if self.worst_case.is_empty() { "-" } else { &self.worst_case }
        )?;
        for n in &self.notes {
            write!(f, "\n    {n}")?;
        }
        Ok(())
    }
}

fn poly_str(c: &[i64]) -> String {
    IntPoly::from_i64s(c).to_string()
}

/// `log M` with the fast path first.
fn log_mahler(c: &[i64]) -> CliResult<(f64, f64)> {
    if let Some(v) = log_mahler_fast(c) {
        return Ok(v);
    }
    let h = mahler_height(&IntPoly::from_i64s(c))?;
    Ok((h.log_mahler, h.log_mahler_error))
}

fn irreducible(c: &[i64]) -> CliResult<bool> {
    let v = is_irreducible_over_q(&IntPoly::from_i64s(c))?.verdict;
    Ok(matches!(v, Verdict::Irreducible | Verdict::DegreeOne))
}

/// `h(x^d - 2) = (log 2) / d` to within `1e-9`.
pub fn height_identity(d_max: usize) -> CliResult<Check> {
    let mut chk = Check::new("height of x^d - 2");
    for d in 1..=d_max {
        let mut c = vec![0i64; d + 1];
        c[0] = -2;
        c[d] = 1;
        let h = mahler_height(&IntPoly::from_i64s(&c))?.height;
        let err = (h - 2f64.ln() / d as f64).abs();
        chk.observe(1e-9 - err, || format!("d = {d}: |h - log 2/d| = {err:e}"));
    }
    Ok(chk)
}

/// Over monic irreducible polynomials, `h = 0` exactly for roots of unity.
pub fn kronecker(d_max: usize, bound: i64) -> CliResult<Check> {
    let mut chk = Check::new("h = 0 iff root of unity");
    for c in Family::new(1, d_max, bound, true).iter() {
        if !irreducible(&c)? {
            continue;
        }
        let (lm, err) = log_mahler(&c)?;
        let h = lm / (c.len() - 1) as f64;
        let zero = h.abs() <= 1e-9;
        let torsion = is_torsion(&IntPoly::from_i64s(&c));
        // margin: distance of h from the 1e-9 cut on the side the verdict requires
        let margin = if torsion { 1e-9 - h.abs() - err } else { h - 1e-9 };
        if zero != torsion {
            chk.fail(format!("{}: h = {h:e}, torsion = {torsion}", poly_str(&c)));
        } else {
            chk.observe(margin, || poly_str(&c));
        }
    }
    Ok(chk)
}

/// Smallest height among totally real monic quadratics avoiding roots
/// `0, 1, -1`, which should be attained at `x^2 - x - 1`.
pub fn schinzel(bound: i64) -> CliResult<Check> {
    let mut chk = Check::new("Schinzel quadratic minimum");
    let mut best: Option<(f64, Vec<i64>)> = None;
    let mut at_golden = None;
    for b in -bound..=bound {
        for c in -bound..=bound {
            if b * b - 4 * c <= 0 || c == 0 || 1 + b + c == 0 || 1 - b + c == 0 {
                continue;
            }
            let h = mahler_height(&IntPoly::from_i64s(&[c, b, 1]))?.height;
            chk.observe(h - SCHINZEL_CONSTANT + 1e-6, || poly_str(&[c, b, 1]));
            if (b, c) == (-1, -1) {
                at_golden = Some(h);
            }
            if best.as_ref().is_none_or(|(m, _)| h < *m) {
                best = Some((h, vec![c, b, 1]));
            }
        }
    }
    let (m, _) = best.unwrap_or((f64::NAN, Vec::new()));
    let golden = at_golden.unwrap_or(f64::NAN);
    chk.observe(1e-6 - (m - SCHINZEL_CONSTANT).abs(), || format!("minimum {m}"));
    chk.observe(1e-12 - (golden - m).abs(), || format!("x^2-x-1 at {golden}, minimum {m}"));
    chk.notes.push(format!("minimum height {m}"));
    Ok(chk)
}

/// `|D| <= d^d M^(2d-2)` over primitive squarefree polynomials, roots at 0
/// included. Only positive leading coefficients are visited, since `f` and
/// `-f` have the same discriminant and measure.
pub fn mahler_inequality(d_max: usize, bound: i64) -> CliResult<Check> {
    let mut chk = Check::new("Mahler discriminant inequality");
    let fam = Family::new(1, d_max, bound, false);
    for i in 0..fam.size()? {
        let Some(c) = fam.tuple(i) else { break };
        if c.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            continue;
        }
        let log_disc = match discriminant_i128(&c) {
            Some(0) => continue,
            Some(v) => (v.unsigned_abs() as f64).ln(),
            None => {
                let disc = discriminant(&IntPoly::from_i64s(&c))?;
                if disc == 0.into() {
                    continue;
                }
                lehmer_core::bounds::log_abs(&disc)
            }
        };
        let (lm, err) = log_mahler(&c)?;
        let m = mahler_margin(c.len() - 1, log_disc, lm, err);
        // equality holds for x^n - 1 and in degree 1
        chk.observe(m.margin_lower + LOG_SLACK, || poly_str(&c));
    }
    Ok(chk)
}

/// Lehmer's polynomial against the frozen value and a fixed 256-bit pass.
pub fn lehmer_regression() -> CliResult<Check> {
    let mut chk = Check::new("Lehmer polynomial height");
    let f = IntPoly::from_i64s(&LEHMER);
    let h = mahler_height(&f)?;
    chk.observe(1e-9 - (h.height - LEHMER_HEIGHT).abs(), || format!("h = {}", h.height));
    chk.observe(1e-9 - (h.mahler - LEHMER_MAHLER).abs(), || format!("M = {}", h.mahler));
    let fixed = mahler_height_at_precision(&f, 256)?;
    chk.observe(1e-9 - (fixed.height - LEHMER_HEIGHT).abs(), || {
        format!("256-bit h = {}", fixed.height)
    });
    Ok(chk)
}

/// Level-1 counts and residues of constructed polynomials, plus the level-2
/// count when the rootless factor is quadratic.
pub fn planted_roots(cases: usize, seed: u64) -> CliResult<Check> {
    let mut chk = Check::new("planted p-adic roots");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [2u64, 3, 5];
    for i in 0..cases {
        let p = primes[i % primes.len()];
        let pl = planted_instance(&mut rng, p);
        let s1 = count_roots_unramified(&pl.poly, p, 1)?;
        let residues: std::collections::BTreeMap<u64, usize> = s1
            .residue_histogram
            .iter()
            .map(|(x, &n)| (x.coeffs()[0] as u64, n))
            .collect();
        let s2 = count_roots_unramified(&pl.poly, p, 2)?;
        let want2 = pl.roots.len() + if pl.tail_degree == 2 { 2 } else { 0 };
        let ok = s1.integral_count == pl.roots.len()
            && s1.nonintegral_count == 0
            && residues == pl.residues(p)
            && s2.membership_count == want2;
        if ok {
            chk.observe(0.0, String::new);
        } else {
            chk.fail(format!("{} at p = {p}", pl.poly));
        }
    }
    Ok(chk)
}

/// Level-1 counts against the branch-tree oracle on random instances.
pub fn naive_lifting(per_prime: usize, seed: u64) -> CliResult<Check> {
    let mut chk = Check::new("naive lifting oracle");
    for p in [2u64, 3, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut deep = 0;
        for _ in 0..per_prime {
            let f = random_instance(&mut rng, p);
            let stats = count_roots_unramified(&f, p, 1)?;
            deep += (stats.max_depth > 0) as usize;
            let got: std::collections::BTreeMap<u64, usize> = stats
                .residue_histogram
                .iter()
                .map(|(x, &n)| (x.coeffs()[0] as u64, n))
                .collect();
            match naive_level1(&f, p) {
                Some(n) if n.integral == stats.integral_count && n.nonintegral == stats.nonintegral_count && n.residues == got => {
                    chk.observe(0.0, String::new)
                }
                Some(n) => chk.fail(format!("{f} at p = {p}: oracle {n:?}, library {stats:?}")),
                None => chk.fail(format!("{f} at p = {p}: oracle did not terminate")),
            }
        }
        chk.notes.push(format!("p = {p}: {deep} instances needed Hensel recursion"));
    }
    Ok(chk)
}

/// Proof inequality and bound safety over one corpus, which is analyzed once.
pub fn corpus_checks(d_max: usize, bound: i64, opts: &AnalyzeOptions) -> CliResult<(Check, Check)> {
    let mut proof = Check::new("discriminant valuation inequality");
    let mut safety = Check::new("bound safety");
    let slack = 1e-9;
    for c in Family::new(1, d_max, bound, false).iter() {
        if !irreducible(&c)? {
            continue;
        }
        let f = IntPoly::from_i64s(&c);
        let r = analyze(&f, opts)?;
        for l in &r.levels {
            proof.observe(l.proof.margin as f64, || format!("{f} at p = {}, f = {}", l.prime, l.level));
        }
        if r.vacuous() {
            continue;
        }
        let h_hi = r.height.height + r.height.height_error;
        let best = r.bound_values().into_iter().map(|(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
        safety.observe(h_hi + slack - best, || format!("{f}"));
        if let (Some(e), Some(c1)) = (r.exact_disc, r.cor1) {
            safety.observe(e - c1 + slack, || format!("{f}: exact_disc below cor1"));
        }
    }
    Ok((proof, safety))
}

/// Prop-1.2 and Cor-1.3 required counts on the reference parameters.
pub fn threshold_regression() -> CliResult<Check> {
    let mut chk = Check::new("threshold regression");
    let k3 = LocalFieldDescriptor::unramified(3, 1)?;
    let k2 = LocalFieldDescriptor::unramified(2, 1)?;
    let p = prop2_threshold(100, &k3, 2f64.ln())?;
    chk.observe(if p.required_count == 51 { 0.0 } else { -1.0 }, || format!("prop2 requires {}", p.required_count));
    let g = cor_i_member(100, &k2, 0)?.threshold;
    chk.observe(if g.required_count == 61 { 0.0 } else { -1.0 }, || format!("growth requires {}", g.required_count));
    let g2 = cor_i_member(2, &k2, 0)?.threshold;
    chk.observe(if g2.feasible { -1.0 } else { 0.0 }, || format!("growth at d = 2 feasible: {}", g2.feasible));
    chk.notes.push(format!(
        "prop2(100, 3) = {:.4}, growth(100, 2) = {:.4}, growth(2, 2) = {:.4}",
        p.threshold, g.threshold, g2.threshold
    ));
    Ok(chk)
}

/// Remark bound and Pottmeyer's constant for monic irreducible polynomials
/// that split completely over `Q_p`.
pub fn totally_p_adic(d_max: usize, bound: i64) -> CliResult<Check> {
    let mut chk = Check::new("totally p-adic bounds");
    let mut per_prime = [0usize; 3];
    for c in Family::new(2, d_max, bound, true).iter() {
        if !irreducible(&c)? {
            continue;
        }
        let f = IntPoly::from_i64s(&c);
        let mut split = Vec::new();
        for p in [2u64, 3, 5] {
            // every root is in Z_p, so the polynomial splits into linear factors mod p
            if count_roots_unramified(&f, p, 1)?.membership_count == f.deg() {
                split.push(p);
            }
        }
        if split.is_empty() || is_torsion(&f) {
            continue;
        }
        let h = mahler_height(&f)?;
        let h_hi = h.height + h.height_error;
        for p in split {
            per_prime[[2, 3, 5].iter().position(|&q| q == p).unwrap_or(0)] += 1;
            let remark = totally_p_adic_bound(p, f.deg());
            chk.observe(h_hi - remark, || format!("{f} at p = {p}: remark"));
            chk.observe(h_hi + 1e-9 - pottmeyer_constant(p), || format!("{f} at p = {p}: Pottmeyer"));
        }
    }
    chk.notes.push(format!(
        "totally split polynomials: {} at 2, {} at 3, {} at 5",
        per_prime[0], per_prime[1], per_prime[2]
    ));
    Ok(chk)
}

/// Sector discrepancy on a `starts x widths` grid, and over all sectors.
pub fn mignotte_grid(d_max: usize, bound: i64, starts: usize, widths: usize) -> CliResult<Check> {
    let mut chk = Check::new("Mignotte sector inequality");
    for c in Family::new(1, d_max, bound, false).iter() {
        if !irreducible(&c)? {
            continue;
        }
        let f = IntPoly::from_i64s(&c);
        let (lm, err) = log_mahler(&c)?;
        // the right side grows with h, so the lower end of its interval is safe
        let h = ((lm - err) / f.deg() as f64).max(0.0);
        let roots = complex_roots(&f, 1e-6)?;
        let rep = mignotte_with_roots(&roots, f.deg(), h, starts, widths)?;
        chk.observe(rep.worst_margin, || format!("{f}"));
        // every sector, not just the grid; centers are accurate to 1e-6
        chk.observe(rep.rhs - rep.supremum - 1e-3, || format!("{f}: all sectors"));
    }
    Ok(chk)
}

/// Sizes of the enumerations used by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

pub fn run_suite(name: &str, scale: Scale, seed: u64) -> CliResult<Vec<Check>> {
    let full = scale == Scale::Full;
    let corpus = |opts: &AnalyzeOptions| {
        if full {
            corpus_checks(5, 4, opts)
        } else {
            corpus_checks(3, 3, opts)
        }
    };
    let opts = AnalyzeOptions {
        seed,
        ..AnalyzeOptions::default()
    };
    let heights = || -> CliResult<Vec<Check>> {
        Ok(vec![
            height_identity(20)?,
            if full { kronecker(6, 3)? } else { kronecker(4, 2)? },
            schinzel(20)?,
            if full { mahler_inequality(6, 5)? } else { mahler_inequality(4, 3)? },
            lehmer_regression()?,
        ])
    };
    let padic = || -> CliResult<Vec<Check>> {
        Ok(vec![
            planted_roots(200, seed)?,
            if full { naive_lifting(100, seed)? } else { naive_lifting(30, seed)? },
        ])
    };
    let bounds = || -> CliResult<Vec<Check>> {
        Ok(vec![
            threshold_regression()?,
            if full { totally_p_adic(4, 8)? } else { totally_p_adic(3, 6)? },
        ])
    };
    let mignotte = || -> CliResult<Vec<Check>> {
        Ok(vec![if full { mignotte_grid(6, 3, 64, 16)? } else { mignotte_grid(4, 2, 64, 16)? }])
    };
    Ok(match name {
        "heights" => heights()?,
        "padic" => {
            let mut v = padic()?;
            v.push(corpus(&opts)?.0);
            v
        }
        "bounds" => {
            let mut v = bounds()?;
            v.push(corpus(&opts)?.1);
            v
        }
        "mignotte" => mignotte()?,
        "all" => {
            let (proof, safety) = corpus(&opts)?;
            let mut v = heights()?;
            v.extend(padic()?);
            v.push(proof);
            v.extend(bounds()?);
            v.push(safety);
            v.extend(mignotte()?);
            v
        }
        other => return invalid(format!("unknown suite '{other}' (expected one of {})", SUITES.join(", "))),
    })
}

/// Candidate polynomials checked for irreducibility; used by tests.
pub fn irreducible_members(fam: &Family) -> CliResult<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for c in fam.iter() {
        if admissible(&c) && irreducible(&c)? {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        for chk in [
            height_identity(5).unwrap(),
            kronecker(3, 2).unwrap(),
            schinzel(5).unwrap(),
            mahler_inequality(3, 2).unwrap(),
            lehmer_regression().unwrap(),
            planted_roots(30, 1).unwrap(),
            naive_lifting(10, 1).unwrap(),
            threshold_regression().unwrap(),
            totally_p_adic(2, 6).unwrap(),
            mignotte_grid(3, 2, 8, 4).unwrap(),
        ] {
            assert!(chk.passed(), "{chk}");
        }
    }

    #[test]
    fn corpus_pass_is_clean() {
        let (a, b) = corpus_checks(2, 2, &AnalyzeOptions::default()).unwrap();
        assert!(a.passed() && b.passed(), "{a}\n{b}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", Scale::Quick, 0).is_err());
    }

    #[test]
    fn irreducible_monic_quadratics() {
        let q = irreducible_members(&Family::new(2, 2, 2, true)).unwrap();
        assert_eq!(q.len(), 15);
    }
}
