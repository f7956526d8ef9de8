//! One line per analyzed polynomial, as space-separated `key=value` fields.
//!
//! ```text
//! poly=[-1,-1,1] deg=2 h=0.2406... h_err=... M=1.618... M_err=... irr=irreducible
//! torsion=0 vacuous=0 info=0 thm1=... prop2=0,0,... thm3=... cor1=... exact_disc=...
//! mahler_margin=... proof_margin=3 violations=0 p2=mem:0,0,0;int:...
//! ```
//!
//! Per-prime values hold, separated by `;`: membership, integral and
//! nonintegral counts per level, exact-generator counts per level, the
//! unaccounted count, the ramified-or-deep flag, `ord_p` of the
//! discriminant, and the residue histogram of each level. Histogram entries
//! are `c0.c1..xN` (residue coefficients, multiplicity), levels split by `/`.

use crate::error::{invalid, CliError, CliResult};
use lehmer_core::bounds::BoundReport;
use lehmer_core::poly::Verdict;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalSummary {
    pub prime: u64,
    pub membership: Vec<usize>,
    pub integral: Vec<usize>,
    pub nonintegral: Vec<usize>,
    pub generators: Vec<usize>,
    pub unaccounted: usize,
    pub flag: bool,
    pub ord_p_disc: u64,
    pub histograms: Vec<BTreeMap<Vec<u32>, usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub polynomial: String,
    pub degree: usize,
    pub height: f64,
    pub height_error: f64,
    pub mahler: f64,
    pub mahler_error: f64,
    pub irreducibility: String,
    pub torsion: bool,
    pub vacuous: bool,
    /// Some bound is positive.
    pub informative: bool,
    /// Single-field bounds in prime-major, level-minor order.
    pub thm1: Vec<f64>,
    pub prop2: Vec<bool>,
    pub thm3: Option<f64>,
    pub cor1: Option<f64>,
    pub exact_disc: Option<f64>,
    pub mahler_margin: f64,
    pub proof_margin: i64,
    pub violations: usize,
    pub local: Vec<LocalSummary>,
    /// Wall time of the analysis; omitted from scan output so that streams
    /// are reproducible.
    pub micros: Option<u64>,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Irreducible => "irreducible",
        Verdict::Reducible => "reducible",
        Verdict::DegreeOne => "degree-one",
        Verdict::Unverified => "unverified",
    }
}

/// Slack used when comparing bounds against the height.
pub const SAFETY_SLACK: f64 = 1e-9;

impl ResultRecord {
    pub fn from_report(r: &BoundReport, micros: Option<u64>) -> Self {
        let local = r
            .profiles
            .iter()
            .map(|prof| {
                let per = |g: &dyn Fn(&lehmer_core::padic::UnramifiedLevelStats) -> usize| {
                    prof.levels.iter().map(g).collect::<Vec<_>>()
                };
                LocalSummary {
                    prime: prof.prime,
                    membership: per(&|s| s.membership_count),
                    integral: per(&|s| s.integral_count),
                    nonintegral: per(&|s| s.nonintegral_count),
                    generators: prof
                        .levels
                        .iter()
                        .map(|s| prof.exact_generator_counts.get(&s.level).copied().unwrap_or(0))
                        .collect(),
                    unaccounted: prof.unaccounted_count,
                    flag: prof.ramified_or_deep_flag,
                    ord_p_disc: prof.ord_p_disc,
                    histograms: prof
                        .levels
                        .iter()
                        .map(|s| {
                            s.residue_histogram
                                .iter()
                                .map(|(x, &n)| (x.coeffs()[..s.level as usize].to_vec(), n))
                                .collect()
                        })
                        .collect(),
                }
            })
            .collect();
        ResultRecord {
            polynomial: r.polynomial.to_list_string(),
            degree: r.degree,
            height: r.height.height,
            height_error: r.height.height_error,
            mahler: r.height.mahler,
            mahler_error: r.height.mahler_error,
            irreducibility: verdict_name(r.irreducibility).to_string(),
            torsion: r.flags.torsion,
            vacuous: r.vacuous(),
            informative: r.informative(),
            thm1: r.levels.iter().map(|l| l.thm1).collect(),
            prop2: r.levels.iter().map(|l| l.prop2_member).collect(),
            thm3: r.thm3,
            cor1: r.cor1,
            exact_disc: r.exact_disc,
            mahler_margin: r.mahler.margin_lower,
            proof_margin: r.levels.iter().map(|l| l.proof.margin).min().unwrap_or(0),
            violations: r.violations(SAFETY_SLACK).len(),
            local,
            micros,
        }
    }

    /// Coefficients parsed from the canonical polynomial string.
    pub fn coefficients(&self) -> Option<Vec<i64>> {
        let inner = self.polynomial.strip_prefix('[')?.strip_suffix(']')?;
        inner.split(',').map(|t| t.parse().ok()).collect()
    }

    /// Largest single bound value, over the theorems reported.
    pub fn best_bound(&self) -> f64 {
        self.thm1
            .iter()
            .copied()
            .chain(self.thm3)
            .chain(self.cor1)
            .chain(self.exact_disc)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_line(&self) -> String {
        let mut s = String::new();
        let b = |x: bool| if x { "1" } else { "0" };
        let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| v.to_string());
        write!(
            s,
            "poly={} deg={} h={} h_err={} M={} M_err={} irr={} torsion={} vacuous={} info={}",
            self.polynomial,
            self.degree,
            self.height,
            self.height_error,
            self.mahler,
            self.mahler_error,
            self.irreducibility,
            b(self.torsion),
            b(self.vacuous),
            b(self.informative)
        )
        .unwrap();
        write!(
            s,
            " thm1={} prop2={} thm3={} cor1={} exact_disc={} mahler_margin={} proof_margin={} violations={}",
            join(&self.thm1),
            self.prop2.iter().map(|&x| b(x)).collect::<Vec<_>>().join(","),
            opt(self.thm3),
            opt(self.cor1),
            opt(self.exact_disc),
            self.mahler_margin,
            self.proof_margin,
            self.violations
        )
        .unwrap();
        for l in &self.local {
            let hist = l
                .histograms
                .iter()
                .map(|h| {
                    h.iter()
                        .map(|(k, n)| format!("{}x{n}", join(k).replace(',', ".")))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
                .join("/");
            write!(
                s,
                " p{}=mem:{};int:{};non:{};gen:{};una:{};flag:{};ord:{};hist:{}",
                l.prime,
                join(&l.membership),
                join(&l.integral),
                join(&l.nonintegral),
                join(&l.generators),
                l.unaccounted,
                b(l.flag),
                l.ord_p_disc,
                hist
            )
            .unwrap();
        }
        if let Some(us) = self.micros {
            write!(s, " us={us}").unwrap();
        }
        s
    }

    pub fn parse_line(line: &str) -> CliResult<Self> {
        let mut fields = BTreeMap::new();
        let mut local = Vec::new();
        for tok in line.split_whitespace() {
            let Some((k, v)) = tok.split_once('=') else {
                return invalid(format!("field without '=': {tok}"));
            };
            if let Some(p) = k.strip_prefix('p').and_then(|p| p.parse::<u64>().ok()) {
                local.push(parse_local(p, v)?);
            } else if fields.insert(k, v).is_some() {
                return invalid(format!("duplicate field {k}"));
            }
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| CliError::Invalid(format!("missing field {k}")));
        let flag = |k: &str| -> CliResult<bool> {
            match get(k)? {
                "0" => Ok(false),
                "1" => Ok(true),
                v => invalid(format!("bad flag {k}={v}")),
            }
        };
        let opt = |k: &str| -> CliResult<Option<f64>> {
            match get(k)? {
                "-" => Ok(None),
                v => num(v).map(Some),
            }
        };
        let prop2 = match get("prop2")? {
            "" => Vec::new(),
            v => v
                .split(',')
                .map(|x| match x {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => invalid(format!("bad prop2 entry {x}")),
                })
                .collect::<CliResult<_>>()?,
        };
        Ok(ResultRecord {
            polynomial: get("poly")?.to_string(),
            degree: num(get("deg")?)?,
            height: num(get("h")?)?,
            height_error: num(get("h_err")?)?,
            mahler: num(get("M")?)?,
            mahler_error: num(get("M_err")?)?,
            irreducibility: get("irr")?.to_string(),
            torsion: flag("torsion")?,
            vacuous: flag("vacuous")?,
            informative: flag("info")?,
            thm1: list(get("thm1")?)?,
            prop2,
            thm3: opt("thm3")?,
            cor1: opt("cor1")?,
            exact_disc: opt("exact_disc")?,
            mahler_margin: num(get("mahler_margin")?)?,
            proof_margin: num(get("proof_margin")?)?,
            violations: num(get("violations")?)?,
            local,
            micros: fields.get("us").map(|v| num(v)).transpose()?,
        })
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn num<T: std::str::FromStr>(s: &str) -> CliResult<T> {
    s.parse().or_else(|_| invalid(format!("bad number '{s}'")))
}

fn list<T: std::str::FromStr>(s: &str) -> CliResult<Vec<T>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(num).collect()
}

fn parse_local(prime: u64, v: &str) -> CliResult<LocalSummary> {
    let mut parts = BTreeMap::new();
    for part in v.split(';') {
        let Some((k, x)) = part.split_once(':') else {
            return invalid(format!("bad local field '{part}'"));
        };
        parts.insert(k, x);
    }
    let get = |k: &str| parts.get(k).copied().ok_or_else(|| CliError::Invalid(format!("missing local field {k}")));
    let membership: Vec<usize> = list(get("mem")?)?;
    let histograms = get("hist")?
        .split('/')
        .map(|level| {
            let mut h = BTreeMap::new();
            if !level.is_empty() {
                for e in level.split(',') {
                    let Some((k, n)) = e.split_once('x') else {
                        return invalid(format!("bad histogram entry '{e}'"));
                    };
                    h.insert(k.split('.').map(num).collect::<CliResult<Vec<u32>>>()?, num(n)?);
                }
            }
            Ok(h)
        })
        .collect::<CliResult<Vec<_>>>()?;
    if histograms.len() != membership.len() {
        return invalid("histogram count does not match level count");
    }
    Ok(LocalSummary {
        prime,
        membership,
        integral: list(get("int")?)?,
        nonintegral: list(get("non")?)?,
        generators: list(get("gen")?)?,
        unaccounted: num(get("una")?)?,
        flag: get("flag")? == "1",
        ord_p_disc: num(get("ord")?)?,
        histograms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lehmer_core::bounds::{analyze, AnalyzeOptions};
    use lehmer_core::IntPoly;

    fn record(c: &[i64]) -> ResultRecord {
        let r = analyze(&IntPoly::from_i64s(c), &AnalyzeOptions::default()).unwrap();
        ResultRecord::from_report(&r, None)
    }

    #[test]
    fn round_trip() {
        for c in [
            vec![-1, -1, 1],
            vec![1, 1, 1],
            vec![1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1],
            vec![3, 0, 2],
            vec![-6, 11, -6, 1, 0, 1],
            vec![2, -1],
        ] {
            let r = record(&c);
            let line = r.to_line();
            assert_eq!(ResultRecord::parse_line(&line).unwrap(), r, "{line}");
            assert_eq!(r.coefficients().unwrap(), c);
        }
        let mut r = record(&[1, 0, 1]);
        r.micros = Some(1234);
        assert_eq!(ResultRecord::parse_line(&r.to_line()).unwrap(), r);
    }

    #[test]
    fn golden_ratio_fields() {
        let r = record(&[-1, -1, 1]);
        assert!((r.height - 0.240_605_912_529_801_74).abs() < 1e-12);
        assert!(!r.torsion && r.violations == 0);
        // disc 5: a double root mod 5 that does not lift to Q_5
        let p5 = r.local.iter().find(|l| l.prime == 5).unwrap();
        assert_eq!(p5.membership[0], 0);
        assert!(p5.flag);
    }

    #[test]
    fn malformed_lines() {
        assert!(ResultRecord::parse_line("poly=[1,1]").is_err());
        assert!(ResultRecord::parse_line("garbage").is_err());
        let line = record(&[-1, -1, 1]).to_line();
        assert!(ResultRecord::parse_line(&line.replace("deg=2", "deg=two")).is_err());
    }
}
