use crate::error::{invalid, CliResult};
use lehmer_core::bounds::AnalyzeOptions;
use lehmer_core::ff::DEFAULT_SPLIT_SEED;
use lehmer_core::heights::DEFAULT_TOLERANCE;
use lehmer_core::poly::is_prime_u64;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

pub const ARTIFACT_VERSION: &str = concat!("lehmer-scan/", env!("CARGO_PKG_VERSION"));
pub const HEADER_PREFIX: &str = "#run ";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub degree_min: usize,
    pub degree_max: usize,
    pub coef_bound: u64,
    pub monic: bool,
    pub primes: Vec<u64>,
    pub f_max: u32,
    pub c: f64,
    pub tolerance: f64,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            degree_min: 1,
            degree_max: 4,
            coef_bound: 3,
            monic: false,
            primes: vec![2, 3, 5, 7],
            f_max: 3,
            c: 2f64.ln(),
            tolerance: DEFAULT_TOLERANCE,
            out: None,
            workers: 1,
            seed: DEFAULT_SPLIT_SEED,
        }
    }
}

/// The part of a configuration that determines the record stream. Output
/// location and worker count are excluded, so runs differing only in those
/// produce identical files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunHeader {
    pub version: String,
    pub degree_min: usize,
    pub degree_max: usize,
    pub coef_bound: u64,
    pub monic: bool,
    pub primes: Vec<u64>,
    pub f_max: u32,
    pub c: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl RunHeader {
    pub fn to_line(&self) -> String {
        format!("{HEADER_PREFIX}{}", serde_json::to_string(self).expect("header serializes"))
    }

    pub fn parse_line(line: &str) -> CliResult<Self> {
        let Some(body) = line.strip_prefix(HEADER_PREFIX) else {
            return invalid("output file does not start with a run header");
        };
        serde_json::from_str(body).or_else(|e| invalid(format!("unreadable run header: {e}")))
    }
}

impl ScanConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.degree_min == 0 {
            return invalid("degrees start at 1");
        }
        if self.degree_min > self.degree_max {
            return invalid(format!("empty degree range {}..{}", self.degree_min, self.degree_max));
        }
        if self.coef_bound == 0 {
            return invalid("coefficient bound must be positive");
        }
        if self.primes.is_empty() {
            return invalid("prime set is empty");
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime_u64(p)) {
            return invalid(format!("{p} is not prime"));
        }
        if !(1..=3).contains(&self.f_max) {
            return invalid("f_max must be 1, 2 or 3");
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return invalid("c must be positive");
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return invalid("tolerance must be positive");
        }
        if self.workers == 0 {
            return invalid("worker count must be positive");
        }
        crate::enumerate::Family::from_config(self).size()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> CliResult<Self> {
        serde_json::from_str(s).or_else(|e| invalid(format!("bad configuration: {e}")))
    }

    pub fn header(&self) -> RunHeader {
        RunHeader {
            version: ARTIFACT_VERSION.to_string(),
            degree_min: self.degree_min,
            degree_max: self.degree_max,
            coef_bound: self.coef_bound,
            monic: self.monic,
            primes: self.primes.clone(),
            f_max: self.f_max,
            c: self.c,
            tolerance: self.tolerance,
            seed: self.seed,
        }
    }

    pub fn analyze_options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            primes: self.primes.clone(),
            f_max: self.f_max,
            c: self.c,
            tolerance: self.tolerance,
            seed: self.seed,
        }
    }
}

/// Parses `A..B` (inclusive) or a single degree.
pub fn parse_degree_range(s: &str) -> CliResult<(usize, usize)> {
    let num = |t: &str| t.trim().parse::<usize>().or_else(|_| invalid(format!("bad degree '{t}'")));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let d = num(s)?;
            (d, d)
        }
    };
    if a == 0 || a > b {
        return invalid(format!("empty degree range '{s}'"));
    }
    Ok((a, b))
}

pub fn parse_primes(s: &str) -> CliResult<Vec<u64>> {
    let primes = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().or_else(|_| invalid(format!("bad prime '{t}'"))))
        .collect::<CliResult<Vec<_>>>()?;
    if let Some(p) = primes.iter().find(|&&p| !is_prime_u64(p)) {
        return invalid(format!("{p} is not prime"));
    }
    Ok(primes)
}
