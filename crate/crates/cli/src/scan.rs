use crate::config::{RunHeader, ScanConfig};
use crate::enumerate::{admissible, Family};
use crate::error::{invalid, CliResult};
use crate::record::ResultRecord;
use crate::summary::Summary;
use lehmer_core::bounds::{analyze, AnalyzeOptions};
use lehmer_core::poly::{is_irreducible_seeded, Verdict, DEFAULT_RECOMBINATION_BUDGET};
use lehmer_core::IntPoly;
use rayon::prelude::*;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::time::Instant;

/// Polynomials analyzed per parallel batch; also the size of the reorder
/// buffer in front of the writer.
const BATCH: u64 = 256;

#[derive(Clone, Debug, Default)]
pub struct ScanControl {
    /// Record wall time per polynomial (breaks byte-reproducibility).
    pub timing: bool,
    /// Simulate a crash: write this many records, then half of the next
    /// line, and stop.
    pub stop_after: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanOutcome {
    pub summary: Summary,
    pub completed: bool,
    pub resumed_from: Option<u64>,
}

/// Analyzes the polynomial at canonical index `idx`; `None` when it is not
/// admissible, is reducible, or its irreducibility could not be settled
/// within the work budget.
pub fn analyze_index(fam: &Family, idx: u64, opts: &AnalyzeOptions, timing: bool) -> CliResult<Option<ResultRecord>> {
    let Some(c) = fam.tuple(idx) else {
        return Ok(None);
    };
    if !admissible(&c) {
        return Ok(None);
    }
    let start = Instant::now();
    let f = IntPoly::from_i64s(&c);
    match is_irreducible_seeded(&f, DEFAULT_RECOMBINATION_BUDGET, opts.seed)?.verdict {
        Verdict::Reducible | Verdict::Unverified => return Ok(None),
        Verdict::Irreducible | Verdict::DegreeOne => {}
    }
    let report = analyze(&f, opts)?;
    let us = timing.then(|| start.elapsed().as_micros() as u64);
    Ok(Some(ResultRecord::from_report(&report, us)))
}

/// Reads an existing output file, drops a trailing partial line, and
/// returns its records. Fails if the header belongs to another run.
fn recover(path: &std::path::Path, header: &RunHeader) -> CliResult<Option<Vec<ResultRecord>>> {
    let mut text = String::new();
    match File::open(path) {
        Ok(mut f) => f.read_to_string(&mut text)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let Some(end) = text.rfind('\n') else {
        return Ok(None);
    };
    let complete = &text[..=end];
    let mut lines = complete.lines();
    let found = RunHeader::parse_line(lines.next().unwrap_or(""))?;
    if &found != header {
        return invalid(format!("{} was written by a different run configuration", path.display()));
    }
    let records = lines.map(ResultRecord::parse_line).collect::<CliResult<Vec<_>>>()?;
    if complete.len() < text.len() {
        OpenOptions::new().write(true).open(path)?.set_len(complete.len() as u64)?;
    }
    Ok(Some(records))
}

pub fn run_scan(cfg: &ScanConfig, ctl: &ScanControl) -> CliResult<ScanOutcome> {
    cfg.validate()?;
    let header = cfg.header();
    let fam = Family::from_config(cfg);
    let (mut records, mut sink, resumed_from): (Vec<ResultRecord>, Box<dyn Write>, _) = match &cfg.out {
        Some(path) => match recover(path, &header)? {
            Some(old) => {
                let next = match old.last() {
                    Some(r) => {
                        let c = r.coefficients().ok_or_else(|| crate::error::CliError::Invalid("bad record".into()))?;
                        fam.index_of(&c)
                            .ok_or_else(|| crate::error::CliError::Invalid("record outside the family".into()))?
                            + 1
                    }
                    None => 0,
                };
                let file = OpenOptions::new().append(true).open(path)?;
                (old, Box::new(BufWriter::new(file)), Some(next))
            }
            None => {
                let mut file = BufWriter::new(File::create(path)?);
                writeln!(file, "{}", header.to_line())?;
                (Vec::new(), Box::new(file), None)
            }
        },
        None => {
            let mut out = BufWriter::new(std::io::stdout());
            writeln!(out, "{}", header.to_line())?;
            (Vec::new(), Box::new(out), None)
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| crate::error::CliError::Internal(e.to_string()))?;
    let opts = cfg.analyze_options();
    let total = fam.size()?;
    let mut written = 0u64;
    let mut lo = resumed_from.unwrap_or(0);
    while lo < total {
        let hi = (lo + BATCH * cfg.workers as u64).min(total);
        let batch: Vec<CliResult<Option<ResultRecord>>> = pool.install(|| {
            (lo..hi)
                .into_par_iter()
                .map(|i| analyze_index(&fam, i, &opts, ctl.timing))
                .collect()
        });
        for r in batch {
            let Some(rec) = r? else { continue };
            let line = rec.to_line();
            if ctl.stop_after == Some(written) {
                sink.write_all(line[..line.len() / 2].as_bytes())?;
                sink.flush()?;
                let candidates = fam.iter().count() as u64;
                return Ok(ScanOutcome {
                    summary: Summary::from_records(candidates, &records),
                    completed: false,
                    resumed_from,
                });
            }
            writeln!(sink, "{line}")?;
            records.push(rec);
            written += 1;
        }
        sink.flush()?;
        lo = hi;
    }
    sink.flush()?;
    let candidates = fam.iter().count() as u64;
    Ok(ScanOutcome {
        summary: Summary::from_records(candidates, &records),
        completed: true,
        resumed_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_quadratic_counts() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ScanConfig {
            degree_min: 2,
            degree_max: 2,
            coef_bound: 2,
            monic: true,
            out: Some(dir.path().join("q.txt")),
            ..Default::default()
        };
        let out = run_scan(&cfg, &ScanControl::default()).unwrap();
        assert_eq!(out.summary.candidates, 20);
        // reducible: (x-1)(x+1), (x+1)(x-2), (x-1)(x+2), (x-1)^2, (x+1)^2
        assert_eq!(out.summary.records, 15);
        assert_eq!(out.summary.excluded, 5);
        assert_eq!(out.summary.violations, 0);
        let (h, p) = out.summary.min_height.unwrap();
        assert!((h - 0.2406059125298017).abs() < 1e-12, "{p}");
    }
}
