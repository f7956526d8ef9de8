use clap::{Args, Parser, Subcommand};
use lehmer_cli::config::{parse_degree_range, parse_primes, ScanConfig};
use lehmer_cli::error::{CliError, CliResult};
use lehmer_cli::record::{ResultRecord, SAFETY_SLACK};
use lehmer_cli::scan::{run_scan, ScanControl};
use lehmer_cli::thresholds::threshold_table;
use lehmer_cli::verify::{run_suite, Scale};
use lehmer_core::bounds::{analyze, baseline, AnalyzeOptions, BoundReport};
use lehmer_core::ff::DEFAULT_SPLIT_SEED;
use lehmer_core::heights::DEFAULT_TOLERANCE;
use lehmer_core::IntPoly;
use num_traits::Signed;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "lehmer", version, about = "Height lower bounds from p-adic conjugate counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one polynomial, given as `x^3-2x+1` or `[1,-2,0,1]`.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        #[command(flatten)]
        analysis: AnalysisArgs,
    },
    /// Enumerate a family of polynomials and write one record per line.
    Scan(ScanArgs),
    /// Run a property suite: heights, padic, bounds, mignotte or all.
    Verify {
        suite: String,
        /// Use the full acceptance-size enumerations.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = DEFAULT_SPLIT_SEED)]
        seed: u64,
    },
    /// Required conjugate counts for the membership families.
    Thresholds {
        #[arg(long, short = 'd')]
        degree: usize,
        #[arg(long, short = 'p')]
        prime: u64,
        #[arg(long, short = 'f', default_value_t = 1)]
        inertia: u32,
        #[arg(long, default_value_t = std::f64::consts::LN_2)]
        c: f64,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    /// Comma-separated primes.
    #[arg(long, default_value = "2,3,5,7")]
    primes: String,
    #[arg(long, default_value_t = 3)]
    fmax: u32,
    #[arg(long, default_value_t = std::f64::consts::LN_2)]
    c: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_SPLIT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct ScanArgs {
    /// Inclusive degree range `A..B`.
    #[arg(long, value_parser = degrees_arg, default_value = "1..4")]
    degrees: (usize, usize),
    #[arg(long, default_value_t = 3)]
    coef_bound: u64,
    #[arg(long)]
    monic: bool,
    #[command(flatten)]
    analysis: AnalysisArgs,
    /// Output file; records go to stdout when absent. An existing file from
    /// the same configuration is resumed.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Also write the summary as CSV.
    #[arg(long)]
    summary_csv: Option<PathBuf>,
    /// Add per-polynomial wall time to each record.
    #[arg(long)]
    timing: bool,
    #[arg(long, hide = true)]
    stop_after: Option<u64>,
}

fn degrees_arg(s: &str) -> Result<(usize, usize), String> {
    parse_degree_range(s).map_err(|e| e.to_string())
}

impl AnalysisArgs {
    fn options(&self) -> CliResult<AnalyzeOptions> {
        Ok(AnalyzeOptions {
            primes: parse_primes(&self.primes)?,
            f_max: self.fmax,
            c: self.c,
            tolerance: self.tolerance,
            seed: self.seed,
        })
    }
}

fn print_report(r: &BoundReport) {
    let h = &r.height;
    println!("polynomial        {}", r.polynomial);
    println!("degree            {}", r.degree);
    println!("irreducibility    {}", lehmer_cli::record::verdict_name(r.irreducibility));
    println!("height            {} +- {:.1e}", h.height, h.height_error);
    println!("Mahler measure    {} +- {:.1e}", h.mahler, h.mahler_error);
    println!("discriminant      {}", r.discriminant);
    println!("torsion           {}", if r.flags.torsion { "yes" } else { "no" });
    if r.flags.non_monic {
        println!("note              not monic; multi-field bounds skipped");
    }
    if r.vacuous() {
        println!("note              hypotheses fail; bounds are not claimed");
    }
    for prof in &r.profiles {
        let counts: Vec<String> = prof
            .levels
            .iter()
            .map(|s| format!("f={}: {} ({} integral)", s.level, s.membership_count, s.integral_count))
            .collect();
        println!(
            "p = {:<3}           ord_p(D) = {}, {}{}",
            prof.prime,
            prof.ord_p_disc,
            counts.join(", "),
            if prof.ramified_or_deep_flag {
                format!(", {} conjugates unaccounted", prof.unaccounted_count)
            } else {
                String::new()
            }
        );
    }
    println!("baseline          {}", baseline(r.degree));
    for (name, v) in r.bound_values() {
        let counts = if name.starts_with("thm1") { "membership" } else { "exact-generator" };
        println!("{name:<17} {v} ({counts} counts)");
    }
    if r.informative() {
        let best = r.bound_values().into_iter().map(|(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
        println!("verdict           h >= {best}");
    } else if !r.vacuous() {
        println!("verdict           no information (every bound is <= 0)");
    }
    for l in r.levels.iter().filter(|l| l.prop2_member) {
        println!("member            h >= c/d guaranteed via p = {}, f = {}", l.prime, l.level);
    }
    println!(
        "mahler margin     {:.6} (log |D| = {:.6})",
        r.mahler.margin_lower, r.mahler.log_abs_disc
    );
}

fn cmd_analyze(text: &str, args: &AnalysisArgs) -> CliResult<()> {
    let f: IntPoly = text.parse().map_err(|e| CliError::Invalid(format!("{text:?}: {e}")))?;
    if f.is_zero() {
        return Err(CliError::Invalid("the zero polynomial has no height".into()));
    }
    let mut g = f.primitive_part();
    if g.leading().is_negative() {
        g = -&g;
    }
    let start = Instant::now();
    let report = analyze(&g, &args.options()?)?;
    let us = start.elapsed().as_micros() as u64;
    print_report(&report);
    println!("record: {}", ResultRecord::from_report(&report, Some(us)).to_line());
    let v = report.violations(SAFETY_SLACK);
    if !v.is_empty() {
        return Err(CliError::Violation(v.join("; ")));
    }
    Ok(())
}

fn cmd_scan(a: &ScanArgs) -> CliResult<()> {
    let opts = a.analysis.options()?;
    let cfg = ScanConfig {
        degree_min: a.degrees.0,
        degree_max: a.degrees.1,
        coef_bound: a.coef_bound,
        monic: a.monic,
        primes: opts.primes,
        f_max: opts.f_max,
        c: opts.c,
        tolerance: opts.tolerance,
        out: a.out.clone(),
        workers: a.workers,
        seed: opts.seed,
    };
    let ctl = ScanControl {
        timing: a.timing,
        stop_after: a.stop_after,
    };
    let outcome = run_scan(&cfg, &ctl)?;
    // keep stdout clean for records when no output file is given
    let summary = outcome.summary.to_string();
    if cfg.out.is_some() {
        if let Some(from) = outcome.resumed_from {
            println!("resumed at canonical index {from}");
        }
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    if let Some(path) = &a.summary_csv {
        std::fs::write(path, outcome.summary.to_csv())?;
    }
    if !outcome.completed {
        return Err(CliError::Internal("scan stopped before completion".into()));
    }
    if outcome.summary.violations > 0 {
        return Err(CliError::Violation(format!("{} violations", outcome.summary.violations)));
    }
    Ok(())
}

fn cmd_verify(suite: &str, full: bool, seed: u64) -> CliResult<()> {
    let scale = if full { Scale::Full } else { Scale::Quick };
    let checks = run_suite(suite, scale, seed)?;
    let mut failed = 0;
    for c in &checks {
        println!("{c}");
        failed += !c.passed() as usize;
    }
    if failed > 0 {
        return Err(CliError::Violation(format!("{failed} of {} checks failed", checks.len())));
    }
    println!("suite {suite}: all {} checks passed", checks.len());
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { polynomial, analysis } => cmd_analyze(&polynomial, &analysis),
        Command::Scan(a) => cmd_scan(&a),
        Command::Verify { suite, full, seed } => cmd_verify(&suite, full, seed),
        Command::Thresholds {
            degree,
            prime,
            inertia,
            c,
        } => {
            print!("{}", threshold_table(degree, prime, inertia, c)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
