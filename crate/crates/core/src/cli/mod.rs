//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 1 on errors and failed checks, 2 for excluded inputs.

mod output;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use output::write_atomic;
pub use report::{build_report, AnalysisReport};

use crate::algebra_checks::verify_lemmas;
use crate::classifier::{classify, classify_numeric, search_case_d};
use crate::error::{Error, Result};
use crate::oscillation_lab::{self as osc, build_piece, estimate_fourier_decay, parse_ray};
use crate::poly::rat::{parse_pq, to_f64, Rat};
use crate::poly::{parse_poly, parse_poly_float};
use crate::region::{emit_region_json, emit_region_svg};
use crate::scaling_lab::{self as sl, normalized_frame, run_scaling, Family, FamilyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_EXCLUDED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lpimprove",
    version,
    about = "L^p-improving regions for averages over mixed homogeneous surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the machine-readable report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write the region plot here.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Write measured data here.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Root clustering tolerance for --numeric.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a polynomial and report its region.
    Analyze {
        poly: String,
        /// Floating-point coefficients, advisory classification.
        #[arg(long)]
        numeric: bool,
    },
    /// Print the region of a polynomial as JSON.
    Region { poly: String },
    /// Run the seeded algebraic identity suites.
    VerifyLemmas {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Fit the δ-scaling of one test family.
    VerifyScaling {
        poly: String,
        #[arg(long)]
        family: Family,
        /// p,q as rationals.
        #[arg(long, default_value = "4/3,4")]
        pq: String,
        /// Comma-separated δ values, decreasing.
        #[arg(long)]
        schedule: Option<String>,
        /// Number of y1 panels.
        #[arg(long, default_value_t = sl::DEFAULT_PANELS)]
        grid: usize,
    },
    /// Fit Fourier decay of a rescaled piece along rays.
    VerifyDecay {
        poly: String,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        /// Comma-separated: e1, e2, e3 or a:b:c.
        #[arg(long, default_value = "e2,e3")]
        rays: String,
        /// Comma-separated |ξ| values, doubling.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Random search for rational case-D polynomials.
    SearchCaseD {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Analyze { poly, numeric } => analyze(cli, poly, *numeric),
        Command::Region { poly } => region(cli, poly),
        Command::VerifyLemmas { count } => lemmas(cli, *count),
        Command::VerifyScaling {
            poly,
            family,
            pq,
            schedule,
            grid,
        } => scaling(cli, poly, *family, pq, schedule.as_deref(), *grid),
        Command::VerifyDecay {
            poly,
            l,
            j,
            k,
            rays,
            schedule,
        } => decay(cli, poly, *l, *j, *k, rays, schedule.as_deref()),
        Command::SearchCaseD { trials } => case_d(cli, *trials),
    }
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    if let Some(path) = &cli.json {
        let mut s =
            serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
        s.push('\n');
        write_atomic(path, &s)?;
    }
    Ok(())
}

fn emit_csv(cli: &Cli, text: &str) -> Result<()> {
    match &cli.csv {
        Some(path) => write_atomic(path, text),
        None => Ok(()),
    }
}

/// Runs the full pipeline on one input.
pub fn analyze_text(
    text: &str,
    numeric: bool,
    tol: f64,
) -> Result<(AnalysisReport, Option<crate::region::RegionPolygon>)> {
    let c = if numeric {
        classify_numeric(&parse_poly_float(text)?, tol)?
    } else {
        classify(&parse_poly(text)?)
    };
    build_report(text, &c)
}

fn analyze(cli: &Cli, text: &str, numeric: bool) -> Result<i32> {
    let (report, region) = analyze_text(text, numeric, cli.tol)?;
    print!("{}", report.summary());
    if let Some(path) = &cli.json {
        write_atomic(path, &report.to_json())?;
    }
    if let (Some(path), Some(rp)) = (&cli.svg, &region) {
        write_atomic(path, &emit_region_svg(rp))?;
    }
    Ok(if report.is_excluded() {
        EXIT_EXCLUDED
    } else {
        EXIT_OK
    })
}

fn region(cli: &Cli, text: &str) -> Result<i32> {
    let (report, region) = analyze_text(text, false, cli.tol)?;
    let Some(rp) = region else {
        eprintln!("{}", report.case);
        return Ok(EXIT_EXCLUDED);
    };
    let json = emit_region_json(&rp);
    print!("{json}");
    if let Some(path) = &cli.json {
        write_atomic(path, &json)?;
    }
    if let Some(path) = &cli.svg {
        write_atomic(path, &emit_region_svg(&rp))?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LemmaReport<'a> {
    version: &'a str,
    seed: u64,
    count: usize,
    suites: &'a [crate::algebra_checks::SuiteResult],
}

fn lemmas(cli: &Cli, count: usize) -> Result<i32> {
    let suites = verify_lemmas(cli.seed, count)?;
    let mut ok = true;
    for s in &suites {
        println!(
            "{:<28} {:>4} instances  {}",
            s.name,
            s.instances,
            if s.pass() { "pass" } else { "FAIL" }
        );
        for f in s.failures.iter().take(5) {
            println!("    {f}");
        }
        ok &= s.pass();
    }
    emit_json(
        cli,
        &LemmaReport {
            version: report::VERSION,
            seed: cli.seed,
            count,
            suites: &suites,
        },
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_ERROR })
}

fn parse_pair(s: &str) -> Result<(Rat, Rat)> {
    let bad = || Error::Precondition(format!("expected p,q as rationals, got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((parse_pq(a).ok_or_else(bad)?, parse_pq(b).ok_or_else(bad)?))
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            parse_pq(x)
                .map(|r| to_f64(&r))
                .or_else(|| x.parse::<f64>().ok())
                .ok_or_else(|| Error::Precondition(format!("cannot read number '{x}'")))
        })
        .collect()
}

#[derive(Serialize)]
struct ScalingReport<'a> {
    version: &'a str,
    input: &'a str,
    experiment: &'a sl::ScalingExperiment,
    within_tolerance: bool,
}

fn scaling(
    cli: &Cli,
    text: &str,
    family: Family,
    pq: &str,
    schedule: Option<&str>,
    grid: usize,
) -> Result<i32> {
    let phi = normalized_frame(&parse_poly(text)?);
    let (p, q) = parse_pair(pq)?;
    let schedule = match schedule {
        Some(s) => parse_list(s)?,
        None => sl::default_schedule(),
    };
    let params = FamilyParams::derive(&phi, family)?;
    let e = run_scaling(&phi, family, &params, (&p, &q), &schedule, grid)?;
    let ok = e.slope_error().abs() <= 0.1;
    println!(
        "family {:?}: fitted slope {:.4}, predicted {} ({:.4}), residual {:.2e}, {}",
        family,
        e.fitted_slope,
        e.prediction.slope,
        to_f64(&e.prediction.slope),
        e.fit_residual,
        if ok { "within 0.1" } else { "OUTSIDE 0.1" }
    );
    println!(
        "implied condition {}; margin at (1/p, 1/q) = {}",
        e.prediction.condition.describe(),
        e.prediction.margin
    );
    if let Some(flag) = &e.flag {
        println!("flag: {flag}");
    }
    emit_json(
        cli,
        &ScalingReport {
            version: report::VERSION,
            input: text,
            experiment: &e,
            within_tolerance: ok,
        },
    )?;
    emit_csv(cli, &e.to_csv())?;
    Ok(if ok { EXIT_OK } else { EXIT_ERROR })
}

#[derive(Serialize)]
struct DecayReport<'a> {
    version: &'a str,
    input: &'a str,
    piece: &'a osc::DyadicPiece,
    fits: &'a [osc::DecayFit],
}

fn decay(
    cli: &Cli,
    text: &str,
    l: usize,
    j: u32,
    k: u32,
    rays: &str,
    schedule: Option<&str>,
) -> Result<i32> {
    let phi = parse_poly(text)?;
    let piece = build_piece(&phi, l, j, k)?;
    let schedule = match schedule {
        Some(s) => parse_list(s)?,
        None => osc::default_schedule(),
    };
    println!("piece: delta = {}, phi_jk = {}", piece.delta, piece.phi_jk);
    let mut fits = Vec::new();
    let mut ok = true;
    for ray in rays.split(',') {
        let fit = estimate_fourier_decay(&piece, parse_ray(ray)?, &schedule)?;
        let target = to_f64(&fit.target);
        let pass = fit.rho >= 0.45 && (fit.rho - target).abs() <= 0.1;
        println!(
            "ray {ray}: rho = {:.3} (residual {:.3}), target {} {}",
            fit.rho,
            fit.residual,
            fit.target,
            if pass { "pass" } else { "FAIL" }
        );
        ok &= pass;
        fits.push(fit);
    }
    emit_json(
        cli,
        &DecayReport {
            version: report::VERSION,
            input: text,
            piece: &piece,
            fits: &fits,
        },
    )?;
    if cli.csv.is_some() {
        let text: String = fits
            .iter()
            .zip(rays.split(','))
            .map(|(f, r)| format!("# ray {r}\n{}", f.to_csv()))
            .collect();
        emit_csv(cli, &text)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_ERROR })
}

#[derive(Serialize)]
struct SearchRecord {
    trial: u64,
    poly: String,
    #[serde(rename = "T")]
    t: u32,
    #[serde(with = "crate::poly::rat::serde_pq")]
    d_h: Rat,
}

fn case_d(cli: &Cli, trials: u64) -> Result<i32> {
    let found = search_case_d(cli.seed, trials)?;
    let records: Vec<SearchRecord> = found
        .iter()
        .map(|x| SearchRecord {
            trial: x.trial,
            poly: x.poly.to_string(),
            t: x.classification.t,
            d_h: x.classification.d_h.clone(),
        })
        .collect();
    println!(
        "{} case-D instances in {trials} trials (seed {})",
        records.len(),
        cli.seed
    );
    for r in records.iter().take(20) {
        println!("  T = {:<2} d_h = {:<6} {}", r.t, r.d_h.to_string(), r.poly);
    }
    emit_json(cli, &records)?;
    Ok(EXIT_OK)
}
