//! The four subcommands. Each computes in parallel over the degrees and
//! writes its files afterwards, in the order of the degree list.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use faber_core::conformal::{params_from, AirfoilParams};
use faber_core::limitsets::{classify, intersection_ib, DEFAULT_CURVE_SAMPLES};
use faber_core::measures::{
    default_tol_quad, diagnose, predicted, DiagnosticReport, PredictedMeasure,
};
use faber_core::report::{curves, curves_csv, parse_zeros_csv, zeros_csv};
use faber_core::rootfind::{compute_zeros, Method, ZeroSet, ZEROSET_MAX_RESIDUAL};
use faber_core::{Complex64, FaberError};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::json::to_json;
use crate::svg;

/// Curve samples used in figures; the CSV output uses the library default.
const PLOT_CURVE_SAMPLES: usize = 600;
/// Weak-* gate applies from this degree on.
const CDF_GATE_MIN_DEGREE: usize = 25;
const CDF_GATE: f64 = 0.12;
const POTENTIAL_GATE: f64 = 0.05;

#[derive(Debug)]
pub enum CliError {
    Faber(FaberError),
    Io(PathBuf, std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Faber(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Faber(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<FaberError> for CliError {
    fn from(e: FaberError) -> Self {
        CliError::Faber(e)
    }
}

pub enum Outcome {
    Ok,
    GatesFailed(Vec<String>),
}

type Result<T> = std::result::Result<T, CliError>;

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::Io(path.clone(), e))?;
    println!("{}", path.display());
    Ok(())
}

fn zero_sets(params: &AirfoilParams, cfg: &RunConfig) -> Result<Vec<ZeroSet>> {
    let sets: std::result::Result<Vec<ZeroSet>, FaberError> = cfg
        .n_list
        .par_iter()
        .map(|&n| compute_zeros(params, n, cfg.seed_method))
        .collect();
    Ok(sets?)
}

pub fn cmd_zeros(cfg: &RunConfig) -> Result<Outcome> {
    let params = params_from(cfg.r, cfg.theta)?;
    for set in zero_sets(&params, cfg)? {
        if cfg.wants(Format::Csv) {
            write_file(
                &cfg.out_dir,
                &format!("zeros_n{}.csv", set.n),
                &zeros_csv(&set),
            )?;
        }
        if cfg.wants(Format::Json) {
            write_file(
                &cfg.out_dir,
                &format!("zeros_n{}.json", set.n),
                &to_json(&set),
            )?;
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct PredictionFile<'a> {
    r: f64,
    theta: f64,
    case: &'static str,
    rcos: f64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    capacity: f64,
    /// corner of the loop and end of the segment; null in the subcritical case
    i_b: Option<Complex64>,
    measure: &'a PredictedMeasure,
}

pub fn cmd_predict(cfg: &RunConfig) -> Result<Outcome> {
    let params = params_from(cfg.r, cfg.theta)?;
    let rows = curves(&params, DEFAULT_CURVE_SAMPLES)?;
    if cfg.wants(Format::Csv) {
        write_file(&cfg.out_dir, "curves.csv", &curves_csv(&rows))?;
    }
    if cfg.wants(Format::Json) {
        let measure = predicted(&params)?;
        let case = classify(&params);
        let file = PredictionFile {
            r: params.r(),
            theta: params.theta(),
            case: case.tag.as_str(),
            rcos: case.rcos,
            a: params.a(),
            b: params.b(),
            c: params.c(),
            capacity: params.capacity(),
            i_b: intersection_ib(&params)?,
            measure: &measure,
        };
        write_file(&cfg.out_dir, "predicted.json", &to_json(&file))?;
    }
    if cfg.wants(Format::Svg) {
        let rows = curves(&params, PLOT_CURVE_SAMPLES)?;
        let title = format!("R = {}, theta = {}", cfg.r, cfg.theta);
        write_file(
            &cfg.out_dir,
            "predicted.svg",
            &svg::render(&title, &rows, &[]),
        )?;
    }
    Ok(Outcome::Ok)
}

#[derive(Debug, Clone, Serialize)]
pub struct Gate {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

fn gate(name: &'static str, value: f64, limit: f64) -> Gate {
    Gate {
        name,
        value,
        limit,
        pass: value <= limit,
    }
}

/// Every gate for one zero set.
pub fn gates(set: &ZeroSet, report: &DiagnosticReport, tol_quad: Option<f64>) -> Vec<Gate> {
    let n = set.n as f64;
    let mut out = vec![
        gate(
            "quadrature",
            report.quad_max_residual,
            tol_quad.unwrap_or(default_tol_quad(set.n)),
        ),
        gate(
            "mass_split_segment",
            (report.counts.segment as f64 / n - report.masses.segment).abs(),
            2.0 / n.sqrt(),
        ),
        gate(
            "mass_split_loop",
            (report.counts.loop_ as f64 / n - report.masses.loop_).abs(),
            2.0 / n.sqrt(),
        ),
        gate("unclassified", report.counts.other as f64, 3.0 * n.sqrt()),
        gate("zero_residual", set.max_residual(), ZEROSET_MAX_RESIDUAL),
    ];
    if set.n >= CDF_GATE_MIN_DEGREE {
        out.push(gate("convergence", report.cdf_dist, CDF_GATE));
    }
    out.push(gate("potential", report.potential_max_dev, POTENTIAL_GATE));
    // NaN compares false
    for g in &mut out {
        g.pass &= !g.value.is_nan();
    }
    out
}

#[derive(Serialize)]
struct VerifyRun {
    n: usize,
    method: &'static str,
    report: DiagnosticReport,
    gates: Vec<Gate>,
}

#[derive(Serialize)]
struct VerifyFile {
    r: f64,
    theta: f64,
    pass: bool,
    failed: Vec<String>,
    runs: Vec<VerifyRun>,
}

fn imported_sets(params: &AirfoilParams, path: &Path) -> Result<Vec<ZeroSet>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let rows = parse_zeros_csv(&text)
        .map_err(|e| FaberError::Parameter(format!("{}: {e}", path.display())))?;
    let mut by_n: BTreeMap<usize, Vec<Complex64>> = BTreeMap::new();
    for (n, z) in rows {
        by_n.entry(n).or_default().push(z);
    }
    if by_n.is_empty() {
        return Err(FaberError::Parameter(format!("{}: no zeros", path.display())).into());
    }
    let mut sets = Vec::new();
    for (n, zs) in by_n {
        if zs.len() != n {
            return Err(FaberError::Parameter(format!(
                "{}: {} rows for n = {n}",
                path.display(),
                zs.len()
            ))
            .into());
        }
        sets.push(ZeroSet::from_zeros(params, zs, Method::Imported)?);
    }
    Ok(sets)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let params = params_from(cfg.r, cfg.theta)?;
    let sets = match &cfg.zeros_in {
        Some(path) => imported_sets(&params, path)?,
        None => zero_sets(&params, cfg)?,
    };
    let reports: std::result::Result<Vec<DiagnosticReport>, FaberError> =
        sets.par_iter().map(|s| diagnose(&params, s)).collect();
    let mut failed = Vec::new();
    let mut runs = Vec::new();
    for (set, report) in sets.iter().zip(reports?) {
        let gs = gates(set, &report, cfg.tol_quad);
        for g in gs.iter().filter(|g| !g.pass) {
            failed.push(format!("{}[n={}]", g.name, set.n));
        }
        runs.push(VerifyRun {
            n: set.n,
            method: set.method.as_str(),
            report,
            gates: gs,
        });
    }
    let file = VerifyFile {
        r: params.r(),
        theta: params.theta(),
        pass: failed.is_empty(),
        failed: failed.clone(),
        runs,
    };
    if cfg.wants(Format::Json) {
        write_file(&cfg.out_dir, "verify.json", &to_json(&file))?;
    }
    if failed.is_empty() {
        eprintln!("PASS");
        Ok(Outcome::Ok)
    } else {
        Ok(Outcome::GatesFailed(failed))
    }
}

pub fn cmd_plot(cfg: &RunConfig) -> Result<Outcome> {
    let params = params_from(cfg.r, cfg.theta)?;
    let rows = curves(&params, PLOT_CURVE_SAMPLES)?;
    for set in zero_sets(&params, cfg)? {
        let title = format!("R = {}, theta = {}, n = {}", cfg.r, cfg.theta, set.n);
        let name = format!("plot_n{}.svg", set.n);
        write_file(&cfg.out_dir, &name, &svg::render(&title, &rows, &set.zeros))?;
        if cfg.wants(Format::Csv) {
            write_file(
                &cfg.out_dir,
                &format!("zeros_n{}.csv", set.n),
                &zeros_csv(&set),
            )?;
        }
    }
    Ok(Outcome::Ok)
}
