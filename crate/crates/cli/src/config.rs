//! Run configuration: flags over a key=value file over defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use faber_core::rootfind::SeedMethod;
use faber_core::FaberError;

/// Hard cap on the degree.
pub const MAX_DEGREE: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    fn parse(s: &str) -> Result<Format, FaberError> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(FaberError::Parameter(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub r: f64,
    pub theta: f64,
    pub n_list: Vec<usize>,
    pub out_dir: PathBuf,
    pub formats: Vec<Format>,
    pub tol_quad: Option<f64>,
    pub seed_method: SeedMethod,
    pub zeros_in: Option<PathBuf>,
}

impl RunConfig {
    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

/// Raw settings before defaults are applied; every field optional.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub n: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub seed_method: Option<String>,
    pub tol_quad: Option<f64>,
    pub paper_figure: Option<u8>,
    pub zeros_in: Option<PathBuf>,
}

/// `(R, θ)` of the figure presets.
pub fn preset(figure: u8) -> Result<(f64, f64), FaberError> {
    match figure {
        1 => Ok((1.26, 0.0)),
        2 => Ok((2.1, 0.0)),
        3 => Ok((2.1, 0.2)),
        4 => Ok((1.45, 0.2)),
        k => Err(FaberError::Parameter(format!(
            "no figure preset {k} (expected 1..4)"
        ))),
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, FaberError> {
    v.trim()
        .parse()
        .map_err(|_| FaberError::Parameter(format!("{key}: '{v}' is not a number")))
}

pub fn parse_n_list(s: &str) -> Result<Vec<usize>, FaberError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let n: usize = part
            .parse()
            .map_err(|_| FaberError::Parameter(format!("n: '{part}' is not a positive integer")))?;
        if n == 0 || n > MAX_DEGREE {
            return Err(FaberError::Parameter(format!(
                "n = {n} outside 1..={MAX_DEGREE}"
            )));
        }
        out.push(n);
    }
    if out.is_empty() {
        return Err(FaberError::Parameter("empty n list".into()));
    }
    Ok(out)
}

/// Settings from a `key = value` file. `#` starts a comment; keys may use
/// dashes or underscores.
pub fn read_config_file(path: &Path) -> Result<Overrides, FaberError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FaberError::Parameter(format!("cannot read {}: {e}", path.display())))?;
    let mut kv = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('[') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            FaberError::Parameter(format!(
                "{}:{}: expected key = value",
                path.display(),
                i + 1
            ))
        })?;
        let v = v.trim().trim_matches('"').to_string();
        kv.insert(k.trim().replace('-', "_"), v);
    }
    let mut o = Overrides::default();
    for (k, v) in kv {
        match k.as_str() {
            "R" | "r" => o.r = Some(parse_f64("R", &v)?),
            "theta" => o.theta = Some(parse_f64("theta", &v)?),
            "n" => o.n = Some(v),
            "out" => o.out = Some(v.into()),
            "format" => o.format = Some(v),
            "seed_method" => o.seed_method = Some(v),
            "tol_quad" => o.tol_quad = Some(parse_f64("tol_quad", &v)?),
            "paper_figure" => {
                o.paper_figure = Some(
                    v.parse()
                        .map_err(|_| FaberError::Parameter(format!("paper_figure: '{v}'")))?,
                )
            }
            "zeros_in" => o.zeros_in = Some(v.into()),
            other => {
                return Err(FaberError::Parameter(format!(
                    "unknown config key '{other}'"
                )))
            }
        }
    }
    Ok(o)
}

impl Overrides {
    /// Fields of `self` win over `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            r: self.r.or(lower.r),
            theta: self.theta.or(lower.theta),
            n: self.n.or(lower.n),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
            seed_method: self.seed_method.or(lower.seed_method),
            tol_quad: self.tol_quad.or(lower.tol_quad),
            paper_figure: self.paper_figure.or(lower.paper_figure),
            zeros_in: self.zeros_in.or(lower.zeros_in),
        }
    }

    pub fn resolve(self, default_formats: &str) -> Result<RunConfig, FaberError> {
        // explicit R/θ beat the preset
        let (pr, pt) = match self.paper_figure {
            Some(k) => {
                let (r, t) = preset(k)?;
                (Some(r), Some(t))
            }
            None => (None, None),
        };
        let r = self
            .r
            .or(pr)
            .ok_or_else(|| FaberError::Parameter("R is required (or --paper-figure)".into()))?;
        let theta = self.theta.or(pt).unwrap_or(0.0);
        let n_list = parse_n_list(self.n.as_deref().unwrap_or("70"))?;
        let mut formats = self
            .format
            .as_deref()
            .unwrap_or(default_formats)
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Format::parse)
            .collect::<Result<Vec<_>, _>>()?;
        formats.sort();
        formats.dedup();
        let seed_method = self.seed_method.as_deref().unwrap_or("auto").parse()?;
        if let Some(t) = self.tol_quad {
            if !(t > 0.0 && t.is_finite()) {
                return Err(FaberError::Parameter(format!(
                    "tol-quad must be positive, got {t}"
                )));
            }
        }
        Ok(RunConfig {
            r,
            theta,
            n_list,
            out_dir: self.out.unwrap_or_else(|| PathBuf::from(".")),
            formats,
            tol_quad: self.tol_quad,
            seed_method,
            zeros_in: self.zeros_in,
        })
    }
}
