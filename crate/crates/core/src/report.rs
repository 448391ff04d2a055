//! Fixed-format text output shared by the CLI and the tests.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::conformal::AirfoilParams;
use crate::error::Result;
use crate::limitsets::{airfoil_boundary, arc_a, circle_ctilde, limit_sets, loop_minus};
use crate::rootfind::ZeroSet;

/// `x` as C's `%.12e`: twelve fractional digits and an exponent of at least
/// two digits with explicit sign.
pub fn fmt_e12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

pub const ZEROS_HEADER: &str = "n,index,re,im,residual,class";
pub const CURVES_HEADER: &str = "component,param,re,im";

/// Zero set as CSV rows in the order of `zeros.zeros`.
pub fn zeros_csv(zeros: &ZeroSet) -> String {
    let mut out = String::from(ZEROS_HEADER);
    out.push('\n');
    for (i, ((z, r), c)) in zeros
        .zeros
        .iter()
        .zip(&zeros.residuals)
        .zip(&zeros.classes)
        .enumerate()
    {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            zeros.n,
            i,
            fmt_e12(z.re),
            fmt_e12(z.im),
            fmt_e12(*r),
            c.as_str()
        );
    }
    out
}

/// `(n, zero)` pairs from a zeros CSV; classes and residuals are recomputed
/// by the caller.
pub fn parse_zeros_csv(text: &str) -> std::result::Result<Vec<(usize, Complex64)>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("n,") {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() < 4 {
            return Err(format!("line {}: expected at least 4 fields", lineno + 1));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| format!("line {}: {e}", lineno + 1))
        };
        let n = f[0]
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        rows.push((n, Complex64::new(parse(f[2])?, parse(f[3])?)));
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub component: String,
    pub param: f64,
    pub z: Complex64,
}

fn push(rows: &mut Vec<CurveRow>, component: &str, param: f64, z: Complex64) {
    rows.push(CurveRow {
        component: component.to_string(),
        param,
        z,
    });
}

/// Every predicted curve: airfoil, the two halves of `𝒜`, `𝒞_b`, `𝒞̃_b`,
/// `I_b`, `ℒ_b⁺` and the clipped pieces of `ℒ_b⁻`.
pub fn curves(params: &AirfoilParams, m: usize) -> Result<Vec<CurveRow>> {
    let mut rows = Vec::new();
    for (k, z) in airfoil_boundary(params, m).into_iter().enumerate() {
        push(
            &mut rows,
            "airfoil",
            2.0 * std::f64::consts::PI * k as f64 / m as f64,
            z,
        );
    }
    let arc = arc_a(params, m);
    for s in &arc.samples {
        push(&mut rows, "arc_plus", s.rho, s.z_plus);
    }
    for s in &arc.samples {
        push(&mut rows, "arc_minus", s.rho, s.z_minus);
    }
    let sets = limit_sets(params, m)?;
    for (k, &z) in sets.cb.iter().enumerate() {
        push(
            &mut rows,
            "cb",
            2.0 * std::f64::consts::PI * k as f64 / m as f64,
            z,
        );
    }
    if let Some(ct) = circle_ctilde(params, m) {
        for (k, z) in ct.into_iter().enumerate() {
            push(
                &mut rows,
                "ctilde",
                2.0 * std::f64::consts::PI * k as f64 / m as f64,
                z,
            );
        }
    }
    for &(s, z) in &sets.segment {
        push(&mut rows, "segment", s, z);
    }
    if let Some(lp) = &sets.loop_plus {
        for (&t, &z) in lp.params.iter().zip(&lp.samples) {
            push(&mut rows, "loop", t, z);
        }
        if !lp.samples.is_empty() {
            for (piece, pts) in loop_minus(params, m, 4.0)?.into_iter().enumerate() {
                let name = format!("loop_minus_{}", piece + 1);
                for (k, z) in pts.into_iter().enumerate() {
                    push(&mut rows, &name, k as f64, z);
                }
            }
        }
    }
    Ok(rows)
}

pub fn curves_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from(CURVES_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.component,
            fmt_e12(r.param),
            fmt_e12(r.z.re),
            fmt_e12(r.z.im)
        );
    }
    out
}
