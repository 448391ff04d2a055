//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Everything crosses the boundary as flat `f64` arrays or CSV text so the
//! page needs no serializer.

use faber_core::conformal::params_from;
use faber_core::limitsets::{classify, intersection_ib, CaseTag, ZeroClass};
use faber_core::measures::predicted;
use faber_core::report::{curves, curves_csv};
use faber_core::rootfind::{compute_zeros, SeedMethod};
use faber_core::{FaberError, Result};
use wasm_bindgen::prelude::*;

/// Largest degree the page may ask for; keeps the UI responsive.
pub const MAX_DEMO_DEGREE: usize = 300;

fn class_code(c: ZeroClass) -> f64 {
    match c {
        ZeroClass::NearSegment => 0.0,
        ZeroClass::NearLoop => 1.0,
        ZeroClass::Unclassified => 2.0,
    }
}

/// `[re, im, class]` per zero, class 0 = segment, 1 = loop, 2 = other.
pub fn zeros_flat(r: f64, theta: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_DEMO_DEGREE {
        return Err(FaberError::Parameter(format!(
            "n must be in 1..={MAX_DEMO_DEGREE}"
        )));
    }
    let params = params_from(r, theta)?;
    let set = compute_zeros(&params, n, SeedMethod::Auto)?;
    Ok(set
        .zeros
        .iter()
        .zip(&set.classes)
        .flat_map(|(z, &c)| [z.re, z.im, class_code(c)])
        .collect())
}

/// `[case, R cos θ, mass on I_b, mass on ℒ_b⁺, Re i_b, Im i_b]` with case
/// 0/1/2 for sub/critical/supercritical and NaN for a missing `i_b`.
pub fn summary_flat(r: f64, theta: f64) -> Result<Vec<f64>> {
    let params = params_from(r, theta)?;
    let case = classify(&params);
    let code = match case.tag {
        CaseTag::Subcritical => 0.0,
        CaseTag::Critical => 1.0,
        CaseTag::Supercritical => 2.0,
    };
    let m = predicted(&params)?;
    let ib = intersection_ib(&params)?;
    Ok(vec![
        code,
        case.rcos,
        m.mass_segment,
        m.mass_loop,
        ib.map_or(f64::NAN, |z| z.re),
        ib.map_or(f64::NAN, |z| z.im),
    ])
}

fn js(e: FaberError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn zeros(r: f64, theta: f64, n: usize) -> std::result::Result<Vec<f64>, JsError> {
    zeros_flat(r, theta, n).map_err(js)
}

/// Predicted curves as `component,param,re,im` CSV.
#[wasm_bindgen]
pub fn predicted_curves(
    r: f64,
    theta: f64,
    samples: usize,
) -> std::result::Result<String, JsError> {
    let params = params_from(r, theta).map_err(js)?;
    curves(&params, samples.clamp(16, 4000))
        .map(|rows| curves_csv(&rows))
        .map_err(js)
}

#[wasm_bindgen]
pub fn summary(r: f64, theta: f64) -> std::result::Result<Vec<f64>, JsError> {
    summary_flat(r, theta).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_zeros_carry_classes() {
        let v = zeros_flat(2.1, 0.0, 70).unwrap();
        assert_eq!(v.len(), 210);
        let loops = v.chunks(3).filter(|c| c[2] == 1.0).count();
        assert_eq!(loops, 49);
        assert!(zeros_flat(2.1, 0.0, 0).is_err());
        assert!(zeros_flat(0.9, 0.0, 5).is_err());
    }

    #[test]
    fn summary_of_presets() {
        let s = summary_flat(2.1, 0.0).unwrap();
        assert_eq!(s[0], 2.0);
        assert!((s[2] + s[3] - 1.0).abs() < 1e-12);
        assert!((s[4] - 1.0 / (2.0 * (1.0 - 2.1))).abs() < 1e-12);
        let s = summary_flat(1.45, 0.2).unwrap();
        assert_eq!((s[0], s[3]), (0.0, 0.0));
        assert!(s[4].is_nan());
    }
}
