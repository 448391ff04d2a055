//! Zeros from the asymptotic picture: one per oscillation of `T_n(U)` along
//! `I_b`, one per `n`-th root of unity on the arc `(c_+, c_−)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::aberth::{aberth, circle_guesses};
use crate::conformal::{joukowski, AirfoilParams};
use crate::error::{FaberError, Result};
use crate::faber::FaberEvaluator;
use crate::limitsets::{
    arc_point, classify, intersection_ib, loop_endpoints, positive_arg, segment_extent, CaseTag,
};

/// Residual below which a Newton limit is accepted as a zero.
pub const ACCEPT_RESIDUAL: f64 = 1e-10;
/// Two accepted zeros closer than this are the same zero.
pub const DEDUP_DISTANCE: f64 = 1e-8;

const NEWTON_MAX_ITER: usize = 60;

/// `[U⁻¹(cos((k+1)π/n)), U⁻¹(cos(kπ/n))]` along `I_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentBracket {
    pub k: usize,
    pub lo: Complex64,
    pub hi: Complex64,
    /// `U⁻¹(cos((k + 1/2)π/n))`
    pub mid: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedPlan {
    pub n: usize,
    pub segment_seeds: Vec<SegmentBracket>,
    pub loop_seeds: Vec<Complex64>,
}

impl SeedPlan {
    pub fn len(&self) -> usize {
        self.segment_seeds.len() + self.loop_seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn seed_plan(params: &AirfoilParams, n: usize) -> Result<SeedPlan> {
    if n < 2 {
        return Err(FaberError::Parameter(format!(
            "seeded method needs n >= 2, got {n}"
        )));
    }
    let ib = intersection_ib(params)?;
    let beta = segment_extent(params, ib);
    let nf = n as f64;
    let segment_seeds = (0..n)
        .filter(|&k| (k + 1) as f64 * PI / nf <= beta * (1.0 + 1e-14))
        .map(|k| SegmentBracket {
            k,
            lo: arc_point(params, ((k + 1) as f64 * PI / nf).cos()),
            hi: arc_point(params, (k as f64 * PI / nf).cos()),
            mid: arc_point(params, ((k as f64 + 0.5) * PI / nf).cos()),
        })
        .collect();

    let mut loop_seeds = Vec::new();
    if let (CaseTag::Supercritical, Some(ib)) = (classify(params).tag, ib) {
        let (cp, cm) = loop_endpoints(params, ib);
        let (t0, t1) = (positive_arg(cp), positive_arg(cm));
        let b = params.b();
        for k in 1..n {
            let t = 2.0 * PI * k as f64 / nf;
            if t > t0 && t < t1 {
                loop_seeds.push(joukowski(b * (1.0 - Complex64::from_polar(1.0, t))));
            }
        }
    }
    Ok(SeedPlan {
        n,
        segment_seeds,
        loop_seeds,
    })
}

fn newton(ev: &FaberEvaluator, mut z: Complex64) -> Option<Complex64> {
    for _ in 0..NEWTON_MAX_ITER {
        let l = ev.log_derivative(z);
        if !(l.re.is_finite() && l.im.is_finite()) {
            return Some(z);
        }
        let step = l.inv();
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 1e3 {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    (ev.scaled_residual(z) <= ACCEPT_RESIDUAL).then_some(z)
}

/// Real-axis bracket: bisection on the sign of `F_n`, then a Newton polish.
fn bisect(ev: &FaberEvaluator, lo: f64, hi: f64) -> Option<Complex64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let sa = ev.real_sign(a);
    let sb = ev.real_sign(b);
    if sa == 0.0 {
        return Some(Complex64::new(a, 0.0));
    }
    if sb == 0.0 {
        return Some(Complex64::new(b, 0.0));
    }
    if sa == sb {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let sm = ev.real_sign(m);
        if sm == 0.0 {
            return Some(Complex64::new(m, 0.0));
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    let x = 0.5 * (a + b);
    // stay on the axis: the log-derivative is real there
    let polished = newton(ev, Complex64::new(x, 0.0)).map(|z| Complex64::new(z.re, 0.0));
    match polished {
        Some(z) if z.re >= a - (b - a) && z.re <= b + (b - a) => Some(z),
        _ => Some(Complex64::new(x, 0.0)),
    }
}

/// Zeros from [`seed_plan`], with any deficit recovered by Aberth sweeps that
/// hold the already-found zeros fixed.
pub fn roots_seeded_raw(params: &AirfoilParams, n: usize) -> Result<Vec<Complex64>> {
    let plan = seed_plan(params, n)?;
    let ev = FaberEvaluator::new(params, n);
    let real = params.is_real();

    let mut candidates: Vec<Option<Complex64>> = plan
        .segment_seeds
        .par_iter()
        .map(|br| {
            if real {
                bisect(&ev, br.lo.re, br.hi.re).or_else(|| newton(&ev, br.mid))
            } else {
                newton(&ev, br.mid)
            }
        })
        .collect();
    candidates.extend(
        plan.loop_seeds
            .par_iter()
            .map(|&z| newton(&ev, z))
            .collect::<Vec<_>>(),
    );

    let mut found: Vec<Complex64> = Vec::with_capacity(n);
    for z in candidates.into_iter().flatten() {
        if found.len() < n && found.iter().all(|y| (z - y).norm() > DEDUP_DISTANCE) {
            found.push(z);
        }
    }

    let missing = n - found.len();
    if missing > 0 {
        let center = intersection_ib(params)?.unwrap_or(params.b() / 2.0);
        let radius = 1.0 / (n as f64).sqrt();
        let out = aberth(&ev, circle_guesses(center, radius, missing), &found, 2000);
        for z in out.roots {
            let fresh = found.iter().all(|y| (z - y).norm() > DEDUP_DISTANCE);
            if fresh && ev.scaled_residual(z) <= ACCEPT_RESIDUAL {
                found.push(z);
            }
        }
    }
    if found.len() < n {
        return Err(FaberError::Deficit {
            degree: n,
            missing: n - found.len(),
        });
    }
    Ok(found)
}
