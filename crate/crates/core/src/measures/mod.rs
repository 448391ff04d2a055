//! Limit measures of the zeros and the diagnostics comparing them with
//! computed zero sets.
//!
//! The predicted measure has two parts. On `I_b` it is the pullback of the
//! arcsine law under `U`, which in the angle `s` of `U = cos s` is simply
//! `ds/π` on `[0, β]`. On the loop it is the image of `dt/2π` on the arc
//! `(c_+, c_−)` under `φ_b⁻¹`. Both parts are smooth in those parameters, so
//! moments are taken by Gauss–Legendre quadrature there.

pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::conformal::{joukowski, joukowski_prime, phi, phi_b, psi, AirfoilParams};
use crate::error::{FaberError, Result};
use crate::limitsets::{
    arc_point, classify, intersection_ib, loop_endpoints, polyline_distance, positive_arg,
    segment_extent, CaseTag, ZeroClass,
};
use crate::rootfind::ZeroSet;
use quadrature::{gauss_legendre, integrate};

/// Nodes of the rule used for predicted-measure moments.
pub const PREDICTED_NODES: usize = 512;
/// Highest moment entering `moment_dist`.
pub const MOMENT_DIST_K: usize = 20;

const EQ_MOMENT_TOL: f64 = 1e-11;
const EQ_MAX_SAMPLES: usize = 1 << 16;

/// `(1/π)(1/√(1−x²))(1 − bx)/(1 + b² − 2bx)`, the density of the pullback of
/// the arcsine law under `U` for real `b`.
pub fn pullback_density(params: &AirfoilParams, x: f64) -> Result<f64> {
    if !params.is_real() {
        return Err(FaberError::Case {
            expected: "real (theta = 0)",
        });
    }
    if !(x.abs() < 1.0) {
        return Err(FaberError::Domain {
            point: Complex64::new(x, 0.0),
            reason: "density is defined on the open interval (-1, 1)".into(),
        });
    }
    let b = params.b().re;
    Ok((1.0 - b * x) / (PI * (1.0 - x * x).sqrt() * (1.0 + b * b - 2.0 * b * x)))
}

/// `(1/π)(1/√(1−x²))(1 + 2αx)/(1 + 4α² + 4αx)`.
pub fn ullman_density(alpha: f64, x: f64) -> f64 {
    (1.0 + 2.0 * alpha * x)
        / (PI * (1.0 - x * x).sqrt() * (1.0 + 4.0 * alpha * alpha + 4.0 * alpha * x))
}

/// A point of a curve with the density of the measure there, taken with
/// respect to arclength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensitySample {
    pub param: f64,
    pub point: Complex64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedMeasure {
    pub case: CaseTag,
    pub segment_part: Vec<DensitySample>,
    pub loop_part: Vec<DensitySample>,
    pub mass_segment: f64,
    pub mass_loop: f64,
    /// `I_b = U⁻¹(cos [0, β])`
    pub beta: f64,
    /// `arg c_+`, `arg c_−`; equal when there is no loop
    pub loop_range: (f64, f64),
    #[serde(skip)]
    params: AirfoilParams,
}

/// Density samples per component.
pub const DENSITY_SAMPLES: usize = 400;

pub fn predicted(params: &AirfoilParams) -> Result<PredictedMeasure> {
    let case = classify(params).tag;
    let ib = intersection_ib(params)?;
    let beta = segment_extent(params, ib);
    let loop_range = match (case, ib) {
        (CaseTag::Supercritical, Some(ib)) => {
            let (cp, cm) = loop_endpoints(params, ib);
            (positive_arg(cp), positive_arg(cm))
        }
        _ => (PI, PI),
    };

    let segment_part = (0..DENSITY_SAMPLES)
        .map(|k| {
            let s = beta * (k as f64 + 0.5) / DENSITY_SAMPLES as f64;
            let z = arc_point(params, s.cos());
            // dμ = ds/π and dz/ds = −sin s / U′(z)
            let speed = match params.u_prime(z) {
                Ok(d) => s.sin() / d.norm(),
                Err(_) => f64::INFINITY,
            };
            DensitySample {
                param: s,
                point: z,
                density: 1.0 / (PI * speed),
            }
        })
        .collect();

    let (t0, t1) = loop_range;
    let b = params.b();
    let loop_part = if t1 > t0 {
        (0..DENSITY_SAMPLES)
            .map(|k| {
                let t = t0 + (t1 - t0) * (k as f64 + 0.5) / DENSITY_SAMPLES as f64;
                let e = Complex64::from_polar(1.0, t);
                let zeta = b * (1.0 - e);
                let speed = (joukowski_prime(zeta) * b * e).norm();
                DensitySample {
                    param: t,
                    point: joukowski(zeta),
                    density: 1.0 / (2.0 * PI * speed),
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    Ok(PredictedMeasure {
        case,
        segment_part,
        loop_part,
        mass_segment: beta / PI,
        mass_loop: (t1 - t0) / (2.0 * PI),
        beta,
        loop_range,
        params: *params,
    })
}

/// Segment mass in the real case from `(1/π)(π/2 − sin⁻¹(1 − 1/2b²))`.
pub fn real_mass_formula(b: f64) -> (f64, f64) {
    let s = 1.0 - 1.0 / (2.0 * b * b);
    ((PI / 2.0 - s.asin()) / PI, (PI - s.acos()) / PI)
}

impl PredictedMeasure {
    /// `∫ z^k dμ` for `k = 1..=k_max`.
    pub fn moments(&self, k_max: usize) -> Vec<Complex64> {
        let rule = gauss_legendre(PREDICTED_NODES);
        let mut out = vec![Complex64::new(0.0, 0.0); k_max];
        let mut accumulate = |points: Vec<Complex64>, weights: Vec<f64>| {
            for (z, w) in points.into_iter().zip(weights) {
                let mut p = Complex64::new(1.0, 0.0);
                for m in out.iter_mut() {
                    p *= z;
                    *m += w * p;
                }
            }
        };
        let half = 0.5 * self.beta;
        accumulate(
            rule.0
                .iter()
                .map(|&x| arc_point(&self.params, (half * (x + 1.0)).cos()))
                .collect(),
            rule.1.iter().map(|&w| w * half / PI).collect(),
        );
        let (t0, t1) = self.loop_range;
        if t1 > t0 {
            let (half, mid) = (0.5 * (t1 - t0), 0.5 * (t1 + t0));
            let b = self.params.b();
            accumulate(
                rule.0
                    .iter()
                    .map(|&x| joukowski(b * (1.0 - Complex64::from_polar(1.0, mid + half * x))))
                    .collect(),
                rule.1.iter().map(|&w| w * half / (2.0 * PI)).collect(),
            );
        }
        out
    }

    /// Position of `z` in `[0, 1]` such that the predicted measure becomes
    /// the uniform law: `s/π` along `I_b`, then `β/π + (t − arg c_+)/2π` along
    /// the loop.
    pub fn coordinate(&self, z: Complex64, class: ZeroClass) -> f64 {
        let (t0, t1) = self.loop_range;
        if class == ZeroClass::NearLoop && t1 > t0 {
            let w = phi_b(&self.params, z)[0].value;
            let t = (positive_arg(w) - t0).rem_euclid(2.0 * PI);
            return (self.beta / PI + t / (2.0 * PI)).clamp(0.0, 1.0);
        }
        match self.params.u(z) {
            Ok(u) => u.re.clamp(-1.0, 1.0).acos() / PI,
            Err(_) => 0.5,
        }
    }
}

/// Kolmogorov distance between the empirical law of `coords` and the
/// uniform law on `[0, 1]`.
pub fn kolmogorov_uniform(coords: &[f64]) -> f64 {
    let mut x = coords.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &xi)| ((i + 1) as f64 / n - xi).max(xi - i as f64 / n))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentVector {
    pub k_max: usize,
    /// `m_1..m_{k_max}`
    pub moments: Vec<Complex64>,
}

/// Moments of the equilibrium measure, `m_k = (1/2π)∫ Ψ(e^{it})^k dt`.
///
/// With `ζ = aw + b` the integral becomes `(1/2πi)∮ J(ζ)^k dζ/(ζ − b)`, and
/// the contour is moved to `|ζ| = max(1, 1.1|b|)`, clear of the unit circle
/// where `J(ζ)^k` suffers cancellation. The trapezoid rule is doubled until
/// successive results agree to `1e−11`.
pub fn equilibrium_moments(params: &AirfoilParams, k_max: usize) -> Result<MomentVector> {
    let b = params.b();
    let r = (1.1 * b.norm()).max(1.0);
    // moments and, per k, the largest summand: the round-off floor
    let on_grid = |m: usize| {
        let mut acc = vec![Complex64::new(0.0, 0.0); k_max];
        let mut peak = vec![0.0f64; k_max];
        for j in 0..m {
            let zeta = Complex64::from_polar(r, 2.0 * PI * j as f64 / m as f64);
            let jz = joukowski(zeta);
            let mut p = zeta / (zeta - b);
            for (a, pk) in acc.iter_mut().zip(peak.iter_mut()) {
                p *= jz;
                *a += p / m as f64;
                *pk = pk.max(p.norm());
            }
        }
        (acc, peak)
    };
    let mut samples = (4 * k_max).max(64).next_power_of_two();
    let (mut prev, _) = on_grid(samples);
    while samples < EQ_MAX_SAMPLES {
        samples *= 2;
        let (next, peak) = on_grid(samples);
        let settled = next.iter().zip(&prev).zip(&peak).all(|((x, y), pk)| {
            (x - y).norm() <= (EQ_MOMENT_TOL * x.norm().max(1.0)).max(64.0 * f64::EPSILON * pk)
        });
        prev = next;
        if settled {
            return Ok(MomentVector {
                k_max,
                moments: prev,
            });
        }
    }
    Err(FaberError::Resolution {
        degree: k_max,
        samples,
    })
}

/// Uniform probability measure on the zeros.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalMeasure {
    pub atoms: Vec<Complex64>,
}

fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (l, r) = v.split_at(v.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

impl EmpiricalMeasure {
    pub fn new(atoms: Vec<Complex64>) -> Self {
        EmpiricalMeasure { atoms }
    }

    /// `(1/n)Σ z_j^k`, `k = 1..=k_max`, summed pairwise in atom order.
    pub fn moments(&self, k_max: usize) -> Vec<Complex64> {
        let n = self.atoms.len() as f64;
        let mut powers = self.atoms.clone();
        let mut out = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            if k > 1 {
                for (p, &z) in powers.iter_mut().zip(&self.atoms) {
                    *p *= z;
                }
            }
            out.push(pairwise_sum(&powers) / n);
        }
        out
    }
}

/// `tol_quad` by degree.
pub fn default_tol_quad(n: usize) -> f64 {
    if n <= 60 {
        1e-6
    } else {
        1e-4
    }
}

/// Highest `k` checked in the quadrature identity at degree `n`.
pub fn quad_k_max(n: usize) -> usize {
    n.min(120)
}

/// `r_k = |m_k − (1/n)Σ z_j^k|` for `k = 1..=min(n, 120)`.
pub fn quadrature_residuals(params: &AirfoilParams, zeros: &ZeroSet) -> Result<Vec<f64>> {
    let k_max = quad_k_max(zeros.n);
    let eq = equilibrium_moments(params, k_max)?;
    let emp = EmpiricalMeasure::new(zeros.zeros.clone()).moments(k_max);
    Ok(eq
        .moments
        .iter()
        .zip(&emp)
        .map(|(m, e)| (m - e).norm())
        .collect())
}

/// `max_k r_k / max(1, |m_k|)`.
pub fn quadrature_max_relative(params: &AirfoilParams, zeros: &ZeroSet) -> Result<f64> {
    let k_max = quad_k_max(zeros.n);
    let eq = equilibrium_moments(params, k_max)?;
    let emp = EmpiricalMeasure::new(zeros.zeros.clone()).moments(k_max);
    Ok(eq
        .moments
        .iter()
        .zip(&emp)
        .map(|(m, e)| (m - e).norm() / m.norm().max(1.0))
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakStar {
    pub moment_dist: f64,
    pub cdf_dist: f64,
}

pub fn weak_star_distance(zeros: &ZeroSet, predicted: &PredictedMeasure) -> WeakStar {
    let k = MOMENT_DIST_K;
    let emp = EmpiricalMeasure::new(zeros.zeros.clone()).moments(k);
    let pred = predicted.moments(k);
    let moment_dist = emp
        .iter()
        .zip(&pred)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let coords: Vec<f64> = zeros
        .zeros
        .iter()
        .zip(&zeros.classes)
        .map(|(&z, &c)| predicted.coordinate(z, c))
        .collect();
    WeakStar {
        moment_dist,
        cdf_dist: kolmogorov_uniform(&coords),
    }
}

/// Smallest distance a test point must keep from the airfoil.
pub const TEST_POINT_MARGIN: f64 = 0.2;

fn boundary_distance(params: &AirfoilParams, z: Complex64) -> f64 {
    let boundary: Vec<Complex64> = (0..=2048)
        .filter_map(|k| {
            psi(
                params,
                Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 2048.0),
            )
            .ok()
        })
        .collect();
    polyline_distance(z, &boundary)
}

/// `|(1/n)Σ log|z − z_j| − log c_K − log|Φ(z)||` at each test point.
pub fn potential_check(
    params: &AirfoilParams,
    zeros: &ZeroSet,
    test_points: &[Complex64],
) -> Result<Vec<f64>> {
    let log_cap = params.capacity().ln();
    test_points
        .iter()
        .map(|&z| {
            let w = phi(params, z)?;
            if z.norm() < 1e3 && boundary_distance(params, z) < TEST_POINT_MARGIN {
                return Err(FaberError::Domain {
                    point: z,
                    reason: format!("closer than {TEST_POINT_MARGIN} to the airfoil"),
                });
            }
            let logs: Vec<f64> = zeros.zeros.iter().map(|&y| (z - y).norm().ln()).collect();
            let mean = logs.iter().sum::<f64>() / zeros.n as f64;
            Ok((mean - log_cap - w.norm().ln()).abs())
        })
        .collect()
}

/// Eight points `Ψ(r e^{2πik/8})`, with `r` grown until each keeps the margin.
pub fn default_test_points(params: &AirfoilParams) -> Vec<Complex64> {
    let mut r: f64 = 1.2;
    loop {
        let pts: Vec<Complex64> = (0..8)
            .filter_map(|k| psi(params, Complex64::from_polar(r, 2.0 * PI * k as f64 / 8.0)).ok())
            .collect();
        if pts.len() == 8
            && pts
                .iter()
                .all(|&z| boundary_distance(params, z) >= TEST_POINT_MARGIN + 0.05)
        {
            return pts;
        }
        r *= 1.1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Masses {
    pub segment: f64,
    #[serde(rename = "loop")]
    pub loop_: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub segment: usize,
    #[serde(rename = "loop")]
    pub loop_: usize,
    pub other: usize,
}

/// Everything `verify` reports for one zero set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticReport {
    pub case: String,
    pub masses: Masses,
    pub moment_dist: f64,
    pub cdf_dist: f64,
    pub quad_max_residual: f64,
    pub potential_max_dev: f64,
    pub counts: Counts,
}

pub fn diagnose(params: &AirfoilParams, zeros: &ZeroSet) -> Result<DiagnosticReport> {
    let pred = predicted(params)?;
    let ws = weak_star_distance(zeros, &pred);
    let quad = quadrature_max_relative(params, zeros)?;
    let pot = potential_check(params, zeros, &default_test_points(params))?
        .into_iter()
        .fold(0.0, f64::max);
    let (segment, loop_, other) = zeros.counts();
    Ok(DiagnosticReport {
        case: pred.case.as_str().to_string(),
        masses: Masses {
            segment: pred.mass_segment,
            loop_: pred.mass_loop,
        },
        moment_dist: ws.moment_dist,
        cdf_dist: ws.cdf_dist,
        quad_max_residual: quad,
        potential_max_dev: pot,
        counts: Counts {
            segment,
            loop_,
            other,
        },
    })
}

/// `∫_{−1}^{1}` of [`pullback_density`] by adaptive quadrature.
///
/// Each half is mapped through `x = ±(1 − t²)`, which turns the inverse
/// square-root endpoint behaviour into a smooth integrand. Integrating in `x`
/// directly cannot do better than about `1e−8`: the mass within one ulp of
/// `±1` is of that order.
pub fn pullback_total_mass(params: &AirfoilParams) -> Result<f64> {
    pullback_density(params, 0.0)?;
    let b = params.b().re;
    let regular = |x: f64| (1.0 - b * x) / (PI * (1.0 + b * b - 2.0 * b * x));
    // dx/√(1−x²) = 2 dt/√(2 − t²)
    let right = |t: f64| 2.0 * regular(1.0 - t * t) / (2.0 - t * t).sqrt();
    let left = |t: f64| 2.0 * regular(t * t - 1.0) / (2.0 - t * t).sqrt();
    Ok(
        quadrature::adaptive(&right, 0.0, 1.0, 1e-13)
            + quadrature::adaptive(&left, 0.0, 1.0, 1e-13),
    )
}

/// `∫ f` over a Gauss–Legendre rule, re-exported for the figure code.
pub fn gl_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, nodes: usize) -> f64 {
    integrate(f, a, b, &gauss_legendre(nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::params_from;
    use crate::rootfind::{compute_zeros, SeedMethod};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
    }

    /// `m_k = 2^{−k} Σ_{j ≤ k/2} C(k, j) b^{k−2j}` from the residues of
    /// `J(ζ)^k/(ζ − b)` inside the circle.
    fn exact_moment(b: Complex64, k: usize) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..=k / 2 {
            s += binom(k, j) * b.powu((k - 2 * j) as u32);
        }
        s / 2f64.powi(k as i32)
    }

    fn presets() -> Vec<AirfoilParams> {
        vec![
            params_from(1.26, 0.0).unwrap(),
            params_from(2.1, 0.0).unwrap(),
            params_from(2.1, 0.2).unwrap(),
        ]
    }

    #[test]
    fn arcsine_limit_and_ullman() {
        let p = params_from(1.000001, 0.0).unwrap();
        for &x in &[-0.9, 0.0, 0.3, 0.99] {
            let arcsine = 1.0 / (PI * (1.0f64 - x * x).sqrt());
            assert!((pullback_density(&p, x).unwrap() - arcsine).abs() < 1e-5 * arcsine);
        }
        for r in [1.1, 1.26, 1.5] {
            let p = params_from(r, 0.0).unwrap();
            let alpha = (r - 1.0) / 2.0;
            for k in 0..1000 {
                let x = -0.9995 + 1.999 * k as f64 / 999.0;
                let d = pullback_density(&p, x).unwrap();
                assert!((d - ullman_density(alpha, x)).abs() <= 1e-12 * d);
            }
        }
    }

    #[test]
    fn pullback_errors() {
        let p = params_from(1.26, 0.0).unwrap();
        assert!(matches!(
            pullback_density(&p, 1.0),
            Err(FaberError::Domain { .. })
        ));
        assert!(pullback_density(&params_from(2.1, 0.2).unwrap(), 0.0).is_err());
    }

    #[test]
    fn pullback_integrates_to_one() {
        for r in [1.1, 1.26, 1.5] {
            let total = pullback_total_mass(&params_from(r, 0.0).unwrap()).unwrap();
            assert!((total - 1.0).abs() < 1e-8, "R = {r}: {total}");
        }
    }

    #[test]
    fn mass_split_for_real_b() {
        let pred = predicted(&params_from(2.1, 0.0).unwrap()).unwrap();
        assert!((pred.mass_segment - 0.300396575437914).abs() < 1e-12);
        assert!((pred.mass_loop - 0.699603424562086).abs() < 1e-12);
        let (seg, lp) = real_mass_formula(-1.1);
        assert!((pred.mass_segment - seg).abs() < 1e-12 && (pred.mass_loop - lp).abs() < 1e-12);
        let (seg, lp) = real_mass_formula(-0.5);
        assert!((seg - 1.0).abs() < 1e-15 && lp.abs() < 1e-15);
    }

    #[test]
    fn masses_sum_to_one() {
        for (r, t) in [
            (1.26, 0.0),
            (2.1, 0.0),
            (2.1, 0.2),
            (1.45, 0.2),
            (3.0, -0.5),
            (1.5 / 0.2f64.cos(), 0.2),
        ] {
            let pred = predicted(&params_from(r, t).unwrap()).unwrap();
            assert!((pred.mass_segment + pred.mass_loop - 1.0).abs() < 1e-10);
            if pred.case != CaseTag::Supercritical {
                assert_eq!(pred.mass_loop, 0.0);
                assert!(pred.loop_part.is_empty());
            }
        }
    }

    #[test]
    fn segment_density_matches_closed_form() {
        let p = params_from(1.26, 0.0).unwrap();
        let pred = predicted(&p).unwrap();
        for s in &pred.segment_part {
            let exact = pullback_density(&p, s.point.re).unwrap();
            assert!((s.density - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn equilibrium_moments_exact() {
        for p in presets() {
            let eq = equilibrium_moments(&p, 60).unwrap();
            assert!((eq.moments[0] - p.b() / 2.0).norm() < 1e-14);
            for (k, m) in eq.moments.iter().enumerate() {
                let e = exact_moment(p.b(), k + 1);
                assert!((m - e).norm() <= 1e-11 * e.norm().max(1.0), "k = {}", k + 1);
            }
        }
    }

    #[test]
    fn predicted_moments_equal_equilibrium_moments() {
        for (r, t) in [
            (1.26, 0.0),
            (2.1, 0.0),
            (2.1, 0.2),
            (1.45, 0.2),
            (3.0, -0.5),
        ] {
            let p = params_from(r, t).unwrap();
            let pred = predicted(&p).unwrap().moments(20);
            for (k, m) in pred.iter().enumerate() {
                let e = exact_moment(p.b(), k + 1);
                assert!(
                    (m - e).norm() <= 1e-9 * e.norm().max(1.0),
                    "({r}, {t}) k = {}",
                    k + 1
                );
            }
        }
    }

    #[test]
    fn empirical_moments_and_quadrature() {
        let p = params_from(1.26, 0.0).unwrap();
        let set = compute_zeros(&p, 20, SeedMethod::Auto).unwrap();
        assert!(quadrature_max_relative(&p, &set).unwrap() < 1e-7);
        let one = compute_zeros(&p, 1, SeedMethod::Auto).unwrap();
        assert!(quadrature_residuals(&p, &one).unwrap()[0] < 1e-16);
        let mut bad = set.clone();
        bad.zeros[0] += 1e-3;
        let worst = quadrature_residuals(&p, &bad)
            .unwrap()
            .into_iter()
            .fold(0.0, f64::max);
        assert!(worst >= 1e-3 / 20.0);
        assert!(quadrature_max_relative(&p, &bad).unwrap() > 1e-6);
    }

    #[test]
    fn kolmogorov_basics() {
        let mid: Vec<f64> = (0..50).map(|i| (i as f64 + 0.5) / 50.0).collect();
        assert!((kolmogorov_uniform(&mid) - 0.01).abs() < 1e-15);
        assert_eq!(kolmogorov_uniform(&[0.0]), 1.0);
    }

    #[test]
    fn predicted_against_itself() {
        let p = params_from(2.1, 0.2).unwrap();
        let pred = predicted(&p).unwrap();
        let a = pred.moments(20);
        let b = pred.moments(20);
        assert_eq!(
            a.iter()
                .zip(&b)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max),
            0.0
        );
    }

    #[test]
    fn loop_fraction_near_mass() {
        let p = params_from(2.1, 0.0).unwrap();
        let set = compute_zeros(&p, 70, SeedMethod::Auto).unwrap();
        let (_, lp, _) = set.counts();
        let frac = lp as f64 / 70.0;
        assert!((frac - 0.6996).abs() <= 2.0 / 70f64.sqrt());
    }

    #[test]
    fn cdf_distance_shrinks() {
        let p = params_from(1.26, 0.0).unwrap();
        let pred = predicted(&p).unwrap();
        let d25 =
            weak_star_distance(&compute_zeros(&p, 25, SeedMethod::Auto).unwrap(), &pred).cdf_dist;
        let d100 =
            weak_star_distance(&compute_zeros(&p, 100, SeedMethod::Auto).unwrap(), &pred).cdf_dist;
        assert!(d100 < d25 && d25 < 0.1, "{d25} {d100}");
    }

    #[test]
    fn potential_examples() {
        let p = params_from(1.26, 0.0).unwrap();
        let set = compute_zeros(&p, 60, SeedMethod::Auto).unwrap();
        let d = potential_check(&p, &set, &[c(3.0, 0.0), c(1e6, 0.0)]).unwrap();
        assert!(d[0] < 0.05 && d[1] < 1e-4);
        assert!(matches!(
            potential_check(&p, &set, &[c(0.0, 0.0)]),
            Err(FaberError::Domain { .. })
        ));
        let q = params_from(2.1, 0.2).unwrap();
        let pts = default_test_points(&q);
        assert_eq!(pts.len(), 8);
        let set = compute_zeros(&q, 80, SeedMethod::Auto).unwrap();
        let worst = potential_check(&q, &set, &pts)
            .unwrap()
            .into_iter()
            .fold(0.0, f64::max);
        assert!(worst < 0.05);
    }

    #[test]
    fn report_json_shape() {
        let p = params_from(2.1, 0.0).unwrap();
        let set = compute_zeros(&p, 30, SeedMethod::Auto).unwrap();
        let rep = diagnose(&p, &set).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        for key in [
            "case",
            "masses",
            "moment_dist",
            "cdf_dist",
            "quad_max_residual",
            "potential_max_dev",
            "counts",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["counts"].get("loop").is_some() && v["masses"].get("loop").is_some());
    }
}
