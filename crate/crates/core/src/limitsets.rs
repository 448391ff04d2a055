//! Geometry of the predicted zero supports.
//!
//! The arc `𝒜 = U⁻¹([−1, 1])` runs from `b` (where `U = 0`) to the points
//! `±1`. The circle `𝒞_b = {|z − c| = |b|/2}` bounds the region where the
//! right-hand side of the residual equation dominates. When the two meet
//! (`R cos θ ≥ 3/2`) they do so at a single point `i_b`, and the zeros split
//! between the part `I_b` of `𝒜` outside `𝒞_b` and the loop
//! `ℒ_b⁺ = {|φ_b| = 1}` inside it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::conformal::{exterior_sqrt, joukowski, phi_b, psi, AirfoilParams};
use crate::error::{FaberError, Result};

/// Width of the band around `R cos θ = 3/2` treated as critical.
pub const CRITICAL_TOL: f64 = 1e-12;

const PHASE_ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    Subcritical,
    Critical,
    Supercritical,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Subcritical => "subcritical",
            CaseTag::Critical => "critical",
            CaseTag::Supercritical => "supercritical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseClass {
    pub tag: CaseTag,
    pub rcos: f64,
}

pub fn classify(params: &AirfoilParams) -> CaseClass {
    let rcos = params.rcos();
    let tag = if (rcos - 1.5).abs() <= CRITICAL_TOL {
        CaseTag::Critical
    } else if rcos < 1.5 {
        CaseTag::Subcritical
    } else {
        CaseTag::Supercritical
    };
    CaseClass { tag, rcos }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcSample {
    pub rho: f64,
    pub z_plus: Complex64,
    pub z_minus: Complex64,
}

/// Samples of `𝒜` through `z = b(1−ρ) ± √(ρ(1−b²+b²ρ))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcA {
    /// Ordered by `ρ` from 0 to 1; `z_plus` ends at `+1`, `z_minus` at `−1`.
    pub samples: Vec<ArcSample>,
    pub is_interval: bool,
    pub has_circle_component: bool,
}

/// `m` samples of `𝒜`, Chebyshev-spaced in `√ρ`.
pub fn arc_a(params: &AirfoilParams, m: usize) -> ArcA {
    let m = m.max(2);
    let b = params.b();
    let mut samples = Vec::with_capacity(m);
    let mut prev_q: Option<Complex64> = None;
    for j in 0..m {
        let t = (1.0 - (PI * j as f64 / (m - 1) as f64).cos()) / 2.0;
        let rho = t * t;
        let mut q = (rho * (1.0 - b * b + b * b * rho)).sqrt();
        if let Some(p) = prev_q {
            if (q - p).norm() > (q + p).norm() {
                q = -q;
            }
        }
        prev_q = Some(q);
        samples.push(ArcSample {
            rho,
            z_plus: b * (1.0 - rho) + q,
            z_minus: b * (1.0 - rho) - q,
        });
    }
    let last = samples[m - 1];
    if last.z_plus.re < last.z_minus.re {
        for s in &mut samples {
            std::mem::swap(&mut s.z_plus, &mut s.z_minus);
        }
    }
    let real_b = params.is_real();
    ArcA {
        samples,
        is_interval: real_b && b.re > -1.0,
        has_circle_component: real_b && b.re <= -1.0,
    }
}

/// `U⁻¹(u)` for `u ∈ [−1, 1]`: the point of `𝒜` where the branch-fixed `U`
/// takes the value `u`. For real `b ≤ −1` the half `u < 0` runs along the
/// cut `(−∞, c)` of `U` and is not meaningful.
pub fn arc_point(params: &AirfoilParams, u: f64) -> Complex64 {
    let b = params.b();
    let rho = u * u;
    let q = (rho * (1.0 - b * b + b * b * rho)).sqrt();
    let cands = [b * (1.0 - rho) + q, b * (1.0 - rho) - q];
    let miss = |z: Complex64| match params.u(z) {
        Ok(v) => (v - u).norm(),
        Err(_) => f64::INFINITY,
    };
    let (m0, m1) = (miss(cands[0]), miss(cands[1]));
    if (m0 - m1).abs() <= 1e-12 * (1.0 + m0.max(m1)) {
        if cands[0].re >= cands[1].re {
            cands[0]
        } else {
            cands[1]
        }
    } else if m0 < m1 {
        cands[0]
    } else {
        cands[1]
    }
}

/// The intersection point `i_b` of `𝒜` and `𝒞_b`, or `None` below the threshold.
///
/// `i_b = b + √ρ·b·x` with `ρ = (b² + b̄² − 1)²/(4|b|⁴)` and `x` the
/// unimodular root of `x² + 2√ρ x + (1 − 1/b²) = 0`.
pub fn intersection_ib(params: &AirfoilParams) -> Result<Option<Complex64>> {
    if classify(params).tag == CaseTag::Subcritical {
        return Ok(None);
    }
    let b = params.b();
    let b2 = b * b;
    let rho = (b2 + b2.conj() - 1.0).norm_sqr() / (4.0 * b.norm().powi(4));
    let sr = rho.sqrt();
    // x = −√ρ ± √(ρ − 1 + 1/b²)
    let disc = (sr * sr - 1.0 + b2.inv()).sqrt();
    let roots = [-sr + disc, -sr - disc];
    let dev = |x: Complex64| (x.norm() - 1.0).abs();
    let x = if dev(roots[0]) <= dev(roots[1]) {
        roots[0]
    } else {
        roots[1]
    };
    if dev(x) > PHASE_ROOT_TOL {
        return Err(FaberError::Branch(dev(x)));
    }
    Ok(Some(b + sr * b * x))
}

/// `(c_+, c_−)`: the two unimodular values `φ_b` takes at `i_b` from either
/// side of the cut. `c_+` has the smaller argument in `(0, 2π)`.
pub fn loop_endpoints(params: &AirfoilParams, ib: Complex64) -> (Complex64, Complex64) {
    let b = params.b();
    let zeta = ib + exterior_sqrt(ib);
    let p = 1.0 - zeta / b;
    let q = 1.0 - 1.0 / (zeta * b);
    if positive_arg(p) <= positive_arg(q) {
        (p, q)
    } else {
        (q, p)
    }
}

/// Argument in `[0, 2π)`.
pub fn positive_arg(w: Complex64) -> f64 {
    let t = w.arg();
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopLbPlus {
    /// `J(b(1 − e^{it}))` for `t` from `arg c_+` to `arg c_−`.
    pub samples: Vec<Complex64>,
    /// The parameters `t` of the samples.
    pub params: Vec<f64>,
    pub corner: Complex64,
    pub endpoints_on_circle: (Complex64, Complex64),
}

/// `m` samples of the loop `ℒ_b⁺`, the image under `φ_b⁻¹` of the arc of the
/// unit circle from `c_+` counterclockwise to `c_−`.
pub fn loop_points(params: &AirfoilParams, m: usize) -> Result<LoopLbPlus> {
    let case = classify(params);
    let ib = match intersection_ib(params)? {
        Some(ib) => ib,
        None => {
            return Err(FaberError::Case {
                expected: "critical or supercritical",
            })
        }
    };
    let (cp, cm) = loop_endpoints(params, ib);
    if case.tag == CaseTag::Critical {
        return Ok(LoopLbPlus {
            samples: Vec::new(),
            params: Vec::new(),
            corner: Complex64::new(-1.0, 0.0),
            endpoints_on_circle: (cp, cm),
        });
    }
    let m = m.max(2);
    let (t0, t1) = (positive_arg(cp), positive_arg(cm));
    let b = params.b();
    let ts: Vec<f64> = (0..m)
        .map(|k| t0 + (t1 - t0) * k as f64 / (m - 1) as f64)
        .collect();
    let samples = ts
        .iter()
        .map(|&t| joukowski(b * (1.0 - Complex64::from_polar(1.0, t))))
        .collect();
    Ok(LoopLbPlus {
        samples,
        params: ts,
        corner: ib,
        endpoints_on_circle: (cp, cm),
    })
}

/// The exterior part `ℒ_b⁻` for figures: the complementary arc from `c_−`
/// through `w = 1` back to `c_+`. It passes through infinity at `w = 1`, so it
/// is returned as two pieces clipped to `|z| ≤ clip`.
pub fn loop_minus(params: &AirfoilParams, m: usize, clip: f64) -> Result<Vec<Vec<Complex64>>> {
    let lp = loop_points(params, 2)?;
    let (cp, cm) = lp.endpoints_on_circle;
    let (t0, t1) = (positive_arg(cm), positive_arg(cp) + 2.0 * PI);
    let b = params.b();
    let mut pieces = vec![Vec::new(), Vec::new()];
    for k in 0..m.max(2) {
        let t = t0 + (t1 - t0) * k as f64 / (m.max(2) - 1) as f64;
        let z = joukowski(b * (1.0 - Complex64::from_polar(1.0, t)));
        if z.norm() <= clip {
            let piece = if t < 2.0 * PI { 0 } else { 1 };
            pieces[piece].push(z);
        }
    }
    Ok(pieces)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    Inside,
    On,
    Outside,
}

/// Position of `z` relative to `𝒞_b`, from `|z − c|` against `|b|/2`.
pub fn cb_region(params: &AirfoilParams, z: Complex64) -> Region {
    let d = (z - params.c()).norm() - params.b().norm() / 2.0;
    if d.abs() <= 1e-12 {
        Region::On
    } else if d < 0.0 {
        Region::Inside
    } else {
        Region::Outside
    }
}

/// Same as [`cb_region`] through `|V(z)|` against `|b|²`.
pub fn cb_region_by_v(params: &AirfoilParams, z: Complex64) -> Region {
    let bn = params.b().norm();
    let d = (params.v(z).norm() - bn * bn) / (2.0 * bn);
    if d.abs() <= 1e-12 {
        Region::On
    } else if d < 0.0 {
        Region::Inside
    } else {
        Region::Outside
    }
}

fn circle(center: Complex64, radius: f64, m: usize) -> Vec<Complex64> {
    (0..=m)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

/// Closed polyline of `𝒞_b`.
pub fn circle_cb(params: &AirfoilParams, m: usize) -> Vec<Complex64> {
    circle(params.c(), params.b().norm() / 2.0, m)
}

/// Closed polyline of `𝒞̃_b = {|z − c| = c − b}` when `b ≤ −1` is real.
pub fn circle_ctilde(params: &AirfoilParams, m: usize) -> Option<Vec<Complex64>> {
    if !(params.is_real() && params.b().re <= -1.0) {
        return None;
    }
    Some(circle(params.c(), (params.c() - params.b()).re, m))
}

/// Closed polyline of the airfoil `Ψ(e^{it})`.
pub fn airfoil_boundary(params: &AirfoilParams, m: usize) -> Vec<Complex64> {
    (0..=m)
        .filter_map(|k| {
            psi(
                params,
                Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64),
            )
            .ok()
        })
        .collect()
}

/// `β = arccos U(i_b)`: the part `I_b` of `𝒜` is `U⁻¹(cos s)`, `s ∈ [0, β]`.
/// Equal to `π` (all of `𝒜`) below and at the threshold.
pub fn segment_extent(params: &AirfoilParams, ib: Option<Complex64>) -> f64 {
    match (classify(params).tag, ib) {
        (CaseTag::Supercritical, Some(ib)) => match params.u(ib) {
            Ok(u) => u.re.clamp(-1.0, 1.0).acos(),
            Err(_) => PI,
        },
        _ => PI,
    }
}

/// Polyline of `I_b` with `m + 1` points from `z = 1` (`s = 0`) to `s = β`.
pub fn segment_points(params: &AirfoilParams, beta: f64, m: usize) -> Vec<(f64, Complex64)> {
    (0..=m)
        .map(|k| {
            let s = beta * k as f64 / m as f64;
            (s, arc_point(params, s.cos()))
        })
        .collect()
}

/// Everything the other modules need about the predicted supports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSets {
    pub case: CaseClass,
    pub arc: ArcA,
    pub ib: Option<Complex64>,
    pub beta: f64,
    /// `(s, U⁻¹(cos s))` along `I_b`
    pub segment: Vec<(f64, Complex64)>,
    pub loop_plus: Option<LoopLbPlus>,
    pub cb: Vec<Complex64>,
    pub ctilde: Option<Vec<Complex64>>,
}

/// Sample counts used for classification polylines.
pub const DEFAULT_CURVE_SAMPLES: usize = 2000;

pub fn limit_sets(params: &AirfoilParams, m: usize) -> Result<LimitSets> {
    let case = classify(params);
    let ib = intersection_ib(params)?;
    let beta = segment_extent(params, ib);
    let loop_plus = match case.tag {
        CaseTag::Subcritical => None,
        _ => Some(loop_points(params, m)?),
    };
    Ok(LimitSets {
        case,
        arc: arc_a(params, m),
        ib,
        beta,
        segment: segment_points(params, beta, m),
        loop_plus,
        cb: circle_cb(params, m),
        ctilde: circle_ctilde(params, m),
    })
}

/// Distance from `z` to a polyline.
pub fn polyline_distance(z: Complex64, line: &[Complex64]) -> f64 {
    match line.len() {
        0 => f64::INFINITY,
        1 => (z - line[0]).norm(),
        _ => line
            .windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                let len2 = d.norm_sqr();
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    (((z - w[0]) * d.conj()).re / len2).clamp(0.0, 1.0)
                };
                (z - (w[0] + d * t)).norm()
            })
            .fold(f64::INFINITY, f64::min),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroClass {
    NearSegment,
    NearLoop,
    Unclassified,
}

impl ZeroClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroClass::NearSegment => "segment",
            ZeroClass::NearLoop => "loop",
            ZeroClass::Unclassified => "other",
        }
    }
}

impl LimitSets {
    pub fn segment_polyline(&self) -> Vec<Complex64> {
        self.segment.iter().map(|&(_, z)| z).collect()
    }

    /// Near-segment / near-loop within `5/√n`; the closer set wins a tie.
    pub fn classify_point(&self, z: Complex64, n: usize) -> ZeroClass {
        let threshold = 5.0 / (n.max(1) as f64).sqrt();
        let ds = polyline_distance(z, &self.segment_polyline());
        let dl = self
            .loop_plus
            .as_ref()
            .map(|l| polyline_distance(z, &l.samples))
            .unwrap_or(f64::INFINITY);
        match (ds < threshold, dl < threshold) {
            (false, false) => ZeroClass::Unclassified,
            (true, false) => ZeroClass::NearSegment,
            (false, true) => ZeroClass::NearLoop,
            (true, true) if ds <= dl => ZeroClass::NearSegment,
            (true, true) => ZeroClass::NearLoop,
        }
    }
}

/// Convenience: the one-sided limits of `φ_b` at `z` as a pair `(+, −)`.
pub fn phi_b_sides(params: &AirfoilParams, z: Complex64) -> (Complex64, Complex64) {
    let [p, m] = phi_b(params, z);
    (p.value, m.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::params_from;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_b(b: f64) -> AirfoilParams {
        params_from(1.0 - b, 0.0).unwrap()
    }

    fn critical(theta: f64) -> AirfoilParams {
        params_from(1.5 / theta.cos(), theta).unwrap()
    }

    #[test]
    fn case_classification() {
        assert_eq!(
            classify(&params_from(1.26, 0.0).unwrap()).tag,
            CaseTag::Subcritical
        );
        let sup = classify(&params_from(2.1, 0.2).unwrap());
        assert_eq!(sup.tag, CaseTag::Supercritical);
        assert_abs_diff_eq!(sup.rcos, 2.1 * 0.2f64.cos(), epsilon = 1e-15);
        assert_eq!(classify(&critical(0.2)).tag, CaseTag::Critical);
        assert_eq!(
            classify(&params_from(1.45, 0.2).unwrap()).tag,
            CaseTag::Subcritical
        );
    }

    #[test]
    fn arc_endpoints_and_u_squared() {
        for p in [
            real_b(-0.5),
            real_b(-0.26),
            params_from(1.45, 0.2).unwrap(),
            params_from(2.1, 0.2).unwrap(),
        ] {
            let arc = arc_a(&p, 200);
            let first = arc.samples[0];
            assert_eq!(first.rho, 0.0);
            assert!((first.z_plus - p.b()).norm() < 1e-15);
            assert!((first.z_minus - p.b()).norm() < 1e-15);
            let last = arc.samples[199];
            assert_abs_diff_eq!(last.rho, 1.0, epsilon = 1e-15);
            assert!((last.z_plus - 1.0).norm() < 1e-12);
            assert!((last.z_minus + 1.0).norm() < 1e-12);
            for s in &arc.samples {
                for z in [s.z_plus, s.z_minus] {
                    if (z - p.c()).norm() < 1e-9 {
                        continue;
                    }
                    let u = p.u(z).unwrap();
                    assert!((u * u - s.rho).norm() <= 1e-10 * s.rho.max(1e-3));
                }
            }
        }
    }

    #[test]
    fn interval_case_is_real() {
        let arc = arc_a(&real_b(-0.5), 300);
        assert!(arc.is_interval && !arc.has_circle_component);
        for s in &arc.samples {
            for z in [s.z_plus, s.z_minus] {
                assert!(z.im.abs() < 1e-15 && z.re.abs() <= 1.0 + 1e-15);
            }
        }
    }

    #[test]
    fn inverse_b_on_arc_for_b_below_minus_one() {
        let p = real_b(-1.2);
        let arc = arc_a(&p, 2);
        assert!(arc.has_circle_component && !arc.is_interval);
        // ρ with b(1−ρ) = 1/b, where the square root vanishes
        let b = -1.2f64;
        let rho = 1.0 - 1.0 / (b * b);
        assert_abs_diff_eq!(rho * (1.0 - b * b + b * b * rho), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b * (1.0 - rho), 1.0 / b, epsilon = 1e-15);
        // and 1/b also lies on the circle component
        let ct = circle_ctilde(&p, 8).unwrap();
        let radius = (ct[0] - p.c()).norm();
        assert_abs_diff_eq!((1.0 / b - p.c().re).abs(), radius, epsilon = 1e-14);
        assert!(circle_ctilde(&real_b(-0.5), 8).is_none());
    }

    #[test]
    fn arc_point_inverts_u() {
        for p in [
            real_b(-0.26),
            real_b(-1.1),
            params_from(2.1, 0.2).unwrap(),
            params_from(1.45, 0.2).unwrap(),
        ] {
            for k in 0..=100 {
                let u = (PI * k as f64 / 100.0).cos();
                if p.is_real() && p.b().re <= -1.0 && u < 0.0 {
                    continue;
                }
                let z = arc_point(&p, u);
                if (z - p.c()).norm() < 1e-9 {
                    continue;
                }
                assert!((p.u(z).unwrap() - u).norm() < 1e-9, "b = {} u = {u}", p.b());
            }
            assert!((arc_point(&p, 1.0) - 1.0).norm() < 1e-14);
            assert!((arc_point(&p, 0.0) - p.b()).norm() < 1e-14);
        }
    }

    #[test]
    fn intersection_real_case() {
        let p = real_b(-1.1);
        let ib = intersection_ib(&p).unwrap().unwrap();
        assert!((ib - 1.0 / (2.0 * -1.1)).norm() < 1e-12);
        for b in [-1.0, -1.1, -1.5, -2.0, -3.7] {
            let ib = intersection_ib(&real_b(b)).unwrap().unwrap();
            assert!((ib - 1.0 / (2.0 * b)).norm() < 1e-12, "b = {b}");
        }
        assert_eq!(
            intersection_ib(&params_from(1.26, 0.0).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn intersection_at_threshold_is_minus_one() {
        for theta in [0.0, 0.1, 0.2] {
            let ib = intersection_ib(&critical(theta)).unwrap().unwrap();
            assert!((ib + 1.0).norm() < 1e-8, "theta = {theta}: {ib}");
        }
    }

    #[test]
    fn intersection_lies_on_arc_and_circle() {
        for p in [
            params_from(2.1, 0.2).unwrap(),
            params_from(3.0, -0.5).unwrap(),
            real_b(-1.1),
        ] {
            let ib = intersection_ib(&p).unwrap().unwrap();
            let u = p.u(ib).unwrap();
            let u2 = u * u;
            assert!(u2.im.abs() < 1e-10 && u2.re >= -1e-10 && u2.re <= 1.0 + 1e-10);
            assert!((p.v(ib).norm() - p.b().norm_sqr()).abs() < 1e-10);
        }
    }

    #[test]
    fn endpoints_for_real_b() {
        let p = real_b(-1.1);
        let ib = intersection_ib(&p).unwrap().unwrap();
        let (cp, cm) = loop_endpoints(&p, ib);
        assert!((cp - c(0.586777, 0.809748)).norm() < 1e-6);
        assert!((cm - cp.conj()).norm() < 1e-14);
        assert_abs_diff_eq!(cp.norm(), 1.0, epsilon = 1e-12);
        let b = -1.1f64;
        let exact = c(
            1.0 - 1.0 / (2.0 * b * b),
            -(1.0 / b) * (1.0 - 1.0 / (4.0 * b * b)).sqrt(),
        );
        assert!((cp - exact).norm() < 1e-14);
        let (sp, sm) = phi_b_sides(&p, ib);
        assert!((sp - cp).norm() < 1e-9);
        assert!((sm - cm).norm() < 1e-9);
    }

    #[test]
    fn loop_lies_on_level_curve_inside_cb() {
        for p in [
            real_b(-1.1),
            params_from(2.1, 0.2).unwrap(),
            params_from(3.0, -0.4).unwrap(),
        ] {
            let lp = loop_points(&p, 400).unwrap();
            let (cp, cm) = lp.endpoints_on_circle;
            assert_abs_diff_eq!(cp.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(cm.norm(), 1.0, epsilon = 1e-12);
            for (&z, &t) in lp.samples.iter().zip(&lp.params) {
                assert!((z - p.c()).norm() - p.b().norm() / 2.0 <= 1e-10);
                if (z - lp.corner).norm() < 1e-6 {
                    continue;
                }
                let w = phi_b(&p, z)[0].value;
                assert!((w.norm() - 1.0).abs() < 1e-10);
                assert!((w - Complex64::from_polar(1.0, t)).norm() < 1e-9);
            }
            assert!((lp.samples[0] - lp.corner).norm() < 1e-7);
            assert!((lp.samples[399] - lp.corner).norm() < 1e-7);
        }
    }

    #[test]
    fn loop_symmetric_in_real_case() {
        let lp = loop_points(&real_b(-1.1), 301).unwrap();
        for k in 0..301 {
            assert!((lp.samples[k] - lp.samples[300 - k].conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn loop_requires_threshold() {
        assert!(matches!(
            loop_points(&params_from(1.26, 0.0).unwrap(), 10),
            Err(FaberError::Case { .. })
        ));
        let lp = loop_points(&critical(0.1), 10).unwrap();
        assert!(lp.samples.is_empty());
        assert_eq!(lp.corner, c(-1.0, 0.0));
    }

    #[test]
    fn cb_region_examples() {
        let p = real_b(-1.1);
        assert_eq!(cb_region(&p, p.c()), Region::Inside);
        assert_eq!(cb_region(&p, c(-1.0, 0.0)), Region::Inside);
        assert_eq!(cb_region(&p, c(2.0, 0.0)), Region::Outside);
        let on = p.c() + Complex64::from_polar(p.b().norm() / 2.0, 0.3);
        assert_eq!(cb_region(&p, on), Region::On);
        let q = -p.b() / p.sqrt_v(on);
        assert_abs_diff_eq!(q.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn dual_circle_definitions_agree() {
        for p in [
            real_b(-1.1),
            params_from(2.1, 0.2).unwrap(),
            params_from(1.26, 0.0).unwrap(),
        ] {
            for i in 0..60 {
                for j in 0..60 {
                    let z = c(-3.0 + 0.1 * i as f64, -3.0 + 0.1 * j as f64);
                    let d1 = ((z - p.c()).norm() - p.b().norm() / 2.0).abs();
                    let d2 = (p.v(z).norm() - p.b().norm_sqr()).abs();
                    assert_eq!(d1 < 1e-10, d2 < 1e-9 * p.b().norm(), "z = {z}");
                    if d1 > 1e-10 {
                        assert_eq!(cb_region(&p, z), cb_region_by_v(&p, z));
                    }
                }
            }
        }
    }

    #[test]
    fn single_intersection_of_arc_and_circle() {
        let p = params_from(2.1, 0.2).unwrap();
        let ib = intersection_ib(&p).unwrap().unwrap();
        let cb = circle_cb(&p, 4000);
        let arc: Vec<Complex64> = (0..=4000)
            .map(|k| arc_point(&p, (PI * k as f64 / 4000.0).cos()))
            .collect();
        for &z in &arc {
            if polyline_distance(z, &cb) < 2e-3 {
                assert!((z - ib).norm() < 0.05, "near-contact at {z}");
            }
        }
    }

    #[test]
    fn loop_meets_arc_only_at_corner() {
        for p in [real_b(-1.1), params_from(2.1, 0.2).unwrap()] {
            let lp = loop_points(&p, 2000).unwrap();
            let arc: Vec<Complex64> = (0..=4000)
                .map(|k| arc_point(&p, (PI * k as f64 / 4000.0).cos()))
                .collect();
            for &z in &lp.samples {
                if (z - lp.corner).norm() > 0.05 {
                    assert!(polyline_distance(z, &arc) > 1e-3, "loop touches arc at {z}");
                }
            }
        }
    }

    #[test]
    fn segment_for_real_supercritical() {
        let p = real_b(-1.1);
        let sets = limit_sets(&p, 500).unwrap();
        let (s0, z0) = sets.segment[0];
        assert_eq!(s0, 0.0);
        assert!((z0 - 1.0).norm() < 1e-14);
        let (_, zend) = *sets.segment.last().unwrap();
        assert!((zend - 1.0 / (2.0 * -1.1)).norm() < 1e-9);
        for &(_, z) in &sets.segment {
            assert!(z.im.abs() < 1e-12 && z.re >= 1.0 / (2.0 * -1.1) - 1e-9 && z.re <= 1.0 + 1e-12);
        }
        let sub = limit_sets(&params_from(1.26, 0.0).unwrap(), 100).unwrap();
        assert_eq!(sub.beta, PI);
        assert!(sub.loop_plus.is_none());
        assert!((sub.segment.last().unwrap().1 + 1.0).norm() < 1e-12);
    }

    #[test]
    fn point_classification() {
        let sets = limit_sets(&real_b(-1.1), 1000).unwrap();
        assert_eq!(
            sets.classify_point(c(0.5, 0.0), 100),
            ZeroClass::NearSegment
        );
        let top = sets.loop_plus.as_ref().unwrap().samples[500];
        assert_eq!(sets.classify_point(top, 100), ZeroClass::NearLoop);
        assert_eq!(
            sets.classify_point(c(10.0, 10.0), 100),
            ZeroClass::Unclassified
        );
        assert_abs_diff_eq!(
            polyline_distance(c(0.0, 1.0), &[c(-1.0, 0.0), c(1.0, 0.0)]),
            1.0
        );
    }
}
