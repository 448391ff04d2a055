//! Zeros of `F_n`.
//!
//! [`roots_simultaneous`] is a general Aberth solver on monomial
//! coefficients. For the Faber pipeline the same iteration runs on the
//! closed-form evaluator instead ([`roots_simultaneous_faber`]), since the
//! coefficients of `F_n` lose all relative accuracy well before `n = 60`.
//! [`roots_seeded`] starts from the predicted positions and is used for large
//! `n`; [`compute_zeros`] picks between them and cross-checks in the overlap.

mod aberth;
mod dd;
mod seeded;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

pub use aberth::{aberth, circle_guesses, AberthOutcome, RootTarget};
pub use dd::horner_dd;
pub use seeded::{
    roots_seeded_raw, seed_plan, SeedPlan, SegmentBracket, ACCEPT_RESIDUAL, DEDUP_DISTANCE,
};

use crate::conformal::{psi, AirfoilParams};
use crate::error::{FaberError, Result};
use crate::faber::{FaberEvaluator, PolyCoeffs};
use crate::limitsets::{limit_sets, LimitSets, ZeroClass, DEFAULT_CURVE_SAMPLES};

/// Gate on the scaled residual of every zero in a [`ZeroSet`].
pub const ZEROSET_MAX_RESIDUAL: f64 = 1e-7;
/// Coefficient-form residual gate of [`roots_simultaneous`].
pub const POLY_RESIDUAL_TOL: f64 = 1e-10;
/// Degrees up to which `Auto` uses the simultaneous method.
pub const SIMULTANEOUS_MAX_DEGREE: usize = 60;
/// Lower end of the window where `Auto` runs both methods.
pub const CROSS_CHECK_MIN_DEGREE: usize = 30;
/// Largest matched distance accepted by [`cross_check`].
pub const CROSS_CHECK_TOL: f64 = 1e-6;

const ABERTH_MAX_ITER: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Simultaneous,
    Seeded,
    CrossChecked,
    /// Read from a file rather than computed.
    Imported,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Simultaneous => "simultaneous",
            Method::Seeded => "seeded",
            Method::CrossChecked => "cross-checked",
            Method::Imported => "imported",
        }
    }
}

/// Which method [`compute_zeros`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedMethod {
    #[default]
    Auto,
    Simultaneous,
    Seeded,
}

impl std::str::FromStr for SeedMethod {
    type Err = FaberError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SeedMethod::Auto),
            "simultaneous" => Ok(SeedMethod::Simultaneous),
            "seeded" => Ok(SeedMethod::Seeded),
            other => Err(FaberError::Parameter(format!(
                "unknown seed method '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSet {
    pub n: usize,
    /// Sorted by real part, then imaginary part.
    pub zeros: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub method: Method,
    pub classes: Vec<ZeroClass>,
    /// Some pair of zeros is closer than [`DEDUP_DISTANCE`].
    pub clustered: bool,
}

impl ZeroSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn mean(&self) -> Complex64 {
        self.zeros.iter().sum::<Complex64>() / self.n as f64
    }

    /// `(segment, loop, other)` class counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let count = |c: ZeroClass| self.classes.iter().filter(|&&x| x == c).count();
        (
            count(ZeroClass::NearSegment),
            count(ZeroClass::NearLoop),
            count(ZeroClass::Unclassified),
        )
    }

    /// Rebuild from raw zeros, recomputing residuals and classes.
    pub fn from_zeros(
        params: &AirfoilParams,
        mut zeros: Vec<Complex64>,
        method: Method,
    ) -> Result<Self> {
        let n = zeros.len();
        if n == 0 {
            return Err(FaberError::Parameter("empty zero set".into()));
        }
        let sets = limit_sets(params, DEFAULT_CURVE_SAMPLES)?;
        sort_zeros(&mut zeros);
        let ev = FaberEvaluator::new(params, n);
        let residuals = zeros.iter().map(|&z| ev.scaled_residual(z)).collect();
        Ok(ZeroSet {
            n,
            residuals,
            method,
            classes: classify_zeros(&sets, &zeros),
            clustered: is_clustered(&zeros),
            zeros,
        })
    }
}

pub fn sort_zeros(zeros: &mut [Complex64]) {
    zeros.sort_by(|a, b| match a.re.total_cmp(&b.re) {
        Ordering::Equal => a.im.total_cmp(&b.im),
        o => o,
    });
}

fn is_clustered(zeros: &[Complex64]) -> bool {
    zeros.iter().enumerate().any(|(i, &z)| {
        zeros[i + 1..]
            .iter()
            .any(|&y| (z - y).norm() <= DEDUP_DISTANCE)
    })
}

pub fn classify_zeros(sets: &LimitSets, zeros: &[Complex64]) -> Vec<ZeroClass> {
    zeros
        .iter()
        .map(|&z| sets.classify_point(z, zeros.len()))
        .collect()
}

/// Cauchy-type bound `2 max |c_{n−k}/c_n|^{1/k}` (Fujiwara) on root moduli.
fn fujiwara_bound(c: &[Complex64]) -> f64 {
    let n = c.len() - 1;
    let lead = c[n].norm();
    (1..=n)
        .map(|k| {
            let ratio = c[n - k].norm() / lead;
            if k == n {
                2.0 * (ratio / 2.0).powf(1.0 / k as f64)
            } else {
                2.0 * ratio.powf(1.0 / k as f64)
            }
        })
        .fold(0.0, f64::max)
}

/// All roots of a polynomial given by coefficients.
///
/// Coefficients are rescaled by the geometric mean root size before the
/// Aberth iteration; roots whose residual stays above `1e−10` are polished
/// by Newton steps with double-double Horner evaluation.
pub fn roots_simultaneous(poly: &PolyCoeffs) -> Result<ZeroSet> {
    let n = poly.degree();
    if n == 0 {
        return Err(FaberError::Parameter(
            "polynomial of degree 0 has no roots".into(),
        ));
    }
    let c = poly.coeffs();
    let sigma = if c[0].norm() > 0.0 {
        (c[0].norm() / c[n].norm()).powf(1.0 / n as f64)
    } else {
        1.0
    };
    let scaled = PolyCoeffs::new(
        c.iter()
            .enumerate()
            .map(|(k, &ck)| ck * sigma.powi(k as i32 - n as i32) / c[n])
            .collect(),
    );
    let sc = scaled.coeffs();
    let center = -sc[n - 1] / n as f64;
    let radius = fujiwara_bound(sc).max(1e-3);
    let out = aberth(
        &scaled,
        circle_guesses(center, radius, n),
        &[],
        ABERTH_MAX_ITER,
    );

    let mut zeros: Vec<Complex64> = out.roots.iter().map(|&y| y * sigma).collect();
    for z in zeros.iter_mut() {
        if poly.scaled_residual(*z) > POLY_RESIDUAL_TOL {
            *z = polish_dd(poly, *z);
        }
    }
    let residuals: Vec<f64> = zeros.iter().map(|&z| poly.scaled_residual(z)).collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= POLY_RESIDUAL_TOL) {
        return Err(FaberError::Convergence {
            iterations: out.iterations,
            max_residual: worst,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| match zeros[i].re.total_cmp(&zeros[j].re) {
        Ordering::Equal => zeros[i].im.total_cmp(&zeros[j].im),
        o => o,
    });
    let zeros: Vec<Complex64> = order.iter().map(|&i| zeros[i]).collect();
    Ok(ZeroSet {
        n,
        clustered: is_clustered(&zeros),
        residuals: order.iter().map(|&i| residuals[i]).collect(),
        classes: vec![ZeroClass::Unclassified; n],
        method: Method::Simultaneous,
        zeros,
    })
}

fn polish_dd(poly: &PolyCoeffs, mut z: Complex64) -> Complex64 {
    for _ in 0..20 {
        let p = horner_dd(poly.coeffs(), z);
        let (_, dp) = poly.eval_with_derivative(z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Radius of a circle about `b/2` enclosing the airfoil, hence every zero.
fn enclosing_radius(params: &AirfoilParams) -> f64 {
    let center = params.b() / 2.0;
    (0..512)
        .filter_map(|k| {
            psi(
                params,
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 512.0),
            )
            .ok()
        })
        .map(|z| (z - center).norm())
        .fold(0.0, f64::max)
}

/// Aberth on the closed-form evaluator of `F_n`.
pub fn roots_simultaneous_faber(params: &AirfoilParams, n: usize) -> Result<ZeroSet> {
    if n == 0 {
        return Err(FaberError::Parameter("n must be at least 1".into()));
    }
    let ev = FaberEvaluator::new(params, n);
    let guesses = circle_guesses(params.b() / 2.0, 1.1 * enclosing_radius(params), n);
    let out = aberth(&ev, guesses, &[], ABERTH_MAX_ITER);
    let set = ZeroSet::from_zeros(params, out.roots, Method::Simultaneous)?;
    check_residuals(set, out.iterations)
}

/// Zeros from the asymptotic seeds of [`seed_plan`].
pub fn roots_seeded(params: &AirfoilParams, n: usize) -> Result<ZeroSet> {
    let zeros = roots_seeded_raw(params, n)?;
    let set = ZeroSet::from_zeros(params, zeros, Method::Seeded)?;
    check_residuals(set, 0)
}

fn check_residuals(set: ZeroSet, iterations: usize) -> Result<ZeroSet> {
    let worst = set.max_residual();
    if !(worst < ZEROSET_MAX_RESIDUAL) || set.clustered {
        return Err(FaberError::Convergence {
            iterations,
            max_residual: worst,
        });
    }
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossCheck {
    pub max_distance: f64,
}

/// Greedy nearest-neighbour matching of two zero sets.
pub fn cross_check(a: &ZeroSet, b: &ZeroSet) -> Result<CrossCheck> {
    let mut used = vec![false; b.zeros.len()];
    let mut max_distance: f64 = 0.0;
    let mut unmatched = Vec::new();
    for &z in &a.zeros {
        let best = b
            .zeros
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (z - y).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((j, d)) => {
                used[j] = true;
                max_distance = max_distance.max(d);
                if d >= CROSS_CHECK_TOL {
                    unmatched.push(z);
                }
            }
            None => {
                max_distance = f64::INFINITY;
                unmatched.push(z);
            }
        }
    }
    unmatched.extend(
        b.zeros
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(&y, _)| y),
    );
    if unmatched.is_empty() {
        Ok(CrossCheck { max_distance })
    } else {
        Err(FaberError::Mismatch {
            unmatched,
            max_distance,
        })
    }
}

/// The zeros of `F_n`.
///
/// `Auto` uses the simultaneous method up to degree 60 and the seeded method
/// beyond; between 30 and 60 both run and must agree.
pub fn compute_zeros(params: &AirfoilParams, n: usize, method: SeedMethod) -> Result<ZeroSet> {
    match method {
        SeedMethod::Simultaneous => roots_simultaneous_faber(params, n),
        SeedMethod::Seeded if n >= 2 => roots_seeded(params, n),
        SeedMethod::Seeded => roots_simultaneous_faber(params, n),
        SeedMethod::Auto if n > SIMULTANEOUS_MAX_DEGREE => roots_seeded(params, n),
        SeedMethod::Auto if n >= CROSS_CHECK_MIN_DEGREE => {
            let sim = roots_simultaneous_faber(params, n)?;
            let seeded = roots_seeded(params, n)?;
            cross_check(&sim, &seeded)?;
            Ok(ZeroSet {
                method: Method::CrossChecked,
                ..sim
            })
        }
        SeedMethod::Auto => roots_simultaneous_faber(params, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::params_from;
    use crate::faber::faber_closed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn first_degree_root() {
        let p = params_from(2.1, 0.0).unwrap();
        let set = roots_simultaneous(&faber_closed(&p, 1).unwrap()).unwrap();
        assert_eq!(set.n, 1);
        assert!((set.zeros[0] - c(-0.55, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cubic_for_small_airfoil() {
        let p = params_from(1.26, 0.0).unwrap();
        let set = roots_simultaneous(&faber_closed(&p, 3).unwrap()).unwrap();
        let expected = [-0.921740899838167, -0.263147281960093, 0.794888181798259];
        for (z, e) in set.zeros.iter().zip(expected) {
            assert!((z - c(e, 0.0)).norm() < 1e-12, "{z} vs {e}");
        }
        assert!((set.mean() - c(-0.13, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn synthetic_known_roots() {
        let roots = [
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(0.0, -1.0),
            c(2.0, 0.0),
        ];
        let set = roots_simultaneous(&PolyCoeffs::from_roots(&roots)).unwrap();
        for r in roots {
            let d = set
                .zeros
                .iter()
                .map(|z| (z - r).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(d < 1e-10);
        }
        assert!(set.max_residual() < POLY_RESIDUAL_TOL);
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(roots_simultaneous(&PolyCoeffs::new(vec![c(3.0, 0.0)])).is_err());
    }

    #[test]
    fn methods_agree_on_small_airfoil() {
        let p = params_from(1.26, 0.0).unwrap();
        let a = roots_simultaneous_faber(&p, 12).unwrap();
        let b = roots_seeded(&p, 12).unwrap();
        assert!(cross_check(&a, &b).unwrap().max_distance < 1e-8);
    }

    #[test]
    fn evaluator_and_coefficient_roots_agree() {
        for (r, t) in [(1.26, 0.0), (2.1, 0.0), (2.1, 0.2)] {
            let p = params_from(r, t).unwrap();
            let a = roots_simultaneous(&faber_closed(&p, 10).unwrap()).unwrap();
            let b = roots_simultaneous_faber(&p, 10).unwrap();
            assert!(cross_check(&a, &b).unwrap().max_distance < 1e-9);
        }
    }

    #[test]
    fn trivial_and_perturbed_cross_check() {
        let p = params_from(2.1, 0.0).unwrap();
        let one = compute_zeros(&p, 1, SeedMethod::Auto).unwrap();
        assert!((one.zeros[0] - p.b() / 2.0).norm() < 1e-15);
        assert_eq!(cross_check(&one, &one.clone()).unwrap().max_distance, 0.0);

        let set = compute_zeros(&p, 12, SeedMethod::Auto).unwrap();
        let mut bad = set.clone();
        bad.zeros[3] += 1e-3;
        assert!(matches!(
            cross_check(&set, &bad),
            Err(FaberError::Mismatch { .. })
        ));
    }

    #[test]
    fn seeded_subcritical_real_zeros() {
        let p = params_from(1.26, 0.0).unwrap();
        let set = roots_seeded(&p, 70).unwrap();
        assert_eq!(set.zeros.len(), 70);
        for z in &set.zeros {
            assert!(z.im == 0.0 && z.re.abs() <= 1.0);
        }
        // one zero per oscillation bracket
        let plan = seed_plan(&p, 70).unwrap();
        for br in &plan.segment_seeds {
            let inside = set
                .zeros
                .iter()
                .filter(|z| z.re > br.lo.re && z.re < br.hi.re)
                .count();
            assert_eq!(inside, 1, "bracket {}", br.k);
        }
    }

    #[test]
    fn seeded_supercritical_real_gap() {
        let p = params_from(2.1, 0.0).unwrap();
        let set = roots_seeded(&p, 70).unwrap();
        let gap_hi = 1.0 / (2.0 * p.b().re);
        let crossing = crate::conformal::joukowski(2.0 * p.b());
        for (z, class) in set.zeros.iter().zip(&set.classes) {
            assert!(
                !(z.re >= -1.0 && z.re < gap_hi - 1e-9 && z.im.abs() < 1e-9),
                "zero in the gap: {z}"
            );
            if z.im.abs() < 1e-9 && z.re < gap_hi {
                // the loop crosses the axis where φ_b = −1
                assert_eq!(*class, ZeroClass::NearLoop);
                assert!((z - crossing).norm() < 1e-6);
            }
        }
        assert!((set.mean() - p.b() / 2.0).norm() < 1e-8);
    }

    #[test]
    fn seeded_complex_case_splits() {
        let p = params_from(2.1, 0.2).unwrap();
        let set = roots_seeded(&p, 70).unwrap();
        let (seg, lp, _) = set.counts();
        assert!(seg > 10 && lp > 30, "counts {seg} {lp}");
        assert!((set.mean() - p.b() / 2.0).norm() < 1e-8);
    }

    #[test]
    fn auto_cross_checks_in_window() {
        let p = params_from(2.1, 0.2).unwrap();
        let set = compute_zeros(&p, 40, SeedMethod::Auto).unwrap();
        assert_eq!(set.method, Method::CrossChecked);
        assert!(set.max_residual() < ZEROSET_MAX_RESIDUAL);
    }

    #[test]
    fn zero_set_invariants() {
        for (r, t) in [(1.26, 0.0), (2.1, 0.0), (2.1, 0.2)] {
            let p = params_from(r, t).unwrap();
            for n in [5, 20, 45, 80] {
                let set = compute_zeros(&p, n, SeedMethod::Auto).unwrap();
                assert_eq!(set.zeros.len(), n);
                assert!(!set.clustered);
                assert!((set.mean() - p.b() / 2.0).norm() < 1e-8, "mean at n={n}");
                for z in &set.zeros {
                    assert!((z - 1.0).norm() > 1e-6);
                }
                if p.is_real() {
                    for z in &set.zeros {
                        let d = set
                            .zeros
                            .iter()
                            .map(|y| (y - z.conj()).norm())
                            .fold(f64::INFINITY, f64::min);
                        assert!(d < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn seed_method_parsing() {
        assert_eq!("seeded".parse::<SeedMethod>().unwrap(), SeedMethod::Seeded);
        assert!("newton".parse::<SeedMethod>().is_err());
    }
}
