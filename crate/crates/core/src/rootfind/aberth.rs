//! Aberth–Ehrlich iteration in synchronized (Jacobi) rounds.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::faber::{FaberEvaluator, PolyCoeffs};

/// Anything whose zeros Aberth can chase.
pub trait RootTarget: Sync {
    fn degree(&self) -> usize;
    /// `p′(z)/p(z)`; non-finite at an exact zero.
    fn log_derivative(&self, z: Complex64) -> Complex64;
    /// Size-independent residual used for convergence gates.
    fn scaled_residual(&self, z: Complex64) -> f64;
}

impl RootTarget for PolyCoeffs {
    fn degree(&self) -> usize {
        PolyCoeffs::degree(self)
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        let (p, dp) = self.eval_with_derivative(z);
        dp / p
    }

    fn scaled_residual(&self, z: Complex64) -> f64 {
        let scale = self.max_abs() * z.norm().max(1.0).powi(self.degree() as i32);
        self.eval(z).norm() / scale
    }
}

impl RootTarget for FaberEvaluator {
    fn degree(&self) -> usize {
        FaberEvaluator::degree(self)
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        FaberEvaluator::log_derivative(self, z)
    }

    fn scaled_residual(&self, z: Complex64) -> f64 {
        FaberEvaluator::scaled_residual(self, z)
    }
}

#[derive(Debug, Clone)]
pub struct AberthOutcome {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Refine `init` toward zeros of `target`, treating `fixed` as already-known
/// zeros that repel the moving ones.
///
/// Each round computes every correction from the previous iterate, so the
/// result does not depend on how rayon splits the work.
pub fn aberth<T: RootTarget + ?Sized>(
    target: &T,
    init: Vec<Complex64>,
    fixed: &[Complex64],
    max_iter: usize,
) -> AberthOutcome {
    let mut roots = init;
    let mut done = vec![false; roots.len()];
    for iter in 0..max_iter {
        if done.iter().all(|&d| d) {
            return AberthOutcome {
                roots,
                iterations: iter,
                converged: true,
            };
        }
        let updates: Vec<(Complex64, bool)> = (0..roots.len())
            .into_par_iter()
            .map(|i| {
                let z = roots[i];
                if done[i] {
                    return (z, true);
                }
                let l = target.log_derivative(z);
                if !(l.re.is_finite() && l.im.is_finite()) {
                    return (z, true);
                }
                let mut s = Complex64::new(0.0, 0.0);
                for (j, &y) in roots.iter().enumerate() {
                    if j != i {
                        s += (z - y).inv();
                    }
                }
                for &y in fixed {
                    s += (z - y).inv();
                }
                let step = (l - s).inv();
                if !(step.re.is_finite() && step.im.is_finite()) {
                    return (z, false);
                }
                let next = z - step;
                let small = step.norm() <= 4.0 * f64::EPSILON * (1.0 + next.norm());
                (next, small || target.scaled_residual(next) <= 1e-15)
            })
            .collect();
        for (i, (z, d)) in updates.into_iter().enumerate() {
            roots[i] = z;
            done[i] = d;
        }
    }
    let converged = done.iter().all(|&d| d);
    AberthOutcome {
        roots,
        iterations: max_iter,
        converged,
    }
}

/// `n` starting points on a circle, rotated off the real axis so that no two
/// are conjugate or sit on a symmetry line.
pub fn circle_guesses(center: Complex64, radius: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4 / n as f64;
            center + Complex64::from_polar(radius, t)
        })
        .collect()
}
