//! Faber polynomials `F_n` of a Joukowski airfoil.
//!
//! Two independent constructions are provided: the explicit binomial form
//!
//! ```text
//! a^n F_n(z) = (z − b + √(z²−1))^n + (z − b − √(z²−1))^n − (−b)^n
//! ```
//!
//! and [`faber_oracle`], which extracts the polynomial part of `Φ(z)^n` from
//! samples on a circle via the FFT and never touches the formula above.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::conformal::{exterior_sqrt, phi, psi, AirfoilParams};
use crate::error::{FaberError, Result};

/// Largest degree for which coefficient form is produced.
pub const MAX_COEFF_DEGREE: usize = 200;

/// Half-width of the band around `[−1, 1]` where `T_n` uses the recurrence.
const RECURRENCE_BAND: f64 = 1e-3;

const ORACLE_MAX_SAMPLES: usize = 1 << 16;
const ORACLE_TOL: f64 = 1e-12;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `T_n(u)`.
pub fn chebyshev_t(n: usize, u: Complex64) -> Complex64 {
    chebyshev_t_with_derivative(n, u).0
}

/// `(T_n(u), T_n′(u))`.
///
/// The three-term recurrence is used in a thin band around `[−1, 1]`; elsewhere
/// the power form `(w^n + w^{−n})/2` with `u = (w + 1/w)/2`, `|w| > 1`.
pub fn chebyshev_t_with_derivative(n: usize, u: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    if n == 0 {
        return (one, zero());
    }
    let in_band = u.im.abs() <= RECURRENCE_BAND && u.re.abs() <= 1.0 + RECURRENCE_BAND;
    if in_band {
        // T_k and U_{k-1} (second kind) together; T_n' = n U_{n-1}.
        let (mut t_prev, mut t) = (one, u);
        let (mut s_prev, mut s) = (zero(), one);
        for _ in 1..n {
            let t_next = 2.0 * u * t - t_prev;
            let s_next = 2.0 * u * s - s_prev;
            t_prev = t;
            t = t_next;
            s_prev = s;
            s = s_next;
        }
        return (t, n as f64 * s);
    }
    let w = u + exterior_sqrt(u);
    let wn = w.powu(n as u32);
    let wn_inv = wn.inv();
    let t = 0.5 * (wn + wn_inv);
    // U_{n-1}(u) = (w^n − w^{−n})/(w − w^{−1})
    let d = n as f64 * (wn - wn_inv) / (w - w.inv());
    (t, d)
}

/// Dense polynomial in the monomial basis, `coeffs[k]` multiplying `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl PolyCoeffs {
    /// Trailing zero coefficients are stripped; at least the constant remains.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(zero());
        }
        PolyCoeffs {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![zero(); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        PolyCoeffs::new(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(zero(), |acc, &c| acc * z + c)
    }

    /// `(p(z), p′(z))` by Horner.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = zero();
        let mut dp = zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `p(z) + shift`.
    pub fn shifted(&self, shift: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        c[0] += shift;
        PolyCoeffs::new(c)
    }

    /// Normwise deviation `max_k |p_k − q_k| / max_k |p_k|`.
    pub fn relative_deviation(&self, other: &PolyCoeffs) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &PolyCoeffs, k: usize| p.coeffs.get(k).copied().unwrap_or_default();
        let diff = (0..len)
            .map(|k| (get(self, k) - get(other, k)).norm())
            .fold(0.0, f64::max);
        diff / self.max_abs().max(f64::MIN_POSITIVE)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyCoeffsJson {
    degree: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for PolyCoeffs {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyCoeffsJson {
            degree: self.degree,
            re: self.coeffs.iter().map(|c| c.re).collect(),
            im: self.coeffs.iter().map(|c| c.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyCoeffs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyCoeffsJson::deserialize(deserializer)?;
        if raw.re.len() != raw.im.len() || raw.re.len() != raw.degree + 1 {
            return Err(serde::de::Error::custom(
                "coefficient arrays do not match degree",
            ));
        }
        let coeffs = raw
            .re
            .iter()
            .zip(&raw.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        Ok(PolyCoeffs::new(coeffs))
    }
}

fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![zero(); p.len() + q.len() - 1];
    for (i, &x) in p.iter().enumerate() {
        for (j, &y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n + 1 - k) as f64 / k as f64;
    }
    // exact for n <= 56; rounding is symmetric past that
    for k in 0..=n / 2 {
        let v = row[k].round();
        row[k] = v;
        row[n - k] = v;
    }
    row
}

/// Coefficients of `F_n` from the binomial expansion
/// `a^n F_n = 2 Σ_{k even} C(n,k) (z−b)^{n−k} (z²−1)^{k/2} − (−b)^n`.
pub fn faber_closed(params: &AirfoilParams, n: usize) -> Result<PolyCoeffs> {
    if n == 0 {
        return Ok(PolyCoeffs::new(vec![Complex64::new(1.0, 0.0)]));
    }
    if n > MAX_COEFF_DEGREE {
        return Err(FaberError::Overflow { degree: n });
    }
    let b = params.b();
    let a_inv = params.a().inv();
    // Fold 1/a into each linear factor so intermediate sizes stay moderate.
    let lin = [-b * a_inv, a_inv];
    let quad = [-(a_inv * a_inv), zero(), a_inv * a_inv];

    let mut lin_pow = vec![vec![Complex64::new(1.0, 0.0)]];
    for j in 1..=n {
        let next = poly_mul(&lin_pow[j - 1], &lin);
        lin_pow.push(next);
    }
    let mut quad_pow = vec![vec![Complex64::new(1.0, 0.0)]];
    for j in 1..=n / 2 {
        let next = poly_mul(&quad_pow[j - 1], &quad);
        quad_pow.push(next);
    }

    let binom = binomial_row(n);
    let mut coeffs = vec![zero(); n + 1];
    for k in (0..=n).step_by(2) {
        let term = poly_mul(&lin_pow[n - k], &quad_pow[k / 2]);
        for (i, t) in term.into_iter().enumerate() {
            coeffs[i] += 2.0 * binom[k] * t;
        }
    }
    coeffs[0] -= (-b * a_inv).powu(n as u32);
    if coeffs
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(FaberError::Overflow { degree: n });
    }
    Ok(PolyCoeffs::new(coeffs))
}

/// Shifted Faber polynomial `F̂_n = F_n + (−b/a)^n`.
pub fn shifted_faber_closed(params: &AirfoilParams, n: usize) -> Result<PolyCoeffs> {
    let f = faber_closed(params, n)?;
    Ok(f.shifted((-params.b() / params.a()).powu(n as u32)))
}

/// `F̂_n(z) = 2 a^{−n} V(z)^{n/2} T_n(U(z))`.
pub fn shifted_faber_chebyshev(
    params: &AirfoilParams,
    n: usize,
    z: Complex64,
) -> Result<Complex64> {
    let u = params.u(z)?;
    let sv = params.sqrt_v(z);
    Ok(2.0 * (sv / params.a()).powu(n as u32) * chebyshev_t(n, u))
}

/// Radius of the sampling circle used by [`faber_oracle`]: just outside the
/// airfoil and the branch points `±1`.
pub fn oracle_radius(params: &AirfoilParams) -> f64 {
    let boundary = (0..1024)
        .filter_map(|k| {
            psi(
                params,
                Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 1024.0),
            )
            .ok()
        })
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    1.02 * boundary
}

/// Polynomial part of `Φ^n` from `samples` equispaced values on `|z| = ρ`.
struct OracleGrid {
    coeffs: Vec<Complex64>,
    /// largest discarded positive-power coefficient, scaled like `coeffs`
    tail: f64,
    /// `max |Φ^n|` over the samples
    peak: f64,
}

fn oracle_on_grid(
    params: &AirfoilParams,
    n: usize,
    samples: usize,
    radius: f64,
) -> Result<OracleGrid> {
    let mut buf = Vec::with_capacity(samples);
    for j in 0..samples {
        let z = Complex64::from_polar(radius, 2.0 * PI * j as f64 / samples as f64);
        buf.push(phi(params, z)?.powu(n as u32));
    }
    let peak = buf.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(samples).process(&mut buf);
    let scale = 1.0 / samples as f64;
    let coeffs = (0..=n)
        .map(|k| buf[k] * scale / radius.powi(k as i32))
        .collect();
    let tail = (n + 1..samples / 2)
        .map(|k| (buf[k] * scale).norm() / radius.powi(k as i32))
        .fold(0.0, f64::max);
    Ok(OracleGrid { coeffs, tail, peak })
}

/// Coefficients of `F_n` as the polynomial part of `Φ(z)^n`.
///
/// The grid starts at `max(8n, 64)` points and doubles until successive
/// coefficients agree to `1e−12` relative, or to the round-off level of the
/// transform (`|Φ|^n` on the circle can exceed the coefficients by orders of
/// magnitude, which puts a floor under the attainable agreement).
pub fn faber_oracle(params: &AirfoilParams, n: usize) -> Result<PolyCoeffs> {
    if n == 0 {
        return Ok(PolyCoeffs::new(vec![Complex64::new(1.0, 0.0)]));
    }
    let radius = oracle_radius(params);
    let mut samples = (8 * n).max(64).next_power_of_two();
    let mut prev = oracle_on_grid(params, n, samples, radius)?;
    while samples < ORACLE_MAX_SAMPLES {
        samples *= 2;
        let next = oracle_on_grid(params, n, samples, radius)?;
        let size = next.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let noise = 64.0 * f64::EPSILON * next.peak;
        let settled = next
            .coeffs
            .iter()
            .zip(&prev.coeffs)
            .enumerate()
            .all(|(k, (x, y))| {
                (x - y).norm() <= (ORACLE_TOL * size).max(noise / radius.powi(k as i32))
            });
        prev = next;
        if settled {
            return Ok(PolyCoeffs::new(prev.coeffs));
        }
    }
    Err(FaberError::Resolution { degree: n, samples })
}

/// Single-grid variant of [`faber_oracle`]; fails when `samples` cannot
/// resolve degree `n`.
pub fn faber_oracle_with_samples(
    params: &AirfoilParams,
    n: usize,
    samples: usize,
) -> Result<PolyCoeffs> {
    if samples < 2 * (n + 1) {
        return Err(FaberError::Resolution { degree: n, samples });
    }
    let radius = oracle_radius(params);
    let grid = oracle_on_grid(params, n, samples, radius)?;
    let size = grid.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if grid.tail > 1e-9 * size {
        return Err(FaberError::Resolution { degree: n, samples });
    }
    Ok(PolyCoeffs::new(grid.coeffs))
}

/// Coefficient-free evaluation of `F_n` from the binomial closed form.
///
/// With `A = z − b + s`, `B = z − b − s`, `s = √(z²−1)`:
/// `a^n F_n = A^n + B^n − (−b)^n`. Everything is scaled by
/// `max(|A|, |B|, |b|)^n` before taking ratios, so degrees in the hundreds
/// do not overflow.
#[derive(Debug, Clone, Copy)]
pub struct FaberEvaluator {
    params: AirfoilParams,
    n: usize,
}

/// Scaled pieces of the closed form at one point.
struct Scaled {
    /// `a^n F_n / m^n`
    value: Complex64,
    /// `a^n F_n′ / m^n`
    derivative: Complex64,
    /// `max(|A|, |B|, |b|)`
    m: f64,
    b_s: Complex64,
}

impl FaberEvaluator {
    pub fn new(params: &AirfoilParams, n: usize) -> Self {
        assert!(n >= 1, "Faber evaluator needs n >= 1");
        FaberEvaluator { params: *params, n }
    }

    pub fn params(&self) -> &AirfoilParams {
        &self.params
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    fn scaled(&self, z: Complex64) -> Scaled {
        let n = self.n as u32;
        let b = self.params.b();
        let s = exterior_sqrt(z);
        let big = z - b + s;
        let small = z - b - s;
        let m = big.norm().max(small.norm()).max(b.norm());
        let (a_s, b_s, nb_s) = (big / m, small / m, -b / m);
        let an1 = a_s.powu(n - 1);
        let bn1 = b_s.powu(n - 1);
        let value = an1 * a_s + bn1 * b_s - nb_s.powu(n);
        // (A^{n-1} − B^{n-1})/s, via a geometric sum when A ≈ B
        let diff_over_s = if s.norm() > 1e-4 * m {
            (an1 - bn1) / s
        } else {
            let mut acc = zero();
            for j in 0..n.saturating_sub(1) {
                acc += a_s.powu(j) * b_s.powu(n - 2 - j);
            }
            acc * (2.0 / m)
        };
        let derivative = (self.n as f64 / m) * (an1 + bn1 + z * diff_over_s);
        Scaled {
            value,
            derivative,
            m,
            b_s,
        }
    }

    /// `F_n(z)`; may overflow for very large `n`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let s = self.scaled(z);
        s.value * (s.m / self.params.a()).powu(self.n as u32)
    }

    /// `F_n′(z)`; may overflow for very large `n`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let s = self.scaled(z);
        s.derivative * (s.m / self.params.a()).powu(self.n as u32)
    }

    /// `F̂_n(z) = F_n(z) + (−b/a)^n`.
    pub fn eval_shifted(&self, z: Complex64) -> Complex64 {
        self.eval(z) + (-self.params.b() / self.params.a()).powu(self.n as u32)
    }

    /// Logarithmic derivative `F_n′/F_n`, infinite at an exact zero.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        let s = self.scaled(z);
        if s.value == zero() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        s.derivative / s.value
    }

    /// `F_n(z) − Φ(z)^n = (B^n − (−b)^n)/a^n` outside the airfoil, without
    /// the cancellation of subtracting two huge numbers.
    pub fn minus_phi_power(&self, z: Complex64) -> Complex64 {
        let s = self.scaled(z);
        let n = self.n as u32;
        let nb_s = -self.params.b() / s.m;
        (s.b_s.powu(n) - nb_s.powu(n)) * (s.m / self.params.a()).powu(n)
    }

    /// Sign of `F_n` on the real axis (meaningful for `θ = 0`).
    pub fn real_sign(&self, x: f64) -> f64 {
        let s = self.scaled(Complex64::new(x, 0.0));
        // a^n > 0 in the real case
        s.value.re.signum()
    }

    /// `|2T_n(U) − q^n| / (2 + |q|^n)` with `q = −b/√V`, in the branch-free
    /// form `|A^n + B^n − (−b)^n| / (2|V|^{n/2} + |b|^n)`.
    ///
    /// The normalisation keeps the value meaningful inside `𝒞_b`, where the
    /// right-hand side `q^n` is exponentially large.
    pub fn scaled_residual(&self, z: Complex64) -> f64 {
        let s = self.scaled(z);
        let n = self.n as i32;
        let v = (self.params.v(z).norm().sqrt() / s.m).powi(n);
        let rhs = (self.params.b().norm() / s.m).powi(n);
        s.value.norm() / (2.0 * v + rhs)
    }
}

/// Value and derivative of the residual equation at `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: Complex64,
    pub derivative: Complex64,
}

/// `2T_n(U(z)) − (−b/V(z)^{1/2})^n`, which vanishes exactly at the zeros of `F_n`.
pub fn residual(params: &AirfoilParams, n: usize, z: Complex64) -> Result<Residual> {
    let u = params.u(z)?;
    let up = params.u_prime(z)?;
    let v = params.v(z);
    let q = -params.b() / params.sqrt_v(z);
    let qn = q.powu(n as u32);
    let (t, dt) = chebyshev_t_with_derivative(n, u);
    Ok(Residual {
        value: 2.0 * t - qn,
        derivative: 2.0 * dt * up - n as f64 * qn * params.b() / v,
    })
}
