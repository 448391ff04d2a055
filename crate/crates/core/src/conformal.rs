//! Joukowski airfoil geometry and the associated conformal maps.
//!
//! The exterior map is `Ψ = J ∘ T` with `J(ζ) = (ζ + 1/ζ)/2` and
//! `T(w) = a·w + b`, where `a = R·e^{iθ}` and `b = 1 − a`. The trailing-edge
//! cusp sits at `z = 1 = Ψ(1)`.
//!
//! Branch conventions:
//!
//! - `√(z² − 1)` is always the exterior branch `√(z−1)·√(z+1)` (cut `[−1, 1]`).
//! - `V(z)^{1/2}` uses a ray cut from `c = (b + 1/b)/2`: the ray `(−∞, c)` when
//!   `b` is real, otherwise the direction that stays farthest from the arc `𝒜`.
//!   The sign is fixed so that `V(1)^{1/2} = 1 − b`.
//! - `φ_b` is single valued off `𝒜`; on `𝒜` it has the two one-sided limits
//!   `(φ_b)_±`, `+` being the left side when `𝒜` is oriented from `−1` to `1`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FaberError, Result};

/// Distance (in the `w`-plane) below which a point is treated as lying on the
/// airfoil boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

const CUT_CANDIDATES: usize = 72;
const CUT_ARC_SAMPLES: usize = 400;

/// Validated airfoil parameters with every derived quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirfoilParams {
    r: f64,
    theta: f64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    capacity: f64,
    /// Unit direction of the ray cut of `V^{1/2}` emanating from `c`.
    cut_dir: Complex64,
    /// `±1` correction so that `V(1)^{1/2} = 1 − b`.
    sqrt_sign: f64,
}

/// Builds [`AirfoilParams`] from the scale `R` and rotation `θ`.
pub fn params_from(r: f64, theta: f64) -> Result<AirfoilParams> {
    AirfoilParams::new(r, theta)
}

impl AirfoilParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || !theta.is_finite() {
            return Err(FaberError::Parameter(format!(
                "non-finite input R = {r}, theta = {theta}"
            )));
        }
        if r <= 1.0 {
            return Err(FaberError::Parameter(format!("R = {r} must exceed 1")));
        }
        if theta.abs() >= FRAC_PI_2 {
            return Err(FaberError::Parameter(format!(
                "|theta| = {} must be below pi/2",
                theta.abs()
            )));
        }
        let rcos = r * theta.cos();
        if rcos <= 1.0 {
            return Err(FaberError::Parameter(format!(
                "R cos(theta) = {rcos} must exceed 1 (cusp condition)"
            )));
        }

        let a = Complex64::from_polar(r, theta);
        let a = if theta == 0.0 {
            Complex64::new(r, 0.0)
        } else {
            a
        };
        let b = Complex64::new(1.0, 0.0) - a;
        let c = 0.5 * (b + b.inv());
        let mut params = AirfoilParams {
            r,
            theta,
            a,
            b,
            c,
            capacity: a.norm() / 2.0,
            cut_dir: Complex64::new(-1.0, 0.0),
            sqrt_sign: 1.0,
        };
        if theta != 0.0 {
            params.cut_dir = params.farthest_cut_direction();
        }
        let at_one = params.raw_sqrt_v(Complex64::new(1.0, 0.0));
        let target = Complex64::new(1.0, 0.0) - b;
        if (at_one + target).norm() < (at_one - target).norm() {
            params.sqrt_sign = -1.0;
        }
        Ok(params)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Zero of `V`, the centre of both `𝒞_b` and `𝒞̃_b`.
    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// Logarithmic capacity `|a|/2`.
    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// `R cos θ`, which decides whether the loop component appears.
    pub fn rcos(&self) -> f64 {
        self.r * self.theta.cos()
    }

    /// The symmetric (`θ = 0`) configuration, where `b` is real and negative.
    pub fn is_real(&self) -> bool {
        self.theta == 0.0
    }

    pub fn cut_direction(&self) -> Complex64 {
        self.cut_dir
    }

    // The arc is sampled through its ρ-parameterisation (both signs), which
    // needs no branch of `U`.
    fn farthest_cut_direction(&self) -> Complex64 {
        let b = self.b;
        let mut arc = Vec::with_capacity(2 * CUT_ARC_SAMPLES);
        for k in 0..CUT_ARC_SAMPLES {
            let rho = k as f64 / (CUT_ARC_SAMPLES - 1) as f64;
            let q = (rho * (1.0 - b * b + b * b * rho)).sqrt();
            arc.push(b * (1.0 - rho) + q);
            arc.push(b * (1.0 - rho) - q);
        }
        let mut best = (f64::NEG_INFINITY, Complex64::new(-1.0, 0.0));
        for k in 0..CUT_CANDIDATES {
            let dir = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / CUT_CANDIDATES as f64);
            let clearance = arc
                .iter()
                .map(|&p| {
                    let rel = p - self.c;
                    let t = (rel * dir.conj()).re;
                    if t >= 0.0 {
                        (rel - dir * t).norm()
                    } else {
                        rel.norm()
                    }
                })
                .fold(f64::INFINITY, f64::min);
            if clearance > best.0 {
                best = (clearance, dir);
            }
        }
        best.1
    }

    fn raw_sqrt_v(&self, z: Complex64) -> Complex64 {
        let rot = -self.cut_dir;
        (-2.0 * self.b).sqrt() * rot.sqrt() * ((z - self.c) / rot).sqrt()
    }

    /// `V(z) = b² + 1 − 2bz`, evaluated as `−2b(z − c)` so that `V(c) = 0`.
    pub fn v(&self, z: Complex64) -> Complex64 {
        -2.0 * self.b * (z - self.c)
    }

    /// `W(z) = z − b`.
    pub fn w(&self, z: Complex64) -> Complex64 {
        z - self.b
    }

    /// `V(z)^{1/2}` on the branch fixed by `V(1)^{1/2} = 1 − b`.
    pub fn sqrt_v(&self, z: Complex64) -> Complex64 {
        self.sqrt_sign * self.raw_sqrt_v(z)
    }

    /// `U(z) = W(z)/V(z)^{1/2}`.
    pub fn u(&self, z: Complex64) -> Result<Complex64> {
        let sv = self.sqrt_v(z);
        if sv == Complex64::new(0.0, 0.0) {
            return Err(FaberError::Singularity(z));
        }
        Ok(self.w(z) / sv)
    }

    /// `U′(z) = (V + bW)/V^{3/2}`.
    pub fn u_prime(&self, z: Complex64) -> Result<Complex64> {
        let v = self.v(z);
        if v == Complex64::new(0.0, 0.0) {
            return Err(FaberError::Singularity(z));
        }
        Ok((v + self.b * self.w(z)) / (v * self.sqrt_v(z)))
    }
}

/// Joukowski map `J(ζ) = (ζ + 1/ζ)/2`.
pub fn joukowski(zeta: Complex64) -> Complex64 {
    0.5 * (zeta + zeta.inv())
}

/// `J′(ζ) = (1 − 1/ζ²)/2`.
pub fn joukowski_prime(zeta: Complex64) -> Complex64 {
    0.5 * (1.0 - (zeta * zeta).inv())
}

/// Exterior branch of `√(z² − 1)`, asymptotic to `z` at infinity.
pub fn exterior_sqrt(z: Complex64) -> Complex64 {
    (z - 1.0).sqrt() * (z + 1.0).sqrt()
}

/// `Ψ(w) = J(a·w + b)`.
pub fn psi(params: &AirfoilParams, w: Complex64) -> Result<Complex64> {
    let zeta = params.a * w + params.b;
    if zeta.norm() <= f64::EPSILON * (1.0 + params.b.norm()) {
        return Err(FaberError::Pole(w));
    }
    Ok(joukowski(zeta))
}

/// Exterior conformal map `Φ = Ψ⁻¹`.
///
/// Both preimages `ζ± = z ± √(z²−1)` are pulled back through `T`; the one
/// outside the unit disk is returned. Points within [`BOUNDARY_TOL`] of the
/// boundary return the unimodular limit value.
pub fn phi(params: &AirfoilParams, z: Complex64) -> Result<Complex64> {
    let s = exterior_sqrt(z);
    let w1 = (z + s - params.b) / params.a;
    let w2 = (z - s - params.b) / params.a;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let modulus = w.norm();
    if modulus >= 1.0 + BOUNDARY_TOL {
        Ok(w)
    } else if modulus >= 1.0 - BOUNDARY_TOL {
        Ok(w / modulus)
    } else {
        Err(FaberError::Domain {
            point: z,
            reason: format!("inside the airfoil (|Phi| = {modulus})"),
        })
    }
}

/// The triple `(U, V, W)` at `z`.
pub fn uvw(params: &AirfoilParams, z: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    let u = params.u(z)?;
    Ok((u, params.v(z), params.w(z)))
}

/// Side of the cut `𝒜` a value of `φ_b` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchedValue {
    pub value: Complex64,
    pub side: Side,
}

/// `φ_b(z) = (b − z − √(z²−1))/b`, returned as `[(φ_b)_+, (φ_b)_−]`.
///
/// Off the cut the two entries coincide. The cut is the set where both
/// choices of `ζ = z ± √(z²−1)` give `|ζ − b| = |1/ζ − b|`, which is exactly
/// `𝒜`; away from it the determination with the larger `|ζ − b|` is used, so
/// that `φ_b → ∞` as `z → ∞`.
pub fn phi_b(params: &AirfoilParams, z: Complex64) -> [BranchedValue; 2] {
    let b = params.b;
    let s = exterior_sqrt(z);
    let big = z - b + s;
    let small = z - b - s;
    let gap = (big.norm() - small.norm()).abs();
    let scale = big.norm().max(small.norm()).max(f64::MIN_POSITIVE);
    let on_cut = gap <= 1e-9 * scale;
    if !on_cut {
        let value = -(if big.norm() > small.norm() {
            big
        } else {
            small
        }) / b;
        return [
            BranchedValue {
                value,
                side: Side::Plus,
            },
            BranchedValue {
                value,
                side: Side::Minus,
            },
        ];
    }

    // One-sided limits: step off the cut along the left/right normal and
    // keep whichever exact candidate the nearby single-valued branch selects.
    let tangent = if params.is_real() {
        Complex64::new(1.0, 0.0)
    } else {
        match params.u_prime(z) {
            Ok(d) if d.norm() > 1e-12 => d.conj() / d.norm(),
            _ => Complex64::new(1.0, 0.0),
        }
    };
    let normal = Complex64::i() * tangent;
    let step = 1e-7 * (1.0 + z.norm());
    let candidates = [-big / b, -small / b];
    let pick = |probe: Complex64| {
        let near = phi_b_off_cut(params, probe);
        if (candidates[0] - near).norm() <= (candidates[1] - near).norm() {
            candidates[0]
        } else {
            candidates[1]
        }
    };
    [
        BranchedValue {
            value: pick(z + normal * step),
            side: Side::Plus,
        },
        BranchedValue {
            value: pick(z - normal * step),
            side: Side::Minus,
        },
    ]
}

fn phi_b_off_cut(params: &AirfoilParams, z: Complex64) -> Complex64 {
    let s = exterior_sqrt(z);
    let big = z - params.b + s;
    let small = z - params.b - s;
    -(if big.norm() >= small.norm() {
        big
    } else {
        small
    }) / params.b
}

/// `φ_b⁻¹(w) = J(b(1 − w))`.
pub fn phi_b_inverse(params: &AirfoilParams, w: Complex64) -> Complex64 {
    joukowski(params.b * (1.0 - w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derived_fields_real_presets() {
        let p = params_from(2.1, 0.0).unwrap();
        assert_abs_diff_eq!(p.b().re, -1.1, epsilon = 1e-15);
        assert_eq!(p.b().im, 0.0);
        assert_abs_diff_eq!(p.c().re, -1.004_545_454_545_454_5, epsilon = 1e-14);
        assert_abs_diff_eq!(p.capacity(), 1.05, epsilon = 1e-15);

        let p = params_from(1.26, 0.0).unwrap();
        assert_abs_diff_eq!(p.b().re, -0.26, epsilon = 1e-15);
        assert_abs_diff_eq!(p.c().re, -2.053_076_923_076_923, epsilon = 1e-13);
    }

    #[test]
    fn critical_rotated_preset() {
        let theta: f64 = 0.2;
        let p = params_from(1.5 / theta.cos(), theta).unwrap();
        assert_abs_diff_eq!(p.b().re, -0.5, epsilon = 1e-15);
        // mpmath: -0.3040650532630087
        assert_abs_diff_eq!(p.b().im, -0.304_065_053_263_008_7, epsilon = 1e-14);
        assert_eq!(p.a() + p.b(), c(1.0, 0.0));
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(matches!(
            params_from(1.0, 0.0),
            Err(FaberError::Parameter(_))
        ));
        assert!(matches!(
            params_from(0.9, 0.0),
            Err(FaberError::Parameter(_))
        ));
        assert!(matches!(
            params_from(1.2, 1.0),
            Err(FaberError::Parameter(_))
        ));
        assert!(matches!(
            params_from(2.0, 1.6),
            Err(FaberError::Parameter(_))
        ));
        assert!(params_from(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn psi_values() {
        for &(r, t) in &[(2.1, 0.0), (1.26, 0.0), (2.1, 0.2)] {
            let p = params_from(r, t).unwrap();
            assert_abs_diff_eq!(
                (psi(&p, c(1.0, 0.0)).unwrap() - 1.0).norm(),
                0.0,
                epsilon = 1e-15
            );
            let w = c(1e7, 3e6);
            let ratio = psi(&p, w).unwrap() / w;
            assert!((ratio - p.a() / 2.0).norm() < 1e-6);
        }
        let p = params_from(2.1, 0.0).unwrap();
        assert_abs_diff_eq!(psi(&p, c(-1.0, 0.0)).unwrap().re, -1.75625, epsilon = 1e-14);
        let pole = -p.b() / p.a();
        assert!(matches!(psi(&p, pole), Err(FaberError::Pole(_))));
    }

    #[test]
    fn phi_round_trip_on_circle() {
        for &(r, t) in &[(2.1, 0.0), (1.26, 0.0), (2.1, 0.2), (1.45, 0.2)] {
            let p = params_from(r, t).unwrap();
            for k in 0..64 {
                let w = Complex64::from_polar(1.5, 2.0 * PI * k as f64 / 64.0);
                let z = psi(&p, w).unwrap();
                assert!((phi(&p, z).unwrap() - w).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn phi_asymptotics_and_boundary() {
        let p = params_from(2.1, 0.2).unwrap();
        let z = c(3e6, -2e6);
        assert!((phi(&p, z).unwrap() / (2.0 * z / p.a()) - 1.0).norm() < 1e-6);
        assert_abs_diff_eq!(
            (phi(&p, c(1.0, 0.0)).unwrap() - 1.0).norm(),
            0.0,
            epsilon = 1e-12
        );
        assert!(matches!(
            phi(&p, c(0.0, 0.0)),
            Err(FaberError::Domain { .. })
        ));
        assert!(matches!(
            phi(&p, p.b() / 2.0),
            Err(FaberError::Domain { .. })
        ));
    }

    #[test]
    fn u_endpoint_values() {
        // b in (-1, 0): U(-1) = -1
        let p = params_from(1.26, 0.0).unwrap();
        assert_abs_diff_eq!(
            (p.u(c(1.0, 0.0)).unwrap() - 1.0).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(p.u(p.b()).unwrap().norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            (p.u(c(-1.0, 0.0)).unwrap() + 1.0).norm(),
            0.0,
            epsilon = 1e-14
        );
        // b <= -1: U(-1) = +1
        let p = params_from(2.1, 0.0).unwrap();
        assert_abs_diff_eq!(
            (p.u(c(-1.0, 0.0)).unwrap() - 1.0).norm(),
            0.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            (p.u(c(1.0, 0.0)).unwrap() - 1.0).norm(),
            0.0,
            epsilon = 1e-15
        );
        // complex case keeps U(1) = 1
        let p = params_from(2.1, 0.2).unwrap();
        assert_abs_diff_eq!(
            (p.u(c(1.0, 0.0)).unwrap() - 1.0).norm(),
            0.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            (p.u(c(-1.0, 0.0)).unwrap() + 1.0).norm(),
            0.0,
            epsilon = 1e-13
        );
        assert!(matches!(p.u(p.c()), Err(FaberError::Singularity(_))));
    }

    #[test]
    fn u_is_stationary_at_reciprocal_b() {
        for &(r, t) in &[(2.1, 0.0), (1.26, 0.0), (2.1, 0.2)] {
            let p = params_from(r, t).unwrap();
            let z0 = p.b().inv();
            let h = 1e-5;
            let d = (p.u(z0 + h).unwrap() - p.u(z0 - h).unwrap()) / (2.0 * h);
            assert!(d.norm() < 1e-8, "U'(1/b) = {d}");
            assert!(p.u_prime(z0).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn u_squared_times_v_is_w_squared() {
        let p = params_from(2.1, 0.2).unwrap();
        let mut state = 0x2545_f491_4f6c_dd1d_u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let z = c(6.0 * next() - 3.0, 6.0 * next() - 3.0);
            let (u, v, w) = uvw(&p, z).unwrap();
            assert!((u * u * v - w * w).norm() <= 1e-12 * (w * w).norm().max(1e-300));
        }
        assert_eq!(p.v(p.c()).norm(), 0.0);
        let z = c(0.3, -0.7);
        let direct = p.b() * p.b() + 1.0 - 2.0 * p.b() * z;
        assert!((p.v(z) - direct).norm() < 1e-14);
    }

    #[test]
    fn phi_b_inverse_composition() {
        let p = params_from(2.1, 0.2).unwrap();
        for k in 0..100 {
            let t = k as f64 * 0.37;
            let z = Complex64::from_polar(0.4 + 0.03 * k as f64, t) + c(0.1, 0.05);
            let w = phi_b(&p, z)[0].value;
            let back = phi_b(&p, phi_b_inverse(&p, w))[0].value;
            assert!((back - w).norm() < 1e-10, "z = {z}");
        }
    }

    #[test]
    fn phi_b_one_sided_limits_at_intersection() {
        let p = params_from(2.1, 0.0).unwrap();
        let z = (2.0 * p.b()).inv();
        let [plus, minus] = phi_b(&p, z);
        assert_abs_diff_eq!(plus.value.re, 0.586_776_859_504_132_2, epsilon = 1e-12);
        assert_abs_diff_eq!(plus.value.im, 0.809_748_675_300_224_2, epsilon = 1e-12);
        assert_abs_diff_eq!(minus.value.re, 0.586_776_859_504_132_2, epsilon = 1e-12);
        assert_abs_diff_eq!(minus.value.im, -0.809_748_675_300_224_2, epsilon = 1e-12);
        assert_abs_diff_eq!(plus.value.norm(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(minus.value.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_b_never_equals_one() {
        let p = params_from(2.1, 0.2).unwrap();
        let mut min_gap = f64::INFINITY;
        for i in 0..120 {
            for j in 0..120 {
                let z = c(-4.0 + 8.0 * i as f64 / 119.0, -4.0 + 8.0 * j as f64 / 119.0);
                for v in phi_b(&p, z) {
                    min_gap = min_gap.min((v.value - 1.0).norm());
                }
            }
        }
        assert!(min_gap > 0.0);
    }

    #[test]
    fn phi_b_sheets_at_infinity() {
        let p = params_from(2.1, 0.0).unwrap();
        let z = c(1e6, 1e5);
        assert!(phi_b(&p, z)[0].value.norm() > 1e5);
        // the other determination tends to modulus one (the curve ℒ_b⁻ passes through ∞)
        let other = (p.b() - z + exterior_sqrt(z)) / p.b();
        assert!((other.norm() - 1.0).abs() < 1e-5);
    }
}
