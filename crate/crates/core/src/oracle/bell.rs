//! The kernel obtained by transporting the bidisc kernel.
//!
//! `φ(p) = (p1 p2^k2, p2^k1)` maps `D × D*` properly onto the generalized
//! Hartogs triangle `H = {|q1|^k1 < |q2|^k2 < 1}`, with `k1` local inverses
//! `Φ_j(q) = (q1 s^{-k2} ζ^{-j k2}, s ζ^j)`, `s = q2^{1/k1}`, `ζ = e^{2πi/k1}`.
//! The transformation law for proper maps gives
//!
//! ```text
//! det φ'(p) K_H(φ(p), q) = Σ_j K_{D×D*}(p, Φ_j(q)) · conj(det Φ_j'(q)).
//! ```
//!
//! A general domain is the image of such a triangle `V = H(det A, h)` under
//! the monomial biholomorphism inverse to `φ_L(p) = (p1^ℓ1 p2^ℓ2, p1^{-a21} p2^{a11})`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{DomainSpec, Point};
use crate::error::{Error, Result};
use crate::kernel::HartogsParams;

/// `ζ^m` for `ζ = e^{2πi/k}`, reducing `m` first so the angle stays small.
fn zeta_pow(k: i64, m: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * m.rem_euclid(k) as f64 / k as f64)
}

fn ipow(z: Complex64, e: i64) -> Complex64 {
    z.powi(e as i32)
}

fn nonsingular(v: Complex64, what: &str) -> Result<Complex64> {
    if v.norm() <= 1e-14 || !v.is_finite() {
        return Err(Error::SingularEvaluation(format!("{what} vanishes")));
    }
    Ok(v)
}

/// `K_H(φ(p), q)` for `p ∈ D × D*` and `q ∈ H(k1, -k2)`, as the finite sum
/// over inverse branches. Fractional powers of `q2` use the principal branch.
pub fn bell_sum_hartogs(params: HartogsParams, p: Point, q: Point) -> Result<Complex64> {
    let (k1, k2) = (params.k1(), params.k2());
    if p[1].is_zero() || q[1].is_zero() {
        return Err(Error::PreconditionViolated(
            "second coordinates must be nonzero".into(),
        ));
    }
    let s_bar = q[1].powf(1.0 / k1 as f64).conj();
    let a = p[0] * q[0].conj() * ipow(s_bar, -k2);
    let b = p[1] * s_bar;
    let mut sum = Complex64::zero();
    for j in 0..k1 {
        let fa = nonsingular(
            Complex64::one() - a * zeta_pow(k1, j * k2),
            "1 - A ζ^{j k2}",
        )?;
        let fb = nonsingular(Complex64::one() - b * zeta_pow(k1, -j), "1 - B ζ^{-j}")?;
        sum += zeta_pow(k1, -j * (1 - k2)) / (fa * fa * fb * fb);
    }
    let k1f = k1 as f64;
    let jacobian = nonsingular(ipow(p[1], k1 + k2 - 1), "det φ'(p)")?;
    Ok(ipow(s_bar, 1 - k1 - k2) / (PI * PI * k1f * k1f * jacobian) * sum)
}

/// `h(A, B) = Σ_j ((1 - A^k1)/(1 - A ζ^{j k2}))² ((1 - B^k1)/(1 - B ζ^{-j}))² ζ^{-j(1 - k2)}`.
pub fn h_function(params: HartogsParams, a: Complex64, b: Complex64) -> Result<Complex64> {
    let (k1, k2) = (params.k1(), params.k2());
    let one = Complex64::one();
    let na = one - ipow(a, k1);
    let nb = one - ipow(b, k1);
    let mut sum = Complex64::zero();
    for j in 0..k1 {
        let fa = na / nonsingular(one - a * zeta_pow(k1, j * k2), "1 - A ζ^{j k2}")?;
        let fb = nb / nonsingular(one - b * zeta_pow(k1, -j), "1 - B ζ^{-j}")?;
        sum += fa * fa * fb * fb * zeta_pow(k1, -j * (1 - k2));
    }
    Ok(sum)
}

/// Relative deviation `|h(ζ^k2 a, ζ^{-1} b) - ζ^{1-k2} h(a, b)| / |h(a, b)|`.
pub fn h_symmetry_check(params: HartogsParams, a: Complex64, b: Complex64) -> Result<f64> {
    let (k1, k2) = (params.k1(), params.k2());
    let base = h_function(params, a, b)?;
    let rotated = h_function(params, zeta_pow(k1, k2) * a, zeta_pow(k1, -1) * b)?;
    let expected = zeta_pow(k1, 1 - k2) * base;
    let scale = nonsingular(base, "h(A, B)")?.norm();
    Ok((rotated - expected).norm() / scale)
}

/// `K_U(p, q)` via the principal inverse branch `Φ_0`.
pub fn transported_kernel(spec: &DomainSpec, p: Point, q: Point) -> Result<Complex64> {
    transported_kernel_branch(spec, p, q, 0)
}

/// `K_U(p, q) = (p1 q̄1)^{ℓ1 - a21 - 1} (p2 q̄2)^{ℓ2 + a11 - 1} K_V(φ_L(p), φ_L(q))`,
/// with `K_V(u, v)` evaluated as `K_H(φ(Φ_branch(u)), v)`.
pub fn transported_kernel_branch(
    spec: &DomainSpec,
    p: Point,
    q: Point,
    branch: i64,
) -> Result<Complex64> {
    if p.iter().chain(q.iter()).any(|c| c.is_zero()) {
        return Err(Error::PreconditionViolated(
            "transported kernel needs nonzero coordinates".into(),
        ));
    }
    let (k1, k2) = (spec.det_a_s, spec.h);
    let params = HartogsParams::new(k1, k2)?;
    let (ell1, ell2) = spec.ell;
    let (a11, a21) = (spec.a_s[0][0], spec.a_s[1][0]);

    let phi_l = |x: Point| -> Point {
        [
            ipow(x[0], ell1) * ipow(x[1], ell2),
            ipow(x[0], -a21) * ipow(x[1], a11),
        ]
    };
    let (u, v) = (phi_l(p), phi_l(q));

    // a preimage of u under φ on the chosen sheet
    let s = u[1].powf(1.0 / k1 as f64) * zeta_pow(k1, branch);
    let source = [u[0] * ipow(s, -k2), s];

    let k_v = bell_sum_hartogs(params, source, v)?;
    let t1 = p[0] * q[0].conj();
    let t2 = p[1] * q[1].conj();
    Ok(ipow(t1, ell1 - a21 - 1) * ipow(t2, ell2 + a11 - 1) * k_v)
}
