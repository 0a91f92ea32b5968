//! Explicit conformal maps: the annulus-normalising Möbius map and the map
//! of the lower half-plane onto a half-strip-with-step domain.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::integrate;
use super::AnalyticError;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `r = 2ρ/(1 + ρ²)`: radius parameter of the inner circle `|ζ + ir/2| = r/2`
/// sent to the unit circle by [`mobius_psi`].
pub fn r_of_rho(rho: f64) -> f64 {
    2.0 * rho / (1.0 + rho * rho)
}

/// `ψ(ζ) = ρ(ρζ + i)/(ζ + iρ)`. Maps the unit circle onto `|w| = ρ` and the
/// circle `|ζ + ir/2| = r/2` onto the unit circle.
pub fn mobius_psi(rho: f64, zeta: Complex64) -> Result<Complex64, AnalyticError> {
    if !(rho > 1.0 && rho.is_finite()) {
        return Err(AnalyticError::OutOfRange { what: "mobius rho", value: rho });
    }
    let den = zeta + I * rho;
    if den == Complex64::new(0.0, 0.0) {
        return Err(AnalyticError::Pole);
    }
    Ok(rho * (rho * zeta + I) / den)
}

/// Square root with its cut on the upward ray `arg w = π/2`; arguments are
/// taken in `(−3π/2, π/2]`, so the negative real axis is reached from below.
fn sqrt_down(w: Complex64) -> Complex64 {
    let mut theta = w.arg();
    if theta > PI / 2.0 {
        theta -= 2.0 * PI;
    }
    Complex64::from_polar(w.norm().sqrt(), 0.5 * theta)
}

/// Principal logarithm, except that the negative real axis takes `arg = −π`.
fn log_down(w: Complex64) -> Complex64 {
    let theta = w.arg();
    let theta = if theta == PI { -PI } else { theta };
    Complex64::new(w.norm().ln(), theta)
}

/// `√(ζ²−1)` as `√(ζ−1)·√(ζ+1)`, analytic in the lower half-plane and
/// positive on `(1, ∞)`.
fn sqrt_z2m1(zeta: Complex64) -> Complex64 {
    sqrt_down(zeta - 1.0) * sqrt_down(zeta + 1.0)
}

fn check_lower(zeta: Complex64) -> Result<(), AnalyticError> {
    if zeta.re.is_nan() || zeta.im.is_nan() {
        return Err(AnalyticError::NotANumber);
    }
    if zeta.im > 0.0 {
        return Err(AnalyticError::UpperHalfPlane(zeta.im));
    }
    Ok(())
}

/// `g(ζ) = (M/π)[√(ζ²−1) + log(ζ + √(ζ²−1))]`, the primitive of
/// `(M/π)√((ω+1)/(ω−1))` vanishing at 1. It sends `1 ↦ 0`, `−1 ↦ −iM`, and
/// the lower half-plane onto the domain below the polygonal line made of the
/// rays `{Im w = 0, Re w ≥ 0}`, `{Im w = −M, Re w ≤ 0}` and the segment
/// `[−iM, 0]`. Points of the cut `(−1, 1)` take their lower-side limit.
pub fn halfplane_to_u(m: f64, zeta: Complex64) -> Result<Complex64, AnalyticError> {
    check_lower(zeta)?;
    if !(m > 0.0 && m.is_finite()) {
        return Err(AnalyticError::OutOfRange { what: "step height M", value: m });
    }
    let s = sqrt_z2m1(zeta);
    Ok(m / PI * (s + log_down(zeta + s)))
}

/// The same map by direct quadrature of its integral along the segment from
/// 1 to `ζ`, with `ω = 1 + t²(ζ − 1)` so the endpoint singularity drops out.
pub fn halfplane_to_u_quadrature(m: f64, zeta: Complex64, tol: f64) -> Result<Complex64, AnalyticError> {
    check_lower(zeta)?;
    let d = zeta - 1.0;
    let sd = sqrt_down(d);
    let q = integrate(|t: f64| 2.0 * sd * sqrt_down(2.0 + t * t * d), 0.0, 1.0, tol, 2000);
    Ok(m / PI * q.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_of_origin_is_one() {
        for rho in [1.01, 2.0, 10.0] {
            assert!((mobius_psi(rho, Complex64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn psi_pole_is_reported() {
        assert_eq!(mobius_psi(2.0, Complex64::new(0.0, -2.0)), Err(AnalyticError::Pole));
    }

    #[test]
    fn psi_sends_inner_point_to_minus_one() {
        for rho in [1.01, 2.0, 10.0] {
            let w = mobius_psi(rho, Complex64::new(0.0, -r_of_rho(rho))).unwrap();
            assert!((w + 1.0).norm() < 1e-12, "rho = {rho}: {w}");
        }
    }

    #[test]
    fn g_endpoint_values() {
        let m = 1.7;
        assert_eq!(halfplane_to_u(m, Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        let gm1 = halfplane_to_u(m, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((gm1 - Complex64::new(0.0, -m)).norm() < 1e-15);
    }

    #[test]
    fn g_boundary_images() {
        let m = 1.0;
        // (1, ∞) goes to the positive real axis.
        let w = halfplane_to_u(m, Complex64::new(3.0, 0.0)).unwrap();
        assert!(w.re > 0.0 && w.im.abs() < 1e-15);
        // (−1, 1) goes to the segment [−iM, 0].
        let w = halfplane_to_u(m, Complex64::new(0.2, 0.0)).unwrap();
        assert!(w.re.abs() < 1e-15 && w.im < 0.0 && w.im > -m, "{w}");
        // (−∞, −1) goes to the ray Im w = −M, Re w < 0.
        let w = halfplane_to_u(m, Complex64::new(-5.0, 0.0)).unwrap();
        assert!(w.re < 0.0 && (w.im + m).abs() < 1e-14, "{w}");
    }

    #[test]
    fn g_rejects_upper_half_plane_and_nan() {
        assert!(halfplane_to_u(1.0, Complex64::new(0.0, 0.1)).is_err());
        assert!(halfplane_to_u(1.0, Complex64::new(f64::NAN, -1.0)).is_err());
    }

    #[test]
    fn g_matches_quadrature() {
        for z in [Complex64::new(0.3, -0.8), Complex64::new(-4.0, -0.01), Complex64::new(12.0, -30.0)] {
            let a = halfplane_to_u(2.0, z).unwrap();
            let b = halfplane_to_u_quadrature(2.0, z, 1e-13).unwrap();
            assert!((a - b).norm() < 1e-10, "{z}: {a} vs {b}");
        }
    }
}
