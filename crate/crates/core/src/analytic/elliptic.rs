//! Complete elliptic integrals and the ring functions built from them.

use std::f64::consts::{FRAC_PI_2, PI};

use super::AnalyticError;

/// Relative stopping threshold of the AGM iteration.
pub const AGM_TOL: f64 = 1e-15;

/// Arithmetic–geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= AGM_TOL * a.max(b) {
            break;
        }
        let m = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = m;
    }
    0.5 * (a + b)
}

/// `sqrt(1 − r²)` without cancellation near `r = 1`.
fn complement(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

/// Complete elliptic integral of the first kind `K(r)`, modulus convention
/// `K(r) = ∫₀^{π/2} dθ / sqrt(1 − r² sin²θ)`.
pub fn ellip_k(r: f64) -> Result<f64, AnalyticError> {
    if !(0.0..1.0).contains(&r) {
        return Err(AnalyticError::OutOfRange { what: "elliptic modulus", value: r });
    }
    Ok(FRAC_PI_2 / agm(1.0, complement(r)))
}

/// Grötzsch ring function `μ(r) = (π/2) K(r′)/K(r)`: the modulus (times 2π)
/// of the unit disc slit along `[0, r]`.
pub fn grotzsch_mu(r: f64) -> Result<f64, AnalyticError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(AnalyticError::OutOfRange { what: "grotzsch_mu argument", value: r });
    }
    // K(r′)/K(r) = AGM(1, r′)/AGM(1, r)
    Ok(FRAC_PI_2 * agm(1.0, complement(r)) / agm(1.0, r))
}

/// Modulus of the Teichmüller ring `C̄ \ ([−1, 0] ∪ [t, ∞])`.
pub fn teichmuller_modulus(t: f64) -> Result<f64, AnalyticError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(AnalyticError::OutOfRange { what: "teichmuller parameter", value: t });
    }
    Ok(grotzsch_mu(1.0 / (1.0 + t).sqrt())? / PI)
}

/// `log(R/r)/(2π)`, the modulus of `{r < |z| < R}`.
pub fn annulus_modulus(r: f64, big_r: f64) -> Result<f64, AnalyticError> {
    if !(r > 0.0 && big_r > r && big_r.is_finite()) {
        return Err(AnalyticError::Radii { r, big_r });
    }
    Ok((big_r / r).ln() / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::quadrature::integrate;

    #[test]
    fn k_matches_direct_quadrature() {
        for r in [0.1, 0.5, 0.9, 0.99] {
            let q = integrate(|t: f64| 1.0 / (1.0 - r * r * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-14, 200);
            assert!((ellip_k(r).unwrap() - q.value).abs() < 1e-13, "r = {r}");
        }
    }

    #[test]
    fn mu_symmetry_point() {
        assert!((grotzsch_mu(std::f64::consts::FRAC_1_SQRT_2).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn mu_small_argument() {
        let r = 1e-4;
        assert!((grotzsch_mu(r).unwrap() - (4.0 / r).ln()).abs() < 1e-7);
    }

    #[test]
    fn teichmuller_at_one() {
        assert!((teichmuller_modulus(1.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn out_of_range() {
        assert!(grotzsch_mu(0.0).is_err());
        assert!(grotzsch_mu(1.0).is_err());
        assert!(teichmuller_modulus(-1.0).is_err());
        assert!(annulus_modulus(2.0, 2.0).is_err());
    }

    #[test]
    fn annulus_values() {
        assert!((annulus_modulus(1.0, (2.0 * PI).exp()).unwrap() - 1.0).abs() < 1e-15);
        assert!((annulus_modulus(1.0, 2.0).unwrap() - 0.110_317_800_076_325_8).abs() < 1e-15);
    }
}
