//! Piecewise vertical shear that straightens a stretched channel, and its
//! maximal dilatation.

use num_complex::Complex64;
use serde::Serialize;

use crate::geometry::StretchFactor;

/// Coefficients of the three-piece shear. `v(x, y) = y − (a_k/H)x − b_k`
/// on the left (`k = 1`) and right (`k = 3`) pieces and
/// `y − (a₂/H)x − b₂ − M` on the middle piece `Hc ≤ x ≤ Hd`.
///
/// `c` and `d` are given in unstretched coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShearParams {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub m: f64,
    pub c: f64,
    pub d: f64,
}

impl ShearParams {
    pub fn identity(c: f64, d: f64) -> Self {
        Self { a: [0.0; 3], b: [0.0; 3], m: 0.0, c, d }
    }

    /// `𝔞 = max |a_k|`.
    pub fn max_slope(&self) -> f64 {
        self.a.iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }

    pub fn breakpoints(&self, h: StretchFactor) -> (f64, f64) {
        (h.value() * self.c, h.value() * self.d)
    }

    /// Vertical offset subtracted on the piece containing `x`.
    fn offset(&self, h: StretchFactor, x: f64) -> f64 {
        let (hc, hd) = self.breakpoints(h);
        let hv = h.value();
        if x <= hc {
            self.a[0] / hv * x + self.b[0]
        } else if x < hd {
            self.a[1] / hv * x + self.b[1] + self.m
        } else {
            self.a[2] / hv * x + self.b[2]
        }
    }
}

/// `η(z) = x + i v(x, y)`.
pub fn shear_eta(p: &ShearParams, h: StretchFactor, z: Complex64) -> Complex64 {
    Complex64::new(z.re, z.im - p.offset(h, z.re))
}

/// Inverse of [`shear_eta`]; a true inverse whenever the pieces agree at the
/// breakpoints.
pub fn shear_eta_inverse(p: &ShearParams, h: StretchFactor, w: Complex64) -> Complex64 {
    Complex64::new(w.re, w.im + p.offset(h, w.re))
}

/// Whether the three pieces agree at `x = Hc` and `x = Hd`, relative to the
/// size of the offsets involved.
pub fn is_continuous(p: &ShearParams, h: StretchFactor) -> bool {
    let (hc, hd) = p.breakpoints(h);
    let hv = h.value();
    let left = p.a[0] / hv * hc + p.b[0];
    let mid_l = p.a[1] / hv * hc + p.b[1] + p.m;
    let mid_r = p.a[1] / hv * hd + p.b[1] + p.m;
    let right = p.a[2] / hv * hd + p.b[2];
    let close = |u: f64, v: f64| (u - v).abs() <= 1e-12 * (1.0 + u.abs().max(v.abs()));
    close(left, mid_l) && close(mid_r, right)
}

/// `K(H) = (1 + k)/(1 − k)` with `k = 𝔞/√(𝔞² + 4H²)`.
pub fn shear_dilatation(p: &ShearParams, h: StretchFactor) -> f64 {
    let a = p.max_slope();
    let k = a / (a * a + 4.0 * h.value() * h.value()).sqrt();
    (1.0 + k) / (1.0 - k)
}
