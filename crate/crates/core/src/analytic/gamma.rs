//! `γ = ∫_c^d dx / (f₁(x) − f₂(x))` and the predicted modulus `1/(γH)`.

use serde::Serialize;

use super::quadrature::integrate;
use super::AnalyticError;
use crate::geometry::{BoundaryFunction, ChannelDomain, StretchFactor};

/// Default absolute tolerance for builtin integrands.
pub const GAMMA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaValue {
    pub value: f64,
    pub abs_error_estimate: f64,
}

pub fn gamma(dom: &ChannelDomain) -> Result<GammaValue, AnalyticError> {
    gamma_with_tol(dom, GAMMA_TOL)
}

/// When both `f₁` and `f₂` are sample polylines the integrand is piecewise
/// `1/(linear)` and is integrated exactly; otherwise adaptive Gauss–Kronrod
/// runs on each interval between sample abscissae of the polyline factors.
pub fn gamma_with_tol(dom: &ChannelDomain, tol: f64) -> Result<GammaValue, AnalyticError> {
    let (f1, f2) = (dom.outer_lower(), dom.inner_upper());
    let (c, d) = (dom.c(), dom.d());
    let mut breaks = vec![c, d];
    for f in [f1, f2] {
        if !f.is_builtin() {
            breaks.extend(f.abscissae_in(c, d));
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    if !f1.is_builtin() && !f2.is_builtin() {
        return exact_piecewise(f1, f2, &breaks);
    }

    let bad = std::cell::Cell::new(None);
    let integrand = |x: f64| {
        let g = f1.eval(x) - f2.eval(x);
        if !(g > 0.0) && bad.get().is_none() {
            bad.set(Some(x));
        }
        1.0 / g
    };
    let (mut value, mut err) = (0.0, 0.0);
    let share = tol / (breaks.len() - 1) as f64;
    for w in breaks.windows(2) {
        let q = integrate(integrand, w[0], w[1], share, 4000);
        value += q.value;
        err += q.abs_error;
    }
    if let Some(x) = bad.get() {
        return Err(AnalyticError::NonpositiveGap(x));
    }
    Ok(GammaValue { value, abs_error_estimate: err })
}

fn exact_piecewise(f1: &BoundaryFunction, f2: &BoundaryFunction, breaks: &[f64]) -> Result<GammaValue, AnalyticError> {
    let gap = |x: f64| f1.eval(x) - f2.eval(x);
    let mut value = 0.0;
    for w in breaks.windows(2) {
        let (g0, g1) = (gap(w[0]), gap(w[1]));
        if !(g0 > 0.0) {
            return Err(AnalyticError::NonpositiveGap(w[0]));
        }
        if !(g1 > 0.0) {
            return Err(AnalyticError::NonpositiveGap(w[1]));
        }
        let dx = w[1] - w[0];
        let dg = g1 - g0;
        // ∫ dx / (g0 + (g1−g0)t) over the panel = dx · ln(g1/g0)/(g1−g0)
        value += if dg.abs() <= 1e-14 * g0 { dx / (0.5 * (g0 + g1)) } else { dx * (dg / g0).ln_1p() / dg };
    }
    Ok(GammaValue { value, abs_error_estimate: 4.0 * f64::EPSILON * value * breaks.len() as f64 })
}

/// `1/(γ(Ω) H)`, the predicted modulus of the stretched domain.
pub fn asymptotic_prediction(dom: &ChannelDomain, h: StretchFactor) -> Result<f64, AnalyticError> {
    Ok(1.0 / (gamma(dom)?.value * h.value()))
}
