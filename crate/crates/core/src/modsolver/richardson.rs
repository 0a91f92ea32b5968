//! Richardson extrapolation with a fitted order.

use serde::Serialize;

/// Range searched for the convergence order.
pub const ORDER_RANGE: [f64; 2] = [0.5, 8.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RichardsonFit {
    pub extrapolated: f64,
    pub error_estimate: f64,
    /// Fitted `p` in `v(h) = v* + C·h^p`; 0 when no order could be fitted.
    pub order: f64,
    /// Set when the values were not monotone and the finest value was kept.
    pub fallback: bool,
}

/// Fit `v(h) = v* + C·h^p` through the last three `(h, v)` pairs (`h`
/// strictly decreasing).
///
/// With monotone data the order is found from the ratio of successive
/// differences and clamped to [`ORDER_RANGE`]; `v*` and `C` then come from a
/// least-squares fit. Non-monotone data fall back to the finest value with
/// the last difference as the error. Fewer than three entries are treated
/// the same way.
pub fn richardson(raw: &[(f64, f64)]) -> RichardsonFit {
    let n = raw.len();
    assert!(n >= 1, "richardson needs data");
    debug_assert!(raw.windows(2).all(|w| w[1].0 < w[0].0), "h must decrease");
    let finest = raw[n - 1].1;
    let fallback = || RichardsonFit {
        extrapolated: finest,
        error_estimate: if n >= 2 { (finest - raw[n - 2].1).abs() } else { 0.0 },
        order: 0.0,
        fallback: true,
    };
    if n < 3 {
        return fallback();
    }
    let [(h1, v1), (h2, v2), (h3, v3)] = [raw[n - 3], raw[n - 2], raw[n - 1]];
    let (d1, d2) = (v1 - v2, v2 - v3);
    let scale = v1.abs().max(v2.abs()).max(v3.abs()).max(f64::MIN_POSITIVE);
    // Ladders that agree to roundoff are converged, not oscillating.
    let noise = 1e3 * f64::EPSILON * scale;
    if d1.abs() <= noise && d2.abs() <= noise {
        return RichardsonFit { extrapolated: v3, error_estimate: 0.0, order: 0.0, fallback: false };
    }
    if d1 * d2 <= 0.0 {
        return fallback();
    }
    let target = d1 / d2;
    let ratio = |p: f64| (h1.powf(p) - h2.powf(p)) / (h2.powf(p) - h3.powf(p));
    // `ratio` increases with `p` for decreasing `h`.
    let [mut lo, mut hi] = ORDER_RANGE;
    let p = if target <= ratio(lo) {
        lo
    } else if target >= ratio(hi) {
        hi
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if ratio(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    // Least squares for v* and C with p fixed.
    let xs = [h1.powf(p), h2.powf(p), h3.powf(p)];
    let vs = [v1, v2, v3];
    let (mx, mv) = (xs.iter().sum::<f64>() / 3.0, vs.iter().sum::<f64>() / 3.0);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxv: f64 = xs.iter().zip(&vs).map(|(x, v)| (x - mx) * (v - mv)).sum();
    let c = sxv / sxx;
    let extrapolated = mv - c * mx;
    RichardsonFit { extrapolated, error_estimate: (extrapolated - v3).abs(), order: p, fallback: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_data() {
        let raw: Vec<_> = [0.4, 0.2, 0.1].iter().map(|&h: &f64| (h, 1.0 + h * h)).collect();
        let fit = richardson(&raw);
        assert!((fit.extrapolated - 1.0).abs() < 1e-10);
        assert!((fit.order - 2.0).abs() < 1e-10);
        assert!((fit.error_estimate - 0.01).abs() < 1e-10);
    }

    #[test]
    fn constant_data() {
        let fit = richardson(&[(0.4, 3.0), (0.2, 3.0), (0.1, 3.0)]);
        assert_eq!((fit.extrapolated, fit.error_estimate, fit.fallback), (3.0, 0.0, false));
    }

    #[test]
    fn non_monotone_falls_back() {
        let fit = richardson(&[(0.4, 1.0), (0.2, 1.2), (0.1, 1.1)]);
        assert!(fit.fallback);
        assert_eq!(fit.extrapolated, 1.1);
        assert!((fit.error_estimate - 0.1).abs() < 1e-15);
    }

    #[test]
    fn non_dyadic_ladder() {
        let raw: Vec<_> = [0.3, 0.17, 0.05].iter().map(|&h: &f64| (h, 2.0 - 0.7 * h.powf(1.5))).collect();
        let fit = richardson(&raw);
        assert!((fit.extrapolated - 2.0).abs() < 1e-10 && (fit.order - 1.5).abs() < 1e-8);
    }

    #[test]
    fn uses_last_three_entries() {
        let mut raw = vec![(0.8, 100.0)];
        raw.extend([0.4, 0.2, 0.1].iter().map(|&h: &f64| (h, 1.0 + h * h)));
        assert!((richardson(&raw).extrapolated - 1.0).abs() < 1e-10);
    }
}
