//! Boundary functions: graphs `y = f(x)` over a closed interval.
//!
//! Every function carries a dense sample list (used for gridding, polygon
//! construction and file I/O). Builtin profiles additionally keep an exact
//! evaluator that quadrature can call directly.

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Number of samples generated for builtin profiles.
pub const DEFAULT_RESOLUTION: usize = 1025;

/// Closed-form profile of a boundary function, expressed in unstretched
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Profile {
    /// `y = Σ coeffs[k] x^k` (Horner evaluation).
    Polynomial { coeffs: Vec<f64> },
    /// `y = cy ± sqrt(r² − (x − cx)²)`; `upper` selects the sign.
    SemicircleArc { center: [f64; 2], radius: f64, upper: bool },
    /// `y = offset + amplitude · sin(frequency · x + phase)`.
    Sine { offset: f64, amplitude: f64, frequency: f64, phase: f64 },
}

impl Profile {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c),
            Profile::SemicircleArc { center, radius, upper } => {
                let dx = x - center[0];
                let s = (radius * radius - dx * dx).max(0.0).sqrt();
                if *upper {
                    center[1] + s
                } else {
                    center[1] - s
                }
            }
            Profile::Sine { offset, amplitude, frequency, phase } => offset + amplitude * (frequency * x + phase).sin(),
        }
    }
}

/// Which representation backs a [`BoundaryFunction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    PiecewiseLinear,
    Polynomial,
    SemicircleArc,
    Sine,
}

/// A continuous function on `[lo, hi]`, possibly moved by the affine map
/// `x ↦ scale · x + shift` along the abscissa.
///
/// Samples are stored in original coordinates; mapped abscissae are produced
/// on demand, so repeated stretches compose exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    profile: Option<Profile>,
    base: Vec<[f64; 2]>,
    scale: f64,
    shift: f64,
}

impl BoundaryFunction {
    /// Piecewise-linear function through `points` (strictly increasing `x`).
    pub fn from_samples(points: Vec<[f64; 2]>) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::InvalidSamples("need at least two samples".into()));
        }
        if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(GeometryError::InvalidSamples("non-finite sample".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[1][0] <= w[0][0]) {
            return Err(GeometryError::InvalidSamples(format!("abscissae not strictly increasing at x = {}", w[1][0])));
        }
        Ok(Self { profile: None, base: points, scale: 1.0, shift: 0.0 })
    }

    /// Builtin profile sampled at `resolution` equispaced abscissae on `[lo, hi]`.
    pub fn builtin(profile: Profile, lo: f64, hi: f64, resolution: usize) -> Result<Self, GeometryError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(GeometryError::InvalidSamples(format!("bad interval [{lo}, {hi}]")));
        }
        if let Profile::SemicircleArc { center, radius, .. } = &profile {
            if !(*radius > 0.0) || lo < center[0] - radius || hi > center[0] + radius {
                return Err(GeometryError::InvalidSamples("semicircle arc interval exceeds its diameter".into()));
            }
        }
        let n = resolution.max(2);
        let base = (0..n)
            .map(|k| {
                let x = if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 };
                [x, profile.eval(x)]
            })
            .collect::<Vec<_>>();
        if base.iter().any(|p| !p[1].is_finite()) {
            return Err(GeometryError::InvalidSamples("profile evaluates to a non-finite value".into()));
        }
        Ok(Self { profile: Some(profile), base, scale: 1.0, shift: 0.0 })
    }

    pub fn constant(value: f64, lo: f64, hi: f64) -> Result<Self, GeometryError> {
        Self::builtin(Profile::Polynomial { coeffs: vec![value] }, lo, hi, DEFAULT_RESOLUTION)
    }

    pub fn polynomial(coeffs: Vec<f64>, lo: f64, hi: f64) -> Result<Self, GeometryError> {
        Self::builtin(Profile::Polynomial { coeffs }, lo, hi, DEFAULT_RESOLUTION)
    }

    /// Full upper or lower semicircle over its diameter.
    pub fn semicircle(center: [f64; 2], radius: f64, upper: bool) -> Result<Self, GeometryError> {
        Self::builtin(
            Profile::SemicircleArc { center, radius, upper },
            center[0] - radius,
            center[0] + radius,
            DEFAULT_RESOLUTION,
        )
    }

    pub fn kind(&self) -> FunctionKind {
        match &self.profile {
            None => FunctionKind::PiecewiseLinear,
            Some(Profile::Polynomial { .. }) => FunctionKind::Polynomial,
            Some(Profile::SemicircleArc { .. }) => FunctionKind::SemicircleArc,
            Some(Profile::Sine { .. }) => FunctionKind::Sine,
        }
    }

    pub fn profile(&self) -> Option<&Profile> {
        self.profile.as_ref()
    }

    pub fn is_builtin(&self) -> bool {
        self.profile.is_some()
    }

    /// Horizontal stretch factor accumulated so far.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn lo(&self) -> f64 {
        self.map_x(self.base[0][0])
    }

    pub fn hi(&self) -> f64 {
        self.map_x(self.base[self.base.len() - 1][0])
    }

    fn map_x(&self, u: f64) -> f64 {
        u * self.scale + self.shift
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Sample `k` in (stretched) coordinates.
    pub fn sample(&self, k: usize) -> [f64; 2] {
        let p = self.base[k];
        [self.map_x(p[0]), p[1]]
    }

    pub fn samples(&self) -> Vec<[f64; 2]> {
        (0..self.base.len()).map(|k| self.sample(k)).collect()
    }

    pub fn first(&self) -> [f64; 2] {
        self.sample(0)
    }

    pub fn last(&self) -> [f64; 2] {
        self.sample(self.base.len() - 1)
    }

    /// Value at `x`; exact for builtins, linear interpolation otherwise.
    /// Arguments outside `[lo, hi]` are clamped to the nearest endpoint.
    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.shift) / self.scale;
        let (lo, hi) = (self.base[0][0], self.base[self.base.len() - 1][0]);
        if u <= lo {
            return self.base[0][1];
        }
        if u >= hi {
            return self.base[self.base.len() - 1][1];
        }
        match &self.profile {
            Some(p) => p.eval(u),
            None => self.interpolate(u),
        }
    }

    /// Value of the sample polyline at `x`, ignoring any exact profile.
    /// This is the curve that polygonal constructions actually trace.
    pub fn eval_linear(&self, x: f64) -> f64 {
        let u = (x - self.shift) / self.scale;
        let (lo, hi) = (self.base[0][0], self.base[self.base.len() - 1][0]);
        if u <= lo {
            self.base[0][1]
        } else if u >= hi {
            self.base[self.base.len() - 1][1]
        } else {
            self.interpolate(u)
        }
    }

    /// Linear interpolation of the stored samples (unstretched argument).
    fn interpolate(&self, u: f64) -> f64 {
        let k = self.base.partition_point(|p| p[0] <= u).clamp(1, self.base.len() - 1);
        let (p, q) = (self.base[k - 1], self.base[k]);
        let t = (u - p[0]) / (q[0] - p[0]);
        p[1] + t * (q[1] - p[1])
    }

    /// Copy stretched by `factor` along the abscissa (`x ↦ factor · x`).
    pub fn stretched(&self, factor: f64) -> Self {
        Self {
            profile: self.profile.clone(),
            base: self.base.clone(),
            scale: self.scale * factor,
            shift: self.shift * factor,
        }
    }

    /// Copy moved horizontally by `dx`.
    pub fn translated(&self, dx: f64) -> Self {
        Self { shift: self.shift + dx, ..self.clone() }
    }

    /// Sorted abscissae of all samples lying in `[lo, hi]`.
    pub fn abscissae_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        (0..self.base.len()).map(|k| self.sample(k)[0]).filter(|&x| x >= lo && x <= hi).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing_samples() {
        assert!(BoundaryFunction::from_samples(vec![[0.0, 1.0], [0.0, 2.0]]).is_err());
        assert!(BoundaryFunction::from_samples(vec![[0.0, 1.0]]).is_err());
        assert!(BoundaryFunction::from_samples(vec![[0.0, f64::NAN], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn interpolates_between_samples() {
        let f = BoundaryFunction::from_samples(vec![[0.0, 0.0], [1.0, 2.0], [3.0, 0.0]]).unwrap();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(2.0), 1.0);
        assert_eq!(f.eval(-1.0), 0.0);
        assert_eq!(f.kind(), FunctionKind::PiecewiseLinear);
    }

    #[test]
    fn builtin_hits_interval_endpoints_exactly() {
        let f = BoundaryFunction::semicircle([0.5, 0.0], 0.5, false).unwrap();
        assert_eq!(f.first(), [0.0, 0.0]);
        assert_eq!(f.last(), [1.0, 0.0]);
        assert_eq!(f.len(), DEFAULT_RESOLUTION);
        assert!((f.eval(0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn stretch_scales_abscissae_only() {
        let f = BoundaryFunction::polynomial(vec![1.0, 0.5], -1.0, 2.0).unwrap();
        let g = f.stretched(4.0);
        assert_eq!(g.lo(), -4.0);
        assert_eq!(g.hi(), 8.0);
        assert_eq!(g.eval(4.0), f.eval(1.0));
    }

    #[test]
    fn translation_keeps_builtin_values() {
        let f = BoundaryFunction::builtin(
            Profile::Sine { offset: 1.0, amplitude: 0.3, frequency: std::f64::consts::PI, phase: 0.0 },
            0.0,
            1.0,
            65,
        )
        .unwrap()
        .stretched(3.0);
        let g = f.translated(2.5);
        for x in [0.1, 0.7, 1.9, 2.8] {
            assert!((g.eval(x + 2.5) - f.eval(x)).abs() < 1e-14);
        }
        let p = BoundaryFunction::polynomial(vec![2.0, 1.0, -0.5], -1.0, 2.0).unwrap().stretched(2.0);
        let q = p.translated(-0.75);
        for x in [-1.5, 0.0, 2.2, 3.9] {
            assert!((q.eval(x - 0.75) - p.eval(x)).abs() < 1e-13);
        }
    }
}
