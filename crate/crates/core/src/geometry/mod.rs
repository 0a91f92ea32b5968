//! Domains with two graph-bounded holes, quadrilaterals, and the maps the
//! stretching argument applies to them.

mod boundary;
pub mod config;
mod domain;
pub mod fixtures;
mod quad;

pub use boundary::{BoundaryFunction, FunctionKind, Profile, DEFAULT_RESOLUTION};
pub use domain::{signed_area, validate_domain, BoundingBox, ChannelDomain, DomainCandidate, DomainViolation};
pub use quad::{split_at_verticals, split_at_verticals_in, Quadrilateral, DEFAULT_BOX_FACTOR};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid samples: {0}")]
    InvalidSamples(String),
    #[error("stretch factor must be positive and finite, got {0}")]
    NonPositiveStretch(f64),
    #[error("degenerate strip at x = {0}: upper and lower graphs coincide")]
    DegenerateStrip(f64),
    #[error("polyline is not simple: segments {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polyline has the wrong orientation")]
    Orientation,
    #[error("marked vertices must be four strictly increasing indices below {0}")]
    MarkedOrder(usize),
    #[error("truncation box does not contain the boundary")]
    BoxTooSmall,
    #[error("domain violates {} condition(s): {}", .0.len(), join_violations(.0))]
    InvalidDomain(Vec<DomainViolation>),
}

fn join_violations(v: &[DomainViolation]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

/// Horizontal stretch factor `H > 0` of the map `x + iy ↦ Hx + iy`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
pub struct StretchFactor(f64);

impl StretchFactor {
    pub fn new(h: f64) -> Result<Self, GeometryError> {
        if h.is_finite() && h > 0.0 {
            Ok(Self(h))
        } else {
            Err(GeometryError::NonPositiveStretch(h))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Self(1.0 / self.0)
    }
}

impl std::fmt::Display for StretchFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
