//! Closed-form layer: `γ`, ring functions, and the explicit maps used in the
//! stretching argument.

pub mod elliptic;
pub mod gamma;
pub mod maps;
pub mod quadrature;
pub mod shear;

pub use elliptic::{agm, annulus_modulus, ellip_k, grotzsch_mu, teichmuller_modulus};
pub use gamma::{asymptotic_prediction, gamma, gamma_with_tol, GammaValue};
pub use maps::{halfplane_to_u, halfplane_to_u_quadrature, mobius_psi, r_of_rho};
pub use shear::{is_continuous, shear_dilatation, shear_eta, shear_eta_inverse, ShearParams};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("radii must satisfy 0 < r < R, got r = {r}, R = {big_r}")]
    Radii { r: f64, big_r: f64 },
    #[error("evaluation at the pole")]
    Pole,
    #[error("NaN argument")]
    NotANumber,
    #[error("argument lies in the upper half-plane (Im = {0})")]
    UpperHalfPlane(f64),
    #[error("nonpositive channel gap at x = {0}")]
    NonpositiveGap(f64),
}
