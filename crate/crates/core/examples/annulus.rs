//! Ring modulus of concentric and non-concentric annuli against their
//! closed forms.

use confmod::analytic::{annulus_modulus, r_of_rho};
use confmod::modsolver::{circle, ring_modulus, RingInput, SolverOptions};
use std::f64::consts::PI;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions::default();

    for big_r in [2.0, 4.0] {
        let (outer, inner) = (circle([0.0, 0.0], big_r, 2048), circle([0.0, 0.0], 1.0, 2048));
        let est = ring_modulus(RingInput::Polylines { outer: &outer, inner: &inner }, &opts)?;
        let exact = annulus_modulus(1.0, big_r)?;
        println!("1 < |z| < {big_r}: {:.8} ± {:.1e}, exact {exact:.8}", est.value, est.error_estimate);
    }

    // The unit disc minus a disc tangent to it at -i; a Möbius map sends it
    // to 1 < |w| < ρ.
    for rho in [1.5, 3.0] {
        let r = r_of_rho(rho);
        let (outer, inner) = (circle([0.0, 0.0], 1.0, 4096), circle([0.0, -0.5 * r], 0.5 * r, 4096));
        let est = ring_modulus(RingInput::Polylines { outer: &outer, inner: &inner }, &opts)?;
        println!("rho = {rho}: {:.8} ± {:.1e}, exact {:.8}", est.value, est.error_estimate, rho.ln() / (2.0 * PI));
    }
    Ok(())
}
