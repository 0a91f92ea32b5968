//! The explicit maps: Möbius normalisation of a non-concentric annulus, the
//! half-plane map `g`, and the Grötzsch and Teichmüller ring functions.

use confmod::analytic::{
    grotzsch_mu, halfplane_to_u, halfplane_to_u_quadrature, mobius_psi, r_of_rho, teichmuller_modulus,
};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rho = 2.0;
    println!("rho = {rho}: inner circle has diameter r = {:.10}", r_of_rho(rho));
    for z in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -r_of_rho(rho))] {
        let w = mobius_psi(rho, z)?;
        println!("  psi({z}) = {w:.6}, |w| = {:.10}", w.norm());
    }

    let m = 1.5;
    for zeta in [Complex64::new(0.3, -0.2), Complex64::new(-2.0, -1.0)] {
        let closed = halfplane_to_u(m, zeta)?;
        let quad = halfplane_to_u_quadrature(m, zeta, 1e-12)?;
        println!("g({zeta}) = {closed:.10}, quadrature differs by {:.1e}", (closed - quad).norm());
    }

    for r in [0.1, 0.5, 0.9] {
        println!("mu({r}) = {:.10}", grotzsch_mu(r)?);
    }
    for t in [0.5, 1.0, 10.0] {
        println!("Teichmuller ring modulus at t = {t}: {:.10}", teichmuller_modulus(t)?);
    }
    Ok(())
}
