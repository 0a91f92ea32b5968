//! Split a stretched channel domain at the verticals through the channel
//! ends and compare the pieces with the whole.

use confmod::analytic::gamma;
use confmod::geometry::{fixtures, StretchFactor};
use confmod::modsolver::{split_moduli, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dom = fixtures::nonsymmetric_lens();
    let g = gamma(&dom)?.value;
    let h = StretchFactor::new(16.0)?;
    let s = split_moduli(&dom.stretch(h), &SolverOptions::default())?;

    let (mo, mq, mp) = (s.omega.value, s.q.value, s.p.value);
    println!("m(Omega) = {mo:.6} ± {:.1e}", s.omega.error_estimate);
    println!("m(Q)     = {mq:.6} ± {:.1e}  (gamma H = {:.6})", s.q.error_estimate, g * h.value());
    println!("m(P)     = {mp:.6} ± {:.1e}", s.p.error_estimate);
    println!("1/m(Omega) - m(Q) - m(P) = {:.3e} (nonnegative)", 1.0 / mo - mq - mp);
    println!("(m(Q) + m(P)) m(Omega)   = {:.6}", (mq + mp) * mo);
    Ok(())
}
