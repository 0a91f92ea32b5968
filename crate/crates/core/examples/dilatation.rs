//! Maximal dilatation of the piecewise shear that straightens a stretched
//! channel; it stays bounded as `H` grows.

use confmod::analytic::{is_continuous, ShearParams};
use confmod::geometry::StretchFactor;
use confmod::verify::dilatation_audit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ShearParams { a: [0.5, 2.0, -1.0], b: [0.0, -0.75, 3.0], m: 0.0, c: 0.5, d: 1.25 };
    println!("continuous at H = 8: {}", is_continuous(&p, StretchFactor::new(8.0)?));
    for row in dilatation_audit(&p, &[1.0, 4.0, 16.0, 64.0, 1000.0]) {
        println!("H = {:>6}: K = {:.6}, k = {:.3e}, within K(1): {}", row.h, row.big_k, row.k, row.within_k1);
    }
    Ok(())
}
