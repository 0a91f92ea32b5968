//! Quadrilateral moduli: rectangles, reciprocity with the conjugate, and an
//! L-shaped hexagon with a reentrant corner.

use confmod::geometry::Quadrilateral;
use confmod::modsolver::{conjugate_modulus, quad_modulus, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions::default();

    let rect = Quadrilateral::rectangle(3.0, 1.0)?;
    let m = quad_modulus(&rect, &opts)?.value;
    let mc = conjugate_modulus(&rect, &opts)?.value;
    println!("3x1 rectangle: m = {m:.10}, conjugate {mc:.10}, product {:.10}", m * mc);

    // Reflection in the diagonal swaps the arcs, so the modulus is exactly 1.
    let hex = vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]];
    let l_shape = Quadrilateral::new(hex, [0, 1, 3, 5])?;
    let est = quad_modulus(&l_shape, &opts)?;
    println!("L-shape: m = {:.6} ± {:.1e} (order {:.2})", est.value, est.error_estimate, est.order);
    for (h, v) in &est.raw {
        println!("  h = {h:.5}: {v:.6}");
    }
    Ok(())
}
