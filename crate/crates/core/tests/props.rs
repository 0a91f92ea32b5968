//! Property tests.

use confmod::geometry::Quadrilateral;
use confmod::modsolver::{conjugate_modulus, quad_modulus, SolverOptions};
use proptest::prelude::*;

fn jitter() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-0.25f64..0.25)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 5, ..ProptestConfig::default() })]

    // Slanted Neumann walls converge at about first order on the cut-cell
    // grid, so the extrapolated product is good to a few parts in a thousand.
    #[test]
    fn reciprocity_on_convex_quads(j in jitter()) {
        let base = [[0.0, 0.0], [1.5, 0.0], [1.5, 1.0], [0.0, 1.0]];
        let v: Vec<[f64; 2]> = base.iter().enumerate().map(|(k, p)| [p[0] + j[2 * k], p[1] + j[2 * k + 1]]).collect();
        let q = Quadrilateral::new(v, [0, 1, 2, 3]).unwrap();
        let opts = SolverOptions::default();
        let m = quad_modulus(&q, &opts).unwrap().value;
        let mc = conjugate_modulus(&q, &opts).unwrap().value;
        prop_assert!((m * mc - 1.0).abs() < 1e-2, "m = {m}, m* = {mc}");
    }

    #[test]
    fn stretching_scales_rectangles(w in 0.5f64..3.0, h in 0.5f64..3.0) {
        let q = Quadrilateral::rectangle(w, h).unwrap();
        let m = quad_modulus(&q, &SolverOptions::default()).unwrap().value;
        prop_assert!((m - h / w).abs() < 1e-3 * (h / w), "{m} vs {}", h / w);
    }
}
