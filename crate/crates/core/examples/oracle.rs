//! Cut-cell finite volumes against the staircase resistor network on the
//! same grids.

use confmod::geometry::Quadrilateral;
use confmod::modsolver::plan::ring_plan;
use confmod::modsolver::{oracle_ladder, quad_problem, GridPlan, Region, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions::default();
    let square = |s: f64| vec![[-s, -s], [s, -s], [s, s], [-s, s]];
    let (outer, inner) = (square(2.0), square(1.0));
    let hex = vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]];
    let l_shape = Quadrilateral::new(hex, [0, 1, 3, 5])?;

    let problems: Vec<(&str, Region, GridPlan)> = vec![
        ("square ring", Region::ring(&outer, &inner), ring_plan(&outer, &inner, None, opts.growth).0),
        ("L-shape", quad_problem(&l_shape, &opts).0, quad_problem(&l_shape, &opts).1),
    ];
    for (name, region, plan) in &problems {
        let lad = oracle_ladder(region, plan, &opts)?;
        for c in &lad.levels {
            println!("{name}: h = {:.4}  fv {:.6}  network {:.6}", c.h, c.pde, c.oracle);
        }
        println!(
            "{name}: extrapolated fv {:.6}  network {:.6}  gap {:.2e}",
            lad.pde.extrapolated,
            lad.oracle.extrapolated,
            lad.extrapolated_gap()
        );
    }
    Ok(())
}
