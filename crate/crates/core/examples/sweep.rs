//! Sweep the stretch factor on one fixture and check every claim.
//!
//! `cargo run --release --example sweep -- f3`

use confmod::geometry::fixtures;
use confmod::modsolver::SolverOptions;
use confmod::verify::{check_theorem, sweep, sweep_csv, sweep_hash, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "f1".into());
    let dom = fixtures::by_name(&name).ok_or("unknown fixture")?;
    let opts = SolverOptions::default();
    let hs = [4.0, 8.0, 16.0, 32.0, 64.0];

    let records = sweep(&dom, &hs, &opts)?;
    print!("{}", sweep_csv(&records));

    let tol = Tolerances::for_fixture(fixtures::is_symmetric(&name));
    let report = check_theorem(&records, &tol, sweep_hash(&dom, &hs, &opts), Some(opts))?;
    for v in &report.verdicts {
        println!("{}", v.summary());
    }
    Ok(())
}
