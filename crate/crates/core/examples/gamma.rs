//! γ of each built-in channel and of a domain file, plus the stretched
//! prediction `m(Ω_H) ≈ 1/(γH)`.

use confmod::analytic::{asymptotic_prediction, gamma};
use confmod::geometry::config::DomainFile;
use confmod::geometry::{fixtures, StretchFactor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, dom) in fixtures::all() {
        let g = gamma(&dom)?;
        println!("{name:>18}: gamma = {:.12} (± {:.1e})", g.value, g.abs_error_estimate);
        for h in [4.0, 64.0] {
            let m = asymptotic_prediction(&dom, StretchFactor::new(h)?)?;
            println!("{:>18}  H = {h:>4}: 1/(gamma H) = {m:.6}", "");
        }
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/tilted.toml");
    let dom = DomainFile::load(path.as_ref())?.domain()?;
    println!("tilted.toml: gamma = {:.12}, 4 ln(5/4) = {:.12}", gamma(&dom)?.value, 4.0 * 1.25f64.ln());
    Ok(())
}
