//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 7, 9 and 10 cannot be met as stated (see the README, "Known
//! limits"); they still run and print FAIL. The binary exits non-zero if
//! any other criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use confmod::analytic::{
    grotzsch_mu, halfplane_to_u, halfplane_to_u_quadrature, r_of_rho, shear_dilatation, teichmuller_modulus,
    ShearParams,
};
use confmod::geometry::{fixtures, Quadrilateral, StretchFactor};
use confmod::modsolver::{
    circle, conjugate_modulus, oracle_ladder, quad_modulus, ring_modulus, split_problems, RingInput, SolverOptions,
};
use confmod::verify::{check_theorem, sweep, sweep_hash, Claim, Tolerances, VerificationReport};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

const EXPECTED_FAILURES: [u32; 3] = [7, 9, 10];
const H_LADDER: [f64; 5] = [4.0, 8.0, 16.0, 32.0, 64.0];

struct Outcome {
    id: u32,
    passed: bool,
}

fn report(id: u32, name: &str, passed: bool, detail: String) -> Outcome {
    println!("{} criterion {id:>2} {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    Outcome { id, passed }
}

fn annulus_anchor(opts: &SolverOptions) -> Outcome {
    let t = Instant::now();
    let (o, i) = (circle([0.0, 0.0], 2.0, 2048), circle([0.0, 0.0], 1.0, 2048));
    let est = ring_modulus(RingInput::Polylines { outer: &o, inner: &i }, opts).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let exact = 2f64.ln() / (2.0 * PI);
    let err = (est.value - exact).abs();
    report(
        1,
        "annulus anchor",
        err <= 1e-3 && secs < 30.0 && est.raw.len() == 3,
        format!("m = {:.8}, ln2/(2pi) = {exact:.8}, |diff| = {err:.2e}, {secs:.2} s", est.value),
    )
}

fn quad_anchors(opts: &SolverOptions) -> Outcome {
    let sq = quad_modulus(&Quadrilateral::rectangle(1.0, 1.0).unwrap(), opts).unwrap().value;
    let half = quad_modulus(&Quadrilateral::rectangle(1.0, 0.5).unwrap(), opts).unwrap().value;
    let quads = [
        Quadrilateral::rectangle(2.0, 1.0).unwrap(),
        Quadrilateral::new(vec![[0.0, 0.0], [3.0, 0.0], [2.0, 1.0], [0.5, 1.0]], [0, 1, 2, 3]).unwrap(),
        Quadrilateral::new(vec![[0.0, 0.0], [2.0, 0.3], [2.5, 2.0], [0.2, 1.5]], [0, 1, 2, 3]).unwrap(),
        Quadrilateral::new(vec![[0.0, 0.0], [2.0, 0.0], [2.5, 1.0], [1.0, 2.0], [-0.5, 1.0]], [0, 1, 2, 4]).unwrap(),
        Quadrilateral::new(vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]], [0, 1, 3, 5])
            .unwrap(),
    ];
    let products: Vec<f64> = quads
        .iter()
        .map(|q| quad_modulus(q, opts).unwrap().value * conjugate_modulus(q, opts).unwrap().value)
        .collect();
    let worst = products.iter().map(|p| (p - 1.0).abs()).fold(0.0, f64::max);
    let passed = (sq - 1.0).abs() <= 1e-3 && (half - 0.5).abs() <= 1e-3 && worst <= 0.01;
    report(
        2,
        "quadrilateral anchors",
        passed,
        format!("square {sq:.6}, 1x0.5 {half:.6}, worst |m m* - 1| = {worst:.2e} over {} quads", products.len()),
    )
}

fn conformal_invariance(opts: &SolverOptions) -> Outcome {
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for rho in [1.5, 3.0] {
        let r = r_of_rho(rho);
        let (o, i) = (circle([0.0, 0.0], 1.0, 4096), circle([0.0, -0.5 * r], 0.5 * r, 4096));
        let m = ring_modulus(RingInput::Polylines { outer: &o, inner: &i }, opts).unwrap().value;
        let (o, i) = (circle([0.0, 0.0], rho, 2048), circle([0.0, 0.0], 1.0, 2048));
        let image = ring_modulus(RingInput::Polylines { outer: &o, inner: &i }, opts).unwrap().value;
        let rel = (m - image).abs() / image;
        worst = worst.max(rel);
        parts.push(format!("rho {rho}: {m:.6} vs image {image:.6}"));
    }
    report(3, "conformal invariance", worst <= 0.005, format!("{}, worst {worst:.2e}", parts.join("; ")))
}

fn claim_line(id: u32, name: &str, reports: &[(&str, VerificationReport)], claims: &[Claim]) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (fx, rep) in reports {
        for &c in claims {
            let v = rep.verdict(c).unwrap();
            passed &= v.passed;
            parts.push(format!("{fx}/{} {}", c.name(), v.detail));
        }
    }
    report(id, name, passed, parts.join("; "))
}

fn map_identities() -> Outcome {
    let m = 1.3;
    let e1 = halfplane_to_u(m, Complex64::new(1.0, 0.0)).unwrap().norm();
    let e2 = (halfplane_to_u(m, Complex64::new(-1.0, 0.0)).unwrap() - Complex64::new(0.0, -m)).norm();
    let asym = [-0.5 * PI, -0.25 * PI, -0.001]
        .iter()
        .map(|&t| {
            let z = Complex64::from_polar(1e6, t);
            (halfplane_to_u(m, z).unwrap() * PI / (m * z) - 1.0).norm()
        })
        .fold(0.0, f64::max);
    let mut rng = StdRng::seed_from_u64(7);
    let quad = (0..50)
        .map(|_| {
            let z = Complex64::new(rng.gen_range(-5.0..5.0), -rng.gen_range(1e-3..5.0));
            (halfplane_to_u(m, z).unwrap() - halfplane_to_u_quadrature(m, z, 1e-13).unwrap()).norm()
        })
        .fold(0.0, f64::max);
    let passed = e1 <= 1e-12 && e2 <= 1e-12 && asym < 1e-5 && quad <= 1e-10;
    report(
        9,
        "map identities",
        passed,
        format!(
            "|g(1)| {e1:.1e}, |g(-1)+iM| {e2:.1e}, max |g pi/(M z) - 1| at |z|=1e6 {asym:.3e} (limit 1e-5), \
             quadrature {quad:.1e}"
        ),
    )
}

fn dilatation() -> Outcome {
    let hs = [1.0, 10.0, 100.0, 1000.0];
    let mut passed = true;
    let mut parts = Vec::new();
    for slope in [0.5, 1.0, 2.0] {
        let p = ShearParams { a: [slope, -slope, slope], b: [0.0; 3], m: 0.0, c: 0.0, d: 1.0 };
        let ks: Vec<f64> = hs.iter().map(|&h| shear_dilatation(&p, StretchFactor::new(h).unwrap())).collect();
        let monotone = ks.windows(2).all(|w| w[1] < w[0]);
        passed &= monotone && ks[3] < 1.002;
        parts.push(format!("a={slope}: K(1e3) = {:.7}{}", ks[3], if monotone { "" } else { " not monotone" }));
    }
    report(10, "dilatation", passed, parts.join(", "))
}

fn teichmuller() -> Outcome {
    let t = 1e6;
    let asym = (2.0 * PI * teichmuller_modulus(t).unwrap() / (16.0 * t).ln() - 1.0).abs();
    let ident = [0.01, 0.2, 0.5, 0.8, 0.99]
        .iter()
        .map(|&r: &f64| {
            let rp = (1.0 - r * r).sqrt();
            let a = (grotzsch_mu(r).unwrap() * grotzsch_mu(rp).unwrap() - PI * PI / 4.0).abs();
            let b = (grotzsch_mu(2.0 * r.sqrt() / (1.0 + r)).unwrap() - 0.5 * grotzsch_mu(r).unwrap()).abs();
            a.max(b)
        })
        .fold(0.0, f64::max);
    report(
        11,
        "Teichmuller asymptotic",
        asym < 1e-3 && ident < 1e-11,
        format!("|2pi m/ln(16t) - 1| at t=1e6 {asym:.2e}, mu identities {ident:.1e}"),
    )
}

fn oracle(opts: &SolverOptions) -> Outcome {
    let h = StretchFactor::new(H_LADDER[0]).unwrap();
    let (mut worst_fine, mut worst_extra) = (0.0f64, 0.0f64);
    let mut parts = Vec::new();
    for (name, dom) in fixtures::all() {
        let problems = split_problems(&dom.stretch(h), opts).unwrap();
        for (piece, (region, plan)) in ["omega", "Q", "P"].iter().zip(&problems) {
            let lad = oracle_ladder(region, plan, opts).unwrap();
            let fine = lad.levels.last().unwrap().relative_gap();
            worst_fine = worst_fine.max(fine);
            worst_extra = worst_extra.max(lad.extrapolated_gap());
            parts.push(format!("{name}/{piece} {fine:.2e}"));
        }
    }
    report(
        12,
        "oracle equivalence",
        worst_fine <= 0.02 && worst_extra <= 0.02,
        format!(
            "finest-grid gaps [{}], worst {worst_fine:.2e}, worst extrapolated {worst_extra:.2e}",
            parts.join(", ")
        ),
    )
}

fn main() {
    let opts = SolverOptions::default();
    let mut out = vec![annulus_anchor(&opts), quad_anchors(&opts), conformal_invariance(&opts)];

    let reports: Vec<(&str, VerificationReport)> = fixtures::all()
        .into_iter()
        .map(|(name, dom)| {
            let records = sweep(&dom, &H_LADDER, &opts).unwrap();
            let tol = Tolerances::for_fixture(fixtures::is_symmetric(name));
            (name, check_theorem(&records, &tol, sweep_hash(&dom, &H_LADDER, &opts), Some(opts)).unwrap())
        })
        .collect();
    let nonsymmetric: Vec<(&str, VerificationReport)> =
        reports.iter().filter(|(n, _)| !fixtures::is_symmetric(n)).cloned().collect();
    out.push(claim_line(4, "bound", &reports, &[Claim::Bound]));
    out.push(claim_line(5, "asymptotics", &reports, &[Claim::Asymptotics]));
    out.push(claim_line(6, "Grotzsch and lower bound", &reports, &[Claim::Grotzsch, Claim::LowerBound]));
    out.push(claim_line(7, "additivity trend", &nonsymmetric, &[Claim::Additivity]));
    out.push(claim_line(8, "m(P) growth", &reports, &[Claim::Growth]));
    out.push(map_identities());
    out.push(dilatation());
    out.push(teichmuller());
    out.push(oracle(&opts));

    let passed = out.iter().filter(|o| o.passed).count();
    let unexpected: Vec<u32> =
        out.iter().filter(|o| !o.passed && !EXPECTED_FAILURES.contains(&o.id)).map(|o| o.id).collect();
    println!("acceptance: {passed}/{} criteria pass; known unattainable: {EXPECTED_FAILURES:?}", out.len());
    if !unexpected.is_empty() {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
