//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification claim failed, 2 usage error,
//! 3 configuration error, 4 solver error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::analytic::{self, gamma, halfplane_to_u, mobius_psi, r_of_rho};
use crate::geometry::config::DomainFile;
use crate::geometry::{fixtures, ChannelDomain, Quadrilateral, StretchFactor};
use crate::modsolver::{
    self, circle, conjugate_modulus, oracle_ladder, quad_modulus, ring_modulus, split_problems, LinearSolver,
    ModulusEstimate, RingInput, SolverOptions,
};
use crate::verify::{self, check_theorem, sweep, sweep_hash, Tolerances};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

/// Vertices used for the polyline circles of annulus problems.
const CIRCLE_POINTS: usize = 2048;

#[derive(Debug, Parser)]
#[command(name = "confmod", version, about = "Conformal moduli of channel domains under horizontal stretching")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print γ = ∫ dx/(f₁ − f₂) over the channel.
    Gamma(DomainArgs),
    /// Ring modulus of a channel domain or an annulus.
    Modulus(ModulusArgs),
    /// Modulus of a quadrilateral.
    Quad(QuadArgs),
    /// Sweep the stretch factor and write the table.
    Sweep(SweepArgs),
    /// Sweep and check every claim; exit 1 if any fails.
    Verify(SweepArgs),
    /// Compare the PDE solve with the resistor-network discretisation.
    Oracle(OracleArgs),
    /// Evaluate the explicit maps and write plot data.
    Maps(MapsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    /// Domain file (TOML, `confmod_config = 1`).
    #[arg(long, conflicts_with = "fixture")]
    pub domain: Option<PathBuf>,
    /// Built-in fixture: f1, f2 or f3.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Coarsest grid cell size.
    #[arg(long = "grid-h0")]
    pub grid_h0: Option<f64>,
    /// Grids in the refinement ladder.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Use conjugate gradients with this relative tolerance instead of a
    /// direct factorisation.
    #[arg(long = "cg-tol")]
    pub cg_tol: Option<f64>,
    /// Reserved; every algorithm is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ModulusArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Annulus radii `r,R`.
    #[arg(long, value_parser = parse_pair, conflicts_with_all = ["domain", "fixture", "nonconcentric"])]
    pub annulus: Option<(f64, f64)>,
    /// Disc `|ζ| < 1` minus the disc through 0 and `−i·r(ρ)`, for this ρ.
    #[arg(long, conflicts_with_all = ["domain", "fixture"])]
    pub nonconcentric: Option<f64>,
    /// Stretch factor applied to the channel domain.
    #[arg(long = "H")]
    pub h: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Rectangle `w,h` with its corners marked from the origin.
    #[arg(long, value_parser = parse_pair, conflicts_with = "vertices")]
    pub rect: Option<(f64, f64)>,
    /// Counterclockwise polygon `x,y;x,y;…`.
    #[arg(long, value_parser = parse_points, requires = "marks")]
    pub vertices: Option<Polygon>,
    /// Indices of z₁..z₄ in the vertex list.
    #[arg(long, value_delimiter = ',')]
    pub marks: Option<Vec<usize>>,
    /// Solve the conjugate quadrilateral instead.
    #[arg(long)]
    pub conjugate: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Stretch factors, increasing.
    #[arg(long = "H", value_delimiter = ',', default_value = "4,8,16,32,64")]
    pub h: Vec<f64>,
    /// Directory for `sweep.csv` (and `report.json` for verify).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the ratio floor at the largest H.
    #[arg(long = "ratio-floor")]
    pub ratio_floor: Option<f64>,
    /// Override the additivity gain required of non-symmetric domains.
    #[arg(long = "additivity-gain")]
    pub additivity_gain: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_parser = parse_pair, conflicts_with_all = ["domain", "fixture", "rect"])]
    pub annulus: Option<(f64, f64)>,
    #[arg(long, value_parser = parse_pair, conflicts_with_all = ["domain", "fixture"])]
    pub rect: Option<(f64, f64)>,
    /// Stretch factor for a channel domain.
    #[arg(long = "H", default_value_t = 1.0)]
    pub h: f64,
}

#[derive(Debug, Clone, Args)]
pub struct MapsArgs {
    /// ρ of the Möbius normalisation of the non-concentric annulus.
    #[arg(long, default_value_t = 1.5)]
    pub rho: f64,
    /// `M` of the half-plane map `g`.
    #[arg(long = "M", default_value_t = 1.0)]
    pub m: f64,
    /// Points per boundary curve in the plot data.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v: Vec<f64> =
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    match v[..] {
        [a, b] => Ok((a, b)),
        _ => Err(format!("expected two comma-separated numbers, got {s:?}")),
    }
}

/// Vertex list given as `x,y;x,y;…`.
#[derive(Debug, Clone)]
pub struct Polygon(pub Vec<[f64; 2]>);

fn parse_points(s: &str) -> Result<Polygon, String> {
    s.split(';').map(|p| parse_pair(p).map(|(x, y)| [x, y])).collect::<Result<_, _>>().map(Polygon)
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn config(msg: impl ToString) -> Self {
        Self { code: EXIT_CONFIG, message: msg.to_string() }
    }

    fn solver(msg: impl ToString) -> Self {
        Self { code: EXIT_SOLVER, message: msg.to_string() }
    }

    fn usage(msg: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: msg.to_string() }
    }
}

impl From<modsolver::SolverError> for Failure {
    fn from(e: modsolver::SolverError) -> Self {
        Self::solver(e)
    }
}

/// Everything a command needs besides its own flags.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub domain_file: Option<PathBuf>,
    pub fixture: Option<String>,
    pub solver: SolverOptions,
    pub h_list: Vec<f64>,
    pub out: Option<PathBuf>,
    pub tolerances: Tolerances,
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point used by the binary: honours `CONFMOD_THREADS`.
pub fn main_with_env() -> i32 {
    let threads = std::env::var("CONFMOD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            b = b.num_threads(n);
        }
        b.build().expect("thread pool")
    };
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    pool.install(|| run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock()))
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::config(format!("cannot write {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) {
    let _ = writeln!(out, "{text}");
}

/// Domain and solver options from `--domain`/`--fixture` plus flags; flags
/// win over the file's tables.
fn load_domain(d: &DomainArgs) -> Result<(ChannelDomain, Option<DomainFile>), Failure> {
    match (&d.domain, &d.fixture) {
        (Some(path), _) => {
            let file = DomainFile::load(path).map_err(Failure::config)?;
            let dom = file.domain().map_err(Failure::config)?;
            Ok((dom, Some(file)))
        }
        (None, Some(name)) => {
            let dom = fixtures::by_name(name).ok_or_else(|| Failure::usage(format!("unknown fixture {name:?}")))?;
            Ok((dom, None))
        }
        (None, None) => Err(Failure::usage("need --domain <file> or --fixture <name>")),
    }
}

fn solver_options(file: Option<&DomainFile>, s: &SolverArgs) -> Result<SolverOptions, Failure> {
    let mut o = SolverOptions::default();
    let mut cg_tol = None;
    let mut cg_max = None;
    if let Some(f) = file {
        if let Some(g) = &f.grid {
            o.h0 = g.h0.or(o.h0);
            o.levels = g.levels.unwrap_or(o.levels);
        }
        if let Some(c) = &f.cg {
            cg_tol = c.tol;
            cg_max = c.max_iters;
        }
        if let Some(t) = &f.truncation {
            o.box_factor = t.box_factor.unwrap_or(o.box_factor);
        }
    }
    o.h0 = s.grid_h0.or(o.h0);
    o.levels = s.levels.unwrap_or(o.levels);
    cg_tol = s.cg_tol.or(cg_tol);
    if let Some(tol) = cg_tol {
        o.solver = LinearSolver::Cg { tol, max_iters: cg_max };
    }
    if o.levels == 0 || o.h0.is_some_and(|h| !(h > 0.0)) || !(o.box_factor > 1.0) {
        return Err(Failure::config("grid.h0 must be positive, grid.levels at least 1, truncation.box_factor above 1"));
    }
    if cg_tol.is_some_and(|t| !(t > 0.0)) {
        return Err(Failure::config("cg.tol must be positive"));
    }
    Ok(o)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Gamma(d) => cmd_gamma(&d, out),
        Command::Modulus(a) => cmd_modulus(&a, out),
        Command::Quad(a) => cmd_quad(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, false, out),
        Command::Verify(a) => cmd_sweep(&a, true, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
        Command::Maps(a) => cmd_maps(&a, out),
    }
}

fn cmd_gamma(d: &DomainArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (dom, _) = load_domain(d)?;
    let g = gamma(&dom).map_err(Failure::config)?;
    if d.json {
        emit(out, json!({ "gamma": g.value, "abs_error_estimate": g.abs_error_estimate }));
    } else {
        emit(out, format!("gamma = {} ± {:.3e}", g.value, g.abs_error_estimate));
    }
    Ok(0)
}

fn print_estimate(out: &mut dyn Write, label: &str, est: &ModulusEstimate, exact: Option<f64>, json_out: bool) {
    if json_out {
        emit(out, json!({ "problem": label, "estimate": est, "exact": exact }));
        return;
    }
    emit(
        out,
        format!(
            "{label}: m = {} ± {:.3e} (order {:.3}{})",
            est.value,
            est.error_estimate,
            est.order,
            if est.fallback { ", not extrapolated" } else { "" }
        ),
    );
    for (h, v) in &est.raw {
        emit(out, format!("  h = {h:.6e}  m = {v}"));
    }
    if let Some(x) = exact {
        emit(out, format!("  exact {x}  difference {:+.3e}", est.value - x));
    }
}

fn cmd_modulus(a: &ModulusArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some((r, big_r)) = a.annulus {
        let exact = analytic::annulus_modulus(r, big_r).map_err(Failure::usage)?;
        let opts = solver_options(None, &a.solver)?;
        let (o, i) = (circle([0.0, 0.0], big_r, CIRCLE_POINTS), circle([0.0, 0.0], r, CIRCLE_POINTS));
        let est = ring_modulus(RingInput::Polylines { outer: &o, inner: &i }, &opts)?;
        print_estimate(out, &format!("annulus {r} < |z| < {big_r}"), &est, Some(exact), a.domain.json);
        return Ok(0);
    }
    if let Some(rho) = a.nonconcentric {
        if !(rho > 1.0 && rho.is_finite()) {
            return Err(Failure::usage("--nonconcentric needs ρ > 1"));
        }
        let opts = solver_options(None, &a.solver)?;
        let r = r_of_rho(rho);
        let (o, i) = (circle([0.0, 0.0], 1.0, 2 * CIRCLE_POINTS), circle([0.0, -0.5 * r], 0.5 * r, 2 * CIRCLE_POINTS));
        let est = ring_modulus(RingInput::Polylines { outer: &o, inner: &i }, &opts)?;
        let exact = rho.ln() / (2.0 * std::f64::consts::PI);
        print_estimate(out, &format!("non-concentric annulus, rho = {rho}"), &est, Some(exact), a.domain.json);
        return Ok(0);
    }
    let (dom, file) = load_domain(&a.domain)?;
    let opts = solver_options(file.as_ref(), &a.solver)?;
    let h = StretchFactor::new(a.h.unwrap_or(1.0)).map_err(Failure::usage)?;
    let est = ring_modulus(RingInput::Channel(&dom.stretch(h)), &opts)?;
    print_estimate(out, &format!("channel domain, H = {}", h.value()), &est, None, a.domain.json);
    Ok(0)
}

fn cmd_quad(a: &QuadArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let q = match (&a.rect, &a.vertices, &a.marks) {
        (Some((w, h)), _, _) => Quadrilateral::rectangle(*w, *h),
        (None, Some(v), Some(m)) if m.len() == 4 => Quadrilateral::new(v.0.clone(), [m[0], m[1], m[2], m[3]]),
        _ => return Err(Failure::usage("need --rect w,h or --vertices … --marks i,j,k,l")),
    }
    .map_err(Failure::config)?;
    let opts = solver_options(None, &a.solver)?;
    let est = if a.conjugate { conjugate_modulus(&q, &opts)? } else { quad_modulus(&q, &opts)? };
    print_estimate(out, if a.conjugate { "conjugate quadrilateral" } else { "quadrilateral" }, &est, None, a.json);
    Ok(0)
}

fn cmd_sweep(a: &SweepArgs, check: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let (dom, file) = load_domain(&a.domain)?;
    let opts = solver_options(file.as_ref(), &a.solver)?;
    let records = sweep(&dom, &a.h, &opts).map_err(|e| match e {
        verify::VerifyError::InvalidHList => Failure::usage(e),
        _ => Failure::config(e),
    })?;
    let csv = verify::sweep_csv(&records);
    let symmetric = a.domain.fixture.as_deref().is_some_and(fixtures::is_symmetric);
    let mut tol = Tolerances::for_fixture(symmetric);
    tol.ratio_floor = a.ratio_floor.unwrap_or(tol.ratio_floor);
    if a.additivity_gain.is_some() {
        tol.additivity_gain = a.additivity_gain;
    }
    let run = RunConfig {
        domain_file: a.domain.domain.clone(),
        fixture: a.domain.fixture.clone(),
        solver: opts,
        h_list: a.h.clone(),
        out: a.out.clone(),
        tolerances: tol,
    };
    if !check {
        if let Some(dir) = &a.out {
            write_file(&dir.join("sweep.csv"), &csv)?;
        }
        if a.domain.json {
            emit(out, serde_json::to_string_pretty(&records).expect("serialisable"));
        } else {
            emit(out, csv.trim_end());
        }
        return Ok(if records.iter().all(|r| r.is_ok()) { 0 } else { EXIT_SOLVER });
    }
    let report = check_theorem(&records, &tol, sweep_hash(&dom, &a.h, &opts), Some(opts)).map_err(Failure::usage)?;
    let json_text = serde_json::to_string_pretty(&json!({ "run": run, "report": report })).expect("serialisable");
    if let Some(dir) = &a.out {
        write_file(&dir.join("sweep.csv"), &csv)?;
        write_file(&dir.join("report.json"), &json_text)?;
    }
    if a.domain.json {
        emit(out, json_text);
    } else {
        emit(out, csv.trim_end());
        for v in &report.verdicts {
            emit(out, v.summary());
        }
    }
    Ok(if report.all_passed() { 0 } else { EXIT_VERIFY })
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut problems = Vec::new();
    let opts;
    if let Some((r, big_r)) = a.annulus {
        if !(r > 0.0 && big_r > r) {
            return Err(Failure::usage("--annulus needs 0 < r < R"));
        }
        opts = solver_options(None, &a.solver)?;
        let (o, i) = (circle([0.0, 0.0], big_r, CIRCLE_POINTS), circle([0.0, 0.0], r, CIRCLE_POINTS));
        problems.push((
            "annulus".to_string(),
            modsolver::ring_problem(RingInput::Polylines { outer: &o, inner: &i }, &opts, 1.0),
        ));
    } else if let Some((w, h)) = a.rect {
        opts = solver_options(None, &a.solver)?;
        let q = Quadrilateral::rectangle(w, h).map_err(Failure::usage)?;
        problems.push(("rectangle".to_string(), modsolver::quad_problem(&q, &opts)));
    } else {
        let (dom, file) = load_domain(&a.domain)?;
        opts = solver_options(file.as_ref(), &a.solver)?;
        let h = StretchFactor::new(a.h).map_err(Failure::usage)?;
        let [o, q, p] = split_problems(&dom.stretch(h), &opts)?;
        problems.extend([("omega".to_string(), o), ("Q".to_string(), q), ("P".to_string(), p)]);
    }
    let mut rows = Vec::new();
    for (name, (region, plan)) in &problems {
        let lad = oracle_ladder(region, plan, &opts)?;
        if !a.domain.json {
            for c in &lad.levels {
                emit(
                    out,
                    format!(
                        "{name}: h = {:.6e}  pde {}  network {}  gap {:.3e}",
                        c.h,
                        c.pde,
                        c.oracle,
                        c.relative_gap()
                    ),
                );
            }
            emit(
                out,
                format!(
                    "{name}: extrapolated pde {}  network {}  gap {:.3e}",
                    lad.pde.extrapolated,
                    lad.oracle.extrapolated,
                    lad.extrapolated_gap()
                ),
            );
        }
        rows.push(json!({ "problem": name, "ladder": lad, "extrapolated_gap": lad.extrapolated_gap() }));
    }
    if a.domain.json {
        emit(out, serde_json::to_string_pretty(&rows).expect("serialisable"));
    }
    Ok(0)
}

fn cmd_maps(a: &MapsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(a.rho > 1.0 && a.rho.is_finite()) || !(a.m > 0.0) || a.samples < 2 {
        return Err(Failure::usage("need ρ > 1, M > 0 and at least two samples"));
    }
    let r = r_of_rho(a.rho);
    // Boundary circles of the non-concentric annulus and their images,
    // which should be |w| = ρ and |w| = 1.
    let mut psi_csv = String::from("curve,t,x,y,u,v,abs_w\n");
    let mut radii = [(f64::INFINITY, f64::NEG_INFINITY); 2];
    for (k, (centre, radius)) in [(0.0, 1.0), (-0.5 * r, 0.5 * r)].into_iter().enumerate() {
        for s in 0..a.samples {
            let t = 2.0 * std::f64::consts::PI * (s as f64 + 0.5) / a.samples as f64;
            let z = Complex64::new(radius * t.cos(), centre + radius * t.sin());
            let w = mobius_psi(a.rho, z).map_err(Failure::usage)?;
            radii[k] = (radii[k].0.min(w.norm()), radii[k].1.max(w.norm()));
            psi_csv.push_str(&format!("{k},{t},{},{},{},{},{}\n", z.re, z.im, w.re, w.im, w.norm()));
        }
    }
    // g along the lower side of the real axis.
    let mut g_csv = String::from("xi,re_g,im_g\n");
    let n = a.samples;
    for s in 0..n {
        let xi = -4.0 + 8.0 * (s as f64 + 0.5) / n as f64;
        let g = halfplane_to_u(a.m, Complex64::new(xi, 0.0)).map_err(Failure::usage)?;
        g_csv.push_str(&format!("{xi},{},{}\n", g.re, g.im));
    }
    let g_pos = halfplane_to_u(a.m, Complex64::new(1.0, 0.0)).map_err(Failure::usage)?;
    let g_neg = halfplane_to_u(a.m, Complex64::new(-1.0, 0.0)).map_err(Failure::usage)?;
    let summary = json!({
        "rho": a.rho, "r": r,
        "image_radius_outer": [radii[0].0, radii[0].1],
        "image_radius_inner": [radii[1].0, radii[1].1],
        "M": a.m, "g_at_1": [g_pos.re, g_pos.im], "g_at_minus_1": [g_neg.re, g_neg.im],
    });
    if let Some(dir) = &a.out {
        write_file(&dir.join("psi_boundary.csv"), &psi_csv)?;
        write_file(&dir.join("g_real_axis.csv"), &g_csv)?;
        write_file(&dir.join("maps.json"), &serde_json::to_string_pretty(&summary).expect("serialisable"))?;
    }
    if a.json {
        emit(out, summary);
    } else {
        emit(out, format!("psi: rho = {}, r = {r}", a.rho));
        emit(out, format!("  |psi| on |z| = 1:        [{}, {}]", radii[0].0, radii[0].1));
        emit(out, format!("  |psi| on the inner circle: [{}, {}]", radii[1].0, radii[1].1));
        emit(out, format!("g: M = {}, g(1) = {} {:+}i, g(-1) = {} {:+}i", a.m, g_pos.re, g_pos.im, g_neg.re, g_neg.im));
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut argv = vec!["confmod"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gamma"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["sweep", "--fixture", "f1", "--H", "4,2,8"]).0, EXIT_USAGE);
    }

    #[test]
    fn marks_need_four_indices() {
        assert_eq!(run_str(&["quad", "--vertices", "0,0;1,0;1,1;0,1", "--marks", "0,1,2"]).0, EXIT_USAGE);
    }

    #[test]
    fn polygon_quad() {
        let (code, out, _) = run_str(&["quad", "--vertices", "0,0;2,0;2,1;0,1", "--marks", "0,1,2,3", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["estimate"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn missing_config_exits_3() {
        assert_eq!(run_str(&["gamma", "--domain", "/nonexistent/x.toml"]).0, EXIT_CONFIG);
    }

    #[test]
    fn gamma_of_frame() {
        let (code, out, _) = run_str(&["gamma", "--fixture", "f1", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["gamma"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maps_summary() {
        let (code, out, _) = run_str(&["maps", "--rho", "3", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let inner = v["image_radius_inner"].as_array().unwrap();
        assert!((inner[0].as_f64().unwrap() - 1.0).abs() < 1e-9);
        let outer = v["image_radius_outer"].as_array().unwrap();
        assert!((outer[1].as_f64().unwrap() - 3.0).abs() < 1e-9);
    }
}
