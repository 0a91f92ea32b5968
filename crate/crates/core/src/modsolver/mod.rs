//! Numerical conformal moduli.
//!
//! A ring domain is solved as a condenser (`u = 0` on the outer component,
//! `u = 1` on the inner one) and a quadrilateral as a mixed problem (`u = 0`
//! on `z₁z₂`, `u = 1` on `z₃z₄`, Neumann elsewhere). In both cases the
//! modulus is `1/E` for the Dirichlet energy `E`. Each problem is solved on
//! a ladder of nested grids and Richardson-extrapolated.

pub mod condenser;
pub mod grid;
pub mod linear;
pub mod plan;
pub mod region;
pub mod richardson;

pub use condenser::{solve_network, GridCondenser, NetworkSolution, NodeClass};
pub use grid::{AxisPlan, Grid, GridPlan};
pub use linear::{LinearSolver, SolveStats};
pub use region::{circle, BoundaryLabel, Region, Segment};
pub use richardson::{richardson, RichardsonFit};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{split_at_verticals_in, BoundingBox, ChannelDomain, GeometryError, Quadrilateral};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("conjugate gradients stalled: residual {residual:.3e} after {iterations} iterations")]
    Divergence { iterations: usize, residual: f64 },
    #[error("sparse factorisation failed: {0}")]
    Factorization(String),
    #[error("the two Dirichlet sets touch on the grid near ({x}, {y})")]
    ComponentsTouch { x: f64, y: f64 },
    #[error("grid graph does not connect the two Dirichlet sets")]
    Disconnected,
    #[error("a Dirichlet set has no grid links; refine the grid")]
    MissingDirichlet,
    #[error("two marked vertices coincide")]
    DegenerateArc,
    #[error("{0} unknowns exceed the cap of {1}")]
    TooManyUnknowns(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Coarsest cell size; chosen from the geometry when `None`.
    pub h0: Option<f64>,
    /// Number of grids in the ladder `h0, h0/2, …`.
    pub levels: usize,
    /// Cell growth ratio away from boundaries.
    pub growth: f64,
    pub solver: LinearSolver,
    /// Half side of the far-field box in units of the domain extent.
    pub box_factor: f64,
    /// Box doubling stops once the modulus changes by less than this.
    pub box_tol: f64,
    pub max_box_doublings: usize,
    /// Cap on nodes of the finest grid.
    pub max_unknowns: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            h0: None,
            levels: 3,
            growth: 1.2,
            solver: LinearSolver::Cholesky,
            box_factor: crate::geometry::DEFAULT_BOX_FACTOR,
            box_tol: 0.005,
            max_box_doublings: 5,
            max_unknowns: 40_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusEstimate {
    /// Best estimate (the extrapolated value).
    pub value: f64,
    /// `(h, modulus)` per grid, coarsest first.
    pub raw: Vec<(f64, f64)>,
    pub extrapolated: f64,
    pub error_estimate: f64,
    pub order: f64,
    pub fallback: bool,
    /// Solver iterations and relative residual on the finest grid.
    pub iterations: usize,
    pub residual: f64,
    pub unknowns: usize,
    /// Half side of the far-field box, for truncated problems.
    pub box_half: Option<f64>,
}

impl ModulusEstimate {
    /// `error_estimate / value`.
    pub fn relative_error(&self) -> f64 {
        self.error_estimate / self.value.abs()
    }

    /// Finest raw value.
    pub fn finest(&self) -> f64 {
        self.raw.last().map(|r| r.1).unwrap_or(self.value)
    }
}

/// Input of [`ring_modulus`].
#[derive(Debug, Clone, Copy)]
pub enum RingInput<'a> {
    /// `u = 0` on the upper piece `K₁`, `u = 1` on the lower piece `K₂`,
    /// far field cut off by a growing box.
    Channel(&'a ChannelDomain),
    /// Bounded ring between two closed polylines.
    Polylines { outer: &'a [[f64; 2]], inner: &'a [[f64; 2]] },
}

/// A problem instance for the ladder: region and grid layout at box scale `s`.
type Builder<'a> = dyn Fn(f64) -> Result<(Region, GridPlan, Option<f64>), SolverError> + 'a;

pub fn ring_modulus(input: RingInput<'_>, opts: &SolverOptions) -> Result<ModulusEstimate, SolverError> {
    let build = |s: f64| {
        let (region, plan) = ring_problem(input, opts, s);
        let half = matches!(input, RingInput::Channel(_)).then(|| 0.5 * region.bbox().width());
        Ok((region, plan, half))
    };
    run_ladder(&build, matches!(input, RingInput::Channel(_)), opts)
}

/// Region and coarsest grid layout of a ring problem, with the far-field
/// box (if any) scaled by `box_scale`.
pub fn ring_problem(input: RingInput<'_>, opts: &SolverOptions, box_scale: f64) -> (Region, GridPlan) {
    match input {
        RingInput::Channel(dom) => {
            let h = opts.h0.unwrap_or(dom.min_gap() / plan::CELLS_PER_GAP);
            let bbox = dom.truncation_box(opts.box_factor * box_scale);
            (Region::channel(dom, bbox), plan::channel_plan(dom, bbox, h, opts.growth))
        }
        RingInput::Polylines { outer, inner } => {
            let (plan, _) = plan::ring_plan(outer, inner, opts.h0, opts.growth);
            (Region::ring(outer, inner), plan)
        }
    }
}

/// Region and coarsest grid layout of a quadrilateral problem.
pub fn quad_problem(q: &Quadrilateral, opts: &SolverOptions) -> (Region, GridPlan) {
    (Region::quadrilateral(q), plan::quad_plan(q, opts.h0, opts.growth))
}

/// Regions and layouts of `Ω`, `Q` and `P` as used by [`split_moduli`],
/// before any box growth.
pub fn split_problems(dom: &ChannelDomain, opts: &SolverOptions) -> Result<[(Region, GridPlan); 3], SolverError> {
    let (q, p) = split_pieces(dom, opts.box_factor)?;
    let h = opts.h0.unwrap_or(dom.min_gap() / plan::CELLS_PER_GAP);
    let piece = |q: &Quadrilateral| {
        let frame = q.truncation().unwrap_or_else(|| BoundingBox::of_points(q.vertices()));
        (Region::quadrilateral(q), plan::channel_plan(dom, frame, h, opts.growth))
    };
    Ok([ring_problem(RingInput::Channel(dom), opts, 1.0), piece(&q), piece(&p)])
}

pub fn quad_modulus(q: &Quadrilateral, opts: &SolverOptions) -> Result<ModulusEstimate, SolverError> {
    quad_modulus_with(q, opts, |q| plan::quad_plan(q, opts.h0, opts.growth))
}

/// Like [`quad_modulus`] with a caller-supplied grid layout.
///
/// For an exterior quadrilateral the truncation box is doubled (with the
/// layout rebuilt for each box) until the modulus settles.
pub fn quad_modulus_with(
    q: &Quadrilateral,
    opts: &SolverOptions,
    layout: impl Fn(&Quadrilateral) -> GridPlan,
) -> Result<ModulusEstimate, SolverError> {
    let pts = q.marked_points();
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(SolverError::DegenerateArc);
            }
        }
    }
    let build = |s: f64| {
        let q = match q.truncation() {
            Some(bb) if s != 1.0 => Quadrilateral::exterior(q.vertices().to_vec(), q.marked(), grow_box(bb, s))?,
            _ => q.clone(),
        };
        let half = q.truncation().map(|bb| 0.5 * bb.width());
        Ok((Region::quadrilateral(&q), layout(&q), half))
    };
    run_ladder(&build, q.is_exterior(), opts)
}

/// Modulus of the conjugate quadrilateral (marked vertices shifted by one).
pub fn conjugate_modulus(q: &Quadrilateral, opts: &SolverOptions) -> Result<ModulusEstimate, SolverError> {
    quad_modulus(&q.conjugate(), opts)
}

/// Moduli of a channel domain and of its split pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitModuli {
    pub omega: ModulusEstimate,
    pub q: ModulusEstimate,
    pub p: ModulusEstimate,
}

/// `m(Ω)`, `m(Q)` and `m(P)` for a channel domain split at `x = c` and
/// `x = d`, all on grids laid out for the channel.
pub fn split_moduli(dom: &ChannelDomain, opts: &SolverOptions) -> Result<SplitModuli, SolverError> {
    let omega = ring_modulus(RingInput::Channel(dom), opts)?;
    let (q, p) = split_pieces(dom, opts.box_factor)?;
    let h = opts.h0.unwrap_or(dom.min_gap() / plan::CELLS_PER_GAP);
    let frame = |q: &Quadrilateral| q.truncation().unwrap_or_else(|| BoundingBox::of_points(q.vertices()));
    // The pieces are meshed like the whole channel so the three moduli see
    // the same resolution.
    let layout = |q: &Quadrilateral| plan::channel_plan(dom, frame(q), h, opts.growth);
    let mq = quad_modulus_with(&q, opts, layout)?;
    let mp = quad_modulus_with(&p, opts, layout)?;
    Ok(SplitModuli { omega, q: mq, p: mp })
}

/// The channel piece `Q` and the truncated outer piece `P`.
pub fn split_pieces(dom: &ChannelDomain, box_factor: f64) -> Result<(Quadrilateral, Quadrilateral), SolverError> {
    Ok(split_at_verticals_in(dom, dom.truncation_box(box_factor))?)
}

fn grow_box(bb: BoundingBox, s: f64) -> BoundingBox {
    let c = bb.center();
    let (hw, hh) = (0.5 * bb.width() * s, 0.5 * bb.height() * s);
    BoundingBox { x0: c[0] - hw, x1: c[0] + hw, y0: c[1] - hh, y1: c[1] + hh }
}

fn check_size(grid: &Grid, levels: usize, opts: &SolverOptions) -> Result<(), SolverError> {
    let finest = grid.len().saturating_mul(1usize << (2 * levels.saturating_sub(1)));
    if finest > opts.max_unknowns {
        return Err(SolverError::TooManyUnknowns(finest, opts.max_unknowns));
    }
    Ok(())
}

fn solve_once(region: &Region, grid: Grid, opts: &SolverOptions) -> Result<(f64, NetworkSolution), SolverError> {
    let gc = GridCondenser::assemble(region, grid)?;
    let sol = gc.solve(opts.solver)?;
    if !(sol.energy > 0.0) {
        return Err(SolverError::Disconnected);
    }
    Ok((1.0 / sol.energy, sol))
}

fn run_ladder(build: &Builder<'_>, truncated: bool, opts: &SolverOptions) -> Result<ModulusEstimate, SolverError> {
    let levels = opts.levels.max(1);
    let (mut region, mut plan, mut half) = build(1.0)?;
    let mut grid = plan.build();
    check_size(&grid, levels, opts)?;
    let (mut m0, mut sol) = solve_once(&region, grid.clone(), opts)?;
    if truncated {
        let mut s = 1.0;
        for _ in 0..opts.max_box_doublings {
            s *= 2.0;
            let (r, p, hb) = build(s)?;
            let g = p.build();
            check_size(&g, levels, opts)?;
            let (m, so) = solve_once(&r, g.clone(), opts)?;
            let change = (m - m0).abs() / m.abs();
            (region, plan, half, grid, m0, sol) = (r, p, hb, g, m, so);
            if change < opts.box_tol {
                break;
            }
        }
    }
    let mut raw = vec![(plan.h, m0)];
    for k in 1..levels {
        let (m, so) = solve_once(&region, grid.refined(k as u32), opts)?;
        raw.push((plan.h / (1u64 << k) as f64, m));
        sol = so;
    }
    let fit = richardson(&raw);
    Ok(ModulusEstimate {
        value: fit.extrapolated,
        raw,
        extrapolated: fit.extrapolated,
        error_estimate: fit.error_estimate,
        order: fit.order,
        fallback: fit.fallback,
        iterations: sol.stats.iterations,
        residual: sol.stats.residual,
        unknowns: sol.unknowns,
        box_half: half,
    })
}

/// Modulus from the unit-conductance staircase network of `gc`: the
/// reciprocal of its effective conductance between the two Dirichlet sets.
pub fn resistor_network_modulus(gc: &GridCondenser) -> Result<f64, SolverError> {
    let sol = gc.network_conductance(LinearSolver::Cholesky)?;
    Ok(1.0 / sol.energy)
}

/// PDE and resistor-network moduli on one and the same grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleComparison {
    pub h: f64,
    pub pde: f64,
    pub oracle: f64,
}

impl OracleComparison {
    pub fn relative_gap(&self) -> f64 {
        (self.pde - self.oracle).abs() / self.pde.abs()
    }
}

/// Both discretisations on a ladder of grids, each extrapolated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleLadder {
    pub levels: Vec<OracleComparison>,
    pub pde: RichardsonFit,
    pub oracle: RichardsonFit,
}

impl OracleLadder {
    /// Relative gap between the two extrapolated values.
    pub fn extrapolated_gap(&self) -> f64 {
        (self.pde.extrapolated - self.oracle.extrapolated).abs() / self.pde.extrapolated.abs()
    }

    /// Relative gap on the finest grid.
    pub fn finest_gap(&self) -> f64 {
        self.levels.last().map(|c| c.relative_gap()).unwrap_or(f64::NAN)
    }
}

pub fn oracle_ladder(region: &Region, plan: &GridPlan, opts: &SolverOptions) -> Result<OracleLadder, SolverError> {
    let levels = (0..opts.levels.max(1) as u32)
        .map(|k| oracle_comparison(region, plan, k, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let pde = richardson(&levels.iter().map(|c| (c.h, c.pde)).collect::<Vec<_>>());
    let oracle = richardson(&levels.iter().map(|c| (c.h, c.oracle)).collect::<Vec<_>>());
    Ok(OracleLadder { levels, pde, oracle })
}

/// Discretise `region` on the grid of `plan` refined `level` times and
/// solve both discretisations.
pub fn oracle_comparison(
    region: &Region,
    plan: &GridPlan,
    level: u32,
    opts: &SolverOptions,
) -> Result<OracleComparison, SolverError> {
    let grid = plan.build().refined(level);
    let gc = GridCondenser::assemble(region, grid)?;
    let pde = 1.0 / gc.solve(opts.solver)?.energy;
    let oracle = resistor_network_modulus(&gc)?;
    Ok(OracleComparison { h: plan.h / (1u64 << level) as f64, pde, oracle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::annulus_modulus;

    #[test]
    fn annulus_anchor() {
        let (outer, inner) = (circle([0.0, 0.0], 2.0, 2048), circle([0.0, 0.0], 1.0, 2048));
        let est =
            ring_modulus(RingInput::Polylines { outer: &outer, inner: &inner }, &SolverOptions::default()).unwrap();
        let exact = annulus_modulus(1.0, 2.0).unwrap();
        assert!((est.value - exact).abs() < 1e-3, "{est:?}");
        assert!((est.value - exact).abs() < (est.finest() - exact).abs(), "{est:?}");
    }

    #[test]
    fn rectangle_and_conjugate() {
        let q = Quadrilateral::rectangle(1.0, 0.5).unwrap();
        let opts = SolverOptions::default();
        assert!((quad_modulus(&q, &opts).unwrap().value - 0.5).abs() < 1e-3);
        assert!((conjugate_modulus(&q, &opts).unwrap().value - 2.0).abs() < 4e-3);
    }

    #[test]
    fn unknown_cap_is_enforced() {
        let q = Quadrilateral::rectangle(1.0, 1.0).unwrap();
        let opts = SolverOptions { max_unknowns: 1000, ..Default::default() };
        assert!(matches!(quad_modulus(&q, &opts), Err(SolverError::TooManyUnknowns(..))));
    }
}
