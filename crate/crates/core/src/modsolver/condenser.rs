//! Discrete condensers: node classification, cut-cell couplings, and the
//! staircase resistor network built on the same nodes.

use serde::Serialize;

use super::grid::Grid;
use super::linear::{solve_spd, LinearSolver, SolveStats, SymCsr};
use super::region::{BoundaryLabel, Region, Segment};
use super::SolverError;

/// Smallest boundary distance fraction used in a cut link.
const THETA_MIN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeClass {
    Interior,
    /// Outside node reached from the region across a `u = 0` boundary.
    Dirichlet0,
    /// Outside node reached across a `u = 1` boundary.
    Dirichlet1,
    /// Outside node reached only across Neumann boundary.
    Neumann,
    Exterior,
}

impl NodeClass {
    fn dirichlet_value(self) -> Option<f64> {
        match self {
            NodeClass::Dirichlet0 => Some(0.0),
            NodeClass::Dirichlet1 => Some(1.0),
            _ => None,
        }
    }

    fn from_label(l: BoundaryLabel) -> Self {
        match l {
            BoundaryLabel::Dirichlet0 => NodeClass::Dirichlet0,
            BoundaryLabel::Dirichlet1 => NodeClass::Dirichlet1,
            BoundaryLabel::Neumann => NodeClass::Neumann,
        }
    }
}

/// Discretised condenser on a tensor grid.
///
/// Interior couplings carry finite-volume conductances `aperture/Δ`, where
/// the aperture is the part of the shared face not blocked by a Neumann
/// wall. A node next to a Dirichlet boundary at fractional distance `θ` gets
/// a Shortley–Weller link `aperture/(θΔ)` to the boundary value.
///
/// The same nodes also carry a staircase resistor network: neighbours are
/// joined unless a wall separates them, and each Dirichlet wall is moved to
/// the nearer of the two nodes on either side of it.
#[derive(Debug, Clone)]
pub struct GridCondenser {
    grid: Grid,
    class: Vec<NodeClass>,
    links: Vec<(u32, u32, f64)>,
    dirichlet: Vec<(u32, f64, f64)>,
    network: Vec<NodeClass>,
    staircase: Vec<(u32, u32)>,
    /// Network edges to boundary values beyond the grid frame.
    frame: Vec<(u32, f64, f64)>,
    /// A node of the network touched by both Dirichlet sets.
    conflict: Option<[f64; 2]>,
}

/// Energy of a solved network and solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkSolution {
    pub energy: f64,
    pub unknowns: usize,
    pub stats: SolveStats,
}

/// Sorted crossings of the grid lines through cell centres.
struct LineCrossings {
    offsets: Vec<usize>,
    items: Vec<(f64, u32)>,
}

impl LineCrossings {
    fn line(&self, k: usize) -> &[(f64, u32)] {
        &self.items[self.offsets[k]..self.offsets[k + 1]]
    }

    /// `along_rows`: horizontal lines `y = yc[j]`; otherwise vertical lines `x = xc[i]`.
    fn build(segs: &[Segment], grid: &Grid, along_rows: bool) -> Self {
        let lines = if along_rows { grid.yc() } else { grid.xc() };
        let mut raw: Vec<(u32, f64, u32)> = Vec::new();
        for (s, seg) in segs.iter().enumerate() {
            let (a, b) = if along_rows { (seg.p[1], seg.q[1]) } else { (seg.p[0], seg.q[0]) };
            let (lo, hi) = (a.min(b), a.max(b));
            let k0 = lines.partition_point(|&v| v < lo);
            let k1 = lines.partition_point(|&v| v <= hi);
            for (k, &v) in lines.iter().enumerate().take(k1).skip(k0) {
                let hit = if along_rows { seg.cross_row(v) } else { seg.cross_col(v) };
                if let Some(t) = hit {
                    raw.push((k as u32, t, s as u32));
                }
            }
        }
        raw.sort_by(|p, q| p.0.cmp(&q.0).then(p.1.total_cmp(&q.1)).then(p.2.cmp(&q.2)));
        let mut offsets = vec![0usize; lines.len() + 1];
        for r in &raw {
            offsets[r.0 as usize + 1] += 1;
        }
        for k in 0..lines.len() {
            offsets[k + 1] += offsets[k];
        }
        Self { offsets, items: raw.into_iter().map(|r| (r.1, r.2)).collect() }
    }
}

/// Segments listed per grid cell they may touch (bounding-box cover).
struct CellBuckets {
    offsets: Vec<usize>,
    items: Vec<u32>,
}

impl CellBuckets {
    fn build(segs: &[Segment], grid: &Grid) -> Self {
        let mut raw: Vec<(usize, u32)> = Vec::new();
        for (s, seg) in segs.iter().enumerate() {
            let (i0, i1) = (grid.col_of(seg.p[0].min(seg.q[0])), grid.col_of(seg.p[0].max(seg.q[0])));
            let (j0, j1) = (grid.row_of(seg.p[1].min(seg.q[1])), grid.row_of(seg.p[1].max(seg.q[1])));
            for j in j0..=j1 {
                for i in i0..=i1 {
                    raw.push((grid.id(i, j), s as u32));
                }
            }
        }
        raw.sort_unstable();
        let mut offsets = vec![0usize; grid.len() + 1];
        for r in &raw {
            offsets[r.0 + 1] += 1;
        }
        for k in 0..grid.len() {
            offsets[k + 1] += offsets[k];
        }
        Self { offsets, items: raw.into_iter().map(|r| r.1).collect() }
    }

    fn cell(&self, id: usize) -> &[u32] {
        &self.items[self.offsets[id]..self.offsets[id + 1]]
    }
}

/// Open extent of a face line on either side of a node: a Neumann wall
/// truncates it, a Dirichlet wall does not.
fn half_extents(hits: impl Iterator<Item = (f64, BoundaryLabel)>, centre: f64, lo: f64, hi: f64) -> f64 {
    let (mut up, mut up_label) = (f64::INFINITY, BoundaryLabel::Dirichlet0);
    let (mut dn, mut dn_label) = (f64::NEG_INFINITY, BoundaryLabel::Dirichlet0);
    for (t, label) in hits {
        if t > centre && t <= hi && t < up {
            up = t;
            up_label = label;
        } else if t < centre && t >= lo && t > dn {
            dn = t;
            dn_label = label;
        }
    }
    let above = if up.is_finite() && up_label == BoundaryLabel::Neumann { up - centre } else { hi - centre };
    let below = if dn.is_finite() && dn_label == BoundaryLabel::Neumann { centre - dn } else { centre - lo };
    above + below
}

/// Couplings produced while scanning one grid line.
#[derive(Default)]
struct Scan {
    links: Vec<(u32, u32, f64)>,
    dirichlet: Vec<(u32, f64, f64)>,
    staircase: Vec<(u32, u32)>,
    frame: Vec<(u32, f64, f64)>,
    /// Outside nodes reached across a boundary, with the label crossed.
    reached: Vec<(u32, BoundaryLabel)>,
    /// Inside nodes closer to a Dirichlet wall than to their neighbour.
    snapped: Vec<(u32, BoundaryLabel)>,
}

impl GridCondenser {
    /// Discretise `region` on `grid`.
    pub fn assemble(region: &Region, grid: Grid) -> Result<Self, SolverError> {
        let segs = region.segments();
        let (nx, ny) = (grid.nx(), grid.ny());
        let rows = LineCrossings::build(segs, &grid, true);
        let cols = LineCrossings::build(segs, &grid, false);
        let buckets = CellBuckets::build(segs, &grid);

        let mut inside = vec![false; grid.len()];
        for j in 0..ny {
            let cr = rows.line(j);
            let mut k = 0;
            for i in 0..nx {
                while k < cr.len() && cr[k].0 < grid.xc()[i] {
                    k += 1;
                }
                inside[grid.id(i, j)] = k % 2 == 1;
            }
        }

        for j in 0..ny {
            check_touch(rows.line(j), segs, grid.xc(), |t| [t, grid.yc()[j]])?;
        }
        for i in 0..nx {
            check_touch(cols.line(i), segs, grid.yc(), |t| [grid.xc()[i], t])?;
        }

        let mut scan = Scan::default();
        let (xf, yf, xc, yc) = (grid.xf(), grid.yf(), grid.xc(), grid.yc());
        for j in 0..ny {
            let walk = |x: f64| {
                let cell = grid.id(grid.col_of(x), j);
                let hits = buckets.cell(cell).iter().filter_map(|&s| {
                    let seg = &segs[s as usize];
                    seg.cross_col(x).map(|y| (y, seg.label))
                });
                half_extents(hits, yc[j], yf[j], yf[j + 1])
            };
            scan_line(&mut scan, xc, xf, rows.line(j), segs, |i| inside[grid.id(i, j)], |i| grid.id(i, j), walk);
        }
        for i in 0..nx {
            let walk = |y: f64| {
                let cell = grid.id(i, grid.row_of(y));
                let hits = buckets.cell(cell).iter().filter_map(|&s| {
                    let seg = &segs[s as usize];
                    seg.cross_row(y).map(|x| (x, seg.label))
                });
                half_extents(hits, xc[i], xf[i], xf[i + 1])
            };
            scan_line(&mut scan, yc, yf, cols.line(i), segs, |j| inside[grid.id(i, j)], |j| grid.id(i, j), walk);
        }

        let mut conflict = None;
        let at = |node: u32| [xc[node as usize % nx], yc[node as usize / nx]];
        let mut class: Vec<NodeClass> =
            inside.iter().map(|&b| if b { NodeClass::Interior } else { NodeClass::Exterior }).collect();
        for &(node, label) in &scan.reached {
            let c = &mut class[node as usize];
            match (*c, NodeClass::from_label(label)) {
                (NodeClass::Exterior, n) | (NodeClass::Neumann, n) => *c = n,
                (_, NodeClass::Neumann) => {}
                (old, n) if old != n => conflict = Some(at(node)),
                _ => {}
            }
        }
        let mut network = class.clone();
        for &(node, label) in &scan.snapped {
            let c = &mut network[node as usize];
            match (*c, NodeClass::from_label(label)) {
                (NodeClass::Interior, n) => *c = n,
                (old, n) if old != n => conflict = Some(at(node)),
                _ => {}
            }
        }
        scan.staircase.sort_unstable();
        scan.staircase.dedup();

        Ok(Self {
            grid,
            class,
            links: scan.links,
            dirichlet: scan.dirichlet,
            network,
            staircase: scan.staircase,
            frame: scan.frame,
            conflict,
        })
    }

    /// Condenser given directly by node labels: edges join grid neighbours
    /// that are interior or Dirichlet, except Dirichlet–Dirichlet pairs.
    /// Only the resistor network of such a condenser is meaningful.
    pub fn from_labels(grid: Grid, class: Vec<NodeClass>) -> Result<Self, SolverError> {
        assert_eq!(class.len(), grid.len());
        let (nx, ny) = (grid.nx(), grid.ny());
        let live = |c: NodeClass| c == NodeClass::Interior || c.dirichlet_value().is_some();
        let mut staircase = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                let a = grid.id(i, j);
                let mut nbrs = Vec::with_capacity(2);
                if i + 1 < nx {
                    nbrs.push(grid.id(i + 1, j));
                }
                if j + 1 < ny {
                    nbrs.push(grid.id(i, j + 1));
                }
                for b in nbrs {
                    let (ca, cb) = (class[a], class[b]);
                    if !live(ca) || !live(cb) {
                        continue;
                    }
                    match (ca.dirichlet_value(), cb.dirichlet_value()) {
                        (Some(u), Some(v)) if u != v => {
                            return Err(SolverError::ComponentsTouch { x: grid.xc()[i], y: grid.yc()[j] })
                        }
                        (Some(_), Some(_)) => {}
                        _ => staircase.push((a as u32, b as u32)),
                    }
                }
            }
        }
        let network = class.clone();
        let (links, dirichlet, frame) = (Vec::new(), Vec::new(), Vec::new());
        Ok(Self { grid, class, links, dirichlet, network, staircase, frame, conflict: None })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn classes(&self) -> &[NodeClass] {
        &self.class
    }

    /// Node labels of the resistor network.
    pub fn network_classes(&self) -> &[NodeClass] {
        &self.network
    }

    pub fn interior_count(&self) -> usize {
        self.class.iter().filter(|&&c| c == NodeClass::Interior).count()
    }

    pub fn has_both_dirichlet_links(&self) -> bool {
        self.dirichlet.iter().any(|d| d.2 == 0.0) && self.dirichlet.iter().any(|d| d.2 == 1.0)
    }

    /// Cut-cell solve; returns the discrete Dirichlet energy.
    pub fn solve(&self, solver: LinearSolver) -> Result<NetworkSolution, SolverError> {
        if !self.has_both_dirichlet_links() {
            return Err(SolverError::MissingDirichlet);
        }
        solve_network(self.grid.len(), &self.links, &self.dirichlet, solver)
    }

    /// Effective conductance of the staircase network whose edge `(a, b)`
    /// has conductance `face/Δ` (1 on unit grids).
    pub fn network_conductance(&self, solver: LinearSolver) -> Result<NetworkSolution, SolverError> {
        if let Some([x, y]) = self.conflict {
            return Err(SolverError::ComponentsTouch { x, y });
        }
        let g = &self.grid;
        let nx = g.nx();
        let mut links = Vec::new();
        let mut dirichlet = Vec::new();
        let mut attach = |a: u32, c: f64, v: f64| -> Result<(), SolverError> {
            match self.network[a as usize].dirichlet_value() {
                None => dirichlet.push((a, c, v)),
                Some(u) if u != v => {
                    return Err(SolverError::ComponentsTouch { x: g.xc()[a as usize % nx], y: g.yc()[a as usize / nx] })
                }
                Some(_) => {}
            }
            Ok(())
        };
        for &(a, b) in &self.staircase {
            let (lo, hi) = (a.min(b) as usize, a.max(b) as usize);
            let (i, j) = (lo % nx, lo / nx);
            let c = if hi == lo + 1 {
                (g.yf()[j + 1] - g.yf()[j]) / (g.xc()[i + 1] - g.xc()[i])
            } else {
                (g.xf()[i + 1] - g.xf()[i]) / (g.yc()[j + 1] - g.yc()[j])
            };
            match (self.network[a as usize].dirichlet_value(), self.network[b as usize].dirichlet_value()) {
                (None, None) => links.push((a, b, c)),
                (None, Some(v)) => attach(a, c, v)?,
                (Some(v), _) => attach(b, c, v)?,
            }
        }
        for &(a, c, v) in &self.frame {
            attach(a, c, v)?;
        }
        let has = |v: f64| dirichlet.iter().any(|d: &(u32, f64, f64)| d.2 == v);
        if !(has(0.0) && has(1.0)) {
            return Err(SolverError::Disconnected);
        }
        let sol = solve_network(g.len(), &links, &dirichlet, solver)?;
        if !(sol.energy > 0.0) {
            return Err(SolverError::Disconnected);
        }
        Ok(sol)
    }
}

/// Links along one grid line. `c`/`f` are centre and face coordinates along
/// the line; `walk(t)` gives the open aperture of a face line at `t`.
#[allow(clippy::too_many_arguments)]
fn scan_line(
    scan: &mut Scan,
    c: &[f64],
    f: &[f64],
    cr: &[(f64, u32)],
    segs: &[Segment],
    inside: impl Fn(usize) -> bool,
    node: impl Fn(usize) -> usize,
    walk: impl Fn(f64) -> f64,
) {
    let n = c.len();
    // Boundary crossings beyond the outermost centres, for walls on the frame.
    if n > 0 && inside(0) {
        let before = cr.partition_point(|x| x.0 < c[0]);
        if before > 0 {
            let (t, s) = cr[before - 1];
            let delta = 2.0 * (c[0] - f[0]);
            let label = segs[s as usize].label;
            cut_link(scan, node(0) as u32, c[0] - t, delta, label, |d| walk((c[0] - 0.5 * d).max(f[0])));
            snap(scan, node(0) as u32, None, c[0] - t, delta, label, walk(f[0]) / delta);
        }
    }
    if n > 0 && inside(n - 1) {
        let after = cr.partition_point(|x| x.0 < c[n - 1]);
        if let Some(&(t, s)) = cr.get(after) {
            let delta = 2.0 * (f[n] - c[n - 1]);
            let label = segs[s as usize].label;
            let walk_end = |d: f64| walk((c[n - 1] + 0.5 * d).min(f[n]));
            cut_link(scan, node(n - 1) as u32, t - c[n - 1], delta, label, walk_end);
            snap(scan, node(n - 1) as u32, None, t - c[n - 1], delta, label, walk(f[n]) / delta);
        }
    }
    let mut k = 0;
    for a in 0..n.saturating_sub(1) {
        while k < cr.len() && cr[k].0 < c[a] {
            k += 1;
        }
        let mut e = k;
        while e < cr.len() && cr[e].0 < c[a + 1] {
            e += 1;
        }
        let between = &cr[k..e];
        let (ia, ib) = (inside(a), inside(a + 1));
        let (na, nb) = (node(a) as u32, node(a + 1) as u32);
        let delta = c[a + 1] - c[a];
        if ia && ib && between.is_empty() {
            let cond = walk(f[a + 1]) / delta;
            if cond > 0.0 {
                scan.links.push((na, nb, cond));
            }
            scan.staircase.push((na, nb));
            continue;
        }
        if ia {
            if let Some(&(t, s)) = between.first() {
                let label = segs[s as usize].label;
                cut_link(scan, na, t - c[a], delta, label, |d| walk((c[a] + 0.5 * d).min(f[a + 1])));
                let out = (!ib).then_some(nb);
                if let Some(o) = out {
                    scan.reached.push((o, label));
                }
                snap(scan, na, out, t - c[a], delta, label, 0.0);
            }
        }
        if ib {
            if let Some(&(t, s)) = between.last() {
                let label = segs[s as usize].label;
                cut_link(scan, nb, c[a + 1] - t, delta, label, |d| walk((c[a + 1] - 0.5 * d).max(f[a + 1])));
                let out = (!ia).then_some(na);
                if let Some(o) = out {
                    scan.reached.push((o, label));
                }
                snap(scan, nb, out, c[a + 1] - t, delta, label, 0.0);
            }
        }
    }
}

/// Network side of a Dirichlet crossing at distance `dist` from inside node
/// `node`: the wall moves onto whichever node is nearer. Across the grid
/// frame there is no outside node and the edge `frame_cond` leads straight
/// to the boundary value.
fn snap(scan: &mut Scan, node: u32, out: Option<u32>, dist: f64, delta: f64, label: BoundaryLabel, frame_cond: f64) {
    let Some(value) = label.value() else { return };
    if dist < 0.5 * delta {
        scan.snapped.push((node, label));
    } else if let Some(o) = out {
        scan.staircase.push((node, o));
    } else if frame_cond > 0.0 {
        scan.frame.push((node, frame_cond, value));
    }
}

fn cut_link(scan: &mut Scan, node: u32, dist: f64, delta: f64, label: BoundaryLabel, walk: impl Fn(f64) -> f64) {
    if let Some(value) = label.value() {
        let d = dist.max(THETA_MIN * delta);
        let cond = walk(d) / d;
        if cond > 0.0 {
            scan.dirichlet.push((node, cond, value));
        }
    }
}

/// Fails when an inside stretch of a grid line runs straight from a `u = 0`
/// boundary to a `u = 1` boundary without containing a node.
fn check_touch(
    cr: &[(f64, u32)],
    segs: &[Segment],
    centres: &[f64],
    at: impl Fn(f64) -> [f64; 2],
) -> Result<(), SolverError> {
    for (m, w) in cr.windows(2).enumerate() {
        if m % 2 != 0 {
            continue;
        }
        let (l0, l1) = (segs[w[0].1 as usize].label, segs[w[1].1 as usize].label);
        let pair = l0.is_dirichlet() && l1.is_dirichlet() && l0 != l1;
        if pair && centres.partition_point(|&v| v < w[1].0) == centres.partition_point(|&v| v < w[0].0) {
            let [x, y] = at(0.5 * (w[0].0 + w[1].0));
            return Err(SolverError::ComponentsTouch { x, y });
        }
    }
    Ok(())
}

/// Solve the weighted graph Laplacian with Dirichlet links and return the
/// quadratic-form energy. Components without a Dirichlet link are dropped.
pub fn solve_network(
    nodes: usize,
    links: &[(u32, u32, f64)],
    dirichlet: &[(u32, f64, f64)],
    solver: LinearSolver,
) -> Result<NetworkSolution, SolverError> {
    let mut parent: Vec<u32> = (0..nodes as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for &(a, b, _) in links {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
    let mut anchored = vec![false; nodes];
    for &(a, _, _) in dirichlet {
        let r = find(&mut parent, a);
        anchored[r as usize] = true;
    }
    let mut used = vec![false; nodes];
    for &(a, b, _) in links {
        used[a as usize] = true;
        used[b as usize] = true;
    }
    for &(a, _, _) in dirichlet {
        used[a as usize] = true;
    }
    let mut index = vec![u32::MAX; nodes];
    let mut n = 0u32;
    for v in 0..nodes {
        if used[v] && anchored[find(&mut parent, v as u32) as usize] {
            index[v] = n;
            n += 1;
        }
    }
    let n = n as usize;
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut off = Vec::with_capacity(links.len());
    for &(a, b, c) in links {
        let (ia, ib) = (index[a as usize], index[b as usize]);
        if ia == u32::MAX {
            continue;
        }
        diag[ia as usize] += c;
        diag[ib as usize] += c;
        off.push((ia, ib, -c));
    }
    for &(a, c, v) in dirichlet {
        let ia = index[a as usize] as usize;
        diag[ia] += c;
        rhs[ia] += c * v;
    }
    if n == 0 {
        return Ok(NetworkSolution { energy: 0.0, unknowns: 0, stats: SolveStats::default() });
    }
    let a = SymCsr::from_couplings(&diag, &off);
    let (u, stats) = solve_spd(&a, &rhs, solver)?;
    let mut energy = 0.0;
    for &(p, q, c) in links {
        let (ip, iq) = (index[p as usize], index[q as usize]);
        if ip != u32::MAX {
            let d = u[ip as usize] - u[iq as usize];
            energy += c * d * d;
        }
    }
    for &(p, c, v) in dirichlet {
        let d = u[index[p as usize] as usize] - v;
        energy += c * d * d;
    }
    Ok(NetworkSolution { energy, unknowns: n, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Quadrilateral;
    use crate::modsolver::grid::{AxisPlan, GridPlan};

    fn solve_quad(q: &Quadrilateral, h: f64) -> f64 {
        let bb = crate::geometry::BoundingBox::of_points(q.vertices());
        let plan = GridPlan { x: AxisPlan::uniform(bb.x0, bb.x1), y: AxisPlan::uniform(bb.y0, bb.y1), h, growth: 1.2 };
        let gc = GridCondenser::assemble(&Region::quadrilateral(q), plan.build()).unwrap();
        1.0 / gc.solve(LinearSolver::Cholesky).unwrap().energy
    }

    #[test]
    fn rectangle_is_exact_on_aligned_grid() {
        let q = Quadrilateral::rectangle(1.0, 0.5).unwrap();
        assert!((solve_quad(&q, 0.1) - 0.5).abs() < 1e-12);
        assert!((solve_quad(&q.conjugate(), 0.1) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ladder_network_is_series() {
        // D0, 5 interior nodes, D1 in a row: six unit resistors in series.
        let mut class = vec![NodeClass::Interior; 7];
        class[0] = NodeClass::Dirichlet0;
        class[6] = NodeClass::Dirichlet1;
        let gc = GridCondenser::from_labels(Grid::unit(7, 1), class).unwrap();
        let g = gc.network_conductance(LinearSolver::Cholesky).unwrap().energy;
        assert!((1.0 / g - 6.0).abs() < 1e-12);
    }

    #[test]
    fn adjacent_opposite_labels_touch() {
        let class = vec![NodeClass::Dirichlet0, NodeClass::Dirichlet1, NodeClass::Interior];
        assert!(matches!(
            GridCondenser::from_labels(Grid::unit(3, 1), class),
            Err(SolverError::ComponentsTouch { .. })
        ));
    }

    #[test]
    fn isolated_interior_without_dirichlet_is_dropped() {
        let links = [(0, 1, 1.0), (2, 3, 1.0)];
        let dirichlet = [(0, 1.0, 0.0), (1, 1.0, 1.0)];
        let s = solve_network(4, &links, &dirichlet, LinearSolver::Cholesky).unwrap();
        assert_eq!(s.unknowns, 2);
        assert!((s.energy - 1.0 / 3.0).abs() < 1e-14);
    }
}
