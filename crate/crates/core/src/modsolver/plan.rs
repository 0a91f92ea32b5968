//! Grid layouts for the problem families the solver handles.

use crate::geometry::{BoundingBox, ChannelDomain, Quadrilateral};

use super::grid::{AxisPlan, GridPlan};

/// Cells across the narrowest gap on the coarsest grid.
pub const CELLS_PER_GAP: f64 = 16.0;
/// Cells across the short side of a bounded quadrilateral.
pub const CELLS_PER_SIDE: f64 = 32.0;
/// Quadrilaterals with more vertices than this get no per-vertex anchors.
const MAX_ANCHORS: usize = 16;

/// Layout for a stretched channel domain or one of its split pieces, on the
/// rectangle `frame` (the truncation box, or the bounding box of a bounded
/// piece).
///
/// The vertical band holding both pieces is meshed uniformly. Horizontally
/// the cells are small at the channel mouths and the piece ends and may grow
/// to a cap along the channel, so long stretched channels stay cheap.
pub fn channel_plan(dom: &ChannelDomain, frame: BoundingBox, h: f64, growth: f64) -> GridPlan {
    let bb = dom.bounding_box();
    let gap = dom.min_gap();
    let (a, b, c, d) = (dom.a(), dom.b(), dom.c(), dom.d());
    let x = AxisPlan {
        lo: frame.x0,
        hi: frame.x1,
        fine_zones: clip(vec![[c - gap, c + gap], [d - gap, d + gap]], frame.x0, frame.x1),
        anchors: vec![a, b, c, d],
        cap: Some([a, b, (4.0 * h).max((b - a) / 64.0)]),
    };
    let y = AxisPlan {
        lo: frame.y0,
        hi: frame.y1,
        fine_zones: clip(vec![[bb.y0, bb.y1]], frame.y0, frame.y1),
        anchors: Vec::new(),
        cap: None,
    };
    GridPlan { x, y, h, growth }
}

/// Layout for a quadrilateral known only through its polygon.
pub fn quad_plan(q: &Quadrilateral, h: Option<f64>, growth: f64) -> GridPlan {
    let bb = BoundingBox::of_points(q.vertices());
    let (w, ht) = (bb.width(), bb.height());
    let h = h.unwrap_or(w.min(ht) / CELLS_PER_SIDE);
    let frame = q.truncation().unwrap_or(bb);
    let (ax, ay): (Vec<f64>, Vec<f64>) = if q.vertices().len() <= MAX_ANCHORS {
        q.vertices().iter().map(|p| (p[0], p[1])).unzip()
    } else {
        (vec![bb.x0, bb.x1], vec![bb.y0, bb.y1])
    };
    let axis = |lo: f64, hi: f64, z0: f64, z1: f64, anchors: Vec<f64>, long: bool| {
        if long {
            AxisPlan { lo, hi, fine_zones: Vec::new(), anchors, cap: Some([z0, z1, (4.0 * h).max((z1 - z0) / 64.0)]) }
        } else {
            AxisPlan { lo, hi, fine_zones: clip(vec![[z0, z1]], lo, hi), anchors, cap: None }
        }
    };
    let aspect = w.max(ht) / w.min(ht);
    let x = axis(frame.x0, frame.x1, bb.x0, bb.x1, ax, aspect > 4.0 && w > ht);
    let y = axis(frame.y0, frame.y1, bb.y0, bb.y1, ay, aspect > 4.0 && ht > w);
    GridPlan { x, y, h, growth }
}

/// Layout for a ring between two closed polylines. Returns the plan and the
/// distance between the loops.
///
/// The inner loop and, when the loops come close, the zone around the
/// closest pair are meshed uniformly; elsewhere cells grow up to a fraction
/// of the ring size.
pub fn ring_plan(outer: &[[f64; 2]], inner: &[[f64; 2]], h: Option<f64>, growth: f64) -> (GridPlan, f64) {
    let bb = BoundingBox::of_points(outer);
    let ib = BoundingBox::of_points(inner);
    let (dist, p, q) = closest_pair(outer, inner);
    let inner_size = ib.width().min(ib.height());
    let h = h.unwrap_or(dist.min(inner_size) / CELLS_PER_GAP);
    let size = bb.width().max(bb.height());
    let cap = (size / 48.0).max(h);
    let mid = [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])];
    let pad = 0.5 * dist.min(inner_size);
    let axis = |lo: f64, hi: f64, m: f64, i0: f64, i1: f64| {
        let zones = if size / h <= 128.0 {
            vec![[lo, hi]]
        } else if dist < inner_size {
            vec![[(i0 - pad).min(m - 2.0 * dist), (i1 + pad).max(m + 2.0 * dist)]]
        } else {
            vec![[i0 - pad, i1 + pad]]
        };
        AxisPlan { lo, hi, fine_zones: clip(zones, lo, hi), anchors: Vec::new(), cap: Some([lo, hi, cap]) }
    };
    let plan = GridPlan {
        x: axis(bb.x0, bb.x1, mid[0], ib.x0, ib.x1),
        y: axis(bb.y0, bb.y1, mid[1], ib.y0, ib.y1),
        h,
        growth,
    };
    (plan, dist)
}

fn clip(zones: Vec<[f64; 2]>, lo: f64, hi: f64) -> Vec<[f64; 2]> {
    zones.into_iter().map(|z| [z[0].max(lo), z[1].min(hi)]).filter(|z| z[1] > z[0]).collect()
}

/// Shortest distance between two polylines, measured between their edges,
/// together with the nearest points.
pub fn closest_pair(a: &[[f64; 2]], b: &[[f64; 2]]) -> (f64, [f64; 2], [f64; 2]) {
    let mut best = (f64::INFINITY, a[0], b[0]);
    let mut consider = |p: [f64; 2], s0: [f64; 2], s1: [f64; 2], p_first: bool| {
        let (dx, dy) = (s1[0] - s0[0], s1[1] - s0[1]);
        let len2 = dx * dx + dy * dy;
        let t = if len2 > 0.0 { (((p[0] - s0[0]) * dx + (p[1] - s0[1]) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
        let f = [s0[0] + t * dx, s0[1] + t * dy];
        let d = (p[0] - f[0]).hypot(p[1] - f[1]);
        if d < best.0 {
            best = if p_first { (d, p, f) } else { (d, f, p) };
        }
    };
    for &p in a {
        for k in 0..b.len() {
            consider(p, b[k], b[(k + 1) % b.len()], true);
        }
    }
    for &p in b {
        for k in 0..a.len() {
            consider(p, a[k], a[(k + 1) % a.len()], false);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsolver::region::circle;

    #[test]
    fn closest_pair_of_circles() {
        let (d, _, _) = closest_pair(&circle([0.0, 0.0], 1.0, 400), &circle([0.0, -0.2], 0.5, 400));
        assert!((d - 0.3).abs() < 1e-3);
    }

    #[test]
    fn channel_plan_has_mouth_faces() {
        let dom = crate::geometry::fixtures::nonsymmetric_lens();
        let plan = channel_plan(&dom, dom.truncation_box(8.0), 1.0 / 16.0, 1.2);
        let g = plan.build();
        for x in [dom.c(), dom.d(), dom.a(), dom.b()] {
            assert!(g.xf().iter().any(|&f| (f - x).abs() < 1e-12), "{x}");
        }
        assert!(g.len() < 200_000);
    }
}
