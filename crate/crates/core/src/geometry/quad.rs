use serde::Serialize;

use super::domain::{dedup_closed, signed_area};
use super::{BoundingBox, ChannelDomain, GeometryError, StretchFactor};

/// Default half side of the far-field box, in units of the domain extent.
pub const DEFAULT_BOX_FACTOR: f64 = 8.0;

/// A Jordan domain with four marked boundary vertices `z₁..z₄`.
///
/// Interior quadrilaterals are bounded by a counterclockwise polyline. An
/// exterior quadrilateral is the outside of a clockwise polyline, cut off at
/// a truncation box whose sides carry no boundary condition.
///
/// The modulus is the extremal length of the curves joining the arc
/// `z₁z₂` to the arc `z₃z₄`, so the rectangle `[0,1]×[0,h]` with its corners
/// marked counterclockwise from the origin has modulus `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quadrilateral {
    vertices: Vec<[f64; 2]>,
    marked: [usize; 4],
    truncation: Option<BoundingBox>,
}

impl Quadrilateral {
    /// Bounded quadrilateral; `vertices` must be a simple counterclockwise loop.
    pub fn new(vertices: Vec<[f64; 2]>, marked: [usize; 4]) -> Result<Self, GeometryError> {
        let q = Self { vertices, marked, truncation: None };
        q.check()?;
        Ok(q)
    }

    /// Exterior of a simple clockwise loop, truncated at `bbox`.
    pub fn exterior(vertices: Vec<[f64; 2]>, marked: [usize; 4], bbox: BoundingBox) -> Result<Self, GeometryError> {
        let q = Self { vertices, marked, truncation: Some(bbox) };
        q.check()?;
        Ok(q)
    }

    /// `[0, w] × [0, h]` with corners marked from the origin; modulus `h / w`.
    pub fn rectangle(w: f64, h: f64) -> Result<Self, GeometryError> {
        Self::new(vec![[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]], [0, 1, 2, 3])
    }

    fn check(&self) -> Result<(), GeometryError> {
        let n = self.vertices.len();
        if n < 4 || self.vertices.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(GeometryError::InvalidSamples("need at least four finite vertices".into()));
        }
        let m = self.marked;
        if !(m[0] < m[1] && m[1] < m[2] && m[2] < m[3] && m[3] < n) {
            return Err(GeometryError::MarkedOrder(n));
        }
        if let Some((i, j)) = first_self_intersection(&self.vertices) {
            return Err(GeometryError::NotSimple(i, j));
        }
        let area = signed_area(&self.vertices);
        match &self.truncation {
            None if area <= 0.0 => Err(GeometryError::Orientation),
            Some(_) if area >= 0.0 => Err(GeometryError::Orientation),
            Some(bb)
                if self.vertices.iter().any(|p| !(p[0] > bb.x0 && p[0] < bb.x1 && p[1] > bb.y0 && p[1] < bb.y1)) =>
            {
                Err(GeometryError::BoxTooSmall)
            }
            _ => Ok(()),
        }
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn marked(&self) -> [usize; 4] {
        self.marked
    }

    pub fn marked_points(&self) -> [[f64; 2]; 4] {
        self.marked.map(|k| self.vertices[k])
    }

    /// Far-field box of an exterior quadrilateral.
    pub fn truncation(&self) -> Option<BoundingBox> {
        self.truncation
    }

    pub fn is_exterior(&self) -> bool {
        self.truncation.is_some()
    }

    /// Index `k ∈ 0..4` of the arc `z_{k+1} z_{k+2}` containing the segment
    /// from vertex `i` to vertex `i + 1`.
    pub fn arc_of_segment(&self, i: usize) -> usize {
        let m = self.marked;
        (0..4).rev().find(|&k| i >= m[k]).unwrap_or(3)
    }

    /// Polyline of arc `k` from `z_{k+1}` to `z_{k+2}`, endpoints included.
    pub fn arc(&self, k: usize) -> Vec<[f64; 2]> {
        let n = self.vertices.len();
        let (s, e) = (self.marked[k % 4], self.marked[(k + 1) % 4]);
        let len = (e + n - s) % n;
        (0..=len).map(|t| self.vertices[(s + t) % n]).collect()
    }

    /// Area of the (truncated) region.
    pub fn area(&self) -> f64 {
        let a = signed_area(&self.vertices).abs();
        match &self.truncation {
            Some(bb) => bb.area() - a,
            None => a,
        }
    }

    /// The conjugate quadrilateral: the marked vertices shifted by one, so
    /// the new `z₁` is the old `z₂`. Its modulus is the reciprocal.
    pub fn conjugate(&self) -> Self {
        let n = self.vertices.len();
        let s = self.marked[1];
        let vertices = (0..n).map(|t| self.vertices[(s + t) % n]).collect();
        let m = self.marked;
        Self { vertices, marked: [0, m[2] - s, m[3] - s, m[0] + n - s], truncation: self.truncation }
    }

    /// Image under `x + iy ↦ Hx + iy`, box included.
    pub fn stretched(&self, h: StretchFactor) -> Self {
        let f = h.value();
        Self {
            vertices: self.vertices.iter().map(|p| [p[0] * f, p[1]]).collect(),
            marked: self.marked,
            truncation: self.truncation.map(|b| BoundingBox { x0: b.x0 * f, x1: b.x1 * f, ..b }),
        }
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_meet(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// First pair of non-adjacent segments of the closed loop that touch, found
/// by a sweep over segments sorted by their left end.
fn first_self_intersection(v: &[[f64; 2]]) -> Option<(usize, usize)> {
    let n = v.len();
    if let Some(i) = (0..n).find(|&i| v[i] == v[(i + 1) % n]) {
        return Some((i, i));
    }
    let seg = |i: usize| (v[i], v[(i + 1) % n]);
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| v[i][0].min(v[(i + 1) % n][0]);
    order.sort_by(|&i, &j| xmin(i).total_cmp(&xmin(j)).then(i.cmp(&j)));
    for (oi, &i) in order.iter().enumerate() {
        let (p1, p2) = seg(i);
        let xmax = p1[0].max(p2[0]);
        for &j in &order[oi + 1..] {
            if xmin(j) > xmax {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                // Neighbours share one vertex; folding back onto each other is an overlap.
                let (shared, a, b) = if (i + 1) % n == j { (p2, p1, v[(j + 1) % n]) } else { (p1, p2, v[j]) };
                let dot = (a[0] - shared[0]) * (b[0] - shared[0]) + (a[1] - shared[1]) * (b[1] - shared[1]);
                if orient(shared, a, b) == 0.0 && dot > 0.0 {
                    return Some((i.min(j), i.max(j)));
                }
                continue;
            }
            let (q1, q2) = seg(j);
            if segments_meet(p1, p2, q1, q2) {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

/// Collects loop vertices, skipping consecutive duplicates, and remembers
/// where the marked points landed.
struct LoopBuilder {
    pts: Vec<[f64; 2]>,
}

impl LoopBuilder {
    fn push(&mut self, p: [f64; 2]) -> usize {
        if self.pts.last() != Some(&p) {
            self.pts.push(p);
        }
        self.pts.len() - 1
    }
}

/// Split along the vertical crosscuts `x = c` and `x = d` with the default
/// far-field box.
pub fn split_at_verticals(dom: &ChannelDomain) -> Result<(Quadrilateral, Quadrilateral), GeometryError> {
    split_at_verticals_in(dom, dom.truncation_box(DEFAULT_BOX_FACTOR))
}

/// Split a channel domain along the crosscuts `AB` at `x = c` and `CD` at
/// `x = d` into the channel `Q = (Q; A, B, C, D)` and the outer part
/// `P = (P; D, C, B, A)`, the latter truncated at `bbox`.
pub fn split_at_verticals_in(
    dom: &ChannelDomain,
    bbox: BoundingBox,
) -> Result<(Quadrilateral, Quadrilateral), GeometryError> {
    let (f1, g1, f2, g2) = (dom.outer_lower(), dom.outer_upper(), dom.inner_upper(), dom.inner_lower());
    let (c, d) = (dom.c(), dom.d());
    let a_pt = [c, f1.eval_linear(c)];
    let b_pt = f2.first();
    let c_pt = f2.last();
    let d_pt = [d, f1.eval_linear(d)];
    if a_pt[1] <= b_pt[1] {
        return Err(GeometryError::DegenerateStrip(c));
    }
    if d_pt[1] <= c_pt[1] {
        return Err(GeometryError::DegenerateStrip(d));
    }

    let f1s = f1.samples();
    let mut q = LoopBuilder { pts: Vec::new() };
    let ia = q.push(a_pt);
    let ib = q.push(b_pt);
    for p in f2.samples() {
        q.push(p);
    }
    let ic = q.push(c_pt);
    let id = q.push(d_pt);
    for p in f1s.iter().rev().filter(|p| p[0] > c && p[0] < d) {
        q.push(*p);
    }
    let quad_q = Quadrilateral::new(dedup_closed(q.pts), [ia, ib, ic, id])?;

    let mut p = LoopBuilder { pts: Vec::new() };
    let jd = p.push(d_pt);
    let jc = p.push(c_pt);
    for s in g2.samples().into_iter().rev() {
        p.push(s);
    }
    let jb = p.push(b_pt);
    let ja = p.push(a_pt);
    for s in f1s.iter().rev().filter(|s| s[0] < c) {
        p.push(*s);
    }
    for s in g1.samples() {
        p.push(s);
    }
    for s in f1s.iter().rev().filter(|s| s[0] > d) {
        p.push(*s);
    }
    let quad_p = Quadrilateral::exterior(dedup_closed(p.pts), [jd, jc, jb, ja], bbox)?;
    Ok((quad_q, quad_p))
}
