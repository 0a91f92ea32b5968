//! Planar regions bounded by labelled polygonal loops.

use serde::Serialize;

use crate::geometry::{BoundingBox, ChannelDomain, Quadrilateral};

/// Boundary condition carried by a boundary segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryLabel {
    /// `u = 0`.
    Dirichlet0,
    /// `u = 1`.
    Dirichlet1,
    /// Zero normal derivative.
    Neumann,
}

impl BoundaryLabel {
    pub fn value(self) -> Option<f64> {
        match self {
            BoundaryLabel::Dirichlet0 => Some(0.0),
            BoundaryLabel::Dirichlet1 => Some(1.0),
            BoundaryLabel::Neumann => None,
        }
    }

    pub fn is_dirichlet(self) -> bool {
        !matches!(self, BoundaryLabel::Neumann)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub p: [f64; 2],
    pub q: [f64; 2],
    pub label: BoundaryLabel,
}

impl Segment {
    /// Abscissa where the segment meets the horizontal line `y = y0`, using
    /// the half-open rule so a vertex on the line is counted exactly once.
    #[inline]
    pub fn cross_row(&self, y0: f64) -> Option<f64> {
        let (p, q) = (self.p, self.q);
        if (p[1] > y0) != (q[1] > y0) {
            Some(p[0] + (y0 - p[1]) * (q[0] - p[0]) / (q[1] - p[1]))
        } else {
            None
        }
    }

    /// Ordinate where the segment meets the vertical line `x = x0`.
    #[inline]
    pub fn cross_col(&self, x0: f64) -> Option<f64> {
        let (p, q) = (self.p, self.q);
        if (p[0] > x0) != (q[0] > x0) {
            Some(p[1] + (x0 - p[0]) * (q[1] - p[1]) / (q[0] - p[0]))
        } else {
            None
        }
    }
}

/// A region given by closed loops; a point is inside when a ray from it
/// crosses the loops an odd number of times. Every loop segment carries a
/// boundary label.
#[derive(Debug, Clone, Serialize)]
pub struct Region {
    segments: Vec<Segment>,
    bbox: BoundingBox,
}

impl Region {
    pub fn new() -> Self {
        Self {
            segments: Vec::new(),
            bbox: BoundingBox { x0: f64::INFINITY, x1: f64::NEG_INFINITY, y0: f64::INFINITY, y1: f64::NEG_INFINITY },
        }
    }

    /// Add a closed loop whose segment `i` (from vertex `i` to `i + 1`) gets
    /// `label(i)`.
    pub fn add_loop(&mut self, pts: &[[f64; 2]], label: impl Fn(usize) -> BoundaryLabel) {
        let n = pts.len();
        for i in 0..n {
            let (p, q) = (pts[i], pts[(i + 1) % n]);
            if p != q {
                self.segments.push(Segment { p, q, label: label(i) });
            }
            self.bbox.x0 = self.bbox.x0.min(p[0]);
            self.bbox.x1 = self.bbox.x1.max(p[0]);
            self.bbox.y0 = self.bbox.y0.min(p[1]);
            self.bbox.y1 = self.bbox.y1.max(p[1]);
        }
    }

    /// Ring between an outer loop (`u = 0`) and an inner loop (`u = 1`).
    pub fn ring(outer: &[[f64; 2]], inner: &[[f64; 2]]) -> Self {
        let mut r = Self::new();
        r.add_loop(outer, |_| BoundaryLabel::Dirichlet0);
        r.add_loop(inner, |_| BoundaryLabel::Dirichlet1);
        r
    }

    /// Channel domain cut off at `bbox`: `u = 0` on the upper piece, `u = 1`
    /// on the lower piece, no condition on the box.
    pub fn channel(dom: &ChannelDomain, bbox: BoundingBox) -> Self {
        let mut r = Self::new();
        r.add_loop(&bbox.corners(), |_| BoundaryLabel::Neumann);
        r.add_loop(&dom.upper_piece(), |_| BoundaryLabel::Dirichlet0);
        r.add_loop(&dom.lower_piece(), |_| BoundaryLabel::Dirichlet1);
        r
    }

    /// Quadrilateral with `u = 0` on arc `z₁z₂`, `u = 1` on arc `z₃z₄` and
    /// Neumann conditions elsewhere (including any truncation box).
    pub fn quadrilateral(q: &Quadrilateral) -> Self {
        let mut r = Self::new();
        if let Some(bb) = q.truncation() {
            r.add_loop(&bb.corners(), |_| BoundaryLabel::Neumann);
        }
        r.add_loop(q.vertices(), |i| match q.arc_of_segment(i) {
            0 => BoundaryLabel::Dirichlet0,
            2 => BoundaryLabel::Dirichlet1,
            _ => BoundaryLabel::Neumann,
        });
        r
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn bbox(&self) -> BoundingBox {
        self.bbox
    }

    pub fn has_label(&self, label: BoundaryLabel) -> bool {
        self.segments.iter().any(|s| s.label == label)
    }

    /// Parity test for a single point (used by tests and diagnostics).
    pub fn contains(&self, pt: [f64; 2]) -> bool {
        self.segments.iter().filter(|s| matches!(s.cross_row(pt[1]), Some(x) if x < pt[0])).count() % 2 == 1
    }
}

impl Default for Region {
    fn default() -> Self {
        Self::new()
    }
}

/// Polyline sampling of the circle `|z − center| = radius`, counterclockwise.
pub fn circle(center: [f64; 2], radius: f64, n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            [center[0] + radius * t.cos(), center[1] + radius * t.sin()]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_parity() {
        let r = Region::ring(&circle([0.0, 0.0], 2.0, 256), &circle([0.0, 0.0], 1.0, 256));
        assert!(r.contains([1.5, 0.01]));
        assert!(!r.contains([0.1, 0.1]));
        assert!(!r.contains([2.5, 0.0]));
    }

    #[test]
    fn quad_labels_follow_arcs() {
        let q = Quadrilateral::rectangle(1.0, 0.5).unwrap();
        let r = Region::quadrilateral(&q);
        let labels: Vec<_> = r.segments().iter().map(|s| s.label).collect();
        use BoundaryLabel::*;
        assert_eq!(labels, vec![Dirichlet0, Neumann, Dirichlet1, Neumann]);
    }

    #[test]
    fn half_open_vertex_rule() {
        let s1 = Segment { p: [0.0, 0.0], q: [1.0, 1.0], label: BoundaryLabel::Neumann };
        let s2 = Segment { p: [1.0, 1.0], q: [2.0, 0.0], label: BoundaryLabel::Neumann };
        // A line through the shared apex counts neither or both, never one.
        assert_eq!(s1.cross_row(1.0).is_some(), s2.cross_row(1.0).is_some());
    }
}
