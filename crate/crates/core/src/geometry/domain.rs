use serde::Serialize;

use super::{BoundaryFunction, GeometryError, StretchFactor};

/// One violated condition of the channel-domain class.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainViolation {
    /// Interval containment or ordering of the endpoints fails.
    IntervalViolation { detail: String },
    /// A pointwise ordering `f₁ ≤ g₁`, `g₂ ≤ f₂` or `f₂ < f₁` fails at `x`.
    OrderingViolation { x: f64, detail: String },
    /// Upper and lower graphs of a component do not meet at an endpoint.
    EndpointMismatch { x: f64, detail: String },
}

impl std::fmt::Display for DomainViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainViolation::IntervalViolation { detail } => write!(f, "interval violation: {detail}"),
            DomainViolation::OrderingViolation { x, detail } => {
                write!(f, "ordering violation at x = {x}: {detail}")
            }
            DomainViolation::EndpointMismatch { x, detail } => {
                write!(f, "endpoint mismatch at x = {x}: {detail}")
            }
        }
    }
}

/// Unvalidated boundary data, as read from a config file or built by hand.
#[derive(Debug, Clone)]
pub struct DomainCandidate {
    /// `g₁`, upper graph of the upper component on `[a, b]`.
    pub outer_upper: BoundaryFunction,
    /// `f₁`, lower graph of the upper component on `[a, b]`.
    pub outer_lower: BoundaryFunction,
    /// `f₂`, upper graph of the lower component on `[c, d]`.
    pub inner_upper: BoundaryFunction,
    /// `g₂`, lower graph of the lower component on `[c, d]`.
    pub inner_lower: BoundaryFunction,
    /// Declared `[a, b]`; when present it must match the function intervals.
    pub interval_outer: Option<[f64; 2]>,
    /// Declared `[c, d]`.
    pub interval_inner: Option<[f64; 2]>,
}

/// Unbounded doubly-connected domain whose complement consists of two
/// compact pieces bounded by function graphs:
///
/// * upper piece `K₁ = {a ≤ x ≤ b, f₁(x) ≤ y ≤ g₁(x)}`,
/// * lower piece `K₂ = {c ≤ x ≤ d, g₂(x) ≤ y ≤ f₂(x)}`,
///
/// with `[c, d] ⊂ [a, b]` and `f₂ < f₁` on `[c, d]`.
#[derive(Debug, Clone)]
pub struct ChannelDomain {
    outer_upper: BoundaryFunction,
    outer_lower: BoundaryFunction,
    inner_upper: BoundaryFunction,
    inner_lower: BoundaryFunction,
}

/// Check every class condition and return the domain or the full list of
/// violations.
pub fn validate_domain(raw: DomainCandidate) -> Result<ChannelDomain, Vec<DomainViolation>> {
    let mut out = Vec::new();
    let (g1, f1, f2, g2) = (&raw.outer_upper, &raw.outer_lower, &raw.inner_upper, &raw.inner_lower);

    let (a, b) = (f1.lo(), f1.hi());
    let (c, d) = (f2.lo(), f2.hi());
    if g1.lo() != a || g1.hi() != b {
        out.push(DomainViolation::IntervalViolation {
            detail: format!("g1 on [{}, {}] but f1 on [{a}, {b}]", g1.lo(), g1.hi()),
        });
    }
    if g2.lo() != c || g2.hi() != d {
        out.push(DomainViolation::IntervalViolation {
            detail: format!("g2 on [{}, {}] but f2 on [{c}, {d}]", g2.lo(), g2.hi()),
        });
    }
    if let Some([da, db]) = raw.interval_outer {
        if da != a || db != b {
            out.push(DomainViolation::IntervalViolation {
                detail: format!("declared outer interval [{da}, {db}] but samples span [{a}, {b}]"),
            });
        }
    }
    if let Some([dc, dd]) = raw.interval_inner {
        if dc != c || dd != d {
            out.push(DomainViolation::IntervalViolation {
                detail: format!("declared inner interval [{dc}, {dd}] but samples span [{c}, {d}]"),
            });
        }
    }
    if !(c >= a && d <= b) {
        out.push(DomainViolation::IntervalViolation { detail: format!("[{c}, {d}] is not contained in [{a}, {b}]") });
    }

    // f1 <= g1 on [a, b]
    for x in merged_abscissae(&[f1, g1], a.max(g1.lo()), b.min(g1.hi())) {
        if f1.eval(x) > g1.eval(x) {
            out.push(DomainViolation::OrderingViolation {
                x,
                detail: format!("f1 = {} exceeds g1 = {}", f1.eval(x), g1.eval(x)),
            });
            break;
        }
    }
    // g2 <= f2 on [c, d]
    for x in merged_abscissae(&[f2, g2], c.max(g2.lo()), d.min(g2.hi())) {
        if g2.eval(x) > f2.eval(x) {
            out.push(DomainViolation::OrderingViolation {
                x,
                detail: format!("g2 = {} exceeds f2 = {}", g2.eval(x), f2.eval(x)),
            });
            break;
        }
    }
    // f2 < f1 strictly on [c, d] ∩ [a, b]
    for x in merged_abscissae(&[f1, f2], c.max(a), d.min(b)) {
        if f2.eval(x) >= f1.eval(x) {
            out.push(DomainViolation::OrderingViolation {
                x,
                detail: format!("f2 = {} is not below f1 = {}", f2.eval(x), f1.eval(x)),
            });
            break;
        }
    }

    for (x, up, low, name) in [
        (a, g1.first()[1], f1.first()[1], "f1(a) != g1(a)"),
        (b, g1.last()[1], f1.last()[1], "f1(b) != g1(b)"),
        (c, f2.first()[1], g2.first()[1], "f2(c) != g2(c)"),
        (d, f2.last()[1], g2.last()[1], "f2(d) != g2(d)"),
    ] {
        if up != low {
            out.push(DomainViolation::EndpointMismatch { x, detail: format!("{name}: {up} vs {low}") });
        }
    }

    if out.is_empty() {
        Ok(ChannelDomain {
            outer_upper: raw.outer_upper,
            outer_lower: raw.outer_lower,
            inner_upper: raw.inner_upper,
            inner_lower: raw.inner_lower,
        })
    } else {
        Err(out)
    }
}

fn merged_abscissae(fs: &[&BoundaryFunction], lo: f64, hi: f64) -> Vec<f64> {
    if !(lo <= hi) {
        return Vec::new();
    }
    let mut xs: Vec<f64> = fs.iter().flat_map(|f| f.abscissae_in(lo, hi)).collect();
    xs.push(lo);
    xs.push(hi);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundingBox {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl BoundingBox {
    pub fn of_points(pts: &[[f64; 2]]) -> Self {
        let mut bb = Self { x0: f64::INFINITY, x1: f64::NEG_INFINITY, y0: f64::INFINITY, y1: f64::NEG_INFINITY };
        for p in pts {
            bb.x0 = bb.x0.min(p[0]);
            bb.x1 = bb.x1.max(p[0]);
            bb.y0 = bb.y0.min(p[1]);
            bb.y1 = bb.y1.max(p[1]);
        }
        bb
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn center(&self) -> [f64; 2] {
        [0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1)]
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.x0 && p[0] <= self.x1 && p[1] >= self.y0 && p[1] <= self.y1
    }

    /// Square box centered at `center` with the given half side.
    pub fn centered(center: [f64; 2], half: f64) -> Self {
        Self { x0: center[0] - half, x1: center[0] + half, y0: center[1] - half, y1: center[1] + half }
    }

    /// Same center, half sides multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let c = self.center();
        let (hw, hh) = (0.5 * self.width() * factor, 0.5 * self.height() * factor);
        Self { x0: c[0] - hw, x1: c[0] + hw, y0: c[1] - hh, y1: c[1] + hh }
    }

    /// Counterclockwise corner loop.
    pub fn corners(&self) -> Vec<[f64; 2]> {
        vec![[self.x0, self.y0], [self.x1, self.y0], [self.x1, self.y1], [self.x0, self.y1]]
    }
}

impl ChannelDomain {
    /// Validating constructor from the four graphs `(g₁, f₁, f₂, g₂)`.
    pub fn new(
        outer_upper: BoundaryFunction,
        outer_lower: BoundaryFunction,
        inner_upper: BoundaryFunction,
        inner_lower: BoundaryFunction,
    ) -> Result<Self, GeometryError> {
        validate_domain(DomainCandidate {
            outer_upper,
            outer_lower,
            inner_upper,
            inner_lower,
            interval_outer: None,
            interval_inner: None,
        })
        .map_err(GeometryError::InvalidDomain)
    }

    pub fn outer_upper(&self) -> &BoundaryFunction {
        &self.outer_upper
    }

    pub fn outer_lower(&self) -> &BoundaryFunction {
        &self.outer_lower
    }

    pub fn inner_upper(&self) -> &BoundaryFunction {
        &self.inner_upper
    }

    pub fn inner_lower(&self) -> &BoundaryFunction {
        &self.inner_lower
    }

    pub fn a(&self) -> f64 {
        self.outer_lower.lo()
    }

    pub fn b(&self) -> f64 {
        self.outer_lower.hi()
    }

    pub fn c(&self) -> f64 {
        self.inner_upper.lo()
    }

    pub fn d(&self) -> f64 {
        self.inner_upper.hi()
    }

    /// `f₁(x) − f₂(x)`.
    pub fn gap(&self, x: f64) -> f64 {
        self.outer_lower.eval(x) - self.inner_upper.eval(x)
    }

    /// Smallest gap over all sample abscissae of `f₁`, `f₂` in `[c, d]`.
    pub fn min_gap(&self) -> f64 {
        merged_abscissae(&[&self.outer_lower, &self.inner_upper], self.c(), self.d())
            .into_iter()
            .map(|x| self.gap(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Image under `x + iy ↦ Hx + iy`.
    pub fn stretch(&self, h: StretchFactor) -> ChannelDomain {
        let f = h.value();
        ChannelDomain {
            outer_upper: self.outer_upper.stretched(f),
            outer_lower: self.outer_lower.stretched(f),
            inner_upper: self.inner_upper.stretched(f),
            inner_lower: self.inner_lower.stretched(f),
        }
    }

    pub fn translate(&self, dx: f64) -> ChannelDomain {
        ChannelDomain {
            outer_upper: self.outer_upper.translated(dx),
            outer_lower: self.outer_lower.translated(dx),
            inner_upper: self.inner_upper.translated(dx),
            inner_lower: self.inner_lower.translated(dx),
        }
    }

    /// Boundary polygon of the upper piece `K₁`: `f₁` left to right, then
    /// `g₁` right to left (counterclockwise).
    pub fn upper_piece(&self) -> Vec<[f64; 2]> {
        let mut pts = self.outer_lower.samples();
        let top = self.outer_upper.samples();
        pts.extend(top.iter().rev().skip(1).take(top.len().saturating_sub(2)));
        dedup_closed(pts)
    }

    /// Boundary polygon of the lower piece `K₂`: `g₂` left to right, then
    /// `f₂` right to left (counterclockwise).
    pub fn lower_piece(&self) -> Vec<[f64; 2]> {
        let mut pts = self.inner_lower.samples();
        let top = self.inner_upper.samples();
        pts.extend(top.iter().rev().skip(1).take(top.len().saturating_sub(2)));
        dedup_closed(pts)
    }

    /// Bounding box of both complementary pieces.
    pub fn bounding_box(&self) -> BoundingBox {
        let mut pts = self.upper_piece();
        pts.extend(self.lower_piece());
        BoundingBox::of_points(&pts)
    }

    /// `max(b − a, vertical extent)`.
    pub fn extent(&self) -> f64 {
        let bb = self.bounding_box();
        (self.b() - self.a()).max(bb.height())
    }

    /// Default far-field truncation box: square, centered on the pieces,
    /// half side `factor · extent`.
    pub fn truncation_box(&self, factor: f64) -> BoundingBox {
        BoundingBox::centered(self.bounding_box().center(), factor * self.extent())
    }
}

/// Remove consecutive duplicates, including a repeated closing vertex.
pub(crate) fn dedup_closed(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

/// Shoelace signed area of a closed polygon.
pub fn signed_area(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        s += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures;

    fn rect_candidate() -> DomainCandidate {
        let g1 = BoundaryFunction::from_samples(vec![[-1.0, 1.0], [-0.9, 2.0], [1.9, 2.0], [2.0, 1.0]]).unwrap();
        let f1 = BoundaryFunction::constant(1.0, -1.0, 2.0).unwrap();
        let f2 = BoundaryFunction::constant(0.0, 0.0, 1.0).unwrap();
        let g2 = BoundaryFunction::from_samples(vec![[0.0, 0.0], [0.1, -1.0], [0.9, -1.0], [1.0, 0.0]]).unwrap();
        DomainCandidate {
            outer_upper: g1,
            outer_lower: f1,
            inner_upper: f2,
            inner_lower: g2,
            interval_outer: Some([-1.0, 2.0]),
            interval_inner: Some([0.0, 1.0]),
        }
    }

    #[test]
    fn accepts_valid_domain() {
        let dom = validate_domain(rect_candidate()).unwrap();
        assert_eq!((dom.a(), dom.b(), dom.c(), dom.d()), (-1.0, 2.0, 0.0, 1.0));
        assert_eq!(dom.min_gap(), 1.0);
    }

    #[test]
    fn touching_graphs_are_an_ordering_violation() {
        let mut cand = rect_candidate();
        cand.inner_upper = BoundaryFunction::from_samples(vec![[0.0, 0.0], [0.5, 1.0], [1.0, 0.0]]).unwrap();
        let errs = validate_domain(cand).unwrap_err();
        assert_eq!(errs.len(), 1, "{errs:?}");
        assert!(matches!(errs[0], DomainViolation::OrderingViolation { x, .. } if x == 0.5));
    }

    #[test]
    fn inner_interval_must_be_contained() {
        let mut cand = rect_candidate();
        cand.outer_upper = BoundaryFunction::from_samples(vec![[0.0, 1.0], [1.0, 2.0], [2.0, 1.0]]).unwrap();
        cand.outer_lower = BoundaryFunction::constant(1.0, 0.0, 2.0).unwrap();
        cand.inner_upper = BoundaryFunction::constant(0.0, 0.0, 3.0).unwrap();
        cand.inner_lower = BoundaryFunction::from_samples(vec![[0.0, 0.0], [1.5, -1.0], [3.0, 0.0]]).unwrap();
        cand.interval_outer = Some([0.0, 2.0]);
        cand.interval_inner = Some([0.0, 3.0]);
        let errs = validate_domain(cand).unwrap_err();
        assert!(errs.iter().all(|e| matches!(e, DomainViolation::IntervalViolation { .. })), "{errs:?}");
        assert!(!errs.is_empty());
    }

    #[test]
    fn endpoint_mismatch_is_reported() {
        let mut cand = rect_candidate();
        cand.inner_lower =
            BoundaryFunction::from_samples(vec![[0.0, -0.25], [0.1, -1.0], [0.9, -1.0], [1.0, 0.0]]).unwrap();
        let errs = validate_domain(cand).unwrap_err();
        assert_eq!(errs.len(), 1, "{errs:?}");
        assert!(matches!(errs[0], DomainViolation::EndpointMismatch { x, .. } if x == 0.0));
    }

    #[test]
    fn builtin_fixtures_validate() {
        for (name, dom) in fixtures::all() {
            let cand = DomainCandidate {
                outer_upper: dom.outer_upper().clone(),
                outer_lower: dom.outer_lower().clone(),
                inner_upper: dom.inner_upper().clone(),
                inner_lower: dom.inner_lower().clone(),
                interval_outer: None,
                interval_inner: None,
            };
            assert!(validate_domain(cand).is_ok(), "{name}");
        }
    }

    #[test]
    fn pieces_are_counterclockwise() {
        for (_, dom) in fixtures::all() {
            assert!(signed_area(&dom.upper_piece()) > 0.0);
            assert!(signed_area(&dom.lower_piece()) > 0.0);
        }
    }

    #[test]
    fn stretch_identity_and_composition() {
        let dom = fixtures::tilted_strip();
        let one = dom.stretch(StretchFactor::new(1.0).unwrap());
        assert_eq!(one.upper_piece(), dom.upper_piece());
        let a = dom.stretch(StretchFactor::new(2.0).unwrap()).stretch(StretchFactor::new(3.0).unwrap());
        let b = dom.stretch(StretchFactor::new(6.0).unwrap());
        assert_eq!(a.upper_piece(), b.upper_piece());
        assert_eq!(a.lower_piece(), b.lower_piece());
    }

    #[test]
    fn stretch_maps_samples() {
        let f = BoundaryFunction::from_samples(vec![[3.0, 5.0], [4.0, 5.0]]).unwrap();
        assert_eq!(f.stretched(2.0).first(), [6.0, 5.0]);
    }
}
