//! Graded tensor-product grids. Unknowns live at cell centres; faces are
//! placed on geometric breakpoints so that straight boundary pieces fall
//! on cell faces.

use serde::Serialize;

/// Layout of one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisPlan {
    pub lo: f64,
    pub hi: f64,
    /// Intervals meshed uniformly with cells no larger than `h`.
    pub fine_zones: Vec<[f64; 2]>,
    /// Points that must be faces, with cells of size about `h` next to them.
    pub anchors: Vec<f64>,
    /// `[lo, hi, cap]`: between anchors inside `[lo, hi]` cells may grow only
    /// up to `cap`. Elsewhere growth is unbounded.
    pub cap: Option<[f64; 3]>,
}

impl AxisPlan {
    pub fn uniform(lo: f64, hi: f64) -> Self {
        Self { lo, hi, fine_zones: vec![[lo, hi]], anchors: Vec::new(), cap: None }
    }
}

/// Both axes plus the fine cell size and growth ratio of the coarsest level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPlan {
    pub x: AxisPlan,
    pub y: AxisPlan,
    pub h: f64,
    pub growth: f64,
}

impl GridPlan {
    pub fn build(&self) -> Grid {
        Grid::new(axis_faces(&self.x, self.h, self.growth), axis_faces(&self.y, self.h, self.growth))
    }
}

/// Tensor grid given by its face coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    xf: Vec<f64>,
    yf: Vec<f64>,
    xc: Vec<f64>,
    yc: Vec<f64>,
}

fn centres(f: &[f64]) -> Vec<f64> {
    f.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
}

impl Grid {
    pub fn new(xf: Vec<f64>, yf: Vec<f64>) -> Self {
        assert!(xf.len() >= 2 && yf.len() >= 2, "grid needs at least one cell per axis");
        debug_assert!(xf.windows(2).all(|w| w[1] > w[0]) && yf.windows(2).all(|w| w[1] > w[0]));
        let (xc, yc) = (centres(&xf), centres(&yf));
        Self { xf, yf, xc, yc }
    }

    /// `nx × ny` unit cells with the origin at the lower-left corner.
    pub fn unit(nx: usize, ny: usize) -> Self {
        Self::new((0..=nx).map(|i| i as f64).collect(), (0..=ny).map(|j| j as f64).collect())
    }

    /// Every cell split into `2^k × 2^k` equal children.
    pub fn refined(&self, k: u32) -> Self {
        let split = |f: &[f64]| {
            let mut out = vec![f[0]];
            let parts = 1usize << k;
            for w in f.windows(2) {
                for t in 1..=parts {
                    out.push(if t == parts { w[1] } else { w[0] + (w[1] - w[0]) * t as f64 / parts as f64 });
                }
            }
            out
        };
        Self::new(split(&self.xf), split(&self.yf))
    }

    pub fn nx(&self) -> usize {
        self.xc.len()
    }

    pub fn ny(&self) -> usize {
        self.yc.len()
    }

    pub fn len(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn xf(&self) -> &[f64] {
        &self.xf
    }

    pub fn yf(&self) -> &[f64] {
        &self.yf
    }

    pub fn xc(&self) -> &[f64] {
        &self.xc
    }

    pub fn yc(&self) -> &[f64] {
        &self.yc
    }

    #[inline]
    pub fn id(&self, i: usize, j: usize) -> usize {
        j * self.nx() + i
    }

    /// Column of the cell containing `x` (clamped to the grid).
    pub fn col_of(&self, x: f64) -> usize {
        self.xf.partition_point(|&f| f <= x).saturating_sub(1).min(self.nx() - 1)
    }

    pub fn row_of(&self, y: f64) -> usize {
        self.yf.partition_point(|&f| f <= y).saturating_sub(1).min(self.ny() - 1)
    }

    /// Smallest cell side on either axis.
    pub fn min_cell(&self) -> f64 {
        self.xf.windows(2).chain(self.yf.windows(2)).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }
}

/// Face coordinates for one axis.
pub fn axis_faces(plan: &AxisPlan, h: f64, growth: f64) -> Vec<f64> {
    assert!(plan.hi > plan.lo && h > 0.0 && growth >= 1.0);
    // Points that must become faces, with the size of the cells next to
    // them when that is prescribed.
    let mut marks: Vec<(f64, Option<f64>)> = vec![(plan.lo, None), (plan.hi, None)];
    let inner = |e: f64| e > plan.lo && e < plan.hi;
    for &e in plan.fine_zones.iter().flatten().chain(&plan.anchors) {
        if inner(e) {
            marks.push((e, Some(h)));
        }
    }
    if let Some([lo, hi, cap]) = plan.cap {
        for e in [lo, hi] {
            if inner(e) {
                marks.push((e, Some(cap.max(h))));
            }
        }
    }
    marks.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, Option<f64>)> = Vec::new();
    for (x, size) in marks {
        match merged.last_mut() {
            Some(last) if (x - last.0).abs() <= 1e-12 * (1.0 + x.abs()) => {
                last.1 = match (last.1, size) {
                    (Some(p), Some(q)) => Some(p.min(q)),
                    (p, q) => p.or(q),
                }
            }
            _ => merged.push((x, size)),
        }
    }

    let in_fine_zone = |a: f64, b: f64| plan.fine_zones.iter().any(|z| a >= z[0] - 1e-12 && b <= z[1] + 1e-12);
    let cap_for = |a: f64, b: f64| match plan.cap {
        Some([lo, hi, cap]) if a >= lo - 1e-12 && b <= hi + 1e-12 => cap.max(h),
        _ => f64::INFINITY,
    };

    let mut faces = vec![merged[0].0];
    for w in merged.windows(2) {
        let ((a, fa), (b, fb)) = (w[0], w[1]);
        let sizes = if in_fine_zone(a, b) {
            let n = ((b - a) / h - 1e-9).ceil().max(1.0) as usize;
            vec![(b - a) / n as f64; n]
        } else {
            graded_sizes(b - a, fa, fb, growth, cap_for(a, b))
        };
        let mut x = a;
        for s in &sizes[..sizes.len() - 1] {
            x += s;
            faces.push(x);
        }
        faces.push(b);
    }
    faces
}

/// Cell sizes filling a gap of length `len`, starting from `left`/`right`
/// (or unconstrained when `None`) and growing geometrically up to `cap`.
fn graded_sizes(len: f64, left: Option<f64>, right: Option<f64>, growth: f64, cap: f64) -> Vec<f64> {
    let (mut ls, mut rs) = (Vec::new(), Vec::new());
    let (mut lsum, mut rsum) = (0.0, 0.0);
    let next = |v: &Vec<f64>, start: Option<f64>| start.map(|h| (h * growth.powi(v.len() as i32)).min(cap));
    loop {
        let nl = next(&ls, left);
        let nr = next(&rs, right);
        let (side_left, s) = match (nl, nr) {
            (Some(a), Some(b)) => {
                if a <= b {
                    (true, a)
                } else {
                    (false, b)
                }
            }
            (Some(a), None) => (true, a),
            (None, Some(b)) => (false, b),
            (None, None) => (true, len.min(cap)),
        };
        let used = lsum + rsum;
        if used + s > len * (1.0 + 1e-12) {
            let rem = len - used;
            let nleft = ls.len();
            let mut sizes: Vec<f64> = ls.into_iter().chain(rs.into_iter().rev()).collect();
            if rem > 1e-12 * len || sizes.is_empty() {
                // One more cell where the two sequences meet, then shrink
                // everything to fit exactly.
                sizes.insert(nleft, s);
                let total: f64 = sizes.iter().sum();
                for v in &mut sizes {
                    *v *= len / total;
                }
            }
            return sizes;
        }
        if side_left {
            ls.push(s);
            lsum += s;
        } else {
            rs.push(s);
            rsum += s;
        }
    }
}
