//! Stretch sweeps over a channel domain and the checks run on them.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analytic::{gamma, shear_dilatation, AnalyticError, ShearParams};
use crate::geometry::{ChannelDomain, StretchFactor};
use crate::modsolver::{split_moduli, SolverOptions};

/// CSV header of a sweep table.
pub const CSV_HEADER: &str =
    "H,m_omega,m_omega_err,gamma,ratio,bound_ok,m_Q,m_P,grotzsch_gap,additivity_ratio,mP_over_logH";

/// Note attached to every report: the trend thresholds are calibration
/// constants, not derived values.
pub const CALIBRATION_NOTE: &str = "ratio_floor, additivity_gain and max_quadratic are frozen desk-scale calibration \
     constants; no convergence rate for the ratio is known";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("H list must be positive and strictly increasing")]
    InvalidHList,
    #[error("need at least 3 successful rows spanning a factor of 8 in H (have {rows} rows, span {span})")]
    InsufficientSpan { rows: usize, span: f64 },
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    #[serde(rename = "H")]
    pub h: f64,
    pub m_omega: f64,
    pub m_omega_err: f64,
    pub gamma: f64,
    /// `γ·H·m(Ω_H)`.
    pub ratio: f64,
    pub bound_ok: bool,
    #[serde(rename = "m_Q")]
    pub m_q: f64,
    #[serde(rename = "m_Q_err")]
    pub m_q_err: f64,
    #[serde(rename = "m_P")]
    pub m_p: f64,
    #[serde(rename = "m_P_err")]
    pub m_p_err: f64,
    /// `1/m(Ω_H) − m(Q_H) − m(P_H)`.
    pub grotzsch_gap: f64,
    /// `(m(Q_H) + m(P_H))·m(Ω_H)`.
    pub additivity_ratio: f64,
    #[serde(rename = "mP_over_logH")]
    pub mp_over_log_h: f64,
    /// Row tolerance: largest relative error estimate of the three moduli
    /// plus the fixed slack.
    pub eps_disc: f64,
    /// Solver failure, if the row could not be computed.
    pub error: Option<String>,
}

impl SweepRecord {
    /// Fill the derived columns from the three moduli.
    pub fn from_moduli(h: f64, gamma: f64, m_omega: (f64, f64), m_q: (f64, f64), m_p: (f64, f64), slack: f64) -> Self {
        let rel = |(v, e): (f64, f64)| e / v.abs();
        let eps_disc = rel(m_omega).max(rel(m_q)).max(rel(m_p)) + slack;
        let ratio = gamma * h * m_omega.0;
        Self {
            h,
            m_omega: m_omega.0,
            m_omega_err: m_omega.1,
            gamma,
            ratio,
            bound_ok: ratio <= 1.0 + eps_disc,
            m_q: m_q.0,
            m_q_err: m_q.1,
            m_p: m_p.0,
            m_p_err: m_p.1,
            grotzsch_gap: 1.0 / m_omega.0 - m_q.0 - m_p.0,
            additivity_ratio: (m_q.0 + m_p.0) * m_omega.0,
            mp_over_log_h: if h > 1.0 { m_p.0 / h.ln() } else { f64::NAN },
            eps_disc,
            error: None,
        }
    }

    fn failed(h: f64, gamma: f64, msg: String) -> Self {
        let nan = f64::NAN;
        Self {
            h,
            m_omega: nan,
            m_omega_err: nan,
            gamma,
            ratio: nan,
            bound_ok: false,
            m_q: nan,
            m_q_err: nan,
            m_p: nan,
            m_p_err: nan,
            grotzsch_gap: nan,
            additivity_ratio: nan,
            mp_over_log_h: nan,
            eps_disc: nan,
            error: Some(msg),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn csv_row(&self) -> String {
        let f = |v: f64| if v.is_finite() { format!("{v}") } else { "NaN".to_string() };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            f(self.h),
            f(self.m_omega),
            f(self.m_omega_err),
            f(self.gamma),
            f(self.ratio),
            self.bound_ok,
            f(self.m_q),
            f(self.m_p),
            f(self.grotzsch_gap),
            f(self.additivity_ratio),
            f(self.mp_over_log_h)
        )
    }
}

/// Slack added to the solver's own error ratio in every comparison.
pub const DISC_SLACK: f64 = 0.02;

/// For each `H`: stretch, split, and solve `m(Ω_H)`, `m(Q_H)`, `m(P_H)`.
/// Rows run in parallel; a row whose solve fails is kept with its error.
pub fn sweep(dom: &ChannelDomain, h_list: &[f64], opts: &SolverOptions) -> Result<Vec<SweepRecord>, VerifyError> {
    if h_list.is_empty()
        || h_list.iter().any(|&h| !(h > 0.0 && h.is_finite()))
        || h_list.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(VerifyError::InvalidHList);
    }
    let g = gamma(dom)?.value;
    Ok(h_list
        .par_iter()
        .map(|&h| {
            let stretched = dom.stretch(StretchFactor::new(h).expect("checked positive"));
            match split_moduli(&stretched, opts) {
                Ok(s) => SweepRecord::from_moduli(
                    h,
                    g,
                    (s.omega.value, s.omega.error_estimate),
                    (s.q.value, s.q.error_estimate),
                    (s.p.value, s.p.error_estimate),
                    DISC_SLACK,
                ),
                Err(e) => SweepRecord::failed(h, g, e.to_string()),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Lower bound for the ratio at the largest `H`.
    pub ratio_floor: f64,
    /// Required gain of the additivity ratio from first to last row; `None`
    /// skips the gain (symmetric domains).
    pub additivity_gain: Option<f64>,
    /// Bound on the quadratic coefficient of `m(P_H)` against `log H`.
    pub max_quadratic: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { ratio_floor: 0.7, additivity_gain: Some(0.05), max_quadratic: 0.1 }
    }
}

impl Tolerances {
    pub fn for_fixture(symmetric: bool) -> Self {
        let t = Self::default();
        if symmetric {
            Self { additivity_gain: None, ..t }
        } else {
            t
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Bound,
    Asymptotics,
    LowerBound,
    Grotzsch,
    Additivity,
    Growth,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Bound => "bound",
            Claim::Asymptotics => "asymptotics",
            Claim::LowerBound => "lower_bound",
            Claim::Grotzsch => "grotzsch",
            Claim::Additivity => "additivity",
            Claim::Growth => "growth",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub passed: bool,
    /// Signed distance to failure (positive when passing).
    pub margin: f64,
    pub detail: String,
}

impl Verdict {
    pub fn summary(&self) -> String {
        format!(
            "{:<12} {}  margin {:+.4e}  {}",
            self.claim.name(),
            if self.passed { "PASS" } else { "FAIL" },
            self.margin,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub config_hash: String,
    pub solver: Option<SolverOptions>,
    pub tolerances: Tolerances,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<SweepRecord>,
    pub verdicts: Vec<Verdict>,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, claim: Claim) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }

    pub fn csv(&self) -> String {
        sweep_csv(&self.records)
    }
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// SHA-256 (hex) of any serialisable value, via its JSON form.
pub fn config_hash(value: &impl Serialize) -> String {
    let json = serde_json::to_vec(value).expect("serialisable");
    Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash identifying a sweep: boundary samples, H list and solver options.
pub fn sweep_hash(dom: &ChannelDomain, h_list: &[f64], opts: &SolverOptions) -> String {
    let samples: Vec<Vec<[f64; 2]>> = [dom.outer_upper(), dom.outer_lower(), dom.inner_upper(), dom.inner_lower()]
        .iter()
        .map(|f| f.samples())
        .collect();
    config_hash(&(samples, h_list, opts))
}

/// Check the claims on a set of sweep rows (ordered by `H`).
pub fn check_theorem(
    records: &[SweepRecord],
    tol: &Tolerances,
    provenance_hash: String,
    solver: Option<SolverOptions>,
) -> Result<VerificationReport, VerifyError> {
    let ok: Vec<&SweepRecord> = records.iter().filter(|r| r.is_ok()).collect();
    let span = match (ok.first(), ok.last()) {
        (Some(a), Some(b)) => b.h / a.h,
        _ => 0.0,
    };
    if ok.len() < 3 || span < 8.0 {
        return Err(VerifyError::InsufficientSpan { rows: ok.len(), span });
    }
    let failed = records.len() - ok.len();
    let fail_note = if failed > 0 { format!("; {failed} row(s) failed to solve") } else { String::new() };
    let all_rows = failed == 0;
    let min_over = |f: &dyn Fn(&SweepRecord) -> f64| ok.iter().map(|r| f(r)).fold(f64::INFINITY, f64::min);

    let mut verdicts = Vec::new();

    let m = min_over(&|r| 1.0 + r.eps_disc - r.ratio);
    verdicts.push(Verdict {
        claim: Claim::Bound,
        passed: m >= 0.0 && all_rows,
        margin: m,
        detail: format!("max ratio {:.6}{fail_note}", ok.iter().map(|r| r.ratio).fold(f64::MIN, f64::max)),
    });

    let (first, last) = (ok[0], ok[ok.len() - 1]);
    let steps = ok.windows(2).map(|w| w[1].ratio - w[0].ratio).fold(f64::INFINITY, f64::min);
    let m = (last.ratio - tol.ratio_floor).min(steps);
    verdicts.push(Verdict {
        claim: Claim::Asymptotics,
        passed: last.ratio >= tol.ratio_floor && steps > 0.0 && all_rows,
        margin: m,
        detail: format!(
            "ratio {:.6} at H={} -> {:.6} at H={} (floor {}), smallest step {:+.3e}{fail_note}",
            first.ratio, first.h, last.ratio, last.h, tol.ratio_floor, steps
        ),
    });

    let m = min_over(&|r| r.m_q / (r.gamma * r.h) - (1.0 - r.eps_disc));
    verdicts.push(Verdict {
        claim: Claim::LowerBound,
        passed: m >= 0.0 && all_rows,
        margin: m,
        detail: format!("min m_Q/(gamma H) {:.6}{fail_note}", min_over(&|r| r.m_q / (r.gamma * r.h))),
    });

    let m = min_over(&|r| r.grotzsch_gap / (r.m_q + r.m_p) + r.eps_disc);
    verdicts.push(Verdict {
        claim: Claim::Grotzsch,
        passed: m >= 0.0 && all_rows,
        margin: m,
        detail: format!("min gap {:.6}{fail_note}", min_over(&|r| r.grotzsch_gap)),
    });

    let steps = ok.windows(2).map(|w| w[1].additivity_ratio - w[0].additivity_ratio).fold(f64::INFINITY, f64::min);
    let gain = last.additivity_ratio - first.additivity_ratio;
    let (passed, margin, req) = match tol.additivity_gain {
        Some(g) => (steps > 0.0 && gain >= g, steps.min(gain - g), format!(" (required {g})")),
        None => (steps > 0.0, steps, String::new()),
    };
    verdicts.push(Verdict {
        claim: Claim::Additivity,
        passed: passed && all_rows,
        margin,
        detail: format!(
            "{:.6} -> {:.6}, gain {:.4}{req}, smallest step {:+.3e}{fail_note}",
            first.additivity_ratio, last.additivity_ratio, gain, steps
        ),
    });

    let xs: Vec<f64> = ok.iter().map(|r| r.h.ln()).collect();
    let ys: Vec<f64> = ok.iter().map(|r| r.m_p).collect();
    let slope = polyfit(&xs, &ys, 1)[1];
    let quad = polyfit(&xs, &ys, 2)[2];
    let bound = ok.iter().map(|r| r.mp_over_log_h).filter(|v| v.is_finite()).fold(f64::MIN, f64::max);
    verdicts.push(Verdict {
        claim: Claim::Growth,
        passed: slope > 0.0 && quad.abs() <= tol.max_quadratic && all_rows,
        margin: slope.min(tol.max_quadratic - quad.abs()),
        detail: format!("slope {slope:.4}, quadratic {quad:+.4}, sup m_P/log H {bound:.4}{fail_note}"),
    });

    Ok(VerificationReport {
        records: records.to_vec(),
        verdicts,
        provenance: Provenance { config_hash: provenance_hash, solver, tolerances: *tol, note: CALIBRATION_NOTE },
    })
}

/// Least-squares polynomial coefficients, lowest degree first.
pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Vec<f64> {
    let n = degree + 1;
    // Normal equations; the sweeps are short and well conditioned in log H.
    let mut a = vec![vec![0.0; n + 1]; n];
    for (&x, &y) in xs.iter().zip(ys) {
        let pows: Vec<f64> = (0..n).map(|k| x.powi(k as i32)).collect();
        for i in 0..n {
            for j in 0..n {
                a[i][j] += pows[i] * pows[j];
            }
            a[i][n] += pows[i] * y;
        }
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        let pivot_row = a[col].clone();
        for (row, r) in a.iter_mut().enumerate() {
            if row != col {
                let f = r[col] / pivot_row[col];
                for (x, p) in r[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilatationRow {
    #[serde(rename = "H")]
    pub h: f64,
    /// `k = 𝔞/√(𝔞² + 4H²)`.
    pub k: f64,
    #[serde(rename = "K")]
    pub big_k: f64,
    /// Modulus ratios a `K`-quasiconformal map can produce: `[1/K, K]`.
    pub envelope: [f64; 2],
    /// `K(H) ≤ K(1)`, checked for `H ≥ 1`.
    pub within_k1: bool,
}

/// `K(H)` of the straightening shear for each `H`.
pub fn dilatation_audit(p: &ShearParams, h_list: &[f64]) -> Vec<DilatationRow> {
    let k1 = shear_dilatation(p, StretchFactor::new(1.0).expect("positive"));
    h_list
        .iter()
        .filter_map(|&h| StretchFactor::new(h).ok())
        .map(|h| {
            let big_k = shear_dilatation(p, h);
            let hv = h.value();
            DilatationRow {
                h: hv,
                k: (big_k - 1.0) / (big_k + 1.0),
                big_k,
                envelope: [1.0 / big_k, big_k],
                within_k1: hv < 1.0 || big_k <= k1 * (1.0 + 1e-15),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rows satisfying every claim for ratio `1 − 1/H`: additivity
    /// `1 − 0.4/H`, `m_P = 0.1 + 0.1 log H`.
    pub(crate) fn synthetic(ratio: impl Fn(f64) -> f64) -> Vec<SweepRecord> {
        [4.0, 8.0, 16.0, 32.0, 64.0]
            .iter()
            .map(|&h: &f64| {
                let g = 1.0;
                let mo = ratio(h) / (g * h);
                let mp = 0.1 + 0.1 * h.ln();
                let total = (1.0 - 0.4 / h) / mo;
                let mq = total - mp;
                SweepRecord::from_moduli(h, g, (mo, 0.0), (mq, 0.0), (mp, 0.0), DISC_SLACK)
            })
            .collect()
    }

    #[test]
    fn synthetic_rows_pass() {
        let rep = check_theorem(&synthetic(|h| 1.0 - 1.0 / h), &Tolerances::default(), "x".into(), None).unwrap();
        for v in &rep.verdicts {
            assert!(v.passed, "{}", v.summary());
        }
    }

    #[test]
    fn ratio_above_one_fails_bound() {
        let rep = check_theorem(&synthetic(|_| 1.2), &Tolerances::default(), "x".into(), None).unwrap();
        assert!(!rep.verdict(Claim::Bound).unwrap().passed);
    }

    #[test]
    fn short_span_is_rejected() {
        let rows = synthetic(|h| 1.0 - 1.0 / h);
        assert!(matches!(
            check_theorem(&rows[..2], &Tolerances::default(), "x".into(), None),
            Err(VerifyError::InsufficientSpan { .. })
        ));
        assert!(check_theorem(&rows[2..], &Tolerances::default(), "x".into(), None).is_err());
    }

    #[test]
    fn failed_rows_fail_verdicts() {
        let mut rows = synthetic(|h| 1.0 - 1.0 / h);
        rows.push(SweepRecord::failed(128.0, 1.0, "boom".into()));
        let rep = check_theorem(&rows, &Tolerances::default(), "x".into(), None).unwrap();
        assert!(!rep.all_passed());
        assert!(rep.csv().lines().last().unwrap().starts_with("128,NaN"));
    }

    #[test]
    fn polyfit_recovers_quadratic() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - 2.0 * x + 0.5 * x * x).collect();
        let c = polyfit(&xs, &ys, 2);
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] + 2.0).abs() < 1e-12 && (c[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn csv_header_and_row_shape() {
        let csv = sweep_csv(&synthetic(|h| 1.0 - 1.0 / h));
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert!(lines.all(|l| l.split(',').count() == 11));
    }

    #[test]
    fn dilatation_envelope() {
        let flat = ShearParams::identity(0.0, 1.0);
        assert!(dilatation_audit(&flat, &[1.0, 10.0]).iter().all(|r| r.big_k == 1.0 && r.envelope == [1.0, 1.0]));
        let p = ShearParams { a: [1.0, 0.0, 0.0], ..flat };
        let rows = dilatation_audit(&p, &[1.0, 10.0, 100.0, 1000.0]);
        assert!(rows.iter().all(|r| r.within_k1 && r.envelope[0] <= 1.0 && r.envelope[1] >= 1.0));
        let big = dilatation_audit(&p, &[500.0, 1000.0]);
        assert!((big[0].k / big[1].k - 2.0).abs() < 1e-5);
    }
}
