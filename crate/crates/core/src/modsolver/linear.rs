//! Symmetric positive definite sparse solves.

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use super::SolverError;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinearSolver {
    /// Sparse Cholesky factorisation with a fill-reducing ordering.
    #[default]
    Cholesky,
    /// Jacobi-preconditioned conjugate gradients; stops at relative residual
    /// `tol` or fails after `max_iters` (default `50·√N`).
    Cg { tol: f64, max_iters: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SolveStats {
    pub iterations: usize,
    /// `‖Ax − b‖ / ‖b‖`.
    pub residual: f64,
}

/// Symmetric matrix in compressed rows, both triangles stored.
#[derive(Debug, Clone)]
pub struct SymCsr {
    pub n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SymCsr {
    /// From a diagonal and a list of off-diagonal couplings `(i, j, a_ij)`
    /// with `i != j`, each unordered pair listed once.
    pub fn from_couplings(diag: &[f64], off: &[(u32, u32, f64)]) -> Self {
        let n = diag.len();
        let mut count = vec![1usize; n];
        for &(i, j, _) in off {
            count[i as usize] += 1;
            count[j as usize] += 1;
        }
        let mut row_ptr = vec![0usize; n + 1];
        for i in 0..n {
            row_ptr[i + 1] = row_ptr[i] + count[i];
        }
        let nnz = row_ptr[n];
        let mut cols = vec![0u32; nnz];
        let mut vals = vec![0.0; nnz];
        let mut fill = row_ptr[..n].to_vec();
        for i in 0..n {
            cols[fill[i]] = i as u32;
            vals[fill[i]] = diag[i];
            fill[i] += 1;
        }
        for &(i, j, v) in off {
            let (iu, ju) = (i as usize, j as usize);
            cols[fill[iu]] = j;
            vals[fill[iu]] = v;
            fill[iu] += 1;
            cols[fill[ju]] = i;
            vals[fill[ju]] = v;
            fill[ju] += 1;
        }
        Self { n, row_ptr, cols, vals }
    }

    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            let r = self.row_ptr[i]..self.row_ptr[i + 1];
            *yi = self.vals[r.clone()].iter().zip(&self.cols[r]).map(|(v, &c)| v * x[c as usize]).sum();
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.vals[self.row_ptr[i]]).collect()
    }

    fn triplets(&self) -> Vec<Triplet<usize, usize, f64>> {
        let mut t = Vec::with_capacity(self.vals.len());
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                t.push(Triplet::new(i, self.cols[k] as usize, self.vals[k]));
            }
        }
        t
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(a: &SymCsr, x: &[f64], b: &[f64]) -> f64 {
    let mut ax = vec![0.0; a.n];
    a.mul(x, &mut ax);
    let r: Vec<f64> = ax.iter().zip(b).map(|(p, q)| p - q).collect();
    let nb = norm(b);
    if nb == 0.0 {
        norm(&r)
    } else {
        norm(&r) / nb
    }
}

pub fn solve_spd(a: &SymCsr, b: &[f64], solver: LinearSolver) -> Result<(Vec<f64>, SolveStats), SolverError> {
    match solver {
        LinearSolver::Cholesky => cholesky(a, b),
        LinearSolver::Cg { tol, max_iters } => {
            let cap = max_iters.unwrap_or_else(|| (50.0 * (a.n as f64).sqrt()).ceil() as usize).max(1);
            pcg(a, b, tol, cap)
        }
    }
}

fn cholesky(a: &SymCsr, b: &[f64]) -> Result<(Vec<f64>, SolveStats), SolverError> {
    let n = a.n;
    let m = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &a.triplets())
        .map_err(|e| SolverError::Factorization(format!("{e:?}")))?;
    let llt = m.sp_cholesky(Side::Lower).map_err(|e| SolverError::Factorization(format!("{e:?}")))?;
    let rhs = Mat::<f64>::from_fn(n, 1, |i, _| b[i]);
    let sol = llt.solve(&rhs);
    let x: Vec<f64> = (0..n).map(|i| sol[(i, 0)]).collect();
    let res = residual(a, &x, b);
    if !res.is_finite() {
        return Err(SolverError::Factorization("non-finite solution".into()));
    }
    Ok((x, SolveStats { iterations: 1, residual: res }))
}

fn pcg(a: &SymCsr, b: &[f64], tol: f64, max_iters: usize) -> Result<(Vec<f64>, SolveStats), SolverError> {
    let n = a.n;
    let dinv: Vec<f64> = a.diagonal().iter().map(|d| 1.0 / d).collect();
    let nb = norm(b);
    let mut x = vec![0.0; n];
    if nb == 0.0 {
        return Ok((x, SolveStats { iterations: 0, residual: 0.0 }));
    }
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&dinv).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    for it in 1..=max_iters {
        a.mul(&p, &mut ap);
        let alpha = rz / p.iter().zip(&ap).map(|(a, b)| a * b).sum::<f64>();
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rel = norm(&r) / nb;
        if rel <= tol {
            return Ok((x, SolveStats { iterations: it, residual: rel }));
        }
        for i in 0..n {
            z[i] = r[i] * dinv[i];
        }
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(SolverError::Divergence { iterations: max_iters, residual: norm(&r) / nb })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> (SymCsr, Vec<f64>) {
        // Path graph between u = 0 (left) and u = 1 (right) with unit links.
        let diag = vec![2.0; n];
        let off: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1, -1.0)).collect();
        let mut b = vec![0.0; n];
        b[n - 1] = 1.0;
        (SymCsr::from_couplings(&diag, &off), b)
    }

    #[test]
    fn cholesky_and_cg_agree_on_chain() {
        let (a, b) = chain(50);
        let (x1, s1) = solve_spd(&a, &b, LinearSolver::Cholesky).unwrap();
        let (x2, s2) = solve_spd(&a, &b, LinearSolver::Cg { tol: 1e-12, max_iters: Some(1000) }).unwrap();
        assert!(s1.residual < 1e-12 && s2.residual <= 1e-12);
        for (k, (p, q)) in x1.iter().zip(&x2).enumerate() {
            let exact = (k + 1) as f64 / 51.0;
            assert!((p - exact).abs() < 1e-12 && (q - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn cg_reports_divergence_when_capped() {
        let (a, b) = chain(200);
        let err = solve_spd(&a, &b, LinearSolver::Cg { tol: 1e-14, max_iters: Some(3) }).unwrap_err();
        assert!(matches!(err, SolverError::Divergence { iterations: 3, .. }));
    }
}
