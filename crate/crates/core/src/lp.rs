//! Mehrotra predictor-corrector interior-point method for
//! `min c'x  s.t.  G x <= h, x >= 0`.
//!
//! The constraint matrix is only touched through [`LpOperator`], so structured
//! problems can supply their own products and normal matrix `G' D G`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

pub trait LpOperator {
    fn cols(&self) -> usize;
    fn rows(&self) -> usize;
    /// `out = G x`.
    fn apply(&self, x: &[f64], out: &mut [f64]);
    /// `out = G' z`.
    fn apply_t(&self, z: &[f64], out: &mut [f64]);
    /// `G' diag(d) G`.
    fn normal(&self, d: &[f64]) -> DMatrix<f64>;
}

pub struct DenseLp {
    pub g: DMatrix<f64>,
}

impl LpOperator for DenseLp {
    fn cols(&self) -> usize {
        self.g.ncols()
    }
    fn rows(&self) -> usize {
        self.g.nrows()
    }
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let y = &self.g * DVector::from_column_slice(x);
        out.copy_from_slice(y.as_slice());
    }
    fn apply_t(&self, z: &[f64], out: &mut [f64]) {
        let y = self.g.tr_mul(&DVector::from_column_slice(z));
        out.copy_from_slice(y.as_slice());
    }
    fn normal(&self, d: &[f64]) -> DMatrix<f64> {
        let mut scaled = self.g.clone();
        for (i, mut row) in scaled.row_iter_mut().enumerate() {
            row *= d[i].sqrt();
        }
        scaled.tr_mul(&scaled)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpStatus {
    Optimal,
    MaxIter,
    InfeasibleNumerics,
}

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { gap_tol: 1e-8, feas_tol: 1e-9, max_iter: 200 }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    /// Multipliers of `G x <= h`.
    pub z: Vec<f64>,
    pub objective: f64,
    pub status: LpStatus,
    pub iterations: usize,
    pub gap: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, a| m.max(a.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest step in `(0, 1]` keeping `v + a dv >= 0`.
fn max_step(v: &[f64], dv: &[f64]) -> f64 {
    v.iter().zip(dv).filter(|(_, d)| **d < 0.0).fold(1.0f64, |a, (x, d)| a.min(-x / d))
}

struct Iterate {
    x: Vec<f64>,
    // slacks and multipliers of G x <= h, then of -x <= 0
    s: Vec<f64>,
    z: Vec<f64>,
    sx: Vec<f64>,
    zx: Vec<f64>,
}

pub fn solve_lp<O: LpOperator>(op: &O, c: &[f64], h: &[f64], opts: &LpOptions) -> LpSolution {
    let n = op.cols();
    let m = op.rows();
    assert_eq!(c.len(), n);
    assert_eq!(h.len(), m);
    let scale_c = 1.0 + norm_inf(c);
    let scale_h = 1.0 + norm_inf(h);

    let mut gx = vec![0.0; m];
    let x0 = vec![1.0; n];
    op.apply(&x0, &mut gx);
    let shift = (0..m).map(|i| gx[i] - h[i]).fold(0.0f64, f64::max);
    let mut it = Iterate {
        s: (0..m).map(|i| (h[i] - gx[i] + shift).max(1.0)).collect(),
        z: vec![1.0; m],
        sx: vec![1.0; n],
        zx: vec![1.0; n],
        x: x0,
    };
    let total = (m + n) as f64;

    let mut gtz = vec![0.0; n];
    let mut status = LpStatus::MaxIter;
    let mut best: Option<(f64, LpSolution)> = None;
    let mut iterations = 0;
    for iter in 0..opts.max_iter {
        iterations = iter + 1;
        op.apply(&it.x, &mut gx);
        op.apply_t(&it.z, &mut gtz);
        // dual: c + G'z - zx = 0; primal: G x + s - h = 0, -x + sx = 0
        let rd: Vec<f64> = (0..n).map(|j| c[j] + gtz[j] - it.zx[j]).collect();
        let rp: Vec<f64> = (0..m).map(|i| gx[i] + it.s[i] - h[i]).collect();
        let rpx: Vec<f64> = (0..n).map(|j| -it.x[j] + it.sx[j]).collect();
        let mu = (dot(&it.s, &it.z) + dot(&it.sx, &it.zx)) / total;
        let pobj = dot(c, &it.x);
        let dobj = -dot(h, &it.z);
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs());
        let pres = norm_inf(&rp).max(norm_inf(&rpx)) / scale_h;
        let dres = norm_inf(&rd) / scale_c;

        let snapshot = |status| LpSolution {
            x: it.x.clone(),
            z: it.z.clone(),
            objective: pobj,
            status,
            iterations: iter + 1,
            gap,
            primal_residual: pres,
            dual_residual: dres,
        };
        let merit = gap.max(pres).max(dres);
        if best.as_ref().map_or(true, |(b, _)| merit < *b) {
            best = Some((merit, snapshot(LpStatus::MaxIter)));
        }
        if gap <= opts.gap_tol && pres <= opts.feas_tol && dres <= opts.feas_tol {
            status = LpStatus::Optimal;
            best = Some((merit, snapshot(LpStatus::Optimal)));
            break;
        }

        let d: Vec<f64> = (0..m).map(|i| it.z[i] / it.s[i]).collect();
        let dx: Vec<f64> = (0..n).map(|j| it.zx[j] / it.sx[j]).collect();
        let mut normal = op.normal(&d);
        for j in 0..n {
            normal[(j, j)] += dx[j];
        }
        let diag_max = (0..n).map(|j| normal[(j, j)]).fold(0.0f64, f64::max).max(1e-300);
        let chol = match normal.clone().cholesky() {
            Some(ch) => ch,
            None => {
                for j in 0..n {
                    normal[(j, j)] += 1e-14 * diag_max;
                }
                match normal.cholesky() {
                    Some(ch) => ch,
                    None => {
                        status = LpStatus::InfeasibleNumerics;
                        break;
                    }
                }
            }
        };

        // Solves the Newton system for complementarity targets rc (rows) and
        // rcx (bounds): Z ds + S dz = -rc.
        let newton = |rc: &[f64], rcx: &[f64]| {
            // dz = D (G dx + rp - rc / z), dzx = Dx (-dx + rpx - rcx / zx)
            let t: Vec<f64> = (0..m).map(|i| d[i] * (rp[i] - rc[i] / it.z[i])).collect();
            let tx: Vec<f64> = (0..n).map(|j| dx[j] * (rpx[j] - rcx[j] / it.zx[j])).collect();
            let mut gt = vec![0.0; n];
            op.apply_t(&t, &mut gt);
            // G' dz - dzx = -rd
            let rhs: Vec<f64> = (0..n).map(|j| -rd[j] - gt[j] + tx[j]).collect();
            let step_x = chol.solve(&DVector::from_vec(rhs));
            let step_x: Vec<f64> = step_x.as_slice().to_vec();
            let mut g_dx = vec![0.0; m];
            op.apply(&step_x, &mut g_dx);
            let dz: Vec<f64> = (0..m).map(|i| d[i] * g_dx[i] + t[i]).collect();
            let dzx: Vec<f64> = (0..n).map(|j| -dx[j] * step_x[j] + tx[j]).collect();
            let ds: Vec<f64> = (0..m).map(|i| (-rc[i] - it.s[i] * dz[i]) / it.z[i]).collect();
            let dsx: Vec<f64> = (0..n).map(|j| (-rcx[j] - it.sx[j] * dzx[j]) / it.zx[j]).collect();
            (step_x, ds, dz, dsx, dzx)
        };

        let rc: Vec<f64> = (0..m).map(|i| it.s[i] * it.z[i]).collect();
        let rcx: Vec<f64> = (0..n).map(|j| it.sx[j] * it.zx[j]).collect();
        let (_, ds_a, dz_a, dsx_a, dzx_a) = newton(&rc, &rcx);
        let ap = max_step(&it.s, &ds_a).min(max_step(&it.sx, &dsx_a));
        let ad = max_step(&it.z, &dz_a).min(max_step(&it.zx, &dzx_a));
        let mu_aff = ((0..m).map(|i| (it.s[i] + ap * ds_a[i]) * (it.z[i] + ad * dz_a[i])).sum::<f64>()
            + (0..n).map(|j| (it.sx[j] + ap * dsx_a[j]) * (it.zx[j] + ad * dzx_a[j])).sum::<f64>())
            / total;
        let sigma = (mu_aff / mu).powi(3).clamp(0.0, 1.0);
        let rc: Vec<f64> = (0..m).map(|i| it.s[i] * it.z[i] + ds_a[i] * dz_a[i] - sigma * mu).collect();
        let rcx: Vec<f64> = (0..n).map(|j| it.sx[j] * it.zx[j] + dsx_a[j] * dzx_a[j] - sigma * mu).collect();
        let (dxs, ds, dz, dsx, dzx) = newton(&rc, &rcx);
        let ap = (0.99 * max_step(&it.s, &ds).min(max_step(&it.sx, &dsx))).min(1.0);
        let ad = (0.99 * max_step(&it.z, &dz).min(max_step(&it.zx, &dzx))).min(1.0);
        for j in 0..n {
            it.x[j] += ap * dxs[j];
            it.sx[j] += ap * dsx[j];
            it.zx[j] += ad * dzx[j];
        }
        for i in 0..m {
            it.s[i] += ap * ds[i];
            it.z[i] += ad * dz[i];
        }
        if it.x.iter().chain(&it.z).any(|v| !v.is_finite()) {
            status = LpStatus::InfeasibleNumerics;
            break;
        }
    }
    let (_, mut sol) = best.expect("at least one iterate");
    if status != LpStatus::Optimal {
        sol.status = status;
    }
    sol.iterations = iterations;
    sol
}
