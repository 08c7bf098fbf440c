//! Best passive approximation of a target response on a set of intervals:
//! minimize the weighted `L^2` or `L^inf` distance between a target `F` and
//! the boundary values of the spline ansatz over nonnegative coefficients.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::f64::consts::PI;

use crate::bounds::{metamaterial_bound, BandSpec, BoundReport};
use crate::error::{Error, Result};
use crate::herglotz::{HerglotzFn, HerglotzRep};
use crate::lp::{solve_lp, LpOperator, LpOptions, LpStatus};
use crate::measures::MeasureSpec;
use crate::nnls::nnls;
use crate::splinehilbert::{ansatz_as_herglotz, ansatz_columns, ansatz_imag, ansatz_real, DensityAnsatz, SplineBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weight {
    #[default]
    Unit,
    InverseX,
}

impl Weight {
    pub fn at(&self, x: f64) -> f64 {
        match self {
            Weight::Unit => 1.0,
            Weight::InverseX => 1.0 / x.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    #[serde(rename = "2")]
    L2,
    #[serde(rename = "inf")]
    LInf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// `F(x) = slope x`.
    Linear { slope: f64 },
    /// Values at given points; these points become the sample grid.
    Samples { xs: Vec<f64>, re: Vec<f64>, im: Vec<f64> },
    /// Boundary values of a spline ansatz.
    Ansatz { ansatz: DensityAnsatz },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    #[default]
    Chebyshev,
    Uniform,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxProblem {
    /// Closed intervals `[lo, hi]`.
    pub omega: Vec<[f64; 2]>,
    pub target: Target,
    #[serde(default)]
    pub weight: Weight,
    pub p: Norm,
    pub basis: SplineBasis,
    pub sample_count: usize,
    #[serde(default)]
    pub sampling: Sampling,
    /// Whether the point mass at 0 is a free variable.
    #[serde(default = "default_true")]
    pub include_zeta0: bool,
    /// Locations `alpha > 0` of additional symmetric point-mass pairs at `+-alpha`.
    #[serde(default)]
    pub extra_masses: Vec<f64>,
}

/// Fraction of the band length by which the spline support extends past it.
pub const DEFAULT_MARGIN: f64 = 0.1;

impl ApproxProblem {
    /// `F(x) = eps_t x` on `omega0 [1 - B/2, 1 + B/2]`, inverse-x weight, `L^inf`,
    /// `count` splines of the given order on the band widened by the margin.
    pub fn metamaterial(eps_t: f64, band: BandSpec, count: usize, order: usize, sample_count: usize) -> Result<Self> {
        band.validate()?;
        let (lo, hi) = band.interval();
        let m = DEFAULT_MARGIN * (hi - lo);
        let basis = SplineBasis::uniform(order, (lo - m).max(0.5 * lo), hi + m, count)?;
        Ok(ApproxProblem {
            omega: vec![[lo, hi]],
            target: Target::Linear { slope: eps_t },
            weight: Weight::InverseX,
            p: Norm::LInf,
            basis,
            sample_count,
            sampling: Sampling::Chebyshev,
            include_zeta0: true,
            extra_masses: vec![],
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega.is_empty() {
            return Err(Error::Precondition("approximation domain is empty".into()));
        }
        let (slo, shi) = self.basis.support();
        for &[lo, hi] in &self.omega {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Precondition(format!("interval [{lo}, {hi}] is not a bounded interval")));
            }
            let covered = (slo <= lo && hi <= shi) || (slo <= -hi && -lo <= shi);
            if !covered {
                return Err(Error::Precondition(format!(
                    "spline support [{slo}, {shi}] does not cover [{lo}, {hi}] or its mirror image"
                )));
            }
        }
        if self.sample_count < 2 * self.omega.len() {
            return Err(Error::Precondition("need at least two samples per interval".into()));
        }
        if self.extra_masses.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::Precondition("extra point masses sit at alpha > 0".into()));
        }
        match &self.target {
            Target::Samples { xs, re, im } => {
                if xs.len() != re.len() || xs.len() != im.len() || xs.len() < 2 {
                    return Err(Error::Precondition("sampled target needs matching xs, re, im".into()));
                }
                if xs.iter().any(|x| !self.omega.iter().any(|[lo, hi]| lo <= x && x <= hi)) {
                    return Err(Error::Precondition("target sample outside the approximation domain".into()));
                }
            }
            Target::Ansatz { ansatz } => ansatz.validate()?,
            Target::Linear { slope } => {
                if !slope.is_finite() {
                    return Err(Error::Precondition("slope must be finite".into()));
                }
            }
        }
        Ok(())
    }

    /// Sample points and trapezoid weights.
    pub fn samples(&self) -> (Vec<f64>, Vec<f64>) {
        let mut xs = Vec::new();
        let mut q = Vec::new();
        if let Target::Samples { xs: given, .. } = &self.target {
            for &[lo, hi] in &self.omega {
                let mut pts: Vec<f64> = given.iter().copied().filter(|x| lo <= *x && *x <= hi).collect();
                pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                push_trapezoid(&pts, &mut xs, &mut q);
            }
            return (xs, q);
        }
        let total: f64 = self.omega.iter().map(|[lo, hi]| hi - lo).sum();
        for &[lo, hi] in &self.omega {
            let n = ((self.sample_count as f64 * (hi - lo) / total).round() as usize).max(2);
            let pts: Vec<f64> = (0..n)
                .map(|j| match self.sampling {
                    Sampling::Chebyshev => {
                        let c = (PI * j as f64 / (n - 1) as f64).cos();
                        0.5 * (lo + hi) - 0.5 * (hi - lo) * c
                    }
                    Sampling::Uniform => lo + (hi - lo) * j as f64 / (n - 1) as f64,
                })
                .collect();
            push_trapezoid(&pts, &mut xs, &mut q);
        }
        (xs, q)
    }

    fn target_at(&self, x: f64) -> Result<Complex64> {
        Ok(match &self.target {
            Target::Linear { slope } => Complex64::new(slope * x, 0.0),
            Target::Samples { xs, re, im } => {
                let k = xs.iter().position(|v| *v == x).expect("sample grid comes from the target");
                Complex64::new(re[k], im[k])
            }
            Target::Ansatz { ansatz } => Complex64::new(ansatz_real(ansatz, x)?, ansatz_imag(ansatz, x)),
        })
    }
}

fn push_trapezoid(pts: &[f64], xs: &mut Vec<f64>, q: &mut Vec<f64>) {
    let n = pts.len();
    for j in 0..n {
        let left = if j > 0 { pts[j] - pts[j - 1] } else { 0.0 };
        let right = if j + 1 < n { pts[j + 1] - pts[j] } else { 0.0 };
        xs.push(pts[j]);
        q.push(0.5 * (left + right));
    }
}

/// Columns: `zeta0` (if free), `zeta_1..zeta_N`, `b`, extra mass pairs.
#[derive(Debug, Clone)]
pub struct AffineSystem {
    pub xs: Vec<f64>,
    pub weights: Vec<f64>,
    pub quad: Vec<f64>,
    pub a_re: DMatrix<f64>,
    pub a_im: DMatrix<f64>,
    pub f_re: Vec<f64>,
    pub f_im: Vec<f64>,
    pub has_zeta0: bool,
    pub n_splines: usize,
    pub extra_masses: Vec<f64>,
}

impl AffineSystem {
    pub fn n_vars(&self) -> usize {
        self.a_re.ncols()
    }

    /// `h(x_i) - F(x_i)` for coefficient vector `c`.
    pub fn residuals(&self, c: &[f64]) -> Vec<Complex64> {
        let v = DVector::from_column_slice(c);
        let re = &self.a_re * &v;
        let im = &self.a_im * &v;
        (0..self.xs.len()).map(|i| Complex64::new(re[i] - self.f_re[i], im[i] - self.f_im[i])).collect()
    }

    pub fn objective(&self, c: &[f64], p: Norm) -> f64 {
        let r = self.residuals(c);
        weighted_norm(&r, &self.weights, &self.quad, p)
    }

    fn split(&self, c: &[f64]) -> (f64, Vec<f64>, f64, Vec<f64>) {
        let mut k = 0;
        let zeta0 = if self.has_zeta0 {
            k = 1;
            c[0]
        } else {
            0.0
        };
        let zeta = c[k..k + self.n_splines].to_vec();
        let b = c[k + self.n_splines];
        let extras = c[k + self.n_splines + 1..].to_vec();
        (zeta0, zeta, b, extras)
    }
}

pub fn assemble(problem: &ApproxProblem) -> Result<AffineSystem> {
    problem.validate()?;
    let (xs, quad) = problem.samples();
    let n = problem.basis.len();
    let nv = n + 1 + usize::from(problem.include_zeta0) + problem.extra_masses.len();
    let ns = xs.len();
    let mut a_re = DMatrix::zeros(ns, nv);
    let mut a_im = DMatrix::zeros(ns, nv);
    let mut f_re = Vec::with_capacity(ns);
    let mut f_im = Vec::with_capacity(ns);
    let mut weights = Vec::with_capacity(ns);
    for (i, &x) in xs.iter().enumerate() {
        if x == 0.0 && (problem.include_zeta0 || problem.weight == Weight::InverseX) {
            return Err(Error::Domain("sample at x = 0 with a 1/x term".into()));
        }
        if problem.extra_masses.iter().any(|a| (x.abs() - a).abs() == 0.0) {
            return Err(Error::Domain(format!("sample {x} sits on a point mass")));
        }
        let (re, im) = ansatz_columns(&problem.basis, x)?;
        let skip = usize::from(!problem.include_zeta0);
        for (j, (r, m)) in re.iter().zip(&im).skip(skip).enumerate() {
            a_re[(i, j)] = *r;
            a_im[(i, j)] = *m;
        }
        let base = re.len() - skip;
        for (k, alpha) in problem.extra_masses.iter().enumerate() {
            a_re[(i, base + k)] = 1.0 / (alpha - x) - 1.0 / (alpha + x);
        }
        let f = problem.target_at(x)?;
        f_re.push(f.re);
        f_im.push(f.im);
        weights.push(problem.weight.at(x));
    }
    Ok(AffineSystem {
        xs,
        weights,
        quad,
        a_re,
        a_im,
        f_re,
        f_im,
        has_zeta0: problem.include_zeta0,
        n_splines: n,
        extra_masses: problem.extra_masses.clone(),
    })
}

fn weighted_norm(r: &[Complex64], w: &[f64], quad: &[f64], p: Norm) -> f64 {
    match p {
        Norm::LInf => r.iter().zip(w).map(|(r, w)| w * r.norm()).fold(0.0, f64::max),
        Norm::L2 => r.iter().zip(w).zip(quad).map(|((r, w), q)| q * (w * r.norm()).powi(2)).sum::<f64>().sqrt(),
    }
}

/// Discrete weighted norm of residuals at sample points `xs`; `quad` holds the
/// quadrature weights used for `p = 2`.
pub fn error_norm(residuals: &[Complex64], xs: &[f64], weight: Weight, p: Norm, quad: &[f64]) -> Result<f64> {
    if residuals.len() != xs.len() || (p == Norm::L2 && quad.len() != xs.len()) {
        return Err(Error::Precondition("residuals, samples and weights differ in length".into()));
    }
    let w: Vec<f64> = xs.iter().map(|x| weight.at(*x)).collect();
    Ok(weighted_norm(residuals, &w, quad, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Number of half-planes approximating each modulus constraint.
    pub kgon: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { kgon: 64, tol: 1e-8, max_iter: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxSolution {
    pub coefficients: DensityAnsatz,
    /// `(alpha, mass)` of each extra pair at `+-alpha`.
    #[serde(default)]
    pub extra_masses: Vec<(f64, f64)>,
    pub achieved_error: f64,
    pub samples: Vec<f64>,
    pub residuals: Vec<Complex64>,
    pub solver_status: LpStatus,
    pub kkt_residual: f64,
    pub iterations: usize,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl ApproxSolution {
    pub fn herglotz(&self) -> Result<HerglotzFn> {
        let f = ansatz_as_herglotz(&self.coefficients)?;
        if self.extra_masses.iter().all(|(_, m)| *m == 0.0) {
            return Ok(f);
        }
        let HerglotzFn::Canonical { rep } = f else { unreachable!() };
        let pairs = self.extra_masses.iter().filter(|(_, m)| *m > 0.0).flat_map(|&(a, m)| [(a, m), (-a, m)]);
        let mu = rep.mu.add(&MeasureSpec::discrete(pairs));
        Ok(HerglotzFn::canonical(HerglotzRep::new(0.0, rep.b, mu)?))
    }
}

/// Rows `(i, k)`: `w_i (cos th_k Re r_i + sin th_k Im r_i) <= t`, written
/// as `cos th_k P_i c + sin th_k Q_i c - t <= w_i (cos th_k Re F_i + sin th_k Im F_i)`.
struct PolygonLp {
    p: DMatrix<f64>,
    q: DMatrix<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl PolygonLp {
    fn ns(&self) -> usize {
        self.p.nrows()
    }
    fn nv(&self) -> usize {
        self.p.ncols()
    }
}

impl LpOperator for PolygonLp {
    fn cols(&self) -> usize {
        self.nv() + 1
    }
    fn rows(&self) -> usize {
        self.ns() * self.cos.len()
    }
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let nv = self.nv();
        let c = DVector::from_column_slice(&x[..nv]);
        let t = x[nv];
        let pc = &self.p * &c;
        let qc = &self.q * &c;
        let k = self.cos.len();
        for i in 0..self.ns() {
            for j in 0..k {
                out[i * k + j] = self.cos[j] * pc[i] + self.sin[j] * qc[i] - t;
            }
        }
    }
    fn apply_t(&self, z: &[f64], out: &mut [f64]) {
        let k = self.cos.len();
        let ns = self.ns();
        let mut cz = DVector::zeros(ns);
        let mut sz = DVector::zeros(ns);
        let mut tz = 0.0;
        for i in 0..ns {
            for j in 0..k {
                let v = z[i * k + j];
                cz[i] += v * self.cos[j];
                sz[i] += v * self.sin[j];
                tz += v;
            }
        }
        let g = self.p.tr_mul(&cz) + self.q.tr_mul(&sz);
        out[..self.nv()].copy_from_slice(g.as_slice());
        out[self.nv()] = -tz;
    }
    fn normal(&self, d: &[f64]) -> DMatrix<f64> {
        let k = self.cos.len();
        let ns = self.ns();
        let nv = self.nv();
        let mut scc = vec![0.0; ns];
        let mut scs = vec![0.0; ns];
        let mut sss = vec![0.0; ns];
        let mut sc1 = DVector::zeros(ns);
        let mut ss1 = DVector::zeros(ns);
        let mut s11 = 0.0;
        for i in 0..ns {
            for j in 0..k {
                let v = d[i * k + j];
                let (c, s) = (self.cos[j], self.sin[j]);
                scc[i] += v * c * c;
                scs[i] += v * c * s;
                sss[i] += v * s * s;
                sc1[i] += v * c;
                ss1[i] += v * s;
                s11 += v;
            }
        }
        let scale_rows = |m: &DMatrix<f64>, s: &[f64]| {
            let mut out = m.clone();
            for (i, mut row) in out.row_iter_mut().enumerate() {
                row *= s[i];
            }
            out
        };
        let block = self.p.tr_mul(&scale_rows(&self.p, &scc))
            + self.q.tr_mul(&scale_rows(&self.q, &sss))
            + {
                let cross = self.p.tr_mul(&scale_rows(&self.q, &scs));
                &cross + cross.transpose()
            };
        let ct = -(self.p.tr_mul(&sc1) + self.q.tr_mul(&ss1));
        let mut n = DMatrix::zeros(nv + 1, nv + 1);
        n.view_mut((0, 0), (nv, nv)).copy_from(&block);
        for j in 0..nv {
            n[(j, nv)] = ct[j];
            n[(nv, j)] = ct[j];
        }
        n[(nv, nv)] = s11;
        n
    }
}

fn column_scales(a_re: &DMatrix<f64>, a_im: &DMatrix<f64>, w: &[f64]) -> Vec<f64> {
    (0..a_re.ncols())
        .map(|j| {
            let m = (0..a_re.nrows()).fold(0.0f64, |m, i| m.max(w[i] * a_re[(i, j)].abs()).max(w[i] * a_im[(i, j)].abs()));
            if m > 0.0 {
                m
            } else {
                1.0
            }
        })
        .collect()
}

pub fn solve(problem: &ApproxProblem, cfg: &SolverConfig) -> Result<ApproxSolution> {
    let sys = assemble(problem)?;
    solve_system(problem, &sys, cfg)
}

pub fn solve_system(problem: &ApproxProblem, sys: &AffineSystem, cfg: &SolverConfig) -> Result<ApproxSolution> {
    if cfg.kgon < 3 {
        return Err(Error::Precondition("the polygon needs at least 3 sides".into()));
    }
    let ns = sys.xs.len();
    let nv = sys.n_vars();
    let scales = column_scales(&sys.a_re, &sys.a_im, &sys.weights);
    let mut warnings = Vec::new();
    let (coeffs, status, kkt, iterations) = match problem.p {
        Norm::LInf => {
            let p = DMatrix::from_fn(ns, nv, |i, j| sys.weights[i] * sys.a_re[(i, j)] / scales[j]);
            let q = DMatrix::from_fn(ns, nv, |i, j| sys.weights[i] * sys.a_im[(i, j)] / scales[j]);
            let k = cfg.kgon;
            let cos: Vec<f64> = (0..k).map(|j| (2.0 * PI * j as f64 / k as f64).cos()).collect();
            let sin: Vec<f64> = (0..k).map(|j| (2.0 * PI * j as f64 / k as f64).sin()).collect();
            let mut h = Vec::with_capacity(ns * k);
            for i in 0..ns {
                let (fr, fi) = (sys.weights[i] * sys.f_re[i], sys.weights[i] * sys.f_im[i]);
                for j in 0..k {
                    h.push(cos[j] * fr + sin[j] * fi);
                }
            }
            let op = PolygonLp { p, q, cos, sin };
            let mut c = vec![0.0; nv + 1];
            c[nv] = 1.0;
            let opts = LpOptions { gap_tol: cfg.tol, feas_tol: cfg.tol.min(1e-9), max_iter: cfg.max_iter };
            let sol = solve_lp(&op, &c, &h, &opts);
            let x: Vec<f64> = (0..nv).map(|j| sol.x[j].max(0.0) / scales[j]).collect();
            let kkt = sol.gap.max(sol.primal_residual).max(sol.dual_residual);
            (x, sol.status, kkt, sol.iterations)
        }
        Norm::L2 => {
            let rows = 2 * ns;
            let sq: Vec<f64> = (0..ns).map(|i| sys.quad[i].sqrt() * sys.weights[i]).collect();
            let a = DMatrix::from_fn(rows, nv, |r, j| {
                let i = r / 2;
                let v = if r % 2 == 0 { sys.a_re[(i, j)] } else { sys.a_im[(i, j)] };
                sq[i] * v / scales[j]
            });
            let b = DVector::from_fn(rows, |r, _| {
                let i = r / 2;
                sq[i] * if r % 2 == 0 { sys.f_re[i] } else { sys.f_im[i] }
            });
            let r = nnls(&a, &b, cfg.max_iter.max(10 * nv));
            warnings.extend(r.warnings);
            let x: Vec<f64> = (0..nv).map(|j| r.x[j] / scales[j]).collect();
            let status = if r.converged { LpStatus::Optimal } else { LpStatus::MaxIter };
            (x, status, r.kkt_residual, r.iterations)
        }
    };
    let residuals = sys.residuals(&coeffs);
    let achieved_error = weighted_norm(&residuals, &sys.weights, &sys.quad, problem.p);
    let (zeta0, zeta, b, extras) = sys.split(&coeffs);
    let coefficients = DensityAnsatz::new(problem.basis.clone(), zeta, zeta0, b)?;
    Ok(ApproxSolution {
        coefficients,
        extra_masses: sys.extra_masses.iter().copied().zip(extras).collect(),
        achieved_error,
        samples: sys.xs.clone(),
        residuals,
        solver_status: status,
        kkt_residual: kkt,
        iterations,
        warnings,
    })
}

/// Achieved error of a metamaterial-type solution against the bound with
/// the solved `b` in place of `eps_inf`.
pub fn bound_gap_report(solution: &ApproxSolution, problem: &ApproxProblem) -> Result<BoundReport> {
    let Target::Linear { slope } = problem.target else {
        return Err(Error::Precondition("bound comparison needs a linear target".into()));
    };
    if problem.weight != Weight::InverseX || problem.p != Norm::LInf || problem.omega.len() != 1 {
        return Err(Error::Precondition("bound comparison needs one band, inverse-x weight and the L-inf norm".into()));
    }
    let [lo, hi] = problem.omega[0];
    if !(lo > 0.0) {
        return Err(Error::Precondition("band must lie on the positive axis".into()));
    }
    let omega0 = 0.5 * (lo + hi);
    let b_rel = (hi - lo) / omega0;
    let eps_inf = solution.coefficients.b;
    let bound = metamaterial_bound(slope, eps_inf, b_rel)?;
    let inputs = json!({ "eps_t": slope, "eps_inf": eps_inf, "B": b_rel, "omega0": omega0 });
    Ok(BoundReport::new("metamaterial", bound, inputs).with_achieved(solution.achieved_error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::positivity_violation;

    fn small_basis() -> SplineBasis {
        SplineBasis::uniform(3, 0.5, 2.5, 6).unwrap()
    }

    fn problem(target: Target, p: Norm) -> ApproxProblem {
        ApproxProblem {
            omega: vec![[1.0, 2.0]],
            target,
            weight: Weight::Unit,
            p,
            basis: small_basis(),
            sample_count: 40,
            sampling: Sampling::Chebyshev,
            include_zeta0: true,
            extra_masses: vec![],
        }
    }

    #[test]
    fn error_norm_examples() {
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(error_norm(&[z, z], &[1.0, 2.0], Weight::Unit, Norm::LInf, &[]).unwrap(), 0.0);
        let r = Complex64::new(3.0, 4.0);
        assert_eq!(error_norm(&[r], &[1.0], Weight::Unit, Norm::LInf, &[]).unwrap(), 5.0);
        let r = Complex64::new(1.0, 0.0);
        assert_eq!(error_norm(&[r], &[2.0], Weight::InverseX, Norm::LInf, &[]).unwrap(), 0.5);
    }

    #[test]
    fn assemble_without_splines() {
        let mut pr = problem(Target::Linear { slope: 1.0 }, Norm::LInf);
        pr.basis = SplineBasis::uniform(2, 0.5, 2.5, 1).unwrap();
        let sys = assemble(&pr).unwrap();
        // zeta0, zeta_1, b; with zeta_1 = 0 the residual is (b - 1) x - zeta0 / x
        let (z0, b) = (0.3, 1.7);
        let r = sys.residuals(&[z0, 0.0, b]);
        for (x, r) in sys.xs.iter().zip(&r) {
            assert!((r.re - ((b - 1.0) * x - z0 / x)).abs() < 1e-14 && r.im == 0.0);
        }
    }

    #[test]
    fn zero_target_residual_is_h_and_affine() {
        let pr = problem(Target::Linear { slope: 0.0 }, Norm::LInf);
        let sys = assemble(&pr).unwrap();
        let c: Vec<f64> = (0..sys.n_vars()).map(|j| 0.1 + 0.05 * j as f64).collect();
        let d = DensityAnsatz::new(pr.basis.clone(), c[1..7].to_vec(), c[0], c[7]).unwrap();
        let r = sys.residuals(&c);
        for (x, r) in sys.xs.iter().zip(&r) {
            let h = Complex64::new(ansatz_real(&d, *x).unwrap(), ansatz_imag(&d, *x));
            assert!((r - h).norm() < 1e-12);
        }
        let c2: Vec<f64> = c.iter().map(|v| 2.0 * v).collect();
        let zero = vec![0.0; c.len()];
        let (r2, r0) = (sys.residuals(&c2), sys.residuals(&zero));
        for i in 0..r.len() {
            assert!((r2[i] - 2.0 * r[i] + r0[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_target_gives_zero_solution() {
        let mut pr = problem(Target::Linear { slope: 0.0 }, Norm::LInf);
        pr.basis = SplineBasis::uniform(2, 0.5, 2.5, 1).unwrap();
        let s = solve(&pr, &SolverConfig::default()).unwrap();
        assert!(s.achieved_error < 1e-8, "{s:?}");
        assert!(s.coefficients.b < 1e-8 && s.coefficients.zeta0 < 1e-8);
    }

    #[test]
    fn recovers_a_passive_target() {
        let d = DensityAnsatz::new(small_basis(), vec![0.2, 0.0, 1.0, 0.5, 0.0, 0.3], 0.1, 0.7).unwrap();
        for p in [Norm::LInf, Norm::L2] {
            let pr = problem(Target::Ansatz { ansatz: d.clone() }, p);
            let s = solve(&pr, &SolverConfig::default()).unwrap();
            assert_eq!(s.solver_status, LpStatus::Optimal);
            assert!(s.achieved_error <= 1e-6, "{p:?}: {}", s.achieved_error);
            let f = s.herglotz().unwrap();
            assert!(positivity_violation(&f, &crate::herglotz::default_grid()) == 0.0);
        }
    }

    #[test]
    fn metamaterial_bound_holds() {
        let band = BandSpec::new(1.0, 0.1).unwrap();
        let pr = ApproxProblem::metamaterial(-2.0, band, 12, 4, 120).unwrap();
        let s = solve(&pr, &SolverConfig::default()).unwrap();
        let r = bound_gap_report(&s, &pr).unwrap();
        assert!(r.slack.unwrap() >= -1e-6, "{r:?}");
        assert!(bound_gap_report(&s, &problem(Target::Linear { slope: -2.0 }, Norm::L2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let pr = problem(Target::Linear { slope: -2.0 }, Norm::LInf);
        let s = serde_json::to_string(&pr).unwrap();
        assert!(s.contains("\"p\":\"inf\""));
        let back: ApproxProblem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, pr);
    }
}
