//! Lawson-Hanson active-set solver for `min |A x - b|_2` subject to `x >= 0`.

use nalgebra::{DMatrix, DVector};

/// Ridge added to passive-set subproblems that are numerically rank deficient.
pub const RIDGE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct NnlsResult {
    pub x: Vec<f64>,
    /// Largest violation of the KKT conditions, relative to `|A| |b|`.
    pub kkt_residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

fn passive_solve(a: &DMatrix<f64>, b: &DVector<f64>, cols: &[usize], warnings: &mut Vec<String>) -> Vec<f64> {
    let m = a.nrows();
    let k = cols.len();
    let sub = DMatrix::from_fn(m, k, |i, j| a[(i, cols[j])]);
    let qr = sub.clone().qr();
    let r = qr.r();
    let dmax = (0..k).map(|j| r[(j, j)].abs()).fold(0.0f64, f64::max);
    let dmin = (0..k).map(|j| r[(j, j)].abs()).fold(f64::INFINITY, f64::min);
    if k > 0 && dmin > 1e-10 * dmax {
        let qtb = qr.q().tr_mul(b);
        if let Some(x) = r.solve_upper_triangular(&qtb) {
            return x.as_slice().to_vec();
        }
    }
    let msg = format!("rank-deficient least-squares subproblem; ridge {RIDGE} applied");
    if !warnings.contains(&msg) {
        warnings.push(msg);
    }
    // [A; sqrt(ridge) I] x = [b; 0]
    let lam = RIDGE.sqrt() * dmax.max(1.0);
    let aug = DMatrix::from_fn(m + k, k, |i, j| if i < m { sub[(i, j)] } else if i - m == j { lam } else { 0.0 });
    let mut rhs = DVector::zeros(m + k);
    rhs.rows_mut(0, m).copy_from(b);
    let qr = aug.qr();
    let x = qr.r().solve_upper_triangular(&qr.q().tr_mul(&rhs)).unwrap_or_else(|| DVector::zeros(k));
    x.as_slice().to_vec()
}

pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>, max_iter: usize) -> NnlsResult {
    let n = a.ncols();
    let scale = a.norm().max(1e-300) * b.norm().max(1e-300);
    let tol = 1e-13 * scale;
    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    let mut warnings = Vec::new();
    let mut iterations = 0;
    let gradient = |x: &[f64]| -> Vec<f64> {
        let r = b - a * DVector::from_column_slice(x);
        a.tr_mul(&r).as_slice().to_vec()
    };
    let mut converged = false;
    'outer: while iterations < max_iter {
        let w = gradient(&x);
        let cand = (0..n).filter(|&j| !passive[j] && w[j] > tol).max_by(|&i, &j| w[i].partial_cmp(&w[j]).unwrap());
        let Some(j) = cand else {
            converged = true;
            break;
        };
        passive[j] = true;
        loop {
            iterations += 1;
            if iterations > max_iter {
                break 'outer;
            }
            let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let s = passive_solve(a, b, &cols, &mut warnings);
            if s.iter().all(|v| *v > 0.0) {
                for (k, &c) in cols.iter().enumerate() {
                    x[c] = s[k];
                }
                break;
            }
            // step toward s until the first passive variable hits zero
            let mut alpha = 1.0f64;
            let mut blocking = cols[0];
            for (k, &c) in cols.iter().enumerate() {
                if s[k] <= 0.0 {
                    let a = x[c] / (x[c] - s[k]);
                    if a < alpha {
                        alpha = a;
                        blocking = c;
                    }
                }
            }
            let xmax = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (k, &c) in cols.iter().enumerate() {
                x[c] += alpha * (s[k] - x[c]);
                if c == blocking || x[c] <= 1e-15 * xmax {
                    x[c] = 0.0;
                    passive[c] = false;
                }
            }
            if cols.iter().all(|&c| !passive[c]) {
                break;
            }
        }
    }
    let w = gradient(&x);
    let kkt = (0..n)
        .map(|j| if x[j] > 0.0 { w[j].abs() } else { w[j].max(0.0) })
        .fold(0.0f64, f64::max)
        / scale;
    NnlsResult { x, kkt_residual: kkt, iterations, converged, warnings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unconstrained_optimum_is_kept() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let r = nnls(&a, &b, 100);
        assert!((r.x[0] - 1.0).abs() < 1e-12 && (r.x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn negative_direction_is_clamped() {
        let a = DMatrix::identity(2, 2);
        let b = DVector::from_vec(vec![-1.0, 2.0]);
        let r = nnls(&a, &b, 100);
        assert_eq!(r.x[0], 0.0);
        assert!((r.x[1] - 2.0).abs() < 1e-14);
        assert!(r.kkt_residual < 1e-12);
    }

    #[test]
    fn duplicate_columns_trigger_ridge() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, 1.0]);
        let r = nnls(&a, &b, 100);
        assert!(((&a * DVector::from_vec(r.x.clone())) - &b).norm() < 1e-6);
    }

    proptest! {
        #[test]
        fn kkt_holds(seed in proptest::collection::vec(-1.0f64..1.0, 40)) {
            let a = DMatrix::from_fn(8, 4, |i, j| seed[i * 4 + j]);
            let b = DVector::from_fn(8, |i, _| seed[32 + i]);
            let r = nnls(&a, &b, 200);
            prop_assert!(r.converged);
            prop_assert!(r.x.iter().all(|v| *v >= 0.0));
            prop_assert!(r.kkt_residual < 1e-9, "{}", r.kkt_residual);
        }
    }
}
