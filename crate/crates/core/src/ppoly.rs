//! Piecewise polynomials on a break-point partition, with exact integrals,
//! moments, Cauchy transforms and principal-value Hilbert transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

const FAR_FIELD_RATIO: f64 = 4.0;
const FAR_FIELD_TERMS: usize = 40;

/// Piece `i` lives on `[breaks[i], breaks[i+1]]`; its coefficients are in the
/// local variable `u = x - breaks[i]`, lowest degree first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewisePoly {
    breaks: Vec<f64>,
    coeffs: Vec<Vec<f64>>,
    #[serde(skip)]
    far: OnceLock<FarField>,
}

#[derive(Debug, Clone)]
struct FarField {
    center: f64,
    half_width: f64,
    moments: Vec<f64>,
}

impl PartialEq for PiecewisePoly {
    fn eq(&self, other: &Self) -> bool {
        self.breaks == other.breaks && self.coeffs == other.coeffs
    }
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<f64>, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if breaks.len() < 2 {
            return Err(Error::InvalidMeasure("piecewise polynomial needs at least two break points".into()));
        }
        if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidMeasure("break points must be finite and strictly increasing".into()));
        }
        if coeffs.len() != breaks.len() - 1 {
            return Err(Error::InvalidMeasure(format!(
                "{} pieces need {} coefficient lists, got {}",
                breaks.len() - 1,
                breaks.len() - 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidMeasure("non-finite polynomial coefficient".into()));
        }
        Ok(PiecewisePoly { breaks, coeffs, far: OnceLock::new() })
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breaks[0], *self.breaks.last().unwrap())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    fn piece_index(&self, x: f64) -> Option<usize> {
        let (lo, hi) = self.support();
        if x < lo || x > hi {
            return None;
        }
        let i = self.breaks.partition_point(|&b| b <= x);
        Some(i.saturating_sub(1).min(self.coeffs.len() - 1))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.piece_index(x) {
            Some(i) => horner(&self.coeffs[i], x - self.breaks[i]),
            None => 0.0,
        }
    }

    /// Value of piece `i`'s polynomial continued to any `x`.
    pub fn eval_piece(&self, i: usize, x: f64) -> f64 {
        horner(&self.coeffs[i], x - self.breaks[i])
    }

    /// One-sided limits `(left, right)` at `x`.
    pub fn one_sided(&self, x: f64) -> (f64, f64) {
        let (lo, hi) = self.support();
        let left = if x <= lo || x > hi {
            0.0
        } else {
            let i = self.breaks.partition_point(|&b| b < x) - 1;
            self.eval_piece(i, x)
        };
        let right = if x < lo || x >= hi {
            0.0
        } else {
            let i = self.breaks.partition_point(|&b| b <= x) - 1;
            self.eval_piece(i, x)
        };
        (left, right)
    }

    /// Minimum over a dense sampling of every piece (used for sign checks).
    pub fn sampled_min(&self, per_piece: usize) -> f64 {
        let mut m = f64::INFINITY;
        for (i, c) in self.coeffs.iter().enumerate() {
            let w = self.breaks[i + 1] - self.breaks[i];
            for k in 0..=per_piece {
                m = m.min(horner(c, w * k as f64 / per_piece as f64));
            }
        }
        m
    }

    /// `sum_i w_i g(x_i) P(x_i)` with a Gauss-Legendre rule of `n` points per piece.
    pub fn integrate_weighted<G: Fn(f64) -> f64>(&self, g: G, n: usize) -> f64 {
        let (nodes, weights) = gauss_legendre(n);
        let mut s = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let (a, b) = (self.breaks[i], self.breaks[i + 1]);
            let h = 0.5 * (b - a);
            let mut piece = 0.0;
            for (x, w) in nodes.iter().zip(&weights) {
                let u = h * (1.0 + x);
                piece += w * g(a + u) * horner(c, u);
            }
            s += h * piece;
        }
        s
    }

    /// Exact integral over `[lo, hi]` intersected with the support.
    pub fn integral_between(&self, lo: f64, hi: f64) -> f64 {
        let mut s = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let (a, b) = (self.breaks[i], self.breaks[i + 1]);
            let l = lo.max(a);
            let r = hi.min(b);
            if r > l {
                s += antiderivative(c, r - a) - antiderivative(c, l - a);
            }
        }
        s
    }

    pub fn integral(&self) -> f64 {
        let (a, b) = self.support();
        self.integral_between(a, b)
    }

    /// `int x^k P(x) dx`, exact up to rounding.
    pub fn moment(&self, k: usize) -> f64 {
        let n = (self.degree() + k) / 2 + 2;
        self.integrate_weighted(|x| x.powi(k as i32), n)
    }

    fn far_field(&self) -> &FarField {
        self.far.get_or_init(|| {
            let (lo, hi) = self.support();
            let center = 0.5 * (lo + hi);
            let n = (self.degree() + FAR_FIELD_TERMS) / 2 + 2;
            let moments = (0..FAR_FIELD_TERMS)
                .map(|k| self.integrate_weighted(|x| (x - center).powi(k as i32), n))
                .collect();
            FarField { center, half_width: 0.5 * (hi - lo), moments }
        })
    }

    fn is_far(&self, z: Complex64) -> bool {
        let ff = self.far_field();
        (z - ff.center).norm() > FAR_FIELD_RATIO * ff.half_width
    }

    fn far_cauchy(&self, z: Complex64) -> Complex64 {
        let ff = self.far_field();
        let w = Complex64::new(1.0, 0.0) / (z - ff.center);
        let mut pow = w;
        let mut s = Complex64::new(0.0, 0.0);
        for m in &ff.moments {
            s -= pow * m;
            pow *= w;
        }
        s
    }

    /// Cauchy transform `int P(t)/(t - z) dt` for `z` off the support.
    pub fn cauchy(&self, z: Complex64) -> Complex64 {
        if self.is_far(z) {
            return self.far_cauchy(z);
        }
        let mut s = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let a = self.breaks[i];
            let b = self.breaks[i + 1];
            let d = taylor_shift_complex(c, z - a);
            let za = Complex64::new(a, 0.0) - z;
            let zb = Complex64::new(b, 0.0) - z;
            s += d[0] * (zb.ln() - za.ln());
            let (mut pa, mut pb) = (za, zb);
            for (j, dj) in d.iter().enumerate().skip(1) {
                s += dj * (pb - pa) / j as f64;
                pa *= za;
                pb *= zb;
            }
        }
        s
    }

    /// Principal value `p.v. int P(t)/(t - x) dt` on the real line. Logarithms
    /// of neighbouring pieces are merged per break point so that continuous
    /// piecewise polynomials stay finite at the break points.
    pub fn hilbert_pv(&self, x: f64) -> f64 {
        if self.is_far(Complex64::new(x, 0.0)) {
            return self.far_cauchy(Complex64::new(x, 0.0)).re;
        }
        let np = self.coeffs.len();
        let mut regular = 0.0;
        let mut values = Vec::with_capacity(np);
        for (i, c) in self.coeffs.iter().enumerate() {
            let a = self.breaks[i];
            let b = self.breaks[i + 1];
            let d = taylor_shift(c, x - a);
            values.push(d[0]);
            let (xa, xb) = (a - x, b - x);
            let (mut pa, mut pb) = (xa, xb);
            for (j, dj) in d.iter().enumerate().skip(1) {
                regular += dj * (pb - pa) / j as f64;
                pa *= xa;
                pb *= xb;
            }
        }
        let mut logs = 0.0;
        for (k, &t) in self.breaks.iter().enumerate() {
            let left = if k > 0 { values[k - 1] } else { 0.0 };
            let right = if k < np { values[k] } else { 0.0 };
            let coef = left - right;
            if t == x || coef == 0.0 {
                continue;
            }
            logs += coef * (t - x).abs().max(1e-300).ln();
        }
        regular + logs
    }
}

pub(crate) fn horner(c: &[f64], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * u + a)
}

fn antiderivative(c: &[f64], u: f64) -> f64 {
    c.iter().enumerate().rev().fold(0.0, |acc, (j, &a)| acc * u + a / (j + 1) as f64) * u
}

/// Coefficients of `p(w + s)` in `w` given those of `p(u)`.
pub(crate) fn taylor_shift(c: &[f64], s: f64) -> Vec<f64> {
    let mut d = c.to_vec();
    let n = d.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            d[j] += s * d[j + 1];
        }
    }
    d
}

fn taylor_shift_complex(c: &[f64], s: Complex64) -> Vec<Complex64> {
    let mut d: Vec<Complex64> = c.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let n = d.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = d[j + 1];
            d[j] += s * next;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadOptions};

    fn hat() -> PiecewisePoly {
        // hat on [0,1,2]
        PiecewisePoly::new(vec![0.0, 1.0, 2.0], vec![vec![0.0, 1.0], vec![1.0, -1.0]]).unwrap()
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let c = [1.0, -2.0, 0.5, 3.0];
        let d = taylor_shift(&c, 0.7);
        for u in [-1.0, 0.0, 0.3, 2.0] {
            assert!((horner(&d, u) - horner(&c, u + 0.7)).abs() < 1e-12);
        }
    }

    #[test]
    fn integrals_and_moments() {
        let h = hat();
        assert!((h.integral() - 1.0).abs() < 1e-15);
        assert!((h.moment(1) - 1.0).abs() < 1e-14);
        // int x^2 hat = 7/6
        assert!((h.moment(2) - 7.0 / 6.0).abs() < 1e-14);
        assert!((h.integral_between(0.5, 1.5) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn cauchy_near_and_far_agree_with_quadrature() {
        let h = hat();
        for z in [Complex64::new(1.0, 0.1), Complex64::new(-3.0, 2.0), Complex64::new(30.0, 0.5)] {
            let direct = crate::quad::integrate_complex_breaks(
                |t| Complex64::new(h.eval(t), 0.0) / (Complex64::new(t, 0.0) - z),
                &[0.0, 1.0, 2.0],
                &QuadOptions::with_tol(1e-13, 1e-13),
            );
            assert!((h.cauchy(z) - direct.value).norm() < 1e-10, "z={z}");
        }
    }

    #[test]
    fn hilbert_pv_at_break_point_is_finite() {
        let h = hat();
        let v = h.hilbert_pv(1.0);
        // p.v. int hat(t)/(t-1) dt = 0 by odd symmetry about 1
        assert!(v.abs() < 1e-14, "{v}");
        let off = h.hilbert_pv(-10.0);
        let q = integrate(|t| h.eval(t) / (t + 10.0), 0.0, 2.0, &QuadOptions::with_tol(1e-14, 1e-14));
        assert!((off - q.value).abs() < 1e-12);
    }
}
