//! B-splines, their closed-form Hilbert transforms, and the symmetric
//! spline density ansatz.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::herglotz::{HerglotzFn, HerglotzRep};
use crate::measures::{DensityComponent, MeasureSpec};
use crate::ppoly::{taylor_shift, PiecewisePoly};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawBasis {
    order: usize,
    breakpoints: Vec<f64>,
}

/// B-splines of order `m` (degree `m - 1`); function `n` (0-based) lives on
/// `breakpoints[n..=n + m]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawBasis", into = "RawBasis")]
pub struct SplineBasis {
    order: usize,
    breakpoints: Vec<f64>,
    polys: Vec<PiecewisePoly>,
}

impl PartialEq for SplineBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.breakpoints == other.breakpoints
    }
}

impl TryFrom<RawBasis> for SplineBasis {
    type Error = Error;
    fn try_from(r: RawBasis) -> Result<Self> {
        SplineBasis::new(r.order, r.breakpoints)
    }
}

impl From<SplineBasis> for RawBasis {
    fn from(b: SplineBasis) -> Self {
        RawBasis { order: b.order, breakpoints: b.breakpoints }
    }
}

impl SplineBasis {
    pub fn new(order: usize, breakpoints: Vec<f64>) -> Result<Self> {
        if order < 2 {
            return Err(Error::Precondition("spline order must be >= 2".into()));
        }
        if breakpoints.len() < order + 1 {
            return Err(Error::Precondition(format!("order {order} needs at least {} break points", order + 1)));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Precondition("break points must be finite and strictly increasing".into()));
        }
        let n = breakpoints.len() - order;
        let polys = (0..n)
            .map(|i| spline_poly(&breakpoints[i..=i + order]))
            .collect::<Result<Vec<_>>>()?;
        Ok(SplineBasis { order, breakpoints, polys })
    }

    /// `count` splines on uniform break points spanning `[lo, hi]`.
    pub fn uniform(order: usize, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo < hi) || count == 0 {
            return Err(Error::Precondition("uniform basis needs lo < hi and count >= 1".into()));
        }
        let nb = count + order;
        let h = (hi - lo) / (nb - 1) as f64;
        Self::new(order, (0..nb).map(|k| lo + h * k as f64).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Piecewise-polynomial form of spline `n`.
    pub fn poly(&self, n: usize) -> Result<&PiecewisePoly> {
        self.polys.get(n).ok_or(Error::IndexOutOfRange { index: n, len: self.polys.len() })
    }

    fn check(&self, n: usize) -> Result<()> {
        if n >= self.len() {
            return Err(Error::IndexOutOfRange { index: n, len: self.len() });
        }
        Ok(())
    }
}

/// Cox-de Boor recurrence for the spline on `knots` (length `m + 1`).
fn cox_de_boor(knots: &[f64], x: f64) -> f64 {
    let m = knots.len() - 1;
    if x < knots[0] || x >= knots[m] {
        return 0.0;
    }
    let mut b: Vec<f64> = (0..m).map(|i| if knots[i] <= x && x < knots[i + 1] { 1.0 } else { 0.0 }).collect();
    for k in 2..=m {
        for i in 0..=m - k {
            let left = (x - knots[i]) / (knots[i + k - 1] - knots[i]) * b[i];
            let right = (knots[i + k] - x) / (knots[i + k] - knots[i + 1]) * b[i + 1];
            b[i] = left + right;
        }
    }
    b[0]
}

/// Exact local polynomial coefficients of the spline on `knots`, piece by
/// piece, by running the recurrence on polynomials in `u = x - knots[j]`.
fn spline_poly(knots: &[f64]) -> Result<PiecewisePoly> {
    let m = knots.len() - 1;
    let mut coeffs = Vec::with_capacity(m);
    for j in 0..m {
        let t0 = knots[j];
        let mut b: Vec<Vec<f64>> = (0..m).map(|i| if i == j { vec![1.0] } else { vec![0.0] }).collect();
        for k in 2..=m {
            for i in 0..=m - k {
                let mut next = vec![0.0; k];
                // (x - t_i) = u + (t0 - t_i), (t_{i+k} - x) = (t_{i+k} - t0) - u
                let dl = knots[i + k - 1] - knots[i];
                let dr = knots[i + k] - knots[i + 1];
                for (p, &c) in b[i].iter().enumerate() {
                    next[p] += c * (t0 - knots[i]) / dl;
                    next[p + 1] += c / dl;
                }
                for (p, &c) in b[i + 1].iter().enumerate() {
                    next[p] += c * (knots[i + k] - t0) / dr;
                    next[p + 1] -= c / dr;
                }
                b[i] = next;
            }
        }
        let mut c = b.swap_remove(0);
        c.resize(m, 0.0);
        coeffs.push(c);
    }
    PiecewisePoly::new(knots.to_vec(), coeffs)
}

/// `p_n(x)`.
pub fn bspline_eval(basis: &SplineBasis, n: usize, x: f64) -> Result<f64> {
    basis.check(n)?;
    Ok(cox_de_boor(&basis.breakpoints[n..=n + basis.order], x))
}

/// `p.v. int p_n(t) / (t - x) dt` in closed form.
pub fn bspline_hilbert(basis: &SplineBasis, n: usize, x: f64) -> Result<f64> {
    basis.check(n)?;
    Ok(basis.polys[n].hilbert_pv(x))
}

/// Nonnegative coefficients of `b z + zeta0 (-1/z) + symmetrized splines`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityAnsatz {
    pub basis: SplineBasis,
    pub zeta: Vec<f64>,
    pub zeta0: f64,
    pub b: f64,
}

impl DensityAnsatz {
    pub fn new(basis: SplineBasis, zeta: Vec<f64>, zeta0: f64, b: f64) -> Result<Self> {
        let d = DensityAnsatz { basis, zeta, zeta0, b };
        d.validate()?;
        Ok(d)
    }

    pub fn zero(basis: SplineBasis) -> Self {
        let n = basis.len();
        DensityAnsatz { basis, zeta: vec![0.0; n], zeta0: 0.0, b: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.zeta.len() != self.basis.len() {
            return Err(Error::Precondition(format!(
                "{} coefficients for {} basis functions",
                self.zeta.len(),
                self.basis.len()
            )));
        }
        if self.zeta.iter().chain([&self.zeta0, &self.b]).any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::Precondition("ansatz coefficients must be finite and >= 0".into()));
        }
        Ok(())
    }
}

/// `Im h(x) = sum zeta_n (p_n(x) + p_n(-x))`.
pub fn ansatz_imag(d: &DensityAnsatz, x: f64) -> f64 {
    d.zeta
        .iter()
        .enumerate()
        .filter(|(_, z)| **z != 0.0)
        .map(|(n, z)| z * (d.basis.polys[n].eval(x) + d.basis.polys[n].eval(-x)))
        .sum()
}

/// `Re h(x) = b x - zeta0 / x + (1/pi) sum zeta_n (p^_n(x) - p^_n(-x))`.
pub fn ansatz_real(d: &DensityAnsatz, x: f64) -> Result<f64> {
    if x == 0.0 && d.zeta0 > 0.0 {
        return Err(Error::Domain("x = 0 carries the point mass".into()));
    }
    let pole = if d.zeta0 > 0.0 { -d.zeta0 / x } else { 0.0 };
    let splines: f64 = d
        .zeta
        .iter()
        .enumerate()
        .filter(|(_, z)| **z != 0.0)
        .map(|(n, z)| z * (d.basis.polys[n].hilbert_pv(x) - d.basis.polys[n].hilbert_pv(-x)))
        .sum();
    Ok(d.b * x + pole + splines / PI)
}

/// Real-part and imaginary-part contributions of each coefficient at `x`, in
/// the order `zeta0, zeta_1..zeta_N, b`. Both parts are linear in the
/// coefficients.
pub fn ansatz_columns(basis: &SplineBasis, x: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if x == 0.0 {
        return Err(Error::Domain("x = 0 carries the point mass".into()));
    }
    let n = basis.len();
    let mut re = Vec::with_capacity(n + 2);
    let mut im = Vec::with_capacity(n + 2);
    re.push(-1.0 / x);
    im.push(0.0);
    for p in &basis.polys {
        re.push((p.hilbert_pv(x) - p.hilbert_pv(-x)) / PI);
        im.push(p.eval(x) + p.eval(-x));
    }
    re.push(x);
    im.push(0.0);
    Ok((re, im))
}

/// Piecewise-polynomial density `(1/pi) sum zeta_n (p_n(x) + p_n(-x))`.
pub fn ansatz_density(d: &DensityAnsatz) -> Result<Option<PiecewisePoly>> {
    d.validate()?;
    let active: Vec<usize> = (0..d.zeta.len()).filter(|&n| d.zeta[n] > 0.0).collect();
    if active.is_empty() {
        return Ok(None);
    }
    let mut breaks: Vec<f64> = Vec::new();
    for &n in &active {
        let p = &d.basis.polys[n];
        breaks.extend(p.breaks());
        breaks.extend(p.breaks().iter().map(|t| -t));
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let deg = d.basis.order;
    let mut coeffs = vec![vec![0.0; deg]; breaks.len() - 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let (lo, hi) = (breaks[k], breaks[k + 1]);
        let mid = 0.5 * (lo + hi);
        for &n in &active {
            let p = &d.basis.polys[n];
            let w = d.zeta[n] / PI;
            if let Some(i) = piece_index(p, mid) {
                let q = taylor_shift(&p.coefficients()[i], lo - p.breaks()[i]);
                for (j, a) in q.iter().enumerate() {
                    c[j] += w * a;
                }
            }
            // p(-x) with x = lo + u: the piece variable is -lo - a_i - u
            if let Some(i) = piece_index(p, -mid) {
                let q = taylor_shift(&p.coefficients()[i], -lo - p.breaks()[i]);
                for (j, a) in q.iter().enumerate() {
                    c[j] += w * if j % 2 == 0 { *a } else { -*a };
                }
            }
        }
    }
    Ok(Some(PiecewisePoly::new(breaks, coeffs)?))
}

fn piece_index(p: &PiecewisePoly, x: f64) -> Option<usize> {
    let b = p.breaks();
    if x <= b[0] || x >= b[b.len() - 1] {
        return None;
    }
    Some(b.partition_point(|t| *t <= x) - 1)
}

/// Canonical Herglotz function whose boundary values are
/// `ansatz_real + i ansatz_imag`.
pub fn ansatz_as_herglotz(d: &DensityAnsatz) -> Result<HerglotzFn> {
    let mut mu = MeasureSpec::zero();
    if d.zeta0 > 0.0 {
        mu = mu.add(&MeasureSpec::discrete([(0.0, d.zeta0)]));
    }
    if let Some(p) = ansatz_density(d)? {
        // rounding can leave tiny negative values where pieces cancel
        let scale = d.zeta.iter().fold(0.0f64, |m, z| m.max(*z)) / PI;
        let cleaned: Vec<Vec<f64>> = p
            .coefficients()
            .iter()
            .map(|c| c.iter().map(|a| if a.abs() <= 1e-15 * scale { 0.0 } else { *a }).collect())
            .collect();
        let p = PiecewisePoly::new(p.breaks().to_vec(), cleaned)?;
        mu = mu.with_density(DensityComponent::from_poly(p)?);
    }
    Ok(HerglotzFn::canonical(HerglotzRep::new(0.0, d.b, mu)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::pv_integral_with_breaks;
    use num_complex::Complex64;

    fn hat(a: f64) -> SplineBasis {
        SplineBasis::new(2, vec![a, a + 1.0, a + 2.0]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let b = hat(0.0);
        assert_eq!(bspline_eval(&b, 0, 1.0).unwrap(), 1.0);
        assert_eq!(bspline_eval(&b, 0, 0.5).unwrap(), 0.5);
        let q = SplineBasis::new(3, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert!((bspline_eval(&q, 0, 1.5).unwrap() - 0.75).abs() < 1e-15);
        assert!(matches!(bspline_eval(&b, 1, 0.0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn polynomial_form_matches_recurrence() {
        let b = SplineBasis::new(4, vec![0.0, 0.3, 1.1, 1.5, 2.6, 3.0, 4.2]).unwrap();
        for n in 0..b.len() {
            for k in 0..=200 {
                let x = -0.1 + 4.4 * k as f64 / 200.0;
                let d = b.poly(n).unwrap().eval(x) - bspline_eval(&b, n, x).unwrap();
                assert!(d.abs() < 1e-13, "n={n} x={x} diff {d}");
            }
        }
    }

    #[test]
    fn partition_of_unity() {
        let b = SplineBasis::uniform(4, 0.0, 1.0, 12).unwrap();
        let t = b.breakpoints();
        let (lo, hi) = (t[3], t[t.len() - 4]);
        for k in 0..=100 {
            let x = lo + (hi - lo) * k as f64 / 100.0 * 0.999_999;
            let s: f64 = (0..b.len()).map(|n| bspline_eval(&b, n, x).unwrap()).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hilbert_examples() {
        let b = hat(0.0);
        let oracle = pv_integral_with_breaks(|t| cox_de_boor(&[0.0, 1.0, 2.0], t), -10.0, (0.0, 2.0), &[1.0]).unwrap();
        assert!((bspline_hilbert(&b, 0, -10.0).unwrap() - oracle).abs() < 1e-10);
        // far field ~ -mass / x
        let x = 1e6;
        assert!((bspline_hilbert(&b, 0, x).unwrap() * x + 1.0).abs() < 1e-5);
        let s = SplineBasis::new(2, vec![-1.0, 0.0, 1.0]).unwrap();
        for x in [0.3, 0.7, 1.0, 2.5] {
            let (p, m) = (bspline_hilbert(&s, 0, x).unwrap(), bspline_hilbert(&s, 0, -x).unwrap());
            assert!((p + m).abs() < 1e-14);
        }
    }

    #[test]
    fn ansatz_examples() {
        let b = hat(1.0);
        let mut d = DensityAnsatz::zero(b.clone());
        assert_eq!(ansatz_imag(&d, 2.0), 0.0);
        d.b = 2.0;
        assert_eq!(ansatz_real(&d, 3.0).unwrap(), 6.0);
        let d = DensityAnsatz::new(b.clone(), vec![0.0], 1.0, 0.0).unwrap();
        assert_eq!(ansatz_real(&d, 2.0).unwrap(), -0.5);
        assert!(ansatz_real(&d, 0.0).is_err());
        let d = DensityAnsatz::new(b.clone(), vec![1.0], 0.0, 0.0).unwrap();
        assert_eq!(ansatz_imag(&d, 2.0), 1.0);
        assert_eq!(ansatz_imag(&d, -2.0), 1.0);
        let knots = [1.0, 2.0, 3.0];
        let p = |t: f64| cox_de_boor(&knots, t);
        let at = |x: f64| pv_integral_with_breaks(p, x, (1.0, 3.0), &[2.0]).unwrap();
        let oracle = (at(10.0) - at(-10.0)) / PI;
        assert!((ansatz_real(&d, 10.0).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn ansatz_as_herglotz_examples() {
        let b = hat(1.0);
        let mut d = DensityAnsatz::zero(b.clone());
        d.b = 1.0;
        let f = ansatz_as_herglotz(&d).unwrap();
        let z = Complex64::new(0.3, 0.7);
        assert!((f.eval(z).unwrap() - z).norm() < 1e-14);
        let d = DensityAnsatz::new(b.clone(), vec![0.0], 1.0, 0.0).unwrap();
        let f = ansatz_as_herglotz(&d).unwrap();
        assert!((f.eval(z).unwrap() + 1.0 / z).norm() < 1e-14);

        let basis = SplineBasis::uniform(4, 0.5, 3.0, 6).unwrap();
        let d = DensityAnsatz::new(basis, vec![0.5, 1.0, 0.0, 2.0, 0.3, 1.2], 0.4, 1.5).unwrap();
        let f = ansatz_as_herglotz(&d).unwrap();
        for x in [-2.7, -1.1, 0.4, 0.9, 1.7, 2.9, 4.0] {
            let v = f.eval(Complex64::new(x, 1e-4)).unwrap();
            let w = Complex64::new(ansatz_real(&d, x).unwrap(), ansatz_imag(&d, x));
            assert!((v - w).norm() < 1e-3, "x={x}: {v} vs {w}");
        }
    }

    #[test]
    fn json_round_trip() {
        let d = DensityAnsatz::new(hat(0.0), vec![1.0], 0.0, 2.0).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"breakpoints\""));
        let back: DensityAnsatz = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
