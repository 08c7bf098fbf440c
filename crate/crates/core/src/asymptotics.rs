//! Asymptotic expansions at infinity and at 0, moments, sum rules and growth
//! classification.
//!
//! Expansion coefficients are Taylor coefficients of `F(t) = t f(i/t)` (at
//! infinity) or `G(z) = z f(z)` (at 0). When `f` has a known analytic
//! continuation they come from Cauchy integrals on circles, whose radius is
//! chosen adaptively and validated against direct samples along the
//! imaginary axis. Otherwise they are read off a Chebyshev interpolant on the
//! imaginary axis, which only sees the non-tangential approach.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::boundary::{extrapolate, horizontal_integral, Extrapolation, LimitSchedule};
use crate::error::{Error, Result};
use crate::extrap::{richardson, taylor_at_left_endpoint};
use crate::herglotz::{is_symmetric, HerglotzFn};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative agreement demanded of successive coefficient estimates.
pub const AGREEMENT_TOL: f64 = 1e-5;
/// Imaginary part below which a coefficient counts as real.
pub const REALITY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionMethod {
    /// Cauchy integrals on a circle around the expansion point.
    Circle,
    /// Chebyshev interpolation along the imaginary axis.
    ImaginaryAxis,
}

/// Why an expansion stopped short of the requested order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stop {
    /// Index `j` of the first coefficient that does not exist.
    pub index: i32,
    pub estimate_re: f64,
    pub estimate_im: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticExpansion {
    pub location: Location,
    pub requested_order: i32,
    /// Achieved order `K`; there are `K + 2` coefficients.
    pub order: i32,
    /// `b_1, b_0, b_{-1}, ...` at infinity; `a_{-1}, a_0, a_1, ...` at 0.
    pub coefficients: Vec<f64>,
    pub residual_estimates: Vec<f64>,
    pub stop: Option<Stop>,
    pub method: ExpansionMethod,
    /// The existence rule for coefficients is a numerical heuristic.
    pub heuristic: bool,
}

impl AsymptoticExpansion {
    /// `b_j` (at infinity) or `a_j` (at 0), if computed.
    pub fn coefficient(&self, j: i32) -> Option<f64> {
        let idx = match self.location {
            Location::Infinity => 1 - j,
            Location::Zero => j + 1,
        };
        if idx < 0 {
            return None;
        }
        self.coefficients.get(idx as usize).copied()
    }

    pub fn complete(&self) -> bool {
        self.order >= self.requested_order
    }
}

struct Series {
    coeffs: Vec<Complex64>,
    noise: Vec<f64>,
}

/// Taylor coefficients of `g` at 0 from `n` samples on the circle `|t| = r`.
fn circle_series<G: Fn(Complex64) -> Option<Complex64>>(g: &G, r: f64, n: usize, count: usize) -> Option<Series> {
    let mut vals = Vec::with_capacity(n);
    for j in 0..n {
        let theta = 2.0 * PI * (j as f64 + 0.5) / n as f64;
        let v = g(Complex64::from_polar(r, theta))?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        vals.push(v);
    }
    let amp = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut coeffs = Vec::with_capacity(count);
    let mut noise = Vec::with_capacity(count);
    for m in 0..count {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, v) in vals.iter().enumerate() {
            let theta = 2.0 * PI * (j as f64 + 0.5) / n as f64;
            s += v * Complex64::from_polar(1.0, -(m as f64) * theta);
        }
        let scale = r.powi(-(m as i32));
        coeffs.push(s / n as f64 * scale);
        noise.push(64.0 * f64::EPSILON * amp * scale);
    }
    Some(Series { coeffs, noise })
}

fn horner_complex(c: &[Complex64], t: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * t + k)
}

/// Circle estimates at three resolutions, at the largest radius whose series
/// reproduces `g` along the positive real `t` axis.
fn circle_estimates<G: Fn(Complex64) -> Option<Complex64>>(g: &G, count: usize) -> Option<Vec<Series>> {
    for level in -2..=14 {
        let r = 2f64.powi(-level);
        let Some(fine) = circle_series(g, r, 256, 64) else { continue };
        let amp = fine.noise[0] / (64.0 * f64::EPSILON);
        let ok = [0.1, 0.25, 0.4, 0.55].iter().all(|&s| {
            let t = Complex64::new(s * r, 0.0);
            match g(t) {
                Some(v) => (v - horner_complex(&fine.coeffs, t)).norm() <= 1e-9 * amp.max(f64::MIN_POSITIVE),
                None => false,
            }
        });
        if !ok {
            continue;
        }
        // half the validated radius keeps aliasing from nearby singularities
        // far below rounding for every node count
        let mut out = Vec::new();
        for n in [128, 192, 256] {
            out.push(circle_series(g, 0.5 * r, n, count)?);
        }
        return Some(out);
    }
    None
}

fn axis_estimates<G: Fn(f64) -> Complex64>(g: &G, length: f64, count: usize) -> Vec<Series> {
    [12, 16, 20]
        .iter()
        .map(|&n| {
            let t = taylor_at_left_endpoint(g, length, n, count.saturating_sub(1));
            Series { coeffs: t.coefficients, noise: t.noise }
        })
        .collect()
}

fn assemble(
    location: Location,
    requested: i32,
    estimates: &[Series],
    method: ExpansionMethod,
    phase: impl Fn(usize) -> Complex64,
) -> AsymptoticExpansion {
    let count = (requested + 2) as usize;
    let mut coefficients = Vec::new();
    let mut residual_estimates = Vec::new();
    let mut stop = None;
    for m in 0..count {
        let vals: Vec<Complex64> = estimates.iter().map(|s| s.coeffs[m] * phase(m)).collect();
        let best = *vals.last().unwrap();
        let noise = estimates.last().unwrap().noise[m];
        // the coarsest estimate only guards against accidental agreement of
        // the two finer ones in the reality test
        let spread = (vals[vals.len() - 2] - best).norm();
        let index = match location {
            Location::Infinity => 1 - m as i32,
            Location::Zero => m as i32 - 1,
        };
        let agrees = spread <= AGREEMENT_TOL * best.norm() + noise;
        let real = best.im.abs() <= REALITY_TOL * best.re.abs().max(1.0) + noise;
        if !(agrees && real && best.re.is_finite()) {
            let reason = if !agrees { "estimates do not settle" } else { "limit is not real" };
            stop = Some(Stop { index, estimate_re: best.re, estimate_im: best.im, reason: reason.to_string() });
            break;
        }
        // values below the rounding floor are zero
        coefficients.push(if best.re.abs() <= noise { 0.0 } else { best.re });
        residual_estimates.push(spread.max(noise));
    }
    AsymptoticExpansion {
        location,
        requested_order: requested,
        order: coefficients.len() as i32 - 2,
        coefficients,
        residual_estimates,
        stop,
        method,
        heuristic: true,
    }
}

/// Coefficients `b_1, b_0, ..., b_{-K}` of `f(z) ~ b_1 z + b_0 + b_{-1}/z + ...`
/// as `z -> infinity` along the imaginary axis.
pub fn expand_at_infinity(f: &HerglotzFn, k: i32) -> Result<AsymptoticExpansion> {
    if k < -1 {
        return Err(Error::Precondition("expansion order must be >= -1".into()));
    }
    let count = (k + 2) as usize;
    // F(t) = t f(i/t) = sum_m c_m t^m with b_{1-m} = c_m i^{m-1}
    let phase = |m: usize| I.powi(m as i32 - 1);
    let g = |t: Complex64| {
        if t.norm() == 0.0 {
            return None;
        }
        f.eval_continued(I / t).map(|v| t * v)
    };
    if let Some(est) = circle_estimates(&g, count) {
        return Ok(assemble(Location::Infinity, k, &est, ExpansionMethod::Circle, phase));
    }
    let axis = |t: f64| t * f.eval_any(Complex64::new(0.0, 1.0 / t));
    let est = axis_estimates(&axis, 0.125, count);
    Ok(assemble(Location::Infinity, k, &est, ExpansionMethod::ImaginaryAxis, phase))
}

/// Coefficients `a_{-1}, a_0, ..., a_K` of `f(z) ~ a_{-1}/z + a_0 + a_1 z + ...`
/// as `z -> 0` along the imaginary axis.
pub fn expand_at_zero(f: &HerglotzFn, k: i32) -> Result<AsymptoticExpansion> {
    if k < -1 {
        return Err(Error::Precondition("expansion order must be >= -1".into()));
    }
    let count = (k + 2) as usize;
    let g = |z: Complex64| f.eval_continued(z).map(|v| z * v);
    if let Some(est) = circle_estimates(&g, count) {
        return Ok(assemble(Location::Zero, k, &est, ExpansionMethod::Circle, |_| Complex64::new(1.0, 0.0)));
    }
    // G(y) = (iy) f(iy) = sum_m a_{m-1} (iy)^m
    let axis = |y: f64| {
        let z = Complex64::new(0.0, y);
        z * f.eval_any(z)
    };
    let est = axis_estimates(&axis, 0.25, count);
    Ok(assemble(Location::Zero, k, &est, ExpansionMethod::ImaginaryAxis, |m| I.powi(-(m as i32))))
}

/// Moments `int x^k dmu(x) = -b_{-k-1}` for `k = 0, ..., 2N` from an expansion
/// at infinity of order `2N + 1`.
pub fn moments_from_expansion(e: &AsymptoticExpansion) -> Result<Vec<f64>> {
    if e.location != Location::Infinity {
        return Err(Error::Precondition("moments come from the expansion at infinity".into()));
    }
    if e.order < 1 {
        return Err(Error::Precondition(format!("expansion order {} is too low for any moment", e.order)));
    }
    let n = (e.order - 1) / 2;
    Ok((0..=2 * n).map(|k| -e.coefficient(-k - 1).unwrap()).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumRuleResult {
    /// `n` in `x^n` (at infinity), `-p` for `x^{-p}` (at 0), or the index of
    /// the symmetric identity.
    pub exponent: i32,
    pub value: f64,
    pub lhs_estimate: f64,
    pub lhs_error: f64,
    pub rhs_closed_form: Option<f64>,
    pub converged: bool,
    pub schedule_used: LimitSchedule,
    /// Per-eps inner limits `(eps, value, residual)`.
    pub inner_limits: Vec<(f64, f64, f64)>,
}

/// `lim_eps lim_y (1/pi) int_{eps<|x|<1/eps} x^power Im f(x+iy) dx`.
///
/// The horizontal line integral is evaluated by contour deformation with
/// the weight continued as `z^power`, which agrees with `x^power` in the
/// limit `y -> 0`.
fn sum_rule_lhs(f: &HerglotzFn, power: i32, sched: &LimitSchedule) -> Result<(f64, f64, Vec<(f64, f64, f64)>)> {
    sched.validate()?;
    let g = |z: Complex64| z.powi(power) * f.eval_any(z);
    let mut inner = Vec::new();
    for &eps in &sched.eps_values {
        let (lo, hi) = (eps, 1.0 / eps);
        // heights are measured in units of the inner cutoff, the length scale
        // of the weight near the origin
        let ys: Vec<f64> = sched.y_values.iter().map(|y| y * eps.min(1.0)).collect();
        let v: Vec<f64> = ys
            .iter()
            .map(|&y| (horizontal_integral(&g, -hi, -lo, y, hi) + horizontal_integral(&g, lo, hi, y, hi)).im / PI)
            .collect();
        let (value, err) = extrapolate(&ys, &v, sched.extrapolation);
        inner.push((eps, value, err));
    }
    // outer limit over the eps levels whose inner limit settled
    let good: Vec<&(f64, f64, f64)> = inner.iter().filter(|(_, v, e)| *e <= 1e-6 * v.abs().max(1.0)).collect();
    let (value, err) = match good.len() {
        0 => {
            let best = inner.iter().min_by(|a, b| a.2.partial_cmp(&b.2).unwrap()).unwrap();
            (best.1, f64::INFINITY)
        }
        1 => (good[0].1, good[0].2),
        _ => {
            let h: Vec<f64> = good.iter().map(|g| g.0).collect();
            let v: Vec<f64> = good.iter().map(|g| g.1).collect();
            let inner_err = good.iter().map(|g| g.2).fold(0.0, f64::max);
            let (value, e) = match sched.extrapolation {
                Extrapolation::Richardson => richardson(&h, &v),
                Extrapolation::None => extrapolate(&h, &v, Extrapolation::None),
            };
            (value, e.max(inner_err))
        }
    };
    Ok((value, err, inner))
}

fn sum_rule_result(exponent: i32, lhs: (f64, f64, Vec<(f64, f64, f64)>), rhs: f64, sched: &LimitSchedule) -> SumRuleResult {
    let (value, err, inner) = lhs;
    SumRuleResult {
        exponent,
        value,
        lhs_estimate: value,
        lhs_error: err,
        rhs_closed_form: Some(rhs),
        converged: (value - rhs).abs() < 1e-3 * rhs.abs().max(1.0),
        schedule_used: sched.clone(),
        inner_limits: inner,
    }
}

fn need(e: &AsymptoticExpansion, j: i32, what: &str) -> Result<f64> {
    e.coefficient(j)
        .ok_or_else(|| Error::Precondition(format!("{what}: required expansion coefficient of index {j} does not exist")))
}

/// `(1/pi) int x^n Im f(x) dx` against `a_{-1} - b_{-1}` (`n = 0`) or
/// `-b_{-n-1}` (`n > 0`).
pub fn sum_rule_at_infinity(f: &HerglotzFn, n: i32, sched: &LimitSchedule) -> Result<SumRuleResult> {
    if n < 0 {
        return Err(Error::Precondition("exponent must be >= 0".into()));
    }
    let order = 2 * ((n + 1) / 2) + 1;
    let e = expand_at_infinity(f, order)?;
    if e.order < order {
        return Err(Error::Precondition(format!("expansion at infinity exists only to order {}", e.order)));
    }
    let rhs = if n == 0 {
        let z = expand_at_zero(f, -1)?;
        need(&z, -1, "sum rule")? - need(&e, -1, "sum rule")?
    } else {
        -need(&e, -n - 1, "sum rule")?
    };
    Ok(sum_rule_result(n, sum_rule_lhs(f, n, sched)?, rhs, sched))
}

/// `(1/pi) int x^{-p} Im f(x) dx` against `a_0 - b_0` (`p = 1`), `a_1 - b_1`
/// (`p = 2`) or `a_{p-1}` (`p > 2`).
pub fn sum_rule_at_zero(f: &HerglotzFn, p: i32, sched: &LimitSchedule) -> Result<SumRuleResult> {
    if p < 1 {
        return Err(Error::Precondition("exponent p must be >= 1".into()));
    }
    let order = (2 * ((p + 1) / 2) - 1).max(0);
    let z = expand_at_zero(f, order)?;
    if z.order < order {
        return Err(Error::Precondition(format!("expansion at 0 exists only to order {}", z.order)));
    }
    let rhs = match p {
        1 => {
            let e = expand_at_infinity(f, 0)?;
            need(&z, 0, "sum rule")? - need(&e, 0, "sum rule")?
        }
        2 => {
            let e = expand_at_infinity(f, -1)?;
            need(&z, 1, "sum rule")? - need(&e, 1, "sum rule")?
        }
        _ => need(&z, p - 1, "sum rule")?,
    };
    Ok(sum_rule_result(-p, sum_rule_lhs(f, -p, sched)?, rhs, sched))
}

/// `(2/pi) int_0^inf Im f(x) / x^{2n} dx = a_{2n-1} - b_{2n-1}` for symmetric `f`.
pub fn symmetric_sum_rule(f: &HerglotzFn, n: i32, sched: &LimitSchedule) -> Result<SumRuleResult> {
    if !is_symmetric(f, &crate::herglotz::default_grid(), 1e-9) {
        return Err(Error::Precondition("function is not symmetric".into()));
    }
    let mut r = if n >= 1 { sum_rule_at_zero(f, 2 * n, sched)? } else { sum_rule_at_infinity(f, -2 * n, sched)? };
    r.exponent = n;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub needs_regularizer: bool,
    pub finite_mass: bool,
    pub s_value: Option<f64>,
    pub indeterminate: bool,
}

/// Numerical tests of `int_1^inf Im f(iy)/y dy < inf` and of
/// `f(iy)/y -> 0` together with `sup y Im f(iy) < inf`.
pub fn classify_growth(f: &HerglotzFn) -> Result<GrowthClass> {
    let opts = crate::quad::QuadOptions::with_tol(1e-14, 1e-12);
    // contributions of the decades [10^k, 10^{k+1}], k = 0..8, in log y
    let decades: Vec<f64> = (0..8)
        .map(|k| {
            crate::quad::integrate(
                |s: f64| f.eval_any(Complex64::new(0.0, s.exp())).im,
                (10f64.powi(k)).ln(),
                (10f64.powi(k + 1)).ln(),
                &opts,
            )
            .value
        })
        .collect();
    let first = decades[0].abs().max(1e-300);
    let last = decades[7].abs();
    let tail_converges = last <= 1e-6 * first || decades.windows(2).skip(4).all(|w| w[1].abs() <= 0.5 * w[0].abs());
    let tail_diverges = decades.windows(2).skip(4).all(|w| w[1].abs() >= 0.9 * w[0].abs()) && last > 1e-6 * first;
    let indeterminate = !(tail_converges || tail_diverges);

    let ys: Vec<f64> = (2..=8).map(|k| 10f64.powi(k)).collect();
    let weighted: Vec<f64> = ys.iter().map(|&y| y * f.eval_any(Complex64::new(0.0, y)).im).collect();
    let ratio: Vec<f64> = ys.iter().map(|&y| (f.eval_any(Complex64::new(0.0, y)) / y).norm()).collect();
    let bounded = weighted.windows(2).skip(2).all(|w| (w[1] - w[0]).abs() <= 1e-3 * w[0].abs().max(1e-12));
    let b_zero = *ratio.last().unwrap() < 1e-6;
    let finite_mass = bounded && b_zero;
    let s_value = if finite_mass {
        let h: Vec<f64> = ys.iter().map(|y| 1.0 / y).collect();
        let v: Vec<f64> = ys.iter().map(|&y| f.eval_any(Complex64::new(0.0, y)).re).collect();
        Some(richardson(&h, &v).0)
    } else {
        None
    };
    Ok(GrowthClass { needs_regularizer: !tail_converges, finite_mass, s_value, indeterminate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn expansion_at_infinity_examples() {
        let e = expand_at_infinity(&HerglotzFn::pole(0.0, 1.0).unwrap(), 1).unwrap();
        assert_eq!(e.order, 1);
        assert!(close(e.coefficient(1).unwrap(), 0.0, 1e-12));
        assert!(close(e.coefficient(0).unwrap(), 0.0, 1e-12));
        assert!(close(e.coefficient(-1).unwrap(), -1.0, 1e-12));

        let e = expand_at_infinity(&HerglotzFn::Tan, 2).unwrap();
        assert_eq!(e.order, -1, "{e:?}");
        assert!(close(e.coefficient(1).unwrap(), 0.0, 1e-9));
        assert_eq!(e.stop.as_ref().unwrap().index, 0);

        let e = expand_at_infinity(&HerglotzFn::pole(3.0, 1.0).unwrap(), 2).unwrap();
        let want = [0.0, 0.0, -1.0, -3.0];
        for (j, w) in (-2..=1).rev().zip(want) {
            assert!(close(e.coefficient(j).unwrap(), w, 1e-10), "b_{j}");
        }
    }

    #[test]
    fn expansion_at_zero_examples() {
        let e = expand_at_zero(&HerglotzFn::Tan, 5).unwrap();
        assert_eq!(e.order, 5);
        let want = [0.0, 0.0, 1.0, 0.0, 1.0 / 3.0, 0.0, 2.0 / 15.0];
        for (j, w) in (-1..=5).zip(want) {
            assert!(close(e.coefficient(j).unwrap(), w, 1e-10), "a_{j} = {:?}", e.coefficient(j));
        }
        let e = expand_at_zero(&HerglotzFn::pole(0.0, 1.0).unwrap(), 0).unwrap();
        assert!(close(e.coefficient(-1).unwrap(), -1.0, 1e-12));
        let e = expand_at_zero(&HerglotzFn::pole(3.0, 1.0).unwrap(), 1).unwrap();
        assert!(close(e.coefficient(-1).unwrap(), 0.0, 1e-12));
        assert!(close(e.coefficient(0).unwrap(), 1.0 / 3.0, 1e-12));
        assert!(close(e.coefficient(1).unwrap(), 1.0 / 9.0, 1e-12));
    }

    #[test]
    fn log_stops_at_the_constant_term() {
        let e = expand_at_infinity(&HerglotzFn::Log, 1).unwrap();
        assert!(e.order < 0, "{e:?}");
    }

    #[test]
    fn moments_examples() {
        let f = HerglotzFn::pole(2.0, 1.0).unwrap();
        let m = moments_from_expansion(&expand_at_infinity(&f, 3).unwrap()).unwrap();
        assert!(close(m[2], 4.0, 1e-10));
        let f = HerglotzFn::pole(0.0, 1.0).unwrap();
        let m = moments_from_expansion(&expand_at_infinity(&f, 5).unwrap()).unwrap();
        assert!(close(m[0], 1.0, 1e-12) && m[1..].iter().all(|v| v.abs() < 1e-12));
        let rep = crate::herglotz::HerglotzRep::new(0.0, 0.0, MeasureSpec::discrete([(1.0, 1.0), (-1.0, 1.0)])).unwrap();
        let m = moments_from_expansion(&expand_at_infinity(&HerglotzFn::canonical(rep), 3).unwrap()).unwrap();
        assert!(close(m[2], 2.0, 1e-10));
        let tan = expand_at_infinity(&HerglotzFn::Tan, 3).unwrap();
        assert!(moments_from_expansion(&tan).is_err());
    }

    #[test]
    fn sum_rules_for_a_single_pole() {
        let s = LimitSchedule::default();
        let f = HerglotzFn::pole(3.0, 1.0).unwrap();
        let r = sum_rule_at_infinity(&f, 0, &s).unwrap();
        assert!(r.converged && close(r.rhs_closed_form.unwrap(), 1.0, 1e-10), "{r:?}");
        let r = sum_rule_at_infinity(&f, 1, &s).unwrap();
        assert!(r.converged && close(r.rhs_closed_form.unwrap(), 3.0, 1e-10), "{r:?}");
        let r = sum_rule_at_infinity(&HerglotzFn::Identity, 0, &s).unwrap();
        assert!(r.converged && r.value.abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn tan_sum_rule_at_zero() {
        let r = sum_rule_at_zero(&HerglotzFn::Tan, 2, &LimitSchedule::default()).unwrap();
        assert!(r.converged && close(r.value, 1.0, 1e-3), "{r:?}");
    }

    #[test]
    fn symmetric_sum_rule_examples() {
        let s = LimitSchedule::default();
        let r = symmetric_sum_rule(&HerglotzFn::Tan, 1, &s).unwrap();
        assert!(r.converged && close(r.value, 1.0, 1e-3));
        let r = symmetric_sum_rule(&HerglotzFn::Identity, 0, &s).unwrap();
        assert!(r.converged && r.value.abs() < 1e-6);
        assert!(symmetric_sum_rule(&HerglotzFn::pole(3.0, 1.0).unwrap(), 0, &s).is_err());
    }

    #[test]
    fn growth_examples() {
        let g = classify_growth(&HerglotzFn::pole(3.0, 1.0).unwrap()).unwrap();
        assert!(!g.needs_regularizer && g.finite_mass && g.s_value.unwrap().abs() < 1e-9, "{g:?}");
        let g = classify_growth(&HerglotzFn::constant(I).unwrap()).unwrap();
        assert!(!g.finite_mass && g.needs_regularizer);
        let g = classify_growth(&HerglotzFn::Identity).unwrap();
        assert!(!g.finite_mass && g.needs_regularizer);
    }
}
