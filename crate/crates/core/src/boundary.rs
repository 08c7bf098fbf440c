//! Behavior on the real axis: Stieltjes inversion, point masses, principal
//! values and boundary values of densities, continuation through intervals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, LimitSample, Result};
use crate::extrap::richardson;
use crate::herglotz::HerglotzFn;
use crate::measures::{DensityComponent, MeasureSpec};
use crate::quad::{geometric_breaks, integrate_breaks, integrate_complex_breaks, integrate_to_infinity, QuadOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative accuracy demanded of an extrapolated limit.
pub const LIMIT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extrapolation {
    None,
    Richardson,
}

/// Ladders realizing the limits `y -> 0+` (inner) and `eps -> 0+` (outer).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSchedule {
    pub y_values: Vec<f64>,
    pub eps_values: Vec<f64>,
    pub extrapolation: Extrapolation,
}

impl Default for LimitSchedule {
    fn default() -> Self {
        LimitSchedule {
            y_values: (1..=6).map(|k| 10f64.powi(-k)).collect(),
            eps_values: (1..=4).map(|k| 10f64.powi(-k)).collect(),
            extrapolation: Extrapolation::Richardson,
        }
    }
}

impl LimitSchedule {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("y_values", &self.y_values), ("eps_values", &self.eps_values)] {
            if v.is_empty() || v.iter().any(|x| !(*x > 0.0 && x.is_finite())) || v.windows(2).any(|w| w[1] >= w[0]) {
                return Err(Error::Precondition(format!("{name} must be positive and strictly decreasing")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitResult {
    pub value: f64,
    /// Extrapolation residual.
    pub error: f64,
    pub samples: Vec<LimitSample>,
}

/// Extrapolates samples `v(h)` to `h = 0`.
pub fn extrapolate(h: &[f64], v: &[f64], method: Extrapolation) -> (f64, f64) {
    match method {
        Extrapolation::Richardson => richardson(h, v),
        Extrapolation::None => {
            let n = v.len();
            let err = if n > 1 { (v[n - 1] - v[n - 2]).abs() } else { f64::INFINITY };
            (v[n - 1], err)
        }
    }
}

fn limit_of(what: &str, h: &[f64], v: &[f64], method: Extrapolation) -> Result<LimitResult> {
    let samples: Vec<LimitSample> = h.iter().zip(v).map(|(&h, &value)| LimitSample { h, value }).collect();
    let (value, error) = extrapolate(h, v, method);
    if !value.is_finite() || error > LIMIT_TOL * value.abs().max(1.0) {
        return Err(Error::convergence(format!("{what}: estimate {value} with residual {error:e}"), samples));
    }
    Ok(LimitResult { value, error, samples })
}

/// `int_{x1 + iy}^{x2 + iy} g(z) dz` for `g` analytic in the upper half-plane,
/// evaluated along the deformed path up to height `top`, across, and back
/// down. Only the short stretches of the vertical legs near the axis see the
/// boundary behavior of `g`, so no resolution of features of width `y` along
/// the axis is needed.
pub(crate) fn horizontal_integral<G>(g: &G, x1: f64, x2: f64, y: f64, top: f64) -> Complex64
where
    G: Fn(Complex64) -> Complex64,
{
    let opts = QuadOptions::with_tol(1e-14, 1e-13);
    let legs = geometric_breaks(y, top, 2.0);
    let left = integrate_complex_breaks(|t| g(Complex64::new(x1, t)) * I, &legs, &opts).value;
    let right = integrate_complex_breaks(|t| g(Complex64::new(x2, t)) * I, &legs, &opts).value;
    let pieces = ((x2 - x1) / top).ceil().clamp(1.0, 20_000.0) as usize;
    let across: Vec<f64> = (0..=pieces).map(|k| x1 + (x2 - x1) * k as f64 / pieces as f64).collect();
    let top_leg = integrate_complex_breaks(|x| g(Complex64::new(x, top)), &across, &opts).value;
    left + top_leg - right
}

/// Limit of `(1/pi) int_{x1}^{x2} Im f(x + iy) dx` as `y -> 0+`, which equals
/// `mu((x1, x2)) + mu({x1})/2 + mu({x2})/2`.
pub fn stieltjes_invert(f: &HerglotzFn, x1: f64, x2: f64, sched: &LimitSchedule) -> Result<LimitResult> {
    if !(x1 < x2) {
        return Err(Error::Precondition(format!("interval ({x1}, {x2}) is empty")));
    }
    sched.validate()?;
    let top = (x2 - x1).max(1.0);
    let g = |z: Complex64| f.eval_any(z);
    let v: Vec<f64> = sched
        .y_values
        .iter()
        .map(|&y| horizontal_integral(&g, x1, x2, y, top).im / PI)
        .collect();
    limit_of("stieltjes inversion", &sched.y_values, &v, sched.extrapolation)
}

/// `lim (alpha - z) f(z)` along `z = alpha + iy`, i.e. `mu({alpha})`.
pub fn point_mass_at(f: &HerglotzFn, alpha: f64, sched: &LimitSchedule) -> Result<LimitResult> {
    sched.validate()?;
    let v: Vec<f64> = sched
        .y_values
        .iter()
        .map(|&y| ((-I * y) * f.eval_any(Complex64::new(alpha, y))).re)
        .collect();
    let r = limit_of("point mass", &sched.y_values, &v, sched.extrapolation)?;
    if r.value < -1e-9 {
        return Err(Error::convergence(format!("negative point mass estimate {}", r.value), r.samples));
    }
    Ok(r)
}

/// `lim_{y -> 0+} f(x + iy)`.
pub fn boundary_limit(f: &HerglotzFn, x: f64, sched: &LimitSchedule) -> Result<Complex64> {
    sched.validate()?;
    let vals: Vec<Complex64> = sched.y_values.iter().map(|&y| f.eval_any(Complex64::new(x, y))).collect();
    let re: Vec<f64> = vals.iter().map(|v| v.re).collect();
    let im: Vec<f64> = vals.iter().map(|v| v.im).collect();
    let r = limit_of("boundary value (real part)", &sched.y_values, &re, sched.extrapolation)?;
    let i = limit_of("boundary value (imaginary part)", &sched.y_values, &im, sched.extrapolation)?;
    Ok(Complex64::new(r.value, i.value))
}

/// Principal value `p.v. int_support g(t)/(t - s) dt`.
pub fn pv_integral<G: Fn(f64) -> f64>(g: G, singularity: f64, support: (f64, f64)) -> Result<f64> {
    pv_integral_with_breaks(g, singularity, support, &[])
}

/// As [`pv_integral`], with points where `g` is not smooth.
///
/// Pairs `t = s + u` with `t = s - u`, which removes the singular part, and
/// integrates `[g(s+u) - g(s-u)]/u` over a geometric ladder of excision radii.
/// For `g` Hölder at `s` the ladder increments decay geometrically and their
/// tail is summed in closed form; increments that fail to decay signal a
/// non-Hölder (or discontinuous) `g`.
pub fn pv_integral_with_breaks<G: Fn(f64) -> f64>(g: G, s: f64, support: (f64, f64), breaks: &[f64]) -> Result<f64> {
    let (lo, hi) = support;
    if !(lo < hi) || s.is_nan() {
        return Err(Error::Precondition("pv integral needs a non-empty support".into()));
    }
    let opts = QuadOptions::with_tol(1e-14, 1e-12);
    let inside = |t: f64| if t >= lo && t <= hi { g(t) } else { 0.0 };

    if s < lo || s > hi {
        if !(lo.is_finite() && hi.is_finite()) {
            let a = if lo.is_finite() { lo } else { hi };
            let sign = if lo.is_finite() { 1.0 } else { -1.0 };
            let r = integrate_to_infinity(|u| inside(a + sign * u) / (a + sign * u - s), 0.0, &opts);
            return Ok(r.value);
        }
        let mut br = vec![lo, hi];
        br.extend(breaks.iter().copied().filter(|b| *b > lo && *b < hi));
        return Ok(integrate_breaks(|t| g(t) / (t - s), &br, &opts).value);
    }

    let q = |u: f64| (inside(s + u) - inside(s - u)) / u;
    let mut hints: Vec<f64> = breaks.iter().map(|b| (b - s).abs()).collect();
    hints.push(hi - s);
    hints.push(s - lo);
    hints.retain(|h| h.is_finite() && *h > 0.0);

    let reach = (hi - s).max(s - lo);
    let (mut total, mut upper) = if reach.is_finite() {
        (0.0, reach)
    } else {
        let u0 = 1.0f64.max(s.abs());
        (integrate_to_infinity(|u| q(u0 + u), 0.0, &opts).value, u0)
    };

    let mut prev: Option<f64> = None;
    for _ in 0..60 {
        let lower = upper / 4.0;
        let mut br = vec![lower, upper];
        br.extend(hints.iter().copied().filter(|h| *h > lower && *h < upper));
        let d = integrate_breaks(&q, &br, &opts).value;
        total += d;
        let scale = total.abs().max(1.0);
        if let Some(p) = prev {
            if d.abs() <= 1e-14 * scale && p.abs() <= 1e-12 * scale {
                return Ok(total);
            }
            let r = d / p;
            if p != 0.0 && r.abs() < 0.8 {
                let tail = d * r / (1.0 - r);
                if tail.abs() < 1e-12 * scale {
                    return Ok(total + tail);
                }
            }
        }
        prev = Some(d);
        upper = lower;
    }
    Err(Error::convergence(
        format!("principal value at {s} does not settle: integrand is not Hölder there"),
        vec![LimitSample { h: upper, value: total }],
    ))
}

/// Boundary value of `a + b z + int (1/(t - z) - t/(1+t^2)) (rho(t) dt + d extra(t))`
/// at a real point `x` where `rho` is Hölder and `extra` vanishes.
pub fn boundary_value(a: f64, b: f64, rho: &DensityComponent, extra: &MeasureSpec, x: f64) -> Result<Complex64> {
    if !rho.is_continuous_at(x) {
        return Err(Error::Precondition(format!("density is not continuous at {x}")));
    }
    if extra.lebesgue > 0.0 || extra.point_masses.iter().any(|p| p.m > 0.0 && p.xi == x) {
        return Err(Error::Precondition(format!("extra measure is supported at {x}")));
    }
    for d in &extra.densities {
        let (lo, hi) = d.support();
        if x >= lo && x <= hi && d.max_value() > 0.0 {
            return Err(Error::Precondition(format!("extra density is supported at {x}")));
        }
    }
    let breaks: Vec<f64> = rho.as_poly().map(|p| p.breaks().to_vec()).unwrap_or_default();
    let support = rho.support();
    let pv = pv_integral_with_breaks(|t| rho.value(t), x, support, &breaks)?;
    let re = a + b * x + pv - rho.regularizer() + extra.kernel_integral(Complex64::new(x, 0.0)).re;
    Ok(Complex64::new(re, PI * rho.value(x)))
}

/// `conj(f(conj z)) + 2 pi i rho(z)` for `Im z < 0`: the continuation of `f`
/// through an interval where its density extends analytically.
pub fn analytic_continuation_below<R>(rho: R, f: &HerglotzFn, z: Complex64) -> Result<Complex64>
where
    R: Fn(Complex64) -> Complex64,
{
    let sym = f.symmetric_extension(z)?;
    Ok(sym + 2.0 * PI * I * rho(z))
}

/// As [`analytic_continuation_below`] for a density with a known extension.
pub fn continuation_with_density(rho: &DensityComponent, f: &HerglotzFn, z: Complex64) -> Result<Complex64> {
    let r = rho
        .analytic_extension(z)
        .ok_or_else(|| Error::Domain(format!("no analytic extension of the density at {z}")))?;
    analytic_continuation_below(|_| r, f, z)
}
