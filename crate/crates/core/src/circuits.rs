//! Passive one-port circuits: impedances, the positive-real / Herglotz
//! rotations, impulse responses and absorbed-energy checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::halton;
use crate::herglotz::{self, HerglotzFn};
use crate::measures::{DensitySpec, MeasureSpec};
use crate::quad::{integrate_breaks, QuadOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance of the sampled positive-real check.
pub const PR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Circuit {
    /// `Z(s) = s L + R`.
    SeriesRl { l: f64, r: f64 },
    /// `Z(s) = 1 / (s C + 1/Z1(s))`.
    ShuntC { c: f64, inner: Box<Circuit> },
    /// `Z(s) = num(s) / den(s)`, coefficients in ascending powers of `s`.
    Rational { num: Vec<f64>, den: Vec<f64> },
}

impl Circuit {
    pub fn series_rl(l: f64, r: f64) -> Result<Self> {
        let c = Circuit::SeriesRl { l, r };
        c.validate()?;
        Ok(c)
    }

    pub fn shunt_c(c: f64, inner: Circuit) -> Result<Self> {
        let c = Circuit::ShuntC { c, inner: Box::new(inner) };
        c.validate()?;
        Ok(c)
    }

    pub fn resistor(r: f64) -> Result<Self> {
        Self::series_rl(0.0, r)
    }

    pub fn rational(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        let c = Circuit::Rational { num, den };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Circuit::SeriesRl { l, r } => {
                if !(l.is_finite() && r.is_finite() && *l >= 0.0 && *r >= 0.0) {
                    return Err(Error::Precondition("series RL needs L, R >= 0".into()));
                }
                Ok(())
            }
            Circuit::ShuntC { c, inner } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::Precondition("shunt capacitance must be > 0".into()));
                }
                inner.validate()?;
                let (num, den) = inner.to_rational();
                if den[0] == 0.0 {
                    return Err(Error::Precondition("Z1(0) must be finite".into()));
                }
                if num.len() < den.len() {
                    return Err(Error::Precondition("Z1(inf) = 0 is not supported".into()));
                }
                Ok(())
            }
            Circuit::Rational { num, den } => {
                let num = trim(num);
                let den = trim(den);
                if num.is_empty() || den.is_empty() || num.iter().chain(&den).any(|c| !c.is_finite()) {
                    return Err(Error::Precondition("rational impedance needs finite, nonzero polynomials".into()));
                }
                if num.len() > den.len() + 1 || den.len() > num.len() + 1 {
                    return Err(Error::Precondition("degrees of a PR function differ by at most one".into()));
                }
                let z = |s: Complex64| horner_c(&num, s) / horner_c(&den, s);
                check_pr(&z)
            }
        }
    }

    /// Numerator and denominator in ascending powers of `s`.
    pub fn to_rational(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Circuit::SeriesRl { l, r } => (trim(&[*r, *l]), vec![1.0]),
            Circuit::ShuntC { c, inner } => {
                let (n1, d1) = inner.to_rational();
                // 1/(sC + d1/n1) = n1 / (sC n1 + d1)
                let mut den = vec![0.0; (n1.len() + 1).max(d1.len())];
                for (k, a) in n1.iter().enumerate() {
                    den[k + 1] += c * a;
                }
                for (k, a) in d1.iter().enumerate() {
                    den[k] += a;
                }
                (n1, trim(&den))
            }
            Circuit::Rational { num, den } => (trim(num), trim(den)),
        }
    }

    fn eval_raw(&self, s: Complex64) -> Complex64 {
        match self {
            Circuit::SeriesRl { l, r } => s * *l + *r,
            Circuit::ShuntC { c, inner } => 1.0 / (s * *c + 1.0 / inner.eval_raw(s)),
            Circuit::Rational { num, den } => horner_c(num, s) / horner_c(den, s),
        }
    }

    pub fn impedance(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re > 0.0) {
            return Err(Error::Domain(format!("{s} is not in the open right half-plane")));
        }
        self.validate()?;
        Ok(self.eval_raw(s))
    }

    /// Boundary value `Z(-i omega)` on the imaginary axis.
    pub fn frequency_response(&self, omega: f64) -> Complex64 {
        self.eval_raw(Complex64::new(0.0, -omega))
    }

    /// `omega -> i Z(-i omega)`.
    pub fn herglotz(&self) -> Result<HerglotzFn> {
        pr_to_herglotz(PrFunction::Circuit { circuit: self.clone() })
    }

    /// Impulse response `w(t)` with `Z(s) = int_0^inf w(t) e^{-st} dt`.
    pub fn impulse_response(&self) -> Result<ImpulseResponse> {
        self.validate()?;
        let (num, den) = self.to_rational();
        let lead = *den.last().unwrap();
        let num: Vec<f64> = num.iter().map(|c| c / lead).collect();
        let den: Vec<f64> = den.iter().map(|c| c / lead).collect();
        let (quot, rem) = poly_div(&num, &den);
        if quot.len() > 2 {
            return Err(Error::Precondition("impedance grows faster than s".into()));
        }
        let q0 = quot.first().copied().unwrap_or(0.0);
        let q1 = quot.get(1).copied().unwrap_or(0.0);

        let mut ir = ImpulseResponse {
            derivative_delta_coefficient: q1,
            delta_coefficient: q0,
            measure: MeasureSpec::zero(),
            modes: Vec::new(),
        };
        if rem.iter().all(|c| *c == 0.0) || den.len() < 2 {
            return Ok(ir);
        }
        let poles = roots(&den);
        for (i, p) in poles.iter().enumerate() {
            if poles.iter().enumerate().any(|(j, q)| j != i && (p - q).norm() < 1e-8 * (1.0 + p.norm())) {
                return Err(Error::Unsupported("impedance with repeated poles".into()));
            }
        }
        let dden = derivative(&den);
        let mut masses: Vec<(f64, f64)> = Vec::new();
        for p in poles {
            let r = horner_c(&rem, p) / horner_c(&dden, p);
            if p.re.abs() <= 1e-12 * (1.0 + p.norm()) {
                // lossless resonance: r e^{i xi t} pairs up into a cosine mass
                masses.push((p.im, r.re));
            } else {
                ir.modes.push(ExpMode { residue: r, pole: p });
            }
        }
        ir.measure = MeasureSpec::discrete(masses);
        Ok(ir)
    }
}

fn trim(c: &[f64]) -> Vec<f64> {
    let mut v = c.to_vec();
    while v.len() > 1 && *v.last().unwrap() == 0.0 {
        v.pop();
    }
    if v.len() == 1 && v[0] == 0.0 {
        v.clear();
    }
    v
}

fn horner_c(c: &[f64], s: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * s + k)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect()
}

/// Quotient and remainder of `num / den` (ascending coefficients).
fn poly_div(num: &[f64], den: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut rem = num.to_vec();
    let dn = den.len();
    if rem.len() < dn {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0.0; rem.len() - dn + 1];
    for k in (0..quot.len()).rev() {
        let q = rem[k + dn - 1] / den[dn - 1];
        quot[k] = q;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= q * d;
        }
    }
    rem.truncate(dn - 1);
    (quot, rem)
}

/// Roots of a monic polynomial from the eigenvalues of its companion matrix.
fn roots(monic: &[f64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Sampled positive-real check: 512 quasi-random points of the right
/// half-plane plus the positive real axis.
pub fn check_pr<F: Fn(Complex64) -> Complex64>(z: &F) -> Result<()> {
    for i in 1..=512 {
        let r = 10f64.powf(-3.0 + 6.0 * halton(i, 2));
        let theta = PI * (halton(i, 3) - 0.5) * 0.998;
        let s = Complex64::from_polar(r, theta);
        let w = z(s);
        if !(w.re >= -PR_TOL * (1.0 + w.norm())) {
            return Err(Error::Precondition(format!("Re Z({s}) = {} < 0: not positive real", w.re)));
        }
    }
    for k in 0..64 {
        let s = Complex64::new(10f64.powf(-3.0 + 6.0 * k as f64 / 63.0), 0.0);
        let w = z(s);
        if w.im.abs() > PR_TOL * (1.0 + w.norm()) {
            return Err(Error::Precondition(format!("Z({}) = {w} is not real", s.re)));
        }
    }
    Ok(())
}

/// A positive-real function of `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrFunction {
    Circuit { circuit: Circuit },
    /// `s -> (1/i) f(i s)` for a symmetric Herglotz function `f`.
    Rotated { f: Box<HerglotzFn> },
}

impl PrFunction {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        match self {
            PrFunction::Circuit { circuit } => circuit.eval_raw(s),
            PrFunction::Rotated { f } => -I * f.eval_any(I * s),
        }
    }

    /// Analytic continuation to any `s` where it is known.
    pub fn eval_continued(&self, s: Complex64) -> Option<Complex64> {
        match self {
            PrFunction::Circuit { circuit } => Some(circuit.eval_raw(s)),
            PrFunction::Rotated { f } => f.eval_continued(I * s).map(|w| -I * w),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PrFunction::Circuit { circuit } => circuit.validate(),
            PrFunction::Rotated { f } => f.validate(),
        }
    }
}

/// `h(omega) = i Z(-i omega)`.
pub fn pr_to_herglotz(z: PrFunction) -> Result<HerglotzFn> {
    z.validate()?;
    check_pr(&|s| z.eval(s))?;
    Ok(match z {
        PrFunction::Rotated { f } => *f,
        other => HerglotzFn::PrRotation { pr: Box::new(other) },
    })
}

/// `W(s) = (1/i) f(i s)`.
pub fn herglotz_to_pr(f: HerglotzFn) -> Result<PrFunction> {
    f.validate()?;
    let grid = herglotz::default_grid();
    let ok = grid.iter().all(|&z| {
        let w = f.eval_any(z);
        (f.eval_any(-z.conj()) + w.conj()).norm() <= 1e-9 * (1.0 + w.norm())
    });
    if !ok {
        return Err(Error::Precondition("function is not symmetric".into()));
    }
    Ok(match f {
        HerglotzFn::PrRotation { pr } => *pr,
        other => PrFunction::Rotated { f: Box::new(other) },
    })
}

/// `residue * e^{pole t}` for `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpMode {
    pub residue: Complex64,
    pub pole: Complex64,
}

/// `w(t) = b delta'(t) + d delta(t) + H(t) [int cos(xi t) dmu(xi) + sum_k r_k e^{p_k t}]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpulseResponse {
    pub derivative_delta_coefficient: f64,
    #[serde(default)]
    pub delta_coefficient: f64,
    pub measure: MeasureSpec,
    #[serde(default)]
    pub modes: Vec<ExpMode>,
}

impl ImpulseResponse {
    pub fn from_measure(b: f64, measure: MeasureSpec) -> Self {
        ImpulseResponse { derivative_delta_coefficient: b, delta_coefficient: 0.0, measure, modes: Vec::new() }
    }
}

/// The regular part of the impulse response at `t > 0`.
pub fn impulse_response_eval(ir: &ImpulseResponse, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("impulse response is sampled only for t > 0".into()));
    }
    if ir.measure.total_mass().is_none() {
        return Err(Error::InvalidMeasure("cosine transform needs a finite measure".into()));
    }
    let mut s: f64 = ir.measure.point_masses.iter().map(|p| p.m * (p.xi * t).cos()).sum();
    for d in &ir.measure.densities {
        s += match d.spec() {
            DensitySpec::Poisson { weight } => weight * (-t).exp(),
            _ => {
                let (a, b) = d.support();
                let pieces = (((b - a) * t / PI).ceil() as usize).clamp(1, 10_000);
                let mut br: Vec<f64> = (0..=pieces).map(|k| a + (b - a) * k as f64 / pieces as f64).collect();
                if let Some(p) = d.as_poly() {
                    br.extend_from_slice(p.breaks());
                }
                integrate_breaks(|x| (x * t).cos() * d.value(x), &br, &QuadOptions::with_tol(1e-12, 1e-12)).value
            }
        };
    }
    s += ir.modes.iter().map(|m| (m.residue * (m.pole * t).exp()).re).sum::<f64>();
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimate {
    pub energy: f64,
    /// Set when the sampling step exceeds 1/1000 of the input's support.
    pub under_resolved: bool,
}

pub enum EnergySource<'a> {
    Circuit(&'a Circuit),
    Response(&'a ImpulseResponse),
}

/// `int_0^T v(t) u(t) dt` with `v = w * u`, for an input sampled at
/// `t_j = j dt` (zero before `t_0` and after the last sample) and treated as
/// piecewise linear.
pub fn admittance_energy(u: &[f64], source: EnergySource, t_end: f64, dt: f64) -> Result<EnergyEstimate> {
    if !(dt > 0.0) || !(t_end >= 0.0) {
        return Err(Error::Precondition("need dt > 0 and T >= 0".into()));
    }
    let under_resolved = match (u.iter().position(|v| *v != 0.0), u.iter().rposition(|v| *v != 0.0)) {
        (Some(a), Some(b)) => dt > ((b - a + 1) as f64 * dt) / 1000.0,
        _ => false,
    };
    // samples up to T; the last partial step is linearly interpolated
    let steps = (t_end / dt).floor() as usize;
    let mut uu: Vec<f64> = (0..=steps).map(|j| u.get(j).copied().unwrap_or(0.0)).collect();
    let rem = t_end - steps as f64 * dt;
    let mut last_h = dt;
    if rem > 1e-12 * dt {
        let a = u.get(steps).copied().unwrap_or(0.0);
        let b = u.get(steps + 1).copied().unwrap_or(0.0);
        uu.push(a + (b - a) * rem / dt);
        last_h = rem;
    }
    let u_end = *uu.last().unwrap();
    let u0 = uu[0];
    let step = |j: usize| if j + 2 == uu.len() { last_h } else { dt };
    let trap = |v: &[f64]| -> f64 { (0..uu.len() - 1).map(|j| 0.5 * step(j) * (v[j] * uu[j] + v[j + 1] * uu[j + 1])).sum() };

    if let EnergySource::Circuit(Circuit::SeriesRl { l, r }) = source {
        let sq: Vec<f64> = uu.clone();
        return Ok(EnergyEstimate { energy: 0.5 * l * (u_end * u_end - u0 * u0) + r * trap(&sq), under_resolved });
    }
    let ir = match source {
        EnergySource::Circuit(c) => c.impulse_response()?,
        EnergySource::Response(r) => r.clone(),
    };

    let mut energy = 0.5 * ir.derivative_delta_coefficient * (u_end * u_end - u0 * u0);
    energy += ir.delta_coefficient * trap(&uu);

    let mut modes = ir.modes.clone();
    let mut smooth = MeasureSpec::zero();
    smooth.densities = ir.measure.densities.clone();
    if ir.measure.lebesgue > 0.0 {
        return Err(Error::InvalidMeasure("cosine transform needs a finite measure".into()));
    }
    for p in &ir.measure.point_masses {
        modes.push(ExpMode { residue: Complex64::new(0.5 * p.m, 0.0), pole: Complex64::new(0.0, p.xi) });
        modes.push(ExpMode { residue: Complex64::new(0.5 * p.m, 0.0), pole: Complex64::new(0.0, -p.xi) });
    }

    let mut v = vec![0.0; uu.len()];
    for m in &modes {
        let mut y = Complex64::new(0.0, 0.0);
        for j in 0..uu.len() - 1 {
            let h = step(j);
            let (e, phi1, phi2) = mode_weights(m.pole, h);
            y = e * y + phi1 * uu[j] + phi2 * ((uu[j + 1] - uu[j]) / h);
            v[j + 1] += (m.residue * y).re;
        }
    }
    if !smooth.densities.is_empty() {
        let kernel_ir = ImpulseResponse::from_measure(0.0, smooth);
        let g: Vec<f64> = (0..uu.len())
            .map(|j| if j == 0 { impulse_response_eval(&kernel_ir, 1e-12 * dt) } else { impulse_response_eval(&kernel_ir, j as f64 * dt) })
            .collect::<Result<_>>()?;
        for (k, vk) in v.iter_mut().enumerate().skip(1) {
            let mut s = 0.5 * (g[k] * uu[0] + g[0] * uu[k]);
            for j in 1..k {
                s += g[k - j] * uu[j];
            }
            *vk += s * dt;
        }
    }
    energy += trap(&v);
    Ok(EnergyEstimate { energy, under_resolved })
}

/// `(e^{p h}, int_0^h e^{p(h-s)} ds, int_0^h e^{p(h-s)} s ds)`.
fn mode_weights(p: Complex64, h: f64) -> (Complex64, Complex64, Complex64) {
    let z = p * h;
    let e = z.exp();
    if z.norm() < 1e-3 {
        let phi1 = h * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0);
        let phi2 = h * h * (0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0);
        (e, phi1, phi2)
    } else {
        ((e), (e - 1.0) / p, (e - 1.0 - z) / (p * p))
    }
}
