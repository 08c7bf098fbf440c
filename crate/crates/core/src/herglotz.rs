//! Herglotz-Nevanlinna functions: canonical representations, closed forms
//! and expression trees built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::circuits::PrFunction;
use crate::error::{Error, Result};
use crate::extrap::richardson;
use crate::grid;
use crate::measures::{DensityComponent, MeasureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Positivity tolerance for `Im f` on sampled grids.
pub const POSITIVITY_TOL: f64 = 1e-12;

/// `f(z) = a + b z + int (1/(x - z) - x/(1+x^2)) dmu(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerglotzRep {
    pub a: f64,
    pub b: f64,
    pub mu: MeasureSpec,
}

impl HerglotzRep {
    pub fn new(a: f64, b: f64, mu: MeasureSpec) -> Result<Self> {
        let rep = HerglotzRep { a, b, mu };
        rep.validate()?;
        Ok(rep)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !(self.b.is_finite() && self.b >= 0.0) {
            return Err(Error::InvalidFunction(format!("need finite a and b >= 0, got a={} b={}", self.a, self.b)));
        }
        self.mu.growth_check().map(|_| ())
    }

    /// Evaluates the representation formula; also valid below the real axis
    /// (where it gives the symmetric extension) and at real points away
    /// from the support of `mu`.
    pub fn eval_formula(&self, z: Complex64) -> Complex64 {
        self.a + self.b * z + self.mu.kernel_integral(z)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        require_upper(z)?;
        Ok(self.eval_formula(z))
    }

    /// True when the function is a real constant (`b = 0`, `mu = 0`).
    pub fn is_real_constant(&self) -> bool {
        self.b == 0.0 && self.mu.is_zero()
    }
}

fn require_upper(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("{z} is not in the open upper half-plane")));
    }
    Ok(())
}

/// `a + b z + int (1 + x z)/(x - z) dsigma(x)` for a finite measure `sigma`.
pub fn eval_finite_form(a: f64, b: f64, sigma: &MeasureSpec, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return Err(Error::Domain("finite form needs Im z != 0".into()));
    }
    let total = sigma
        .total_mass()
        .ok_or_else(|| Error::InvalidMeasure("finite form needs a finite measure".into()))?;
    // (1 + x z)/(x - z) = z + (1 + z^2)/(x - z)
    let mut cauchy = Complex64::new(0.0, 0.0);
    for p in &sigma.point_masses {
        cauchy += p.m / (p.xi - z);
    }
    for d in &sigma.densities {
        cauchy += d.cauchy(z);
    }
    Ok(a + b * z + total * z + (1.0 + z * z) * cauchy)
}

/// `exp(gamma + int (1/(t - z) - t/(1+t^2)) theta(t) dt)`.
pub fn exp_representation(gamma: f64, theta: &DensityComponent, z: Complex64) -> Result<Complex64> {
    check_theta(theta)?;
    require_upper(z)?;
    Ok((gamma + theta.kernel_integral(z)).exp())
}

fn check_theta(theta: &DensityComponent) -> Result<()> {
    if theta.min_value() < -1e-12 || theta.max_value() > 1.0 + 1e-12 {
        return Err(Error::InvalidFunction("exponential representation needs 0 <= theta <= 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HerglotzFn {
    Canonical { rep: HerglotzRep },
    Identity,
    Constant { re: f64, im: f64 },
    /// `-mass / (z - location)`.
    Pole { location: f64, mass: f64 },
    Tan,
    Log,
    Sqrt,
    /// `(1/pi) Log((z - delta)/(z + delta))`.
    HDelta { delta: f64 },
    Sum { terms: Vec<HerglotzFn> },
    Scaled { factor: f64, inner: Box<HerglotzFn> },
    /// `-1 / inner(z)`.
    NegInverse { inner: Box<HerglotzFn> },
    Compose { outer: Box<HerglotzFn>, inner: Box<HerglotzFn> },
    /// `z * inner(z^2)` for a Stieltjes function `inner`.
    SymmetrizedStieltjes { inner: Box<HerglotzFn> },
    Exponential { gamma: f64, theta: DensityComponent },
    /// `omega -> i Z(-i omega)` for a positive-real `Z`.
    PrRotation { pr: Box<PrFunction> },
}

impl HerglotzFn {
    pub fn canonical(rep: HerglotzRep) -> Self {
        HerglotzFn::Canonical { rep }
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        let f = HerglotzFn::Constant { re: c.re, im: c.im };
        f.validate()?;
        Ok(f)
    }

    pub fn pole(location: f64, mass: f64) -> Result<Self> {
        let f = HerglotzFn::Pole { location, mass };
        f.validate()?;
        Ok(f)
    }

    pub fn h_delta(delta: f64) -> Result<Self> {
        let f = HerglotzFn::HDelta { delta };
        f.validate()?;
        Ok(f)
    }

    pub fn sum(terms: Vec<HerglotzFn>) -> Self {
        HerglotzFn::Sum { terms }
    }

    pub fn scaled(factor: f64, inner: HerglotzFn) -> Result<Self> {
        let f = HerglotzFn::Scaled { factor, inner: Box::new(inner) };
        f.validate()?;
        Ok(f)
    }

    pub fn neg_inverse(inner: HerglotzFn) -> Self {
        HerglotzFn::NegInverse { inner: Box::new(inner) }
    }

    pub fn exponential(gamma: f64, theta: DensityComponent) -> Result<Self> {
        check_theta(&theta)?;
        Ok(HerglotzFn::Exponential { gamma, theta })
    }

    /// Checks parameter constraints of every node in the tree.
    pub fn validate(&self) -> Result<()> {
        use HerglotzFn::*;
        let bad = |m: &str| Err(Error::InvalidFunction(m.to_string()));
        match self {
            Canonical { rep } => rep.validate(),
            Identity | Tan | Log | Sqrt => Ok(()),
            Constant { re, im } => {
                if re.is_finite() && im.is_finite() && *im >= 0.0 {
                    Ok(())
                } else {
                    bad("constant must be finite with Im >= 0")
                }
            }
            Pole { location, mass } => {
                if location.is_finite() && mass.is_finite() && *mass >= 0.0 {
                    Ok(())
                } else {
                    bad("pole needs a finite location and mass >= 0")
                }
            }
            HDelta { delta } => {
                if delta.is_finite() && *delta > 0.0 {
                    Ok(())
                } else {
                    bad("h_delta needs delta > 0")
                }
            }
            Sum { terms } => terms.iter().try_for_each(|t| t.validate()),
            Scaled { factor, inner } => {
                if !(factor.is_finite() && *factor >= 0.0) {
                    return bad("scale factor must be >= 0");
                }
                inner.validate()
            }
            NegInverse { inner } => inner.validate(),
            Compose { outer, inner } => {
                outer.validate()?;
                inner.validate()?;
                if inner.is_real_constant() {
                    return bad("composition with a real constant leaves the upper half-plane");
                }
                Ok(())
            }
            SymmetrizedStieltjes { inner } => inner.validate(),
            Exponential { theta, .. } => check_theta(theta),
            PrRotation { pr } => pr.validate(),
        }
    }

    pub fn is_real_constant(&self) -> bool {
        match self {
            HerglotzFn::Constant { im, .. } => *im == 0.0,
            HerglotzFn::Canonical { rep } => rep.is_real_constant(),
            HerglotzFn::Scaled { factor, inner } => *factor == 0.0 || inner.is_real_constant(),
            HerglotzFn::Sum { terms } => terms.iter().all(|t| t.is_real_constant()),
            _ => false,
        }
    }

    /// Value at `z` with `Im z > 0`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        require_upper(z)?;
        Ok(self.eval_raw(z))
    }

    /// Value on the closed plane: the function itself above the axis, its
    /// symmetric extension below, and the limit from above on the axis where
    /// the node has a closed form for it.
    pub fn eval_any(&self, z: Complex64) -> Complex64 {
        if z.im < 0.0 {
            self.eval_raw(z.conj()).conj()
        } else {
            self.eval_raw(Complex64::new(z.re, z.im.abs()))
        }
    }

    pub fn symmetric_extension(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im < 0.0) {
            return Err(Error::Domain(format!("{z} is not in the lower half-plane")));
        }
        Ok(self.eval_raw(z.conj()).conj())
    }

    fn eval_raw(&self, z: Complex64) -> Complex64 {
        use HerglotzFn::*;
        match self {
            Canonical { rep } => rep.eval_formula(z),
            Identity => z,
            Constant { re, im } => Complex64::new(*re, *im),
            Pole { location, mass } => -*mass / (z - location),
            Tan => {
                let q = (2.0 * I * z).exp();
                I * (1.0 - q) / (1.0 + q)
            }
            Log => z.ln(),
            Sqrt => z.sqrt(),
            HDelta { delta } => h_delta_value(z, *delta),
            Sum { terms } => terms.iter().map(|t| t.eval_raw(z)).sum(),
            Scaled { factor, inner } => *factor * inner.eval_raw(z),
            NegInverse { inner } => -1.0 / inner.eval_raw(z),
            Compose { outer, inner } => outer.eval_any(inner.eval_raw(z)),
            SymmetrizedStieltjes { inner } => z * inner.eval_any(z * z),
            Exponential { gamma, theta } => (*gamma + theta.kernel_integral(z)).exp(),
            PrRotation { pr } => I * pr.eval(-I * z),
        }
    }

    /// Value of the analytic continuation of `f` (not the symmetric
    /// extension) at `z`, where the node knows one.
    pub fn eval_continued(&self, z: Complex64) -> Option<Complex64> {
        if z.im >= 0.0 {
            return Some(self.eval_any(z));
        }
        use HerglotzFn::*;
        match self {
            Canonical { rep } => {
                let compact = rep.mu.compact_support().is_some();
                compact.then(|| rep.eval_formula(z))
            }
            Identity => Some(z),
            Constant { re, im } => Some(Complex64::new(*re, *im)),
            Pole { location, mass } => Some(-*mass / (z - location)),
            // real on the real axis, so the reflection is the continuation
            Tan => Some(self.eval_raw(z.conj()).conj()),
            Log => Some(z.ln()),
            Sqrt => Some(z.sqrt()),
            HDelta { delta } => Some(h_delta_value(z, *delta)),
            Sum { terms } => terms.iter().map(|t| t.eval_continued(z)).sum(),
            Scaled { factor, inner } => inner.eval_continued(z).map(|w| *factor * w),
            NegInverse { inner } => inner.eval_continued(z).map(|w| -1.0 / w),
            Compose { outer, inner } => outer.eval_continued(inner.eval_continued(z)?),
            SymmetrizedStieltjes { inner } => inner.eval_continued(z * z).map(|w| z * w),
            Exponential { .. } => None,
            PrRotation { pr } => pr.eval_continued(-I * z).map(|w| I * w),
        }
    }

    /// The canonical triple, when it is known in closed form.
    pub fn canonical_rep(&self) -> Option<HerglotzRep> {
        use HerglotzFn::*;
        match self {
            Canonical { rep } => Some(rep.clone()),
            Identity => Some(HerglotzRep { a: 0.0, b: 1.0, mu: MeasureSpec::zero() }),
            Constant { re, im } => Some(HerglotzRep { a: *re, b: 0.0, mu: MeasureSpec::lebesgue(*im) }),
            Pole { location, mass } => Some(HerglotzRep {
                a: mass * location / (1.0 + location * location),
                b: 0.0,
                mu: MeasureSpec::dirac(*location, *mass),
            }),
            HDelta { delta } => Some(HerglotzRep {
                a: 0.0,
                b: 0.0,
                mu: MeasureSpec::zero().with_density(DensityComponent::constant(-delta, *delta, 1.0 / PI).ok()?),
            }),
            Sum { terms } => {
                let mut acc = HerglotzRep { a: 0.0, b: 0.0, mu: MeasureSpec::zero() };
                for t in terms {
                    let r = t.canonical_rep()?;
                    acc.a += r.a;
                    acc.b += r.b;
                    acc.mu = acc.mu.add(&r.mu);
                }
                Some(acc)
            }
            _ => None,
        }
    }
}

/// `(1/pi) Log((z - delta)/(z + delta))`, computed as a log-modulus difference
/// plus the angle subtended by `[-delta, delta]` so that the limit from above
/// is exact on the real axis.
pub fn h_delta_value(z: Complex64, delta: f64) -> Complex64 {
    let zm = z - delta;
    let zp = z + delta;
    let re = (zm.norm().ln() - zp.norm().ln()) / PI;
    let mut angle = zm.im.atan2(zm.re) - zp.im.atan2(zp.re);
    // for Im z >= 0 both arguments lie in [0, pi] and the difference in [0, pi]
    debug_assert!(z.im < 0.0 || (-1e-12..=PI + 1e-12).contains(&angle));
    if z.im >= 0.0 {
        angle = angle.clamp(0.0, PI);
    }
    Complex64::new(re, angle / PI)
}

/// `F(z) = f(g(z))`.
pub fn compose(f: HerglotzFn, g: HerglotzFn) -> Result<HerglotzFn> {
    let c = HerglotzFn::Compose { outer: Box::new(f), inner: Box::new(g) };
    c.validate()?;
    Ok(c)
}

/// `(a, b)` with `a = Re f(i)` and `b = lim f(iy)/(iy)`.
pub fn recover_a_b(f: &HerglotzFn) -> Result<(f64, f64)> {
    let a = f.eval(I)?.re;
    let ys = [1e2, 1e3, 1e4, 1e5];
    let mut h = Vec::new();
    let mut v = Vec::new();
    for y in ys {
        let w = f.eval(Complex64::new(0.0, y))? / Complex64::new(0.0, y);
        h.push(1.0 / y);
        v.push(w.re);
    }
    let (b, err) = richardson(&h, &v);
    if !b.is_finite() || err > 1e-6 * b.abs().max(1.0) {
        return Err(Error::Extrapolation(format!("b estimate did not settle (estimate {b}, error {err})")));
    }
    Ok((a, if b.abs() < 1e-12 { 0.0 } else { b }))
}

/// Largest violation of `Im f >= 0` over the grid (0 when none).
pub fn positivity_violation(f: &HerglotzFn, grid: &[Complex64]) -> f64 {
    grid.iter()
        .map(|&z| (-f.eval_raw(z).im).max(0.0))
        .fold(0.0, f64::max)
}

pub fn is_symmetric(f: &HerglotzFn, grid: &[Complex64], tol: f64) -> bool {
    grid.iter().all(|&z| {
        let lhs = f.eval_raw(-z.conj());
        (lhs + f.eval_raw(z).conj()).norm() <= tol
    })
}

pub fn is_stieltjes(f: &HerglotzFn, grid: &[Complex64], neg_axis_grid: &[f64], tol: f64) -> bool {
    let upper = grid.iter().all(|&z| {
        let w = f.eval_raw(z);
        w.im >= -tol && (z * w).im >= -tol
    });
    upper && neg_axis_grid.iter().all(|&x| boundary_limit_real(f, x) >= -tol)
}

/// `lim_{y -> 0+} Re f(x + iy)` by Richardson extrapolation in `y`.
fn boundary_limit_real(f: &HerglotzFn, x: f64) -> f64 {
    let ys = [1e-4, 1e-5, 1e-6, 1e-7];
    let v: Vec<f64> = ys.iter().map(|&y| f.eval_raw(Complex64::new(x, y)).re).collect();
    richardson(&ys, &v).0
}

/// Default grids used for the sampled subclass checks.
pub fn default_grid() -> Vec<Complex64> {
    grid::upper_half_plane(256, 1.0)
}

/// `z -> z h(z^2)`.
pub fn symmetric_from_stieltjes(h: HerglotzFn) -> Result<HerglotzFn> {
    if !is_stieltjes(&h, &default_grid(), &grid::negative_axis(64), 1e-9) {
        return Err(Error::Precondition("input is not a Stieltjes function".into()));
    }
    Ok(HerglotzFn::SymmetrizedStieltjes { inner: Box::new(h) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f1() -> HerglotzFn {
        HerglotzFn::pole(3.0, 1.0).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let rep = HerglotzRep::new(0.3, 0.0, MeasureSpec::dirac(3.0, 1.0)).unwrap();
        let w = rep.eval(I).unwrap();
        let oracle = -1.0 / (I - 3.0);
        assert!((w - oracle).norm() < 1e-15 && (w - c(0.3, 0.1)).norm() < 1e-15);
        let id = HerglotzRep::new(0.0, 1.0, MeasureSpec::zero()).unwrap();
        assert_eq!(id.eval(c(2.0, 5.0)).unwrap(), c(2.0, 5.0));
        let f2 = HerglotzRep::new(0.0, 0.0, MeasureSpec::lebesgue(1.0)).unwrap();
        assert!((f2.eval(I).unwrap() - I).norm() < 1e-15);
        assert!(rep.eval(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn finite_form_examples() {
        let s = MeasureSpec::dirac(3.0, 0.1);
        assert!((eval_finite_form(0.3, 0.0, &s, I).unwrap() - c(0.3, 0.1)).norm() < 1e-15);
        assert_eq!(eval_finite_form(5.0, 2.0, &MeasureSpec::zero(), I).unwrap(), c(5.0, 2.0));
        let w = eval_finite_form(0.0, 0.0, &MeasureSpec::dirac(0.0, 1.0), c(0.0, 4.0)).unwrap();
        assert!((w - c(0.0, 0.25)).norm() < 1e-15);
        assert!(eval_finite_form(0.0, 0.0, &MeasureSpec::lebesgue(1.0), I).is_err());
    }

    #[test]
    fn recover_examples() {
        let (a, b) = recover_a_b(&HerglotzFn::Identity).unwrap();
        assert!(a.abs() < 1e-15 && (b - 1.0).abs() < 1e-12);
        let (a, b) = recover_a_b(&f1()).unwrap();
        assert!((a - 0.3).abs() < 1e-15 && b.abs() < 1e-9);
        let (a, b) = recover_a_b(&HerglotzFn::constant(I).unwrap()).unwrap();
        assert!(a.abs() < 1e-15 && b.abs() < 1e-12);
    }

    #[test]
    fn symmetric_extension_examples() {
        let i_fn = HerglotzFn::constant(I).unwrap();
        assert_eq!(i_fn.symmetric_extension(-I).unwrap(), -I);
        let z = c(1.0, -1.0);
        let oracle = (-1.0 / (c(1.0, 1.0) - 3.0)).conj();
        assert!((f1().symmetric_extension(z).unwrap() - oracle).norm() < 1e-15);
        assert_eq!(HerglotzFn::Identity.symmetric_extension(c(0.0, -2.0)).unwrap(), c(0.0, -2.0));
    }

    #[test]
    fn subclass_checks() {
        let g = default_grid();
        assert!(is_symmetric(&HerglotzFn::Identity, &g, 1e-12));
        assert!(is_symmetric(&HerglotzFn::constant(I).unwrap(), &g, 1e-12));
        assert!(!is_symmetric(&f1(), &g, 1e-6));

        let neg = grid::negative_axis(32);
        let s1 = HerglotzFn::pole(1.0, 1.0).unwrap();
        assert!(is_stieltjes(&s1, &g, &neg, 1e-9));
        assert!(!is_stieltjes(&HerglotzFn::Identity, &g, &neg, 1e-9));
        assert!(is_stieltjes(&HerglotzFn::pole(0.0, 1.0).unwrap(), &g, &neg, 1e-9));
    }

    #[test]
    fn symmetrized_stieltjes_examples() {
        let g = default_grid();
        let one = HerglotzFn::constant(c(1.0, 0.0)).unwrap();
        let f = symmetric_from_stieltjes(one).unwrap();
        assert!((f.eval(c(0.3, 0.8)).unwrap() - c(0.3, 0.8)).norm() < 1e-15);

        let f = symmetric_from_stieltjes(HerglotzFn::pole(0.0, 1.0).unwrap()).unwrap();
        for &z in &g {
            assert!((f.eval(z).unwrap() + 1.0 / z).norm() < 1e-12 * (1.0 + 1.0 / z.norm()));
        }
        let f = symmetric_from_stieltjes(HerglotzFn::pole(1.0, 1.0).unwrap()).unwrap();
        for &z in &g {
            let w = f.eval(z).unwrap();
            assert!((w - z / (1.0 - z * z)).norm() < 1e-9 * (1.0 + w.norm()));
        }
        assert!(positivity_violation(&f, &g) <= POSITIVITY_TOL);
        assert!(is_symmetric(&f, &g, 1e-9));
        assert!(symmetric_from_stieltjes(HerglotzFn::Identity).is_err());
    }

    #[test]
    fn exponential_examples() {
        let zero = DensityComponent::constant(0.0, 1.0, 0.0).unwrap();
        assert!((exp_representation(0.0, &zero, c(0.2, 0.5)).unwrap() - 1.0).norm() < 1e-15);
        assert!((exp_representation(2f64.ln(), &zero, I).unwrap() - 2.0).norm() < 1e-14);
        let t = 50.0;
        let theta = DensityComponent::constant(0.0, t, 1.0).unwrap();
        let w = exp_representation(0.0, &theta, I).unwrap();
        // quadrature oracle for the exponent
        let opts = crate::quad::QuadOptions::with_tol(1e-13, 1e-13);
        let re = crate::quad::integrate(|s| s / (s * s + 1.0) - s / (1.0 + s * s), 0.0, t, &opts).value;
        let im = crate::quad::integrate(|s| 1.0 / (s * s + 1.0), 0.0, t, &opts).value;
        assert!((w - Complex64::new(re, im).exp()).norm() < 1e-10, "{w}");
        assert!(w.im >= 0.0);
        let too_big = DensityComponent::constant(0.0, 1.0, 1.5).unwrap();
        assert!(exp_representation(0.0, &too_big, I).is_err());
    }

    #[test]
    fn composition_examples() {
        let g = default_grid();
        let f = compose(HerglotzFn::Identity, f1()).unwrap();
        for &z in &g {
            assert_eq!(f.eval(z).unwrap(), f1().eval(z).unwrap());
        }
        let inv = HerglotzFn::pole(0.0, 1.0).unwrap();
        let f = compose(inv.clone(), inv).unwrap();
        for &z in &g {
            assert!((f.eval(z).unwrap() - z).norm() < 1e-12 * z.norm().max(1.0));
        }
        let h = compose(HerglotzFn::h_delta(1.0).unwrap(), HerglotzFn::Identity).unwrap();
        assert!(h.eval_any(c(0.5, 0.0)).im >= 0.5);
        assert!(compose(HerglotzFn::Identity, HerglotzFn::constant(c(2.0, 0.0)).unwrap()).is_err());
    }

    #[test]
    fn closed_forms_match_their_canonical_reps() {
        for f in [f1(), HerglotzFn::h_delta(0.7).unwrap(), HerglotzFn::constant(c(1.0, 2.0)).unwrap()] {
            let rep = f.canonical_rep().unwrap();
            for z in grid::upper_half_plane(64, 1.0) {
                let (u, v) = (f.eval(z).unwrap(), rep.eval(z).unwrap());
                assert!((u - v).norm() < 1e-10 * (1.0 + u.norm()), "{f:?} at {z}: {u} vs {v}");
            }
        }
    }

    #[test]
    fn tan_is_stable_far_from_axis() {
        let w = HerglotzFn::Tan.eval(c(0.3, 800.0)).unwrap();
        assert!((w - I).norm() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let f = compose(HerglotzFn::h_delta(1.0).unwrap(), HerglotzFn::sum(vec![f1(), HerglotzFn::Tan])).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: HerglotzFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
