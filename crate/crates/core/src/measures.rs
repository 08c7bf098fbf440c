//! Positive Borel measures on the real line: point masses, absolutely
//! continuous densities and a multiple of Lebesgue measure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ppoly::PiecewisePoly;
use crate::quad::{self, geometric_breaks, integrate_breaks, integrate_complex_breaks, QuadOptions};

/// Absolute tolerance for improper integrals over unbounded supports.
pub const IMPROPER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointMass {
    pub xi: f64,
    pub m: f64,
}

impl PointMass {
    pub fn new(xi: f64, m: f64) -> Self {
        PointMass { xi, m }
    }
}

/// Serialized form of a density component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensitySpec {
    /// Polynomial pieces in the local variable `x - breakpoints[i]`.
    PiecewisePolynomial {
        breakpoints: Vec<f64>,
        coefficients: Vec<Vec<f64>>,
        #[serde(default)]
        continuous: bool,
    },
    /// `weight / (pi (1 + x^2))` on the whole line.
    Poisson { weight: f64 },
    /// Linear interpolation between samples, zero outside `[xs[0], xs[n-1]]`.
    Sampled { xs: Vec<f64>, values: Vec<f64> },
    /// `-1 / ln(x)` on `(0, gamma]`: continuous but not Hölder at 0.
    LogSingular { gamma: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensitySpec", into = "DensitySpec")]
pub struct DensityComponent {
    spec: DensitySpec,
    poly: Option<PiecewisePoly>,
}

impl TryFrom<DensitySpec> for DensityComponent {
    type Error = Error;

    fn try_from(spec: DensitySpec) -> Result<Self> {
        let poly = match &spec {
            DensitySpec::PiecewisePolynomial { breakpoints, coefficients, continuous } => {
                let p = PiecewisePoly::new(breakpoints.clone(), coefficients.clone())?;
                if *continuous {
                    for &t in &breakpoints[1..breakpoints.len() - 1] {
                        let (l, r) = p.one_sided(t);
                        if (l - r).abs() > 1e-12 * (1.0 + l.abs()) {
                            return Err(Error::InvalidMeasure(format!("density declared continuous jumps at {t}")));
                        }
                    }
                }
                Some(p)
            }
            DensitySpec::Poisson { weight } => {
                if !(weight.is_finite() && *weight >= 0.0) {
                    return Err(Error::InvalidMeasure("poisson weight must be finite and >= 0".into()));
                }
                None
            }
            DensitySpec::Sampled { xs, values } => {
                if xs.len() != values.len() || xs.len() < 2 {
                    return Err(Error::InvalidMeasure("sampled density needs >= 2 matching samples".into()));
                }
                let coeffs = xs
                    .windows(2)
                    .zip(values.windows(2))
                    .map(|(x, v)| vec![v[0], (v[1] - v[0]) / (x[1] - x[0])])
                    .collect();
                Some(PiecewisePoly::new(xs.clone(), coeffs)?)
            }
            DensitySpec::LogSingular { gamma } => {
                if !(*gamma > 0.0 && *gamma < 1.0) {
                    return Err(Error::InvalidMeasure("log-singular density needs 0 < gamma < 1".into()));
                }
                None
            }
        };
        let d = DensityComponent { spec, poly };
        if d.min_value() < -1e-12 {
            return Err(Error::InvalidMeasure("density takes negative values".into()));
        }
        Ok(d)
    }
}

impl From<DensityComponent> for DensitySpec {
    fn from(d: DensityComponent) -> Self {
        d.spec
    }
}

impl DensityComponent {
    pub fn piecewise(breakpoints: Vec<f64>, coefficients: Vec<Vec<f64>>) -> Result<Self> {
        DensitySpec::PiecewisePolynomial { breakpoints, coefficients, continuous: false }.try_into()
    }

    pub fn piecewise_continuous(breakpoints: Vec<f64>, coefficients: Vec<Vec<f64>>) -> Result<Self> {
        DensitySpec::PiecewisePolynomial { breakpoints, coefficients, continuous: true }.try_into()
    }

    /// Constant density `c` on `[a, b]`.
    pub fn constant(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::piecewise(vec![a, b], vec![vec![c]])
    }

    pub fn poisson(weight: f64) -> Result<Self> {
        DensitySpec::Poisson { weight }.try_into()
    }

    pub fn sampled(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        DensitySpec::Sampled { xs, values }.try_into()
    }

    pub fn log_singular(gamma: f64) -> Result<Self> {
        DensitySpec::LogSingular { gamma }.try_into()
    }

    pub fn from_poly(poly: PiecewisePoly) -> Result<Self> {
        Self::piecewise(poly.breaks().to_vec(), poly.coefficients().to_vec())
    }

    pub fn spec(&self) -> &DensitySpec {
        &self.spec
    }

    pub fn as_poly(&self) -> Option<&PiecewisePoly> {
        self.poly.as_ref()
    }

    pub fn support(&self) -> (f64, f64) {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.support(),
            (DensitySpec::Poisson { .. }, _) => (f64::NEG_INFINITY, f64::INFINITY),
            (DensitySpec::LogSingular { gamma }, _) => (0.0, *gamma),
            _ => unreachable!(),
        }
    }

    pub fn is_compact(&self) -> bool {
        let (a, b) = self.support();
        a.is_finite() && b.is_finite()
    }

    pub fn value(&self, x: f64) -> f64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.eval(x),
            (DensitySpec::Poisson { weight }, _) => weight / (PI * (1.0 + x * x)),
            (DensitySpec::LogSingular { gamma }, _) => {
                if x > 0.0 && x <= *gamma {
                    -1.0 / x.ln()
                } else {
                    0.0
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn min_value(&self) -> f64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.sampled_min(64),
            _ => 0.0,
        }
    }

    pub fn max_value(&self) -> f64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => {
                let mut m = f64::NEG_INFINITY;
                for (i, c) in p.coefficients().iter().enumerate() {
                    let w = p.breaks()[i + 1] - p.breaks()[i];
                    for k in 0..=64 {
                        m = m.max(crate::ppoly::horner(c, w * k as f64 / 64.0));
                    }
                }
                m
            }
            (DensitySpec::Poisson { weight }, _) => weight / PI,
            (DensitySpec::LogSingular { gamma }, _) => -1.0 / gamma.ln(),
            _ => unreachable!(),
        }
    }

    /// True when the density has no jump at `x`.
    pub fn is_continuous_at(&self, x: f64) -> bool {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => {
                let (l, r) = p.one_sided(x);
                (l - r).abs() <= 1e-12 * (1.0 + l.abs().max(r.abs()))
            }
            (DensitySpec::Poisson { .. }, _) => true,
            (DensitySpec::LogSingular { gamma }, _) => x != *gamma,
            _ => unreachable!(),
        }
    }

    /// The density's continuation to complex arguments, where one is known.
    pub fn analytic_extension(&self, z: Complex64) -> Option<Complex64> {
        match (&self.spec, &self.poly) {
            (DensitySpec::Poisson { weight }, _) => Some(*weight / (PI * (1.0 + z * z))),
            (DensitySpec::LogSingular { gamma }, _) => {
                (z.re > 0.0 && z.re < *gamma).then(|| -1.0 / z.ln())
            }
            (_, Some(p)) => {
                let i = p.breaks().iter().position(|&b| b > z.re)?;
                if i == 0 || z.re <= p.breaks()[i - 1] {
                    return None;
                }
                let a = p.breaks()[i - 1];
                let c = &p.coefficients()[i - 1];
                let u = z - a;
                Some(c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * u + k))
            }
            _ => None,
        }
    }

    fn numeric_breaks(&self, extra: &[f64]) -> Vec<f64> {
        let (a, b) = self.support();
        let mut br = match self.spec {
            DensitySpec::LogSingular { gamma } => {
                let mut v = vec![0.0];
                v.extend(geometric_breaks(1e-300_f64.max(gamma * 1e-30), gamma, 8.0));
                v
            }
            _ => vec![a, b],
        };
        br.extend(extra.iter().copied().filter(|x| *x > a && *x < b));
        br
    }

    pub fn integral_between(&self, lo: f64, hi: f64) -> f64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.integral_between(lo, hi),
            (DensitySpec::Poisson { weight }, _) => weight * (hi.atan() - lo.atan()) / PI,
            (DensitySpec::LogSingular { gamma }, _) => {
                let l = lo.max(0.0);
                let r = hi.min(*gamma);
                if r <= l {
                    return 0.0;
                }
                let br: Vec<f64> = self.numeric_breaks(&[]).into_iter().map(|x| x.clamp(l, r)).collect();
                integrate_breaks(|x| self.value(x), &br, &QuadOptions::default()).value
            }
            _ => unreachable!(),
        }
    }

    /// `int x^k rho(x) dx`, `None` when the integral diverges.
    pub fn moment(&self, k: usize) -> Option<f64> {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => Some(p.moment(k)),
            (DensitySpec::Poisson { weight }, _) => (k == 0).then_some(*weight),
            (DensitySpec::LogSingular { .. }, _) => {
                let br = self.numeric_breaks(&[]);
                Some(integrate_breaks(|x| x.powi(k as i32) * self.value(x), &br, &QuadOptions::default()).value)
            }
            _ => unreachable!(),
        }
    }

    /// `int rho(x)/(1+x^2) dx`; unbounded supports go through `x = tan(theta)`.
    pub fn growth_integral(&self) -> f64 {
        let opts = QuadOptions::with_tol(IMPROPER_TOL, 1e-12);
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.integrate_weighted(|x| 1.0 / (1.0 + x * x), 24),
            (DensitySpec::Poisson { .. }, _) => {
                quad::integrate_real_line(|x| self.value(x) / (1.0 + x * x), &[0.0], &opts).value
            }
            (DensitySpec::LogSingular { .. }, _) => {
                integrate_breaks(|x| self.value(x) / (1.0 + x * x), &self.numeric_breaks(&[]), &opts).value
            }
            _ => unreachable!(),
        }
    }

    /// `int (1/(x - z) - x/(1+x^2)) rho(x) dx` for `Im z > 0`, or for real `z`
    /// outside the support.
    pub fn kernel_integral(&self, z: Complex64) -> Complex64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => {
                let i = Complex64::new(0.0, 1.0);
                p.cauchy(z) - p.cauchy(i).re
            }
            (DensitySpec::Poisson { weight }, _) => -*weight / (z + Complex64::new(0.0, z.im.signum())),
            (DensitySpec::LogSingular { .. }, _) => {
                let y = z.im.abs();
                let mut hints = vec![z.re];
                for k in 0..12 {
                    let d = y * 4f64.powi(k);
                    hints.push(z.re - d);
                    hints.push(z.re + d);
                }
                let br = self.numeric_breaks(&hints);
                let r = integrate_complex_breaks(
                    |x| {
                        let k = Complex64::new(1.0, 0.0) / (Complex64::new(x, 0.0) - z) - x / (1.0 + x * x);
                        k * self.value(x)
                    },
                    &br,
                    &QuadOptions::with_tol(1e-12, 1e-12),
                );
                r.value
            }
            _ => unreachable!(),
        }
    }

    /// `int x rho(x)/(1+x^2) dx`.
    pub fn regularizer(&self) -> f64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.integrate_weighted(|x| x / (1.0 + x * x), 24),
            (DensitySpec::Poisson { .. }, _) => 0.0,
            _ => integrate_breaks(
                |x| x * self.value(x) / (1.0 + x * x),
                &self.numeric_breaks(&[]),
                &QuadOptions::with_tol(1e-13, 1e-13),
            )
            .value,
        }
    }

    /// `int rho(x)/(x - z) dx`; requires finite total mass.
    pub fn cauchy(&self, z: Complex64) -> Complex64 {
        match (&self.spec, &self.poly) {
            (_, Some(p)) => p.cauchy(z),
            // the odd part x/(1+x^2) integrates to zero against the Poisson density
            _ => self.kernel_integral(z),
        }
    }

    /// Mirror image `x -> -x`.
    pub fn reflected(&self) -> Result<Self> {
        match (&self.spec, &self.poly) {
            (DensitySpec::Poisson { .. }, _) => Ok(self.clone()),
            (_, Some(p)) => {
                let br: Vec<f64> = p.breaks().iter().rev().map(|b| -b).collect();
                let coeffs = p
                    .coefficients()
                    .iter()
                    .zip(p.breaks().windows(2))
                    .rev()
                    .map(|(c, w)| {
                        // q(v) = p(w - v) on the mirrored piece, w = piece width
                        let width = w[1] - w[0];
                        let shifted = crate::ppoly::taylor_shift(c, width);
                        shifted.iter().enumerate().map(|(j, a)| if j % 2 == 0 { *a } else { -a }).collect()
                    })
                    .collect();
                Self::piecewise(br, coeffs)
            }
            _ => Err(Error::Unsupported("reflection of this density kind".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryRule {
    Open,
    HalfWeightedEndpoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Moment {
    Finite(f64),
    Divergent,
}

impl Moment {
    pub fn finite(self) -> Option<f64> {
        match self {
            Moment::Finite(v) => Some(v),
            Moment::Divergent => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    #[serde(default)]
    pub point_masses: Vec<PointMass>,
    #[serde(default)]
    pub densities: Vec<DensityComponent>,
    /// Coefficient `c` of `c * lambda / pi`.
    #[serde(default)]
    pub lebesgue: f64,
}

impl MeasureSpec {
    pub fn zero() -> Self {
        MeasureSpec::default()
    }

    pub fn dirac(xi: f64, m: f64) -> Self {
        MeasureSpec { point_masses: vec![PointMass::new(xi, m)], ..Default::default() }
    }

    pub fn discrete(masses: impl IntoIterator<Item = (f64, f64)>) -> Self {
        MeasureSpec {
            point_masses: masses.into_iter().map(|(xi, m)| PointMass::new(xi, m)).collect(),
            ..Default::default()
        }
    }

    pub fn lebesgue(c: f64) -> Self {
        MeasureSpec { lebesgue: c, ..Default::default() }
    }

    pub fn with_density(mut self, d: DensityComponent) -> Self {
        self.densities.push(d);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.point_masses.iter().all(|p| p.m == 0.0)
            && self.lebesgue == 0.0
            && self.densities.iter().all(|d| d.max_value() <= 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        for p in &self.point_masses {
            if !p.xi.is_finite() || !p.m.is_finite() || p.m < 0.0 {
                return Err(Error::InvalidMeasure(format!("point mass {} at {} is not a finite nonnegative mass", p.m, p.xi)));
            }
        }
        let mut locs: Vec<f64> = self.point_masses.iter().map(|p| p.xi).collect();
        locs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if locs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMeasure("point mass locations must be distinct".into()));
        }
        if !(self.lebesgue.is_finite() && self.lebesgue >= 0.0) {
            return Err(Error::InvalidMeasure("lebesgue coefficient must be finite and >= 0".into()));
        }
        Ok(())
    }

    /// Sum of two measures; coinciding point masses are merged.
    pub fn add(&self, other: &MeasureSpec) -> MeasureSpec {
        let mut out = self.clone();
        for p in &other.point_masses {
            match out.point_masses.iter_mut().find(|q| q.xi == p.xi) {
                Some(q) => q.m += p.m,
                None => out.point_masses.push(*p),
            }
        }
        out.densities.extend(other.densities.iter().cloned());
        out.lebesgue += other.lebesgue;
        out
    }

    /// Smallest interval containing the support, `None` if unbounded.
    pub fn compact_support(&self) -> Option<(f64, f64)> {
        if self.lebesgue > 0.0 {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in self.point_masses.iter().filter(|p| p.m > 0.0) {
            lo = lo.min(p.xi);
            hi = hi.max(p.xi);
        }
        for d in &self.densities {
            let (a, b) = d.support();
            if !(a.is_finite() && b.is_finite()) {
                return None;
            }
            lo = lo.min(a);
            hi = hi.max(b);
        }
        if lo > hi {
            Some((0.0, 0.0))
        } else {
            Some((lo, hi))
        }
    }

    /// `int dmu(x)/(1+x^2)`.
    pub fn growth_check(&self) -> Result<f64> {
        self.validate()?;
        let mut total: f64 = self.point_masses.iter().map(|p| p.m / (1.0 + p.xi * p.xi)).sum();
        for d in &self.densities {
            let g = d.growth_integral();
            if !g.is_finite() || g > 1e300 {
                return Err(Error::InvalidMeasure("growth integral diverges".into()));
            }
            total += g;
        }
        total += self.lebesgue;
        Ok(total)
    }

    pub fn moment(&self, k: usize) -> Moment {
        if self.lebesgue > 0.0 {
            return Moment::Divergent;
        }
        let mut s: f64 = self.point_masses.iter().map(|p| p.m * p.xi.powi(k as i32)).sum();
        for d in &self.densities {
            match d.moment(k) {
                Some(v) => s += v,
                None => return Moment::Divergent,
            }
        }
        Moment::Finite(s)
    }

    pub fn total_mass(&self) -> Option<f64> {
        self.moment(0).finite()
    }

    pub fn mass_on_interval(&self, x1: f64, x2: f64, rule: BoundaryRule) -> Result<f64> {
        if !(x1 < x2) {
            return Err(Error::Precondition(format!("interval ({x1}, {x2}) is empty")));
        }
        let mut s = 0.0;
        for p in &self.point_masses {
            if p.xi > x1 && p.xi < x2 {
                s += p.m;
            } else if (p.xi == x1 || p.xi == x2) && rule == BoundaryRule::HalfWeightedEndpoints {
                s += 0.5 * p.m;
            }
        }
        for d in &self.densities {
            s += d.integral_between(x1, x2);
        }
        s += self.lebesgue * (x2 - x1) / PI;
        Ok(s)
    }

    /// `int (1/(x - z) - x/(1+x^2)) dmu(x)` for `Im z > 0`.
    pub fn kernel_integral(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut s = Complex64::new(0.0, 0.0);
        for p in &self.point_masses {
            s += (one / (Complex64::new(p.xi, 0.0) - z) - p.xi / (1.0 + p.xi * p.xi)) * p.m;
        }
        for d in &self.densities {
            s += d.kernel_integral(z);
        }
        if self.lebesgue > 0.0 {
            // (c/pi) int (1/(x-z) - x/(1+x^2)) dx = i c in the upper half-plane
            s += Complex64::new(0.0, self.lebesgue * z.im.signum());
        }
        s
    }

    /// Density of the absolutely continuous part at `x` (including `c/pi`).
    pub fn density_at(&self, x: f64) -> f64 {
        self.densities.iter().map(|d| d.value(x)).sum::<f64>() + self.lebesgue / PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_examples() {
        let d3 = MeasureSpec::dirac(3.0, 1.0);
        assert!((d3.growth_check().unwrap() - 0.1).abs() < 1e-15);
        assert!((MeasureSpec::lebesgue(1.0).growth_check().unwrap() - 1.0).abs() < 1e-15);
        let p = MeasureSpec::zero().with_density(DensityComponent::poisson(1.0).unwrap());
        assert!((p.growth_check().unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(MeasureSpec::dirac(2.0, 1.0).moment(2), Moment::Finite(4.0));
        assert_eq!(MeasureSpec::dirac(3.0, 1.0).moment(0), Moment::Finite(1.0));
        assert_eq!(MeasureSpec::lebesgue(1.0).moment(0), Moment::Divergent);
    }

    #[test]
    fn interval_mass_examples() {
        let d3 = MeasureSpec::dirac(3.0, 1.0);
        assert_eq!(d3.mass_on_interval(2.0, 4.0, BoundaryRule::Open).unwrap(), 1.0);
        assert_eq!(d3.mass_on_interval(1.0, 3.0, BoundaryRule::HalfWeightedEndpoints).unwrap(), 0.5);
        assert_eq!(d3.mass_on_interval(1.0, 3.0, BoundaryRule::Open).unwrap(), 0.0);
        let leb = MeasureSpec::lebesgue(1.0);
        assert!((leb.mass_on_interval(0.0, PI, BoundaryRule::Open).unwrap() - 1.0).abs() < 1e-15);
        assert!(d3.mass_on_interval(4.0, 2.0, BoundaryRule::Open).is_err());
    }

    #[test]
    fn rejects_invalid_measures() {
        assert!(MeasureSpec::dirac(1.0, -1.0).validate().is_err());
        assert!(MeasureSpec::discrete([(1.0, 1.0), (1.0, 2.0)]).validate().is_err());
        assert!(DensityComponent::piecewise(vec![0.0, 1.0], vec![vec![-1.0]]).is_err());
        assert!(DensityComponent::piecewise(vec![0.0, 1.0, 2.0], vec![vec![1.0], vec![2.0]]).is_ok());
        assert!(DensityComponent::piecewise_continuous(vec![0.0, 1.0, 2.0], vec![vec![1.0], vec![2.0]]).is_err());
    }

    #[test]
    fn json_field_names() {
        let m = MeasureSpec::dirac(3.0, 1.0).with_density(DensityComponent::poisson(2.0).unwrap());
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"point_masses\":[{\"xi\":3.0,\"m\":1.0}]"), "{s}");
        assert!(s.contains("\"lebesgue\":0.0"));
        assert!(s.contains("\"kind\":\"poisson\""));
        let back: MeasureSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"densities":[{"kind":"sampled","xs":[0,1],"values":[1,-1]}]}"#;
        assert!(serde_json::from_str::<MeasureSpec>(bad).is_err());
    }

    #[test]
    fn reflection_mirrors_values() {
        let d = DensityComponent::piecewise(vec![1.0, 2.0, 4.0], vec![vec![0.0, 1.0, 0.5], vec![1.5, 0.25]]).unwrap();
        let r = d.reflected().unwrap();
        for x in [1.2, 1.9, 2.5, 3.7] {
            assert!((r.value(-x) - d.value(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn poisson_kernel_matches_quadrature() {
        let d = DensityComponent::poisson(1.0).unwrap();
        let z = Complex64::new(0.3, 0.7);
        let re = quad::integrate_real_line(
            |x| ((Complex64::new(1.0, 0.0) / (Complex64::new(x, 0.0) - z)).re - x / (1.0 + x * x)) * d.value(x),
            &[0.3],
            &QuadOptions::default(),
        );
        let im = quad::integrate_real_line(
            |x| (Complex64::new(1.0, 0.0) / (Complex64::new(x, 0.0) - z)).im * d.value(x),
            &[0.3],
            &QuadOptions::default(),
        );
        let k = d.kernel_integral(z);
        assert!((k.re - re.value).abs() < 1e-9 && (k.im - im.value).abs() < 1e-9, "{k}");
    }
}
