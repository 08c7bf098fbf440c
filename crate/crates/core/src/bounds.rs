//! Physical bounds derived from sum rules.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::f64::consts::PI;

use crate::boundary::{boundary_limit, LimitSchedule};
use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::herglotz::{h_delta_value, recover_a_b, HerglotzFn};
use crate::quad::{geometric_breaks, integrate_breaks, QuadOptions};

/// Tolerance on negative slack in bound reports.
pub const SLACK_TOL: f64 = 1e-9;

/// Band `omega0 [1 - B/2, 1 + B/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSpec {
    pub omega0: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

impl BandSpec {
    pub fn new(omega0: f64, b: f64) -> Result<Self> {
        let s = BandSpec { omega0, b };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::Precondition("center frequency must be > 0".into()));
        }
        check_relative_bandwidth(self.b)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.omega0 * (1.0 - self.b / 2.0), self.omega0 * (1.0 + self.b / 2.0))
    }

    pub fn length(&self) -> f64 {
        self.omega0 * self.b
    }
}

fn check_relative_bandwidth(b: f64) -> Result<()> {
    if !(b > 0.0 && b < 2.0) {
        return Err(Error::Precondition(format!("relative bandwidth {b} is outside (0, 2)")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub formula_id: String,
    pub bound_value: f64,
    pub inputs: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
}

impl BoundReport {
    pub fn new(formula_id: &str, bound_value: f64, inputs: serde_json::Value) -> Self {
        BoundReport { formula_id: formula_id.to_string(), bound_value, inputs, achieved_value: None, slack: None }
    }

    pub fn with_achieved(mut self, achieved: f64) -> Self {
        self.achieved_value = Some(achieved);
        self.slack = Some(achieved - self.bound_value);
        self
    }

    /// True unless the achieved value undercuts the bound beyond `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.slack.map_or(true, |s| s >= -tol)
    }
}

/// `(1/pi) Log((z - delta)/(z + delta))`, principal branch.
pub fn h_delta(z: Complex64, delta: f64) -> Result<Complex64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Precondition("delta must be > 0".into()));
    }
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("{z} is not in the upper half-plane")));
    }
    // (z - delta)/(z + delta) has imaginary part 2 delta Im z / |z + delta|^2 > 0
    assert!(((z - delta) / (z + delta)).im >= 0.0, "Log argument crossed the branch cut");
    Ok(h_delta_value(z, delta))
}

/// `int_0^inf Re Z(-i omega) d omega = pi / (2C)`.
pub fn resistance_integral_bound(c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Precondition("capacitance must be > 0".into()));
    }
    Ok(PI / (2.0 * c))
}

/// Upper bound `pi / (2 C (omega2 - omega1))` on `inf_Omega Re Z(-i omega)`.
pub fn bandwidth_resistance_bound(omega1: f64, omega2: f64, c: f64) -> Result<f64> {
    if !(omega1 > 0.0 && omega1 < omega2) {
        return Err(Error::Precondition("need 0 < omega1 < omega2".into()));
    }
    Ok(resistance_integral_bound(c)? / (omega2 - omega1))
}

/// Lower bound `(b1 + b1_0) |Omega| / 2` on `sup_Omega |h + h0|`.
pub fn amplitude_lower_bound(b1: f64, b1_0: f64, omega_interval_length: f64) -> Result<f64> {
    if !(b1 >= 0.0 && b1_0 >= 0.0) {
        return Err(Error::Precondition("b1 and b1_0 must be >= 0".into()));
    }
    if !(omega_interval_length > 0.0) {
        return Err(Error::Precondition("interval length must be > 0".into()));
    }
    Ok((b1 + b1_0) * omega_interval_length / 2.0)
}

/// `(eps_inf - eps_t) B / (2 + B)`.
pub fn metamaterial_bound(eps_t: f64, eps_inf: f64, b: f64) -> Result<f64> {
    if !(eps_t < 0.0) {
        return Err(Error::Precondition("target permittivity must be negative".into()));
    }
    if !(eps_t < eps_inf) {
        return Err(Error::Precondition("need eps_t < eps_inf".into()));
    }
    check_relative_bandwidth(b)?;
    Ok((eps_inf - eps_t) * b / (2.0 + b))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResistanceIntegral {
    pub window: f64,
    pub window_integral: f64,
    /// Tail beyond the window from the fit `Re Z ~ c / omega^2`.
    pub tail_estimate: f64,
    pub integral: f64,
    /// `(2/pi) integral`, which equals `1/C`.
    pub normalized: f64,
}

/// `int_0^inf Re Z(-i omega) d omega` by quadrature on `[0, window]` and a
/// fitted `c / omega^2` tail.
pub fn resistance_integral(circuit: &Circuit, window: f64) -> Result<ResistanceIntegral> {
    circuit.validate()?;
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::Precondition("window must be > 0".into()));
    }
    let re = |w: f64| circuit.frequency_response(w).re;
    let mut breaks = vec![0.0];
    breaks.extend(geometric_breaks(window * 1e-6, window, 2.0));
    let r = integrate_breaks(re, &breaks, &QuadOptions::with_tol(1e-13, 1e-12));
    if !r.converged {
        return Err(Error::Convergence {
            what: format!("resistance integral on [0, {window}] (error {})", r.abs_err),
            samples: vec![],
        });
    }
    // c/omega^2 + d/omega^4 through the last two decades of the window
    let (w1, w2) = (window / 2.0, window);
    let (g1, g2) = (re(w1) * w1 * w1, re(w2) * w2 * w2);
    let d = (g1 - g2) / (1.0 / (w1 * w1) - 1.0 / (w2 * w2));
    let c = g2 - d / (w2 * w2);
    let tail = c / window + d / (3.0 * window.powi(3));
    let integral = r.value + tail;
    Ok(ResistanceIntegral {
        window,
        window_integral: r.value,
        tail_estimate: tail,
        integral,
        normalized: 2.0 / PI * integral,
    })
}

/// Resistance-integral identity for a shunt capacitance: numeric integral
/// against `pi / (2C)`.
pub fn verify_resistance_integral(circuit: &Circuit, window: f64) -> Result<BoundReport> {
    let Circuit::ShuntC { c, .. } = circuit else {
        return Err(Error::Precondition("resistance integral needs a shunt capacitance".into()));
    };
    let r = resistance_integral(circuit, window)?;
    let bound = resistance_integral_bound(*c)?;
    Ok(BoundReport::new("resistance_integral", bound, json!({ "C": c, "window": window, "tail": r.tail_estimate }))
        .with_achieved(r.integral))
}

/// Compares `sup_band |h(x) + h0_b1 x|` on a uniform grid of boundary values
/// with the amplitude bound.
pub fn verify_amplitude_bound(h: &HerglotzFn, h0_b1: f64, band: (f64, f64), grid_density: usize) -> Result<BoundReport> {
    let (lo, hi) = band;
    if !(lo < hi) {
        return Err(Error::Precondition("band is empty".into()));
    }
    if grid_density < 2 {
        return Err(Error::Precondition("grid needs at least two points".into()));
    }
    let (_, b1) = recover_a_b(h)?;
    let bound = amplitude_lower_bound(b1, h0_b1, hi - lo)?;
    let sched = LimitSchedule::default();
    let mut achieved: f64 = 0.0;
    for k in 0..grid_density {
        let x = lo + (hi - lo) * k as f64 / (grid_density - 1) as f64;
        let v = boundary_limit(h, x, &sched)? + h0_b1 * x;
        achieved = achieved.max(v.norm());
    }
    let inputs = json!({ "b1": b1, "b1_0": h0_b1, "band": [lo, hi], "grid_density": grid_density });
    Ok(BoundReport::new("amplitude", bound, inputs).with_achieved(achieved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;

    #[test]
    fn h_delta_examples() {
        let v = h_delta(Complex64::new(0.0, 1e-9), 1.0).unwrap();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-8);
        let y = 1e6;
        let v = h_delta(Complex64::new(0.0, y), 2.0).unwrap();
        let want = -2.0 * 2.0 / (PI * Complex64::new(0.0, y));
        assert!((v - want).norm() < 1e-9 * want.norm() + 1e-15);
        assert!(h_delta(Complex64::new(0.0, 0.5), 1.0).unwrap().im >= 0.5);
        assert!(h_delta(Complex64::new(1.0, 0.0), 1.0).is_err());
        assert!(h_delta(Complex64::new(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn closed_form_bounds() {
        assert!((resistance_integral_bound(1.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((resistance_integral_bound(2.0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!(resistance_integral_bound(1e300).unwrap() < 1e-299);
        assert!((bandwidth_resistance_bound(1.0, 2.0, 1.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((bandwidth_resistance_bound(0.5, 1.5, PI).unwrap() - 0.5).abs() < 1e-15);
        assert!((amplitude_lower_bound(1.0, 2.0, 0.2).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(amplitude_lower_bound(0.0, 0.0, 1.0).unwrap(), 0.0);
        assert!((metamaterial_bound(-2.0, 1.0, 0.1).unwrap() - 1.0 / 7.0).abs() < 1e-15);
        assert!(metamaterial_bound(-2.0, 1.0, 2.0).is_err());
        assert!(metamaterial_bound(-2.0, 1.0, 0.0).is_err());
        assert!(metamaterial_bound(-2.0, -3.0, 0.1).is_err());
    }

    #[test]
    fn band_spec() {
        let b = BandSpec::new(2.0, 0.1).unwrap();
        let (lo, hi) = b.interval();
        assert!((lo - 1.9).abs() < 1e-15 && (hi - 2.1).abs() < 1e-15);
        assert!(BandSpec::new(1.0, 2.0).is_err());
    }

    #[test]
    fn resistance_integral_of_rc() {
        let c = Circuit::shunt_c(1.0, Circuit::resistor(1.0).unwrap()).unwrap();
        let r = resistance_integral(&c, 1e3).unwrap();
        assert!((r.normalized - 1.0).abs() < 1e-6, "{r:?}");
        let rep = verify_resistance_integral(&c, 1e3).unwrap();
        assert!(rep.slack.unwrap().abs() < 1e-6);
    }

    #[test]
    fn amplitude_bound_holds_for_a_lorentz_medium() {
        let rep = crate::herglotz::HerglotzRep::new(0.0, 1.0, MeasureSpec::zero().with_density(
            crate::measures::DensityComponent::constant(0.9, 1.1, 0.3).unwrap(),
        ))
        .unwrap();
        let h = HerglotzFn::canonical(rep);
        let r = verify_amplitude_bound(&h, 2.0, (1.95, 2.05), 21).unwrap();
        assert!(r.holds(SLACK_TOL), "{r:?}");
        let r2 = verify_amplitude_bound(&h, 2.0, (1.95, 2.05), 41).unwrap();
        assert!(r2.achieved_value >= r.achieved_value);
    }
}
