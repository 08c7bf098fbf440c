//! Extrapolation of sampled limits: Neville/Richardson tableaux toward `h -> 0`
//! and Taylor coefficients at an interval endpoint from Chebyshev interpolation.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    pub error: f64,
}

/// Polynomial extrapolation to `h = 0` of samples `(h_i, v_i)` with `h`
/// strictly decreasing. Among all tableau entries of order >= 1 the one with
/// the smallest local error estimate is returned.
pub fn richardson_complex(h: &[f64], v: &[Complex64]) -> Extrapolated {
    assert_eq!(h.len(), v.len());
    let n = h.len();
    if n == 0 {
        return Extrapolated { value: Complex64::new(f64::NAN, f64::NAN), error: f64::INFINITY };
    }
    if n == 1 {
        return Extrapolated { value: v[0], error: f64::INFINITY };
    }
    let mut table: Vec<Vec<Complex64>> = v.iter().map(|&x| vec![x]).collect();
    let mut best = Extrapolated { value: v[n - 1], error: (v[n - 1] - v[n - 2]).norm() };
    for k in 1..n {
        for i in k..n {
            let lo = table[i - 1][k - 1];
            let hi = table[i][k - 1];
            let denom = h[i - k] - h[i];
            let t = (hi * h[i - k] - lo * h[i]) / denom;
            let err = (t - hi).norm().max((t - lo).norm());
            table[i].push(t);
            if err < best.error {
                best = Extrapolated { value: t, error: err };
            }
        }
    }
    best
}

pub fn richardson(h: &[f64], v: &[f64]) -> (f64, f64) {
    let vc: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let r = richardson_complex(h, &vc);
    (r.value.re, r.error)
}

/// Taylor coefficients at `t = 0` of a function sampled on `(0, length]`,
/// obtained from its Chebyshev interpolant on `n` Chebyshev-Gauss nodes.
#[derive(Debug, Clone)]
pub struct EndpointTaylor {
    pub coefficients: Vec<Complex64>,
    /// Rounding-noise level of each coefficient given the sample magnitudes.
    pub noise: Vec<f64>,
}

pub fn taylor_at_left_endpoint<F>(f: F, length: f64, n: usize, max_degree: usize) -> EndpointTaylor
where
    F: Fn(f64) -> Complex64,
{
    let pi = std::f64::consts::PI;
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = pi * (j as f64 + 0.5) / n as f64;
            f(0.5 * length * (1.0 - theta.cos()))
        })
        .collect();
    // nodes run from t near 0 (x near -1) upward, i.e. x_j = -cos(theta_j)
    let mut cheb = vec![Complex64::new(0.0, 0.0); n];
    for (k, a) in cheb.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, y) in samples.iter().enumerate() {
            let theta = pi * (j as f64 + 0.5) / n as f64;
            // T_k(-cos theta) = (-1)^k cos(k theta)
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += y * (sign * (k as f64 * theta).cos());
        }
        *a = s * (2.0 / n as f64);
    }
    cheb[0] *= 0.5;

    let scale = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let mut coefficients = Vec::with_capacity(max_degree + 1);
    let mut noise = Vec::with_capacity(max_degree + 1);
    let mut factorial = 1.0;
    for m in 0..=max_degree {
        if m > 0 {
            factorial *= m as f64;
        }
        let mut deriv = Complex64::new(0.0, 0.0);
        let mut amp = 0.0;
        for (k, a) in cheb.iter().enumerate() {
            let d = chebyshev_derivative_at_minus_one(k, m);
            deriv += a * d;
            amp += d.abs();
        }
        let jac = (2.0 / length).powi(m as i32) / factorial;
        coefficients.push(deriv * jac);
        noise.push(64.0 * f64::EPSILON * scale * amp * jac);
    }
    EndpointTaylor { coefficients, noise }
}

/// `T_k^{(m)}(-1)`.
fn chebyshev_derivative_at_minus_one(k: usize, m: usize) -> f64 {
    if m > k {
        return 0.0;
    }
    let mut prod = 1.0;
    for i in 0..m {
        let i = i as f64;
        prod *= ((k * k) as f64 - i * i) / (2.0 * i + 1.0);
    }
    if (k + m) % 2 == 0 {
        prod
    } else {
        -prod
    }
}
