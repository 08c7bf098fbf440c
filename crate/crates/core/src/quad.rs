//! Adaptive Gauss-Kronrod quadrature (21-point rule) for real and complex
//! integrands, with transforms for half-infinite and infinite ranges.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208004567370,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-10, rel_tol: 1e-10, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOptions { abs_tol, rel_tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_err: f64,
    pub evals: usize,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kronrod * h;
    let err = ((kronrod - gauss) * h).norm();
    (value, err)
}

/// Adaptive integration of a complex integrand over `[a, b]`, with the range
/// first split at the supplied interior break points.
pub fn integrate_complex_breaks<F>(f: F, breaks: &[f64], opts: &QuadOptions) -> QuadResult<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|x| x.is_finite()).collect();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    if pts.len() < 2 {
        return QuadResult { value: Complex64::new(0.0, 0.0), abs_err: 0.0, evals: 0, converged: true };
    }

    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut evals = 0;
    for w in pts.windows(2) {
        let (v, e) = gk21(&f, w[0], w[1]);
        evals += 21;
        total += v;
        total_err += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, err: e });
    }

    let mut converged = false;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= tol {
            converged = true;
            break;
        }
        if heap.len() >= opts.max_intervals {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split any further in floating point
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        evals += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Segment { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, err: e2 });
    }

    // Re-sum to shed the drift of the running totals.
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_err = 0.0;
    for s in heap.iter() {
        value += s.value;
        abs_err += s.err;
    }
    QuadResult { value, abs_err, evals, converged: converged || abs_err <= opts.abs_tol.max(opts.rel_tol * value.norm()) }
}

pub fn integrate_complex<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return QuadResult { value: Complex64::new(0.0, 0.0), abs_err: 0.0, evals: 0, converged: true };
    }
    if a > b {
        let r = integrate_complex_breaks(f, &[b, a], opts);
        return QuadResult { value: -r.value, ..r };
    }
    integrate_complex_breaks(f, &[a, b], opts)
}

pub fn integrate_breaks<F>(f: F, breaks: &[f64], opts: &QuadOptions) -> QuadResult<f64>
where
    F: Fn(f64) -> f64,
{
    let r = integrate_complex_breaks(|x| Complex64::new(f(x), 0.0), breaks, opts);
    QuadResult { value: r.value.re, abs_err: r.abs_err, evals: r.evals, converged: r.converged }
}

pub fn integrate<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult<f64>
where
    F: Fn(f64) -> f64,
{
    let r = integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, opts);
    QuadResult { value: r.value.re, abs_err: r.abs_err, evals: r.evals, converged: r.converged }
}

/// Integral over `[a, +inf)` using `x = a + tan(theta)`.
pub fn integrate_to_infinity<F>(f: F, a: f64, opts: &QuadOptions) -> QuadResult<f64>
where
    F: Fn(f64) -> f64,
{
    let g = |theta: f64| {
        let c = theta.cos();
        let v = f(a + theta.tan());
        if v == 0.0 {
            0.0
        } else {
            v / (c * c)
        }
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let breaks: Vec<f64> = (0..=8).map(|k| half_pi * k as f64 / 8.0).collect();
    integrate_breaks(g, &breaks, opts)
}

/// Integral over the whole real line using `x = tan(theta)`. `hints` are
/// points (in `x`) where the integrand has structure; they become break points.
pub fn integrate_real_line<F>(f: F, hints: &[f64], opts: &QuadOptions) -> QuadResult<f64>
where
    F: Fn(f64) -> f64,
{
    let g = |theta: f64| {
        let c = theta.cos();
        let v = f(theta.tan());
        if v == 0.0 {
            0.0
        } else {
            v / (c * c)
        }
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut breaks: Vec<f64> = (0..=16).map(|k| -half_pi + std::f64::consts::PI * k as f64 / 16.0).collect();
    breaks.extend(hints.iter().filter(|x| x.is_finite()).map(|x| x.atan()));
    integrate_breaks(g, &breaks, opts)
}

/// Geometric break points `lo, lo*r, lo*r^2, ..., hi` for integrands that vary
/// on a logarithmic scale near `lo`.
pub fn geometric_breaks(lo: f64, hi: f64, ratio: f64) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > lo && ratio > 1.0);
    let mut v = vec![lo];
    let mut x = lo * ratio;
    while x < hi {
        v.push(x);
        x *= ratio;
    }
    v.push(hi);
    v
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * x * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            dp = n as f64 * (x * p1 - p2) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
