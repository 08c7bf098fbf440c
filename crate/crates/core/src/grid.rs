//! Deterministic quasi-random sample grids (Halton sequences).

use num_complex::Complex64;
use std::f64::consts::PI;

/// `i`-th element (1-based) of the van der Corput sequence in `base`.
pub fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Points in the open upper half-plane with moduli spread log-uniformly over
/// `[scale * 1e-3, scale * 1e3]` and arguments over `(0, pi)`, so that both
/// the near-real-axis and the far-field behavior are probed.
pub fn upper_half_plane(n: usize, scale: f64) -> Vec<Complex64> {
    (1..=n)
        .map(|i| {
            let r = scale * 10f64.powf(-3.0 + 6.0 * halton(i, 2));
            let theta = PI * (0.001 + 0.998 * halton(i, 3));
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Points of the closed upper half-disk `|z| <= radius`, `Im z >= 0`,
/// including the real diameter.
pub fn upper_half_disk(n: usize, radius: f64) -> Vec<Complex64> {
    (1..=n)
        .map(|i| {
            let r = radius * halton(i, 2).sqrt();
            let theta = if i % 10 == 0 { 0.0 } else if i % 10 == 5 { PI } else { PI * halton(i, 3) };
            let z = Complex64::from_polar(r, theta);
            Complex64::new(z.re, z.im.max(0.0))
        })
        .collect()
}

/// Negative reals spread log-uniformly over `[-1e3, -1e-3]`.
pub fn negative_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| -(10f64.powf(-3.0 + 6.0 * (i as f64 + 0.5) / n as f64))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn van_der_corput_prefix() {
        let v: Vec<f64> = (1..=4).map(|i| halton(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
    }

    #[test]
    fn grids_stay_in_their_regions() {
        assert!(upper_half_plane(500, 1.0).iter().all(|z| z.im > 0.0));
        assert!(upper_half_disk(500, 2.0).iter().all(|z| z.im >= 0.0 && z.norm() <= 2.0 + 1e-15));
        assert!(negative_axis(10).iter().all(|x| *x < 0.0));
    }
}
