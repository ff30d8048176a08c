use std::f64::consts::PI;

use super::erf;

/// Physicists' Hermite polynomial `H_n(x)` (`H_1 = 2x`).
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `M_k(q0) = ∫_{-q0}^{∞} q^k e^{-q²} dq` for `k = 0..=n_max`.
pub fn half_gaussian_moments(n_max: usize, q0: f64) -> Vec<f64> {
    let g = (-q0 * q0).exp();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.5 * PI.sqrt() * (1.0 + erf(q0)));
    if n_max >= 1 {
        out.push(0.5 * g);
    }
    // (-q0)^(k-1), starting at k = 2.
    let mut power = -q0;
    for k in 2..=n_max {
        let m = 0.5 * power * g + 0.5 * (k as f64 - 1.0) * out[k - 2];
        out.push(m);
        power *= -q0;
    }
    out
}

/// Single half-line Gaussian moment `M_n(q0)`.
pub fn half_gaussian_moment(n: usize, q0: f64) -> f64 {
    half_gaussian_moments(n, q0)[n]
}
