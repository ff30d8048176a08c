//! Parabolic cylinder function `D_m(z)`.
//!
//! Two evaluation routes:
//!
//! * the Kummer-series combination
//!   `D_m(z) = 2^{m/2} √π e^{-z²/4} [ M(-m/2, 1/2, z²/2) / Γ((1-m)/2)
//!                                   - √2 z M((1-m)/2, 3/2, z²/2) / Γ(-m/2) ]`,
//!   which is accurate for `z <= SERIES_MAX_Z` (on the decaying side the two
//!   terms grow like `e^{z²/4}` while `D_m` decays like `e^{-z²/4}`);
//! * the recessive route for `z > SERIES_MAX_Z`: the large-`z` asymptotic
//!   expansion far out, carried inward by exact Taylor steps of the Weber
//!   equation `D'' = (z²/4 - m - 1/2) D`. Inward integration of the recessive
//!   solution is stable.

use std::f64::consts::{PI, SQRT_2};

use super::{kummer_m, recip_gamma, SeriesControl};
use crate::error::Result;

/// Largest `z` evaluated with the Kummer-series combination.
pub const SERIES_MAX_Z: f64 = 2.0;

const TABLE_STEP: f64 = 0.25;
const MAX_STEP: f64 = 0.5;

fn series_prefactor(m: f64, z: f64) -> f64 {
    (0.5 * m * std::f64::consts::LN_2 - 0.25 * z * z).exp() * PI.sqrt()
}

/// `D_m(z)` from the Kummer-series combination, for any `z`.
///
/// Loses roughly `z²/(2 ln 10)` digits for large positive `z`; see
/// [`weber_d`] for the evaluation used everywhere else.
pub fn weber_d_series(m: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let x = 0.5 * z * z;
    let r1 = recip_gamma(0.5 * (1.0 - m));
    let r2 = recip_gamma(-0.5 * m);
    let t1 = if r1 == 0.0 {
        0.0
    } else {
        r1 * kummer_m(-0.5 * m, 0.5, x, ctl)?
    };
    let t2 = if r2 == 0.0 || z == 0.0 {
        0.0
    } else {
        SQRT_2 * z * r2 * kummer_m(0.5 * (1.0 - m), 1.5, x, ctl)?
    };
    Ok(series_prefactor(m, z) * (t1 - t2))
}

/// `dD_m/dz` by term-wise differentiation of the Kummer-series combination,
/// using `dM(a, c, x)/dx = (a/c) M(a+1, c+1, x)`.
pub fn weber_d_prime_series(m: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let x = 0.5 * z * z;
    let (a1, c1) = (-0.5 * m, 0.5);
    let (a2, c2) = (0.5 * (1.0 - m), 1.5);
    let r1 = recip_gamma(a2);
    let r2 = recip_gamma(a1);

    let mut bracket = 0.0;
    let mut bracket_prime = 0.0;
    if r1 != 0.0 {
        let f1 = kummer_m(a1, c1, x, ctl)?;
        bracket += r1 * f1;
        if a1 != 0.0 {
            bracket_prime += r1 * (a1 / c1) * kummer_m(a1 + 1.0, c1 + 1.0, x, ctl)? * z;
        }
    }
    if r2 != 0.0 {
        let f2 = kummer_m(a2, c2, x, ctl)?;
        bracket -= SQRT_2 * z * r2 * f2;
        let df2 = if a2 != 0.0 {
            (a2 / c2) * kummer_m(a2 + 1.0, c2 + 1.0, x, ctl)?
        } else {
            0.0
        };
        bracket_prime -= SQRT_2 * r2 * (f2 + z * z * df2);
    }
    Ok(series_prefactor(m, z) * (bracket_prime - 0.5 * z * bracket))
}

/// Large-`z` expansion
/// `D_m(z) ~ z^m e^{-z²/4} [1 - m(m-1)/(2z²) + m(m-1)(m-2)(m-3)/(8z⁴) - ...]`
/// and its derivative.
fn asymptotic(m: f64, z: f64) -> (f64, f64) {
    let inv_z2 = 1.0 / (z * z);
    let mut s = 1.0;
    let mut ds = 0.0;
    let mut coef = 1.0;
    let mut zpow = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..400 {
        let kf = k as f64;
        coef *= -(m - 2.0 * kf) * (m - 2.0 * kf - 1.0) / (2.0 * (kf + 1.0));
        zpow *= inv_z2;
        let term = coef * zpow;
        if term == 0.0 {
            break;
        }
        if term.abs() > last {
            // past the smallest term of the asymptotic series
            break;
        }
        s += term;
        ds += -2.0 * (kf + 1.0) * term / z;
        last = term.abs();
        if term.abs() < 1e-18 * s.abs() {
            break;
        }
    }
    let envelope = (m * z.ln() - 0.25 * z * z).exp();
    let d = envelope * s;
    let dp = envelope * ((m / z - 0.5 * z) * s + ds);
    (d, dp)
}

/// One Taylor step of the Weber equation from `z0` to `z0 + w`.
///
/// With `z = z0 + w` the equation reads
/// `y'' = (α + β w + w²/4) y`, `α = z0²/4 - m - 1/2`, `β = z0/2`, so the
/// local coefficients obey
/// `k (k-1) a_k = α a_{k-2} + β a_{k-3} + a_{k-4}/4`.
fn taylor_step(m: f64, z0: f64, d: f64, dp: f64, w: f64) -> (f64, f64) {
    if w == 0.0 {
        return (d, dp);
    }
    let alpha = 0.25 * z0 * z0 - m - 0.5;
    let beta = 0.5 * z0;
    let mut a = Vec::with_capacity(64);
    a.push(d);
    a.push(dp);
    let mut value = d + dp * w;
    let mut deriv = dp;
    let mut wpow = w;
    let mut scale = d.abs().max((dp * w).abs());
    let mut quiet = 0;
    for k in 2..MAX_TAYLOR_TERMS {
        let j = k - 2;
        let mut num = alpha * a[j];
        if j >= 1 {
            num += beta * a[j - 1];
        }
        if j >= 2 {
            num += 0.25 * a[j - 2];
        }
        let ak = num / (k * (k - 1)) as f64;
        a.push(ak);
        let dterm = k as f64 * ak * wpow;
        wpow *= w;
        let term = ak * wpow;
        value += term;
        deriv += dterm;
        scale = scale.max(term.abs());
        if term.abs() <= 1e-18 * scale && (dterm * w).abs() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (value, deriv)
}

const MAX_TAYLOR_TERMS: usize = 160;

/// Far point where the asymptotic expansion is accurate to rounding.
fn start_point(m: f64, z_hi: f64) -> f64 {
    z_hi.max(12.0).max(2.0 * (m.abs() + 1.0).sqrt() + 8.0)
}

/// Carry `(D, D')` from `z_from` to `z_to` in Taylor steps of at most
/// `MAX_STEP`.
fn propagate(m: f64, z_from: f64, d: f64, dp: f64, z_to: f64) -> (f64, f64) {
    let span = z_to - z_from;
    let steps = (span.abs() / MAX_STEP).ceil().max(1.0) as usize;
    let mut state = (d, dp);
    for i in 0..steps {
        let z0 = z_from + span * i as f64 / steps as f64;
        let z1 = z_from + span * (i + 1) as f64 / steps as f64;
        state = taylor_step(m, z0, state.0, state.1, z1 - z0);
    }
    state
}

fn recessive(m: f64, z: f64) -> (f64, f64) {
    let start = start_point(m, z);
    let (d, dp) = asymptotic(m, start);
    propagate(m, start, d, dp, z)
}

/// Parabolic cylinder function `D_m(z)`.
///
/// Uses the Kummer-series combination for `z <= SERIES_MAX_Z` and the
/// recessive route beyond, where the series cancels catastrophically.
pub fn weber_d(m: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if z <= SERIES_MAX_Z {
        weber_d_series(m, z, ctl)
    } else {
        Ok(recessive(m, z).0)
    }
}

/// `dD_m/dz`, same routing as [`weber_d`].
pub fn weber_d_prime(m: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if z <= SERIES_MAX_Z {
        weber_d_prime_series(m, z, ctl)
    } else {
        Ok(recessive(m, z).1)
    }
}

/// Tabulated recessive solution `D_m` on `[z_lo, z_hi]`.
///
/// Knots every `TABLE_STEP` are filled by inward propagation from the
/// asymptotic region; any point in range is then one short Taylor step away
/// from its nearest knot. Used for quadrature over whole eigenfunctions.
#[derive(Debug, Clone)]
pub struct WeberTable {
    order: f64,
    start: f64,
    // knots[i] sits at start - i * TABLE_STEP
    knots: Vec<(f64, f64)>,
}

impl WeberTable {
    pub fn new(order: f64, z_lo: f64, z_hi: f64) -> Self {
        let start = start_point(order, z_hi);
        let count = ((start - z_lo) / TABLE_STEP).ceil() as usize + 2;
        let mut knots = Vec::with_capacity(count);
        let mut state = asymptotic(order, start);
        knots.push(state);
        for i in 1..count {
            let z0 = start - (i - 1) as f64 * TABLE_STEP;
            let z1 = start - i as f64 * TABLE_STEP;
            state = taylor_step(order, z0, state.0, state.1, z1 - z0);
            knots.push(state);
        }
        Self {
            order,
            start,
            knots,
        }
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    /// `(D_m(z), D_m'(z))`.
    pub fn eval(&self, z: f64) -> (f64, f64) {
        if z >= self.start {
            return asymptotic(self.order, z);
        }
        let pos = (self.start - z) / TABLE_STEP;
        let last = self.knots.len() - 1;
        let idx = (pos.round() as usize).min(last);
        let z0 = self.start - idx as f64 * TABLE_STEP;
        let (d, dp) = self.knots[idx];
        if (z - z0).abs() <= MAX_STEP {
            taylor_step(self.order, z0, d, dp, z - z0)
        } else {
            propagate(self.order, z0, d, dp, z)
        }
    }

    pub fn value(&self, z: f64) -> f64 {
        self.eval(z).0
    }
}
