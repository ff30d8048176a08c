use crate::error::{Error, Result};

/// Truncation control for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "series tolerance must be positive, got {rel_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidInput("max_terms must be at least 1".into()));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Kummer's function `M(a, c, z) = 1F1(a; c; z)` by its Taylor series
///
/// `1 + (a/c) z + a(a+1) / (2! c(c+1)) z^2 + ...`
///
/// The series stops when the next term falls below `rel_tol * |sum|`, but only
/// once the term ratio has settled below 1/2 with `a + k > 0`, so that a term
/// made small by a nearly vanishing factor `(a + k)` cannot end the sum early.
/// A non-positive integer `a` gives a polynomial and terminates exactly.
pub fn kummer_m(a: f64, c: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(a.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "kummer_m arguments must be finite (a = {a}, c = {c}, z = {z})"
        )));
    }
    if is_non_positive_integer(c) {
        return Err(Error::InvalidInput(format!(
            "kummer_m: c = {c} is a non-positive integer"
        )));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let ak = a + kf;
        if ak == 0.0 {
            return Ok(sum);
        }
        term *= ak / (c + kf) * z / (kf + 1.0);
        sum += term;
        let next_ratio = ((ak + 1.0) * z / ((c + kf + 1.0) * (kf + 2.0))).abs();
        if ak > 0.0 && c + kf > 0.0 && next_ratio < 0.5 && term.abs() <= ctl.rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        a,
        c,
        z,
        max_terms: ctl.max_terms,
    })
}
