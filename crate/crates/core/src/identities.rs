//! Exact relations satisfied by every bound state of the walled oscillator.
//!
//! For `V = q²/2` and the wall at `b = -q0`:
//!
//! * boundary derivative: `dε/dq0 = -φ'(-q0)² / 2` (normalized `φ`);
//! * virial: `<D²> + <q²> = q0 dε/dq0`;
//! * hypervirial: `<q> = -dε/dq0`.
//!
//! Each check evaluates both sides independently (quadrature on one side,
//! the wall slope on the other) and reports the residual.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::specfun::hermite;
use crate::spectrum::{
    eigenstate, eigenstates, eigenvalues, EigenSolution, Eigenstate, WellConfig, DEFAULT_TOL,
    MAX_CLOSED_FORM_Q0,
};

/// Step for the finite-difference cross-check of `dε/dq0`.
pub const FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdentityTag {
    Virial,
    Hypervirial,
    BoundaryDerivative,
}

impl IdentityTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityTag::Virial => "virial",
            IdentityTag::Hypervirial => "hypervirial",
            IdentityTag::BoundaryDerivative => "boundary_derivative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub q0: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|`
    pub residual: f64,
    pub identity_tag: IdentityTag,
}

impl IdentityReport {
    fn new(identity_tag: IdentityTag, n: usize, q0: f64, lhs: f64, rhs: f64) -> Self {
        Self {
            n,
            q0,
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
            identity_tag,
        }
    }

    /// `residual / |lhs|`.
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.lhs.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `q`
    Q,
    /// `q²`
    Q2,
    /// `d²/dq²`
    D2,
}

/// `<A> = ∫ φ A φ / ∫ φ²` over `[-q0, ∞)` for an already tabulated state.
///
/// `<D²>` is evaluated as `-∫ φ'²`; the boundary term vanishes because
/// `φ(-q0) = 0`.
pub fn state_expectation(state: &Eigenstate, observable: Observable) -> f64 {
    let weight = state.integrate(|_, p, _| p * p);
    let value = match observable {
        Observable::Q => state.integrate(|q, p, _| q * p * p),
        Observable::Q2 => state.integrate(|q, p, _| q * q * p * p),
        Observable::D2 => -state.integrate(|_, _, dp| dp * dp),
    };
    value / weight
}

/// Expectation value of `observable` in the state `sol`.
pub fn expectation(sol: &EigenSolution, cfg: &WellConfig, observable: Observable) -> Result<f64> {
    let state = Eigenstate::from_solution(sol.clone(), cfg)?;
    Ok(state_expectation(&state, observable))
}

fn slope_formula(state: &Eigenstate) -> Result<f64> {
    let slope = state.wall_slope()?;
    Ok(-0.5 * slope * slope)
}

/// `dε_n/dq0 = -φ_n'(-q0)² / 2`. Always negative.
pub fn depsilon_dq0(n: usize, cfg: &WellConfig) -> Result<f64> {
    slope_formula(&eigenstate(n, cfg, DEFAULT_TOL)?)
}

fn virial_report(state: &Eigenstate, slope: f64) -> IdentityReport {
    let lhs = state_expectation(state, Observable::D2) + state_expectation(state, Observable::Q2);
    let q0 = state.q0();
    IdentityReport::new(IdentityTag::Virial, state.solution().n, q0, lhs, q0 * slope)
}

fn hypervirial_report(state: &Eigenstate, slope: f64) -> IdentityReport {
    let lhs = state_expectation(state, Observable::Q);
    IdentityReport::new(
        IdentityTag::Hypervirial,
        state.solution().n,
        state.q0(),
        lhs,
        -slope,
    )
}

/// `<D²> + <q²>` against `q0 dε/dq0`.
pub fn check_virial(n: usize, cfg: &WellConfig) -> Result<IdentityReport> {
    let state = eigenstate(n, cfg, DEFAULT_TOL)?;
    let slope = slope_formula(&state)?;
    Ok(virial_report(&state, slope))
}

/// `<q>` against `-dε/dq0`.
pub fn check_hypervirial(n: usize, cfg: &WellConfig) -> Result<IdentityReport> {
    let state = eigenstate(n, cfg, DEFAULT_TOL)?;
    let slope = slope_formula(&state)?;
    Ok(hypervirial_report(&state, slope))
}

/// Finite-difference `dε_n/dq0` for `n = 0..=n_max`: central where both
/// neighbours lie in `[0, 4]`, second-order one-sided otherwise.
pub fn depsilon_dq0_fd(n_max: usize, cfg: &WellConfig, h: f64) -> Result<Vec<f64>> {
    let q0 = cfg.q0();
    let levels = |q: f64| -> Result<Vec<f64>> {
        Ok(eigenvalues(n_max, &WellConfig::new(q)?, DEFAULT_TOL)?
            .into_iter()
            .map(|s| s.epsilon)
            .collect())
    };
    if q0 - h >= 0.0 && q0 + h <= MAX_CLOSED_FORM_Q0 {
        let (plus, minus) = (levels(q0 + h)?, levels(q0 - h)?);
        Ok(plus
            .iter()
            .zip(&minus)
            .map(|(p, m)| (p - m) / (2.0 * h))
            .collect())
    } else {
        let dir = if q0 - h < 0.0 { 1.0 } else { -1.0 };
        let (e0, e1, e2) = (
            levels(q0)?,
            levels(q0 + dir * h)?,
            levels(q0 + 2.0 * dir * h)?,
        );
        Ok((0..=n_max)
            .map(|n| dir * (-3.0 * e0[n] + 4.0 * e1[n] - e2[n]) / (2.0 * h))
            .collect())
    }
}

/// Wall-slope formula for `dε/dq0` against a finite difference of the
/// exact levels.
pub fn check_boundary_derivative(n: usize, cfg: &WellConfig, h: f64) -> Result<IdentityReport> {
    let lhs = depsilon_dq0(n, cfg)?;
    let rhs = depsilon_dq0_fd(n, cfg, h)?[n];
    Ok(IdentityReport::new(
        IdentityTag::BoundaryDerivative,
        n,
        cfg.q0(),
        lhs,
        rhs,
    ))
}

/// Virial, hypervirial and boundary-derivative reports for `n = 0..=n_max`,
/// sharing one solve per wall position.
pub fn identity_suite(n_max: usize, cfg: &WellConfig) -> Result<Vec<IdentityReport>> {
    let states = eigenstates(n_max, cfg, DEFAULT_TOL)?;
    let fd = depsilon_dq0_fd(n_max, cfg, FD_STEP)?;
    let mut out = Vec::with_capacity(3 * states.len());
    for (state, fd_slope) in states.iter().zip(fd) {
        let slope = slope_formula(state)?;
        let n = state.solution().n;
        out.push(virial_report(state, slope));
        out.push(hypervirial_report(state, slope));
        out.push(IdentityReport::new(
            IdentityTag::BoundaryDerivative,
            n,
            cfg.q0(),
            slope,
            fd_slope,
        ));
    }
    Ok(out)
}

/// Free-oscillator state cut off at a zero of its Hermite polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteZeroCheck {
    pub hermite_order: usize,
    /// Wall position `b`, a zero of `H_n`.
    pub wall: f64,
    /// `n + 1/2`, exact for the restricted problem.
    pub epsilon: f64,
    /// Index of this level in the well `[b, ∞)`: zeros of `H_n` above `b`.
    pub level: usize,
    pub virial: IdentityReport,
    pub hypervirial: IdentityReport,
}

/// Zeros of `H_1` and `H_2`, ascending.
fn hermite_zeros(n: usize) -> Option<Vec<f64>> {
    match n {
        1 => Some(vec![0.0]),
        2 => Some(vec![-(0.5f64.sqrt()), 0.5f64.sqrt()]),
        _ => None,
    }
}

/// Checks the commutator identities on `ψ_n = N_n H_n(x) e^{-x²/2}` restricted
/// to `[b, ∞)`, with `b` the `zero_index`-th (0-based, ascending) zero of `H_n`:
///
/// * `∫_b^∞ ψ [H, xD] ψ = -b ψ'(b)² / 2`, with `[H, xD] = -D² - x V'`;
/// * `∫_b^∞ ψ² V' = ψ'(b)² / 2`.
pub fn hermite_zero_check(n: usize, zero_index: usize) -> Result<HermiteZeroCheck> {
    let zeros = hermite_zeros(n).ok_or_else(|| {
        Error::InvalidInput(format!("Hermite-zero checks need n in {{1, 2}}, got {n}"))
    })?;
    let b = *zeros.get(zero_index).ok_or(Error::InvalidZeroIndex {
        n,
        index: zero_index,
    })?;
    let level = zeros.iter().filter(|&&z| z > b).count();

    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let norm = 1.0 / (2f64.powi(n as i32) * factorial * PI.sqrt()).sqrt();
    let h = |k: usize, x: f64| hermite(k, x);
    let h_prime = |x: f64| 2.0 * n as f64 * h(n - 1, x);
    let h_second = |x: f64| {
        if n >= 2 {
            4.0 * (n * (n - 1)) as f64 * h(n - 2, x)
        } else {
            0.0
        }
    };
    let psi = |x: f64| norm * h(n, x) * (-0.5 * x * x).exp();
    let psi_prime = |x: f64| norm * (h_prime(x) - x * h(n, x)) * (-0.5 * x * x).exp();
    let psi_second = |x: f64| {
        norm * (h_second(x) - 2.0 * x * h_prime(x) + (x * x - 1.0) * h(n, x)) * (-0.5 * x * x).exp()
    };

    let rule = GaussLegendre::order64();
    let upper = b + 14.0;
    let commutator = rule.composite(
        |x| psi(x) * (-psi_second(x) - x * x * psi(x)),
        b,
        upper,
        1.0,
    );
    let force = rule.composite(|x| psi(x) * psi(x) * x, b, upper, 1.0);
    let slope = psi_prime(b);

    Ok(HermiteZeroCheck {
        hermite_order: n,
        wall: b,
        epsilon: n as f64 + 0.5,
        level,
        virial: IdentityReport::new(
            IdentityTag::Virial,
            n,
            -b,
            commutator,
            -0.5 * b * slope * slope,
        ),
        hypervirial: IdentityReport::new(
            IdentityTag::Hypervirial,
            n,
            -b,
            force,
            0.5 * slope * slope,
        ),
    })
}
