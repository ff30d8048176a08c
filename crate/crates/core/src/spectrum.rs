//! Exact spectrum of the walled oscillator
//! `-φ''/2 + q²φ/2 = εφ`, `φ(-q0) = 0`, `φ(∞) = 0`.
//!
//! Writing `ε = m + 1/2`, the solution decaying at `+∞` is `D_m(√2 q)`, and
//! the eigenvalues are the orders `m` at which `D_m(-√2 q0)` vanishes.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::specfun::{
    kummer_m, recip_gamma, weber_d, weber_d_prime_series, SeriesControl, WeberTable,
};

/// Largest wall distance handled by the closed form in double precision.
pub const MAX_CLOSED_FORM_Q0: f64 = 4.0;
/// Default root tolerance in `m`.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Largest level index accepted by [`spectrum_scan`].
pub const MAX_SCAN_LEVEL: usize = 6;
/// Integration window beyond the potential minimum.
pub const TAIL_LENGTH: f64 = 12.0;

const SCAN_START: f64 = -0.4;
const SCAN_STEP: f64 = 0.02;
const NODE_SAMPLES: usize = 4000;

/// Dimensionless problem instance: the wall sits at `q = -q0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WellConfig {
    q0: f64,
}

impl WellConfig {
    pub fn new(q0: f64) -> Result<Self> {
        if !q0.is_finite() || q0 < 0.0 {
            return Err(Error::InvalidInput(format!(
                "q0 must be finite and non-negative, got {q0}"
            )));
        }
        Ok(Self { q0 })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    fn require_closed_form(&self) -> Result<()> {
        if self.q0 > MAX_CLOSED_FORM_Q0 {
            Err(Error::UnsupportedRange {
                q0: self.q0,
                max: MAX_CLOSED_FORM_Q0,
            })
        } else {
            Ok(())
        }
    }
}

/// One bound state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenSolution {
    pub n: usize,
    /// Energy in units of ħω.
    pub epsilon: f64,
    /// `m = ε - 1/2`.
    pub weber_order: f64,
    /// Multiplier turning `D_m(√2 q)` into the normalized `φ_n(q)`.
    pub norm: f64,
    pub node_count: usize,
}

/// Characteristic function whose zeros in `m` are the eigenvalue orders:
/// `M(-m/2, 1/2, q0²)/Γ((1-m)/2) + 2 q0 M((1-m)/2, 3/2, q0²)/Γ(-m/2)`.
///
/// Equals `D_m(-√2 q0)` up to the positive factor `2^{m/2} √π e^{-q0²/2}`.
pub fn characteristic(m: f64, cfg: &WellConfig) -> Result<f64> {
    cfg.require_closed_form()?;
    characteristic_unchecked(m, cfg.q0, &SeriesControl::default())
}

fn characteristic_unchecked(m: f64, q0: f64, ctl: &SeriesControl) -> Result<f64> {
    let x = q0 * q0;
    let r1 = recip_gamma(0.5 * (1.0 - m));
    let r2 = recip_gamma(-0.5 * m);
    let t1 = if r1 == 0.0 {
        0.0
    } else {
        r1 * kummer_m(-0.5 * m, 0.5, x, ctl)?
    };
    let t2 = if r2 == 0.0 || q0 == 0.0 {
        0.0
    } else {
        2.0 * q0 * r2 * kummer_m(0.5 * (1.0 - m), 1.5, x, ctl)?
    };
    Ok(t1 + t2)
}

/// Bisect a sign change of `f` on `[lo, hi]` down to adjacent doubles.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64> {
    let mut f_hi = f(hi)?;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Lowest `count` eigenvalue orders, ascending.
fn locate_orders(cfg: &WellConfig, count: usize, tol: f64) -> Result<Vec<f64>> {
    let ctl = SeriesControl::default();
    let f = |m: f64| characteristic_unchecked(m, cfg.q0, &ctl);
    // One step past 2 n_max + 1 so that the q0 = 0 root sitting exactly on
    // the upper end of the range is bracketed.
    let upper = 2.0 * (count as f64 - 1.0) + 1.0 + SCAN_STEP;
    let steps = ((upper - SCAN_START) / SCAN_STEP).ceil() as usize;
    let mut roots = Vec::with_capacity(count);
    let mut m_prev = SCAN_START;
    let mut f_prev = f(m_prev)?;
    if f_prev == 0.0 {
        roots.push(m_prev);
    }
    for k in 1..=steps {
        if roots.len() == count {
            break;
        }
        let m = SCAN_START + SCAN_STEP * k as f64;
        let fm = f(m)?;
        if fm == 0.0 {
            roots.push(m);
        } else if f_prev != 0.0 && (fm > 0.0) != (f_prev > 0.0) {
            let root = bisect(f, m_prev, m, f_prev)?;
            debug_assert!(m - m_prev > 0.0 && (root - m_prev).abs() <= m - m_prev + tol);
            roots.push(root);
        }
        m_prev = m;
        f_prev = fm;
    }
    if roots.len() < count {
        return Err(Error::RootNotFound {
            n: roots.len(),
            q0: cfg.q0,
            reason: format!(
                "only {} sign changes of the characteristic function on [{SCAN_START}, {upper}]",
                roots.len()
            ),
        });
    }
    Ok(roots)
}

/// A solved bound state together with a tabulation of its eigenfunction.
#[derive(Debug, Clone)]
pub struct Eigenstate {
    solution: EigenSolution,
    q0: f64,
    table: WeberTable,
}

impl Eigenstate {
    fn build(n: usize, root: f64, cfg: &WellConfig) -> Result<Self> {
        let q0 = cfg.q0;
        let epsilon = root + 0.5;
        // may differ from `root` in the last bit; keeps ε - 1/2 exact
        let order = epsilon - 0.5;
        let lower = n as f64 + 0.5;
        let upper = 2.0 * n as f64 + 1.5;
        if !(epsilon > lower && epsilon <= upper) {
            return Err(Error::RootNotFound {
                n,
                q0,
                reason: format!("epsilon = {epsilon} outside ({lower}, {upper}]"),
            });
        }
        let table = WeberTable::new(
            order,
            -SQRT_2 * q0 - 0.25,
            SQRT_2 * (q0 + TAIL_LENGTH) + 0.25,
        );
        let integral = GaussLegendre::order64().composite(
            |q| {
                let d = table.value(SQRT_2 * q);
                d * d
            },
            -q0,
            q0 + TAIL_LENGTH,
            1.0,
        );
        let slope = weber_d_prime_series(order, -SQRT_2 * q0, &SeriesControl::default())?;
        let sign = if slope < 0.0 { -1.0 } else { 1.0 };
        let norm = sign / integral.sqrt();

        let width = 2.0 * q0 + 8.0;
        let samples: Vec<f64> = (1..NODE_SAMPLES)
            .map(|i| table.value(SQRT_2 * (-q0 + width * i as f64 / NODE_SAMPLES as f64)))
            .collect();
        let peak = samples.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let node_count = count_sign_changes(&samples, 1e-9 * peak);
        if node_count != n {
            return Err(Error::RootNotFound {
                n,
                q0,
                reason: format!("eigenfunction has {node_count} nodes"),
            });
        }
        Ok(Self {
            solution: EigenSolution {
                n,
                epsilon,
                weber_order: order,
                norm,
                node_count,
            },
            q0,
            table,
        })
    }

    /// Rebuild the eigenfunction tabulation for an already solved level.
    pub fn from_solution(solution: EigenSolution, cfg: &WellConfig) -> Result<Self> {
        cfg.require_closed_form()?;
        let table = WeberTable::new(
            solution.weber_order,
            -SQRT_2 * cfg.q0 - 0.25,
            SQRT_2 * (cfg.q0 + TAIL_LENGTH) + 0.25,
        );
        Ok(Self {
            solution,
            q0: cfg.q0,
            table,
        })
    }

    pub fn solution(&self) -> &EigenSolution {
        &self.solution
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    /// Normalized `φ_n(q)`; zero behind the wall.
    pub fn phi(&self, q: f64) -> f64 {
        if q < -self.q0 {
            return 0.0;
        }
        self.solution.norm * self.table.value(SQRT_2 * q)
    }

    /// `(φ_n(q), φ_n'(q))`.
    pub fn phi_and_slope(&self, q: f64) -> (f64, f64) {
        if q < -self.q0 {
            return (0.0, 0.0);
        }
        let (d, dp) = self.table.eval(SQRT_2 * q);
        (self.solution.norm * d, self.solution.norm * SQRT_2 * dp)
    }

    /// `φ_n'(-q0)` from the term-wise differentiated Kummer series.
    pub fn wall_slope(&self) -> Result<f64> {
        let dp = weber_d_prime_series(
            self.solution.weber_order,
            -SQRT_2 * self.q0,
            &SeriesControl::default(),
        )?;
        Ok(self.solution.norm * SQRT_2 * dp)
    }

    /// `∫_{-q0}^{q0+12} g(q, φ, φ') dq` with 64-point Gauss–Legendre panels.
    pub fn integrate<F: Fn(f64, f64, f64) -> f64>(&self, g: F) -> f64 {
        GaussLegendre::order64().composite(
            |q| {
                let (p, dp) = self.phi_and_slope(q);
                g(q, p, dp)
            },
            -self.q0,
            self.q0 + TAIL_LENGTH,
            1.0,
        )
    }
}

fn count_sign_changes(values: &[f64], floor: f64) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

/// States `0..=n_max`, ascending.
pub fn eigenstates(n_max: usize, cfg: &WellConfig, tol: f64) -> Result<Vec<Eigenstate>> {
    check_tol(tol)?;
    cfg.require_closed_form()?;
    let orders = locate_orders(cfg, n_max + 1, tol)?;
    orders
        .into_iter()
        .enumerate()
        .map(|(n, m)| Eigenstate::build(n, m, cfg))
        .collect()
}

/// Single state `n`.
pub fn eigenstate(n: usize, cfg: &WellConfig, tol: f64) -> Result<Eigenstate> {
    Ok(eigenstates(n, cfg, tol)?.pop().expect("n + 1 states"))
}

/// Level `n`: the `(n+1)`-th root of [`characteristic`] in ascending `m`.
pub fn eigenvalue(n: usize, cfg: &WellConfig, tol: f64) -> Result<EigenSolution> {
    Ok(eigenstate(n, cfg, tol)?.solution)
}

/// Levels `0..=n_max` from a single scan.
pub fn eigenvalues(n_max: usize, cfg: &WellConfig, tol: f64) -> Result<Vec<EigenSolution>> {
    Ok(eigenstates(n_max, cfg, tol)?
        .into_iter()
        .map(|s| s.solution)
        .collect())
}

/// Normalized eigenfunction `φ_n(q) = norm · D_m(√2 q)`.
pub fn eigenfunction(sol: &EigenSolution, cfg: &WellConfig, q: f64) -> Result<f64> {
    if q < -cfg.q0 {
        return Err(Error::DomainError { q, wall: -cfg.q0 });
    }
    Ok(sol.norm * weber_d(sol.weber_order, SQRT_2 * q, &SeriesControl::default())?)
}

/// Large-`q0` ground-state energy `1/2 + q0 e^{-q0²} / (2√π)`.
pub fn asymptotic_epsilon0(cfg: &WellConfig) -> f64 {
    let q0 = cfg.q0;
    0.5 + q0 * (-q0 * q0).exp() / (2.0 * PI.sqrt())
}

/// Large-`q0` first excited energy `3/2 + q0 (2q0² - 1) e^{-q0²} / (2√π)`.
pub fn asymptotic_epsilon1(cfg: &WellConfig) -> f64 {
    let q0 = cfg.q0;
    1.5 + q0 * (2.0 * q0 * q0 - 1.0) * (-q0 * q0).exp() / (2.0 * PI.sqrt())
}

/// One row of a spectrum scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub q0: f64,
    pub epsilons: Vec<f64>,
    /// `ε_{n+1} - ε_n`.
    pub gaps: Vec<f64>,
}

/// Levels `0..=n_max` over an ascending grid of wall distances. Grid points
/// are solved in parallel; rows come back in grid order.
pub fn spectrum_scan(q0_grid: &[f64], n_max: usize, tol: f64) -> Result<Vec<ScanRow>> {
    if n_max > MAX_SCAN_LEVEL {
        return Err(Error::InvalidInput(format!(
            "n_max = {n_max} exceeds {MAX_SCAN_LEVEL}"
        )));
    }
    if q0_grid.windows(2).any(|w| w[1].is_nan() || w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "q0 grid must be strictly ascending".into(),
        ));
    }
    let configs = q0_grid
        .iter()
        .map(|&q0| {
            let cfg = WellConfig::new(q0)?;
            cfg.require_closed_form()?;
            Ok(cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    configs
        .par_iter()
        .map(|cfg| {
            let levels = eigenvalues(n_max, cfg, tol)?;
            let epsilons: Vec<f64> = levels.iter().map(|s| s.epsilon).collect();
            let gaps = epsilons.windows(2).map(|w| w[1] - w[0]).collect();
            Ok(ScanRow {
                q0: cfg.q0,
                epsilons,
                gaps,
            })
        })
        .collect()
}
