//! Brute-force reference solver.
//!
//! Second-order central differences for `-φ''/2 + q²φ/2` on a uniform grid
//! between the wall and a far Dirichlet boundary. The matrix is symmetric
//! tridiagonal; its lowest eigenvalues come from Sturm-sequence bisection.
//! Shares no code with the closed-form path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::WellConfig;

pub const DEFAULT_POINTS: usize = 4000;
pub const DEFAULT_TAIL: f64 = 12.0;
pub const MIN_POINTS: usize = 200;
pub const MIN_TAIL: f64 = 8.0;
/// Agreement required between successive Richardson estimates.
pub const RICHARDSON_TOL: f64 = 1e-7;

/// Uniform interior grid on `(q_min, q_max)` with `points` unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    q_min: f64,
    q_max: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(cfg: &WellConfig, q_max: f64, points: usize) -> Result<Self> {
        let q0 = cfg.q0();
        if q_max.is_nan() || q_max < q0 + MIN_TAIL {
            return Err(Error::GridTooCoarse(format!(
                "q_max = {q_max} must be at least q0 + {MIN_TAIL}"
            )));
        }
        if points < MIN_POINTS {
            return Err(Error::GridTooCoarse(format!(
                "{points} points, need at least {MIN_POINTS}"
            )));
        }
        Ok(Self {
            q_min: -q0,
            q_max,
            points,
        })
    }

    /// `q_max = q0 + 12`, 4000 points.
    pub fn default_for(cfg: &WellConfig) -> Self {
        Self::new(cfg, cfg.q0() + DEFAULT_TAIL, DEFAULT_POINTS).expect("default grid is valid")
    }

    /// Same interval with half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points + 1,
            ..*self
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.q_max - self.q_min) / (self.points + 1) as f64
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    /// Interior abscissae.
    pub fn abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (1..=self.points).map(move |i| self.q_min + h * i as f64)
    }
}

struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    fn hamiltonian(grid: &GridSpec) -> Self {
        let h = grid.spacing();
        let kinetic = 1.0 / (h * h);
        let diag = grid.abscissae().map(|q| kinetic + 0.5 * q * q).collect();
        Self {
            diag,
            off: -0.5 * kinetic,
        }
    }

    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 { a - x } else { a - x - off2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (a.abs() + self.off.abs());
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn upper_bound(&self) -> f64 {
        self.diag.iter().fold(f64::MIN, |acc, &a| acc.max(a)) + 2.0 * self.off.abs()
    }

    /// `k`-th eigenvalue (0-based) by bisection on the Sturm count.
    fn eigenvalue(&self, k: usize, mut lo: f64) -> f64 {
        let mut hi = 2.0 * k as f64 + 3.0;
        if self.count_below(hi) <= k {
            hi = self.upper_bound();
        }
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return 0.5 * (lo + hi);
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// Inverse iteration for the eigenvector of `lambda`.
    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = lambda - 1e-9 * lambda.abs().max(1.0);
        let mut x = vec![1.0; n];
        for _ in 0..4 {
            // Thomas algorithm for (T - shift) y = x
            let mut c = vec![0.0; n];
            let mut d = vec![0.0; n];
            let mut denom = self.diag[0] - shift;
            c[0] = self.off / denom;
            d[0] = x[0] / denom;
            for i in 1..n {
                denom = self.diag[i] - shift - self.off * c[i - 1];
                c[i] = self.off / denom;
                d[i] = (x[i] - self.off * d[i - 1]) / denom;
            }
            let mut y = vec![0.0; n];
            y[n - 1] = d[n - 1];
            for i in (0..n - 1).rev() {
                y[i] = d[i] - c[i] * y[i + 1];
            }
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            x = y.into_iter().map(|v| v / norm).collect();
        }
        x
    }
}

/// Lowest `n_max + 1` eigenvalues of the finite-difference Hamiltonian.
pub fn fd_eigenvalues(cfg: &WellConfig, n_max: usize, grid: &GridSpec) -> Result<Vec<f64>> {
    if grid.q_min != -cfg.q0() {
        return Err(Error::InvalidInput(format!(
            "grid starts at {} but the wall is at {}",
            grid.q_min,
            -cfg.q0()
        )));
    }
    let t = Tridiagonal::hamiltonian(grid);
    let mut out = Vec::with_capacity(n_max + 1);
    let mut lo = 0.0;
    for k in 0..=n_max {
        let e = t.eigenvalue(k, lo);
        out.push(e);
        lo = e;
    }
    Ok(out)
}

/// Eigenvector of level `n` on `grid` (interior values, unit 2-norm).
pub fn fd_eigenvector(cfg: &WellConfig, n: usize, grid: &GridSpec) -> Result<Vec<f64>> {
    let levels = fd_eigenvalues(cfg, n, grid)?;
    Ok(Tridiagonal::hamiltonian(grid).eigenvector(levels[n]))
}

fn richardson(coarse: &[f64], fine: &[f64]) -> Vec<f64> {
    coarse
        .iter()
        .zip(fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect()
}

/// Richardson-extrapolated eigenvalues `(4 E_{h/2} - E_h) / 3` on the default
/// grid. A third solve at `h/4` checks the extrapolation; disagreement beyond
/// [`RICHARDSON_TOL`] is reported as [`Error::GridTooCoarse`].
pub fn fd_eigenvalues_richardson(cfg: &WellConfig, n_max: usize) -> Result<Vec<f64>> {
    let g1 = GridSpec::default_for(cfg);
    let g2 = g1.refined();
    let g4 = g2.refined();
    let (e1, (e2, e4)) = rayon::join(
        || fd_eigenvalues(cfg, n_max, &g1),
        || {
            rayon::join(
                || fd_eigenvalues(cfg, n_max, &g2),
                || fd_eigenvalues(cfg, n_max, &g4),
            )
        },
    );
    let (e1, e2, e4) = (e1?, e2?, e4?);
    let estimate = richardson(&e1, &e2);
    let check = richardson(&e2, &e4);
    for (n, (a, b)) in estimate.iter().zip(&check).enumerate() {
        if (a - b).abs() > RICHARDSON_TOL {
            return Err(Error::GridTooCoarse(format!(
                "level {n}: extrapolations differ by {:.3e}",
                (a - b).abs()
            )));
        }
    }
    Ok(estimate)
}
