//! Rayleigh–Ritz bounds in the non-orthogonal basis
//! `f_j(q) = (q + q0) q^j e^{-q²/2}`, `j = 0..N-1`.
//!
//! Every basis function vanishes at the wall. Matrix elements reduce to
//! polynomials times `e^{-q²}` and are integrated exactly with the moments
//! `M_k(q0) = ∫_{-q0}^{∞} q^k e^{-q²} dq`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::{half_gaussian_moment, half_gaussian_moments};

pub const MAX_BASIS: usize = 20;
pub const MAX_OVERLAP_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RitzProblem {
    basis_size: usize,
    q0: f64,
}

impl RitzProblem {
    pub fn new(basis_size: usize, q0: f64) -> Result<Self> {
        if basis_size == 0 || basis_size > MAX_BASIS {
            return Err(Error::InvalidInput(format!(
                "basis size must be in 1..={MAX_BASIS}, got {basis_size}"
            )));
        }
        if !q0.is_finite() || q0 < 0.0 {
            return Err(Error::InvalidInput(format!(
                "q0 must be finite and non-negative, got {q0}"
            )));
        }
        Ok(Self { basis_size, q0 })
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
}

#[derive(Debug, Clone)]
pub struct RitzResult {
    /// `w_0 <= w_1 <= ...`, units of ħω.
    pub values: Vec<f64>,
    /// Column `n` holds the expansion coefficients of root `n`, scaled so
    /// that `cᵀ S c = 1`.
    pub coefficients: DMatrix<f64>,
    pub overlap_condition: f64,
}

/// `f_j(q) = (q + q0) q^j e^{-q²/2}`.
pub fn basis_function(j: usize, q0: f64, q: f64) -> f64 {
    (q + q0) * q.powi(j as i32) * (-0.5 * q * q).exp()
}

/// Polynomial coefficients, lowest degree first.
type Poly = Vec<f64>;

fn poly_mul(a: &[f64], b: &[f64]) -> Poly {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `∫ p(q) e^{-q²} dq` over `[-q0, ∞)`.
fn gaussian_integral(p: &[f64], moments: &[f64]) -> f64 {
    p.iter().zip(moments).map(|(c, m)| c * m).sum()
}

/// `g_j = (q + q0) q^j`, so `f_j = g_j e^{-q²/2}`.
fn prefactor(j: usize, q0: f64) -> Poly {
    let mut p = vec![0.0; j + 2];
    p[j] = q0;
    p[j + 1] = 1.0;
    p
}

/// `f_j' e^{q²/2} = g_j' - q g_j`.
fn prefactor_derivative(j: usize, q0: f64) -> Poly {
    let mut p = vec![0.0; j + 3];
    if j >= 1 {
        p[j - 1] += q0 * j as f64;
    }
    p[j] += (j + 1) as f64;
    p[j + 1] -= q0;
    p[j + 2] -= 1.0;
    p
}

fn symmetric_from(n: usize, entry: impl Fn(usize, usize) -> f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = entry(i, j);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// `M_k / M_0` from the same recursion, so that the `q0 = 0` values
/// (`1, 0, 1/2, 0, 3/4, ...`) come out exact.
fn relative_moments(n_max: usize, q0: f64) -> Vec<f64> {
    let raw = half_gaussian_moments(1, q0);
    let first = raw[1] / raw[0];
    let mut m = vec![1.0, first];
    let mut power = 1.0;
    for k in 2..=n_max {
        power *= -q0;
        m.push(power * first + 0.5 * (k - 1) as f64 * m[k - 2]);
    }
    m.truncate(n_max + 1);
    m
}

fn overlap_from(p: &RitzProblem, m: &[f64]) -> DMatrix<f64> {
    let n = p.basis_size;
    let q0 = p.q0;
    symmetric_from(n, |i, j| {
        let k = i + j;
        m[k + 2] + 2.0 * q0 * m[k + 1] + q0 * q0 * m[k]
    })
}

/// Spectral condition number of `S` after symmetric diagonal scaling.
fn scaled_condition(s: &DMatrix<f64>) -> f64 {
    let d: DVector<f64> = s.diagonal().map(|x| 1.0 / x.sqrt());
    let scaled = DMatrix::from_fn(s.nrows(), s.ncols(), |i, j| s[(i, j)] * d[i] * d[j]);
    let eig = SymmetricEigen::new(scaled).eigenvalues;
    let max = eig.iter().cloned().fold(f64::MIN, f64::max);
    let min = eig.iter().cloned().fold(f64::MAX, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `S_ij = M_{i+j+2} + 2 q0 M_{i+j+1} + q0² M_{i+j}`.
pub fn overlap_matrix(p: &RitzProblem) -> Result<DMatrix<f64>> {
    let s = overlap_from(p, &half_gaussian_moments(2 * p.basis_size + 2, p.q0));
    checked_condition(&s)?;
    Ok(s)
}

fn checked_condition(s: &DMatrix<f64>) -> Result<f64> {
    let condition = scaled_condition(s);
    if condition > MAX_OVERLAP_CONDITION {
        return Err(Error::IllConditioned {
            condition,
            limit: MAX_OVERLAP_CONDITION,
        });
    }
    Ok(condition)
}

/// `H_ij = ∫ [f_i' f_j' / 2 + q² f_i f_j / 2] dq`, the symmetric form of
/// `∫ f_i (-D²/2 + q²/2) f_j`; the boundary term drops since `f_i(-q0) = 0`.
pub fn hamiltonian_matrix(p: &RitzProblem) -> DMatrix<f64> {
    hamiltonian_from(p, &half_gaussian_moments(2 * p.basis_size + 4, p.q0))
}

fn hamiltonian_from(p: &RitzProblem, m: &[f64]) -> DMatrix<f64> {
    let n = p.basis_size;
    let q0 = p.q0;
    let g: Vec<Poly> = (0..n).map(|j| prefactor(j, q0)).collect();
    let dg: Vec<Poly> = (0..n).map(|j| prefactor_derivative(j, q0)).collect();
    symmetric_from(n, |i, j| {
        let kinetic = gaussian_integral(&poly_mul(&dg[i], &dg[j]), m);
        let potential = gaussian_integral(&poly_mul(&poly_mul(&g[i], &g[j]), &[0.0, 0.0, 1.0]), m);
        0.5 * (kinetic + potential)
    })
}

/// Newton steps on `(H - wS)c = 0`, `cᵀSc = 1` via the bordered system.
fn refine(h: &DMatrix<f64>, s: &DMatrix<f64>, w: f64, c: DVector<f64>) -> (f64, DVector<f64>) {
    let n = c.len();
    let (mut w, mut c) = (w, c);
    for _ in 0..2 {
        let sc = s * &c;
        let r = h * &c - &sc * w;
        let mut a = DMatrix::zeros(n + 1, n + 1);
        a.view_mut((0, 0), (n, n)).copy_from(&(h - s * w));
        for i in 0..n {
            a[(i, n)] = -sc[i];
            a[(n, i)] = -sc[i];
        }
        let mut rhs = DVector::zeros(n + 1);
        rhs.rows_mut(0, n).copy_from(&(-r));
        rhs[n] = 0.5 * (c.dot(&sc) - 1.0);
        let Some(step) = a.lu().solve(&rhs) else {
            break;
        };
        c += step.rows(0, n);
        w += step[n];
    }
    (w, c)
}

/// Roots of `det(H - w S) = 0` with their coefficient vectors.
///
/// Reduces `H c = w S c` with the Cholesky factor `S = L Lᵀ` to the standard
/// problem `(L⁻¹ H L⁻ᵀ) y = w y`, then `c = L⁻ᵀ y`.
pub fn ritz_values(p: &RitzProblem) -> Result<RitzResult> {
    let n = p.basis_size;
    // H and S divided by M_0: same roots, and exact entries at q0 = 0
    let m = relative_moments(2 * n + 4, p.q0);
    let s = overlap_from(p, &m);
    let h = hamiltonian_from(p, &m);
    let overlap_condition = checked_condition(&s)?;
    let unscale = 1.0 / half_gaussian_moment(0, p.q0).sqrt();
    if n == 1 {
        return Ok(RitzResult {
            values: vec![h[(0, 0)] / s[(0, 0)]],
            coefficients: DMatrix::from_element(1, 1, unscale / s[(0, 0)].sqrt()),
            overlap_condition,
        });
    }
    let d: Vec<f64> = (0..n).map(|i| 1.0 / s[(i, i)].sqrt()).collect();
    let s_eq = DMatrix::from_fn(n, n, |i, j| s[(i, j)] * d[i] * d[j]);
    let h_eq = DMatrix::from_fn(n, n, |i, j| h[(i, j)] * d[i] * d[j]);
    let singular = || Error::IllConditioned {
        condition: f64::INFINITY,
        limit: MAX_OVERLAP_CONDITION,
    };
    let l = s_eq.cholesky().ok_or_else(singular)?.l();
    // reduced = L^{-1} H L^{-T}
    let half = l.solve_lower_triangular(&h_eq).ok_or_else(singular)?;
    let reduced = l
        .solve_lower_triangular(&half.transpose())
        .ok_or_else(singular)?;
    let reduced = (&reduced + reduced.transpose()) * 0.5;
    let eig = SymmetricEigen::new(reduced);
    let lt = l.transpose();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut coefficients = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let y = lt
            .solve_upper_triangular(&eig.eigenvectors.column(k).into_owned())
            .ok_or_else(singular)?;
        let c = DVector::from_fn(n, |i, _| y[i] * d[i]);
        let (w, c) = refine(&h, &s, eig.eigenvalues[k], c);
        values[col] = w;
        let mut c = c * unscale;
        // fix the sign: largest component positive
        let pivot = c.iamax();
        if c[pivot] < 0.0 {
            c = -c;
        }
        coefficients.set_column(col, &c);
    }
    Ok(RitzResult {
        values,
        coefficients,
        overlap_condition,
    })
}
