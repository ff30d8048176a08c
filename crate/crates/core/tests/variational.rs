mod common;

use hardwall::spectrum::{eigenvalues, WellConfig, DEFAULT_TOL};
use hardwall::variational::{
    basis_function, hamiltonian_matrix, overlap_matrix, ritz_values, RitzProblem,
};
use proptest::prelude::*;

fn exact_levels(q0: f64, n_max: usize) -> Vec<f64> {
    eigenvalues(n_max, &WellConfig::new(q0).unwrap(), DEFAULT_TOL)
        .unwrap()
        .into_iter()
        .map(|s| s.epsilon)
        .collect()
}

/// `f_j''` from `f_j = g e^{-q²/2}`, `g = (q + q0) q^j`.
fn basis_second_derivative(j: usize, q0: f64, q: f64) -> f64 {
    let jf = j as f64;
    let g = (q + q0) * q.powi(j as i32);
    let g1 = (jf + 1.0) * q.powi(j as i32) + q0 * jf * q.powi(j as i32 - 1);
    let g2 = (jf + 1.0) * jf * q.powi(j as i32 - 1)
        + if j >= 2 {
            q0 * jf * (jf - 1.0) * q.powi(j as i32 - 2)
        } else {
            0.0
        };
    (g2 - 2.0 * q * g1 + (q * q - 1.0) * g) * (-0.5 * q * q).exp()
}

#[test]
fn matrix_elements_against_quadrature() {
    for &q0 in &[0.0, 0.5, 1.0, 2.0, 3.0] {
        for n in [3usize, 6] {
            let p = RitzProblem::new(n, q0).unwrap();
            let s = overlap_matrix(&p).unwrap();
            let h = hamiltonian_matrix(&p);
            for i in 0..n {
                for j in 0..n {
                    let s_ref = common::integrate_to_infinity(
                        |q| basis_function(i, q0, q) * basis_function(j, q0, q),
                        -q0,
                    );
                    // literal operator form f_i (-f_j''/2 + q² f_j/2)
                    let h_ref = common::integrate_to_infinity(
                        |q| {
                            basis_function(i, q0, q)
                                * (-0.5 * basis_second_derivative(j, q0, q)
                                    + 0.5 * q * q * basis_function(j, q0, q))
                        },
                        -q0,
                    );
                    assert!((s[(i, j)] - s_ref).abs() < 1e-12, "S q0={q0} ({i},{j})");
                    assert!((h[(i, j)] - h_ref).abs() < 1e-12, "H q0={q0} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn upper_bound_chain_with_wall_offset() {
    for &q0 in &[0.5, 1.0, 1.55, 2.0] {
        let exact = exact_levels(q0, 7);
        let results: Vec<_> = (1..=9)
            .map(|n| {
                ritz_values(&RitzProblem::new(n, q0).unwrap())
                    .unwrap()
                    .values
            })
            .collect();
        for big_n in 1..=8 {
            let (w, w_next) = (&results[big_n - 1], &results[big_n]);
            for n in 0..big_n {
                assert!(w[n] > w_next[n], "q0={q0} N={big_n} n={n}");
                assert!(w_next[n] > exact[n], "q0={q0} N={big_n} n={n}");
            }
        }
    }
}

#[test]
fn half_line_exact_states_in_span() {
    // At q0 = 0 the basis is q^{j+1} e^{-q²/2}; the exact state n is
    // H_{2n+1}(q) e^{-q²/2}, which lies in the span once N >= 2n + 1.
    let exact = exact_levels(0.0, 2);
    for big_n in 1..=9 {
        let w = ritz_values(&RitzProblem::new(big_n, 0.0).unwrap())
            .unwrap()
            .values;
        for n in 0..big_n.min(3) {
            if big_n > 2 * n {
                assert!((w[n] - exact[n]).abs() < 1e-12, "N={big_n} n={n}: {}", w[n]);
            } else {
                assert!(w[n] > exact[n] + 1e-3, "N={big_n} n={n}");
            }
        }
    }
}

#[test]
fn ground_state_convergence() {
    let exact = exact_levels(1.0, 0)[0];
    let w8 = ritz_values(&RitzProblem::new(8, 1.0).unwrap())
        .unwrap()
        .values[0];
    assert!(w8 - exact > 0.0 && w8 - exact < 1e-4);
    let w10 = ritz_values(&RitzProblem::new(10, 1.0).unwrap())
        .unwrap()
        .values[0];
    assert!(w10 - exact < 1e-6);
}

#[test]
fn values_strictly_ascending() {
    for &q0 in &[0.0, 1.0, 2.5] {
        let r = ritz_values(&RitzProblem::new(8, q0).unwrap()).unwrap();
        assert!(r.values.windows(2).all(|w| w[0] < w[1]));
        assert!(r.overlap_condition >= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn secular_residual(q0 in 0.0f64..3.0, n in 1usize..=9) {
        let p = RitzProblem::new(n, q0).unwrap();
        let r = ritz_values(&p).unwrap();
        let s = overlap_matrix(&p).unwrap();
        let h = hamiltonian_matrix(&p);
        for k in 0..n {
            let c = r.coefficients.column(k);
            let res = &h * c - r.values[k] * (&s * c);
            prop_assert!(res.norm() / c.norm() < 1e-10, "k = {}: {}", k, res.norm() / c.norm());
        }
    }
}

#[test]
fn secular_residual_scale_relative() {
    for &q0 in &[0.0, 1.0, 1.55, 2.0, 3.0] {
        for n in 1..=20 {
            let p = RitzProblem::new(n, q0).unwrap();
            let Ok(r) = ritz_values(&p) else { continue };
            let s = overlap_matrix(&p).unwrap();
            let h = hamiltonian_matrix(&p);
            let scale = h.norm() + r.values[n - 1].abs() * s.norm();
            for k in 0..n {
                let c = r.coefficients.column(k);
                let res = &h * c - r.values[k] * (&s * c);
                assert!(
                    res.norm() / (scale * c.norm()) < 1e-12,
                    "q0={q0} N={n} k={k}"
                );
            }
        }
    }
}
