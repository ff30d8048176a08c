mod common;

use hardwall::oracle::{fd_eigenvalues, fd_eigenvalues_richardson, fd_eigenvector, GridSpec};
use hardwall::spectrum::{eigenvalue, WellConfig, DEFAULT_TOL};

fn cfg(q0: f64) -> WellConfig {
    WellConfig::new(q0).unwrap()
}

#[test]
fn half_line_levels() {
    let c = cfg(0.0);
    let fd = fd_eigenvalues(&c, 1, &GridSpec::default_for(&c)).unwrap();
    assert!((fd[0] - 1.5).abs() < 1e-4);
    assert!((fd[1] - 3.5).abs() < 1e-4);
    let r = fd_eigenvalues_richardson(&c, 2).unwrap();
    for (n, e) in r.iter().enumerate() {
        assert!((e - (2.0 * n as f64 + 1.5)).abs() < 1e-7, "n={n}: {e}");
    }
}

#[test]
fn far_wall_limit() {
    let r = fd_eigenvalues_richardson(&cfg(4.0), 0).unwrap();
    assert!((r[0] - 0.5).abs() < 1e-5);
}

#[test]
fn second_order_convergence() {
    for &q0 in &[0.0, 1.0, 2.0] {
        let c = cfg(q0);
        let g = GridSpec::new(&c, q0 + 12.0, 1000).unwrap();
        let coarse = fd_eigenvalues(&c, 3, &g).unwrap();
        let fine = fd_eigenvalues(&c, 3, &g.refined()).unwrap();
        for n in 0..=3 {
            let exact = eigenvalue(n, &c, DEFAULT_TOL).unwrap().epsilon;
            let order = ((coarse[n] - exact) / (fine[n] - exact)).abs().log2();
            assert!((1.9..=2.1).contains(&order), "q0={q0} n={n}: order {order}");
        }
    }
}

#[test]
fn eigenvector_nodes() {
    for &q0 in &[0.0, 1.55, 3.0] {
        let c = cfg(q0);
        let g = GridSpec::new(&c, q0 + 10.0, 1500).unwrap();
        for n in 0..=3 {
            let v = fd_eigenvector(&c, n, &g).unwrap();
            let peak = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            assert_eq!(common::sign_changes(&v, 1e-9 * peak), n, "q0={q0} n={n}");
        }
    }
}
