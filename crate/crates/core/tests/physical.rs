use hardwall::physical::{
    dimensionless, zero_point_energy, AdsorptionSystem, ATOMIC_MASS_UNIT, HBAR,
};

fn lab(m: f64, k: f64, d: f64) -> AdsorptionSystem {
    AdsorptionSystem::from_lab_units(m, k, d, "sweep").unwrap()
}

#[test]
fn hydrogen_preset() {
    let sys = AdsorptionSystem::preset("H-Pd100").unwrap();
    let form = dimensionless(&sys);
    assert!((form.q0 - 1.55).abs() < 0.02, "q0 = {}", form.q0);
    let zpe = zero_point_energy(&sys).unwrap();
    assert!((zpe.epsilon0 - 0.57).abs() < 0.005, "{}", zpe.epsilon0);
    assert!(!zpe.from_oracle);
    assert!(zpe.mev > 0.0);
}

#[test]
fn deuterium_preset() {
    let sys = AdsorptionSystem::preset("D-Pd100").unwrap();
    let form = dimensionless(&sys);
    assert!((form.q0 - 2.0).abs() < 0.1, "q0 = {}", form.q0);
    let zpe = zero_point_energy(&sys).unwrap();
    assert!((zpe.epsilon0 - 0.52).abs() < 0.01, "{}", zpe.epsilon0);
}

#[test]
fn isotope_effect() {
    let h = zero_point_energy(&AdsorptionSystem::preset("H-Pd100").unwrap()).unwrap();
    let d = zero_point_energy(&AdsorptionSystem::preset("D-Pd100").unwrap()).unwrap();
    assert!(d.epsilon0 < h.epsilon0);
}

#[test]
fn q0_monotone_in_each_parameter() {
    let grid: Vec<f64> = (1..=20).map(|i| i as f64 * 0.1).collect();
    let check = |f: &dyn Fn(f64) -> AdsorptionSystem| {
        let q: Vec<f64> = grid.iter().map(|&x| dimensionless(&f(x)).q0).collect();
        assert!(q.windows(2).all(|w| w[1] > w[0]));
    };
    check(&|d| lab(1.0, 15.0, d));
    check(&|m| lab(m, 15.0, 0.4));
    check(&|k| lab(1.0, 10.0 * k, 0.4));
}

#[test]
fn doubling_distance_doubles_q0() {
    let a = dimensionless(&lab(1.00784, 15.0, 0.4)).q0;
    let b = dimensionless(&lab(1.00784, 15.0, 0.8)).q0;
    assert_eq!(b, 2.0 * a);
}

#[test]
fn distance_round_trip() {
    for &d in &[0.05, 0.4, 1.0, 3.3] {
        let sys = lab(2.0, 7.5, d);
        let form = dimensionless(&sys);
        let back = form.q0 * form.length_unit;
        assert!((back - sys.wall_distance()).abs() <= 1e-12 * sys.wall_distance());
    }
}

#[test]
fn independent_length_scale() {
    // L² = ħ / (m ω)
    let sys = lab(1.00784, 15.0, 0.4);
    let m = 1.00784 * ATOMIC_MASS_UNIT;
    let omega = (15.0 / m).sqrt();
    let l = (HBAR / (m * omega)).sqrt();
    let form = dimensionless(&sys);
    assert!((form.length_unit - l).abs() < 1e-13 * l);
    assert!((form.q0 - 0.4e-10 / l).abs() < 1e-12);
}

#[test]
fn wide_well_uses_oracle() {
    let sys = lab(1.00784, 15.0, 1.5);
    assert!(dimensionless(&sys).q0 > 4.0);
    let zpe = zero_point_energy(&sys).unwrap();
    assert!(zpe.from_oracle);
    assert!((zpe.epsilon0 - 0.5).abs() < 1e-6);
}

#[test]
fn serializes_preset() {
    let sys = AdsorptionSystem::preset("D-Pd100").unwrap();
    let json = serde_json::to_value(&sys).unwrap();
    assert_eq!(json["label"], "D-Pd100");
    assert_eq!(json["force_constant"], 15.0);
}
