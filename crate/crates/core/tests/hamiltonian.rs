mod common;

use common::*;
use proptest::prelude::*;
use qcapulse::hamiltonian::{
    build_hamiltonian, build_imperfect_pulse_hamiltonian, coupling_hamiltonian, ideal_pulse_generator,
};
use qcapulse::linalg::expm_skew_hermitian;
use qcapulse::{phase_distance, spectral_norm, ChainSpec, ControlParams, ImperfectionModel};
use std::f64::consts::PI;

#[test]
fn two_cells_match_five_enumerated_terms() {
    let chain = ChainSpec::uniform(2, 1.0).unwrap();
    let ctrl = ControlParams::new(vec![1.0, 2.0], vec![0.5, -0.5]).unwrap();
    let h = build_hamiltonian(&chain, &ctrl).unwrap();
    let i2 = eye(2);
    let terms = [
        scale(&common::kron(&sx(), &i2), c(-1.0, 0.0)),
        scale(&common::kron(&i2, &sx()), c(-2.0, 0.0)),
        scale(&common::kron(&sz(), &sz()), c(-1.0, 0.0)),
        scale(&common::kron(&sz(), &i2), c(0.5, 0.0)),
        scale(&common::kron(&i2, &sz()), c(-0.5, 0.0)),
    ];
    let expected = terms.iter().skip(1).fold(terms[0].clone(), |acc, t| add(&acc, t));
    assert!(max_diff(&from_matrix(&h), &expected) < 1e-14);
}

#[test]
fn two_cell_hand_written_matrix() {
    // gamma = (1, 2), P = (0.5, -0.5), E = E0 = 1, basis |00>, |01>, |10>, |11>
    let r = |x: f64| c(x, 0.0);
    let expected = vec![
        vec![r(-1.0), r(-2.0), r(-1.0), r(0.0)],
        vec![r(-2.0), r(2.0), r(0.0), r(-1.0)],
        vec![r(-1.0), r(0.0), r(0.0), r(-2.0)],
        vec![r(0.0), r(-1.0), r(-2.0), r(-1.0)],
    ];
    let chain = ChainSpec::uniform(2, 1.0).unwrap();
    let ctrl = ControlParams::new(vec![1.0, 2.0], vec![0.5, -0.5]).unwrap();
    let h = build_hamiltonian(&chain, &ctrl).unwrap();
    assert!(max_diff(&from_matrix(&h), &expected) < 1e-14);
}

#[test]
fn three_cell_idle_diagonal() {
    let chain = ChainSpec::uniform(3, 1.0).unwrap();
    let h = build_hamiltonian(&chain, &ControlParams::idle(3)).unwrap();
    for b in 0..8usize {
        let z = |k: usize| if (b >> (3 - k)) & 1 == 0 { 1.0 } else { -1.0 };
        assert_eq!(h[(b, b)], c(-(z(1) * z(2) + z(2) * z(3)), 0.0));
    }
    assert!(h.is_diagonal());
}

#[test]
fn imperfect_pulse_without_residual() {
    let chain = ChainSpec::uniform(2, 1.0).unwrap();
    let model = ImperfectionModel::new(10.0, 0.0, 2).unwrap();
    let h = build_imperfect_pulse_hamiltonian(&chain, &model).unwrap();
    let expected = add(
        &scale(&common::kron(&eye(2), &sx()), c(-10.0, 0.0)),
        &scale(&common::kron(&sz(), &sz()), c(-1.0, 0.0)),
    );
    assert!(max_diff(&from_matrix(&h), &expected) < 1e-14);
}

#[test]
fn imperfect_pulse_matches_term_assembly() {
    let chain = ChainSpec::uniform(3, 1.0).unwrap();
    let model = ImperfectionModel::new(10.0, 0.1, 1).unwrap();
    let h = build_imperfect_pulse_hamiltonian(&chain, &model).unwrap();
    let expected = line_hamiltonian(&[1.0, 1.0], 1.0, &[], &[], &[10.0, 0.1, 0.1]);
    assert!(max_diff(&from_matrix(&h), &expected) < 1e-14);
}

#[test]
fn imperfect_pulse_site_energies_on_a_non_uniform_line() {
    // Cell j uses the coupling on bond min(j, n - 1).
    let chain = ChainSpec::new(vec![0.5, 2.0, 3.0], 1.0).unwrap();
    let model = ImperfectionModel::new(8.0, 0.2, 4).unwrap();
    let h = build_imperfect_pulse_hamiltonian(&chain, &model).unwrap();
    let expected = line_hamiltonian(&[0.5, 2.0, 3.0], 1.0, &[], &[], &[0.1, 0.4, 0.6, 24.0]);
    assert!(max_diff(&from_matrix(&h), &expected) < 1e-14);
}

#[test]
fn ten_cell_sweep_inputs_are_hermitian() {
    let chain = ChainSpec::uniform(10, 1.0).unwrap();
    for gamma in [10.0, 50.0] {
        let h = build_imperfect_pulse_hamiltonian(&chain, &ImperfectionModel::new(gamma, 0.1, 1).unwrap()).unwrap();
        assert_eq!(h.dim(), 1024);
        assert_eq!(h.hermitian_deviation(), 0.0);
    }
}

#[test]
fn ideal_pulse_generator_gives_pi_rotation() {
    let chain = ChainSpec::uniform(2, 1.0).unwrap();
    let h = ideal_pulse_generator(&chain, 2, 1.0).unwrap();
    assert!(max_diff(&from_matrix(&h), &scale(&common::kron(&eye(2), &sx()), c(-1.0, 0.0))) < 1e-15);
    let dt = PI / 2.0;
    let u = expm_skew_hermitian(&h, dt).unwrap();
    let target = to_unitary(&scale(&common::kron(&eye(2), &sx()), c(0.0, 1.0)));
    assert!(u.matrix().max_abs_diff(target.matrix()) < 1e-14);
    assert!(phase_distance(&u, &target).unwrap() < 1e-14);

    let three = ChainSpec::uniform(3, 1.0).unwrap();
    let g = ideal_pulse_generator(&three, 2, 3.0).unwrap();
    assert!(max_diff(&from_matrix(&g), &scale(&on_site(&sx(), 2, 3), c(-3.0, 0.0))) < 1e-15);
}

#[test]
fn coupling_part_norm_is_sum_of_couplings() {
    for n in 2..=8 {
        let chain = ChainSpec::uniform(n, 1.5).unwrap();
        let norm = spectral_norm(&coupling_hamiltonian(&chain));
        assert!((norm - (n - 1) as f64 * 1.5).abs() < 1e-12, "{n}");
    }
}

#[test]
fn rejects_invalid_inputs() {
    assert!(ChainSpec::new(vec![], 1.0).is_err());
    assert!(ChainSpec::new(vec![1.0; 12], 1.0).is_err());
    assert!(ChainSpec::new(vec![-1.0], 1.0).is_err());
    assert!(ChainSpec::new(vec![1.0], 0.0).is_err());
    assert!(ChainSpec::new(vec![f64::NAN], 1.0).is_err());
    assert!(ControlParams::new(vec![0.0], vec![0.0, 0.0]).is_err());
    assert!(ControlParams::new(vec![-1.0, 0.0], vec![0.0, 0.0]).is_err());
    assert!(ControlParams::new(vec![0.0, 0.0], vec![1.5, 0.0]).is_err());
    assert!(ImperfectionModel::new(0.0, 0.0, 1).is_err());
    assert!(ImperfectionModel::new(1.0, 1.0, 1).is_err());
    assert!(ImperfectionModel::new(1.0, 0.0, 0).is_err());
    let chain = ChainSpec::uniform(2, 1.0).unwrap();
    assert!(build_hamiltonian(&chain, &ControlParams::idle(3)).is_err());
    let model = ImperfectionModel::new(2.0, 0.1, 3).unwrap();
    assert!(build_imperfect_pulse_hamiltonian(&chain, &model).is_err());
    assert!(ideal_pulse_generator(&chain, 3, 1.0).is_err());
}

fn controls(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        prop::collection::vec(0.0f64..5.0, n),
        prop::collection::vec(-0.5f64..0.5, n),
    )
}

fn dyadic_controls(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        prop::collection::vec((0u8..40).prop_map(|k| k as f64 / 8.0), n),
        prop::collection::vec((-8i8..=8).prop_map(|k| k as f64 / 16.0), n),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hamiltonian_matches_term_assembly(
        (couplings, (gammas, biases)) in (2usize..=4).prop_flat_map(|n| (prop::collection::vec(0.0f64..3.0, n - 1), controls(n))),
        e0 in 0.1f64..3.0,
    ) {
        let chain = ChainSpec::new(couplings.clone(), e0).unwrap();
        let ctrl = ControlParams::new(gammas.clone(), biases.clone()).unwrap();
        let h = build_hamiltonian(&chain, &ctrl).unwrap();
        prop_assert!(h.hermitian_deviation() < 1e-14);
        let expected = line_hamiltonian(&couplings, e0, &gammas, &biases, &[]);
        prop_assert!(max_diff(&from_matrix(&h), &expected) < 1e-13);
    }

    #[test]
    fn controls_enter_linearly(
        (couplings, (gammas, biases)) in (2usize..=4).prop_flat_map(|n| (prop::collection::vec(0u8..12, n - 1), dyadic_controls(n))),
    ) {
        // Dyadic values keep every sum exact, so equality is bitwise.
        let couplings = couplings.into_iter().map(|k| k as f64 / 4.0).collect();
        let chain = ChainSpec::new(couplings, 1.0).unwrap();
        let zz = coupling_hamiltonian(&chain);
        let single = build_hamiltonian(&chain, &ControlParams::new(gammas.clone(), biases.clone()).unwrap()).unwrap();
        let doubled = ControlParams::new(
            gammas.iter().map(|g| 2.0 * g).collect(),
            biases.iter().map(|p| 2.0 * p).collect(),
        ).unwrap();
        let double = build_hamiltonian(&chain, &doubled).unwrap();
        let lhs = &double - &zz;
        let rhs = (&single - &zz).scale(c(2.0, 0.0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn uncoupled_perfect_pulse_is_scaled_generator(n in 2usize..=4, site in 1usize..=4, gamma in 1.0f64..60.0, gmax in 1.0f64..60.0, e in 0.2f64..3.0) {
        prop_assume!(site <= n);
        // Couplings zero: the x field uses the E_0 fallback scale, here E_0 = e.
        let chain = ChainSpec::new(vec![0.0; n - 1], e).unwrap();
        let model = ImperfectionModel::new(gamma, 0.0, site).unwrap();
        let h = build_imperfect_pulse_hamiltonian(&chain, &model).unwrap();
        let g = ideal_pulse_generator(&chain, site, gmax).unwrap().scale(c(gamma * e / gmax, 0.0));
        prop_assert!(h.max_abs_diff(&g) < 1e-14 * gamma * e);
    }
}
