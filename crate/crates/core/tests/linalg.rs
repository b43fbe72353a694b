mod common;

use common::*;
use proptest::prelude::*;
use qcapulse::linalg::{embed_pauli, expm_skew_hermitian, kron};
use qcapulse::{phase_distance, spectral_norm, ComplexMatrix, PauliAxis};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn entries(dim: usize, lo: i32, hi: i32) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((lo..hi, lo..hi), dim * dim).prop_map(move |v| {
        ComplexMatrix::new(dim, v.into_iter().map(|(a, b)| c(a as f64, b as f64)).collect()).unwrap()
    })
}

fn real_entries(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim)
        .prop_map(move |v| ComplexMatrix::new(dim, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
}

#[test]
fn kron_of_x_with_x_matches_direct_enumeration() {
    let direct = {
        let mut m = vec![vec![c(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[3 - i] = c(1.0, 0.0);
        }
        m
    };
    let x = PauliAxis::X.matrix();
    let k = kron(&x, &x).unwrap();
    assert_eq!(from_matrix(&k), direct);
    let embedded = embed_pauli(PauliAxis::X, 1, 2).unwrap().matmul(&embed_pauli(PauliAxis::X, 2, 2).unwrap());
    assert_eq!(from_matrix(&embedded), direct);
}

#[test]
fn kron_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(3);
    let a = random_hermitian(&mut rng, 2, 1.0);
    let b = random_hermitian(&mut rng, 4, 1.0);
    let ours = kron(&to_matrix(&a), &to_matrix(&b)).unwrap();
    assert_eq!(from_matrix(&ours), common::kron(&a, &b));
}

#[test]
fn kron_respects_dimension_limit() {
    let big = ComplexMatrix::identity(1 << 8);
    assert!(kron(&big, &big).is_err());
    assert!(qcapulse::linalg::kron_with_limit(&big, &ComplexMatrix::identity(2), 256).is_err());
}

#[test]
fn zz_parity_diagonal_on_three_cells() {
    let m = embed_pauli(PauliAxis::Z, 2, 3).unwrap().matmul(&embed_pauli(PauliAxis::Z, 3, 3).unwrap());
    let expected: Vec<_> = (0..8usize)
        .map(|b| {
            let parity = ((b >> 1) & 1) ^ (b & 1);
            c(if parity == 0 { 1.0 } else { -1.0 }, 0.0)
        })
        .collect();
    assert_eq!(m, ComplexMatrix::from_diagonal(&expected));
    assert_eq!(
        expected.iter().map(|z| z.re).collect::<Vec<_>>(),
        vec![1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0]
    );
}

#[test]
fn embed_matches_oracle_for_every_site() {
    for n in 1..=4 {
        for site in 1..=n {
            for (axis, s) in [(PauliAxis::X, sx()), (PauliAxis::Y, sy()), (PauliAxis::Z, sz())] {
                let ours = embed_pauli(axis, site, n).unwrap();
                assert_eq!(from_matrix(&ours), on_site(&s, site, n), "{axis} {site}/{n}");
            }
        }
        assert!(embed_pauli(PauliAxis::X, 0, n).is_err());
        assert!(embed_pauli(PauliAxis::X, n + 1, n).is_err());
    }
}

#[test]
fn expm_matches_taylor_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    let h = random_hermitian(&mut rng, 4, 1.0);
    let ours = expm_skew_hermitian(&to_matrix(&h), 0.37).unwrap();
    assert!(max_diff(&from_matrix(ours.matrix()), &taylor_expm(&h, 0.37)) < 1e-12);
}

#[test]
fn spectral_norm_matches_power_iteration() {
    let mut rng = StdRng::seed_from_u64(5);
    for dim in [2, 3, 8] {
        let h = random_hermitian(&mut rng, dim, 1.0);
        let u = taylor_expm(&h, 0.8);
        let d = add(&u, &scale(&h, c(0.0, 1.0)));
        let ours = spectral_norm(&to_matrix(&d));
        assert!((ours - largest_singular_value(&d)).abs() < 1e-9, "{dim} {ours} {}", largest_singular_value(&d));
    }
    assert_eq!(spectral_norm(&ComplexMatrix::identity(4)), 1.0);
    assert_eq!(spectral_norm(&PauliAxis::Z.matrix().scale(c(2.0, 0.0))), 2.0);
}

#[test]
fn phase_distance_matches_aligned_oracle() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..10 {
        let u = random_unitary(&mut rng, 4);
        let v = random_unitary(&mut rng, 4);
        let ours = phase_distance(&u, &v).unwrap();
        let oracle = phase_aligned_distance(&from_matrix(u.matrix()), &from_matrix(v.matrix()));
        assert!(ours <= oracle + 1e-9);
        assert!(ours >= 0.0);
    }
}

#[test]
fn phase_distance_identity_vs_x_is_root_two() {
    // ||I - e^{i phi} X|| = max |1 -+ e^{i phi}|, minimized at phi = +-pi/2.
    let i2 = qcapulse::Unitary::identity(2);
    let x = qcapulse::Unitary::new(PauliAxis::X.matrix()).unwrap();
    let d = phase_distance(&i2, &x).unwrap();
    assert!((d - 2f64.sqrt()).abs() < 1e-10, "{d}");
    let mut best = f64::INFINITY;
    for k in 0..100_000 {
        let phi = std::f64::consts::TAU * k as f64 / 100_000.0;
        let e = c(phi.cos(), phi.sin());
        best = best.min((c(1.0, 0.0) - e).norm().max((c(1.0, 0.0) + e).norm()));
    }
    assert!((d - best).abs() < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative_for_integer_entries(a in entries(2, -3, 4), b in entries(2, -3, 4), d in entries(3, -3, 4)) {
        let left = kron(&a, &kron(&b, &d).unwrap()).unwrap();
        let right = kron(&kron(&a, &b).unwrap(), &d).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kron_is_associative_for_random_entries(a in real_entries(2), b in real_entries(3), d in real_entries(2)) {
        let left = kron(&a, &kron(&b, &d).unwrap()).unwrap();
        let right = kron(&kron(&a, &b).unwrap(), &d).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn paulis_on_different_sites_commute(n in 2usize..=4, i in 1usize..=4, j in 1usize..=4, a in 0usize..3, b in 0usize..3) {
        prop_assume!(i <= n && j <= n && i != j);
        let axes = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
        let p = embed_pauli(axes[a], i, n).unwrap();
        let q = embed_pauli(axes[b], j, n).unwrap();
        let comm = &p.matmul(&q) - &q.matmul(&p);
        prop_assert!(comm.max_abs() < 1e-13);
    }

    #[test]
    fn expm_group_law(seed in any::<u64>(), s in -10.0f64..10.0, t in -10.0f64..10.0, dim in 2usize..=6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = to_matrix(&random_hermitian(&mut rng, dim, 1.0));
        let us = expm_skew_hermitian(&h, s).unwrap();
        let ut = expm_skew_hermitian(&h, t).unwrap();
        let ust = expm_skew_hermitian(&h, s + t).unwrap();
        prop_assert!(us.compose(&ut).unwrap().matrix().max_abs_diff(ust.matrix()) < 1e-11);
    }

    #[test]
    fn exponentials_are_unitary(seed in any::<u64>(), s in -20.0f64..20.0, dim in 1usize..=8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = to_matrix(&random_hermitian(&mut rng, dim, 3.0));
        let u = expm_skew_hermitian(&h, s).unwrap();
        let g = &u.adjoint().matrix().matmul(u.matrix()) - &ComplexMatrix::identity(dim);
        prop_assert!(spectral_norm(&g) < 1e-10);
    }

    #[test]
    fn phase_distance_is_a_pseudometric(seed in any::<u64>(), phi in 0.0f64..6.3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (u, v, w) = (random_unitary(&mut rng, 4), random_unitary(&mut rng, 4), random_unitary(&mut rng, 4));
        let uv = phase_distance(&u, &v).unwrap();
        prop_assert!((uv - phase_distance(&v, &u).unwrap()).abs() < 1e-10);
        prop_assert!(uv <= phase_distance(&u, &w).unwrap() + phase_distance(&w, &v).unwrap() + 1e-10);
        prop_assert!(phase_distance(&u, &u.with_phase(phi)).unwrap() < 1e-12);
    }
}
