mod common;

use podles_core::bundles::{build_e, build_p1_matrix, build_q};
use podles_core::index::{
    fredholm_index_direct, pair_eps, pair_eps_routes, pair_rho, Pairing, PairingRecord,
};
use podles_core::podles::MatPodles;
use podles_core::{Error, Params};

#[test]
fn pairings_are_additive_over_direct_sums() {
    let p = Params::from_fracs((1, 2), (2, 1)).unwrap();
    for n in -3..=3 {
        for m in -3..=3 {
            let (en, em) = (build_e(n, &p), build_e(m, &p));
            let sum = en.mat.direct_sum(&em.mat).unwrap();
            assert_eq!(pair_rho(&sum, 1e-6).unwrap().value, (n + m) as f64);
            assert_eq!(pair_eps(&sum).unwrap().value, 2.0);
            let qsum = build_q(n, &p)
                .unwrap()
                .mat
                .direct_sum(&build_q(m, &p).unwrap().mat)
                .unwrap();
            assert!((pair_rho(&qsum, 1e-9).unwrap().value - (n + m) as f64).abs() < 1e-6);
        }
    }
}

#[test]
fn representatives_of_one_class_agree() {
    for p in common::grid() {
        let e = build_e(1, &p);
        let q = build_q(1, &p).unwrap();
        let p1 = build_p1_matrix(1, &p).unwrap();
        let rho: Vec<_> = [&e.mat, &q.mat, &p1.mat]
            .iter()
            .map(|m| pair_rho(m, 1e-9).unwrap())
            .collect();
        let eps: Vec<_> = [&e.mat, &q.mat, &p1.mat]
            .iter()
            .map(|m| pair_eps(m).unwrap().value)
            .collect();
        for r in &rho[1..] {
            assert!((r.value - rho[0].value).abs() <= r.tail_bound + rho[0].tail_bound + 1e-12);
        }
        for v in &eps[1..] {
            assert!((v - eps[0]).abs() < 1e-12);
        }
        let pm = build_p1_matrix(-1, &p).unwrap();
        assert!((pair_rho(&pm.mat, 1e-9).unwrap().value + 1.0).abs() < 1e-8);
    }
}

#[test]
fn complementary_projections_pair_to_trivial_rank_two() {
    for p in common::grid() {
        for n in 1..=4 {
            let (a, b) = (build_q(n, &p).unwrap(), build_q(-n, &p).unwrap());
            let rho = pair_rho(&a.mat, 1e-9).unwrap().value + pair_rho(&b.mat, 1e-9).unwrap().value;
            let eps = pair_eps(&a.mat).unwrap().value + pair_eps(&b.mat).unwrap().value;
            assert!(rho.abs() < 1e-8, "rho sum {rho}");
            assert!((eps - 2.0).abs() < 1e-12);
        }
    }
}

#[test]
fn both_eps_routes_agree() {
    let p = Params::from_fracs((4, 5), (1, 2)).unwrap();
    for n in -4..=4 {
        let (m, c) = pair_eps_routes(&build_q(n, &p).unwrap().mat).unwrap();
        assert!((m - c).abs() < 1e-12);
    }
}

#[test]
fn record_serializes_with_expected_keys() {
    let p = Params::from_fracs((1, 2), (1, 1)).unwrap();
    let e = build_e(2, &p);
    let rec = PairingRecord::new(&e, Pairing::Rho, &pair_rho(&e.mat, 1e-6).unwrap());
    let v = serde_json::to_value(&rec).unwrap();
    assert_eq!(v["N"], 2);
    assert_eq!(v["form"], "E");
    assert_eq!(v["pair"], "rho");
    assert_eq!(v["rounded"], 2);
    assert_eq!(v["certified"], true);
    assert_eq!(v["q"], "1/2");
}

#[test]
fn fredholm_count_matches_for_q_and_p1() {
    for p in common::grid() {
        for n in [-3, 1, 4] {
            let q = build_q(n, &p).unwrap();
            assert_eq!(
                fredholm_index_direct(&q.mat, 128).unwrap(),
                n,
                "Q_{n} at q={} s={}",
                p.q(),
                p.s()
            );
        }
        assert_eq!(
            fredholm_index_direct(&build_p1_matrix(1, &p).unwrap().mat, 128).unwrap(),
            1
        );
        assert_eq!(
            fredholm_index_direct(&build_p1_matrix(-1, &p).unwrap().mat, 128).unwrap(),
            -1
        );
    }
}

#[test]
fn non_square_and_unsettled_inputs_are_rejected() {
    let p = Params::from_fracs((1, 2), (1, 1)).unwrap();
    let x = build_e(1, &p).mat.get(0, 0).clone();
    let column = MatPodles::from_rows(vec![vec![x.clone()], vec![x]]).unwrap();
    assert!(matches!(
        pair_rho(&column, 1e-6),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(matches!(
        pair_eps(&column),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(matches!(
        fredholm_index_direct(&column, 32),
        Err(Error::DimensionMismatch(_))
    ));
    let slow = build_q(1, &Params::from_fracs((99, 100), (1, 1)).unwrap()).unwrap();
    assert!(matches!(
        fredholm_index_direct(&slow.mat, 32),
        Err(Error::TruncationTooSmall { .. })
    ));
}
