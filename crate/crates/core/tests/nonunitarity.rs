//! Diamond norm of non-unitarity, channel discrimination and Proposition 7.

use proptest::prelude::*;
use qentropy::channels::zoo::{depolarizing, gadc};
use qentropy::channels::QuantumChannel;
use qentropy::linalg::matrix::ket;
use qentropy::linalg::random::{haar_unitary, random_unital_kraus, seeded_rng};
use qentropy::nonunitarity::{
    diamond_distance, oslash_depolarizing_analytic, oslash_norm, oslash_objective, proposition7_bound,
    proposition7_check, success_probability, OptimizerOptions, PureBipartiteState,
};

fn quick() -> OptimizerOptions {
    OptimizerOptions {
        starts: 8,
        ..OptimizerOptions::default()
    }
}

#[test]
fn objective_examples() {
    let u = QuantumChannel::unitary(haar_unitary(&mut seeded_rng(30), 2)).unwrap();
    let psi = PureBipartiteState::haar(&mut seeded_rng(31), 2);
    assert!(oslash_objective(&u, &psi).unwrap().abs() < 1e-12);

    let full = depolarizing(2, 1.0).unwrap();
    let bell = oslash_objective(&full, &PureBipartiteState::maximally_entangled(2)).unwrap();
    assert!((bell - 1.5).abs() < 1e-12);
    let product = PureBipartiteState::product(&ket(2, 0), &ket(2, 0)).unwrap();
    assert!((oslash_objective(&full, &product).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn norm_examples() {
    let opts = OptimizerOptions::default();
    let u = QuantumChannel::unitary(haar_unitary(&mut seeded_rng(32), 2)).unwrap();
    assert!(oslash_norm(&u, &opts).unwrap().value <= 1e-6);
    let qubit = oslash_norm(&depolarizing(2, 1.0).unwrap(), &opts).unwrap().value;
    assert!((qubit - 1.5).abs() <= 1e-3);
    let qutrit = oslash_norm(&depolarizing(3, 1.0).unwrap(), &opts).unwrap().value;
    assert!((qutrit - 16.0 / 9.0).abs() <= 1e-3);
    assert!(oslash_norm(&gadc(0.5, 5.0).unwrap(), &opts).is_err());
}

#[test]
fn analytic_examples() {
    assert_eq!(oslash_depolarizing_analytic(2, 0.0).unwrap(), 0.0);
    assert!((oslash_depolarizing_analytic(2, 4.0 / 3.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    assert!((oslash_depolarizing_analytic(2, 1.0).unwrap() - 1.5).abs() < 1e-15);
    assert!(oslash_depolarizing_analytic(2, 1.5).is_err());
}

#[test]
fn success_probability_examples() {
    assert_eq!(success_probability(0.0).unwrap(), 0.5);
    assert_eq!(success_probability(2.0).unwrap(), 1.0);
    assert_eq!(success_probability(1.5).unwrap(), 0.875);
    assert!(success_probability(2.5).is_err());
}

#[test]
fn diamond_distance_examples() {
    let opts = quick();
    let dep = depolarizing(2, 0.6).unwrap();
    assert!(diamond_distance(&dep, &dep, &opts).unwrap().abs() < 1e-12);
    for q in [0.3, 0.6, 1.0] {
        let d = diamond_distance(&QuantumChannel::identity(2), &depolarizing(2, q).unwrap(), &opts).unwrap();
        assert!((d - 1.5 * q).abs() <= 1e-3, "q = {q}: {d}");
    }
}

#[test]
fn proposition7_with_certified_delta() {
    // ||D_{2,q} - id||_diamond = 3q/2, certified by the maximally entangled input.
    let q = 0.2;
    let check = proposition7_check(&depolarizing(2, q).unwrap(), &QuantumChannel::identity(2), &quick(), Some(1.5 * q))
        .unwrap();
    assert_eq!(check.certified_holds, Some(true));
    assert!((proposition7_bound(0.5).unwrap() - 1.5).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oslash_norm_is_in_range(seed in any::<u64>(), k in 1usize..4) {
        let n = QuantumChannel::from_kraus(random_unital_kraus(&mut seeded_rng(seed), 2, k)).unwrap();
        let v = oslash_norm(&n, &quick()).unwrap().value;
        prop_assert!((0.0..=2.0 + 1e-9).contains(&v));
    }

    #[test]
    fn oslash_norm_is_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let n = QuantumChannel::from_kraus(random_unital_kraus(&mut rng, 2, 2)).unwrap();
        let u = QuantumChannel::unitary(haar_unitary(&mut rng, 2)).unwrap();
        let rotated = QuantumChannel::compose(&u, &n).unwrap();
        let (a, b) = (oslash_norm(&n, &quick()).unwrap().value, oslash_norm(&rotated, &quick()).unwrap().value);
        prop_assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }

    #[test]
    fn depolarizing_matches_closed_form(q in 0.0f64..4.0 / 3.0) {
        let v = oslash_norm(&depolarizing(2, q).unwrap(), &quick()).unwrap().value;
        prop_assert!((v - oslash_depolarizing_analytic(2, q).unwrap()).abs() <= 1e-3);
    }
}
