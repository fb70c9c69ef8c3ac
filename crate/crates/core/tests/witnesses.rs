//! Entropy-change bounds, Markovianity witnesses and decoherence measures.

use std::f64::consts::LN_2;

use proptest::prelude::*;
use qentropy::channels::zoo::{amplifier_generator, dephasing_generator, depolarizing, thermal_state, DEFAULT_TAIL_BOUND};
use qentropy::channels::{LindbladGenerator, QuantumChannel, TimeFunction};
use qentropy::dynamics::{entropy_rate, propagate, uniform_grid, PropagateOptions};
use qentropy::linalg::matrix::{basis_projector, bell_projector, diag, CMatrix};
use qentropy::linalg::random::{
    ginibre, haar_unitary, random_full_rank_state, random_hermitian, random_kraus, random_mixed_state,
    random_pure_state, random_unital_kraus, seeded_rng,
};
use qentropy::linalg::{DensityMatrix, Subsystem};
use qentropy::witnesses::markov::{test_a, test_b};
use qentropy::witnesses::{
    blp_measure, entropy_change, entropy_change_lower_bound, entropy_change_upper_bound,
    entropy_change_upper_bound_holder, environment_simulation_bound, measure_channel, measure_generator,
    nonunitality_witness, pinsker_gap, semigroup_sandwich, theorem2_bound, witness_f_channel,
    witness_scan, ChannelFamily, EntropyChangeChain, GadcFamily, GeneratorFamily, PairSampler, StateSampler,
    WitnessOptions,
};

fn binary_entropy(p: f64) -> f64 {
    -p * p.ln() - (1.0 - p) * (1.0 - p).ln()
}

/// Generator of the GADC semigroup at fixed p: p D[sigma_-] + (1 - p) D[sigma_+].
fn gadc_generator(p: f64) -> LindbladGenerator {
    let lower = CMatrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { 1.0.into() } else { 0.0.into() });
    LindbladGenerator::new(2)
        .with_jump(TimeFunction::constant(p), lower.clone())
        .unwrap()
        .with_jump(TimeFunction::constant(1.0 - p), lower.transpose())
        .unwrap()
}

#[test]
fn entropy_change_examples() {
    let rho = DensityMatrix::new(random_mixed_state(&mut seeded_rng(20), 2)).unwrap();
    let u = QuantumChannel::unitary(haar_unitary(&mut seeded_rng(21), 2)).unwrap();
    assert!(entropy_change(&u, &rho).unwrap().abs() < 1e-12);
    assert!(entropy_change_lower_bound(&u, &rho).unwrap().finite().unwrap().abs() < 1e-12);

    let bell = DensityMatrix::new(bell_projector(2)).unwrap();
    let trace_a = QuantumChannel::partial_trace((2, 2), Subsystem::B);
    assert!((entropy_change(&trace_a, &bell).unwrap() - LN_2).abs() < 1e-12);
    assert!((entropy_change_lower_bound(&trace_a, &bell).unwrap().finite().unwrap() - LN_2).abs() < 1e-12);

    let zero = DensityMatrix::new(basis_projector(2, 0)).unwrap();
    for q in [0.1, 0.5, 1.0] {
        let ds = entropy_change(&depolarizing(2, q).unwrap(), &zero).unwrap();
        assert!((ds - binary_entropy(q / 2.0)).abs() < 1e-12);
    }
}

#[test]
fn upper_bound_examples() {
    let rho = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
    let u = QuantumChannel::unitary(haar_unitary(&mut seeded_rng(22), 2)).unwrap();
    assert!(entropy_change_upper_bound(&u, &rho).unwrap().abs() < 1e-12);
    assert!(entropy_change_upper_bound_holder(&u, &rho).unwrap().abs() < 1e-12);
    let dep = depolarizing(2, 0.5).unwrap();
    let ds = entropy_change(&dep, &rho).unwrap();
    assert!(entropy_change_upper_bound(&dep, &rho).unwrap() >= ds);
    assert!(entropy_change_upper_bound_holder(&dep, &rho).unwrap() >= ds);
    assert!(entropy_change_upper_bound(&gadc_channel(), &rho).is_err());
}

fn gadc_channel() -> QuantumChannel {
    qentropy::channels::zoo::gadc(0.4, 5.0).unwrap()
}

#[test]
fn theorem2_examples() {
    let rho = DensityMatrix::new(random_full_rank_state(&mut seeded_rng(23), 2)).unwrap();
    let dephasing = dephasing_generator(TimeFunction::constant(1.0));
    assert!(theorem2_bound(&dephasing, 0.0, &rho).unwrap().abs() < 1e-15);
    assert!(nonunitality_witness(&dephasing, 0.0, &rho).unwrap().abs() < 1e-15);

    let thermal = thermal_state(0.5, 40, DEFAULT_TAIL_BOUND).unwrap();
    let amp = amplifier_generator(0.5, 40).unwrap();
    assert!((theorem2_bound(&amp, 0.0, &thermal).unwrap() - 1.0).abs() < 1e-8);

    assert!(nonunitality_witness(&gadc_generator(0.5), 0.0, &rho).unwrap().abs() < 1e-15);
    assert!(nonunitality_witness(&gadc_generator(0.9), 0.0, &rho).unwrap().abs() > 1e-3);
}

#[test]
fn unital_family_has_f_equal_to_rate() {
    let family = GeneratorFamily::new(dephasing_generator(TimeFunction::constant(0.8)));
    let rho0 = DensityMatrix::new(random_full_rank_state(&mut seeded_rng(24), 2)).unwrap();
    let traj = family.trajectory(&rho0, &uniform_grid(0.0, 1.0, 5)).unwrap();
    for i in 1..traj.len() {
        let f = witness_f_channel(&family, traj.grid()[i], &traj.states()[i], &traj.derivatives()[i], &WitnessOptions::default())
            .unwrap();
        assert!(f.eps_derivative.abs() < 1e-7, "{}", f.eps_derivative);
        assert!((f.f - f.entropy_rate).abs() < 1e-7);
    }
}

#[test]
fn markovian_dephasing_passes_no_test() {
    let family = GeneratorFamily::new(dephasing_generator(TimeFunction::constant(1.0)));
    let rho0 = DensityMatrix::new(random_full_rank_state(&mut seeded_rng(25), 2)).unwrap();
    let traj = family.trajectory(&rho0, &uniform_grid(0.0, 2.0, 11)).unwrap();
    for r in witness_scan(&family, &traj, &WitnessOptions::default()).unwrap() {
        assert!(!r.flags.test_a_passed && !r.flags.test_b_passed && r.flags.test_c_passed != Some(true));
    }
}

#[test]
fn gadc_window_passes_test_a() {
    let family = GadcFamily { omega: 5.0 };
    let opts = WitnessOptions::default();
    let (rho, rho_dot) = family.point(&DensityMatrix::maximally_mixed(2), 0.5).unwrap();
    let f = witness_f_channel(&family, 0.5, &rho, &rho_dot, &opts).unwrap();
    assert!(test_a(f.f, opts.eps_w), "f = {}", f.f);
}

#[test]
fn negative_dephasing_rate_passes_test_b() {
    let g = dephasing_generator(TimeFunction::Sinusoid {
        offset: 0.0,
        amplitude: 1.0,
        omega: 1.0,
        phase: 0.0,
    });
    let rho0 = DensityMatrix::new(diag(&[0.5, 0.5]) + qentropy::linalg::matrix::pauli_x().scale(0.3)).unwrap();
    let traj = propagate(&g, &rho0, &uniform_grid(0.0, 6.0, 61), &PropagateOptions::default()).unwrap();
    let mut seen = false;
    for (i, &t) in traj.grid().iter().enumerate() {
        let rate = entropy_rate(&traj.states()[i], &traj.derivatives()[i]).unwrap();
        let bound = theorem2_bound(&g, t, &traj.states()[i]).unwrap();
        assert!(bound.abs() < 1e-15);
        assert_eq!(test_b(rate, bound, 1e-7), rate < -1e-7);
        seen |= t > 3.3 && t < 6.0 && test_b(rate, bound, 1e-7);
    }
    assert!(seen);
}

#[test]
fn measures_of_markovian_dephasing_vanish() {
    let family = GeneratorFamily::new(dephasing_generator(TimeFunction::constant(1.0)));
    let grid = uniform_grid(0.0, 2.0, 41);
    let states = StateSampler::random(2, 4, 4, 8, 1).unwrap();
    let opts = WitnessOptions::default();
    assert_eq!(measure_generator(&family, &states, &grid, &opts).unwrap().value, 0.0);
    assert_eq!(measure_channel(&family, &states, &grid, &opts).unwrap().value, 0.0);
    let pairs = PairSampler::random(2, 4, 4, 1).unwrap();
    assert!(blp_measure(&family, &pairs, &grid, opts.eps_w).unwrap().value <= 1e-6);
}

#[test]
fn gadc_channel_measure_is_positive_from_maximally_mixed() {
    let states = StateSampler::from_states(vec![DensityMatrix::maximally_mixed(2)]).unwrap();
    let grid = uniform_grid(0.0, 3.0, 601);
    let m = measure_channel(&GadcFamily { omega: 5.0 }, &states, &grid, &WitnessOptions::default()).unwrap();
    assert!(m.value > 0.0);
}

#[test]
fn semigroup_sandwich_examples() {
    let g = qentropy::channels::zoo::depolarizing_generator(2, 1.0);
    let rho0 = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
    let s0 = semigroup_sandwich(&g, &rho0, 0.0).unwrap();
    assert!((s0.lower - s0.entropy).abs() < 1e-12 && (s0.upper - s0.entropy).abs() < 1e-12);
    for t in [0.1, 0.5, 1.0, 2.0] {
        assert!(semigroup_sandwich(&g, &rho0, t).unwrap().holds(1e-8));
    }
    assert!(semigroup_sandwich(&amplifier_generator(0.1, 4).unwrap(), &DensityMatrix::maximally_mixed(4), 0.5).is_err());
}

#[test]
fn pinsker_examples() {
    let rho = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
    let u = QuantumChannel::unitary(haar_unitary(&mut seeded_rng(26), 2)).unwrap();
    let gap = pinsker_gap(&u, &rho).unwrap();
    assert!(gap.relative_entropy.abs() < 1e-12 && gap.half_trace_sq < 1e-24 && gap.reverse_bound.abs() < 1e-12);
    let gap = pinsker_gap(&depolarizing(2, 0.5).unwrap(), &rho).unwrap();
    assert!(gap.pinsker_holds(1e-10) && gap.reverse_holds(1e-10));
}

#[test]
fn environment_simulation_examples() {
    let swap = QuantumChannel::unitary(CMatrix::from_fn(4, 4, |i, j| {
        if (i % 2) * 2 + i / 2 == j {
            1.0.into()
        } else {
            0.0.into()
        }
    }))
    .unwrap();
    let pure_a = DensityMatrix::new(random_pure_state(&mut seeded_rng(27), 2)).unwrap();
    let pure_c = DensityMatrix::new(basis_projector(2, 0)).unwrap();
    let b = environment_simulation_bound(&swap, &pure_c, &pure_a).unwrap();
    assert!(b.delta_s.abs() < 1e-10 && b.entropy_theta.abs() < 1e-12 && b.is_tight(1e-10));

    let rho_a = DensityMatrix::new(random_mixed_state(&mut seeded_rng(28), 2)).unwrap();
    let mixed_c = DensityMatrix::maximally_mixed(2);
    let u = QuantumChannel::unitary(haar_unitary(&mut seeded_rng(29), 4)).unwrap();
    let b = environment_simulation_bound(&u, &mixed_c, &rho_a).unwrap();
    assert!((b.delta_s - LN_2).abs() < 1e-10 && b.is_tight(1e-10));

    let noisy = depolarizing(4, 0.3).unwrap();
    let b = environment_simulation_bound(&noisy, &mixed_c, &rho_a).unwrap();
    assert!(b.holds(1e-10) && b.delta_s >= LN_2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lemma4_lower_bound(seed in any::<u64>(), d in 2usize..4, k in 1usize..4) {
        let mut rng = seeded_rng(seed);
        let n = QuantumChannel::from_kraus(random_kraus(&mut rng, d, d, k)).unwrap();
        let rho = DensityMatrix::new(random_mixed_state(&mut rng, d)).unwrap();
        let lower = entropy_change_lower_bound(&n, &rho).unwrap();
        prop_assert!(lower.le(entropy_change(&n, &rho).unwrap(), 1e-9));
    }

    #[test]
    fn unital_chain(seed in any::<u64>(), d in 2usize..4, k in 1usize..4) {
        let mut rng = seeded_rng(seed);
        let n = QuantumChannel::from_kraus(random_unital_kraus(&mut rng, d, k)).unwrap();
        let rho = DensityMatrix::new(random_full_rank_state(&mut rng, d)).unwrap();
        prop_assert!(EntropyChangeChain::evaluate(&n, &rho).unwrap().holds(1e-9));
        let gap = pinsker_gap(&n, &rho).unwrap();
        prop_assert!(gap.pinsker_holds(1e-10) && gap.reverse_holds(1e-10));
    }

    #[test]
    fn theorem2_holds_for_markovian_generators(seed in any::<u64>(), d in 2usize..4, t in 0.0f64..1.0) {
        let mut rng = seeded_rng(seed);
        let g = LindbladGenerator::new(d)
            .with_hamiltonian_term(TimeFunction::constant(1.0), random_hermitian(&mut rng, d))
            .unwrap()
            .with_jump(TimeFunction::constant(0.6), ginibre(&mut rng, d, d).scale(0.5))
            .unwrap();
        let rho = DensityMatrix::new(random_full_rank_state(&mut rng, d)).unwrap();
        let rho_dot = g.apply(t, rho.matrix()).unwrap();
        let rate = entropy_rate(&rho, &rho_dot).unwrap();
        prop_assert!(rate >= theorem2_bound(&g, t, &rho).unwrap() - 1e-9);
    }
}
