//! Builtin channels, generators and states.

use super::channel::QuantumChannel;
use super::generator::{LindbladGenerator, TimeFunction};
use crate::error::{invalid, Result};
use crate::linalg::matrix::{cr, heisenberg_weyl, identity, pauli_z, CMatrix};
use crate::linalg::state::DensityMatrix;

/// Population above level `cutoff - 2` tolerated before truncated Fock-space
/// results are considered untrustworthy.
pub const DEFAULT_TAIL_BOUND: f64 = 1e-8;

/// Largest admissible depolarizing parameter, d^2/(d^2 - 1).
pub fn depolarizing_q_max(d: usize) -> f64 {
    let d2 = (d * d) as f64;
    d2 / (d2 - 1.0)
}

/// rho -> (1 - q) rho + q Tr{rho} 1/d, for q in [0, d^2/(d^2-1)].
///
/// Kraus operators are the Heisenberg-Weyl unitaries with weights
/// 1 - q + q/d^2 (identity) and q/d^2 (the rest).
pub fn depolarizing(d: usize, q: f64) -> Result<QuantumChannel> {
    if d < 2 {
        return Err(invalid("d", "dimension must be at least 2"));
    }
    let q_max = depolarizing_q_max(d);
    if !(0.0..=q_max + 1e-15).contains(&q) {
        return Err(invalid("q", format!("q = {q} outside [0, d^2/(d^2-1)] = [0, {q_max}]")));
    }
    let d2 = (d * d) as f64;
    let w0 = (1.0 - q + q / d2).max(0.0);
    let w = q / d2;
    let kraus = heisenberg_weyl(d)
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let weight = if i == 0 { w0 } else { w };
            (weight > 0.0).then(|| p.scale(weight.sqrt()))
        })
        .collect();
    QuantumChannel::from_kraus(kraus)
}

/// Generalized amplitude damping with explicit (p, eta).
pub fn gadc_with(p: f64, eta: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("p", format!("{p} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(invalid("eta", format!("{eta} outside [0, 1]")));
    }
    let sp = p.sqrt();
    let sq = (1.0 - p).sqrt();
    let se = eta.sqrt();
    let sl = (1.0 - eta).sqrt();
    let m = |a: f64, b: f64, c_: f64, d_: f64| CMatrix::from_row_slice(2, 2, &[cr(a), cr(b), cr(c_), cr(d_)]);
    QuantumChannel::from_kraus(vec![
        m(sp, 0.0, 0.0, sp * se),
        m(0.0, sp * sl, 0.0, 0.0),
        m(sq * se, 0.0, 0.0, sq),
        m(0.0, 0.0, sq * sl, 0.0),
    ])
}

/// GADC family member at time t: p_t = cos^2(omega t), eta_t = exp(-t).
pub fn gadc(t: f64, omega: f64) -> Result<QuantumChannel> {
    if !(t >= 0.0) {
        return Err(invalid("t", format!("time must be non-negative, got {t}")));
    }
    let p = (omega * t).cos().powi(2);
    gadc_with(p.clamp(0.0, 1.0), (-t).exp())
}

/// W_t = (2 p_t - 1)(1 - eta_t) = cos(2 omega t)(1 - e^{-t}).
pub fn gadc_w(t: f64, omega: f64) -> f64 {
    (2.0 * omega * t).cos() * (1.0 - (-t).exp())
}

/// dW_t/dt.
pub fn gadc_w_dot(t: f64, omega: f64) -> f64 {
    -2.0 * omega * (2.0 * omega * t).sin() * (1.0 - (-t).exp()) + (2.0 * omega * t).cos() * (-t).exp()
}

/// Pure dephasing: jump sigma_z with rate gamma(t)/2, no Hamiltonian, so
/// L_t(rho) = gamma(t)/2 (sigma_z rho sigma_z - rho).
pub fn dephasing_generator(gamma: TimeFunction) -> LindbladGenerator {
    LindbladGenerator::new(2)
        .with_jump(gamma.scaled(0.5), pauli_z())
        .expect("qubit shapes agree")
}

/// Depolarizing semigroup generator L(rho) = kappa (Tr{rho} 1/d - rho), built
/// from the non-identity Heisenberg-Weyl unitaries at rate kappa/d^2.
pub fn depolarizing_generator(d: usize, kappa: f64) -> LindbladGenerator {
    let rate = kappa / (d * d) as f64;
    heisenberg_weyl(d)
        .into_iter()
        .skip(1)
        .fold(LindbladGenerator::new(d), |g, p| {
            g.with_jump(TimeFunction::constant(rate), p).expect("shapes agree")
        })
}

/// Truncated annihilation operator, a|n> = sqrt(n)|n-1> for n < cutoff.
pub fn annihilation(cutoff: usize) -> CMatrix {
    let mut a = CMatrix::zeros(cutoff, cutoff);
    for n in 1..cutoff {
        a[(n - 1, n)] = cr((n as f64).sqrt());
    }
    a
}

pub fn number_operator(cutoff: usize) -> CMatrix {
    crate::linalg::matrix::diag(&(0..cutoff).map(|n| n as f64).collect::<Vec<_>>())
}

/// Phase-insensitive bosonic generator gamma_+ L_+ + gamma_- L_- with jumps
/// a^dag (rate gamma_+) and a (rate gamma_-), truncated at `cutoff` levels.
pub fn bosonic_generator(gamma_plus: f64, gamma_minus: f64, cutoff: usize) -> Result<LindbladGenerator> {
    if !(gamma_plus >= 0.0) || !(gamma_minus >= 0.0) {
        return Err(invalid("gamma", "rates must be non-negative"));
    }
    if cutoff < 2 {
        return Err(invalid("cutoff", "need at least two Fock levels"));
    }
    let a = annihilation(cutoff);
    Ok(LindbladGenerator::new(cutoff)
        .with_jump(TimeFunction::constant(gamma_plus), a.adjoint())?
        .with_jump(TimeFunction::constant(gamma_minus), a)?
        .with_truncation(cutoff))
}

/// Noisy amplifier with thermal noise N: gamma_+ = N + 1, gamma_- = N.
pub fn amplifier_generator(n: f64, cutoff: usize) -> Result<LindbladGenerator> {
    bosonic_generator(n + 1.0, n, cutoff)
}

/// Lossy (beamsplitter) channel with thermal noise N: gamma_+ = N, gamma_- = N + 1.
pub fn lossy_generator(n: f64, cutoff: usize) -> Result<LindbladGenerator> {
    bosonic_generator(n, n + 1.0, cutoff)
}

/// Additive noise: gamma_+ = gamma_- = rate.
pub fn additive_noise_generator(rate: f64, cutoff: usize) -> Result<LindbladGenerator> {
    bosonic_generator(rate, rate, cutoff)
}

/// Geometric thermal state with mean photon number `n`, renormalized after
/// truncation. Fails when (N/(N+1))^cutoff exceeds `tail_bound`.
pub fn thermal_state(n: f64, cutoff: usize, tail_bound: f64) -> Result<DensityMatrix> {
    if !(n >= 0.0) {
        return Err(invalid("N", format!("mean photon number must be non-negative, got {n}")));
    }
    if cutoff < 1 {
        return Err(invalid("cutoff", "need at least one level"));
    }
    let ratio = n / (n + 1.0);
    let tail = ratio.powi(cutoff as i32);
    if tail > tail_bound {
        return Err(invalid(
            "cutoff",
            format!("tail mass {tail:.3e} at cutoff {cutoff} exceeds {tail_bound:.1e}"),
        ));
    }
    let mut p: Vec<f64> = (0..cutoff).map(|k| ratio.powi(k as i32)).collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    DensityMatrix::diagonal(&p)
}

/// Population on levels n >= cutoff - 2.
pub fn fock_tail_mass(rho: &CMatrix, cutoff: usize) -> f64 {
    let d = rho.nrows().min(cutoff);
    (d.saturating_sub(2)..d).map(|n| rho[(n, n)].re).sum()
}

pub fn identity_channel(d: usize) -> QuantumChannel {
    QuantumChannel::from_kraus(vec![identity(d)]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::map::{is_cptp, unitality_class, LinearMap, UnitalityClass};
    use crate::linalg::entropy::von_neumann_entropy;
    use crate::linalg::matrix::{diag, max_abs_diff, trace_product};
    use crate::linalg::random::{random_mixed_state, seeded_rng};
    use rand::Rng;

    #[test]
    fn depolarizing_examples() {
        let mut rng = seeded_rng(1);
        let rho = random_mixed_state(&mut rng, 3);
        let id = depolarizing(3, 0.0).unwrap();
        assert!(max_abs_diff(&id.apply(&rho).unwrap(), &rho) < 1e-14);
        let full = depolarizing(2, 1.0).unwrap();
        assert!(max_abs_diff(&full.apply(&diag(&[1.0, 0.0])).unwrap(), &identity(2).scale(0.5)) < 1e-15);
        let edge = depolarizing(2, 4.0 / 3.0).unwrap();
        assert!(is_cptp(&edge, 1e-12).unwrap().is_cptp());
        assert!(depolarizing(2, 1.5).is_err());
        assert!(depolarizing(2, -0.1).is_err());
        for d in [2, 3] {
            let rho = random_mixed_state(&mut rng, d);
            for q in [0.1, 0.7, 1.1] {
                let n = depolarizing(d, q).unwrap();
                assert!(max_abs_diff(&n.apply(&rho).unwrap(), &rho_mix(&rho, q)) < 1e-14);
                assert_eq!(unitality_class(&n, 1e-12).unwrap(), UnitalityClass::Unital);
                let s = n.to_superoperator();
                assert!(max_abs_diff(s.matrix(), &s.adjoint().into_matrix()) < 1e-12);
            }
        }
    }

    fn rho_mix(rho: &CMatrix, q: f64) -> CMatrix {
        let d = rho.nrows();
        rho.scale(1.0 - q) + identity(d).scale(q / d as f64)
    }

    #[test]
    fn depolarizing_composition_law() {
        for q in [0.2, 0.5, 0.9] {
            let dq = depolarizing(2, q).unwrap();
            let both = crate::channels::QuantumChannel::compose(&dq, &dq).unwrap();
            let expect = depolarizing(2, 2.0 * q - q * q).unwrap();
            assert!(max_abs_diff(both.to_superoperator().matrix(), expect.to_superoperator().matrix()) < 1e-12);
        }
    }

    #[test]
    fn gadc_examples() {
        let id = gadc(0.0, 5.0).unwrap();
        assert!(max_abs_diff(id.to_superoperator().matrix(), &identity(4)) < 1e-15);
        let half = identity(2).scale(0.5);
        for &(t, omega) in &[(0.5, 5.0), (1.3, 2.0), (2.9, 5.0)] {
            let w = gadc_w(t, omega);
            let out = gadc(t, omega).unwrap().apply(&half).unwrap();
            assert!(max_abs_diff(&out, &diag(&[0.5 * (1.0 + w), 0.5 * (1.0 - w)])) < 1e-14);
        }
        assert!((gadc_w(0.5, 5.0) - 0.111_612_372_978_688_26).abs() < 1e-15);
        assert!(is_cptp(&gadc(0.5, 5.0).unwrap(), 1e-12).unwrap().is_cptp());
        // p_t != 1/2 and eta_t != 1: non-unital
        let cls = unitality_class(&gadc(0.5, 5.0).unwrap(), 1e-10).unwrap();
        assert_ne!(cls, UnitalityClass::Unital);
        // p_t = 1/2 is unital
        let t = std::f64::consts::PI / 20.0;
        assert_eq!(unitality_class(&gadc(t, 5.0).unwrap(), 1e-10).unwrap(), UnitalityClass::Unital);
    }

    #[test]
    fn gadc_completeness_on_random_parameters() {
        let mut rng = seeded_rng(2);
        for _ in 0..100 {
            let t = 5.0 * rng.random::<f64>();
            let omega = 20.0 * (rng.random::<f64>() - 0.5);
            assert!(gadc(t, omega).unwrap().completeness_defect() < 1e-12);
        }
    }

    #[test]
    fn dephasing_examples() {
        let l = dephasing_generator(TimeFunction::constant(1.0));
        assert!(l.apply(0.3, &diag(&[0.3, 0.7])).unwrap().iter().all(|z| z.norm() < 1e-15));
        let sx = crate::linalg::matrix::pauli_x();
        assert!(max_abs_diff(&l.apply(0.0, &sx).unwrap(), &(-&sx)) < 1e-15);
        assert!(l.unitality_defect(1.0) < 1e-15);
    }

    #[test]
    fn bosonic_commutation_and_parameterizations() {
        let cutoff = 12;
        let a = annihilation(cutoff);
        let comm = &a * a.adjoint() - a.adjoint() * &a;
        for n in 0..cutoff - 1 {
            assert!((comm[(n, n)].re - 1.0).abs() < 1e-12);
        }
        let amp = amplifier_generator(0.5, cutoff).unwrap();
        assert_eq!(amp.rates(0.0), vec![1.5, 0.5]);
        let loss = lossy_generator(0.5, cutoff).unwrap();
        assert_eq!(loss.rates(0.0), vec![0.5, 1.5]);
        let add = additive_noise_generator(0.3, cutoff).unwrap();
        // unital on states supported away from the truncation edge
        let rho = thermal_state(0.2, cutoff, 1e-6).unwrap();
        assert!(add.adjoint_apply(0.0, &rho).unwrap().trace().norm() < 1e-6);
        assert!(bosonic_generator(-1.0, 0.0, 4).is_err());
        assert!(bosonic_generator(1.0, 0.0, 1).is_err());
    }

    #[test]
    fn bosonic_adjoint_trace_is_rate_difference() {
        let cutoff = 40;
        let rho = thermal_state(0.2, cutoff, 1e-8).unwrap();
        for (gp, gm) in [(1.2, 0.2), (0.2, 1.2), (0.2, 0.2)] {
            let l = bosonic_generator(gp, gm, cutoff).unwrap();
            let tr = l.adjoint_apply(0.0, &rho).unwrap().trace().re;
            assert!((-tr - (gp - gm)).abs() < 1e-9, "{gp} {gm}: {tr}");
            assert!(l.apply(0.0, &rho).unwrap().trace().norm() < 1e-9);
        }
    }

    #[test]
    fn thermal_state_examples() {
        let vac = thermal_state(0.0, 5, 1e-8).unwrap();
        assert!(max_abs_diff(&vac, &diag(&[1.0, 0.0, 0.0, 0.0, 0.0])) < 1e-15);
        let th = thermal_state(0.5, 40, 1e-8).unwrap();
        let mean = trace_product(&number_operator(40), &th).re;
        assert!((mean - 0.5).abs() < 1e-6);
        // geometric-state entropy (N+1)ln(N+1) - N ln N
        let s = von_neumann_entropy(&th).unwrap();
        assert!((s - 0.954_771_252_442_219_2).abs() < 1e-6);
        assert!(thermal_state(5.0, 10, 1e-8).is_err());
    }
}
