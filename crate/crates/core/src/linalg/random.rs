//! Seeded random matrices, states and unitaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{c, outer, CMatrix, CVector};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

/// Ginibre matrix with i.i.d. standard complex normal entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    (&g + g.adjoint()).scale(0.5)
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-random unit vector.
pub fn haar_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVector {
    let v = CVector::from_fn(d, |_, _| gaussian_complex(rng));
    let n = v.norm();
    v.unscale(n)
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let v = haar_vector(rng, d);
    outer(&v, &v)
}

/// Hilbert-Schmidt random mixed state G G^dag / Tr.
pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    m.unscale(tr)
}

/// Full-rank state bounded away from the boundary: mixes a random state with
/// the maximally mixed one.
pub fn random_full_rank_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let w: f64 = 0.05 + 0.9 * rng.random::<f64>();
    let rho = random_mixed_state(rng, d);
    rho.scale(1.0 - w) + CMatrix::identity(d, d).scale(w / d as f64)
}

/// Kraus operators of a random CPTP map from a Haar isometry d_in -> d_out * k.
pub fn random_kraus<R: Rng + ?Sized>(rng: &mut R, d_in: usize, d_out: usize, k: usize) -> Vec<CMatrix> {
    let big = d_out * k;
    assert!(big >= d_in, "need d_out * k >= d_in for an isometry");
    let u = haar_unitary(rng, big);
    let iso = u.columns(0, d_in).into_owned();
    (0..k)
        .map(|j| iso.rows(j * d_out, d_out).into_owned())
        .collect()
}

/// Kraus operators of a random mixture of unitaries (a unital channel).
pub fn random_unital_kraus<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize) -> Vec<CMatrix> {
    let weights: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    weights
        .iter()
        .map(|w| haar_unitary(rng, d).scale((w / total).sqrt()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{identity, max_abs_diff};

    #[test]
    fn haar_unitary_is_unitary_and_reproducible() {
        let u1 = haar_unitary(&mut seeded_rng(3), 4);
        let u2 = haar_unitary(&mut seeded_rng(3), 4);
        assert_eq!(u1, u2);
        assert!(max_abs_diff(&(u1.adjoint() * &u1), &identity(4)) < 1e-12);
    }

    #[test]
    fn random_kraus_is_trace_preserving() {
        let mut rng = seeded_rng(5);
        let ks = random_kraus(&mut rng, 2, 3, 2);
        let s = ks.iter().fold(CMatrix::zeros(2, 2), |acc, k| acc + k.adjoint() * k);
        assert!(max_abs_diff(&s, &identity(2)) < 1e-12);
    }
}
