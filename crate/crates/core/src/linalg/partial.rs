use super::matrix::CMatrix;
use crate::error::{dim_mismatch, Result};

/// Which factor of a bipartite system to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of an operator on A (x) B, index order (a, b) -> a * d_b + b.
pub fn partial_trace(rho_ab: &CMatrix, dims: (usize, usize), keep: Subsystem) -> Result<CMatrix> {
    let (da, db) = dims;
    if rho_ab.nrows() != da * db || rho_ab.ncols() != da * db {
        return Err(dim_mismatch(
            format!("{}x{}", da * db, da * db),
            format!("{}x{}", rho_ab.nrows(), rho_ab.ncols()),
        ));
    }
    Ok(match keep {
        Subsystem::B => CMatrix::from_fn(db, db, |i, j| (0..da).map(|a| rho_ab[(a * db + i, a * db + j)]).sum()),
        Subsystem::A => CMatrix::from_fn(da, da, |i, j| (0..db).map(|b| rho_ab[(i * db + b, j * db + b)]).sum()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{bell_projector, diag, identity, kron, max_abs_diff};
    use crate::linalg::random::{random_mixed_state, seeded_rng};

    #[test]
    fn product_and_bell_marginals() {
        let ra = diag(&[0.8, 0.2]);
        let rb = diag(&[0.1, 0.3, 0.6]);
        let prod = kron(&ra, &rb);
        assert!(max_abs_diff(&partial_trace(&prod, (2, 3), Subsystem::B).unwrap(), &rb) < 1e-15);
        assert!(max_abs_diff(&partial_trace(&prod, (2, 3), Subsystem::A).unwrap(), &ra) < 1e-15);
        let m = partial_trace(&bell_projector(2), (2, 2), Subsystem::B).unwrap();
        assert!(max_abs_diff(&m, &identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn random_two_qubit_matches_index_summation() {
        let mut rng = seeded_rng(21);
        let rho = random_mixed_state(&mut rng, 4);
        // element-indexed oracle over the 4-index tensor rho[a b, a' b']
        let mut oracle = CMatrix::zeros(2, 2);
        for b in 0..2 {
            for bp in 0..2 {
                for a in 0..2 {
                    oracle[(b, bp)] += rho[(2 * a + b, 2 * a + bp)];
                }
            }
        }
        let got = partial_trace(&rho, (2, 2), Subsystem::B).unwrap();
        assert!(max_abs_diff(&got, &oracle) < 1e-15);
        assert!((got.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(partial_trace(&identity(5), (2, 2), Subsystem::A).is_err());
    }
}
