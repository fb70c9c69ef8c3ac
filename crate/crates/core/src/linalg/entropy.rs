//! Von Neumann entropy and quantum relative entropy, in nats.

use std::fmt;

use super::matrix::{trace_product, CMatrix};
use super::spectral::{log_from_eigensystem, spectral_decompose, EigenSystem, ZERO_EIGENVALUE_TOL};
use crate::error::Result;

/// Tr{(1 - Pi_sigma) rho} above this means supp(rho) is not inside supp(sigma).
pub const SUPPORT_TOL: f64 = 1e-10;

/// Relative entropy value: finite, or the +infinity sentinel when the support
/// condition fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn is_finite(&self) -> bool {
        matches!(self, RelativeEntropy::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite => None,
        }
    }

    /// `true` when `self <= rhs + slack`, treating the sentinel as +infinity.
    pub fn le(&self, rhs: f64, slack: f64) -> bool {
        match *self {
            RelativeEntropy::Finite(v) => v <= rhs + slack,
            RelativeEntropy::Infinite => false,
        }
    }
}

impl fmt::Display for RelativeEntropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeEntropy::Finite(v) => write!(f, "{v}"),
            RelativeEntropy::Infinite => f.write_str("inf"),
        }
    }
}

fn entropy_of_spectrum(eig: &EigenSystem) -> f64 {
    let threshold = eig.zero_threshold(ZERO_EIGENVALUE_TOL);
    -eig.eigenvalues
        .iter()
        .filter(|&&l| l > threshold)
        .map(|&l| l * l.ln())
        .sum::<f64>()
}

/// S(rho) = -Tr{rho log rho} with 0 log 0 = 0.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    let eig = spectral_decompose(rho)?;
    Ok(entropy_of_spectrum(&eig))
}

/// Shannon entropy of a probability vector, in nats.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// D(rho || sigma) = Tr{rho (log rho - log sigma)} when supp(rho) lies in
/// supp(sigma), the infinite sentinel otherwise.
///
/// Full-rank pairs use the trace formula directly; when either operator is
/// rank deficient the eigenbasis double sum is evaluated instead.
pub fn relative_entropy(rho: &CMatrix, sigma: &CMatrix) -> Result<RelativeEntropy> {
    let er = spectral_decompose(rho)?;
    let es = spectral_decompose(sigma)?;
    let tr_thr = er.zero_threshold(ZERO_EIGENVALUE_TOL);
    let ts_thr = es.zero_threshold(ZERO_EIGENVALUE_TOL);
    let rank_r = er.eigenvalues.iter().filter(|&&l| l > tr_thr).count();
    let rank_s = es.eigenvalues.iter().filter(|&&l| l > ts_thr).count();
    let d = er.dim();

    if rank_r == d && rank_s == d {
        let log_r = log_from_eigensystem(&er, ZERO_EIGENVALUE_TOL);
        let log_s = log_from_eigensystem(&es, ZERO_EIGENVALUE_TOL);
        let diff = log_r - log_s;
        return Ok(RelativeEntropy::Finite(trace_product(rho, &diff).re));
    }

    // |<phi_i|psi_j>|^2 with phi from rho, psi from sigma
    let overlap = er.eigenvectors.adjoint() * &es.eigenvectors;
    let mut outside = 0.0;
    for (i, &p) in er.eigenvalues.iter().enumerate() {
        if p <= tr_thr {
            continue;
        }
        for (j, &q) in es.eigenvalues.iter().enumerate() {
            if q <= ts_thr {
                outside += p * overlap[(i, j)].norm_sqr();
            }
        }
    }
    if outside > SUPPORT_TOL {
        return Ok(RelativeEntropy::Infinite);
    }

    let mut value = 0.0;
    for (i, &p) in er.eigenvalues.iter().enumerate() {
        if p <= tr_thr {
            continue;
        }
        value += p * p.ln();
        for (j, &q) in es.eigenvalues.iter().enumerate() {
            if q > ts_thr {
                value -= p * overlap[(i, j)].norm_sqr() * q.ln();
            }
        }
    }
    Ok(RelativeEntropy::Finite(value))
}
