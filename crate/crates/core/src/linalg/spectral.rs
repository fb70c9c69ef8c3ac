//! Hermitian eigendecompositions and spectral matrix functions.

use nalgebra::{DVector, SymmetricEigen};

use super::matrix::{hermitize, CMatrix};
use crate::error::{invalid, Error, Result};

/// Eigenvalues at or below `ZERO_EIGENVALUE_TOL * lambda_max` count as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-12;

const EIG_EPS: f64 = 1e-15;
const EIG_MAX_ITER: usize = 10_000;

/// Eigenvalues sorted in descending order with the matching unitary of
/// eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Absolute threshold below which an eigenvalue is treated as zero.
    pub fn zero_threshold(&self, rel_tol: f64) -> f64 {
        rel_tol * self.max_eigenvalue().abs().max(f64::MIN_POSITIVE)
    }

    /// V diag(g(lambda_k)) V^dag, where `g` returns `None` for eigenvalues
    /// outside its domain (those components are dropped).
    pub fn apply_fn(&self, g: impl Fn(f64) -> Option<f64>) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            if let Some(value) = g(lambda) {
                if value == 0.0 {
                    continue;
                }
                let v = self.eigenvectors.column(k);
                out += (v * v.adjoint()).scale(value);
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply_fn(Some)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
///
/// Inputs with asymmetry at the rounding level are symmetrized first; larger
/// asymmetry is rejected.
pub fn spectral_decompose(a: &CMatrix) -> Result<EigenSystem> {
    let h = hermitize(a)?;
    decompose_hermitian(h)
}

pub(crate) fn decompose_hermitian(h: CMatrix) -> Result<EigenSystem> {
    let d = h.nrows();
    if d == 0 {
        return Ok(EigenSystem {
            eigenvalues: Vec::new(),
            eigenvectors: CMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(h, EIG_EPS, EIG_MAX_ITER).ok_or(Error::DecompositionFailed)?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::DecompositionFailed);
    }
    let mut eigenvectors = CMatrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, descending.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    let h = hermitize(a)?;
    let mut ev: Vec<f64> = DVector::from(h.symmetric_eigenvalues()).iter().copied().collect();
    if ev.iter().any(|x| !x.is_finite()) {
        return Err(Error::DecompositionFailed);
    }
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

pub fn min_eigenvalue(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.last().copied().unwrap_or(0.0))
}

/// Orthogonal projector onto the span of eigenvectors with non-zero
/// eigenvalues.
#[derive(Debug, Clone)]
pub struct SupportProjector {
    pub matrix: CMatrix,
    pub rank: usize,
}

impl SupportProjector {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.dim()
    }

    /// Projector onto the kernel, 1 - Pi.
    pub fn complement(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim()) - &self.matrix
    }
}

/// Projector onto eigenvectors with lambda > tol * lambda_max.
pub fn support_projector(a: &CMatrix, tol: f64) -> Result<SupportProjector> {
    if !(tol > 0.0) {
        return Err(invalid("tol", "must be positive"));
    }
    let eig = spectral_decompose(a)?;
    Ok(support_from_eigensystem(&eig, tol))
}

pub fn support_from_eigensystem(eig: &EigenSystem, tol: f64) -> SupportProjector {
    let threshold = eig.zero_threshold(tol);
    let rank = eig.eigenvalues.iter().filter(|&&l| l > threshold).count();
    let matrix = eig.apply_fn(|l| (l > threshold).then_some(1.0));
    SupportProjector { matrix, rank }
}

/// Natural logarithm on the support, zero on the kernel.
pub fn matrix_log_on_support(a: &CMatrix) -> Result<CMatrix> {
    let eig = spectral_decompose(a)?;
    Ok(log_from_eigensystem(&eig, ZERO_EIGENVALUE_TOL))
}

pub fn log_from_eigensystem(eig: &EigenSystem, tol: f64) -> CMatrix {
    let threshold = eig.zero_threshold(tol);
    eig.apply_fn(|l| (l > threshold).then(|| l.ln()))
}

/// Principal square root of a PSD matrix (negative rounding noise clipped).
pub fn sqrt_psd(a: &CMatrix) -> Result<CMatrix> {
    let eig = spectral_decompose(a)?;
    Ok(eig.apply_fn(|l| Some(l.max(0.0).sqrt())))
}
