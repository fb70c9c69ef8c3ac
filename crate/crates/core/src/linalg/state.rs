use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::matrix::{hermitize, CMatrix};
use super::spectral::{decompose_hermitian, EigenSystem};
use crate::error::{Error, Result};

/// Default slack on the unit-trace condition.
pub const TRACE_TOL: f64 = 1e-8;
/// Default slack on positivity: the minimum eigenvalue may be this negative.
pub const PSD_TOL: f64 = 1e-8;

/// Hermitian, positive semi-definite, unit-trace matrix.
///
/// Sub-normalized operators (trace below one) are accepted through
/// [`DensityMatrix::subnormalized`] and carry `normalized == false`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::channels::serialize::MatrixDoc", into = "crate::channels::serialize::MatrixDoc")]
pub struct DensityMatrix {
    matrix: CMatrix,
    normalized: bool,
}

impl DensityMatrix {
    /// Validate with the default tolerances.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, TRACE_TOL, PSD_TOL)
    }

    pub fn with_tolerances(matrix: CMatrix, trace_tol: f64, psd_tol: f64) -> Result<Self> {
        let matrix = hermitize(&matrix)?;
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > trace_tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        check_psd(&matrix, psd_tol)?;
        Ok(Self {
            matrix,
            normalized: true,
        })
    }

    /// Trace at most one (within tolerance), otherwise as [`DensityMatrix::new`].
    pub fn subnormalized(matrix: CMatrix) -> Result<Self> {
        let matrix = hermitize(&matrix)?;
        let tr = matrix.trace().re;
        if tr > 1.0 + TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} exceeds 1")));
        }
        check_psd(&matrix, PSD_TOL)?;
        let normalized = (tr - 1.0).abs() <= TRACE_TOL;
        Ok(Self { matrix, normalized })
    }

    /// Hermitize and renormalize the trace without validating positivity.
    /// Used on integrator output, where the positivity check happens separately.
    pub(crate) fn from_raw_normalized(matrix: CMatrix) -> Self {
        let mut m = super::matrix::hermitian_part(&matrix);
        let tr = m.trace().re;
        if tr != 0.0 {
            m.unscale_mut(tr);
        }
        Self {
            matrix: m,
            normalized: true,
        }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: CMatrix::identity(d, d).unscale(d as f64),
            normalized: true,
        }
    }

    /// |psi><psi| for a (not necessarily normalized) vector.
    pub fn pure(psi: &super::matrix::CVector) -> Result<Self> {
        let n = psi.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v = psi.unscale(n);
        Ok(Self {
            matrix: super::matrix::outer(&v, &v),
            normalized: true,
        })
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        Self::new(super::matrix::diag(probabilities))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn eigensystem(&self) -> Result<EigenSystem> {
        decompose_hermitian(self.matrix.clone())
    }
}

impl Deref for DensityMatrix {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.matrix
    }
}

impl AsRef<CMatrix> for DensityMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.matrix
    }
}

fn check_psd(m: &CMatrix, psd_tol: f64) -> Result<()> {
    let min = super::spectral::min_eigenvalue(m)?;
    if min < -psd_tol {
        return Err(Error::InvalidState(format!(
            "minimum eigenvalue {min:.3e} is negative"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{cr, diag};

    #[test]
    fn rejects_bad_trace_and_negative_spectrum() {
        assert!(DensityMatrix::new(diag(&[0.6, 0.6])).is_err());
        assert!(DensityMatrix::new(diag(&[1.2, -0.2])).is_err());
        assert!(DensityMatrix::new(diag(&[0.75, 0.25])).is_ok());
    }

    #[test]
    fn subnormalized_is_flagged() {
        let rho = DensityMatrix::subnormalized(diag(&[0.5, 0.25])).unwrap();
        assert!(!rho.is_normalized());
        assert!(DensityMatrix::subnormalized(diag(&[0.9, 0.25])).is_err());
    }

    #[test]
    fn small_asymmetry_is_symmetrized() {
        let mut m = diag(&[0.5, 0.5]);
        m[(0, 1)] = cr(1e-13);
        let rho = DensityMatrix::new(m).unwrap();
        assert_eq!(rho[(0, 1)], rho[(1, 0)].conj());
    }
}
