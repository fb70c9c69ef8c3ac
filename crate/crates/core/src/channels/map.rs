//! Linear maps on operators in superoperator-matrix form, plus the structural
//! checks (Choi positivity, trace preservation, unitality) shared by every map.

use std::borrow::Cow;

use serde::Serialize;

use crate::error::{dim_mismatch, Result};
use crate::linalg::matrix::{identity, max_abs_diff, unvec, vec, CMatrix};
use crate::linalg::spectral::eigenvalues;

/// A linear map from d_in x d_in to d_out x d_out operators.
pub trait LinearMap {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;

    /// Column-stacking superoperator matrix S with vec(N(X)) = S vec(X).
    fn superoperator(&self) -> Cow<'_, CMatrix>;

    fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        let d = self.dim_in();
        if x.nrows() != d || x.ncols() != d {
            return Err(dim_mismatch(format!("{d}x{d}"), format!("{}x{}", x.nrows(), x.ncols())));
        }
        let out = self.superoperator().as_ref() * vec(x);
        Ok(unvec(&out, self.dim_out(), self.dim_out()))
    }
}

/// Superoperator-matrix representation of an arbitrary linear map.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    dim_in: usize,
    dim_out: usize,
    matrix: CMatrix,
}

impl Superoperator {
    pub fn new(matrix: CMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        if matrix.nrows() != dim_out * dim_out || matrix.ncols() != dim_in * dim_in {
            return Err(dim_mismatch(
                format!("{}x{}", dim_out * dim_out, dim_in * dim_in),
                format!("{}x{}", matrix.nrows(), matrix.ncols()),
            ));
        }
        Ok(Self {
            dim_in,
            dim_out,
            matrix,
        })
    }

    pub(crate) fn from_square(matrix: CMatrix, d: usize) -> Self {
        debug_assert_eq!(matrix.nrows(), d * d);
        Self {
            dim_in: d,
            dim_out: d,
            matrix,
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_square(identity(d * d), d)
    }

    /// Build from the action on matrix units: column (j*d_in + i) is vec(N(|i><j|)).
    pub fn from_action(dim_in: usize, dim_out: usize, action: impl Fn(&CMatrix) -> CMatrix) -> Self {
        let mut matrix = CMatrix::zeros(dim_out * dim_out, dim_in * dim_in);
        for j in 0..dim_in {
            for i in 0..dim_in {
                let mut e = CMatrix::zeros(dim_in, dim_in);
                e[(i, j)] = num_complex::Complex64::new(1.0, 0.0);
                let out = action(&e);
                matrix.set_column(j * dim_in + i, &vec(&out));
            }
        }
        Self {
            dim_in,
            dim_out,
            matrix,
        }
    }

    /// Transpose map X -> X^T, positive but not completely positive.
    pub fn transpose_map(d: usize) -> Self {
        Self::from_action(d, d, |x| x.transpose())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Hilbert-Schmidt adjoint: S^dag in the column-stacking convention.
    pub fn adjoint(&self) -> Self {
        Self {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            matrix: self.matrix.adjoint(),
        }
    }

    /// `second` after `self`.
    pub fn then(&self, second: &Superoperator) -> Result<Self> {
        if second.dim_in != self.dim_out {
            return Err(dim_mismatch(self.dim_out, second.dim_in));
        }
        Ok(Self {
            dim_in: self.dim_in,
            dim_out: second.dim_out,
            matrix: &second.matrix * &self.matrix,
        })
    }

    /// N^dag o N.
    pub fn adjoint_compose(&self) -> Self {
        Self::from_square(self.matrix.adjoint() * &self.matrix, self.dim_in)
    }

    pub fn sub(&self, other: &Superoperator) -> Result<Self> {
        if self.dim_in != other.dim_in || self.dim_out != other.dim_out {
            return Err(dim_mismatch(
                format!("{}->{}", self.dim_in, self.dim_out),
                format!("{}->{}", other.dim_in, other.dim_out),
            ));
        }
        Ok(Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            matrix: &self.matrix - &other.matrix,
        })
    }
}

impl LinearMap for Superoperator {
    fn dim_in(&self) -> usize {
        self.dim_in
    }
    fn dim_out(&self) -> usize {
        self.dim_out
    }
    fn superoperator(&self) -> Cow<'_, CMatrix> {
        Cow::Borrowed(&self.matrix)
    }
}

/// Choi operator (id (x) N)(sum_ij |i><j| (x) |i><j|), reference factor first.
pub fn choi_of<M: LinearMap + ?Sized>(map: &M) -> CMatrix {
    let (din, dout) = (map.dim_in(), map.dim_out());
    let s = map.superoperator();
    CMatrix::from_fn(din * dout, din * dout, |row, col| {
        let (i, k) = (row / dout, row % dout);
        let (j, l) = (col / dout, col % dout);
        s[(l * dout + k, j * din + i)]
    })
}

/// Outcome of the CPTP test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CptpReport {
    pub choi_min_eigenvalue: f64,
    /// Largest entrywise deviation of N^dag(1) from 1.
    pub trace_preservation_defect: f64,
    pub completely_positive: bool,
    pub trace_preserving: bool,
}

impl CptpReport {
    pub fn is_cptp(&self) -> bool {
        self.completely_positive && self.trace_preserving
    }
}

/// Largest entrywise deviation of Tr_out(Choi) from the identity.
pub fn trace_preservation_defect<M: LinearMap + ?Sized>(map: &M) -> f64 {
    let (din, dout) = (map.dim_in(), map.dim_out());
    let s = map.superoperator();
    let mut worst: f64 = 0.0;
    for i in 0..din {
        for j in 0..din {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for k in 0..dout {
                acc += s[(k * dout + k, j * din + i)];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

pub fn is_cptp<M: LinearMap + ?Sized>(map: &M, tol: f64) -> Result<CptpReport> {
    let choi = choi_of(map);
    let ev = eigenvalues(&choi)?;
    let choi_min_eigenvalue = ev.last().copied().unwrap_or(0.0);
    let tp = trace_preservation_defect(map);
    Ok(CptpReport {
        choi_min_eigenvalue,
        trace_preservation_defect: tp,
        completely_positive: choi_min_eigenvalue >= -tol,
        trace_preserving: tp <= tol,
    })
}

/// Relation of N(1) to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitalityClass {
    Unital,
    StrictlySubUnital,
    StrictlySuperUnital,
    Neither,
}

/// Classify by the spectrum of N(1) - 1.
pub fn unitality_class<M: LinearMap + ?Sized>(map: &M, tol: f64) -> Result<UnitalityClass> {
    let out = map.apply(&identity(map.dim_in()))?;
    let diff = out - identity(map.dim_out());
    let ev = eigenvalues(&diff)?;
    let max = ev.first().copied().unwrap_or(0.0);
    let min = ev.last().copied().unwrap_or(0.0);
    Ok(if max.abs() <= tol && min.abs() <= tol {
        UnitalityClass::Unital
    } else if max <= tol && min < -tol {
        UnitalityClass::StrictlySubUnital
    } else if min >= -tol && max > tol {
        UnitalityClass::StrictlySuperUnital
    } else {
        UnitalityClass::Neither
    })
}

/// Largest entrywise deviation of N(1) from 1.
pub fn unitality_defect<M: LinearMap + ?Sized>(map: &M) -> Result<f64> {
    let out = map.apply(&identity(map.dim_in()))?;
    Ok(max_abs_diff(&out, &identity(map.dim_out())))
}

/// Largest eigenvalue of N(1) - 1 (non-positive for sub-unital maps).
pub fn sub_unital_excess<M: LinearMap + ?Sized>(map: &M) -> Result<f64> {
    let out = map.apply(&identity(map.dim_in()))?;
    let ev = eigenvalues(&(out - identity(map.dim_out())))?;
    Ok(ev.first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{bell_projector, max_abs_diff};

    #[test]
    fn transpose_map_is_not_cp() {
        let t = Superoperator::transpose_map(2);
        let r = is_cptp(&t, 1e-10).unwrap();
        assert!((r.choi_min_eigenvalue + 1.0).abs() < 1e-12);
        assert!(!r.is_cptp());
        assert!(r.trace_preserving);
    }

    #[test]
    fn identity_choi_is_twice_bell() {
        let id = Superoperator::identity(2);
        let choi = choi_of(&id);
        assert!(max_abs_diff(&choi, &bell_projector(2).scale(2.0)) < 1e-15);
        assert!(is_cptp(&id, 1e-12).unwrap().is_cptp());
        assert_eq!(unitality_class(&id, 1e-12).unwrap(), UnitalityClass::Unital);
    }
}
