//! First-order derivatives of trace functions t -> Tr{f(A(t))}.

use std::str::FromStr;

use super::matrix::{trace_product, CMatrix};
use super::spectral::{spectral_decompose, ZERO_EIGENVALUE_TOL};
use crate::error::{dim_mismatch, Error, Result};

/// Scalar functions with a supported spectral derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceFunction {
    /// x log x
    XLogX,
    /// x^(1+h)
    Power { h: f64 },
}

impl TraceFunction {
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            TraceFunction::XLogX => {
                if x > 0.0 {
                    x * x.ln()
                } else {
                    0.0
                }
            }
            TraceFunction::Power { h } => {
                if x > 0.0 {
                    x.powf(1.0 + h)
                } else {
                    0.0
                }
            }
        }
    }

    /// f'(x) for x > 0.
    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            TraceFunction::XLogX => x.ln() + 1.0,
            TraceFunction::Power { h } => (1.0 + h) * x.powf(h),
        }
    }
}

impl FromStr for TraceFunction {
    type Err = Error;

    /// Accepts `xlogx` and `power:<h>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("xlogx") {
            return Ok(TraceFunction::XLogX);
        }
        if let Some(h) = s.strip_prefix("power:") {
            let h: f64 = h
                .parse()
                .map_err(|_| Error::UnsupportedFunction(s.to_string()))?;
            return Ok(TraceFunction::Power { h });
        }
        Err(Error::UnsupportedFunction(s.to_string()))
    }
}

/// Tr{f(A)} evaluated on the spectrum of a Hermitian A.
pub fn trace_function(a: &CMatrix, f: TraceFunction) -> Result<f64> {
    let eig = spectral_decompose(a)?;
    Ok(eig.eigenvalues.iter().map(|&l| f.value(l)).sum())
}

/// d/dt Tr{f(A + t A_dot)} at t = 0, i.e. Tr{f'(A) A_dot}, with f'(A) built
/// on supp(A).
pub fn trace_function_derivative(a: &CMatrix, a_dot: &CMatrix, f: TraceFunction) -> Result<f64> {
    if a.shape() != a_dot.shape() {
        return Err(dim_mismatch(
            format!("{:?}", a.shape()),
            format!("{:?}", a_dot.shape()),
        ));
    }
    let eig = spectral_decompose(a)?;
    let threshold = eig.zero_threshold(ZERO_EIGENVALUE_TOL);
    let fprime = eig.apply_fn(|l| (l > threshold).then(|| f.derivative(l)));
    Ok(trace_product(&fprime, a_dot).re)
}
