use std::borrow::Cow;

use super::map::{LinearMap, Superoperator};
use crate::error::{dim_mismatch, invalid, Result};
use crate::linalg::matrix::{identity, max_abs_diff, CMatrix};
use crate::linalg::partial::Subsystem;

/// Completely positive map in Kraus form. The superoperator matrix is derived
/// once at construction; channels are immutable afterwards.
///
/// Trace preservation is not enforced, so adjoints and trace-non-increasing
/// operations share the type; see [`QuantumChannel::is_trace_preserving`].
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMatrix>,
    superop: CMatrix,
}

impl PartialEq for QuantumChannel {
    fn eq(&self, other: &Self) -> bool {
        self.dim_in == other.dim_in && self.dim_out == other.dim_out && self.kraus == other.kraus
    }
}

fn superop_from_kraus(kraus: &[CMatrix], dim_in: usize, dim_out: usize) -> CMatrix {
    let mut s = CMatrix::zeros(dim_out * dim_out, dim_in * dim_in);
    for k in kraus {
        s += k.conjugate().kronecker(k);
    }
    s
}

impl QuantumChannel {
    pub fn from_kraus(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| invalid("kraus", "at least one Kraus operator required"))?;
        let (dim_out, dim_in) = first.shape();
        if dim_in == 0 || dim_out == 0 {
            return Err(invalid("kraus", "empty Kraus operator"));
        }
        if let Some(bad) = kraus.iter().find(|k| k.shape() != (dim_out, dim_in)) {
            return Err(dim_mismatch(
                format!("{dim_out}x{dim_in}"),
                format!("{}x{}", bad.nrows(), bad.ncols()),
            ));
        }
        let superop = superop_from_kraus(&kraus, dim_in, dim_out);
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
            superop,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus(vec![identity(d)]).expect("identity Kraus set is valid")
    }

    /// X -> U X U^dag; `u` must be unitary within 1e-10.
    pub fn unitary(u: CMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(invalid("u", "unitary must be square"));
        }
        let d = u.nrows();
        let defect = max_abs_diff(&(u.adjoint() * &u), &identity(d));
        if defect > 1e-10 {
            return Err(invalid("u", format!("not unitary (defect {defect:.3e})")));
        }
        Self::from_kraus(vec![u])
    }

    /// Partial trace on A (x) B keeping `keep`.
    pub fn partial_trace(dims: (usize, usize), keep: Subsystem) -> Self {
        let (da, db) = dims;
        let kraus = match keep {
            Subsystem::B => (0..da)
                .map(|a| {
                    // <a| (x) 1_B
                    let mut bra = CMatrix::zeros(1, da);
                    bra[(0, a)] = num_complex::Complex64::new(1.0, 0.0);
                    bra.kronecker(&identity(db))
                })
                .collect(),
            Subsystem::A => (0..db)
                .map(|b| {
                    let mut bra = CMatrix::zeros(1, db);
                    bra[(0, b)] = num_complex::Complex64::new(1.0, 0.0);
                    identity(da).kronecker(&bra)
                })
                .collect(),
        };
        Self::from_kraus(kraus).expect("partial-trace Kraus set is valid")
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn to_superoperator(&self) -> Superoperator {
        Superoperator::new(self.superop.clone(), self.dim_in, self.dim_out)
            .expect("cached superoperator has consistent shape")
    }

    /// sum_i K_i X K_i^dag
    pub fn apply_kraus(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.nrows() != self.dim_in || x.ncols() != self.dim_in {
            return Err(dim_mismatch(
                format!("{0}x{0}", self.dim_in),
                format!("{}x{}", x.nrows(), x.ncols()),
            ));
        }
        let mut out = CMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += k * x * k.adjoint();
        }
        Ok(out)
    }

    /// Kraus set {K_i^dag}.
    pub fn adjoint(&self) -> Self {
        Self::from_kraus(self.kraus.iter().map(|k| k.adjoint()).collect())
            .expect("adjoint Kraus set is valid")
    }

    /// `second` o `first`, Kraus set {K2_j K1_i}.
    pub fn compose(second: &QuantumChannel, first: &QuantumChannel) -> Result<Self> {
        if first.dim_out != second.dim_in {
            return Err(dim_mismatch(first.dim_out, second.dim_in));
        }
        let kraus = second
            .kraus
            .iter()
            .flat_map(|k2| first.kraus.iter().map(move |k1| k2 * k1))
            .collect();
        Self::from_kraus(kraus)
    }

    /// N^dag o N.
    pub fn adjoint_compose(&self) -> Self {
        Self::compose(&self.adjoint(), self).expect("dimensions agree")
    }

    /// Largest entrywise deviation of sum_i K_i^dag K_i from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let s = self
            .kraus
            .iter()
            .fold(CMatrix::zeros(self.dim_in, self.dim_in), |acc, k| acc + k.adjoint() * k);
        max_abs_diff(&s, &identity(self.dim_in))
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.completeness_defect() <= tol
    }

    /// sum_i K_i^dag K_i <= 1 within `tol`.
    pub fn is_trace_non_increasing(&self, tol: f64) -> Result<bool> {
        let s = self
            .kraus
            .iter()
            .fold(CMatrix::zeros(self.dim_in, self.dim_in), |acc, k| acc + k.adjoint() * k);
        let ev = crate::linalg::spectral::eigenvalues(&(s - identity(self.dim_in)))?;
        Ok(ev.first().copied().unwrap_or(0.0) <= tol)
    }
}

impl LinearMap for QuantumChannel {
    fn dim_in(&self) -> usize {
        self.dim_in
    }
    fn dim_out(&self) -> usize {
        self.dim_out
    }
    fn superoperator(&self) -> Cow<'_, CMatrix> {
        Cow::Borrowed(&self.superop)
    }
    fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        self.apply_kraus(x)
    }
}
