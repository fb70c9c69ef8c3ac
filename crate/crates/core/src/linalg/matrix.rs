//! Small dense complex matrix helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Asymmetry above which an input is rejected rather than symmetrized.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

/// Real diagonal matrix.
pub fn diag(values: &[f64]) -> CMatrix {
    let d = values.len();
    let mut m = CMatrix::zeros(d, d);
    for (i, v) in values.iter().enumerate() {
        m[(i, i)] = cr(*v);
    }
    m
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.trace()
}

/// Hilbert-Schmidt inner product Tr{A^dag B}.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Tr{A B} without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest entrywise modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise |A - A^dag|.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// (A + A^dag)/2 without any check.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// Symmetrize when the asymmetry is at the rounding level, reject otherwise.
pub fn hermitize(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(crate::error::dim_mismatch(
            "square matrix",
            format!("{}x{}", a.nrows(), a.ncols()),
        ));
    }
    let asymmetry = hermitian_defect(a);
    if asymmetry > HERMITIAN_TOL * max_abs(a).max(1.0) {
        return Err(Error::NotHermitian { asymmetry });
    }
    Ok(hermitian_part(a))
}

/// Outer product |u><v|.
pub fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

/// Computational basis ket |i> in dimension d.
pub fn ket(d: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[i] = cr(1.0);
    v
}

/// Projector |i><i| in dimension d.
pub fn basis_projector(d: usize, i: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(i, i)] = cr(1.0);
    m
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)])
}

pub fn pauli_z() -> CMatrix {
    diag(&[1.0, -1.0])
}

/// Unnormalized maximally entangled vector sum_i |i>|i>.
pub fn omega_vector(d: usize) -> CVector {
    let mut v = CVector::zeros(d * d);
    for i in 0..d {
        v[i * d + i] = cr(1.0);
    }
    v
}

/// Normalized maximally entangled state projector |Phi+><Phi+|.
pub fn bell_projector(d: usize) -> CMatrix {
    let v = omega_vector(d);
    outer(&v, &v).unscale(d as f64)
}

/// Column-stacking vectorization: vec(X)[c*rows + r] = X[r, c].
pub fn vec(a: &CMatrix) -> CVector {
    CVector::from_column_slice(a.as_slice())
}

pub fn unvec(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v.as_slice())
}

/// Generalized Pauli (Heisenberg-Weyl) unitaries X^a Z^b for a, b in 0..d.
///
/// The identity comes first.
pub fn heisenberg_weyl(d: usize) -> Vec<CMatrix> {
    let omega = std::f64::consts::TAU / d as f64;
    let mut shift = CMatrix::zeros(d, d);
    let mut clock = CMatrix::zeros(d, d);
    for j in 0..d {
        shift[((j + 1) % d, j)] = cr(1.0);
        clock[(j, j)] = Complex64::from_polar(1.0, omega * j as f64);
    }
    let mut out = Vec::with_capacity(d * d);
    let mut xa = identity(d);
    for _ in 0..d {
        let mut zb = identity(d);
        for _ in 0..d {
            out.push(&xa * &zb);
            zb = &zb * &clock;
        }
        xa = &xa * &shift;
    }
    out
}
