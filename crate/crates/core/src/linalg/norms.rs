use super::matrix::{hermitian_defect, max_abs, CMatrix, HERMITIAN_TOL};
use super::spectral::eigenvalues;
use crate::error::{invalid, Result};

/// Singular values, descending.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.is_square() && hermitian_defect(a) <= HERMITIAN_TOL * max_abs(a).max(1.0) {
        if let Ok(ev) = eigenvalues(a) {
            let mut s: Vec<f64> = ev.into_iter().map(f64::abs).collect();
            s.sort_by(|x, y| y.total_cmp(x));
            return s;
        }
    }
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Schatten p-norm; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(invalid("p", format!("Schatten index must be >= 1, got {p}")));
    }
    let s = singular_values(a);
    if p.is_infinite() {
        return Ok(s.first().copied().unwrap_or(0.0));
    }
    if p == 1.0 {
        return Ok(s.iter().sum());
    }
    Ok(s.iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p))
}

pub fn trace_norm(a: &CMatrix) -> f64 {
    singular_values(a).iter().sum()
}

pub fn operator_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}
