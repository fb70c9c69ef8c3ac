//! Entropy rate: Theorem 1 formula and its finite-difference oracle.

use super::closed_form::ClosedForm;
use super::trajectory::Trajectory;
use crate::error::{invalid, Error, Result};
use crate::linalg::entropy::von_neumann_entropy;
use crate::linalg::matrix::{max_abs, trace, trace_product, CMatrix};
use crate::linalg::spectral::{log_from_eigensystem, ZERO_EIGENVALUE_TOL};
use crate::linalg::state::DensityMatrix;

/// Slack on Tr{rho_dot} = 0, relative to max(1, max |rho_dot|).
pub const DERIVATIVE_TRACE_TOL: f64 = 1e-9;

/// dS/dt = -Tr{rho_dot log rho}, with log taken on the support of rho.
pub fn entropy_rate(rho: &DensityMatrix, rho_dot: &CMatrix) -> Result<f64> {
    if rho_dot.shape() != rho.shape() {
        return Err(crate::error::dim_mismatch(
            format!("{0}x{0}", rho.dim()),
            format!("{}x{}", rho_dot.nrows(), rho_dot.ncols()),
        ));
    }
    let tr = trace(rho_dot).norm();
    if tr > DERIVATIVE_TRACE_TOL * max_abs(rho_dot).max(1.0) {
        return Err(invalid("rho_dot", format!("trace {tr:.3e} is not zero")));
    }
    let log = log_from_eigensystem(&rho.eigensystem()?, ZERO_EIGENVALUE_TOL);
    Ok(-trace_product(rho_dot, &log).re)
}

/// Central difference (S(rho_{t+h}) - S(rho_{t-h})) / 2h at grid point `index`.
///
/// Trajectories with a closed-form source are evaluated at t +- h; otherwise
/// the neighbouring grid points are used and `h` is ignored.
pub fn entropy_rate_fd(traj: &Trajectory, index: usize, h: f64) -> Result<f64> {
    let n = traj.len();
    if index >= n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    let t = traj.grid()[index];
    if let Some(cf) = traj.source() {
        return central_difference(cf, t, h);
    }
    if index == 0 || index + 1 == n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    let (lo, hi) = (&traj.states()[index - 1], &traj.states()[index + 1]);
    let dt = traj.grid()[index + 1] - traj.grid()[index - 1];
    Ok((von_neumann_entropy(hi)? - von_neumann_entropy(lo)?) / dt)
}

fn entropy_at(cf: &ClosedForm, t: f64) -> Result<f64> {
    von_neumann_entropy(cf.state(t)?.matrix())
}

pub fn central_difference(cf: &ClosedForm, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(invalid("h", "step must be positive"));
    }
    Ok((entropy_at(cf, t + h)? - entropy_at(cf, t - h)?) / (2.0 * h))
}

/// Forward difference (S(rho_{t+h}) - S(rho_t)) / h for each step in `steps`,
/// used to approach one-sided limits at rank-change instants.
pub fn one_sided_rates(cf: &ClosedForm, t: f64, steps: &[f64]) -> Result<Vec<f64>> {
    let s0 = entropy_at(cf, t)?;
    steps
        .iter()
        .map(|&h| {
            if !(h > 0.0) {
                return Err(invalid("h", "step must be positive"));
            }
            Ok((entropy_at(cf, t + h)? - s0) / h)
        })
        .collect()
}
