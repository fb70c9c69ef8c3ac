//! The diamond norm of non-unitarity ||N||_oslash = ||id - N^dag o N||_diamond
//! of a unital channel, and related quantities.

use log::info;
use serde::Serialize;

use super::bipartite::PureBipartiteState;
use super::optimize::{diamond_norm_estimate, pure_objective, OptimizerOptions, OslashResult};
use crate::channels::channel::QuantumChannel;
use crate::channels::map::{unitality_defect, LinearMap, Superoperator};
use crate::channels::zoo::depolarizing_q_max;
use crate::error::{dim_mismatch, invalid, Error, Result};

/// Largest entrywise deviation of N(1) from 1 accepted as unital.
pub const UNITAL_TOL: f64 = 1e-9;

/// id - N^dag o N, after checking that N is unital.
fn oslash_map(n: &QuantumChannel) -> Result<Superoperator> {
    if n.dim_in() != n.dim_out() {
        return Err(dim_mismatch(n.dim_in(), n.dim_out()));
    }
    let defect = unitality_defect(n)?;
    if defect > UNITAL_TOL {
        return Err(Error::NotUnital { defect });
    }
    Superoperator::identity(n.dim_in()).sub(&n.to_superoperator().adjoint_compose())
}

/// ||(id (x) (id - N^dag o N))(psi psi^dag)||_1.
pub fn oslash_objective(n: &QuantumChannel, psi: &PureBipartiteState) -> Result<f64> {
    pure_objective(&oslash_map(n)?, psi)
}

/// Multi-start estimate of ||N||_oslash; a lower bound on the true value.
pub fn oslash_norm(n: &QuantumChannel, opts: &OptimizerOptions) -> Result<OslashResult> {
    diamond_norm_estimate(&oslash_map(n)?, opts)
}

/// 2q(2 - q)(1 - 1/d^2) for the depolarizing channel D_{d,q}.
pub fn oslash_depolarizing_analytic(d: usize, q: f64) -> Result<f64> {
    if d < 2 {
        return Err(invalid("d", "dimension must be at least 2"));
    }
    let q_max = depolarizing_q_max(d);
    if !(0.0..=q_max).contains(&q) {
        return Err(invalid("q", format!("q = {q} outside [0, d^2/(d^2-1)] = [0, {q_max}]")));
    }
    let d2 = (d * d) as f64;
    Ok(2.0 * q * (2.0 - q) * (1.0 - 1.0 / d2))
}

/// Optimal probability 1/2 (1 + v/2) of telling id from N^dag o N, given
/// v = ||N||_oslash in [0, 2].
pub fn success_probability(norm_value: f64) -> Result<f64> {
    if !(-1e-9..=2.0 + 1e-9).contains(&norm_value) {
        return Err(invalid("norm_value", format!("{norm_value} outside [0, 2]")));
    }
    Ok(0.5 * (1.0 + 0.5 * norm_value.clamp(0.0, 2.0)))
}

/// Multi-start estimate of ||N1 - N2||_diamond; a lower bound.
pub fn diamond_distance<M1, M2>(n1: &M1, n2: &M2, opts: &OptimizerOptions) -> Result<f64>
where
    M1: LinearMap + ?Sized,
    M2: LinearMap + ?Sized,
{
    if (n1.dim_in(), n1.dim_out()) != (n2.dim_in(), n2.dim_out()) {
        return Err(dim_mismatch(
            format!("{}->{}", n1.dim_in(), n1.dim_out()),
            format!("{}->{}", n2.dim_in(), n2.dim_out()),
        ));
    }
    let a = Superoperator::new(n1.superoperator().into_owned(), n1.dim_in(), n1.dim_out())?;
    let b = Superoperator::new(n2.superoperator().into_owned(), n2.dim_in(), n2.dim_out())?;
    Ok(diamond_norm_estimate(&a.sub(&b)?, opts)?.value)
}

/// sqrt(2 delta) + delta, the bound on ||N||_oslash when ||N - U||_diamond <= delta.
pub fn proposition7_bound(delta: f64) -> Result<f64> {
    if !(delta >= 0.0) {
        return Err(invalid("delta", "must be non-negative"));
    }
    Ok((2.0 * delta).sqrt() + delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Proposition7Check {
    /// Optimizer estimate of ||N - U||_diamond (a lower bound).
    pub delta_est: f64,
    pub oslash_est: f64,
    pub bound_from_estimate: f64,
    /// oslash_est <= bound_from_estimate; advisory, since delta_est may be low.
    pub advisory_holds: bool,
    /// oslash_est against the bound from a certified upper bound on delta.
    pub certified_holds: Option<bool>,
}

pub fn proposition7_check(
    n: &QuantumChannel,
    u: &QuantumChannel,
    opts: &OptimizerOptions,
    certified_delta: Option<f64>,
) -> Result<Proposition7Check> {
    let delta_est = diamond_distance(n, u, opts)?;
    info!("delta = {delta_est:.6e} is an optimizer lower bound; the Proposition 7 check against it is advisory");
    let oslash_est = oslash_norm(n, opts)?.value;
    let bound_from_estimate = proposition7_bound(delta_est)?;
    let certified_holds = certified_delta
        .map(|delta| proposition7_bound(delta).map(|b| oslash_est <= b + 1e-9))
        .transpose()?;
    Ok(Proposition7Check {
        delta_est,
        oslash_est,
        bound_from_estimate,
        advisory_holds: oslash_est <= bound_from_estimate + 1e-9,
        certified_holds,
    })
}
