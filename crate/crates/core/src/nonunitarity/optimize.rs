//! Multi-start maximization of ||(id (x) M)(psi psi^dag)||_1 over unit vectors
//! psi in C^d (x) C^d, for Hermiticity-preserving M on C^{d x d}.
//!
//! Restricting to pure inputs with a reference of the same dimension loses
//! nothing, so every value found is a certified lower bound on ||M||_diamond.

use rayon::prelude::*;
use serde::Serialize;

use super::bipartite::{apply_on_system, PureBipartiteState};
use crate::channels::map::{LinearMap, Superoperator};
use crate::error::{dim_mismatch, invalid, Result};
use crate::linalg::matrix::{c, hermitian_part, outer, CMatrix, CVector};
use crate::linalg::random::seeded_rng;
use crate::linalg::spectral::eigenvalues;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Number of ascents: the maximally entangled seed plus Haar-random seeds.
    pub starts: usize,
    /// Stationarity threshold on the projected gradient norm.
    pub tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Central-difference step for the gradient.
    pub fd_step: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            starts: 32,
            tol: 1e-6,
            max_iterations: 400,
            seed: 7_301,
            fd_step: 1e-6,
        }
    }
}

impl OptimizerOptions {
    fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(invalid("starts", "at least one start is required"));
        }
        if !(self.tol > 0.0) || !(self.fd_step > 0.0) {
            return Err(invalid("tol", "tolerances must be positive"));
        }
        Ok(())
    }
}

/// One local ascent from a seed state.
#[derive(Debug, Clone)]
pub struct Ascent {
    pub value: f64,
    pub state: PureBipartiteState,
    pub iterations: usize,
    /// Projected gradient below `tol`, or no ascent step of length above
    /// 1e-10 improves the objective (a non-smooth local maximum).
    pub converged: bool,
    /// Objective after every accepted step, starting with the seed value.
    pub history: Vec<f64>,
}

/// Best value over all starts.
#[derive(Debug, Clone, Serialize)]
pub struct OslashResult {
    pub value: f64,
    pub maximizer: PureBipartiteState,
    pub starts: usize,
    pub per_start_values: Vec<f64>,
    /// Every start converged.
    pub converged: bool,
}

impl OslashResult {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| crate::Error::Serialization(e.to_string()))
    }
}

/// Sum of |eigenvalues| of a Hermitian matrix.
fn hermitian_trace_norm(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(&hermitian_part(a))?.iter().map(|l| l.abs()).sum())
}

/// ||(id_R (x) M)(rho_RA)||_1 for any rho_RA with d_R = `d_r`.
pub fn diamond_objective<M: LinearMap + ?Sized>(map: &M, rho_ra: &CMatrix, d_r: usize) -> Result<f64> {
    hermitian_trace_norm(&apply_on_system(map, rho_ra, d_r)?)
}

/// Objective at v / |v|; `v` need not be normalized.
fn objective_raw(map: &Superoperator, v: &CVector, d: usize) -> Result<f64> {
    let n2 = v.norm_squared();
    Ok(diamond_objective(map, &outer(v, v), d)? / n2)
}

pub fn pure_objective(map: &Superoperator, psi: &PureBipartiteState) -> Result<f64> {
    if psi.dim() != map.dim_in() {
        return Err(dim_mismatch(map.dim_in(), psi.dim()));
    }
    objective_raw(map, psi.amplitudes(), psi.dim())
}

fn projected_gradient(map: &Superoperator, v: &CVector, d: usize, h: f64) -> Result<CVector> {
    let n = v.len();
    let mut g = CVector::zeros(n);
    for k in 0..n {
        for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
            let mut plus = v.clone();
            let mut minus = v.clone();
            plus[k] += dir * h;
            minus[k] -= dir * h;
            let slope = (objective_raw(map, &plus, d)? - objective_raw(map, &minus, d)?) / (2.0 * h);
            g[k] += dir * slope;
        }
    }
    let radial = v.dotc(&g).re;
    Ok(g - v * c(radial, 0.0))
}

/// Projected gradient ascent on the unit sphere with step halving; a step is
/// taken only if it strictly improves the objective.
pub fn ascend(map: &Superoperator, seed: PureBipartiteState, opts: &OptimizerOptions) -> Result<Ascent> {
    let d = seed.dim();
    if map.dim_in() != d || map.dim_out() != d {
        return Err(dim_mismatch(d, map.dim_in()));
    }
    let mut v = seed.amplitudes().clone();
    let mut value = objective_raw(map, &v, d)?;
    let mut history = vec![value];
    let mut step: f64 = 1.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        let g = projected_gradient(map, &v, d, opts.fd_step)?;
        if g.norm() <= opts.tol {
            converged = true;
            break;
        }
        let mut accepted = None;
        while step > 1e-10 {
            let trial = &v + &g * c(step, 0.0);
            let trial = trial.unscale(trial.norm());
            let f = objective_raw(map, &trial, d)?;
            if f > value {
                accepted = Some((trial, f));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((trial, f)) => {
                let gain = f - value;
                v = trial;
                value = f;
                history.push(value);
                step = (step * 2.0).min(1.0);
                if gain <= 1e-13 * value.max(1.0) {
                    converged = true;
                    break;
                }
            }
            None => {
                converged = true;
                break;
            }
        }
    }
    Ok(Ascent {
        value,
        state: PureBipartiteState::new(d, v)?,
        iterations,
        converged,
        history,
    })
}

/// Lower bound on ||M||_diamond for a Hermiticity-preserving map on d x d
/// operators, maximized over pure inputs from `opts.starts` seeds.
pub fn diamond_norm_estimate(map: &Superoperator, opts: &OptimizerOptions) -> Result<OslashResult> {
    opts.validate()?;
    let d = map.dim_in();
    if map.dim_out() != d {
        return Err(dim_mismatch(d, map.dim_out()));
    }
    let mut rng = seeded_rng(opts.seed);
    let mut seeds = vec![PureBipartiteState::maximally_entangled(d)];
    seeds.extend((1..opts.starts).map(|_| PureBipartiteState::haar(&mut rng, d)));
    let ascents = seeds
        .into_par_iter()
        .map(|s| ascend(map, s, opts))
        .collect::<Result<Vec<_>>>()?;
    let best = ascents
        .iter()
        .enumerate()
        .fold(0, |b, (k, a)| if a.value > ascents[b].value { k } else { b });
    Ok(OslashResult {
        value: ascents[best].value,
        maximizer: ascents[best].state.clone(),
        starts: ascents.len(),
        per_start_values: ascents.iter().map(|a| a.value).collect(),
        converged: ascents.iter().all(|a| a.converged),
    })
}
