//! Theorem 2 rate bound, the non-unitality witness, the channel witness f(t),
//! and the non-Markovianity tests (a), (b), (c).

use std::fmt::Write as _;

use serde::Serialize;

use super::family::{ChannelFamily, GeneratorFamily};
use crate::channels::generator::LindbladGenerator;
use crate::channels::map::LinearMap;
use crate::channels::zoo::{gadc_w, gadc_w_dot};
use crate::dynamics::rate::entropy_rate;
use crate::dynamics::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::linalg::matrix::{trace_product, vec, CMatrix};
use crate::linalg::spectral::{support_from_eigensystem, SupportProjector, ZERO_EIGENVALUE_TOL};
use crate::linalg::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessOptions {
    /// Margin below zero required by tests (a) and (b).
    pub eps_w: f64,
    /// Disagreement required by test (c).
    pub eps_c: f64,
    /// Largest step of the epsilon-derivative stencil.
    pub eps0: f64,
    /// Test (c) is not evaluated within this distance of a rank change.
    pub rank_change_exclusion: f64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            eps_w: 1e-7,
            eps_c: 1e-6,
            eps0: 1e-3,
            rank_change_exclusion: 1e-3,
        }
    }
}

fn support(rho: &DensityMatrix) -> Result<SupportProjector> {
    Ok(support_from_eigensystem(&rho.eigensystem()?, ZERO_EIGENVALUE_TOL))
}

/// Tr{Pi_t L_t^dag(rho_t)}; zero for unital generators.
pub fn nonunitality_witness(g: &LindbladGenerator, t: f64, rho: &DensityMatrix) -> Result<f64> {
    let pi = support(rho)?;
    Ok(trace_product(&pi.matrix, &g.adjoint_apply(t, rho)?).re)
}

/// Theorem 2 lower bound -Tr{Pi_t L_t^dag(rho_t)} on the entropy rate of a
/// quantum Markov process.
pub fn theorem2_bound(g: &LindbladGenerator, t: f64, rho: &DensityMatrix) -> Result<f64> {
    Ok(-nonunitality_witness(g, t, rho)?)
}

/// lim_{eps -> 0+} d/deps Tr{Pi_t M^dag o M(rho_t)} with M = M_{t+eps,t}.
///
/// Forward differences D(d) = (g(d) - g(0)) / d at d = eps0, eps0/2, eps0/4
/// combined by two Richardson levels, which removes the O(d) and O(d^2)
/// error terms.
pub fn eps_derivative<F: ChannelFamily + ?Sized>(family: &F, t: f64, rho: &DensityMatrix, eps0: f64) -> Result<f64> {
    if !(eps0 > 0.0) {
        return Err(crate::error::invalid("eps0", "must be positive"));
    }
    let pi = vec(&support(rho)?.matrix);
    let r = vec(rho);
    let g = |eps: f64| -> Result<f64> {
        let s = family.intermediate(t, eps)?;
        let s = s.superoperator();
        Ok(((s.as_ref() * &pi).adjoint() * (s.as_ref() * &r))[(0, 0)].re)
    };
    let g0 = g(0.0)?;
    let d = |h: f64| -> Result<f64> { Ok((g(h)? - g0) / h) };
    let (d1, d2, d3) = (d(eps0)?, d(eps0 / 2.0)?, d(eps0 / 4.0)?);
    let (r1, r2) = (2.0 * d2 - d1, 2.0 * d3 - d2);
    let value = (4.0 * r2 - r1) / 3.0;
    if !value.is_finite() || (value - r2).abs() > 1e-3 * value.abs().max(1.0) {
        return Err(Error::NonConvergence {
            what: "eps_derivative",
            detail: format!("Richardson estimates {r1}, {r2}, {value} at t = {t}"),
        });
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FValue {
    pub entropy_rate: f64,
    pub eps_derivative: f64,
    pub f: f64,
}

/// f(t) = dS/dt + lim_{eps -> 0+} d/deps Tr{Pi_t M^dag o M(rho_t)}.
pub fn witness_f_channel<F: ChannelFamily + ?Sized>(
    family: &F,
    t: f64,
    rho: &DensityMatrix,
    rho_dot: &CMatrix,
    opts: &WitnessOptions,
) -> Result<FValue> {
    let rate = entropy_rate(rho, rho_dot)?;
    let eps = eps_derivative(family, t, rho, opts.eps0)?;
    Ok(FValue {
        entropy_rate: rate,
        eps_derivative: eps,
        f: rate + eps,
    })
}

/// Closed-form f(t) for the GADC family started at 1/2:
/// 1/2 W' log((1 - W)/(1 + W)) + W.
pub fn gadc_f_closed_form(t: f64, omega: f64) -> f64 {
    let w = gadc_w(t, omega);
    0.5 * gadc_w_dot(t, omega) * ((1.0 - w) / (1.0 + w)).ln() + w
}

/// Test (a): f(t) < -eps_w.
pub fn test_a(f: f64, eps_w: f64) -> bool {
    f < -eps_w
}

/// Test (b): dS/dt + Tr{Pi L^dag(rho)} < -eps_w, i.e. the rate falls below
/// the Theorem 2 bound.
pub fn test_b(rate: f64, theorem2_bound: f64, eps_w: f64) -> bool {
    rate - theorem2_bound < -eps_w
}

/// Test (c): the epsilon-derivative disagrees with Tr{Pi L^dag(rho)}.
pub fn test_c(eps_derivative: f64, nonunitality: f64, eps_c: f64) -> bool {
    (eps_derivative - nonunitality).abs() > eps_c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct WitnessFlags {
    pub test_a_passed: bool,
    pub test_b_passed: bool,
    /// `None` when t lies within the exclusion window around a rank change.
    pub test_c_passed: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessReport {
    pub time: f64,
    pub entropy_rate: f64,
    pub theorem2_bound: f64,
    pub eps_derivative: f64,
    pub f_value: f64,
    pub nonunitality: f64,
    pub flags: WitnessFlags,
}

/// Times where the support rank differs from a neighbouring grid point.
pub fn rank_change_times(traj: &Trajectory) -> Vec<f64> {
    let ranks: Vec<usize> = traj.supports().iter().map(|s| s.rank).collect();
    let grid = traj.grid();
    let mut out = Vec::new();
    for i in 0..ranks.len() {
        let changes = (i > 0 && ranks[i - 1] != ranks[i]) || (i + 1 < ranks.len() && ranks[i + 1] != ranks[i]);
        if changes {
            out.push(grid[i]);
        }
    }
    out
}

/// Evaluate every witness at every point of a generator trajectory.
pub fn witness_scan(family: &GeneratorFamily, traj: &Trajectory, opts: &WitnessOptions) -> Result<Vec<WitnessReport>> {
    let g = &family.generator;
    let changes = rank_change_times(traj);
    traj.grid()
        .iter()
        .zip(traj.states().iter().zip(traj.derivatives()))
        .map(|(&t, (rho, dot))| {
            let fv = witness_f_channel(family, t, rho, dot, opts)?;
            let nonunitality = nonunitality_witness(g, t, rho)?;
            let bound = -nonunitality;
            let near_change = changes.iter().any(|&c| (c - t).abs() <= opts.rank_change_exclusion);
            Ok(WitnessReport {
                time: t,
                entropy_rate: fv.entropy_rate,
                theorem2_bound: bound,
                eps_derivative: fv.eps_derivative,
                f_value: fv.f,
                nonunitality,
                flags: WitnessFlags {
                    test_a_passed: test_a(fv.f, opts.eps_w),
                    test_b_passed: test_b(fv.entropy_rate, bound, opts.eps_w),
                    test_c_passed: (!near_change).then(|| test_c(fv.eps_derivative, nonunitality, opts.eps_c)),
                },
            })
        })
        .collect()
}

/// Delimited table with columns t, rate, bound, f, test_a, test_b, test_c
/// (test_c is `na` inside rank-change windows).
pub fn reports_to_table(reports: &[WitnessReport], delimiter: char) -> String {
    let mut out = format!("t{0}rate{0}bound{0}f{0}test_a{0}test_b{0}test_c\n", delimiter);
    for r in reports {
        let c = match r.flags.test_c_passed {
            Some(true) => "1",
            Some(false) => "0",
            None => "na",
        };
        let _ = writeln!(
            out,
            "{:.12e}{d}{:.12e}{d}{:.12e}{d}{:.12e}{d}{}{d}{}{d}{}",
            r.time,
            r.entropy_rate,
            r.theorem2_bound,
            r.f_value,
            u8::from(r.flags.test_a_passed),
            u8::from(r.flags.test_b_passed),
            c,
            d = delimiter
        );
    }
    out
}
