//! Non-Markovianity measures C_M(L) and C_M(M), and the trace-distance
//! (BLP) baseline.
//!
//! Each measure maximizes a time integral over sampled initial states, so the
//! reported value is a lower bound on the supremum over all states.

use std::f64::consts::PI;

use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use super::family::{ChannelFamily, GeneratorFamily};
use super::markov::{nonunitality_witness, witness_f_channel, WitnessOptions};
use crate::dynamics::propagate::propagate;
use crate::dynamics::rate::entropy_rate;
use crate::dynamics::trajectory::{check_grid, Trajectory};
use crate::error::{dim_mismatch, invalid, Error, Result};
use crate::linalg::matrix::{c, CMatrix, CVector};
use crate::linalg::norms::trace_norm;
use crate::linalg::random::{haar_unitary, random_mixed_state, random_pure_state, seeded_rng};
use crate::linalg::state::DensityMatrix;

/// Seed used by the standard samplers.
pub const DEFAULT_SEED: u64 = 20_180_416;
/// Width below which sign-change bisection stops.
pub const BISECTION_TOL: f64 = 1e-6;

/// Initial states over which a measure is maximized.
#[derive(Debug, Clone)]
pub struct StateSampler {
    states: Vec<DensityMatrix>,
}

impl StateSampler {
    /// 32 Haar-random pure states, 32 Hilbert-Schmidt random mixed states and
    /// 1/d, plus a 96-point Bloch-sphere grid for qubits.
    pub fn standard(d: usize, seed: u64) -> Result<Self> {
        Self::random(d, 32, 32, if d == 2 { 96 } else { 0 }, seed)
    }

    /// `pure` Haar-random pure states, `mixed` Hilbert-Schmidt random mixed
    /// states, 1/d, and `bloch` Bloch-sphere points (qubits only).
    pub fn random(d: usize, pure: usize, mixed: usize, bloch: usize, seed: u64) -> Result<Self> {
        if d == 0 {
            return Err(invalid("d", "must be positive"));
        }
        if bloch > 0 && d != 2 {
            return Err(invalid("bloch", "Bloch-sphere points need d = 2"));
        }
        let mut rng = seeded_rng(seed);
        let mut states = Vec::with_capacity(pure + mixed + bloch + 1);
        for _ in 0..pure {
            states.push(DensityMatrix::new(random_pure_state(&mut rng, d))?);
        }
        for _ in 0..mixed {
            states.push(DensityMatrix::new(random_mixed_state(&mut rng, d))?);
        }
        states.push(DensityMatrix::maximally_mixed(d));
        states.extend(bloch_grid(bloch)?);
        Ok(Self { states })
    }

    pub fn from_states(states: Vec<DensityMatrix>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptySampler);
        }
        let d = states[0].dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != d) {
            return Err(dim_mismatch(d, bad.dim()));
        }
        Ok(Self { states })
    }

    pub fn extended(mut self, more: impl IntoIterator<Item = DensityMatrix>) -> Self {
        self.states.extend(more);
        self
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Pure qubit states on a Fibonacci lattice of the Bloch sphere.
pub fn bloch_grid(n: usize) -> Result<Vec<DensityMatrix>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let theta = z.clamp(-1.0, 1.0).acos();
            let phi = golden * k as f64;
            let psi = CVector::from_vec(vec![c((theta / 2.0).cos(), 0.0), c(phi.cos(), phi.sin()) * (theta / 2.0).sin()]);
            DensityMatrix::pure(&psi)
        })
        .collect()
}

/// Pairs of initial states for the trace-distance measure.
#[derive(Debug, Clone)]
pub struct PairSampler {
    pairs: Vec<(DensityMatrix, DensityMatrix)>,
}

impl PairSampler {
    /// 32 orthogonal pure pairs and 32 independent random mixed pairs.
    pub fn standard(d: usize, seed: u64) -> Result<Self> {
        Self::random(d, 32, 32, seed)
    }

    /// `orthogonal` pairs of orthogonal Haar-random pure states and `mixed`
    /// pairs of independent random mixed states.
    pub fn random(d: usize, orthogonal: usize, mixed: usize, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(invalid("d", "pairs need dimension at least 2"));
        }
        if orthogonal + mixed == 0 {
            return Err(Error::EmptySampler);
        }
        let mut rng = seeded_rng(seed);
        let mut pairs = Vec::with_capacity(orthogonal + mixed);
        for _ in 0..orthogonal {
            let u = haar_unitary(&mut rng, d);
            let a: CVector = u.column(0).into_owned();
            let b: CVector = u.column(1).into_owned();
            pairs.push((DensityMatrix::pure(&a)?, DensityMatrix::pure(&b)?));
        }
        for _ in 0..mixed {
            let a = DensityMatrix::new(random_mixed_state(&mut rng, d))?;
            let b = DensityMatrix::new(random_mixed_state(&mut rng, d))?;
            pairs.push((a, b));
        }
        Ok(Self { pairs })
    }

    pub fn from_pairs(pairs: Vec<(DensityMatrix, DensityMatrix)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySampler);
        }
        if let Some((a, b)) = pairs.iter().find(|(a, b)| a.dim() != b.dim()) {
            return Err(dim_mismatch(a.dim(), b.dim()));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(DensityMatrix, DensityMatrix)] {
        &self.pairs
    }
}

/// Integral of |v| over {t : v(t) < -threshold}, by the trapezoid rule on the
/// grid.
///
/// Intervals with `include[i] == false` are skipped. When an interval straddles
/// the threshold, the crossing is located by bisection to [`BISECTION_TOL`]
/// using `eval(i, t)`, or by linear interpolation when no evaluator is given.
/// Dips strictly between two grid points above the threshold are not seen.
pub fn negative_part_integral(
    grid: &[f64],
    values: &[f64],
    threshold: f64,
    include: &[bool],
    eval: Option<&dyn Fn(usize, f64) -> Result<f64>>,
) -> Result<f64> {
    if values.len() != grid.len() || include.len() + 1 != grid.len().max(1) {
        return Err(dim_mismatch(grid.len(), values.len()));
    }
    let below = |v: f64| v < -threshold;
    let mut total = 0.0;
    for i in 0..grid.len().saturating_sub(1) {
        if !include[i] {
            continue;
        }
        let (a, b, va, vb) = (grid[i], grid[i + 1], values[i], values[i + 1]);
        match (below(va), below(vb)) {
            (false, false) => {}
            (true, true) => total += 0.5 * (va.abs() + vb.abs()) * (b - a),
            (a_below, _) => {
                let tau = match eval {
                    Some(f) => {
                        let (mut lo, mut hi) = (a, b);
                        while hi - lo > BISECTION_TOL {
                            let mid = 0.5 * (lo + hi);
                            if below(f(i, mid)?) == a_below {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        0.5 * (lo + hi)
                    }
                    None => a + (b - a) * (-threshold - va) / (vb - va),
                };
                let (width, v) = if a_below { (tau - a, va) } else { (b - tau, vb) };
                total += 0.5 * (v.abs() + threshold) * width;
            }
        }
    }
    Ok(total)
}

/// Outcome of maximizing a measure over sampled initial states.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub argmax_state: DensityMatrix,
    pub samples_used: usize,
    /// Integral per sampled state; `None` where the trajectory could not be
    /// computed.
    pub per_sample: Vec<Option<f64>>,
}

impl MeasureResult {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }
}

fn rank_stable(traj: &Trajectory) -> Vec<bool> {
    traj.supports().windows(2).map(|w| w[0].rank == w[1].rank).collect()
}

fn maximize(states: &[DensityMatrix], integral: impl Fn(&DensityMatrix) -> Result<f64> + Sync) -> Result<MeasureResult> {
    if states.is_empty() {
        return Err(Error::EmptySampler);
    }
    let outcomes: Vec<Result<f64>> = states.par_iter().map(&integral).collect();
    let mut per_sample = Vec::with_capacity(states.len());
    let mut best: Option<(usize, f64)> = None;
    let mut first_error = None;
    for (k, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(v) => {
                if best.is_none_or(|(_, b)| v > b) {
                    best = Some((k, v));
                }
                per_sample.push(Some(v));
            }
            Err(e) => {
                warn!("measure sample {k} skipped: {e}");
                first_error.get_or_insert(e);
                per_sample.push(None);
            }
        }
    }
    match best {
        Some((k, value)) => Ok(MeasureResult {
            value,
            argmax_state: states[k].clone(),
            samples_used: per_sample.iter().filter(|v| v.is_some()).count(),
            per_sample,
        }),
        None => Err(first_error.unwrap_or(Error::EmptySampler)),
    }
}

/// C_M(L): max over rho_0 of the integral of |dS/dt + Tr{Pi L^dag(rho)}| where
/// that quantity is below -eps_w. Intervals across a rank change are skipped.
pub fn measure_generator(
    family: &GeneratorFamily,
    sampler: &StateSampler,
    grid: &[f64],
    opts: &WitnessOptions,
) -> Result<MeasureResult> {
    check_grid(grid)?;
    let g = &family.generator;
    let violation = |t: f64, rho: &DensityMatrix, dot: &CMatrix| -> Result<f64> {
        Ok(entropy_rate(rho, dot)? + nonunitality_witness(g, t, rho)?)
    };
    maximize(sampler.states(), |rho0| {
        let traj = family.trajectory(rho0, grid)?;
        let values = traj
            .grid()
            .iter()
            .zip(traj.states().iter().zip(traj.derivatives()))
            .map(|(&t, (rho, dot))| violation(t, rho, dot))
            .collect::<Result<Vec<_>>>()?;
        let eval = |i: usize, tau: f64| -> Result<f64> {
            let piece = propagate(g, &traj.states()[i], &[grid[i], tau], &family.propagate)?;
            violation(tau, piece.last(), &piece.derivatives()[1])
        };
        negative_part_integral(grid, &values, opts.eps_w, &rank_stable(&traj), Some(&eval))
    })
}

/// C_M(M): max over rho_0 of the integral of |f(t)| where f(t) < -eps_w.
pub fn measure_channel<F: ChannelFamily + ?Sized>(
    family: &F,
    sampler: &StateSampler,
    grid: &[f64],
    opts: &WitnessOptions,
) -> Result<MeasureResult> {
    check_grid(grid)?;
    maximize(sampler.states(), |rho0| {
        let traj = family.trajectory(rho0, grid)?;
        let values = traj
            .grid()
            .iter()
            .zip(traj.states().iter().zip(traj.derivatives()))
            .map(|(&t, (rho, dot))| Ok(witness_f_channel(family, t, rho, dot, opts)?.f))
            .collect::<Result<Vec<_>>>()?;
        let eval = |_: usize, tau: f64| -> Result<f64> {
            let (rho, dot) = family.point(rho0, tau)?;
            Ok(witness_f_channel(family, tau, &rho, &dot, opts)?.f)
        };
        negative_part_integral(grid, &values, opts.eps_w, &rank_stable(&traj), Some(&eval))
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BlpResult {
    pub value: f64,
    pub argmax_pair: usize,
    pub per_pair: Vec<f64>,
}

/// max over pairs of the integral of sigma(t) = d/dt 1/2 ||rho1_t - rho2_t||_1
/// over {sigma > eps_w}, with sigma from central differences on the grid.
pub fn blp_measure<F: ChannelFamily + ?Sized>(
    family: &F,
    pairs: &PairSampler,
    grid: &[f64],
    eps_w: f64,
) -> Result<BlpResult> {
    check_grid(grid)?;
    if grid.len() < 3 {
        return Err(invalid("grid", "needs at least three points"));
    }
    let per_pair = pairs
        .pairs()
        .par_iter()
        .map(|(a, b)| {
            let ta = family.trajectory(a, grid)?;
            let tb = family.trajectory(b, grid)?;
            let dist: Vec<f64> = ta
                .states()
                .iter()
                .zip(tb.states())
                .map(|(x, y)| 0.5 * trace_norm(&(x.matrix() - y.matrix())))
                .collect();
            let n = grid.len();
            let neg_sigma: Vec<f64> = (0..n)
                .map(|i| {
                    let (lo, hi) = (i.saturating_sub(1), (i + 1).min(n - 1));
                    -(dist[hi] - dist[lo]) / (grid[hi] - grid[lo])
                })
                .collect();
            negative_part_integral(grid, &neg_sigma, eps_w, &vec![true; n - 1], None)
        })
        .collect::<Result<Vec<_>>>()?;
    let (argmax_pair, value) = per_pair
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (k, v)| if v > best.1 { (k, v) } else { best });
    Ok(BlpResult {
        value,
        argmax_pair,
        per_pair,
    })
}
