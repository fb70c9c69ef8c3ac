//! Fixed-step RK4 integration of the master equation rho_dot = L_t(rho).

use log::debug;
use rayon::prelude::*;

use super::trajectory::{check_grid, Trajectory};
use crate::channels::generator::LindbladGenerator;
use crate::channels::zoo::{fock_tail_mass, DEFAULT_TAIL_BOUND};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::matrix::{hermitian_part, CMatrix};
use crate::linalg::norms::operator_norm;
use crate::linalg::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagateOptions {
    /// Trace-norm agreement target per unit time between successive step halvings.
    pub tolerance: f64,
    pub max_refinements: u32,
    /// Largest tolerated negative eigenvalue before integration is declared failed.
    pub psd_tolerance: f64,
    /// Fail when the Fock tail mass of a truncated generator exceeds `tail_bound`.
    pub enforce_tail: bool,
    pub tail_bound: f64,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-7,
            max_refinements: 16,
            psd_tolerance: 1e-6,
            enforce_tail: true,
            tail_bound: DEFAULT_TAIL_BOUND,
        }
    }
}

/// Bound on the operator norm of L_t (as a map on the operator-norm space)
/// used to size the first step: 2|H(t)| + 2 sum_i |gamma_i(t)| |A_i|^2.
struct GeneratorScale {
    hamiltonian: Vec<f64>,
    jumps: Vec<f64>,
}

impl GeneratorScale {
    fn new(g: &LindbladGenerator) -> Self {
        Self {
            hamiltonian: g.hamiltonian_terms().iter().map(|h| operator_norm(&h.matrix)).collect(),
            jumps: g.jumps().iter().map(|j| operator_norm(&j.operator).powi(2)).collect(),
        }
    }

    fn at(&self, g: &LindbladGenerator, t: f64) -> f64 {
        let h: f64 = g
            .hamiltonian_terms()
            .iter()
            .zip(&self.hamiltonian)
            .map(|(term, n)| term.coefficient.eval(t).abs() * n)
            .sum();
        let j: f64 = g.jumps().iter().zip(&self.jumps).map(|(jump, n)| jump.rate.eval(t).abs() * n).sum();
        2.0 * (h + j)
    }
}

fn rk4(g: &LindbladGenerator, t0: f64, dt: f64, steps: usize, rho: &CMatrix) -> Result<CMatrix> {
    let h = dt / steps as f64;
    let mut x = rho.clone();
    for k in 0..steps {
        let t = t0 + h * k as f64;
        let k1 = g.apply(t, &x)?;
        let k2 = g.apply(t + 0.5 * h, &(&x + k1.scale(0.5 * h)))?;
        let k3 = g.apply(t + 0.5 * h, &(&x + k2.scale(0.5 * h)))?;
        let k4 = g.apply(t + h, &(&x + k3.scale(h)))?;
        x += (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
    }
    Ok(x)
}

/// Upper bound on the trace norm from the Frobenius norm.
fn trace_norm_bound(a: &CMatrix) -> f64 {
    a.norm() * (a.nrows() as f64).sqrt()
}

/// Integrate one grid interval, halving the step until two successive
/// refinements agree within `tolerance * dt`.
fn step_interval(
    g: &LindbladGenerator,
    scale: &GeneratorScale,
    t0: f64,
    dt: f64,
    rho: &CMatrix,
    opts: &PropagateOptions,
) -> Result<CMatrix> {
    let bound = scale.at(g, t0).max(scale.at(g, t0 + dt));
    let mut steps = ((dt * bound).ceil() as usize).max(1);
    let target = opts.tolerance * dt + 1e-13;
    let mut coarse = rk4(g, t0, dt, steps, rho)?;
    for _ in 0..opts.max_refinements {
        steps *= 2;
        let fine = rk4(g, t0, dt, steps, rho)?;
        let gap = trace_norm_bound(&(&fine - &coarse));
        if gap <= target {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::NonConvergence {
        what: "propagate",
        detail: format!("interval [{t0}, {}] after {steps} RK4 steps", t0 + dt),
    })
}

/// Integrate from `rho0` at `grid[0]` and sample at every grid point.
///
/// Each state is Hermitized and renormalized; the removed trace defect is
/// recorded. Derivatives are L_t(rho_t).
pub fn propagate(
    g: &LindbladGenerator,
    rho0: &DensityMatrix,
    grid: &[f64],
    opts: &PropagateOptions,
) -> Result<Trajectory> {
    check_grid(grid)?;
    if rho0.dim() != g.dim() {
        return Err(dim_mismatch(g.dim(), rho0.dim()));
    }
    let mut states = Vec::with_capacity(grid.len());
    let mut defects = Vec::with_capacity(grid.len());
    let scale = GeneratorScale::new(g);
    let mut current = rho0.matrix().clone();
    for (i, &t) in grid.iter().enumerate() {
        if i > 0 {
            current = step_interval(g, &scale, grid[i - 1], t - grid[i - 1], &current, opts)?;
        }
        let herm = hermitian_part(&current);
        let tr = herm.trace().re;
        let defect = (tr - 1.0).abs();
        if defect > 1e-12 {
            debug!("renormalized trace defect {defect:.3e} at t = {t}");
        }
        let state = DensityMatrix::from_raw_normalized(herm);
        let min_eigenvalue = state.eigensystem()?.min_eigenvalue();
        if min_eigenvalue < -opts.psd_tolerance {
            return Err(Error::IntegrationFailure { t, min_eigenvalue });
        }
        if let (Some(cutoff), true) = (g.cutoff(), opts.enforce_tail) {
            let mass = fock_tail_mass(&state, cutoff);
            if mass > opts.tail_bound {
                return Err(Error::TailMassBreach {
                    t,
                    mass,
                    bound: opts.tail_bound,
                });
            }
        }
        current = state.matrix().clone();
        states.push(state);
        defects.push(defect);
    }
    let derivatives = grid
        .iter()
        .zip(&states)
        .map(|(&t, s)| g.apply(t, s).map(|d| hermitian_part(&d)))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::assemble(grid.to_vec(), states, derivatives, defects, None)
}

/// Propagate several initial states in parallel.
pub fn propagate_many(
    g: &LindbladGenerator,
    initial: &[DensityMatrix],
    grid: &[f64],
    opts: &PropagateOptions,
) -> Result<Vec<Trajectory>> {
    initial.par_iter().map(|rho| propagate(g, rho, grid, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::generator::TimeFunction;
    use crate::channels::zoo::{additive_noise_generator, dephasing_generator, lossy_generator, thermal_state};
    use crate::dynamics::trajectory::uniform_grid;
    use crate::linalg::matrix::{c, cr, ket};
    use crate::linalg::norms::trace_norm;
    use crate::linalg::random::{ginibre, random_full_rank_state, random_hermitian, seeded_rng};

    fn plus_state() -> DensityMatrix {
        DensityMatrix::pure(&(ket(2, 0) + ket(2, 1))).unwrap()
    }

    #[test]
    fn dephasing_matches_closed_form() {
        let g = dephasing_generator(TimeFunction::constant(1.0));
        let grid = uniform_grid(0.0, 3.0, 31);
        let traj = propagate(&g, &plus_state(), &grid, &PropagateOptions::default()).unwrap();
        for (t, s) in traj.grid().iter().zip(traj.states()) {
            let expect = CMatrix::from_row_slice(2, 2, &[cr(0.5), cr(0.5 * (-t).exp()), cr(0.5 * (-t).exp()), cr(0.5)]);
            assert!(trace_norm(&(s.matrix() - expect)) < 1e-7 * (1.0 + t));
        }
    }

    #[test]
    fn fixed_points_stay_fixed() {
        let rho = thermal_state(0.2, 24, 1e-8).unwrap();
        let g = lossy_generator(0.2, 24).unwrap();
        let traj = propagate(&g, &rho, &uniform_grid(0.0, 2.0, 11), &PropagateOptions::default()).unwrap();
        for s in traj.states() {
            assert!(trace_norm(&(s.matrix() - rho.matrix())) <= 1e-7);
        }
    }

    #[test]
    fn additive_noise_preserves_trace() {
        let rho = thermal_state(0.2, 30, 1e-8).unwrap();
        let g = additive_noise_generator(0.2, 30).unwrap();
        let traj = propagate(&g, &rho, &uniform_grid(0.0, 1.0, 6), &PropagateOptions::default()).unwrap();
        assert!(traj.trace_defects().iter().all(|&d| d <= 1e-8));
        assert!(traj.defects().unwrap().derivative_trace <= 1e-9);
    }

    #[test]
    fn tail_breach_is_reported_and_can_be_disabled() {
        let rho = thermal_state(0.5, 10, 1e-2).unwrap();
        let g = crate::channels::zoo::amplifier_generator(0.5, 10).unwrap();
        let grid = uniform_grid(0.0, 1.0, 5);
        let opts = PropagateOptions::default();
        assert!(matches!(propagate(&g, &rho, &grid, &opts), Err(Error::TailMassBreach { .. })));
        let relaxed = PropagateOptions {
            enforce_tail: false,
            ..opts
        };
        assert!(propagate(&g, &rho, &grid, &relaxed).is_ok());
    }

    #[test]
    fn negative_rates_can_fail_integration() {
        let g = dephasing_generator(TimeFunction::constant(-1.0));
        let err = propagate(&g, &plus_state(), &uniform_grid(0.0, 1.0, 11), &PropagateOptions::default());
        assert!(matches!(err, Err(Error::IntegrationFailure { .. })));
    }

    #[test]
    fn random_generators_keep_invariants() {
        let mut rng = seeded_rng(7);
        for d in [2, 3] {
            let g = LindbladGenerator::new(d)
                .with_hamiltonian_term(TimeFunction::constant(1.0), random_hermitian(&mut rng, d))
                .unwrap()
                .with_jump(
                    TimeFunction::Sinusoid {
                        offset: 1.0,
                        amplitude: 0.5,
                        omega: 2.0,
                        phase: 0.0,
                    },
                    ginibre(&mut rng, d, d).scale(0.5),
                )
                .unwrap()
                .with_jump(TimeFunction::constant(0.3), ginibre(&mut rng, d, d).map(|z| z * c(0.0, 0.5)))
                .unwrap();
            let rho = DensityMatrix::new(random_full_rank_state(&mut rng, d)).unwrap();
            let traj = propagate(&g, &rho, &uniform_grid(0.0, 2.0, 21), &PropagateOptions::default()).unwrap();
            let defects = traj.defects().unwrap();
            assert!(defects.trace <= 1e-8);
            assert!(defects.min_eigenvalue >= -1e-8);
            assert!(defects.derivative_trace <= 1e-9);
            assert!(defects.support_derivative_trace <= 1e-8);
        }
    }
}
