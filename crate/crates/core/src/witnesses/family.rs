//! Dynamics presented as a family of channels: trajectories from t = 0 and
//! short-time intermediate maps M_{t+eps,t}.

use crate::channels::generator::LindbladGenerator;
use crate::channels::map::Superoperator;
use crate::channels::zoo::gadc;
use crate::dynamics::closed_form::gadc_trajectory;
use crate::dynamics::propagate::{propagate, PropagateOptions};
use crate::dynamics::propagator::{intermediate_map, PropagatorOptions};
use crate::dynamics::trajectory::Trajectory;
use crate::error::{invalid, Result};
use crate::linalg::matrix::CMatrix;
use crate::linalg::state::DensityMatrix;

pub trait ChannelFamily: Sync {
    fn dim(&self) -> usize;

    fn label(&self) -> String;

    /// M_{t+eps,t} for eps >= 0.
    fn intermediate(&self, t: f64, eps: f64) -> Result<Superoperator>;

    /// rho_t = M_{t,0}(rho0) with derivatives on a grid starting at or after 0.
    fn trajectory(&self, rho0: &DensityMatrix, grid: &[f64]) -> Result<Trajectory>;

    /// rho_t and its derivative at a single time.
    fn point(&self, rho0: &DensityMatrix, t: f64) -> Result<(DensityMatrix, CMatrix)> {
        let traj = if t > 0.0 {
            self.trajectory(rho0, &[0.0, t])?
        } else {
            self.trajectory(rho0, &[t])?
        };
        let last = traj.len() - 1;
        Ok((traj.states()[last].clone(), traj.derivatives()[last].clone()))
    }
}

/// The GADC family with p_t = cos^2(omega t), eta_t = e^{-t}. The
/// intermediate map over [t, t + eps] is the family member M_eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadcFamily {
    pub omega: f64,
}

impl ChannelFamily for GadcFamily {
    fn dim(&self) -> usize {
        2
    }

    fn label(&self) -> String {
        format!("gadc(omega={})", self.omega)
    }

    fn intermediate(&self, _t: f64, eps: f64) -> Result<Superoperator> {
        Ok(gadc(eps, self.omega)?.to_superoperator())
    }

    fn trajectory(&self, rho0: &DensityMatrix, grid: &[f64]) -> Result<Trajectory> {
        if grid.first().is_some_and(|&t| t < 0.0) {
            return Err(invalid("grid", "GADC family is defined for t >= 0"));
        }
        Trajectory::from_closed_form(gadc_trajectory(self.omega, rho0.clone())?, grid)
    }
}

/// Family generated by a master equation, starting at t = 0.
#[derive(Debug, Clone)]
pub struct GeneratorFamily {
    pub generator: LindbladGenerator,
    pub propagate: PropagateOptions,
    pub propagator: PropagatorOptions,
}

impl GeneratorFamily {
    pub fn new(generator: LindbladGenerator) -> Self {
        Self {
            generator,
            propagate: PropagateOptions::default(),
            propagator: PropagatorOptions::default(),
        }
    }
}

impl ChannelFamily for GeneratorFamily {
    fn dim(&self) -> usize {
        self.generator.dim()
    }

    fn label(&self) -> String {
        format!("lindblad(dim={})", self.generator.dim())
    }

    fn intermediate(&self, t: f64, eps: f64) -> Result<Superoperator> {
        intermediate_map(&self.generator, t, t + eps, &self.propagator)
    }

    fn trajectory(&self, rho0: &DensityMatrix, grid: &[f64]) -> Result<Trajectory> {
        match grid.first() {
            Some(&t0) if t0 > 0.0 => {
                let mut full = Vec::with_capacity(grid.len() + 1);
                full.push(0.0);
                full.extend_from_slice(grid);
                let traj = propagate(&self.generator, rho0, &full, &self.propagate)?;
                traj.tail(1)
            }
            _ => propagate(&self.generator, rho0, grid, &self.propagate),
        }
    }
}
