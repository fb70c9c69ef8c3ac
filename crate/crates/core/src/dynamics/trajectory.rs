//! Sampled trajectories: states, derivatives and supports on a time grid.

use std::fmt::Write as _;

use serde::Serialize;

use super::closed_form::ClosedForm;
use super::rate::entropy_rate;
use crate::error::{invalid, Result};
use crate::linalg::entropy::von_neumann_entropy;
use crate::linalg::matrix::{trace, trace_product, vec, CMatrix};
use crate::linalg::spectral::{support_from_eigensystem, SupportProjector, ZERO_EIGENVALUE_TOL};
use crate::linalg::state::DensityMatrix;

/// States rho_t on a strictly increasing grid with their time derivatives and
/// support projectors.
#[derive(Debug, Clone)]
pub struct Trajectory {
    grid: Vec<f64>,
    states: Vec<DensityMatrix>,
    derivatives: Vec<CMatrix>,
    supports: Vec<SupportProjector>,
    trace_defects: Vec<f64>,
    source: Option<ClosedForm>,
}

/// Worst-case violations of the trajectory invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryDefects {
    /// max |Tr rho_t - 1| before renormalization.
    pub trace: f64,
    pub min_eigenvalue: f64,
    /// max |Tr rho_dot_t|.
    pub derivative_trace: f64,
    /// max |Tr Pi_t rho_dot_t| over points whose neighbours share their rank.
    pub support_derivative_trace: f64,
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(invalid("grid", "empty"));
    }
    if grid.iter().any(|t| !t.is_finite()) {
        return Err(invalid("grid", "non-finite time"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("grid", "times must be strictly increasing"));
    }
    Ok(())
}

/// `n` points evenly spaced on [t0, t1].
pub fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![t0],
        _ => (0..n).map(|k| t0 + (t1 - t0) * k as f64 / (n - 1) as f64).collect(),
    }
}

impl Trajectory {
    pub(crate) fn assemble(
        grid: Vec<f64>,
        states: Vec<DensityMatrix>,
        derivatives: Vec<CMatrix>,
        trace_defects: Vec<f64>,
        source: Option<ClosedForm>,
    ) -> Result<Self> {
        let supports = states
            .iter()
            .map(|s| Ok(support_from_eigensystem(&s.eigensystem()?, ZERO_EIGENVALUE_TOL)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            states,
            derivatives,
            supports,
            trace_defects,
            source,
        })
    }

    /// Sample a closed-form trajectory. Without an exact derivative, rho_dot is
    /// a central difference with step tied to the grid spacing (one-sided at
    /// the first point).
    pub fn from_closed_form(cf: ClosedForm, grid: &[f64]) -> Result<Self> {
        check_grid(grid)?;
        let spacing = grid.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let h = (spacing * 1e-2).min(1e-5);
        let t_min = grid[0];
        let states = grid.iter().map(|&t| cf.state(t)).collect::<Result<Vec<_>>>()?;
        let derivatives = grid
            .iter()
            .map(|&t| cf.derivative(t, h, t_min))
            .collect::<Result<Vec<_>>>()?;
        let defects = vec![0.0; grid.len()];
        Self::assemble(grid.to_vec(), states, derivatives, defects, Some(cf))
    }

    /// The trajectory without its first `skip` points.
    pub fn tail(&self, skip: usize) -> Result<Self> {
        if skip >= self.len() {
            return Err(invalid("skip", format!("{skip} points requested from a trajectory of {}", self.len())));
        }
        Ok(Self {
            grid: self.grid[skip..].to_vec(),
            states: self.states[skip..].to_vec(),
            derivatives: self.derivatives[skip..].to_vec(),
            supports: self.supports[skip..].to_vec(),
            trace_defects: self.trace_defects[skip..].to_vec(),
            source: self.source.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn derivatives(&self) -> &[CMatrix] {
        &self.derivatives
    }

    pub fn supports(&self) -> &[SupportProjector] {
        &self.supports
    }

    /// |Tr rho - 1| removed by renormalization at each grid point.
    pub fn trace_defects(&self) -> &[f64] {
        &self.trace_defects
    }

    pub fn source(&self) -> Option<&ClosedForm> {
        self.source.as_ref()
    }

    pub fn last(&self) -> &DensityMatrix {
        self.states.last().expect("trajectories are non-empty")
    }

    pub fn entropies(&self) -> Result<Vec<f64>> {
        self.states.iter().map(|s| von_neumann_entropy(s)).collect()
    }

    /// Theorem 1 rate -Tr{rho_dot log rho} at every grid point.
    pub fn entropy_rates(&self) -> Result<Vec<f64>> {
        self.states
            .iter()
            .zip(&self.derivatives)
            .map(|(s, d)| entropy_rate(s, d))
            .collect()
    }

    pub fn defects(&self) -> Result<TrajectoryDefects> {
        let mut out = TrajectoryDefects {
            trace: self.trace_defects.iter().copied().fold(0.0, f64::max),
            min_eigenvalue: f64::INFINITY,
            derivative_trace: 0.0,
            support_derivative_trace: 0.0,
        };
        let n = self.len();
        for i in 0..n {
            out.min_eigenvalue = out.min_eigenvalue.min(self.states[i].eigensystem()?.min_eigenvalue());
            out.derivative_trace = out.derivative_trace.max(trace(&self.derivatives[i]).norm());
            let rank = self.supports[i].rank;
            let stable = (i == 0 || self.supports[i - 1].rank == rank) && (i + 1 == n || self.supports[i + 1].rank == rank);
            if stable {
                let v = trace_product(&self.supports[i].matrix, &self.derivatives[i]).norm();
                out.support_derivative_trace = out.support_derivative_trace.max(v);
            }
        }
        Ok(out)
    }

    /// Delimited table with columns `t`, then `re_k` and `im_k` for every
    /// entry k of vec(rho) in column-stacking order, then `entropy` and
    /// `entropy_rate`. Numbers use a fixed 12-digit exponent format.
    pub fn to_table(&self, delimiter: char) -> Result<String> {
        let d = self.states.first().map_or(0, |s| s.dim());
        let mut out = String::from("t");
        for k in 0..d * d {
            let _ = write!(out, "{delimiter}re_{k}{delimiter}im_{k}");
        }
        let _ = writeln!(out, "{delimiter}entropy{delimiter}entropy_rate");
        let entropies = self.entropies()?;
        let rates = self.entropy_rates()?;
        for i in 0..self.len() {
            let _ = write!(out, "{:.12e}", self.grid[i]);
            for z in vec(&self.states[i]).iter() {
                let _ = write!(out, "{delimiter}{:.12e}{delimiter}{:.12e}", z.re, z.im);
            }
            let _ = writeln!(out, "{delimiter}{:.12e}{delimiter}{:.12e}", entropies[i], rates[i]);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::closed_form::{damping_example, oscillatory_example};

    #[test]
    fn grid_validation() {
        assert!(check_grid(&[]).is_err());
        assert!(check_grid(&[0.0, 0.0]).is_err());
        assert!(check_grid(&[0.0, f64::NAN]).is_err());
        assert!(check_grid(&[0.0, 0.5, 1.0]).is_ok());
        assert_eq!(uniform_grid(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn closed_form_invariants() {
        let grid = uniform_grid(0.0, 3.0, 61);
        for cf in [damping_example(), oscillatory_example()] {
            let traj = Trajectory::from_closed_form(cf, &grid).unwrap();
            let d = traj.defects().unwrap();
            assert!(d.min_eigenvalue > -1e-12);
            assert!(d.derivative_trace <= 1e-9);
            assert!(d.support_derivative_trace <= 1e-8);
        }
    }

    #[test]
    fn table_layout() {
        let traj = Trajectory::from_closed_form(damping_example(), &[0.5, 1.0]).unwrap();
        let table = traj.to_table(',').unwrap();
        let lines: Vec<_> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "t,re_0,im_0,re_1,im_1,re_2,im_2,re_3,im_3,entropy,entropy_rate");
        assert_eq!(lines[1].split(',').count(), 11);
    }
}
