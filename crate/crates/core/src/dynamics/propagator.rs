//! Intermediate maps M_{t,s} = T exp(int_s^t L_tau dtau) as superoperators.

use crate::channels::generator::LindbladGenerator;
use crate::channels::map::Superoperator;
use crate::error::{invalid, Error, Result};
use crate::linalg::matrix::{cr, max_abs_diff, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorOptions {
    /// Initial number of sub-steps.
    pub steps: usize,
    /// Entrywise agreement required between successive step doublings.
    pub tolerance: f64,
    pub max_doublings: u32,
}

impl Default for PropagatorOptions {
    fn default() -> Self {
        Self {
            steps: 8,
            tolerance: 1e-8,
            max_doublings: 16,
        }
    }
}

/// Ordered product exp(L_{tau_{n-1}} dtau) ... exp(L_{tau_0} dtau), each
/// generator sampled at its sub-interval midpoint.
fn ordered_product(g: &LindbladGenerator, s: f64, t: f64, steps: usize) -> CMatrix {
    let dt = (t - s) / steps as f64;
    let d2 = g.dim() * g.dim();
    (0..steps).fold(CMatrix::identity(d2, d2), |acc, k| {
        let mid = s + dt * (k as f64 + 0.5);
        (g.superoperator(mid) * cr(dt)).exp() * acc
    })
}

/// M_{t,s}, with the sub-step count doubled until successive products agree.
pub fn intermediate_map(g: &LindbladGenerator, s: f64, t: f64, opts: &PropagatorOptions) -> Result<Superoperator> {
    if !(s.is_finite() && t.is_finite()) || t < s {
        return Err(invalid("interval", format!("need s <= t, got [{s}, {t}]")));
    }
    let d = g.dim();
    if t == s {
        return Ok(Superoperator::identity(d));
    }
    if g.is_time_independent() {
        let m = (g.superoperator(s) * cr(t - s)).exp();
        return Ok(Superoperator::from_square(m, d));
    }
    let mut steps = opts.steps.max(1);
    let mut coarse = ordered_product(g, s, t, steps);
    for _ in 0..opts.max_doublings {
        steps *= 2;
        let fine = ordered_product(g, s, t, steps);
        if max_abs_diff(&fine, &coarse) <= opts.tolerance {
            return Ok(Superoperator::from_square(fine, d));
        }
        coarse = fine;
    }
    Err(Error::NonConvergence {
        what: "intermediate_map",
        detail: format!("[{s}, {t}] after {steps} sub-steps"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::generator::TimeFunction;
    use crate::channels::map::is_cptp;
    use crate::channels::zoo::{dephasing_generator, depolarizing_generator};
    use crate::linalg::matrix::{c, identity, pauli_x};

    /// Scaling-and-squaring Taylor exponential, independent of nalgebra's Pade.
    fn taylor_expm(a: &CMatrix) -> CMatrix {
        let norm = a.norm();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let x = a.unscale(2f64.powi(squarings));
        let mut term = identity(a.nrows());
        let mut sum = term.clone();
        for k in 1..30 {
            term = &term * &x / c(k as f64, 0.0);
            sum += &term;
        }
        (0..squarings).fold(sum, |m, _| &m * &m)
    }

    fn driven_dephasing() -> LindbladGenerator {
        dephasing_generator(TimeFunction::Sinusoid {
            offset: 1.0,
            amplitude: 0.8,
            omega: 3.0,
            phase: 0.0,
        })
        .with_hamiltonian_term(TimeFunction::CosineSquared { amplitude: 1.0, omega: 1.0, phase: 0.0 }, pauli_x())
        .unwrap()
    }

    #[test]
    fn time_independent_matches_direct_exponential() {
        let g = depolarizing_generator(2, 0.7)
            .with_hamiltonian_term(TimeFunction::constant(0.4), pauli_x())
            .unwrap();
        let m = intermediate_map(&g, 0.3, 1.8, &PropagatorOptions::default()).unwrap();
        let direct = taylor_expm(&(g.superoperator(0.0) * c(1.5, 0.0)));
        assert!(max_abs_diff(m.matrix(), &direct) <= 1e-9);
    }

    #[test]
    fn semigroup_property() {
        let g = depolarizing_generator(3, 0.4);
        let opts = PropagatorOptions::default();
        let m1 = intermediate_map(&g, 0.0, 0.8, &opts).unwrap();
        let m2 = intermediate_map(&g, 0.0, 1.6, &opts).unwrap();
        assert!(max_abs_diff(m1.then(&m1).unwrap().matrix(), m2.matrix()) <= 1e-7);
    }

    #[test]
    fn composition_law() {
        let g = driven_dephasing();
        let opts = PropagatorOptions::default();
        let (s, r, t) = (0.1, 0.7, 1.5);
        let direct = intermediate_map(&g, s, t, &opts).unwrap();
        let split = intermediate_map(&g, s, r, &opts)
            .unwrap()
            .then(&intermediate_map(&g, r, t, &opts).unwrap())
            .unwrap();
        assert!(max_abs_diff(direct.matrix(), split.matrix()) <= 1e-7);
    }

    #[test]
    fn dephasing_interval_map_is_cptp() {
        let m = intermediate_map(&driven_dephasing(), 0.0, 2.0, &PropagatorOptions::default()).unwrap();
        let report = is_cptp(&m, 1e-9).unwrap();
        assert!(report.choi_min_eigenvalue >= -1e-9);
        assert!(report.trace_preserving);
    }

    #[test]
    fn degenerate_and_invalid_intervals() {
        let g = driven_dephasing();
        let m = intermediate_map(&g, 1.0, 1.0, &PropagatorOptions::default()).unwrap();
        assert_eq!(m, Superoperator::identity(2));
        assert!(intermediate_map(&g, 1.0, 0.5, &PropagatorOptions::default()).is_err());
    }
}
