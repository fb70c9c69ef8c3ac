//! CP-divisibility evidence from interval maps and sampled rates.

use serde::Serialize;

use super::propagator::{intermediate_map, PropagatorOptions};
use super::trajectory::check_grid;
use crate::channels::generator::LindbladGenerator;
use crate::channels::map::{choi_of, trace_preservation_defect};
use crate::error::Result;
use crate::linalg::spectral::min_eigenvalue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisibilityVerdict {
    CpDivisible,
    /// Every interval map passed, but some sampled rate was negative, so the
    /// grid may be too coarse to expose a violation. P-divisibility is never
    /// certified.
    PDivisibleOnlyUndetermined,
    NotCpDivisible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalCheck {
    pub start: f64,
    pub end: f64,
    pub choi_min_eigenvalue: f64,
    pub trace_preservation_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateSample {
    pub t: f64,
    pub rates: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisibilityReport {
    pub intervals: Vec<IntervalCheck>,
    /// Rates at every grid point and interval midpoint.
    pub rate_samples: Vec<RateSample>,
    pub tolerance: f64,
    pub verdict: DivisibilityVerdict,
}

impl DivisibilityReport {
    pub fn min_choi_eigenvalue(&self) -> f64 {
        self.intervals.iter().map(|i| i.choi_min_eigenvalue).fold(f64::INFINITY, f64::min)
    }

    pub fn min_rate(&self) -> f64 {
        self.rate_samples
            .iter()
            .flat_map(|s| s.rates.iter().copied())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Build M_{t_{i+1}, t_i} for each consecutive grid pair and test its Choi
/// positivity and trace preservation within `tol`.
pub fn cp_divisibility_check(
    g: &LindbladGenerator,
    grid: &[f64],
    tol: f64,
    opts: &PropagatorOptions,
) -> Result<DivisibilityReport> {
    check_grid(grid)?;
    let mut intervals = Vec::with_capacity(grid.len().saturating_sub(1));
    let mut rate_samples = Vec::with_capacity(2 * grid.len());
    for (i, &t) in grid.iter().enumerate() {
        rate_samples.push(RateSample { t, rates: g.rates(t) });
        if let Some(&next) = grid.get(i + 1) {
            let mid = 0.5 * (t + next);
            rate_samples.push(RateSample {
                t: mid,
                rates: g.rates(mid),
            });
            let m = intermediate_map(g, t, next, opts)?;
            intervals.push(IntervalCheck {
                start: t,
                end: next,
                choi_min_eigenvalue: min_eigenvalue(&choi_of(&m))?,
                trace_preservation_defect: trace_preservation_defect(&m),
            });
        }
    }
    let violated = intervals
        .iter()
        .any(|c| c.choi_min_eigenvalue < -tol || c.trace_preservation_defect > tol);
    let negative_rate = rate_samples.iter().any(|s| s.rates.iter().any(|&r| r < 0.0));
    let verdict = if violated {
        DivisibilityVerdict::NotCpDivisible
    } else if negative_rate {
        DivisibilityVerdict::PDivisibleOnlyUndetermined
    } else {
        DivisibilityVerdict::CpDivisible
    };
    Ok(DivisibilityReport {
        intervals,
        rate_samples,
        tolerance: tol,
        verdict,
    })
}
