//! Bounds on the entropy change Delta S(rho, N) = S(N(rho)) - S(rho).

use serde::Serialize;

use crate::channels::channel::QuantumChannel;
use crate::channels::generator::LindbladGenerator;
use crate::channels::map::{sub_unital_excess, LinearMap, Superoperator};
use crate::dynamics::propagator::{intermediate_map, PropagatorOptions};
use crate::error::{dim_mismatch, invalid, Error, Result};
use crate::linalg::entropy::{relative_entropy, von_neumann_entropy, RelativeEntropy};
use crate::linalg::matrix::{kron, trace_product, CMatrix};
use crate::linalg::norms::{operator_norm, trace_norm};
use crate::linalg::spectral::{log_from_eigensystem, EigenSystem, ZERO_EIGENVALUE_TOL};
use crate::linalg::state::DensityMatrix;

/// Largest eigenvalue of N(1) - 1 tolerated by the sub-unital bounds.
pub const SUB_UNITAL_TOL: f64 = 1e-10;
/// Tolerance on self-adjointness and unitality of semigroup generators.
pub const SEMIGROUP_TOL: f64 = 1e-9;

fn check_input<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != n.dim_in() {
        return Err(dim_mismatch(n.dim_in(), rho.dim()));
    }
    Ok(())
}

fn full_rank(rho: &DensityMatrix) -> Result<EigenSystem> {
    let eig = rho.eigensystem()?;
    if eig.min_eigenvalue() <= eig.zero_threshold(ZERO_EIGENVALUE_TOL) {
        return Err(Error::RankDeficient {
            min_eigenvalue: eig.min_eigenvalue(),
        });
    }
    Ok(eig)
}

fn check_sub_unital<M: LinearMap + ?Sized>(n: &M) -> Result<()> {
    let excess = sub_unital_excess(n)?;
    if excess > SUB_UNITAL_TOL {
        return Err(Error::NotSubUnital { excess });
    }
    Ok(())
}

/// N^dag o N (rho).
fn round_trip<M: LinearMap + ?Sized>(n: &M, rho: &CMatrix) -> Result<CMatrix> {
    let s = Superoperator::new(n.superoperator().into_owned(), n.dim_in(), n.dim_out())?;
    s.adjoint_compose().apply(rho)
}

/// Delta S(rho, N) = S(N(rho)) - S(rho).
pub fn entropy_change<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<f64> {
    check_input(n, rho)?;
    Ok(von_neumann_entropy(&n.apply(rho)?)? - von_neumann_entropy(rho)?)
}

/// Lemma 4: D(rho || N^dag o N(rho)), a lower bound on Delta S for positive
/// trace-preserving N.
pub fn entropy_change_lower_bound<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<RelativeEntropy> {
    check_input(n, rho)?;
    relative_entropy(rho, &round_trip(n, rho)?)
}

/// Lemma 5: Tr{[rho - N^dag o N(rho)] log rho} for sub-unital N and rho > 0.
pub fn entropy_change_upper_bound<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<f64> {
    check_input(n, rho)?;
    check_sub_unital(n)?;
    let log = log_from_eigensystem(&full_rank(rho)?, ZERO_EIGENVALUE_TOL);
    let diff = rho.matrix() - round_trip(n, rho)?;
    Ok(trace_product(&diff, &log).re)
}

/// Corollary 6: ||rho - N^dag o N(rho)||_1 ||log rho||_inf.
pub fn entropy_change_upper_bound_holder<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<f64> {
    check_input(n, rho)?;
    check_sub_unital(n)?;
    let log = log_from_eigensystem(&full_rank(rho)?, ZERO_EIGENVALUE_TOL);
    let diff = rho.matrix() - round_trip(n, rho)?;
    Ok(trace_norm(&diff) * operator_norm(&log))
}

/// The two-sided chain D(rho || N^dag N rho) <= Delta S <= trace form <= Hoelder form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyChangeChain {
    pub lower: RelativeEntropy,
    pub entropy_change: f64,
    pub upper: f64,
    pub upper_holder: f64,
}

impl EntropyChangeChain {
    pub fn evaluate<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            lower: entropy_change_lower_bound(n, rho)?,
            entropy_change: entropy_change(n, rho)?,
            upper: entropy_change_upper_bound(n, rho)?,
            upper_holder: entropy_change_upper_bound_holder(n, rho)?,
        })
    }

    pub fn holds(&self, slack: f64) -> bool {
        self.lower.le(self.entropy_change, slack)
            && self.entropy_change <= self.upper + slack
            && self.upper <= self.upper_holder + slack
    }
}

/// Both sides of Pinsker's inequality and its reverse form for
/// D(rho || N^dag o N(rho)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PinskerGap {
    pub relative_entropy: f64,
    /// ||rho - N^dag o N(rho)||_1.
    pub trace_distance: f64,
    pub half_trace_sq: f64,
    /// D / ||log rho||_inf, a lower bound on the trace distance.
    pub reverse_bound: f64,
}

impl PinskerGap {
    pub fn pinsker_holds(&self, slack: f64) -> bool {
        self.relative_entropy >= self.half_trace_sq - slack
    }

    pub fn reverse_holds(&self, slack: f64) -> bool {
        self.trace_distance >= self.reverse_bound - slack
    }
}

/// Requires N sub-unital, rho > 0 and N(rho) > 0.
pub fn pinsker_gap<M: LinearMap + ?Sized>(n: &M, rho: &DensityMatrix) -> Result<PinskerGap> {
    check_input(n, rho)?;
    check_sub_unital(n)?;
    let log = log_from_eigensystem(&full_rank(rho)?, ZERO_EIGENVALUE_TOL);
    let image = DensityMatrix::subnormalized(n.apply(rho)?)?;
    full_rank(&image)?;
    let back = round_trip(n, rho)?;
    let d = match relative_entropy(rho, &back)? {
        RelativeEntropy::Finite(v) => v,
        RelativeEntropy::Infinite => {
            return Err(Error::InvalidState("N^dag o N(rho) does not contain the support of rho".into()))
        }
    };
    let trace_distance = trace_norm(&(rho.matrix() - back));
    let log_norm = operator_norm(&log);
    Ok(PinskerGap {
        relative_entropy: d,
        trace_distance,
        half_trace_sq: 0.5 * trace_distance * trace_distance,
        reverse_bound: if log_norm > 0.0 { d / log_norm } else { 0.0 },
    })
}

/// Entropy change of E(rho_A) = F(rho_A (x) theta_C) against the bound
/// S(theta_C) + D(rho_A (x) theta_C || F^dag o F(rho_A (x) theta_C)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentBound {
    pub delta_s: f64,
    pub entropy_theta: f64,
    pub relative_term: RelativeEntropy,
}

impl EnvironmentBound {
    /// S(theta_C) + D term; +infinity when the relative entropy diverges.
    pub fn bound(&self) -> f64 {
        self.entropy_theta + self.relative_term.finite().unwrap_or(f64::INFINITY)
    }

    pub fn holds(&self, slack: f64) -> bool {
        self.delta_s >= self.bound() - slack
    }

    /// Equality case, attained exactly when F is a unitary interaction.
    pub fn is_tight(&self, tol: f64) -> bool {
        (self.delta_s - self.bound()).abs() <= tol
    }
}

/// `f` acts on A (x) C with A first.
pub fn environment_simulation_bound(
    f: &QuantumChannel,
    theta_c: &DensityMatrix,
    rho_a: &DensityMatrix,
) -> Result<EnvironmentBound> {
    let d_in = rho_a.dim() * theta_c.dim();
    if f.dim_in() != d_in {
        return Err(dim_mismatch(format!("{}x{}", rho_a.dim(), theta_c.dim()), f.dim_in()));
    }
    let joint = DensityMatrix::new(kron(rho_a, theta_c))?;
    let out = f.apply(&joint)?;
    let entropy_theta = von_neumann_entropy(theta_c)?;
    Ok(EnvironmentBound {
        delta_s: von_neumann_entropy(&out)? - von_neumann_entropy(rho_a)?,
        entropy_theta,
        relative_term: entropy_change_lower_bound(f, &joint)?,
    })
}

/// Entropy bounds for a self-adjoint unital semigroup M_t = e^{tL}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemigroupSandwich {
    /// -Tr{rho_0 log rho_2t}.
    pub lower: f64,
    /// S(rho_t).
    pub entropy: f64,
    /// -Tr{rho_2t log rho_0}.
    pub upper: f64,
    /// S(rho_t) - S(rho_0).
    pub entropy_change: f64,
    /// D(rho_0 || rho_2t).
    pub relative_entropy_bound: RelativeEntropy,
}

impl SemigroupSandwich {
    pub fn holds(&self, slack: f64) -> bool {
        self.lower <= self.entropy + slack
            && self.entropy <= self.upper + slack
            && self.relative_entropy_bound.le(self.entropy_change, slack)
    }
}

pub fn semigroup_sandwich(g: &LindbladGenerator, rho0: &DensityMatrix, t: f64) -> Result<SemigroupSandwich> {
    if !g.is_time_independent() {
        return Err(invalid("generator", "semigroup bounds need a time-independent generator"));
    }
    if !(t >= 0.0) {
        return Err(invalid("t", "must be non-negative"));
    }
    if rho0.dim() != g.dim() {
        return Err(dim_mismatch(g.dim(), rho0.dim()));
    }
    let defect = g.self_adjointness_defect(0.0);
    if defect > SEMIGROUP_TOL {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let defect = g.unitality_defect(0.0);
    if defect > SEMIGROUP_TOL {
        return Err(Error::NotUnital { defect });
    }
    let log0 = log_from_eigensystem(&full_rank(rho0)?, ZERO_EIGENVALUE_TOL);
    let opts = PropagatorOptions::default();
    let rho_t = intermediate_map(g, 0.0, t, &opts)?.apply(rho0)?;
    let rho_2t = DensityMatrix::new(intermediate_map(g, 0.0, 2.0 * t, &opts)?.apply(rho0)?)?;
    let log_2t = log_from_eigensystem(&full_rank(&rho_2t)?, ZERO_EIGENVALUE_TOL);
    let entropy = von_neumann_entropy(&rho_t)?;
    Ok(SemigroupSandwich {
        lower: -trace_product(rho0, &log_2t).re,
        entropy,
        upper: -trace_product(&rho_2t, &log0).re,
        entropy_change: entropy - von_neumann_entropy(rho0)?,
        relative_entropy_bound: relative_entropy(rho0, &rho_2t)?,
    })
}
