//! Time-dependent Lindblad generators in structural form (Hamiltonian terms
//! plus rate/jump-operator pairs).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{dim_mismatch, invalid, Result};
use crate::linalg::matrix::{anticommutator, c, commutator, hermitian_defect, identity, trace_product, CMatrix};

/// Pure scalar function of time wrapped for use as a custom coefficient.
#[derive(Clone)]
pub struct CustomFn {
    pub label: String,
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomFn({})", self.label)
    }
}

impl PartialEq for CustomFn {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.f, &other.f)
    }
}

/// Time-dependent coefficient. Builtin shapes serialize by tag; custom
/// closures do not serialize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeFunction {
    Constant { value: f64 },
    /// amplitude * cos^2(omega t + phase)
    CosineSquared { amplitude: f64, omega: f64, phase: f64 },
    /// amplitude * exp(rate t)
    Exponential { amplitude: f64, rate: f64 },
    /// offset + amplitude * sin(omega t + phase)
    Sinusoid { offset: f64, amplitude: f64, omega: f64, phase: f64 },
    #[serde(skip)]
    Custom(CustomFn),
}

impl TimeFunction {
    pub fn constant(value: f64) -> Self {
        TimeFunction::Constant { value }
    }

    pub fn custom(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TimeFunction::Custom(CustomFn {
            label: label.into(),
            f: Arc::new(f),
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TimeFunction::Constant { value } => *value,
            TimeFunction::CosineSquared { amplitude, omega, phase } => {
                let x = (omega * t + phase).cos();
                amplitude * x * x
            }
            TimeFunction::Exponential { amplitude, rate } => amplitude * (rate * t).exp(),
            TimeFunction::Sinusoid {
                offset,
                amplitude,
                omega,
                phase,
            } => offset + amplitude * (omega * t + phase).sin(),
            TimeFunction::Custom(c) => (c.f)(t),
        }
    }

    /// The same shape multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        match self.clone() {
            TimeFunction::Constant { value } => TimeFunction::Constant { value: k * value },
            TimeFunction::CosineSquared { amplitude, omega, phase } => TimeFunction::CosineSquared {
                amplitude: k * amplitude,
                omega,
                phase,
            },
            TimeFunction::Exponential { amplitude, rate } => TimeFunction::Exponential {
                amplitude: k * amplitude,
                rate,
            },
            TimeFunction::Sinusoid {
                offset,
                amplitude,
                omega,
                phase,
            } => TimeFunction::Sinusoid {
                offset: k * offset,
                amplitude: k * amplitude,
                omega,
                phase,
            },
            TimeFunction::Custom(cf) => {
                let inner = cf.f.clone();
                TimeFunction::custom(format!("{k}*{}", cf.label), move |t| k * inner(t))
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            TimeFunction::Constant { .. } => true,
            TimeFunction::CosineSquared { amplitude, omega, .. } => *amplitude == 0.0 || *omega == 0.0,
            TimeFunction::Exponential { amplitude, rate } => *amplitude == 0.0 || *rate == 0.0,
            TimeFunction::Sinusoid { amplitude, omega, .. } => *amplitude == 0.0 || *omega == 0.0,
            TimeFunction::Custom(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianTerm {
    pub coefficient: TimeFunction,
    pub matrix: CMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JumpTerm {
    pub rate: TimeFunction,
    pub operator: CMatrix,
    adag_a: CMatrix,
}

impl JumpTerm {
    pub fn new(rate: TimeFunction, operator: CMatrix) -> Self {
        let adag_a = operator.adjoint() * &operator;
        Self { rate, operator, adag_a }
    }

    /// A^dag A
    pub fn adag_a(&self) -> &CMatrix {
        &self.adag_a
    }
}

/// L_t(rho) = -i[H(t), rho] + sum_i gamma_i(t) (A_i rho A_i^dag - 1/2 {A_i^dag A_i, rho}),
/// with H(t) = sum_k c_k(t) H_k.
///
/// Rates may be negative; nothing here enforces complete positivity of the
/// resulting dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladGenerator {
    dim: usize,
    hamiltonian: Vec<HamiltonianTerm>,
    jumps: Vec<JumpTerm>,
    cutoff: Option<usize>,
}

impl LindbladGenerator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            hamiltonian: Vec::new(),
            jumps: Vec::new(),
            cutoff: None,
        }
    }

    pub fn with_hamiltonian_term(mut self, coefficient: TimeFunction, matrix: CMatrix) -> Result<Self> {
        self.check_shape(&matrix)?;
        let defect = hermitian_defect(&matrix);
        if defect > 1e-12 {
            return Err(invalid("hamiltonian", format!("not Hermitian (defect {defect:.3e})")));
        }
        self.hamiltonian.push(HamiltonianTerm { coefficient, matrix });
        Ok(self)
    }

    pub fn with_jump(mut self, rate: TimeFunction, operator: CMatrix) -> Result<Self> {
        self.check_shape(&operator)?;
        self.jumps.push(JumpTerm::new(rate, operator));
        Ok(self)
    }

    /// Mark the generator as a Fock-space truncation at `cutoff` levels.
    pub fn with_truncation(mut self, cutoff: usize) -> Self {
        self.cutoff = Some(cutoff);
        self
    }

    fn check_shape(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(dim_mismatch(
                format!("{0}x{0}", self.dim),
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    pub fn hamiltonian_terms(&self) -> &[HamiltonianTerm] {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[JumpTerm] {
        &self.jumps
    }

    pub fn hamiltonian(&self, t: f64) -> CMatrix {
        self.hamiltonian
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, term| acc + term.matrix.scale(term.coefficient.eval(t)))
    }

    pub fn rates(&self, t: f64) -> Vec<f64> {
        self.jumps.iter().map(|j| j.rate.eval(t)).collect()
    }

    pub fn is_time_independent(&self) -> bool {
        self.hamiltonian.iter().all(|h| h.coefficient.is_constant()) && self.jumps.iter().all(|j| j.rate.is_constant())
    }

    /// L_t(rho).
    pub fn apply(&self, t: f64, rho: &CMatrix) -> Result<CMatrix> {
        self.check_shape(rho)?;
        let h = self.hamiltonian(t);
        let mut out = commutator(&h, rho) * c(0.0, -1.0);
        for jump in &self.jumps {
            let g = jump.rate.eval(t);
            if g == 0.0 {
                continue;
            }
            let a = &jump.operator;
            let term = a * rho * a.adjoint() - anticommutator(&jump.adag_a, rho).scale(0.5);
            out += term.scale(g);
        }
        Ok(out)
    }

    /// L_t^dag(X) = i[H, X] + sum_i gamma_i (A_i^dag X A_i - 1/2 {X, A_i^dag A_i}).
    pub fn adjoint_apply(&self, t: f64, x: &CMatrix) -> Result<CMatrix> {
        self.check_shape(x)?;
        let h = self.hamiltonian(t);
        let mut out = commutator(&h, x) * c(0.0, 1.0);
        for jump in &self.jumps {
            let g = jump.rate.eval(t);
            if g == 0.0 {
                continue;
            }
            let a = &jump.operator;
            let term = a.adjoint() * x * a - anticommutator(x, &jump.adag_a).scale(0.5);
            out += term.scale(g);
        }
        Ok(out)
    }

    /// sum_i gamma_i(t) <[A_i^dag, A_i]>_rho, equal to -Tr{L_t^dag(rho)}.
    pub fn commutator_expectation(&self, t: f64, rho: &CMatrix) -> Result<f64> {
        self.check_shape(rho)?;
        let mut acc = 0.0;
        for jump in &self.jumps {
            let a = &jump.operator;
            let comm = a.adjoint() * a - a * a.adjoint();
            acc += jump.rate.eval(t) * trace_product(&comm, rho).re;
        }
        Ok(acc)
    }

    /// Column-stacking superoperator matrix of L_t.
    pub fn superoperator(&self, t: f64) -> CMatrix {
        let d = self.dim;
        let id = identity(d);
        let h = self.hamiltonian(t);
        let mut s = (id.kronecker(&h) - h.transpose().kronecker(&id)) * c(0.0, -1.0);
        for jump in &self.jumps {
            let g = jump.rate.eval(t);
            if g == 0.0 {
                continue;
            }
            let a = &jump.operator;
            let ada = &jump.adag_a;
            let term = a.conjugate().kronecker(a) - id.kronecker(ada).scale(0.5) - ada.transpose().kronecker(&id).scale(0.5);
            s += term.scale(g);
        }
        s
    }

    /// Largest entrywise |L_t(1)|; zero for unital generators.
    pub fn unitality_defect(&self, t: f64) -> f64 {
        let out = self.apply(t, &identity(self.dim)).expect("shape matches");
        crate::linalg::matrix::max_abs(&out)
    }

    /// Largest entrywise |L - L^dag| of the superoperator at time t.
    pub fn self_adjointness_defect(&self, t: f64) -> f64 {
        let s = self.superoperator(t);
        crate::linalg::matrix::max_abs_diff(&s, &s.adjoint())
    }
}
