//! Trajectories known in closed form, evaluated directly instead of integrated.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::channels::zoo::gadc;
use crate::channels::LinearMap;
use crate::error::{invalid, Result};
use crate::linalg::matrix::{diag, CMatrix};
use crate::linalg::state::DensityMatrix;

pub type MatrixFn = Arc<dyn Fn(f64) -> Result<CMatrix> + Send + Sync>;

/// t -> rho_t, optionally with an exact t -> d(rho_t)/dt.
#[derive(Clone)]
pub struct ClosedForm {
    label: String,
    state: MatrixFn,
    derivative: Option<MatrixFn>,
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedForm")
            .field("label", &self.label)
            .field("exact_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl ClosedForm {
    pub fn new(label: impl Into<String>, state: impl Fn(f64) -> Result<CMatrix> + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            state: Arc::new(state),
            derivative: None,
        }
    }

    pub fn with_derivative(mut self, derivative: impl Fn(f64) -> Result<CMatrix> + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn state(&self, t: f64) -> Result<DensityMatrix> {
        DensityMatrix::new((self.state)(t)?)
    }

    /// Exact derivative when available, otherwise a central difference with
    /// step `h`, falling back to a second-order forward difference when
    /// `t - h` lies before `t_min`.
    pub fn derivative(&self, t: f64, h: f64, t_min: f64) -> Result<CMatrix> {
        if let Some(d) = &self.derivative {
            return d(t);
        }
        if !(h > 0.0) {
            return Err(invalid("h", "finite-difference step must be positive"));
        }
        let f = |s: f64| (self.state)(s);
        if t - h >= t_min {
            Ok((f(t + h)? - f(t - h)?).unscale(2.0 * h))
        } else {
            Ok((f(t)?.scale(-3.0) + f(t + h)?.scale(4.0) - f(t + 2.0 * h)?).unscale(2.0 * h))
        }
    }
}

/// rho_t = (1 - e^{-t})|0><0| + e^{-t}|1><1|.
pub fn damping_example() -> ClosedForm {
    ClosedForm::new("damping", |t| {
        let e = (-t).exp();
        Ok(diag(&[1.0 - e, e]))
    })
    .with_derivative(|t| {
        let e = (-t).exp();
        Ok(diag(&[e, -e]))
    })
}

/// rho_t = cos^2(pi t)|0><0| + sin^2(pi t)|1><1|.
pub fn oscillatory_example() -> ClosedForm {
    ClosedForm::new("oscillatory", |t| {
        let c = (PI * t).cos().powi(2);
        Ok(diag(&[c, 1.0 - c]))
    })
    .with_derivative(|t| {
        let r = PI * (2.0 * PI * t).sin();
        Ok(diag(&[-r, r]))
    })
}

/// Analytic entropy rate of [`oscillatory_example`].
pub fn oscillatory_entropy_rate(t: f64) -> f64 {
    let (c2, s2) = ((PI * t).cos().powi(2), (PI * t).sin().powi(2));
    PI * (2.0 * PI * t).sin() * (c2.ln() - s2.ln())
}

/// Analytic entropy rate of [`damping_example`] for t > 0.
pub fn damping_entropy_rate(t: f64) -> f64 {
    let e = (-t).exp();
    e * (e / (1.0 - e)).ln()
}

/// GADC trajectory t -> Phi_t(rho0) with p = cos^2(omega t), eta = e^{-t}.
pub fn gadc_trajectory(omega: f64, rho0: DensityMatrix) -> Result<ClosedForm> {
    if rho0.dim() != 2 {
        return Err(invalid("rho0", "GADC acts on a qubit"));
    }
    Ok(ClosedForm::new(format!("gadc(omega={omega})"), move |t| gadc(t, omega)?.apply(&rho0)))
}
