//! Dense complex Hermitian linear algebra: spectra, matrix functions on
//! supports, entropies, Schatten norms and partial traces.

pub mod derivative;
pub mod entropy;
pub mod matrix;
pub mod norms;
pub mod partial;
pub mod random;
pub mod spectral;
pub mod state;

pub use derivative::{trace_function, trace_function_derivative, TraceFunction};
pub use entropy::{relative_entropy, shannon_entropy, von_neumann_entropy, RelativeEntropy};
pub use matrix::{CMatrix, CVector};
pub use norms::{operator_norm, schatten_norm, trace_norm};
pub use partial::{partial_trace, Subsystem};
pub use spectral::{
    matrix_log_on_support, spectral_decompose, support_projector, EigenSystem, SupportProjector,
    ZERO_EIGENVALUE_TOL,
};
pub use state::DensityMatrix;
