//! Master-equation integration, intermediate propagators, the exact entropy
//! rate, and CP-divisibility checks.

pub mod closed_form;
pub mod divisibility;
pub mod propagate;
pub mod propagator;
pub mod rate;
pub mod trajectory;

pub use closed_form::{damping_example, gadc_trajectory, oscillatory_example, ClosedForm};
pub use divisibility::{cp_divisibility_check, DivisibilityReport, DivisibilityVerdict};
pub use propagate::{propagate, propagate_many, PropagateOptions};
pub use propagator::{intermediate_map, PropagatorOptions};
pub use rate::{entropy_rate, entropy_rate_fd};
pub use trajectory::{uniform_grid, Trajectory, TrajectoryDefects};
