//! The diamond norm of non-unitarity of unital channels.

pub mod bipartite;
pub mod optimize;
pub mod oslash;

pub use bipartite::{apply_on_system, PureBipartiteState};
pub use optimize::{diamond_norm_estimate, diamond_objective, OptimizerOptions, OslashResult};
pub use oslash::{
    diamond_distance, oslash_depolarizing_analytic, oslash_norm, oslash_objective, proposition7_bound,
    proposition7_check, success_probability, Proposition7Check,
};
