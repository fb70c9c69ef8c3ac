//! Entropy change in open quantum dynamics.
//!
//! The crate simulates (time-dependent) Lindblad master equations and
//! evaluates entropy-change quantities on the result: the exact entropy rate,
//! lower and upper bounds on entropy change, non-Markovianity witnesses and
//! measures, non-unitality witnesses, and the diamond norm of non-unitarity.
//!
//! All logarithms are natural; entropies are in nats.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod nonunitarity;
pub mod witnesses;

pub use error::{Error, Result};
