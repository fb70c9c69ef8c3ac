//! Quantum channels (Kraus form), general linear maps (superoperator form),
//! Lindblad generators, and the builtin channel zoo.

pub mod channel;
pub mod generator;
pub mod map;
pub mod serialize;
pub mod zoo;

pub use channel::QuantumChannel;
pub use generator::{LindbladGenerator, TimeFunction};
pub use map::{choi_of, is_cptp, unitality_class, CptpReport, LinearMap, Superoperator, UnitalityClass};
pub use zoo::{
    bosonic_generator, dephasing_generator, depolarizing, depolarizing_generator, gadc, thermal_state,
};
