//! Entropic witnesses of non-Markovianity and non-unitality, entropy-change
//! bounds, and decoherence measures.

pub mod bounds;
pub mod family;
pub mod markov;
pub mod measures;

pub use bounds::{
    entropy_change, entropy_change_lower_bound, entropy_change_upper_bound, entropy_change_upper_bound_holder,
    environment_simulation_bound, pinsker_gap, semigroup_sandwich, EntropyChangeChain, EnvironmentBound, PinskerGap,
    SemigroupSandwich,
};
pub use family::{ChannelFamily, GadcFamily, GeneratorFamily};
pub use markov::{
    eps_derivative, gadc_f_closed_form, nonunitality_witness, theorem2_bound, witness_f_channel, witness_scan,
    WitnessOptions, WitnessReport,
};
pub use measures::{
    blp_measure, measure_channel, measure_generator, negative_part_integral, BlpResult, MeasureResult, PairSampler,
    StateSampler,
};
