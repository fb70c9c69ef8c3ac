//! Scenario kinds and the parameters each one requires.

use std::fmt::{self, Write as _};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Fig1Gadc,
    Fig2Depolarizing,
    AppendixBDamping,
    AppendixBOscillatory,
    GaussianBounds,
    DecoherenceMeasures,
    Custom,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        ScenarioKind::Fig1Gadc,
        ScenarioKind::Fig2Depolarizing,
        ScenarioKind::AppendixBDamping,
        ScenarioKind::AppendixBOscillatory,
        ScenarioKind::GaussianBounds,
        ScenarioKind::DecoherenceMeasures,
        ScenarioKind::Custom,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ScenarioKind::Fig1Gadc => "fig1_gadc",
            ScenarioKind::Fig2Depolarizing => "fig2_depolarizing",
            ScenarioKind::AppendixBDamping => "appendixB_damping",
            ScenarioKind::AppendixBOscillatory => "appendixB_oscillatory",
            ScenarioKind::GaussianBounds => "gaussian_bounds",
            ScenarioKind::DecoherenceMeasures => "decoherence_measures",
            ScenarioKind::Custom => "custom",
        }
    }

    pub fn spec(self) -> &'static ScenarioSpec {
        CATALOG.iter().find(|s| s.kind == self).expect("every kind is catalogued")
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|k| k.tag() == s).ok_or_else(|| {
            let tags: Vec<_> = Self::ALL.iter().map(|k| k.tag()).collect();
            format!("unknown scenario kind `{s}`; expected one of {}", tags.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldType {
    Float,
    Integer,
    FloatList,
    Text,
    /// Tagged time function, e.g. `{ kind = "constant", value = 1.0 }`.
    TimeFunction,
    /// Generator document with `dim`, `hamiltonian`, `jumps`, optional `cutoff`.
    Generator,
    /// Matrix document with `rows`, `cols` and `[re, im]` entries.
    Matrix,
}

impl FieldType {
    pub fn describe(self) -> &'static str {
        match self {
            FieldType::Float => "float",
            FieldType::Integer => "integer",
            FieldType::FloatList => "list of floats",
            FieldType::Text => "string",
            FieldType::TimeFunction => "time function table",
            FieldType::Generator => "generator table",
            FieldType::Matrix => "matrix table",
        }
    }
}

/// When a field is required: always, or only for one value of `process`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    Always,
    WhenProcess(&'static str),
}

#[derive(Debug, Clone, Copy)]
pub struct FieldSpec {
    pub name: &'static str,
    pub ty: FieldType,
    pub required: Requirement,
    pub doc: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    pub summary: &'static str,
    pub fields: &'static [FieldSpec],
}

impl ScenarioSpec {
    pub fn field(&self, name: &str) -> Option<&FieldSpec> {
        self.fields.iter().find(|f| f.name == name)
    }
}

const fn always(name: &'static str, ty: FieldType, doc: &'static str) -> FieldSpec {
    FieldSpec {
        name,
        ty,
        required: Requirement::Always,
        doc,
    }
}

const fn when(process: &'static str, name: &'static str, ty: FieldType, doc: &'static str) -> FieldSpec {
    FieldSpec {
        name,
        ty,
        required: Requirement::WhenProcess(process),
        doc,
    }
}

const T_START: FieldSpec = always("t_start", FieldType::Float, "first time point");
const T_END: FieldSpec = always("t_end", FieldType::Float, "last time point");
const T_STEP: FieldSpec = always("t_step", FieldType::Float, "grid spacing; (t_end - t_start) / t_step must be an integer");
const TOLERANCE: FieldSpec = always("tolerance", FieldType::Float, "tolerance of the scenario checks");
const SEED: FieldSpec = always("seed", FieldType::Integer, "random seed");

pub static CATALOG: [ScenarioSpec; 7] = [
    ScenarioSpec {
        kind: ScenarioKind::Fig1Gadc,
        summary: "non-Markovianity witness f(t) of the generalized amplitude damping family from 1/2",
        fields: &[
            always("omega", FieldType::Float, "oscillation frequency in p_t = cos^2(omega t)"),
            T_START,
            T_END,
            T_STEP,
            always("eps0", FieldType::Float, "largest step of the epsilon-derivative"),
            TOLERANCE,
        ],
    },
    ScenarioSpec {
        kind: ScenarioKind::Fig2Depolarizing,
        summary: "diamond norm of non-unitarity of the depolarizing channel against 2q(2-q)(1-1/d^2)",
        fields: &[
            always("d", FieldType::Integer, "dimension, at least 2"),
            always("q_values", FieldType::FloatList, "depolarizing parameters in [0, d^2/(d^2-1)]"),
            always("starts", FieldType::Integer, "optimizer starts per value"),
            SEED,
            TOLERANCE,
        ],
    },
    ScenarioSpec {
        kind: ScenarioKind::AppendixBDamping,
        summary: "entropy rate of (1 - e^{-t})|0><0| + e^{-t}|1><1| against finite differences",
        fields: &[
            T_START,
            T_END,
            T_STEP,
            always("fd_step", FieldType::Float, "finite-difference half-width h"),
            always("exclusion", FieldType::Float, "half-width of the window around rank changes left unchecked"),
            TOLERANCE,
        ],
    },
    ScenarioSpec {
        kind: ScenarioKind::AppendixBOscillatory,
        summary: "entropy rate of cos^2(pi t)|0><0| + sin^2(pi t)|1><1| against finite differences",
        fields: &[
            T_START,
            T_END,
            T_STEP,
            always("fd_step", FieldType::Float, "finite-difference half-width h"),
            always("exclusion", FieldType::Float, "half-width of the window around rank changes left unchecked"),
            TOLERANCE,
        ],
    },
    ScenarioSpec {
        kind: ScenarioKind::GaussianBounds,
        summary: "entropy rate against the non-unitality bound for truncated bosonic channels",
        fields: &[
            always("process", FieldType::Text, "amplifier, lossy or additive"),
            always("noise", FieldType::Float, "thermal noise N (additive: rate of both jumps)"),
            always("initial_mean_photons", FieldType::Float, "mean photon number of the thermal initial state"),
            always("cutoff", FieldType::Integer, "number of Fock levels kept"),
            T_START,
            T_END,
            T_STEP,
            TOLERANCE,
        ],
    },
    ScenarioSpec {
        kind: ScenarioKind::DecoherenceMeasures,
        summary: "entropic decoherence measures and the trace-distance measure of a qubit process",
        fields: &[
            always("process", FieldType::Text, "gadc or dephasing"),
            when("gadc", "omega", FieldType::Float, "GADC oscillation frequency"),
            when("dephasing", "rate", FieldType::TimeFunction, "dephasing rate gamma(t)"),
            T_START,
            T_END,
            T_STEP,
            always("pure_states", FieldType::Integer, "Haar-random pure initial states"),
            always("mixed_states", FieldType::Integer, "random mixed initial states"),
            always("bloch_states", FieldType::Integer, "Bloch-sphere grid initial states"),
            always("orthogonal_pairs", FieldType::Integer, "orthogonal pure state pairs for the trace-distance measure"),
            always("mixed_pairs", FieldType::Integer, "mixed state pairs for the trace-distance measure"),
            SEED,
            TOLERANCE,
        ],
    },
    ScenarioSpec {
        kind: ScenarioKind::Custom,
        summary: "witness scan of a user-supplied Lindblad generator",
        fields: &[
            always("generator", FieldType::Generator, "Lindblad generator document"),
            always("initial_state", FieldType::Matrix, "initial density matrix"),
            T_START,
            T_END,
            T_STEP,
            TOLERANCE,
        ],
    },
];

/// Human-readable catalog of scenarios and their parameters.
pub fn catalog_text() -> String {
    let mut out = String::new();
    for spec in &CATALOG {
        let _ = writeln!(out, "{}\n  {}", spec.kind, spec.summary);
        for f in spec.fields {
            let cond = match f.required {
                Requirement::Always => String::new(),
                Requirement::WhenProcess(p) => format!(" (process = {p})"),
            };
            let _ = writeln!(out, "    {:<22} {:<20} {}{}", f.name, f.ty.describe(), f.doc, cond);
        }
    }
    out
}
