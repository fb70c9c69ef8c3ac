//! Structured-text (JSON) documents for matrices, channels and generators.
//!
//! Complex entries are `[re, im]` pairs, matrices are row-major nested lists
//! with explicit dimensions, and rates are tagged builtin time functions.
//! Floats round-trip bit-exactly.

use serde::{Deserialize, Serialize};

use super::channel::QuantumChannel;
use super::generator::{LindbladGenerator, TimeFunction};
use crate::error::{Error, Result};
use crate::linalg::matrix::{c, CMatrix};
use crate::linalg::state::DensityMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&CMatrix> for MatrixDoc {
    fn from(m: &CMatrix) -> Self {
        MatrixDoc {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixDoc> for CMatrix {
    type Error = Error;

    fn try_from(doc: &MatrixDoc) -> Result<CMatrix> {
        if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != doc.cols) {
            return Err(Error::Serialization(format!(
                "matrix entries do not match declared shape {}x{}",
                doc.rows, doc.cols
            )));
        }
        Ok(CMatrix::from_fn(doc.rows, doc.cols, |i, j| {
            let [re, im] = doc.entries[i][j];
            c(re, im)
        }))
    }
}

impl From<DensityMatrix> for MatrixDoc {
    fn from(rho: DensityMatrix) -> Self {
        MatrixDoc::from(rho.matrix())
    }
}

impl TryFrom<MatrixDoc> for DensityMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDoc) -> Result<Self> {
        DensityMatrix::new(CMatrix::try_from(&doc)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDoc {
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus: Vec<MatrixDoc>,
}

impl From<&QuantumChannel> for ChannelDoc {
    fn from(ch: &QuantumChannel) -> Self {
        use super::map::LinearMap;
        ChannelDoc {
            dim_in: ch.dim_in(),
            dim_out: ch.dim_out(),
            kraus: ch.kraus().iter().map(MatrixDoc::from).collect(),
        }
    }
}

impl TryFrom<&ChannelDoc> for QuantumChannel {
    type Error = Error;

    fn try_from(doc: &ChannelDoc) -> Result<Self> {
        let kraus = doc.kraus.iter().map(CMatrix::try_from).collect::<Result<Vec<_>>>()?;
        if kraus.iter().any(|k| k.shape() != (doc.dim_out, doc.dim_in)) {
            return Err(Error::Serialization("Kraus shape disagrees with declared dimensions".into()));
        }
        QuantumChannel::from_kraus(kraus)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianTermDoc {
    pub coefficient: TimeFunction,
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpDoc {
    pub rate: TimeFunction,
    pub operator: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub dim: usize,
    #[serde(default)]
    pub hamiltonian: Vec<HamiltonianTermDoc>,
    #[serde(default)]
    pub jumps: Vec<JumpDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

impl TryFrom<&LindbladGenerator> for GeneratorDoc {
    type Error = Error;

    fn try_from(g: &LindbladGenerator) -> Result<Self> {
        let custom = |f: &TimeFunction| matches!(f, TimeFunction::Custom(_));
        if g.hamiltonian_terms().iter().any(|h| custom(&h.coefficient)) || g.jumps().iter().any(|j| custom(&j.rate)) {
            return Err(Error::Serialization("custom time functions cannot be serialized".into()));
        }
        Ok(GeneratorDoc {
            dim: g.dim(),
            hamiltonian: g
                .hamiltonian_terms()
                .iter()
                .map(|h| HamiltonianTermDoc {
                    coefficient: h.coefficient.clone(),
                    matrix: MatrixDoc::from(&h.matrix),
                })
                .collect(),
            jumps: g
                .jumps()
                .iter()
                .map(|j| JumpDoc {
                    rate: j.rate.clone(),
                    operator: MatrixDoc::from(&j.operator),
                })
                .collect(),
            cutoff: g.cutoff(),
        })
    }
}

impl TryFrom<&GeneratorDoc> for LindbladGenerator {
    type Error = Error;

    fn try_from(doc: &GeneratorDoc) -> Result<Self> {
        let mut g = LindbladGenerator::new(doc.dim);
        for h in &doc.hamiltonian {
            g = g.with_hamiltonian_term(h.coefficient.clone(), CMatrix::try_from(&h.matrix)?)?;
        }
        for j in &doc.jumps {
            g = g.with_jump(j.rate.clone(), CMatrix::try_from(&j.operator)?)?;
        }
        if let Some(cutoff) = doc.cutoff {
            g = g.with_truncation(cutoff);
        }
        Ok(g)
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Serialization(e.to_string()))
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn channel_to_json(ch: &QuantumChannel) -> Result<String> {
    to_json(&ChannelDoc::from(ch))
}

pub fn channel_from_json(text: &str) -> Result<QuantumChannel> {
    QuantumChannel::try_from(&from_json::<ChannelDoc>(text)?)
}

pub fn generator_to_json(g: &LindbladGenerator) -> Result<String> {
    to_json(&GeneratorDoc::try_from(g)?)
}

pub fn generator_from_json(text: &str) -> Result<LindbladGenerator> {
    LindbladGenerator::try_from(&from_json::<GeneratorDoc>(text)?)
}

pub fn matrix_to_json(m: &CMatrix) -> Result<String> {
    to_json(&MatrixDoc::from(m))
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    CMatrix::try_from(&from_json::<MatrixDoc>(text)?)
}
