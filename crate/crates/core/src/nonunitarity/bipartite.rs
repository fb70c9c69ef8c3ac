//! Pure states on R (x) A with dim R = dim A, and maps acting on the A factor.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channels::map::LinearMap;
use crate::error::{dim_mismatch, invalid, Result};
use crate::linalg::matrix::{c, outer, CMatrix, CVector};
use crate::linalg::random::haar_vector;

/// Unit vector in C^d (x) C^d; amplitude index r * d + a with r on R.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BipartiteDoc", into = "BipartiteDoc")]
pub struct PureBipartiteState {
    d: usize,
    amplitudes: CVector,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartiteDoc {
    d: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl From<PureBipartiteState> for BipartiteDoc {
    fn from(s: PureBipartiteState) -> Self {
        Self {
            d: s.d,
            amplitudes: s.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<BipartiteDoc> for PureBipartiteState {
    type Error = crate::Error;

    fn try_from(doc: BipartiteDoc) -> Result<Self> {
        let v = CVector::from_iterator(doc.amplitudes.len(), doc.amplitudes.iter().map(|&[re, im]| c(re, im)));
        Self::new(doc.d, v)
    }
}

impl PureBipartiteState {
    /// Normalizes `amplitudes`, which must have length d^2 and be non-zero.
    pub fn new(d: usize, amplitudes: CVector) -> Result<Self> {
        if d == 0 {
            return Err(invalid("d", "must be positive"));
        }
        if amplitudes.len() != d * d {
            return Err(dim_mismatch(d * d, amplitudes.len()));
        }
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(invalid("amplitudes", "vector must be finite and non-zero"));
        }
        Ok(Self {
            d,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// d^{-1/2} sum_i |i>|i>.
    pub fn maximally_entangled(d: usize) -> Self {
        let w = 1.0 / (d as f64).sqrt();
        let amplitudes = CVector::from_fn(d * d, |k, _| if k / d == k % d { c(w, 0.0) } else { c(0.0, 0.0) });
        Self { d, amplitudes }
    }

    pub fn product(r: &CVector, a: &CVector) -> Result<Self> {
        if r.len() != a.len() {
            return Err(dim_mismatch(r.len(), a.len()));
        }
        let d = r.len();
        Self::new(d, CVector::from_fn(d * d, |k, _| r[k / d] * a[k % d]))
    }

    pub fn haar<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Self {
        Self {
            d,
            amplitudes: haar_vector(rng, d * d),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn density(&self) -> CMatrix {
        outer(&self.amplitudes, &self.amplitudes)
    }
}

/// (id_R (x) M)(rho_RA) for a map M on the A factor, with rho_RA of size
/// (d_R d_A) x (d_R d_A).
pub fn apply_on_system<M: LinearMap + ?Sized>(map: &M, rho_ra: &CMatrix, d_r: usize) -> Result<CMatrix> {
    let (din, dout) = (map.dim_in(), map.dim_out());
    if rho_ra.nrows() != d_r * din || rho_ra.ncols() != d_r * din {
        return Err(dim_mismatch(d_r * din, rho_ra.nrows()));
    }
    let mut out = CMatrix::zeros(d_r * dout, d_r * dout);
    for r in 0..d_r {
        for s in 0..d_r {
            let block = rho_ra.view((r * din, s * din), (din, din)).into_owned();
            out.view_mut((r * dout, s * dout), (dout, dout)).copy_from(&map.apply(&block)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::map::choi_of;
    use crate::linalg::matrix::{bell_projector, ket, max_abs_diff};
    use crate::linalg::random::seeded_rng;

    #[test]
    fn constructors() {
        let phi = PureBipartiteState::maximally_entangled(2);
        assert!(max_abs_diff(&phi.density(), &bell_projector(2)) < 1e-15);
        let p = PureBipartiteState::product(&ket(2, 0), &ket(2, 1)).unwrap();
        assert_eq!(p.amplitudes()[1], c(1.0, 0.0));
        let h = PureBipartiteState::haar(&mut seeded_rng(1), 3);
        assert!((h.amplitudes().norm() - 1.0).abs() < 1e-12);
        assert!(PureBipartiteState::new(2, CVector::zeros(4)).is_err());
        assert!(PureBipartiteState::new(2, CVector::zeros(3)).is_err());
    }

    #[test]
    fn maximally_entangled_input_gives_normalized_choi() {
        let n = crate::channels::zoo::depolarizing(3, 0.4).unwrap();
        let out = apply_on_system(&n, &PureBipartiteState::maximally_entangled(3).density(), 3).unwrap();
        assert!(max_abs_diff(&out, &(choi_of(&n) / c(3.0, 0.0))) < 1e-14);
    }

    #[test]
    fn serde_round_trip() {
        let s = PureBipartiteState::haar(&mut seeded_rng(4), 2);
        let json = serde_json::to_string(&s).unwrap();
        let back: PureBipartiteState = serde_json::from_str(&json).unwrap();
        assert!((back.amplitudes() - s.amplitudes()).norm() < 1e-15);
    }
}
