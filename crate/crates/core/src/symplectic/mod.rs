//! Alternating bilinear maps `φ: V × V → W` over `Q`, symplectic bases
//! `V = V_0 ⊕ V_1 ⊕ ... ⊕ V_t`, abelian subspaces and the ample-family check.

mod ample;
mod base;
mod poly;

use serde::{Deserialize, Serialize};

pub use ample::AmpleReport;
pub use base::{BaseReport, NoBaseFound, SymplecticBase, DEFAULT_RETRIES};

use crate::error::{Error, Result};
use crate::lattice::dense::{self, RatMatrix};
use crate::lattice::Subspace;
use crate::torus::AlternatingFormZ;
use crate::Rat;

/// `φ(u, v) = (uᵀ Φ_1 v, ..., uᵀ Φ_s v)` with antisymmetric rational `Φ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MapDoc", into = "MapDoc")]
pub struct AlternatingMapQ {
    n: usize,
    phi: Vec<RatMatrix>,
}

#[derive(Serialize, Deserialize)]
struct MapDoc {
    n: usize,
    s: usize,
    #[serde(with = "crate::wire::rat_matrices")]
    phi: Vec<RatMatrix>,
}

impl TryFrom<MapDoc> for AlternatingMapQ {
    type Error = Error;

    fn try_from(d: MapDoc) -> Result<Self> {
        if d.phi.len() != d.s {
            return Err(Error::DimensionMismatch { expected: d.s, found: d.phi.len() });
        }
        AlternatingMapQ::new(d.n, d.phi)
    }
}

impl From<AlternatingMapQ> for MapDoc {
    fn from(m: AlternatingMapQ) -> Self {
        MapDoc { n: m.n, s: m.phi.len(), phi: m.phi }
    }
}

impl From<&AlternatingFormZ> for AlternatingMapQ {
    fn from(f: &AlternatingFormZ) -> Self {
        Self { n: f.rank(), phi: f.matrices().iter().map(|m| dense::to_rat_matrix(m)).collect() }
    }
}

impl AlternatingMapQ {
    pub fn new(n: usize, phi: Vec<RatMatrix>) -> Result<Self> {
        for m in &phi {
            if m.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.len() });
            }
            if let Some(row) = m.iter().find(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for i in 0..n {
                for j in 0..n {
                    if m[i][j] != -m[j][i].clone() {
                        return Err(Error::NotAntisymmetric { row: i, col: j });
                    }
                }
            }
        }
        Ok(Self { n, phi })
    }

    pub fn from_i64(n: usize, phi: &[Vec<Vec<i64>>]) -> Result<Self> {
        Self::new(n, phi.iter().map(|m| dense::to_rat_matrix(m)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.phi.len()
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.phi
    }

    pub fn eval(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.phi.iter().map(|m| dense::bilinear(u, m, v)).collect()
    }

    /// `Σ t_k Φ_k`.
    pub fn combination(&self, t: &[Rat]) -> RatMatrix {
        let mut out = dense::zeros(self.n, self.n);
        for (m, tk) in self.phi.iter().zip(t) {
            for (orow, mrow) in out.iter_mut().zip(m) {
                for (o, x) in orow.iter_mut().zip(mrow) {
                    *o += x * tk;
                }
            }
        }
        out
    }

    /// Form in the coordinates of `basis`: `Φ'_k = P Φ_k Pᵀ` with `P` the basis rows.
    pub fn restrict(&self, basis: &[Vec<Rat>]) -> AlternatingMapQ {
        let phi = self
            .phi
            .iter()
            .map(|m| basis.iter().map(|u| basis.iter().map(|v| dense::bilinear(u, m, v)).collect()).collect())
            .collect();
        Self { n: basis.len(), phi }
    }

    /// Change of basis `Φ'_k = Uᵀ Φ_k U`.
    pub fn conjugate(&self, u: &[Vec<Rat>]) -> AlternatingMapQ {
        let ut = dense::transpose(u, self.n);
        self.restrict(&ut)
    }

    /// `⋂_k ker Φ_k`.
    pub fn center(&self) -> Subspace {
        let rows: RatMatrix = self.phi.iter().flat_map(|m| m.iter().cloned()).collect();
        Subspace::span_unchecked(self.n, &dense::kernel(&rows, self.n))
    }

    fn check(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: s.ambient() });
        }
        Ok(())
    }

    /// `{v : φ(u, v) = 0 for all u ∈ S}`.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check(s)?;
        let rows: RatMatrix = self
            .phi
            .iter()
            .flat_map(|m| s.basis().iter().map(move |u| dense::vec_mat(u, m, self.n)))
            .collect();
        Ok(Subspace::span_unchecked(self.n, &dense::kernel(&rows, self.n)))
    }

    pub fn is_abelian(&self, u: &Subspace) -> Result<bool> {
        Ok(self.pairing_image(u, u)?.is_zero())
    }

    /// Codimension of the centralizer of `v`: the rank of the rows `vᵀ Φ_k`.
    pub fn centralizer_codim(&self, v: &[Rat]) -> usize {
        let rows: RatMatrix = self.phi.iter().map(|m| dense::vec_mat(v, m, self.n)).collect();
        dense::rank(&rows, self.n)
    }

    /// Subspace of `W = Q^s` spanned by `φ(a, b)`, `a ∈ A`, `b ∈ B`.
    pub fn pairing_image(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(b)?;
        let vals: RatMatrix = a
            .basis()
            .iter()
            .flat_map(|u| b.basis().iter().map(move |v| self.eval(u, v)))
            .collect();
        Ok(Subspace::span_unchecked(self.s(), &vals))
    }

    /// Centre of the form restricted to `x`: `x ∩ centralizer(x)`.
    pub fn relative_center(&self, x: &Subspace) -> Result<Subspace> {
        x.intersection(&self.centralizer(x)?)
    }
}
