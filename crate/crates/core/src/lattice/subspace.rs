use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dense::{self, RatMatrix};
use crate::error::{Error, Result};
use crate::Rat;

/// Rational subspace of `Q^n`, stored by its reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubspaceDoc", into = "SubspaceDoc")]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
}

/// Any spanning set is accepted on input; output is the echelon basis.
#[derive(Serialize, Deserialize)]
struct SubspaceDoc {
    ambient: usize,
    #[serde(with = "crate::wire::rat_matrix")]
    basis: RatMatrix,
}

impl TryFrom<SubspaceDoc> for Subspace {
    type Error = Error;

    fn try_from(d: SubspaceDoc) -> Result<Self> {
        Subspace::new(d.ambient, &d.basis)
    }
}

impl From<Subspace> for SubspaceDoc {
    fn from(s: Subspace) -> Self {
        SubspaceDoc { ambient: s.ambient, basis: s.basis }
    }
}

impl Subspace {
    pub fn new(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
        }
        Ok(Self::span_unchecked(ambient, vectors))
    }

    pub(crate) fn span_unchecked(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        let (basis, _) = dense::rref(vectors, ambient);
        Self { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: dense::identity(ambient) }
    }

    /// `{x : m x = 0}` for an `r x cols` matrix.
    pub fn kernel(m: &[Vec<Rat>], cols: usize) -> Result<Self> {
        if let Some(row) = m.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
        }
        Ok(Self::span_unchecked(cols, &dense::kernel(m, cols)))
    }

    /// Column span of `m`, i.e. the image of `x -> m x`, inside `Q^{rows}`.
    pub fn image(m: &[Vec<Rat>], cols: usize) -> Result<Self> {
        if let Some(row) = m.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
        }
        Ok(Self::span_unchecked(m.len(), &dense::transpose(m, cols)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Self::span_unchecked(self.ambient, &v))
    }

    /// Annihilator with respect to the standard pairing.
    pub fn orthogonal_complement(&self) -> Self {
        Self::span_unchecked(self.ambient, &dense::kernel(&self.basis, self.ambient))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?
            .orthogonal_complement())
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        v.len() == self.ambient && dense::express_in_basis(&self.basis, v).is_some()
    }

    /// Subspace containment `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Span of the unit vectors at the non-pivot columns; a complement chosen
    /// greedily from the echelon pivots.
    pub fn coordinate_complement(&self) -> Self {
        let (_, pivots) = dense::rref(&self.basis, self.ambient);
        let vectors: RatMatrix = (0..self.ambient)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut e = vec![Rat::zero(); self.ambient];
                e[c] = crate::rat(1);
                e
            })
            .collect();
        Self::span_unchecked(self.ambient, &vectors)
    }

    /// Coordinates of `v` in the stored basis.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        dense::express_in_basis(&self.basis, v)
    }
}
