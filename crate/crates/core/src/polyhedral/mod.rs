//! Rational polyhedral cones and finite unions of them.

mod cone;
mod equality;

use serde::{Deserialize, Serialize};

pub use cone::Cone;

use crate::error::{Error, Result};
use crate::lattice::Subspace;
use crate::Rat;

/// Finite union of cones. Only maximal cones are kept, in sorted order, so two
/// fans built from the same cone list in any order compare equal. Two fans with
/// the same point set may still differ structurally; use [`Fan::set_eq`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FanDoc", into = "FanDoc")]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
}

#[derive(Serialize, Deserialize)]
struct FanDoc {
    dim: usize,
    cones: Vec<Cone>,
}

impl TryFrom<FanDoc> for Fan {
    type Error = Error;

    fn try_from(d: FanDoc) -> Result<Self> {
        Fan::new(d.dim, d.cones)
    }
}

impl From<Fan> for FanDoc {
    fn from(f: Fan) -> Self {
        FanDoc { dim: f.ambient, cones: f.cones }
    }
}

impl Fan {
    pub fn new(ambient: usize, mut cones: Vec<Cone>) -> Result<Self> {
        if let Some(c) = cones.iter().find(|c| c.ambient() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: c.ambient() });
        }
        cones.sort();
        cones.dedup();
        let keep: Vec<bool> = (0..cones.len())
            .map(|i| !(0..cones.len()).any(|j| j != i && cones[j].contains_cone(&cones[i])))
            .collect();
        let cones = cones.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
        Ok(Self { ambient, cones })
    }

    pub fn empty(ambient: usize) -> Self {
        Self { ambient, cones: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Largest cone dimension; `-1` for the empty fan.
    pub fn dim(&self) -> i64 {
        self.cones.iter().map(|c| c.dim() as i64).max().unwrap_or(-1)
    }

    pub fn contains_point(&self, p: &[Rat]) -> bool {
        self.cones.iter().any(|c| c.contains_point(p))
    }

    /// Directions `y` with `x + εy` in the fan for all small `ε ≥ 0`.
    pub fn local_cone(&self, x: &[Rat]) -> Result<Fan> {
        if x.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: x.len() });
        }
        let cones = self.cones.iter().filter_map(|c| c.tangent_cone(x)).collect();
        Fan::new(self.ambient, cones)
    }

    /// `{y ∈ Q^source : P y ∈ self}` for `P` of shape `ambient x source`.
    pub fn preimage(&self, p: &[Vec<Rat>], source: usize) -> Result<Fan> {
        if p.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: p.len() });
        }
        let cones = self.cones.iter().map(|c| c.pullback(p, source)).collect::<Result<_>>()?;
        Fan::new(source, cones)
    }

    pub fn union(&self, other: &Fan) -> Result<Fan> {
        let mut cones = self.cones.clone();
        cones.extend(other.cones.iter().cloned());
        Fan::new(self.ambient, cones)
    }

    /// Point-set equality.
    pub fn set_eq(&self, other: &Fan) -> bool {
        self.difference_witness(other).is_none()
    }

    /// A point in exactly one of the two fans, or `None` when they are equal as sets.
    pub fn difference_witness(&self, other: &Fan) -> Option<Vec<Rat>> {
        if self.ambient != other.ambient {
            return Some(Vec::new());
        }
        self.cones
            .iter()
            .find_map(|c| equality::uncovered_point(c, other))
            .or_else(|| other.cones.iter().find_map(|c| equality::uncovered_point(c, self)))
    }

    /// Union of the cones of maximal dimension.
    pub fn delta_star(&self) -> Fan {
        let d = self.dim();
        let cones = self.cones.iter().filter(|c| c.dim() as i64 == d).cloned().collect();
        Fan { ambient: self.ambient, cones }
    }

    /// Distinct linear spans of the top-dimensional cones.
    pub fn carrier_spaces(&self) -> Vec<Subspace> {
        let mut spans: Vec<Subspace> = self.delta_star().cones.iter().map(Cone::span).collect();
        spans.sort();
        spans.dedup();
        spans
    }
}
