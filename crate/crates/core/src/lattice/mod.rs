//! Exact integer and rational linear algebra: sublattices of `Z^n` in Hermite
//! normal form, rational subspaces in reduced echelon form, saturation and
//! commensurability.

pub mod dense;
mod hnf;
mod subspace;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use hnf::{hnf, IntMatrix};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// Sublattice of `Z^n` given by independent generators stored in row HNF.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LatticeDoc", into = "LatticeDoc")]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

/// Any generating set is accepted on input; output is the HNF basis.
#[derive(Serialize, Deserialize)]
struct LatticeDoc {
    ambient: usize,
    #[serde(with = "crate::wire::int_matrix")]
    basis: IntMatrix,
}

impl TryFrom<LatticeDoc> for Sublattice {
    type Error = Error;

    fn try_from(d: LatticeDoc) -> Result<Self> {
        Sublattice::new(d.ambient, &d.basis)
    }
}

impl From<Sublattice> for LatticeDoc {
    fn from(l: Sublattice) -> Self {
        LatticeDoc { ambient: l.ambient, basis: l.basis }
    }
}

impl Sublattice {
    pub fn new(ambient: usize, generators: &[Vec<Int>]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
        }
        let (h, _) = hnf(generators, ambient);
        let basis = h.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).collect();
        Ok(Self { ambient, basis })
    }

    pub fn from_i64(ambient: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let g: IntMatrix = generators.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::new(ambient, &g)
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
        Self { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rat(&self) -> dense::RatMatrix {
        dense::int_to_rat_matrix(&self.basis)
    }

    /// Rational span inside `Q^n`.
    pub fn span(&self) -> Subspace {
        Subspace::span_unchecked(self.ambient, &self.basis_rat())
    }

    /// Isolated closure `{a : k a ∈ L for some k ≥ 1}`.
    pub fn saturate(&self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let orth = kernel_lattice(&self.basis, self.ambient);
        kernel_lattice(&orth.basis, self.ambient)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// `L1 ∩ L2` has finite index in both, i.e. the saturations agree.
    pub fn commensurable(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.saturate() == other.saturate())
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k1 = self.rank();
        let k2 = other.rank();
        // z = (x, y) with x B1 - y B2 = 0, i.e. S^T z = 0 for S = [B1; -B2].
        let st: IntMatrix = (0..self.ambient)
            .map(|j| {
                self.basis
                    .iter()
                    .map(|r| r[j].clone())
                    .chain(other.basis.iter().map(|r| -r[j].clone()))
                    .collect()
            })
            .collect();
        let sol = kernel_lattice(&st, k1 + k2);
        let gens: IntMatrix = sol
            .basis
            .iter()
            .map(|z| {
                (0..self.ambient)
                    .map(|j| (0..k1).fold(Int::zero(), |acc, i| acc + &z[i] * &self.basis[i][j]))
                    .collect()
            })
            .collect();
        Self::new(self.ambient, &gens)
    }

    /// Integer coordinates of `v` in the stored basis, if `v ∈ L`.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        if v.len() != self.ambient {
            return None;
        }
        let vr: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let c = dense::express_in_basis(&self.basis_rat(), &vr)?;
        c.iter().all(|x| x.is_integer()).then(|| c.into_iter().map(|x| x.to_integer()).collect())
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Lattice generated by two sublattices together.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Self::new(self.ambient, &g)
    }
}

/// `{x ∈ Z^cols : m x = 0}`; always saturated.
pub fn kernel_lattice(m: &[Vec<Int>], cols: usize) -> Sublattice {
    let rows = m.len();
    let mt: IntMatrix = (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect();
    let (h, u) = hnf(&mt, rows);
    let gens: IntMatrix = h
        .iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(Zero::is_zero))
        .map(|(_, ur)| ur)
        .collect();
    Sublattice::new(cols, &gens).expect("kernel generators have the ambient width")
}

/// Kernel of a rational character `χ` as a saturated sublattice of `Z^n`.
pub fn character_kernel(chi: &[Rat]) -> Sublattice {
    let lcm = chi.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let row: Vec<Int> = chi.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    kernel_lattice(&[row], chi.len())
}

pub fn to_int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};
    use proptest::prelude::*;

    fn lat(n: usize, g: &[&[i64]]) -> Sublattice {
        Sublattice::from_i64(n, &g.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(lat(2, &[&[2, 0]]).saturate(), lat(2, &[&[1, 0]]));
        let s = lat(2, &[&[1, 0]]);
        assert_eq!(s.saturate(), s);
        // Oracle: enumerate small integer points in the rational span and
        // keep those in the span; their lattice is the saturation.
        let l = lat(2, &[&[2, 2], &[0, 4]]);
        let pts: Vec<Vec<i64>> = (-3..=3).flat_map(|a| (-3..=3).map(move |b| vec![a, b])).collect();
        let sat = lat(2, &pts.iter().map(|p| p.as_slice()).collect::<Vec<_>>());
        assert_eq!(l.saturate(), sat);
        assert_eq!(l.saturate(), Sublattice::full(2));
    }

    #[test]
    fn commensurability_examples() {
        let l = lat(3, &[&[1, 2, 0], &[0, 1, 1]]);
        let l3 = lat(3, &[&[3, 6, 0], &[0, 3, 3]]);
        assert!(l.commensurable(&l3).unwrap());
        assert!(!lat(2, &[&[1, 0]]).commensurable(&lat(2, &[&[0, 1]])).unwrap());
        assert!(lat(2, &[&[2, 4]]).commensurable(&lat(2, &[&[3, 6]])).unwrap());
        assert_eq!(lat(2, &[&[2, 4]]).saturate(), lat(2, &[&[1, 2]]));
    }

    #[test]
    fn character_kernels() {
        assert_eq!(character_kernel(&[rat(1), rat(0)]), lat(2, &[&[0, 1]]));
        assert_eq!(character_kernel(&[rat(1), rat(-1)]), lat(2, &[&[1, 1]]));
        assert_eq!(character_kernel(&[ratio(1, 2), ratio(1, 3)]), lat(2, &[&[2, -3]]));
        assert_eq!(character_kernel(&[rat(0), rat(0)]), Sublattice::full(2));
    }

    #[test]
    fn intersection_and_coordinates() {
        let a = lat(2, &[&[2, 0], &[0, 1]]);
        let b = lat(2, &[&[3, 0], &[0, 2]]);
        assert_eq!(a.intersection(&b).unwrap(), lat(2, &[&[6, 0], &[0, 2]]));
        assert_eq!(a.coordinates(&to_int_vec(&[4, 3])), Some(to_int_vec(&[2, 3])));
        assert!(!a.contains(&to_int_vec(&[1, 0])));
        assert!(matches!(a.intersection(&Sublattice::full(3)), Err(Error::DimensionMismatch { .. })));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
    }

    fn big(m: &[Vec<i64>]) -> IntMatrix {
        m.iter().map(|r| to_int_vec(r)).collect()
    }

    proptest! {
        #[test]
        fn hnf_round_trip(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let cols = m[0].len();
            let mi = big(&m);
            let (h, u) = hnf(&mi, cols);
            let ur = dense::int_to_rat_matrix(&u);
            let uinv = dense::inverse(&ur).expect("unimodular");
            prop_assert!(dense::determinant(&ur) == rat(1) || dense::determinant(&ur) == rat(-1));
            let back = dense::mat_mul(&uinv, &dense::int_to_rat_matrix(&h), cols);
            prop_assert_eq!(back, dense::int_to_rat_matrix(&mi));
        }

        #[test]
        fn saturation_properties(m in (1usize..3, 2usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let l = Sublattice::new(m[0].len(), &big(&m)).unwrap();
            let s = l.saturate();
            prop_assert_eq!(s.saturate(), s.clone());
            prop_assert_eq!(s.rank(), l.rank());
            for g in l.basis() {
                prop_assert!(s.contains(g));
            }
        }

        #[test]
        fn kernel_of_character(chi in prop::collection::vec((-5i64..=5, 1i64..=4), 2..5)) {
            let chi: Vec<Rat> = chi.iter().map(|&(p, q)| ratio(p, q)).collect();
            prop_assume!(chi.iter().any(|x| !x.is_zero()));
            let k = character_kernel(&chi);
            prop_assert_eq!(k.rank(), chi.len() - 1);
            for g in k.basis_rat() {
                prop_assert!(dense::dot(&g, &chi).is_zero());
            }
        }

        #[test]
        fn commensurable_is_equivalence(
            a in small_matrix(1, 3), b in small_matrix(1, 3), c in small_matrix(1, 3),
            ka in 1i64..4, kb in 1i64..4,
        ) {
            let mk = |m: &Vec<Vec<i64>>| Sublattice::new(3, &big(m)).unwrap();
            let la = mk(&a);
            let scaled = |m: &Vec<Vec<i64>>, k: i64| m.iter().map(|r| r.iter().map(|x| x * k).collect()).collect::<Vec<Vec<i64>>>();
            let lb = mk(&scaled(&a, ka));
            let lc = mk(&scaled(&a, kb));
            prop_assert!(la.commensurable(&la).unwrap());
            prop_assert!(la.commensurable(&lb).unwrap() && lb.commensurable(&lc).unwrap() && la.commensurable(&lc).unwrap());
            let (x, y) = (mk(&b), mk(&c));
            prop_assert_eq!(x.commensurable(&y).unwrap(), y.commensurable(&x).unwrap());
            if x.commensurable(&y).unwrap() && y.commensurable(&la).unwrap() {
                prop_assert!(x.commensurable(&la).unwrap());
            }
        }
    }
}
