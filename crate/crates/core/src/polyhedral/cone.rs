use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::dense::{self, RatMatrix};
use crate::lattice::Subspace;
use crate::Rat;

/// Closed rational polyhedral cone `{x : E x = 0, A x ≥ 0}`.
///
/// Both representations are kept in canonical form: equalities are the RREF
/// basis of the annihilator of the linear span, inequalities are the facet
/// normals reduced modulo the equalities and scaled to primitive integers,
/// lineality is an RREF basis, rays are the extreme rays projected onto the
/// orthogonal complement of the lineality space. Equal point sets therefore
/// give equal values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConeDoc", into = "ConeDoc")]
pub struct Cone {
    ambient: usize,
    equalities: RatMatrix,
    inequalities: RatMatrix,
    lineality: RatMatrix,
    rays: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct ConeDoc {
    dim: usize,
    #[serde(with = "crate::wire::rat_matrix", default)]
    eq: RatMatrix,
    #[serde(with = "crate::wire::rat_matrix", default)]
    ineq: RatMatrix,
}

impl TryFrom<ConeDoc> for Cone {
    type Error = Error;

    fn try_from(d: ConeDoc) -> Result<Self> {
        Cone::new(d.dim, &d.eq, &d.ineq)
    }
}

impl From<Cone> for ConeDoc {
    fn from(c: Cone) -> Self {
        ConeDoc { dim: c.ambient, eq: c.equalities, ineq: c.inequalities }
    }
}

impl Cone {
    pub fn new(ambient: usize, equalities: &[Vec<Rat>], inequalities: &[Vec<Rat>]) -> Result<Self> {
        if let Some(row) = equalities.iter().chain(inequalities).find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: row.len() });
        }
        // Parametrise the solution space of the equalities and run the double
        // description in those coordinates.
        let param = dense::kernel(equalities, ambient);
        let k = param.len();
        let local: RatMatrix = inequalities.iter().map(|a| dense::mat_vec(&param, a)).collect();
        let (lin_z, rays_z) = double_description(k, &local);
        let lift = |z: &Vec<Rat>| dense::vec_mat(z, &param, ambient);
        let lineality: RatMatrix = lin_z.iter().map(lift).collect();
        let rays: RatMatrix = rays_z.iter().map(lift).collect();
        Ok(Self::from_generators(ambient, &lineality, &rays, inequalities))
    }

    /// Whole ambient space.
    pub fn full(ambient: usize) -> Self {
        Self::new(ambient, &[], &[]).expect("no constraints")
    }

    /// The apex `{0}`.
    pub fn origin(ambient: usize) -> Self {
        Self::new(ambient, &dense::identity(ambient), &[]).expect("square identity")
    }

    fn from_generators(ambient: usize, lineality: &[Vec<Rat>], rays: &[Vec<Rat>], candidates: &[Vec<Rat>]) -> Self {
        let lin_space = Subspace::span_unchecked(ambient, lineality);
        let lineality: RatMatrix = lin_space.basis().iter().map(|r| dense::primitive(r)).collect();
        let mut rays: RatMatrix = rays
            .iter()
            .map(|r| dense::primitive(&project_off(r, &lineality)))
            .filter(|r| !dense::is_zero_vec(r))
            .collect();
        rays.sort();
        rays.dedup();

        let mut span_gens = lineality.clone();
        span_gens.extend(rays.iter().cloned());
        let span = Subspace::span_unchecked(ambient, &span_gens);
        let equalities = span.orthogonal_complement().basis().clone();
        let pivots: Vec<usize> = equalities
            .iter()
            .map(|e| e.iter().position(|x| !x.is_zero()).expect("nonzero RREF row"))
            .collect();

        let mut inequalities: RatMatrix = Vec::new();
        for a in candidates {
            let mut a = a.clone();
            for (e, &p) in equalities.iter().zip(&pivots) {
                if !a[p].is_zero() {
                    let f = a[p].clone();
                    for (x, y) in a.iter_mut().zip(e) {
                        *x -= &f * y;
                    }
                }
            }
            if dense::is_zero_vec(&a) {
                continue;
            }
            debug_assert!(rays.iter().all(|r| !dense::dot(&a, r).is_negative()));
            let mut tight = lineality.clone();
            tight.extend(rays.iter().filter(|r| dense::dot(&a, r).is_zero()).cloned());
            if dense::rank(&tight, ambient) + 1 == span.dim() {
                inequalities.push(dense::primitive(&a));
            }
        }
        inequalities.sort();
        inequalities.dedup();
        Self { ambient, equalities, inequalities, lineality, rays }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient - self.equalities.len()
    }

    pub fn equalities(&self) -> &RatMatrix {
        &self.equalities
    }

    pub fn inequalities(&self) -> &RatMatrix {
        &self.inequalities
    }

    pub fn rays(&self) -> &RatMatrix {
        &self.rays
    }

    pub fn lineality(&self) -> &RatMatrix {
        &self.lineality
    }

    pub fn span(&self) -> Subspace {
        Subspace::span_unchecked(self.ambient, &self.equalities).orthogonal_complement()
    }

    pub fn contains_point(&self, p: &[Rat]) -> bool {
        p.len() == self.ambient
            && self.equalities.iter().all(|e| dense::dot(e, p).is_zero())
            && self.inequalities.iter().all(|a| !dense::dot(a, p).is_negative())
    }

    /// `other ⊆ self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.ambient == self.ambient
            && other.rays.iter().all(|r| self.contains_point(r))
            && other.lineality.iter().all(|l| {
                self.contains_point(l) && self.contains_point(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    /// Tangent cone at `x`: keep the constraints active at `x`. `None` when `x ∉ self`.
    pub fn tangent_cone(&self, x: &[Rat]) -> Option<Cone> {
        if !self.contains_point(x) {
            return None;
        }
        let active: RatMatrix = self
            .inequalities
            .iter()
            .filter(|a| dense::dot(a, x).is_zero())
            .cloned()
            .collect();
        Some(Cone::new(self.ambient, &self.equalities, &active).expect("same ambient"))
    }

    /// `{y : P y ∈ self}` for `P` of shape `ambient x source`.
    pub fn pullback(&self, p: &[Vec<Rat>], source: usize) -> Result<Cone> {
        if p.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: p.len() });
        }
        if let Some(row) = p.iter().find(|r| r.len() != source) {
            return Err(Error::DimensionMismatch { expected: source, found: row.len() });
        }
        let pull = |rows: &RatMatrix| -> RatMatrix { rows.iter().map(|a| dense::vec_mat(a, p, source)).collect() };
        Cone::new(source, &pull(&self.equalities), &pull(&self.inequalities))
    }

    /// Sum of the extreme rays: a point of the relative interior.
    pub fn interior_point(&self) -> Vec<Rat> {
        self.rays
            .iter()
            .fold(vec![Rat::zero(); self.ambient], |acc, r| dense::add(&acc, r))
    }
}

/// `r` minus its orthogonal projection onto the row span of `basis`.
fn project_off(r: &[Rat], basis: &[Vec<Rat>]) -> Vec<Rat> {
    if basis.is_empty() {
        return r.to_vec();
    }
    let gram: RatMatrix = basis.iter().map(|a| basis.iter().map(|b| dense::dot(a, b)).collect()).collect();
    let inv = dense::inverse(&gram).expect("independent basis");
    let rhs: Vec<Rat> = basis.iter().map(|b| dense::dot(b, r)).collect();
    let coeff = dense::mat_vec(&inv, &rhs);
    let proj = dense::vec_mat(&coeff, basis, r.len());
    dense::sub(r, &proj)
}

/// Double description for `{z ∈ Q^k : c·z ≥ 0 for c in constraints}`.
/// Returns a lineality basis and a set of extreme rays modulo lineality.
pub(crate) fn double_description(k: usize, constraints: &[Vec<Rat>]) -> (RatMatrix, RatMatrix) {
    let mut lin = dense::identity(k);
    let mut rays: RatMatrix = Vec::new();
    let mut processed: Vec<&Vec<Rat>> = Vec::new();
    for a in constraints {
        if dense::is_zero_vec(a) {
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dense::dot(a, l).is_zero()) {
            let mut l0 = lin.remove(pos);
            let mut al0 = dense::dot(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let f = dense::dot(a, l) / &al0;
                *l = dense::sub(l, &dense::scale(&l0, &f));
            }
            for r in rays.iter_mut() {
                let f = dense::dot(a, r) / &al0;
                *r = dense::primitive(&dense::sub(r, &dense::scale(&l0, &f)));
            }
            rays.push(dense::primitive(&l0));
        } else {
            let values: Vec<Rat> = rays.iter().map(|r| dense::dot(a, r)).collect();
            if values.iter().all(|v| !v.is_negative()) {
                processed.push(a);
                continue;
            }
            let tight: Vec<Vec<bool>> = rays
                .iter()
                .map(|r| processed.iter().map(|c| dense::dot(c, r).is_zero()).collect())
                .collect();
            let mut next: RatMatrix = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, vi) in values.iter().enumerate() {
                if !vi.is_positive() {
                    continue;
                }
                for (j, vj) in values.iter().enumerate() {
                    if !vj.is_negative() {
                        continue;
                    }
                    let common: Vec<bool> = tight[i].iter().zip(&tight[j]).map(|(x, y)| *x && *y).collect();
                    let adjacent = (0..rays.len()).filter(|&r| r != i && r != j).all(|r| {
                        !common.iter().zip(&tight[r]).all(|(c, t)| !*c || *t)
                    });
                    if adjacent {
                        let combo = dense::sub(&dense::scale(&rays[j], vi), &dense::scale(&rays[i], vj));
                        if !dense::is_zero_vec(&combo) {
                            next.push(dense::primitive(&combo));
                        }
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    (lin, rays)
}
