//! Quantum torus arithmetic over `F = Q(q_1, ..., q_s)`.
//!
//! Monomials multiply by `x^a x^b = (∏_k q_k^{aᵀ B_k b}) x^{a+b}` for integer
//! matrices `B_k`; the commutator form is `Φ_k = B_k - B_kᵀ`. The `q_k` are
//! treated as independent symbols.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, Sublattice};
use crate::{Int, Rat};

/// Laurent polynomial in `q_1, ..., q_s` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · q^qexp`.
    pub fn monomial(qexp: Vec<i64>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(qexp, c);
        }
        Self { terms }
    }

    pub fn constant(s: usize, c: Rat) -> Self {
        Self::monomial(vec![0; s], c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.terms
    }

    fn add_term(&mut self, qexp: Vec<i64>, c: Rat) {
        let slot = self.terms.entry(qexp).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: &[i64]) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (add_exp(e, shift), c.clone())).collect() }
    }

    fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }
}

fn add_exp(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `aᵀ m b` over the integers.
pub(crate) fn pair(a: &[i64], m: &[Vec<i64>], b: &[i64]) -> i64 {
    a.iter()
        .zip(m)
        .map(|(ai, row)| ai * row.iter().zip(b).map(|(x, y)| x * y).sum::<i64>())
        .sum()
}

/// Finite sum `Σ c_a x^a` with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementDoc", into = "ElementDoc")]
pub struct QTorusElement {
    rank: usize,
    terms: BTreeMap<Vec<i64>, Laurent>,
}

#[derive(Serialize, Deserialize)]
struct ElementDoc {
    rank: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exp: Vec<i64>,
    coeff: Vec<CoeffDoc>,
}

#[derive(Serialize, Deserialize)]
struct CoeffDoc {
    qexp: Vec<i64>,
    #[serde(with = "crate::wire::rat")]
    c: Rat,
}

impl TryFrom<ElementDoc> for QTorusElement {
    type Error = Error;

    fn try_from(d: ElementDoc) -> Result<Self> {
        let terms = d
            .terms
            .into_iter()
            .map(|t| {
                let coeff = t.coeff.into_iter().fold(Laurent::zero(), |acc, c| acc.add(&Laurent::monomial(c.qexp, c.c)));
                (t.exp, coeff)
            })
            .collect();
        QTorusElement::new(d.rank, terms)
    }
}

impl From<QTorusElement> for ElementDoc {
    fn from(e: QTorusElement) -> Self {
        let terms = e
            .terms
            .into_iter()
            .map(|(exp, coeff)| TermDoc {
                exp,
                coeff: coeff.terms.into_iter().map(|(qexp, c)| CoeffDoc { qexp, c }).collect(),
            })
            .collect();
        ElementDoc { rank: e.rank, terms }
    }
}

impl QTorusElement {
    /// Sums repeated exponents and drops zero coefficients.
    pub fn new(rank: usize, terms: Vec<(Vec<i64>, Laurent)>) -> Result<Self> {
        let mut arity = None;
        let mut out: BTreeMap<Vec<i64>, Laurent> = BTreeMap::new();
        for (exp, coeff) in terms {
            if exp.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: exp.len() });
            }
            for e in coeff.terms.keys() {
                match arity {
                    None => arity = Some(e.len()),
                    Some(s) if s != e.len() => return Err(Error::DimensionMismatch { expected: s, found: e.len() }),
                    _ => {}
                }
            }
            let slot = out.entry(exp).or_default();
            *slot = slot.add(&coeff);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self { rank, terms: out })
    }

    /// Element with constant rational coefficients.
    pub fn from_rational(rank: usize, s: usize, terms: &[(Vec<i64>, Rat)]) -> Result<Self> {
        Self::new(rank, terms.iter().map(|(e, c)| (e.clone(), Laurent::constant(s, c.clone()))).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, s: usize) -> Self {
        Self::monomial(vec![0; rank], Laurent::constant(s, Rat::one()))
    }

    pub fn monomial(exp: Vec<i64>, coeff: Laurent) -> Self {
        let rank = exp.len();
        Self::new(rank, vec![(exp, coeff)]).expect("single term is consistent")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Laurent> {
        &self.terms
    }

    /// Exponents with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.rank != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: other.rank });
        }
        let mut all: Vec<(Vec<i64>, Laurent)> = self.terms.clone().into_iter().collect();
        all.extend(other.terms.clone());
        Self::new(self.rank, all)
    }

    /// `min { χ(a) : a ∈ Supp }`.
    pub fn chi_min(&self, chi: &[Rat]) -> Result<Rat> {
        if chi.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: chi.len() });
        }
        self.terms.keys().map(|a| eval_character(chi, a)).min().ok_or(Error::ZeroElement)
    }

    fn coefficient_arity(&self) -> Option<usize> {
        self.terms.values().find_map(Laurent::arity)
    }
}

pub(crate) fn eval_character(chi: &[Rat], a: &[i64]) -> Rat {
    chi.iter().zip(a).fold(Rat::zero(), |acc, (c, &x)| acc + c * Rat::from_integer(Int::from(x)))
}

/// The bilinear 2-cocycle `(a, b) ↦ (aᵀ B_1 b, ..., aᵀ B_s b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CocycleDoc", into = "CocycleDoc")]
pub struct CocycleForm {
    rank: usize,
    b: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct CocycleDoc {
    rank: usize,
    s: usize,
    #[serde(rename = "B")]
    b: Vec<Vec<Vec<i64>>>,
}

impl TryFrom<CocycleDoc> for CocycleForm {
    type Error = Error;

    fn try_from(d: CocycleDoc) -> Result<Self> {
        if d.b.len() != d.s {
            return Err(Error::DimensionMismatch { expected: d.s, found: d.b.len() });
        }
        CocycleForm::new(d.rank, d.b)
    }
}

impl From<CocycleForm> for CocycleDoc {
    fn from(c: CocycleForm) -> Self {
        CocycleDoc { rank: c.rank, s: c.b.len(), b: c.b }
    }
}

fn check_square(n: usize, mats: &[Vec<Vec<i64>>]) -> Result<()> {
    for m in mats {
        if m.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.len() });
        }
        if let Some(row) = m.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    Ok(())
}

impl CocycleForm {
    pub fn new(rank: usize, b: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        check_square(rank, &b)?;
        Ok(Self { rank, b })
    }

    /// All `B_k = 0`: the commutative Laurent polynomial ring.
    pub fn trivial(rank: usize, s: usize) -> Self {
        Self { rank, b: vec![vec![vec![0; rank]; rank]; s] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.b
    }

    /// Exponent vector of the twist `x^a x^b = q^{twist(a,b)} x^{a+b}`.
    pub fn twist(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.b.iter().map(|m| pair(a, m, b)).collect()
    }

    fn check(&self, e: &QTorusElement) -> Result<()> {
        if e.rank != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: e.rank });
        }
        match e.coefficient_arity() {
            Some(s) if s != self.s() => Err(Error::DimensionMismatch { expected: self.s(), found: s }),
            _ => Ok(()),
        }
    }

    pub fn multiply(&self, alpha: &QTorusElement, beta: &QTorusElement) -> Result<QTorusElement> {
        self.check(alpha)?;
        self.check(beta)?;
        let mut out = Vec::with_capacity(alpha.terms.len() * beta.terms.len());
        for (a, ca) in &alpha.terms {
            for (b, cb) in &beta.terms {
                out.push((add_exp(a, b), ca.mul(cb).shift(&self.twist(a, b))));
            }
        }
        QTorusElement::new(self.rank, out)
    }

    /// `(x^a)^{-1} = q^{aᵀBa} x^{-a}`.
    pub fn monomial_inverse(&self, a: &[i64]) -> QTorusElement {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        QTorusElement::monomial(neg, Laurent::monomial(self.twist(a, a), Rat::one()))
    }

    pub fn commutator_form(&self) -> AlternatingFormZ {
        let n = self.rank;
        let phi = self
            .b
            .iter()
            .map(|m| (0..n).map(|i| (0..n).map(|j| m[i][j] - m[j][i]).collect()).collect())
            .collect();
        AlternatingFormZ { rank: n, phi }
    }

    /// The cocycle restricted to a sublattice, in coordinates of its basis.
    pub fn restrict(&self, basis: &[Vec<i64>]) -> CocycleForm {
        let b = self
            .b
            .iter()
            .map(|m| basis.iter().map(|u| basis.iter().map(|v| pair(u, m, v)).collect()).collect())
            .collect();
        CocycleForm { rank: basis.len(), b }
    }
}

/// Integer alternating forms `φ_k(a, b) = aᵀ Φ_k b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AltDoc", into = "AltDoc")]
pub struct AlternatingFormZ {
    rank: usize,
    phi: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct AltDoc {
    rank: usize,
    s: usize,
    phi: Vec<Vec<Vec<i64>>>,
}

impl TryFrom<AltDoc> for AlternatingFormZ {
    type Error = Error;

    fn try_from(d: AltDoc) -> Result<Self> {
        if d.phi.len() != d.s {
            return Err(Error::DimensionMismatch { expected: d.s, found: d.phi.len() });
        }
        AlternatingFormZ::new(d.rank, d.phi)
    }
}

impl From<AlternatingFormZ> for AltDoc {
    fn from(f: AlternatingFormZ) -> Self {
        AltDoc { rank: f.rank, s: f.phi.len(), phi: f.phi }
    }
}

/// Outcome of auditing a decomposition `A_1 ⊕ ... ⊕ A_t` against the four
/// structural conditions on commutator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionAudit {
    /// `φ(A_i, A_j) = 0` for `i ≠ j`.
    pub parts_commute: bool,
    /// The form restricted to each `A_i` has trivial radical.
    pub trivial_centres: bool,
    /// Each image lattice has rank exactly one.
    pub cyclic_images: bool,
    /// The saturated images are pairwise distinct.
    pub distinct_images: bool,
    /// `Σ rank A_i = n`.
    pub finite_index: bool,
    /// Saturated image line of each part.
    pub images: Vec<Sublattice>,
}

impl DecompositionAudit {
    pub fn passed(&self) -> bool {
        self.parts_commute && self.trivial_centres && self.cyclic_images && self.distinct_images && self.finite_index
    }
}

impl AlternatingFormZ {
    pub fn new(rank: usize, phi: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        check_square(rank, &phi)?;
        for m in &phi {
            for i in 0..rank {
                for j in 0..rank {
                    if m[i][j] != -m[j][i] {
                        return Err(Error::NotAntisymmetric { row: i, col: j });
                    }
                }
            }
        }
        Ok(Self { rank, phi })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn s(&self) -> usize {
        self.phi.len()
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.phi
    }

    pub fn eval(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.phi.iter().map(|m| pair(a, m, b)).collect()
    }

    fn eval_int(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.phi
            .iter()
            .map(|m| {
                a.iter().zip(m).fold(Int::zero(), |acc, (ai, row)| {
                    acc + ai * row.iter().zip(b).fold(Int::zero(), |s, (x, y)| s + Int::from(*x) * y)
                })
            })
            .collect()
    }

    /// Radical `{a : Φ_k a = 0 ∀k}` as a saturated sublattice.
    pub fn center_lattice(&self) -> Sublattice {
        let rows: Vec<Vec<Int>> =
            self.phi.iter().flat_map(|m| m.iter().map(|r| lattice::to_int_vec(r))).collect();
        lattice::kernel_lattice(&rows, self.rank)
    }

    fn check(&self, l: &Sublattice) -> Result<()> {
        if l.ambient() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: l.ambient() });
        }
        Ok(())
    }

    pub fn is_commutative(&self, l: &Sublattice) -> Result<bool> {
        Ok(self.cocycle_image(l)?.rank() == 0)
    }

    /// Sublattice of `Z^s` spanned by `φ(b_i, b_j)` over basis pairs.
    pub fn cocycle_image(&self, l: &Sublattice) -> Result<Sublattice> {
        self.check(l)?;
        let b = l.basis();
        let mut gens = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                gens.push(self.eval_int(&b[i], &b[j]));
            }
        }
        Sublattice::new(self.s(), &gens)
    }

    /// Gram matrices `b_i ᵀ Φ_k b_j` of the form restricted to `l`.
    fn restricted_radical_rank(&self, l: &Sublattice) -> usize {
        let b = l.basis();
        let rows: Vec<Vec<Int>> = (0..self.s())
            .flat_map(|k| {
                b.iter()
                    .map(|u| b.iter().map(|v| self.eval_int(u, v)[k].clone()).collect())
                    .collect::<Vec<Vec<Int>>>()
            })
            .collect();
        lattice::kernel_lattice(&rows, b.len()).rank()
    }

    /// Audit `parts` against the four decomposition conditions.
    pub fn audit_decomposition(&self, parts: &[Sublattice]) -> Result<DecompositionAudit> {
        for p in parts {
            self.check(p)?;
        }
        let total: usize = parts.iter().map(Sublattice::rank).sum();
        let joint = parts.iter().fold(Sublattice::zero(self.rank), |acc, p| acc.sum(p).expect("same ambient"));
        if joint.rank() != total {
            return Err(Error::DependentParts);
        }
        let mut parts_commute = true;
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i + 1..] {
                for u in p.basis() {
                    for v in q.basis() {
                        if self.eval_int(u, v).iter().any(|x| !x.is_zero()) {
                            parts_commute = false;
                        }
                    }
                }
            }
        }
        let trivial_centres = parts.iter().all(|p| self.restricted_radical_rank(p) == 0);
        let raw: Vec<Sublattice> = parts.iter().map(|p| self.cocycle_image(p)).collect::<Result<_>>()?;
        let cyclic_images = raw.iter().all(|im| im.rank() == 1);
        let images: Vec<Sublattice> = raw.iter().map(Sublattice::saturate).collect();
        let distinct_images = (0..images.len()).all(|i| (i + 1..images.len()).all(|j| images[i] != images[j]));
        Ok(DecompositionAudit {
            parts_commute,
            trivial_centres,
            cyclic_images,
            distinct_images,
            finite_index: total == self.rank,
            images,
        })
    }
}
