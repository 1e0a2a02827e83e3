//! Delta-sets of cyclic one-relator modules `M = FA / r FA`, their initial
//! forms, and exact checks of the local-cone, dimension and induced-module
//! identities relating them.
//!
//! For a single relator, `χ ∈ Δ(M)` exactly when the minimum of `χ` over the
//! support of `r` is attained at least twice, so `Δ(M)` is the tropical
//! hypersurface of the support and is pure.

use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, dense, Sublattice, Subspace};
use crate::polyhedral::{Cone, Fan};
use crate::seed::Seed;
use crate::torus::{eval_character, CocycleForm, QTorusElement};
use crate::{Int, Rat};

/// Rational character `χ ∈ A* = Hom(A, Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    #[serde(with = "crate::wire::rat_vec")]
    coords: Vec<Rat>,
}

impl Character {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| crate::rat(x)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    /// Rank of `A / ker χ`: 0 for the zero character, 1 otherwise.
    pub fn rank(&self) -> usize {
        self.ambient() - self.kernel().rank()
    }

    /// `ker χ ∩ Z^n`, saturated, in HNF.
    pub fn kernel(&self) -> Sublattice {
        lattice::character_kernel(&self.coords)
    }
}

/// `FA / r FA` for a nonzero relator `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModuleDoc", into = "ModuleDoc")]
pub struct OneRelatorModule {
    relator: QTorusElement,
    cocycle: CocycleForm,
}

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    relator: QTorusElement,
    cocycle: CocycleForm,
}

impl TryFrom<ModuleDoc> for OneRelatorModule {
    type Error = Error;

    fn try_from(d: ModuleDoc) -> Result<Self> {
        OneRelatorModule::new(d.relator, d.cocycle)
    }
}

impl From<OneRelatorModule> for ModuleDoc {
    fn from(m: OneRelatorModule) -> Self {
        ModuleDoc { relator: m.relator, cocycle: m.cocycle }
    }
}

/// `r_χ` together with the lattice `B = ker χ` it lives on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialForm {
    /// Relator in coordinates of the HNF basis of `B`.
    pub relator: QTorusElement,
    pub lattice: Sublattice,
    /// Cocycle restricted to `B`.
    pub cocycle: CocycleForm,
}

impl InitialForm {
    pub fn module(&self) -> OneRelatorModule {
        OneRelatorModule { relator: self.relator.clone(), cocycle: self.cocycle.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConeReport {
    /// Local cone of `Δ(M)` at `χ`.
    pub lhs: Fan,
    /// Preimage of `Δ(TC_χ M)` under restriction `A* → B*`.
    pub rhs: Fan,
    pub equal: bool,
    #[serde(with = "opt_point", skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub rank_chi: usize,
    pub tc_dim: i64,
    pub delta_dim: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedReport {
    /// `Δ(TC_χ)` of the relator viewed over the whole lattice, in `B*`.
    pub lhs: Fan,
    /// Preimage under `B* → (B ∩ A_1)*` of `Δ(TC_{χ|A_1})` computed inside `A_1`.
    pub rhs: Fan,
    pub equal: bool,
    #[serde(with = "opt_point", skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Rat>>,
}

mod opt_point {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Rat;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|p| p.iter().map(crate::wire::rat_to_string).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rat>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|v| v.iter().map(|x| crate::wire::parse_rat(x).map_err(serde::de::Error::custom)).collect())
            .transpose()
    }
}

fn to_i64_vec(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("lattice coordinates fit in i64")).collect()
}

impl OneRelatorModule {
    pub fn new(relator: QTorusElement, cocycle: CocycleForm) -> Result<Self> {
        if relator.is_zero() {
            return Err(Error::ZeroElement);
        }
        if relator.rank() != cocycle.rank() {
            return Err(Error::DimensionMismatch { expected: cocycle.rank(), found: relator.rank() });
        }
        // Rejects coefficient arities that disagree with the cocycle.
        cocycle.multiply(&relator, &QTorusElement::one(cocycle.rank(), cocycle.s()))?;
        Ok(Self { relator, cocycle })
    }

    pub fn relator(&self) -> &QTorusElement {
        &self.relator
    }

    pub fn cocycle(&self) -> &CocycleForm {
        &self.cocycle
    }

    pub fn rank(&self) -> usize {
        self.relator.rank()
    }

    fn check(&self, chi: &Character) -> Result<()> {
        if chi.ambient() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: chi.ambient() });
        }
        Ok(())
    }

    /// `⋃_{a≠b} {χ : χ(a) = χ(b) ≤ χ(c) for all c ∈ Supp r}`.
    pub fn delta_set(&self) -> Fan {
        let n = self.rank();
        let support = self.relator.support();
        let as_rat = |v: &[i64]| v.iter().map(|&x| crate::rat(x)).collect::<Vec<Rat>>();
        let diff = |x: &[i64], y: &[i64]| as_rat(&x.iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>());
        let mut cones = Vec::new();
        for (i, a) in support.iter().enumerate() {
            for b in &support[i + 1..] {
                let eq = vec![diff(a, b)];
                let ineq: Vec<Vec<Rat>> = support.iter().filter(|c| *c != a && *c != b).map(|c| diff(c, a)).collect();
                cones.push(Cone::new(n, &eq, &ineq).expect("support widths match"));
            }
        }
        Fan::new(n, cones).expect("cones share the ambient")
    }

    /// Terms of `r` at the `χ`-minimum, shifted by the inverse of the
    /// lexicographically least minimizing monomial into `B = ker χ`.
    pub fn initial_form(&self, chi: &Character) -> Result<InitialForm> {
        self.check(chi)?;
        let m = self.relator.chi_min(chi.coords())?;
        let minimal: Vec<_> = self
            .relator
            .terms()
            .iter()
            .filter(|(a, _)| eval_character(chi.coords(), a) == m)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        let anchor = minimal[0].0.clone();
        let trimmed = QTorusElement::new(self.rank(), minimal)?;
        let shifted = self.cocycle.multiply(&self.cocycle.monomial_inverse(&anchor), &trimmed)?;
        let lattice = chi.kernel();
        let terms = shifted
            .terms()
            .iter()
            .map(|(a, c)| {
                let coords = lattice.coordinates(&lattice::to_int_vec(a)).expect("shifted support lies in ker χ");
                (to_i64_vec(&coords), c.clone())
            })
            .collect();
        let relator = QTorusElement::new(lattice.rank(), terms)?;
        let basis: Vec<Vec<i64>> = lattice.basis().iter().map(|r| to_i64_vec(r)).collect();
        let cocycle = self.cocycle.restrict(&basis);
        Ok(InitialForm { relator, lattice, cocycle })
    }

    /// `Δ` of the trailing-coefficient module, a fan in `B*`.
    pub fn tc_delta(&self, chi: &Character) -> Result<Fan> {
        Ok(self.initial_form(chi)?.module().delta_set())
    }

    /// Compare the local cone of `Δ(M)` at `χ` with the pullback of `Δ(TC_χ M)`.
    pub fn check_local_cone(&self, chi: &Character) -> Result<LocalConeReport> {
        let init = self.initial_form(chi)?;
        let lhs = self.delta_set().local_cone(chi.coords())?;
        let p = init.lattice.basis_rat();
        let rhs = init.module().delta_set().preimage(&p, self.rank())?;
        let witness = lhs.difference_witness(&rhs);
        Ok(LocalConeReport { lhs, rhs, equal: witness.is_none(), witness })
    }

    /// `rank(χ) + dim Δ(TC_χ M) = dim Δ(M)` for `χ ∈ Δ*(M)`.
    pub fn check_dim_identity(&self, chi: &Character) -> Result<DimensionReport> {
        self.check(chi)?;
        let delta = self.delta_set();
        if !delta.delta_star().contains_point(chi.coords()) {
            return Err(Error::NotInDeltaStar);
        }
        let rank_chi = chi.rank();
        let tc_dim = self.tc_delta(chi)?.dim();
        let delta_dim = delta.dim();
        Ok(DimensionReport { rank_chi, tc_dim, delta_dim, holds: rank_chi as i64 + tc_dim == delta_dim })
    }

    /// Compare the trailing-coefficient fan of the relator over `Z^n` with the
    /// one computed inside the saturated sublattice `a1` that carries its support.
    pub fn check_induced(&self, a1: &Sublattice, chi: &Character) -> Result<InducedReport> {
        self.check(chi)?;
        if a1.ambient() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: a1.ambient() });
        }
        if !a1.is_saturated() {
            return Err(Error::Invalid("sublattice must be saturated".into()));
        }
        let n = self.rank();
        // N: the relator written over a1.
        let mut terms = Vec::new();
        for (a, c) in self.relator.terms() {
            let coords = a1
                .coordinates(&lattice::to_int_vec(a))
                .ok_or_else(|| Error::SupportOutsideSublattice(a.clone()))?;
            terms.push((to_i64_vec(&coords), c.clone()));
        }
        let e: Vec<Vec<i64>> = a1.basis().iter().map(|r| to_i64_vec(r)).collect();
        let inner = OneRelatorModule::new(QTorusElement::new(e.len(), terms)?, self.cocycle.restrict(&e))?;
        let e_rat = a1.basis_rat();
        let chi1 = Character::new(dense::mat_vec(&e_rat, chi.coords()));

        let outer_init = self.initial_form(chi)?;
        let lhs = outer_init.module().delta_set();
        let inner_init = inner.initial_form(&chi1)?;
        let inner_fan = inner_init.module().delta_set();

        // Generators of B ∩ A_1 in coordinates of the HNF basis of B.
        let b = &outer_init.lattice;
        let t: Vec<Vec<Rat>> = inner_init
            .lattice
            .basis()
            .iter()
            .map(|k| {
                let k: Vec<Rat> = k.iter().map(|x| Rat::from_integer(x.clone())).collect();
                let g = dense::vec_mat(&k, &e_rat, n);
                let g: Vec<Int> = g.iter().map(|x| x.to_integer()).collect();
                b.coordinates(&g)
                    .expect("B ∩ A_1 ⊆ B")
                    .into_iter()
                    .map(Rat::from_integer)
                    .collect()
            })
            .collect();
        let rhs = inner_fan.preimage(&t, b.rank())?;
        let witness = lhs.difference_witness(&rhs);
        Ok(InducedReport { lhs, rhs, equal: witness.is_none(), witness })
    }

    /// Whether every cone of the local cone of `Δ*(M)` at `χ` spans a subspace of `v`.
    pub fn generic_for(&self, chi: &Character, v: &Subspace) -> Result<bool> {
        self.check(chi)?;
        if !v.contains_vector(chi.coords()) {
            return Err(Error::CharacterNotInSubspace);
        }
        let lc = self.delta_set().delta_star().local_cone(chi.coords())?;
        Ok(lc.cones().iter().all(|c| v.contains(&c.span())))
    }

    /// Deterministic relative-interior point of cone `index` of `Δ(M)`: a
    /// positively weighted average of its rays plus `±1` times each lineality
    /// basis vector.
    pub fn sample_delta_point(&self, index: usize, seed: Seed) -> Result<Character> {
        let fan = self.delta_set();
        let cone = fan
            .cones()
            .get(index)
            .ok_or(Error::IndexOutOfRange { index, len: fan.cones().len() })?;
        Ok(Character::new(relative_interior_point(cone, &mut seed.rng(&format!("delta-point/{index}")))))
    }
}

pub(crate) fn relative_interior_point(cone: &Cone, rng: &mut impl Rng) -> Vec<Rat> {
    let n = cone.ambient();
    let mut point = vec![Rat::zero(); n];
    if !cone.rays().is_empty() {
        let weights: Vec<i64> = cone.rays().iter().map(|_| rng.random_range(1..=5)).collect();
        let total = crate::rat(weights.iter().sum());
        for (r, w) in cone.rays().iter().zip(&weights) {
            point = dense::add(&point, &dense::scale(r, &(crate::rat(*w) / &total)));
        }
    }
    for l in cone.lineality() {
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        point = dense::add(&point, &dense::scale(l, &crate::rat(sign)));
    }
    point
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};
    use rand::Rng;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn module(support: &[&[i64]]) -> OneRelatorModule {
        let n = support[0].len();
        let terms: Vec<(Vec<i64>, Rat)> = support.iter().map(|a| (a.to_vec(), rat(1))).collect();
        OneRelatorModule::new(QTorusElement::from_rational(n, 1, &terms).unwrap(), CocycleForm::trivial(n, 1)).unwrap()
    }

    fn line() -> OneRelatorModule {
        module(&[&[0, 0], &[1, 0], &[0, 1]])
    }

    fn cone(eq: &[&[i64]], ineq: &[&[i64]]) -> Cone {
        Cone::new(2, &eq.iter().map(|r| v(r)).collect::<Vec<_>>(), &ineq.iter().map(|r| v(r)).collect::<Vec<_>>())
            .unwrap()
    }

    /// Min-attained-twice predicate evaluated directly on the support.
    fn tie_oracle(support: &[Vec<i64>], chi: &[Rat]) -> bool {
        let vals: Vec<Rat> = support.iter().map(|a| eval_character(chi, a)).collect();
        let m = vals.iter().min().unwrap();
        vals.iter().filter(|x| *x == m).count() >= 2
    }

    #[test]
    fn delta_examples() {
        assert!(module(&[&[0, 0]]).delta_set().is_empty());
        let two = module(&[&[0, 0], &[1, 0]]).delta_set();
        assert!(two.set_eq(&Fan::new(2, vec![cone(&[&[1, 0]], &[])]).unwrap()));
        let expected = Fan::new(
            2,
            vec![cone(&[&[1, 0]], &[&[0, 1]]), cone(&[&[0, 1]], &[&[1, 0]]), cone(&[&[1, -1]], &[&[-1, 0]])],
        )
        .unwrap();
        assert_eq!(line().delta_set(), expected);
    }

    #[test]
    fn delta_against_tie_oracle() {
        let m = line();
        let fan = m.delta_set();
        let support = m.relator().support();
        let mut rng = Seed::new(3).rng("tie-oracle");
        for _ in 0..10_000 {
            // Coarse grid so ties are hit often.
            let chi = vec![ratio(rng.random_range(-4..=4), 2), ratio(rng.random_range(-4..=4), 2)];
            assert_eq!(fan.contains_point(&chi), tie_oracle(&support, &chi));
        }
    }

    #[test]
    fn initial_form_examples() {
        let m = line();
        let init = m.initial_form(&Character::from_i64(&[0, 1])).unwrap();
        assert_eq!(init.lattice, Sublattice::from_i64(2, &[vec![1, 0]]).unwrap());
        let expected = QTorusElement::from_rational(1, 1, &[(vec![0], rat(1)), (vec![1], rat(1))]).unwrap();
        assert_eq!(init.relator, expected);
        let single = m.initial_form(&Character::from_i64(&[1, 1])).unwrap();
        assert_eq!(single.lattice, Sublattice::from_i64(2, &[vec![1, -1]]).unwrap());
        assert_eq!(single.relator, QTorusElement::one(1, 1));
        let shifted = module(&[&[1, 1], &[2, 1], &[1, 3]]);
        let zero = shifted.initial_form(&Character::from_i64(&[0, 0])).unwrap();
        assert_eq!(zero.relator.support(), vec![vec![0, 0], vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn initial_form_twists_coefficients() {
        // With x y = q y x the shift by (x y)^{-1} introduces q-powers.
        let c = CocycleForm::new(2, vec![vec![vec![0, 1], vec![0, 0]]]).unwrap();
        let r = QTorusElement::from_rational(2, 1, &[(vec![1, 1], rat(1)), (vec![2, 1], rat(1))]).unwrap();
        let m = OneRelatorModule::new(r, c.clone()).unwrap();
        let init = m.initial_form(&Character::from_i64(&[0, 1])).unwrap();
        let direct = c.multiply(&c.monomial_inverse(&[1, 1]), m.relator()).unwrap();
        assert_eq!(init.relator.terms().len(), 2);
        let coeffs: Vec<_> = direct.terms().values().cloned().collect();
        let got: Vec<_> = init.relator.terms().values().cloned().collect();
        assert_eq!(coeffs, got);
    }

    #[test]
    fn tc_examples() {
        let m = line();
        assert_eq!(m.tc_delta(&Character::from_i64(&[0, 1])).unwrap(), Fan::new(1, vec![Cone::origin(1)]).unwrap());
        assert!(m.tc_delta(&Character::from_i64(&[1, 1])).unwrap().is_empty());
        assert_eq!(m.tc_delta(&Character::from_i64(&[0, 0])).unwrap(), m.delta_set());
    }

    #[test]
    fn local_cone_examples() {
        let m = line();
        let r = m.check_local_cone(&Character::from_i64(&[0, 1])).unwrap();
        assert!(r.equal);
        assert!(r.lhs.set_eq(&Fan::new(2, vec![cone(&[&[1, 0]], &[])]).unwrap()));
        let out = m.check_local_cone(&Character::from_i64(&[1, 1])).unwrap();
        assert!(out.equal && out.lhs.is_empty() && out.rhs.is_empty());
        let apex = m.check_local_cone(&Character::from_i64(&[0, 0])).unwrap();
        assert!(apex.equal && apex.lhs.set_eq(&m.delta_set()));
    }

    #[test]
    fn dim_identity_examples() {
        let m = line();
        let r = m.check_dim_identity(&Character::from_i64(&[0, 1])).unwrap();
        assert_eq!((r.rank_chi, r.tc_dim, r.delta_dim, r.holds), (1, 0, 1, true));
        let z = m.check_dim_identity(&Character::from_i64(&[0, 0])).unwrap();
        assert_eq!((z.rank_chi, z.tc_dim, z.delta_dim, z.holds), (0, 1, 1, true));
        assert_eq!(m.check_dim_identity(&Character::from_i64(&[1, 1])), Err(Error::NotInDeltaStar));
    }

    #[test]
    fn induced_examples() {
        let m = module(&[&[0, 0], &[1, 0]]);
        let a1 = Sublattice::from_i64(2, &[vec![1, 0]]).unwrap();
        let r = m.check_induced(&a1, &Character::from_i64(&[0, 1])).unwrap();
        assert!(r.equal);
        let off = m.check_induced(&a1, &Character::from_i64(&[1, 0])).unwrap();
        assert!(off.equal && off.lhs.is_empty() && off.rhs.is_empty());
        let full = line().check_induced(&Sublattice::full(2), &Character::from_i64(&[0, 1])).unwrap();
        assert!(full.equal);
        assert_eq!(full.lhs, full.rhs);
        assert!(matches!(
            line().check_induced(&a1, &Character::from_i64(&[0, 1])),
            Err(Error::SupportOutsideSublattice(_))
        ));
    }

    #[test]
    fn genericness_examples() {
        let m = line();
        let chi = Character::from_i64(&[0, 1]);
        // The local cone at (0,1) is the line χ₁ = 0 = span{(0,1)}.
        let axis = Subspace::new(2, &[v(&[0, 1])]).unwrap();
        assert!(m.generic_for(&chi, &axis).unwrap());
        assert!(m.generic_for(&Character::from_i64(&[0, 2]), &axis).unwrap());
        let diag = Subspace::new(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(m.generic_for(&chi, &diag), Err(Error::CharacterNotInSubspace));
        assert!(m.generic_for(&Character::from_i64(&[0, 0]), &Subspace::full(2)).unwrap());
        let x_axis = Subspace::new(2, &[v(&[1, 0])]).unwrap();
        assert!(!m.generic_for(&Character::from_i64(&[0, 0]), &x_axis).unwrap());
    }

    #[test]
    fn sampled_points() {
        let m = line();
        let fan = m.delta_set();
        for (i, c) in fan.cones().iter().enumerate() {
            let p = m.sample_delta_point(i, Seed::new(5)).unwrap();
            assert!(c.contains_point(p.coords()));
            for a in c.inequalities() {
                assert!(dense::dot(a, p.coords()) > Rat::zero());
            }
        }
        assert_eq!(
            m.sample_delta_point(3, Seed::new(0)),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
        let ray = module(&[&[0, 0], &[1, 0], &[0, 1]]);
        let idx = ray.delta_set().cones().iter().position(|c| c.rays() == &vec![v(&[0, 1])]).unwrap();
        assert_eq!(ray.sample_delta_point(idx, Seed::new(9)).unwrap(), Character::from_i64(&[0, 1]));
        let hyper = module(&[&[0, 0], &[1, 0]]);
        let p = hyper.sample_delta_point(0, Seed::new(1)).unwrap();
        assert!(p == Character::from_i64(&[0, 1]) || p == Character::from_i64(&[0, -1]));
        let full = Cone::full(2);
        let q = relative_interior_point(&full, &mut Seed::new(2).rng("x"));
        assert!(full.contains_point(&q));
    }

    #[test]
    fn translation_and_basis_change() {
        let base = module(&[&[0, 0], &[2, 1], &[1, 3], &[-1, 1]]);
        let moved = module(&[&[3, -2], &[5, -1], &[4, 1], &[2, -1]]);
        assert_eq!(base.delta_set(), moved.delta_set());
        // a ↦ a U sends Δ to its preimage under y ↦ U y.
        let u = [[2i64, 1], [1, 1]];
        let image: Vec<Vec<i64>> = base
            .relator()
            .support()
            .iter()
            .map(|a| (0..2).map(|j| a[0] * u[0][j] + a[1] * u[1][j]).collect())
            .collect();
        let refs: Vec<&[i64]> = image.iter().map(|a| a.as_slice()).collect();
        let transformed = module(&refs);
        let p: Vec<Vec<Rat>> = u.iter().map(|r| v(r)).collect();
        assert!(transformed.delta_set().set_eq(&base.delta_set().preimage(&p, 2).unwrap()));
    }

    #[test]
    fn full_support_gives_codimension_one() {
        let m = module(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert_eq!(m.delta_set().dim(), 2);
        assert_eq!(m.delta_set(), m.delta_set().delta_star());
    }

    #[test]
    fn membership_equivalences() {
        let m = module(&[&[0, 0], &[1, 2], &[2, 1], &[1, 1]]);
        let fan = m.delta_set();
        for a in -3..=3 {
            for b in -3..=3 {
                let chi = Character::from_i64(&[a, b]);
                let inside = fan.contains_point(chi.coords());
                assert_eq!(m.initial_form(&chi).unwrap().relator.terms().len() >= 2, inside);
                assert_eq!(!m.tc_delta(&chi).unwrap().is_empty(), inside);
                assert!(m.check_local_cone(&chi).unwrap().equal);
            }
        }
    }

    #[test]
    fn json_shapes() {
        let chi: Character = serde_json::from_str(r#"["1/2", 3]"#).unwrap();
        assert_eq!(chi.coords(), &[ratio(1, 2), rat(3)]);
        assert_eq!(serde_json::to_string(&chi).unwrap(), r#"["1/2","3"]"#);
        let m = line();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<OneRelatorModule>(&text).unwrap(), m);
    }
}
