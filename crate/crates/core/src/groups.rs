//! Class-2 nilpotent commutator data: presentations `[g_a, g_b] = ∏ z_k^{c_k(a,b)}`,
//! their commutator forms, and the decomposition into Heisenberg and cyclic
//! factors up to finite index.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, dense, hnf, IntMatrix, Sublattice};
use crate::seed::Seed;
use crate::symplectic::AlternatingMapQ;
use crate::torus::{pair, AlternatingFormZ, DecompositionAudit};
use crate::{Int, Rat};

/// Generators `g_1..g_n`, central generators `z_1..z_s`, and the commutator of
/// each pair `a < b` as an exponent vector over the `z_k`. Pairs not listed
/// commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationDoc", into = "PresentationDoc")]
pub struct Class2Presentation {
    generators: Vec<String>,
    central: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    generators: Vec<String>,
    central: Vec<String>,
    #[serde(default)]
    commutators: Vec<CommutatorDoc>,
}

/// A generator named either by string or by 0-based position.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GeneratorRef {
    Index(usize),
    Name(String),
}

#[derive(Serialize, Deserialize)]
struct CommutatorDoc {
    a: GeneratorRef,
    b: GeneratorRef,
    exps: Vec<i64>,
}

impl TryFrom<PresentationDoc> for Class2Presentation {
    type Error = Error;

    fn try_from(d: PresentationDoc) -> Result<Self> {
        let lookup = |r: &GeneratorRef| -> Result<usize> {
            match r {
                GeneratorRef::Index(i) if *i < d.generators.len() => Ok(*i),
                GeneratorRef::Index(i) => Err(Error::InvalidPresentation(format!("generator index {i} out of range"))),
                GeneratorRef::Name(n) => d
                    .generators
                    .iter()
                    .position(|g| g == n)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator {n:?}"))),
            }
        };
        let entries = d
            .commutators
            .iter()
            .map(|c| Ok((lookup(&c.a)?, lookup(&c.b)?, c.exps.clone())))
            .collect::<Result<Vec<_>>>()?;
        Class2Presentation::new(d.generators, d.central, &entries)
    }
}

impl From<Class2Presentation> for PresentationDoc {
    fn from(p: Class2Presentation) -> Self {
        let commutators = p
            .table
            .iter()
            .map(|(&(a, b), exps)| CommutatorDoc {
                a: GeneratorRef::Name(p.generators[a].clone()),
                b: GeneratorRef::Name(p.generators[b].clone()),
                exps: exps.clone(),
            })
            .collect();
        PresentationDoc { generators: p.generators, central: p.central, commutators }
    }
}

/// One Heisenberg factor of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergBlock {
    /// Half the rank of the block lattice.
    pub rank: usize,
    /// Saturated lattice of integer points in the block.
    pub lattice: Sublattice,
    /// Primitive integer vector spanning the commutator image of the block.
    pub line: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub decomposed: bool,
    pub heisenberg_blocks: Vec<HeisenbergBlock>,
    /// Rank of the centre of the commutator form.
    pub cyclic_rank: usize,
    pub centre: Sublattice,
    /// Audit of the block lattices, taken modulo the centre.
    pub audit: Option<DecompositionAudit>,
    pub diagnostics: Vec<String>,
}

impl Class2Presentation {
    /// `entries` are `(a, b, exps)` with `[g_a, g_b] = ∏ z_k^{exps_k}`; a pair
    /// may be given in either order but only once.
    pub fn new(generators: Vec<String>, central: Vec<String>, entries: &[(usize, usize, Vec<i64>)]) -> Result<Self> {
        let n = generators.len();
        let s = central.len();
        let mut table = BTreeMap::new();
        for (a, b, exps) in entries {
            let (a, b) = (*a, *b);
            if a >= n || b >= n {
                return Err(Error::InvalidPresentation(format!("pair ({a}, {b}) out of range")));
            }
            if exps.len() != s {
                return Err(Error::InvalidPresentation(format!(
                    "commutator ({a}, {b}) has {} exponents, expected {s}",
                    exps.len()
                )));
            }
            if a == b {
                if exps.iter().any(|e| *e != 0) {
                    return Err(Error::InvalidPresentation(format!("generator {a} does not commute with itself")));
                }
                continue;
            }
            let (key, val) = if a < b { ((a, b), exps.clone()) } else { ((b, a), exps.iter().map(|e| -e).collect()) };
            if table.insert(key, val).is_some() {
                return Err(Error::InvalidPresentation(format!("pair ({}, {}) given twice", key.0, key.1)));
            }
        }
        table.retain(|_, v: &mut Vec<i64>| v.iter().any(|e| *e != 0));
        Ok(Self { generators, central, table })
    }

    /// `⟨x_1..x_m, y_1..y_m, z : [x_i, y_i] = z⟩`, generators ordered `x` then `y`.
    pub fn heisenberg(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidPresentation("Heisenberg rank must be at least 1".into()));
        }
        let mut generators: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        generators.extend((1..=m).map(|i| format!("y{i}")));
        let entries: Vec<_> = (0..m).map(|i| (i, m + i, vec![1])).collect();
        Self::new(generators, vec!["z".into()], &entries)
    }

    /// Free abelian group of rank `n` (no commutators, no central generators).
    pub fn abelian(n: usize) -> Self {
        Self { generators: (1..=n).map(|i| format!("a{i}")).collect(), central: Vec::new(), table: BTreeMap::new() }
    }

    /// Product with independent central generators: generators and central
    /// generators are concatenated, prefixed by the factor index.
    pub fn product(factors: &[Class2Presentation]) -> Self {
        let mut generators = Vec::new();
        let mut central = Vec::new();
        let mut table = BTreeMap::new();
        let s_total: usize = factors.iter().map(|f| f.central.len()).sum();
        let (mut g_off, mut z_off) = (0, 0);
        for (i, f) in factors.iter().enumerate() {
            generators.extend(f.generators.iter().map(|g| format!("f{}.{g}", i + 1)));
            central.extend(f.central.iter().map(|z| format!("f{}.{z}", i + 1)));
            for (&(a, b), exps) in &f.table {
                let mut e = vec![0; s_total];
                e[z_off..z_off + exps.len()].copy_from_slice(exps);
                table.insert((a + g_off, b + g_off), e);
            }
            g_off += f.generators.len();
            z_off += f.central.len();
        }
        for v in table.values_mut() {
            v.resize(s_total, 0);
        }
        Self { generators, central, table }
    }

    /// Direct product with an infinite cyclic group.
    pub fn with_cyclic(&self, name: &str) -> Self {
        let mut out = self.clone();
        out.generators.push(name.to_string());
        out
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn central(&self) -> &[String] {
        &self.central
    }

    /// `(Φ_k)_{ab} = c_k(a, b)`.
    pub fn commutator_form(&self) -> AlternatingFormZ {
        let n = self.generators.len();
        let s = self.central.len();
        let mut phi = vec![vec![vec![0i64; n]; n]; s];
        for (&(a, b), exps) in &self.table {
            for (k, e) in exps.iter().enumerate() {
                phi[k][a][b] = *e;
                phi[k][b][a] = -e;
            }
        }
        AlternatingFormZ::new(n, phi).expect("table is antisymmetric by construction")
    }

    /// Split the commutator form into Heisenberg blocks plus the centre and
    /// audit the block lattices modulo the centre.
    pub fn structure_report(&self, seed: Seed) -> StructureReport {
        let phi = self.commutator_form();
        let n = phi.rank();
        let centre = phi.center_lattice();
        let cyclic_rank = centre.rank();
        let form = AlternatingMapQ::from(&phi);
        let base = match form.symplectic_base_default(seed) {
            Ok(b) => b,
            Err(e) => {
                let mut diagnostics = vec!["no symplectic base found".to_string()];
                diagnostics.extend(e.evidence);
                return StructureReport {
                    decomposed: false,
                    heisenberg_blocks: Vec::new(),
                    cyclic_rank,
                    centre,
                    audit: None,
                    diagnostics,
                };
            }
        };
        let heisenberg_blocks: Vec<HeisenbergBlock> = base
            .blocks()
            .iter()
            .zip(base.lines())
            .map(|(b, l)| HeisenbergBlock {
                rank: b.dim() / 2,
                lattice: integer_points(b.basis(), n),
                line: l.iter().map(|x| x.to_integer().to_i64().expect("small line entries")).collect(),
            })
            .collect();
        let mut diagnostics = Vec::new();
        let audit = match audit_modulo_centre(&phi, &centre, &heisenberg_blocks) {
            Ok(a) => Some(a),
            Err(e) => {
                diagnostics.push(format!("audit failed: {e}"));
                None
            }
        };
        StructureReport { decomposed: true, heisenberg_blocks, cyclic_rank, centre, audit, diagnostics }
    }
}

/// `span(basis) ∩ Z^n`, which is saturated.
fn integer_points(basis: &[Vec<Rat>], n: usize) -> Sublattice {
    let span = crate::lattice::Subspace::new(n, basis).expect("basis rows have width n");
    let orth: IntMatrix = span
        .orthogonal_complement()
        .basis()
        .iter()
        .map(|r| dense::primitive(r).into_iter().map(|x| x.to_integer()).collect())
        .collect();
    lattice::kernel_lattice(&orth, n)
}

/// Push the form and the block lattices to `Z^n / ζ` and audit them there.
fn audit_modulo_centre(
    phi: &AlternatingFormZ,
    centre: &Sublattice,
    blocks: &[HeisenbergBlock],
) -> Result<DecompositionAudit> {
    let n = phi.rank();
    // Rows of q: a basis of the integer functionals vanishing on ζ, so
    // a ↦ q a maps Z^n onto Z^{n-c} with kernel ζ.
    let q = lattice::kernel_lattice(centre.basis(), n);
    let k = q.rank();
    let qt: IntMatrix = (0..n).map(|j| q.basis().iter().map(|r| r[j].clone()).collect()).collect();
    let (_, u) = hnf(&qt, k);
    // q · sᵀ-columns = I: the first k rows of u, as columns, lift the quotient.
    let lift: Vec<Vec<i64>> = u[..k].iter().map(|r| r.iter().map(to_i64).collect()).collect();
    let quotient_phi: Vec<Vec<Vec<i64>>> = phi
        .matrices()
        .iter()
        .map(|m| lift.iter().map(|a| lift.iter().map(|b| pair(a, m, b)).collect()).collect())
        .collect();
    let quotient = AlternatingFormZ::new(k, quotient_phi)?;
    let project = |v: &[Int]| -> Vec<Int> {
        q.basis().iter().map(|r| r.iter().zip(v).fold(Int::zero(), |acc, (x, y)| acc + x * y)).collect()
    };
    let parts = blocks
        .iter()
        .map(|b| Sublattice::new(k, &b.lattice.basis().iter().map(|v| project(v)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    quotient.audit_decomposition(&parts)
}

fn to_i64(x: &Int) -> i64 {
    x.to_i64().expect("unimodular entries fit in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_tables() {
        let h1 = Class2Presentation::heisenberg(1).unwrap();
        assert_eq!(h1.generators().len(), 2);
        assert_eq!(h1.commutator_form().matrices(), &[vec![vec![0, 1], vec![-1, 0]]]);
        let h2 = Class2Presentation::heisenberg(2).unwrap();
        let j4 = vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]];
        assert_eq!(h2.commutator_form().matrices(), &[j4]);
        let hc = h1.with_cyclic("c");
        assert_eq!(hc.commutator_form().matrices(), &[vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]]);
        assert!(Class2Presentation::heisenberg(0).is_err());
    }

    #[test]
    fn abelian_and_products() {
        let a = Class2Presentation::abelian(3);
        assert!(a.commutator_form().matrices().is_empty());
        let h = Class2Presentation::heisenberg(1).unwrap();
        let p = Class2Presentation::product(&[h.clone(), h]);
        let phi = p.commutator_form();
        assert_eq!(phi.s(), 2);
        assert_eq!(phi.eval(&[1, 0, 0, 0], &[0, 1, 0, 0]), vec![1, 0]);
        assert_eq!(phi.eval(&[0, 0, 1, 0], &[0, 0, 0, 1]), vec![0, 1]);
    }

    #[test]
    fn reports() {
        for m in 1..=3 {
            let r = Class2Presentation::heisenberg(m).unwrap().structure_report(Seed::new(0));
            assert!(r.decomposed);
            assert_eq!(r.heisenberg_blocks.len(), 1);
            assert_eq!(r.heisenberg_blocks[0].rank, m);
            assert_eq!(r.cyclic_rank, 0);
            assert!(r.audit.unwrap().passed());
        }
        let hc = Class2Presentation::heisenberg(1).unwrap().with_cyclic("c").structure_report(Seed::new(0));
        assert_eq!((hc.heisenberg_blocks.len(), hc.heisenberg_blocks[0].rank, hc.cyclic_rank), (1, 1, 1));
        assert!(hc.audit.unwrap().passed());
        let ab = Class2Presentation::abelian(3).structure_report(Seed::new(0));
        assert!(ab.decomposed && ab.heisenberg_blocks.is_empty());
        assert_eq!(ab.cyclic_rank, 3);
    }

    #[test]
    fn json_names_or_indices() {
        let text = r#"{"generators":["x","y","w"],"central":["z"],"commutators":[{"a":"x","b":"y","exps":[1]},{"a":2,"b":0,"exps":[0]}]}"#;
        let p: Class2Presentation = crate::wire::from_json(text).unwrap();
        assert_eq!(p, Class2Presentation::heisenberg(1).unwrap().renamed(&["x", "y", "w"], &["z"]));
        let out = serde_json::to_string(&p).unwrap();
        assert_eq!(out, r#"{"generators":["x","y","w"],"central":["z"],"commutators":[{"a":"x","b":"y","exps":[1]}]}"#);
        let bad = r#"{"generators":["x"],"central":[],"commutators":[{"a":"q","b":"x","exps":[]}]}"#;
        assert!(crate::wire::from_json::<Class2Presentation>(bad).is_err());
    }

    impl Class2Presentation {
        fn renamed(&self, gens: &[&str], central: &[&str]) -> Self {
            let mut out = self.clone();
            out.generators = gens.iter().map(|s| s.to_string()).collect();
            out.central = central.iter().map(|s| s.to_string()).collect();
            out
        }
    }
}
