use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly;
use super::AlternatingMapQ;
use crate::error::{Error, Result};
use crate::lattice::dense::{self, RatMatrix};
use crate::lattice::Subspace;
use crate::seed::Seed;
use crate::Rat;

/// Retries used by the CLI and by [`AlternatingMapQ::symplectic_base_default`].
pub const DEFAULT_RETRIES: usize = 8;

/// Draws of `t` per attempt before giving up on finding an invertible `Φ(t)`.
const PENCIL_REDRAWS: usize = 16;

/// `V = V_0 ⊕ V_1 ⊕ ... ⊕ V_t` with `(V_i, V_i)` spanned by `lines[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BaseDoc", into = "BaseDoc")]
pub struct SymplecticBase {
    v0: Subspace,
    blocks: Vec<Subspace>,
    lines: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct BaseDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(rename = "V0", with = "crate::wire::rat_matrix")]
    v0: RatMatrix,
    #[serde(with = "crate::wire::rat_matrices")]
    blocks: Vec<RatMatrix>,
    #[serde(with = "crate::wire::rat_matrix")]
    lines: RatMatrix,
}

impl TryFrom<BaseDoc> for SymplecticBase {
    type Error = Error;

    fn try_from(d: BaseDoc) -> Result<Self> {
        let n = d
            .n
            .or_else(|| d.v0.first().map(Vec::len))
            .or_else(|| d.blocks.iter().flatten().next().map(Vec::len))
            .unwrap_or(0);
        let v0 = Subspace::new(n, &d.v0)?;
        let blocks = d.blocks.iter().map(|b| Subspace::new(n, b)).collect::<Result<_>>()?;
        SymplecticBase::new(v0, blocks, d.lines)
    }
}

impl From<SymplecticBase> for BaseDoc {
    fn from(b: SymplecticBase) -> Self {
        BaseDoc {
            n: Some(b.v0.ambient()),
            v0: b.v0.basis().clone(),
            blocks: b.blocks.iter().map(|s| s.basis().clone()).collect(),
            lines: b.lines,
        }
    }
}

/// Per-condition outcome of checking a candidate base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    /// `V_0` is the centre.
    pub v0_is_centre: bool,
    /// `(V_i, V_j) = 0` for `i ≠ j`.
    pub blocks_orthogonal: bool,
    /// Each `(V_i, V_i)` is one-dimensional.
    pub one_dimensional_images: bool,
    /// Each `V_i` has trivial centre.
    pub nondegenerate_blocks: bool,
    /// The lines `(V_i, V_i)` are pairwise distinct.
    pub distinct_lines: bool,
    /// The stated lines span the images.
    pub lines_match: bool,
    /// `V_0 + V_1 + ... + V_t` is direct and equals `V`.
    pub direct_sum: bool,
    pub passed: bool,
}

/// Every attempt of the pencil construction failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoBaseFound {
    pub attempts: usize,
    /// One line per attempt describing why it failed.
    pub evidence: Vec<String>,
    /// Verification of the last candidate that got that far.
    pub last_report: Option<BaseReport>,
}

impl SymplecticBase {
    pub fn new(v0: Subspace, blocks: Vec<Subspace>, lines: Vec<Vec<Rat>>) -> Result<Self> {
        let n = v0.ambient();
        if let Some(b) = blocks.iter().find(|b| b.ambient() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: b.ambient() });
        }
        if lines.len() != blocks.len() {
            return Err(Error::DimensionMismatch { expected: blocks.len(), found: lines.len() });
        }
        Ok(Self { v0, blocks, lines })
    }

    pub fn v0(&self) -> &Subspace {
        &self.v0
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn lines(&self) -> &[Vec<Rat>] {
        &self.lines
    }

    /// Blocks sorted by echelon basis, lines as primitive integer vectors.
    fn canonical(mut self) -> Self {
        let mut pairs: Vec<(Subspace, Vec<Rat>)> = self
            .blocks
            .into_iter()
            .zip(self.lines.iter().map(|l| dense::line_representative(l)))
            .collect();
        pairs.sort();
        (self.blocks, self.lines) = pairs.into_iter().unzip();
        self
    }
}

impl AlternatingMapQ {
    pub fn verify_base(&self, cand: &SymplecticBase) -> BaseReport {
        let n = self.n;
        let right_ambient = cand.v0.ambient() == n;
        let v0_is_centre = right_ambient && cand.v0 == self.center();
        let image = |a: &Subspace, b: &Subspace| self.pairing_image(a, b).ok();
        let images: Vec<Option<Subspace>> = cand.blocks.iter().map(|b| image(b, b)).collect();
        let mut blocks_orthogonal = right_ambient;
        for (i, a) in cand.blocks.iter().enumerate() {
            for b in &cand.blocks[i + 1..] {
                blocks_orthogonal &= image(a, b).is_some_and(|s| s.is_zero());
            }
        }
        let one_dimensional_images = images.iter().all(|im| im.as_ref().is_some_and(|s| s.dim() == 1));
        let nondegenerate_blocks =
            right_ambient && cand.blocks.iter().all(|b| !b.is_zero() && self.restrict(b.basis()).center().is_zero());
        let distinct_lines = (0..images.len()).all(|i| (i + 1..images.len()).all(|j| images[i] != images[j]));
        let lines_match = cand.lines.len() == cand.blocks.len()
            && cand.lines.iter().zip(&images).all(|(l, im)| {
                l.len() == self.s()
                    && !dense::is_zero_vec(l)
                    && im.as_ref().is_some_and(|s| *s == Subspace::span_unchecked(self.s(), std::slice::from_ref(l)))
            });
        let total: usize = cand.v0.dim() + cand.blocks.iter().map(Subspace::dim).sum::<usize>();
        let mut gens = cand.v0.basis().clone();
        for b in &cand.blocks {
            gens.extend(b.basis().iter().cloned());
        }
        let direct_sum = right_ambient && total == n && dense::rank(&gens, n) == n;
        let passed = v0_is_centre
            && blocks_orthogonal
            && one_dimensional_images
            && nondegenerate_blocks
            && distinct_lines
            && lines_match
            && direct_sum;
        BaseReport {
            v0_is_centre,
            blocks_orthogonal,
            one_dimensional_images,
            nondegenerate_blocks,
            distinct_lines,
            lines_match,
            direct_sum,
            passed,
        }
    }

    pub fn symplectic_base_default(&self, seed: Seed) -> Result<SymplecticBase, NoBaseFound> {
        self.symplectic_base(seed, DEFAULT_RETRIES)
    }

    /// Pencil-eigenspace construction. On the coordinate complement `V'` of
    /// the centre, `M = Φ(t)^{-1} Φ(t')` acts on a block with line `w` as the
    /// scalar `⟨t', w⟩ / ⟨t, w⟩`, so for generic `t, t'` its eigenspaces are
    /// the blocks. Each candidate is verified before it is returned.
    pub fn symplectic_base(&self, seed: Seed, retries: usize) -> Result<SymplecticBase, NoBaseFound> {
        let v0 = self.center();
        let comp = v0.coordinate_complement();
        let d = comp.dim();
        let local = self.restrict(comp.basis());
        let mut evidence = Vec::new();
        let mut last_report = None;
        for attempt in 0..retries.max(1) {
            let mut rng = seed.rng(&format!("symplectic-base/{attempt}"));
            let outcome = self.pencil_attempt(&v0, &comp, &local, d, &mut rng);
            match outcome {
                Ok(cand) => {
                    let report = self.verify_base(&cand);
                    if report.passed {
                        return Ok(cand.canonical());
                    }
                    evidence.push(format!("attempt {attempt}: candidate failed verification"));
                    last_report = Some(report);
                }
                Err(reason) => evidence.push(format!("attempt {attempt}: {reason}")),
            }
        }
        Err(NoBaseFound { attempts: retries.max(1), evidence, last_report })
    }

    fn pencil_attempt(
        &self,
        v0: &Subspace,
        comp: &Subspace,
        local: &AlternatingMapQ,
        d: usize,
        rng: &mut impl Rng,
    ) -> std::result::Result<SymplecticBase, String> {
        if d == 0 {
            return Ok(SymplecticBase { v0: v0.clone(), blocks: Vec::new(), lines: Vec::new() });
        }
        let s = self.s();
        let mut draw = || -> Vec<Rat> { (0..s).map(|_| crate::rat(rng.random_range(-9..=9))).collect() };
        let mut pencil = None;
        for _ in 0..PENCIL_REDRAWS {
            let t = draw();
            if let Some(inv) = dense::inverse(&local.combination(&t)) {
                pencil = Some(inv);
                break;
            }
        }
        let inv = pencil.ok_or("Φ(t) singular on every draw")?;
        let t2 = draw();
        let m = dense::mat_mul(&inv, &local.combination(&t2), d);
        let roots = poly::rational_roots(&dense::charpoly(&m)).ok_or("characteristic polynomial too large to factor")?;
        let mut spaces: Vec<RatMatrix> = Vec::new();
        for lambda in &roots {
            let mut shifted = m.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] -= lambda;
            }
            spaces.push(dense::kernel(&shifted, d));
        }
        let found: usize = spaces.iter().map(Vec::len).sum();
        if found != d {
            return Err(format!("pencil not diagonalizable over Q: eigenspaces cover {found} of {d} dimensions"));
        }
        // Lift eigenvectors from V' coordinates to V, then merge equal lines.
        let mut merged: Vec<(Subspace, Vec<Rat>)> = Vec::new();
        for space in spaces {
            let vectors: RatMatrix = space.iter().map(|z| dense::vec_mat(z, comp.basis(), self.n)).collect();
            let block = Subspace::span_unchecked(self.n, &vectors);
            let image = self.pairing_image(&block, &block).expect("same ambient");
            if image.dim() != 1 {
                return Err(format!("eigenspace of dimension {} has image of dimension {}", block.dim(), image.dim()));
            }
            let line = dense::line_representative(&image.basis()[0]);
            match merged.iter_mut().find(|(_, l)| *l == line) {
                Some((b, _)) => *b = b.sum(&block).expect("same ambient"),
                None => merged.push((block, line)),
            }
        }
        let (blocks, lines) = merged.into_iter().unzip();
        Ok(SymplecticBase { v0: v0.clone(), blocks, lines })
    }

    /// `[U ∩ V_1, ..., U ∩ V_t]` for an abelian `U` of dimension at least `dim V / 2`.
    pub fn decompose_abelian(&self, base: &SymplecticBase, u: &Subspace) -> Result<Vec<Subspace>> {
        let centre = self.center();
        if !centre.is_zero() {
            return Err(Error::NontrivialCenter(centre.dim()));
        }
        if !self.verify_base(base).passed {
            return Err(Error::InvalidBase);
        }
        if !self.is_abelian(u)? {
            return Err(Error::NotAbelian);
        }
        let m = self.n / 2;
        if u.dim() < m {
            return Err(Error::AbelianTooSmall { found: u.dim(), needed: m });
        }
        base.blocks.iter().map(|b| u.intersection(b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_block;
    use super::*;
    use crate::rat;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn span(rows: &[&[i64]], n: usize) -> Subspace {
        Subspace::new(n, &rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
    }

    fn fixture_base() -> SymplecticBase {
        SymplecticBase::new(
            Subspace::zero(4),
            vec![span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]], 4), span(&[&[0, 0, 1, 0], &[0, 0, 0, 1]], 4)],
            vec![v(&[1, 0]), v(&[0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn verify_examples() {
        let f = two_block();
        assert!(f.verify_base(&fixture_base()).passed);
        let mut swapped = fixture_base();
        swapped.lines.swap(0, 1);
        let r = f.verify_base(&swapped);
        assert!(!r.passed && !r.lines_match);
        // A form whose two blocks share a line fails distinctness.
        let twin = AlternatingMapQ::from_i64(
            4,
            &[vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]],
        )
        .unwrap();
        let cand = SymplecticBase::new(fixture_base().v0, fixture_base().blocks, vec![v(&[1]), v(&[1])]).unwrap();
        let r = twin.verify_base(&cand);
        assert!(!r.distinct_lines && r.blocks_orthogonal && r.one_dimensional_images);
        let jz = super::super::tests::j_plus_zero();
        let bad = SymplecticBase::new(Subspace::zero(3), vec![span(&[&[1, 0, 0], &[0, 1, 0]], 3)], vec![v(&[1])]).unwrap();
        let r = jz.verify_base(&bad);
        assert!(!r.v0_is_centre && !r.passed);
    }

    #[test]
    fn single_block() {
        let j = AlternatingMapQ::from_i64(2, &[vec![vec![0, 1], vec![-1, 0]]]).unwrap();
        let b = j.symplectic_base_default(Seed::new(0)).unwrap();
        assert_eq!(b.blocks(), &[Subspace::full(2)]);
        assert_eq!(b.lines(), &[v(&[1])]);
    }

    #[test]
    fn two_blocks_recovered() {
        let b = two_block().symplectic_base_default(Seed::new(1)).unwrap();
        assert_eq!(b, fixture_base().canonical());
    }

    #[test]
    fn equal_lines_merge() {
        let twin = AlternatingMapQ::from_i64(
            4,
            &[vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]],
        )
        .unwrap();
        let b = twin.symplectic_base_default(Seed::new(2)).unwrap();
        assert_eq!(b.blocks(), &[Subspace::full(4)]);
        assert_eq!(b.lines(), &[v(&[1])]);
    }

    #[test]
    fn with_centre() {
        let jz = super::super::tests::j_plus_zero();
        let b = jz.symplectic_base_default(Seed::new(3)).unwrap();
        assert_eq!(b.v0(), &span(&[&[0, 0, 1]], 3));
        assert_eq!(b.blocks().len(), 1);
        assert!(jz.verify_base(&b).passed);
        let zero = AlternatingMapQ::from_i64(2, &[vec![vec![0, 0], vec![0, 0]]]).unwrap();
        let b = zero.symplectic_base_default(Seed::new(3)).unwrap();
        assert!(b.blocks().is_empty() && b.v0().is_full());
    }

    #[test]
    fn no_base_fixture() {
        // (e1,e2) ↦ w1, (e3,e4) ↦ w1, (e1,e3) ↦ w2.
        let mut p1 = vec![vec![0i64; 4]; 4];
        let mut p2 = vec![vec![0i64; 4]; 4];
        p1[0][1] = 1;
        p1[1][0] = -1;
        p1[2][3] = 1;
        p1[3][2] = -1;
        p2[0][2] = 1;
        p2[2][0] = -1;
        let f = AlternatingMapQ::from_i64(4, &[p1, p2]).unwrap();
        let err = f.symplectic_base_default(Seed::new(0)).unwrap_err();
        assert_eq!(err.attempts, DEFAULT_RETRIES);
        assert_eq!(err.evidence.len(), DEFAULT_RETRIES);
    }

    #[test]
    fn abelian_decomposition() {
        let f = two_block();
        let base = fixture_base();
        let parts = f.decompose_abelian(&base, &span(&[&[1, 0, 0, 0], &[0, 0, 1, 0]], 4)).unwrap();
        assert_eq!(parts, vec![span(&[&[1, 0, 0, 0]], 4), span(&[&[0, 0, 1, 0]], 4)]);
        let bad = span(&[&[1, 0, 1, 0], &[0, 1, 0, 0]], 4);
        assert_eq!(f.decompose_abelian(&base, &bad), Err(Error::NotAbelian));
        let small = span(&[&[1, 0, 0, 0]], 4);
        assert_eq!(f.decompose_abelian(&base, &small), Err(Error::AbelianTooSmall { found: 1, needed: 2 }));
        let jz = super::super::tests::j_plus_zero();
        let b = jz.symplectic_base_default(Seed::new(0)).unwrap();
        assert_eq!(jz.decompose_abelian(&b, &span(&[&[1, 0, 0]], 3)), Err(Error::NontrivialCenter(1)));
    }

    #[test]
    fn codimension_characterization() {
        let f = two_block();
        let base = fixture_base();
        let mut rng = Seed::new(4).rng("codim");
        for _ in 0..200 {
            let a: Vec<Rat> = (0..4).map(|_| rat(rng.random_range(-3..=3))).collect();
            let in_block = base.blocks().iter().any(|b| b.contains_vector(&a));
            let nonzero = !dense::is_zero_vec(&a);
            assert_eq!(nonzero && f.centralizer_codim(&a) <= 1, nonzero && in_block);
        }
    }

    #[test]
    fn json_round_trip() {
        let b = fixture_base();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<SymplecticBase>(&text).unwrap(), b);
        let bare = r#"{"V0":[],"blocks":[[["1","0"],["0","1"]]],"lines":[["1"]]}"#;
        let parsed: SymplecticBase = serde_json::from_str(bare).unwrap();
        assert_eq!(parsed.blocks()[0], Subspace::full(2));
        assert_eq!(parsed.lines()[0], vec![rat(1)]);
    }
}
