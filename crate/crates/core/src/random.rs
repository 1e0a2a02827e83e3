//! Seeded generators of random instances: relators, characters, unimodular
//! changes of basis, saturated sublattices, and alternating forms with a known
//! symplectic base. Shared by the command line sampler, the test suites and
//! the benchmarks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::delta::{Character, OneRelatorModule};
use crate::lattice::{dense, to_int_vec, Sublattice, Subspace};
use crate::symplectic::AlternatingMapQ;
use crate::torus::{CocycleForm, Laurent, QTorusElement};
use crate::{rat, ratio, Rat};

/// Shape of a random relator.
#[derive(Clone, Copy, Debug)]
pub struct RelatorShape {
    pub n: usize,
    /// Support size is drawn from `2..=max_support`.
    pub max_support: usize,
    pub s: usize,
    /// Exponent entries are drawn from `-spread..=spread`.
    pub spread: i64,
}

impl RelatorShape {
    pub fn new(n: usize, max_support: usize, s: usize) -> Self {
        Self { n, max_support, s, spread: 2 }
    }
}

fn nonzero_rat(rng: &mut impl Rng) -> Rat {
    let num = loop {
        let x = rng.random_range(-5..=5);
        if x != 0 {
            break x;
        }
    };
    ratio(num, rng.random_range(1..=3))
}

/// A nonzero Laurent polynomial in `q_1..q_s` with one or two terms.
pub fn laurent(rng: &mut impl Rng, s: usize) -> Laurent {
    let mut out = Laurent::zero();
    while out.is_zero() {
        for _ in 0..rng.random_range(1..=2) {
            let qexp: Vec<i64> = (0..s).map(|_| rng.random_range(-1..=1)).collect();
            out = out.add(&Laurent::monomial(qexp, nonzero_rat(rng)));
        }
    }
    out
}

/// Cocycle with entries of each `B_k` in `-2..=2`.
pub fn cocycle(rng: &mut impl Rng, n: usize, s: usize) -> CocycleForm {
    let b = (0..s)
        .map(|_| (0..n).map(|_| (0..n).map(|_| rng.random_range(-2..=2)).collect()).collect())
        .collect();
    CocycleForm::new(n, b).expect("square matrices of the right size")
}

/// Relator supported on `support` (exponents in `Z^n`) with random coefficients.
pub fn relator_on(rng: &mut impl Rng, n: usize, s: usize, support: &BTreeSet<Vec<i64>>) -> QTorusElement {
    let terms = support.iter().map(|a| (a.clone(), laurent(rng, s))).collect();
    QTorusElement::new(n, terms).expect("exponents have length n")
}

/// Random module `FA / r FA` of the given shape.
pub fn module(rng: &mut impl Rng, shape: RelatorShape) -> OneRelatorModule {
    let k = rng.random_range(2..=shape.max_support.max(2));
    let mut support = BTreeSet::new();
    while support.len() < k {
        support.insert((0..shape.n).map(|_| rng.random_range(-shape.spread..=shape.spread)).collect::<Vec<_>>());
    }
    let relator = relator_on(rng, shape.n, shape.s, &support);
    OneRelatorModule::new(relator, cocycle(rng, shape.n, shape.s)).expect("nonzero relator of matching rank")
}

/// Character with coordinates `p / q`, `|p| ≤ 3`, `1 ≤ q ≤ 2`.
pub fn grid_character(rng: &mut impl Rng, n: usize) -> Character {
    Character::new((0..n).map(|_| ratio(rng.random_range(-3..=3), rng.random_range(1..=2))).collect())
}

/// Unimodular `n x n` integer matrix: a product of signed permutations and
/// elementary row operations with small multipliers.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    m.shuffle(rng);
    for row in m.iter_mut() {
        if rng.random_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let c = [-2, -1, 1, 2][rng.random_range(0..4)];
        let src = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(&src) {
            *x += c * y;
        }
    }
    m
}

/// Saturated sublattice of `Z^n` of the given rank: leading rows of a
/// unimodular matrix.
pub fn saturated_sublattice(rng: &mut impl Rng, n: usize, rank: usize) -> Sublattice {
    let u = unimodular(rng, n);
    let gens: Vec<_> = u[..rank].iter().map(|r| to_int_vec(r)).collect();
    Sublattice::new(n, &gens).expect("rows have length n")
}

/// Random module whose relator is supported in the saturated sublattice `a1`.
pub fn module_in(rng: &mut impl Rng, a1: &Sublattice, max_support: usize, s: usize) -> OneRelatorModule {
    let n = a1.ambient();
    let basis: Vec<Vec<i64>> = a1
        .basis()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).expect("small lattice entries")).collect())
        .collect();
    let k = rng.random_range(2..=max_support.max(2));
    let mut coords = BTreeSet::new();
    // A rank-1 lattice only has 5 points with coordinates in -2..=2.
    let k = if a1.rank() == 1 { k.min(5) } else { k };
    while coords.len() < k {
        coords.insert((0..a1.rank()).map(|_| rng.random_range(-2..=2)).collect::<Vec<i64>>());
    }
    let support: BTreeSet<Vec<i64>> = coords
        .iter()
        .map(|c| (0..n).map(|j| c.iter().zip(&basis).map(|(ci, row)| ci * row[j]).sum()).collect())
        .collect();
    let relator = relator_on(rng, n, s, &support);
    OneRelatorModule::new(relator, cocycle(rng, n, s)).expect("nonzero relator of matching rank")
}

/// An alternating form together with the symplectic base it was built from.
#[derive(Clone, Debug)]
pub struct BasedForm {
    pub form: AlternatingMapQ,
    pub v0: Subspace,
    pub blocks: Vec<Subspace>,
    /// Primitive integer line of each block, first nonzero entry positive.
    pub lines: Vec<Vec<Rat>>,
    /// Columns of the inverse change of basis, used to carry standard
    /// coordinates to the coordinates of `form`.
    back: Vec<Vec<Rat>>,
    /// Half-dimensions of the blocks and the central dimension, in order.
    halves: Vec<usize>,
    central: usize,
}

/// `count` pairwise non-proportional primitive vectors in `Z^s`, entries in `-2..=2`.
pub fn distinct_lines(rng: &mut impl Rng, s: usize, count: usize) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    while out.len() < count {
        let v: Vec<Rat> = (0..s).map(|_| rat(rng.random_range(-2..=2))).collect();
        if dense::is_zero_vec(&v) {
            continue;
        }
        let line = dense::line_representative(&v);
        if !out.contains(&line) {
            out.push(line);
        }
    }
    out
}

/// Form `Σ_i w_i ⊗ J_{2m_i}` plus a zero block of size `central`, conjugated
/// by a random unimodular matrix. Block `i` has half-dimension `halves[i]` and
/// line `w_i`; the lines are pairwise distinct.
pub fn based_form(rng: &mut impl Rng, halves: &[usize], s: usize, central: usize) -> BasedForm {
    let lines = distinct_lines(rng, s, halves.len());
    let n = 2 * halves.iter().sum::<usize>() + central;
    let mut phi = vec![dense::zeros(n, n); s];
    let mut offset = 0;
    let mut std_blocks = Vec::new();
    for (m, w) in halves.iter().zip(&lines) {
        for j in 0..*m {
            let (x, y) = (offset + j, offset + m + j);
            for (k, p) in phi.iter_mut().enumerate() {
                p[x][y] = w[k].clone();
                p[y][x] = -w[k].clone();
            }
        }
        std_blocks.push((offset, 2 * m));
        offset += 2 * m;
    }
    let u = dense::to_rat_matrix(&unimodular(rng, n));
    let back = dense::transpose(&dense::inverse(&u).expect("unimodular"), n);
    let form = AlternatingMapQ::new(n, phi).expect("antisymmetric by construction").conjugate(&u);
    let carry = |range: std::ops::Range<usize>| Subspace::new(n, &back[range].to_vec()).expect("rows have length n");
    let blocks = std_blocks.iter().map(|&(o, d)| carry(o..o + d)).collect();
    let v0 = carry(offset..n);
    BasedForm { form, v0, blocks, lines, back, halves: halves.to_vec(), central }
}

impl BasedForm {
    /// Random maximal abelian subspace: the centre plus, in every block, the
    /// graph of a random symmetric matrix over a random choice of polarization.
    pub fn random_lagrangian(&self, rng: &mut impl Rng) -> Subspace {
        let n = self.form.n();
        let mut vectors: Vec<Vec<Rat>> = Vec::new();
        let mut offset = 0;
        for &m in &self.halves {
            // Swapping (x_j, y_j) -> (y_j, -x_j) is symplectic, so the graph
            // stays Lagrangian whichever half is used as the base.
            let swap: Vec<bool> = (0..m).map(|_| rng.random_bool(0.5)).collect();
            let mut sym = vec![vec![0i64; m]; m];
            for i in 0..m {
                for j in i..m {
                    let v = rng.random_range(-2..=2);
                    sym[i][j] = v;
                    sym[j][i] = v;
                }
            }
            for j in 0..m {
                let mut v = vec![rat(0); n];
                let (bj, _, _) = polar(offset, m, swap[j], j);
                v[bj] = rat(1);
                for l in 0..m {
                    let (_, fl, sign) = polar(offset, m, swap[l], l);
                    v[fl] += rat(sign * sym[j][l]);
                }
                vectors.push(v);
            }
            offset += 2 * m;
        }
        for c in offset..offset + self.central {
            let mut v = vec![rat(0); n];
            v[c] = rat(1);
            vectors.push(v);
        }
        let carried: Vec<Vec<Rat>> = vectors.iter().map(|v| dense::vec_mat(v, &self.back, n)).collect();
        Subspace::new(n, &carried).expect("rows have length n")
    }
}

/// Index of `p_j`, index of `q_j` and the sign of `q_j` for the polarization
/// `(p_j, q_j) = (x_j, y_j)` or, when swapped, `(y_j, -x_j)`.
fn polar(offset: usize, m: usize, swapped: bool, j: usize) -> (usize, usize, i64) {
    if swapped {
        (offset + m + j, offset + j, -1)
    } else {
        (offset + j, offset + m + j, 1)
    }
}
