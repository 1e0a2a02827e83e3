use rand::Rng;
use serde::{Deserialize, Serialize};

use super::AlternatingMapQ;
use crate::error::{Error, Result};
use crate::lattice::dense;
use crate::lattice::Subspace;
use crate::seed::Seed;
use crate::Rat;

/// Random abelian probes generated when the caller supplies none.
const SEEDED_PROBES: usize = 8;

/// Outcome of checking a family `Ω` of `m`-dimensional abelian subspaces of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleReport {
    pub m: usize,
    pub dim_x: usize,
    pub dim_centre: usize,
    /// `dim X + dim ζ(X) = 2m`.
    pub dimension_condition: bool,
    /// Every `U_1 ∈ Ω` meets some other `U_2 ∈ Ω` in more than `ζ(X)`.
    /// `None` when `dim X / ζ(X) ≤ 2`, where the condition is not imposed.
    pub intersection_condition: Option<bool>,
    /// Every probe `U` has some `U_1 ∈ Ω` with `U ∩ U_1 ⊆ ζ(X)`.
    pub probe_condition: bool,
    /// The abelian subspaces the probe condition was tested against.
    pub probes: Vec<Subspace>,
    pub failing_probe: Option<Subspace>,
    pub passed: bool,
}

impl AlternatingMapQ {
    /// Check the ample-family conditions for `omega` inside `x`. Probe
    /// condition quantifies over all abelian subspaces of `x`; only the members
    /// of `omega`, the supplied `probes` (or, if none, seeded random abelian
    /// subspaces) are tested, and the report lists them.
    pub fn check_ample(
        &self,
        x: &Subspace,
        omega: &[Subspace],
        probes: Option<&[Subspace]>,
        seed: Seed,
    ) -> Result<AmpleReport> {
        let centre = self.relative_center(x)?;
        let first = omega.first().ok_or_else(|| Error::MalformedFamily("family is empty".into()))?;
        let m = first.dim();
        for (i, u) in omega.iter().enumerate() {
            if u.ambient() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, found: u.ambient() });
            }
            if u.dim() != m {
                return Err(Error::MalformedFamily(format!("member {i} has dimension {}, expected {m}", u.dim())));
            }
            if !x.contains(u) {
                return Err(Error::MalformedFamily(format!("member {i} is not inside X")));
            }
            if !self.is_abelian(u)? {
                return Err(Error::MalformedFamily(format!("member {i} is not abelian")));
            }
        }
        let dimension_condition = x.dim() + centre.dim() == 2 * m;

        let exceeds_centre = |s: &Subspace| s.contains(&centre) && s.dim() > centre.dim();
        let intersection_condition = (x.dim() - centre.dim() > 2).then(|| {
            omega.iter().enumerate().all(|(i, u1)| {
                omega.iter().enumerate().any(|(j, u2)| {
                    j != i && u2 != u1 && exceeds_centre(&u1.intersection(u2).expect("same ambient"))
                })
            })
        });

        let mut probe_set: Vec<Subspace> = omega.to_vec();
        match probes {
            Some(p) => {
                for (i, u) in p.iter().enumerate() {
                    if !x.contains(u) || !self.is_abelian(u)? {
                        return Err(Error::MalformedFamily(format!("probe {i} is not an abelian subspace of X")));
                    }
                }
                probe_set.extend(p.iter().cloned());
            }
            None => {
                let mut rng = seed.rng("ample-probes");
                for _ in 0..SEEDED_PROBES {
                    probe_set.push(self.random_abelian(x, m.max(1), &mut rng));
                }
            }
        }
        probe_set.sort();
        probe_set.dedup();
        let failing_probe = probe_set
            .iter()
            .find(|u| {
                !omega
                    .iter()
                    .any(|u1| centre.contains(&u.intersection(u1).expect("same ambient")))
            })
            .cloned();
        let probe_condition = failing_probe.is_none();
        let passed = dimension_condition && intersection_condition.unwrap_or(true) && probe_condition;
        Ok(AmpleReport {
            m,
            dim_x: x.dim(),
            dim_centre: centre.dim(),
            dimension_condition,
            intersection_condition,
            probe_condition,
            probes: probe_set,
            failing_probe,
            passed,
        })
    }

    /// Grow an abelian subspace of `x` one random vector at a time, each drawn
    /// from the part of `x` centralizing what has been built so far.
    fn random_abelian(&self, x: &Subspace, max_dim: usize, rng: &mut impl Rng) -> Subspace {
        let target = rng.random_range(1..=max_dim);
        let mut current = Subspace::zero(self.n);
        while current.dim() < target {
            let room = x.intersection(&self.centralizer(&current).expect("same ambient")).expect("same ambient");
            if room.dim() == current.dim() {
                break;
            }
            let v: Vec<Rat> = room
                .basis()
                .iter()
                .fold(vec![crate::rat(0); self.n], |acc, b| {
                    dense::add(&acc, &dense::scale(b, &crate::rat(rng.random_range(-3..=3))))
                });
            let grown = current.sum(&Subspace::span_unchecked(self.n, &[v] as &[Vec<Rat>])).expect("same ambient");
            current = grown;
        }
        current
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn line(x: &[i64]) -> Subspace {
        Subspace::new(x.len(), &[v(x)]).unwrap()
    }

    fn j() -> AlternatingMapQ {
        AlternatingMapQ::from_i64(2, &[vec![vec![0, 1], vec![-1, 0]]]).unwrap()
    }

    #[test]
    fn symplectic_plane() {
        let omega = [line(&[1, 0]), line(&[0, 1])];
        let probes = [line(&[1, 0]), line(&[0, 1]), line(&[1, 1])];
        let r = j().check_ample(&Subspace::full(2), &omega, Some(&probes), Seed::new(0)).unwrap();
        assert!(r.dimension_condition);
        assert_eq!(r.intersection_condition, None);
        assert!(r.probe_condition && r.passed);
        assert_eq!(r.probes.len(), 3);
    }

    #[test]
    fn single_member_fails_probe() {
        let omega = [line(&[1, 0])];
        let r = j().check_ample(&Subspace::full(2), &omega, None, Seed::new(0)).unwrap();
        assert!(!r.probe_condition && !r.passed);
        assert_eq!(r.failing_probe, Some(line(&[1, 0])));
    }

    #[test]
    fn degenerate_zero_form() {
        let zero = AlternatingMapQ::from_i64(2, &[vec![vec![0, 0], vec![0, 0]]]).unwrap();
        let omega = [line(&[1, 0])];
        let r = zero.check_ample(&Subspace::full(2), &omega, None, Seed::new(0)).unwrap();
        assert!(!r.dimension_condition && !r.passed);
        let full = [Subspace::full(2)];
        let r = zero.check_ample(&Subspace::full(2), &full, None, Seed::new(0)).unwrap();
        assert!(r.dimension_condition);
    }

    #[test]
    fn malformed_families() {
        let x = Subspace::full(2);
        assert!(matches!(j().check_ample(&x, &[], None, Seed::new(0)), Err(Error::MalformedFamily(_))));
        assert!(matches!(j().check_ample(&x, &[Subspace::full(2)], None, Seed::new(0)), Err(Error::MalformedFamily(_))));
        let mixed = [line(&[1, 0]), Subspace::zero(2)];
        assert!(matches!(j().check_ample(&x, &mixed, None, Seed::new(0)), Err(Error::MalformedFamily(_))));
    }

    #[test]
    fn intersection_condition_in_dimension_four() {
        let f = super::super::tests::two_block();
        let x = Subspace::full(4);
        let l = |rows: &[&[i64]]| Subspace::new(4, &rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
        let a = l(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        let b = l(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        let c = l(&[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let d = l(&[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let r = f.check_ample(&x, &[a.clone(), b.clone(), c.clone(), d.clone()], None, Seed::new(1)).unwrap();
        assert_eq!(r.intersection_condition, Some(true));
        assert!(r.dimension_condition);
        let r = f.check_ample(&x, &[a, c], None, Seed::new(1)).unwrap();
        assert_eq!(r.intersection_condition, Some(false));
    }

    #[test]
    fn seeded_probes_are_abelian_and_reproducible() {
        let f = super::super::tests::two_block();
        let x = Subspace::full(4);
        let omega = [Subspace::new(4, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0])]).unwrap()];
        let r1 = f.check_ample(&x, &omega, None, Seed::new(9)).unwrap();
        let r2 = f.check_ample(&x, &omega, None, Seed::new(9)).unwrap();
        assert_eq!(r1, r2);
        for p in &r1.probes {
            assert!(f.is_abelian(p).unwrap());
        }
    }
}
