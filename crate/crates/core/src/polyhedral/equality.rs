//! Point-set containment of a cone in a fan.
//!
//! Pull every cone of the fan back to the span of the tested cone and keep
//! the full-dimensional pieces; the others are closed and nowhere dense there,
//! so they cannot help cover it. Split the cone into the open chambers of the
//! pieces' hyperplanes, stopping early on any region that already lies inside
//! one piece. Each chamber lies wholly inside or wholly outside every piece,
//! so testing one interior point per chamber decides containment.

use num_traits::{One, Signed, Zero};

use super::{Cone, Fan};
use crate::lattice::dense::{self, RatMatrix};
use crate::Rat;

pub(super) fn uncovered_point(c: &Cone, fan: &Fan) -> Option<Vec<Rat>> {
    let n = c.ambient();
    let span = c.span();
    let basis = span.basis();
    let k = basis.len();
    let lift = |z: &[Rat]| dense::vec_mat(z, basis, n);
    let into_span = dense::transpose(basis, n);

    let (pieces, thin): (Vec<Cone>, Vec<Cone>) = fan
        .cones()
        .iter()
        .map(|d| d.pullback(&into_span, k).expect("restricted widths"))
        .partition(|d| d.dim() == k);
    let mut hyperplanes: RatMatrix =
        pieces.iter().flat_map(|d| d.inequalities().iter().map(|h| dense::line_representative(h))).collect();
    hyperplanes.sort();
    hyperplanes.dedup();

    let restrict = |a: &Vec<Rat>| dense::mat_vec(basis, a);
    let root_constraints: RatMatrix = c.inequalities().iter().map(restrict).collect();
    let root = Cone::new(k, &[], &root_constraints).expect("restricted widths");
    let mut stack = vec![(root_constraints, root, 0usize)];
    while let Some((constraints, region, next)) = stack.pop() {
        if pieces.iter().any(|d| d.contains_cone(&region)) {
            continue;
        }
        let split_at = (next..hyperplanes.len()).find(|&i| cuts(&region, &hyperplanes[i]));
        match split_at {
            Some(i) => {
                let h = &hyperplanes[i];
                for sign in [h.clone(), h.iter().map(|x| -x).collect()] {
                    let mut child = constraints.clone();
                    child.push(sign);
                    let cone = Cone::new(k, &[], &child).expect("restricted widths");
                    stack.push((child, cone, i + 1));
                }
            }
            None => {
                if !pieces.iter().any(|d| d.contains_point(&region.interior_point())) {
                    return Some(lift(&avoiding(&region, &thin)));
                }
            }
        }
    }
    None
}

/// A point in the interior of the full-dimensional `region` outside every
/// cone of `thin`. The points `sum (1 + t^j) g_j` over the generators `g_j`
/// are interior for every `t >= 1`, and a proper subspace holds at most as
/// many of them as there are generators.
fn avoiding(region: &Cone, thin: &[Cone]) -> Vec<Rat> {
    let mut gens = region.rays().clone();
    for l in region.lineality() {
        gens.push(l.clone());
        gens.push(l.iter().map(|x| -x).collect());
    }
    let k = region.ambient();
    (1..)
        .map(|t: i64| {
            let mut z = vec![Rat::zero(); k];
            let mut power = Rat::from_integer(t.into());
            for g in &gens {
                z = dense::add(&z, &dense::scale(g, &(Rat::one() + &power)));
                power *= Rat::from_integer(t.into());
            }
            z
        })
        .find(|z| !thin.iter().any(|d| d.contains_point(z)))
        .expect("finitely many proper subspaces")
}

/// Whether `h` takes both signs on the full-dimensional cone `region`.
fn cuts(region: &Cone, h: &[Rat]) -> bool {
    if region.lineality().iter().any(|l| !dense::dot(h, l).is_zero()) {
        return true;
    }
    let mut pos = false;
    let mut neg = false;
    for r in region.rays() {
        let v = dense::dot(h, r);
        pos |= v.is_positive();
        neg |= v.is_negative();
    }
    pos && neg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::seed::Seed;
    use rand::Rng;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn random_cone(rng: &mut impl Rng, n: usize) -> Cone {
        let eqs = if rng.random_bool(0.3) { 1 } else { 0 };
        let ineqs = rng.random_range(0..4);
        let row = |rng: &mut dyn rand::RngCore| (0..n).map(|_| rat(rng.random_range(-2..=2))).collect::<Vec<_>>();
        let e: RatMatrix = (0..eqs).map(|_| row(rng)).collect();
        let i: RatMatrix = (0..ineqs).map(|_| row(rng)).collect();
        Cone::new(n, &e, &i).unwrap()
    }

    fn random_fan(rng: &mut impl Rng, n: usize) -> Fan {
        let count = rng.random_range(0..4);
        Fan::new(n, (0..count).map(|_| random_cone(rng, n)).collect()).unwrap()
    }

    #[test]
    fn agrees_with_point_sampling() {
        // Monte Carlo oracle: any sampled point in exactly one fan refutes equality.
        let mut rng = Seed::new(11).rng("fan-equality");
        let mut checked = 0;
        for _ in 0..150 {
            let n = rng.random_range(1..=3);
            let f = random_fan(&mut rng, n);
            let g = if rng.random_bool(0.4) {
                // Same set, different presentation: split every cone by a random hyperplane.
                let h: Vec<Rat> = (0..n).map(|_| rat(rng.random_range(-2..=2))).collect();
                let neg: Vec<Rat> = h.iter().map(|x| -x).collect();
                let mut parts = Vec::new();
                for c in f.cones() {
                    for s in [&h, &neg] {
                        let mut ineq = c.inequalities().clone();
                        ineq.push(s.clone());
                        parts.push(Cone::new(n, c.equalities(), &ineq).unwrap());
                    }
                }
                Fan::new(n, parts).unwrap()
            } else {
                random_fan(&mut rng, n)
            };
            let witness = f.difference_witness(&g);
            if let Some(w) = &witness {
                assert_ne!(f.contains_point(w), g.contains_point(w), "{f:?}\n{g:?}\n{w:?}");
            }
            for _ in 0..60 {
                let p: Vec<Rat> = (0..n).map(|_| crate::ratio(rng.random_range(-20..=20), rng.random_range(1..=5))).collect();
                if f.contains_point(&p) != g.contains_point(&p) {
                    assert!(witness.is_some());
                }
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn lower_dimensional_covering() {
        // A line covered by two opposite rays.
        let line = Cone::new(2, &[v(&[1, 0])], &[]).unwrap();
        let up = Cone::new(2, &[v(&[1, 0])], &[v(&[0, 1])]).unwrap();
        let down = Cone::new(2, &[v(&[1, 0])], &[v(&[0, -1])]).unwrap();
        let rays = Fan::new(2, vec![up.clone(), down]).unwrap();
        assert!(uncovered_point(&line, &rays).is_none());
        let one = Fan::new(2, vec![up]).unwrap();
        let w = uncovered_point(&line, &one).unwrap();
        assert!(line.contains_point(&w) && !one.contains_point(&w));
    }

    #[test]
    fn witness_avoids_thin_cones() {
        let plane = Cone::new(2, &[], &[]).unwrap();
        let lines = Fan::new(2, vec![Cone::new(2, &[v(&[1, -1])], &[]).unwrap(), Cone::new(2, &[v(&[1, 0])], &[]).unwrap()])
            .unwrap();
        let w = uncovered_point(&plane, &lines).unwrap();
        assert!(!lines.contains_point(&w));
    }
}
