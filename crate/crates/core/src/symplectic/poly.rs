//! Univariate polynomials over `Q`, coefficients from the constant term up.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Int, Rat};

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(Int::from(i))).collect())
}

/// `(quotient, remainder)` of `a / b`, `b` nonzero.
fn divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rat::zero(); r.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r = trim(r);
    }
    (q, r)
}

fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Product of the distinct irreducible factors of `p`.
pub fn squarefree_part(p: &[Rat]) -> Vec<Rat> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return p;
    }
    let g = gcd(&p, &derivative(&p));
    divmod(&p, &g).0
}

/// Positive divisors of `|n|` by trial division; `None` if `n` is too large to factor quickly.
fn divisors(n: &Int) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n <= 1 << 40)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots of `p`, sorted. `None` when the coefficients are
/// too large for divisor enumeration.
pub fn rational_roots(p: &[Rat]) -> Option<Vec<Rat>> {
    let mut p = squarefree_part(p);
    if p.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(Rat::zero());
        p.remove(0);
    }
    let lcm = p.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Int> = p.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let nums = divisors(&ints[0])?;
    let dens = divisors(ints.last().expect("nonconstant"))?;
    for &a in &nums {
        for &b in &dens {
            if Int::from(a).gcd(&Int::from(b)) != Int::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let x = Rat::new(Int::from(a) * sign, Int::from(b));
                if eval(&p, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}
