use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Int;

pub type IntMatrix = Vec<Vec<Int>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

fn axpy(rows: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (x, s) in rows[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// Row Hermite normal form. Returns `(h, u)` with `h = u * m`, `u` unimodular,
/// nonzero rows of `h` on top with strictly increasing positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`.
///
/// `cols` is needed so that matrices with no rows still carry a width.
pub fn hnf(m: &[Vec<Int>], cols: usize) -> (IntMatrix, IntMatrix) {
    let rows = m.len();
    let mut h: IntMatrix = m.to_vec();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                axpy(&mut h, i, r, &q);
                axpy(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            axpy(&mut h, i, r, &q);
            axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}
