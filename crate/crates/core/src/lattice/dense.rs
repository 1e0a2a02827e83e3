//! Dense exact matrix helpers over `Rat`. Matrices are row-major `Vec<Vec<Rat>>`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

pub type RatMatrix = Vec<Vec<Rat>>;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn scale(v: &[Rat], c: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn transpose(m: &[Vec<Rat>], cols: usize) -> RatMatrix {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// `a * b` where `a` is `r x k` and `b` is `k x c`; `c` is passed so empty `b` works.
pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>], c: usize) -> RatMatrix {
    a.iter()
        .map(|row| {
            (0..c)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rat::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Row vector times matrix: `v^T m`.
pub fn vec_mat(v: &[Rat], m: &[Vec<Rat>], cols: usize) -> Vec<Rat> {
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Rat::zero(), |acc, (x, row)| acc + x * &row[j]))
        .collect()
}

/// `u^T m v`.
pub fn bilinear(u: &[Rat], m: &[Vec<Rat>], v: &[Rat]) -> Rat {
    dot(u, &mat_vec(m, v))
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(m: &[Vec<Rat>], cols: usize) -> (RatMatrix, Vec<usize>) {
    let mut a: RatMatrix = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[Vec<Rat>], cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column of the RREF.
pub fn kernel(m: &[Vec<Rat>], cols: usize) -> RatMatrix {
    let (r, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &[Vec<Rat>]) -> Option<RatMatrix> {
    let n = m.len();
    let aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let pivot_row = a[c].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Coefficients `c` with `c · basis = v`, if `v` lies in the row span.
pub fn express_in_basis(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let n = v.len();
    // Solve basis^T c = v via RREF of the augmented system.
    let aug: RatMatrix = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Characteristic polynomial `det(x I - m)`, coefficients from constant term up.
pub fn charpoly(m: &[Vec<Rat>]) -> Vec<Rat> {
    // Faddeev-LeVerrier.
    let n = m.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = zeros(n, n);
    for k in 1..=n {
        // mk <- m * (mk + c_{n-k+1} I)
        let mut shifted = mk.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = mat_mul(m, &shifted, n);
        let trace = (0..n).fold(Rat::zero(), |acc, i| acc + &mk[i][i]);
        coeffs[n - k] = -trace / Rat::from_integer(Int::from(k));
    }
    coeffs
}

/// Positive rescaling of `v` to a primitive integer vector.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Primitive integer representative of the line through `v`, first nonzero entry positive.
pub fn line_representative(v: &[Rat]) -> Vec<Rat> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

pub fn to_rat_matrix(m: &[Vec<i64>]) -> RatMatrix {
    m.iter().map(|row| row.iter().map(|&x| crate::rat(x)).collect()).collect()
}

pub fn int_to_rat_matrix(m: &[Vec<Int>]) -> RatMatrix {
    m.iter().map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect()
}
