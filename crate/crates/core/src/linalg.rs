//! Dense exact linear algebra over ℚ, plus division-free determinants over
//! an arbitrary commutative ring.

use num_traits::{One, Zero};

use crate::rational::Q;
use crate::ring::Ring;

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += aik * &b[k][j];
            }
        }
    }
    out
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..cols {
                    let t = &factor * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of the null space `{x : m x = 0}`, one vector per free column, in
/// reduced echelon form (each vector has a 1 at its own free column and 0 at
/// the other free columns).
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    kernel_with_free_columns(m, cols).1
}

/// As [`kernel`], also returning the free column that owns each vector.
pub fn kernel_with_free_columns(m: &Matrix, cols: usize) -> (Vec<usize>, Vec<Vec<Q>>) {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect();
    (free, vectors)
}

/// One solution of `m x = b` (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve(m: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

/// Determinant over any commutative ring without dividing.
///
/// Cofactor expansion up to 5×5, the Berkowitz algorithm above that.
pub fn determinant<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    if m.len() <= 5 {
        cofactor_det(ring, m)
    } else {
        berkowitz_det(ring, m)
    }
}

pub fn cofactor_det<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    match n {
        0 => ring.one(),
        1 => m[0][0].clone(),
        2 => ring.sub(&ring.mul(&m[0][0], &m[1][1]), &ring.mul(&m[0][1], &m[1][0])),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                if ring.is_zero(&m[0][j]) {
                    continue;
                }
                let minor: Vec<Vec<R::Elem>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = ring.mul(&m[0][j], &cofactor_det(ring, &minor));
                acc = if j % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            acc
        }
    }
}

/// Coefficients `[1, c_1, …, c_n]` of `det(λI − m)` by Berkowitz's
/// division-free recurrence.
pub fn berkowitz_charpoly<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let n = m.len();
    let mut p = vec![ring.one()];
    for k in 0..n {
        // A_k = [[A, c], [r, a]] with A the leading k×k block.
        let a_kk = &m[k][k];
        let col: Vec<R::Elem> = (0..k).map(|i| m[i][k].clone()).collect();
        let row: Vec<R::Elem> = (0..k).map(|j| m[k][j].clone()).collect();
        // Toeplitz first column: 1, -a_kk, -r c, -r A c, -r A^2 c, ...
        let mut first = Vec::with_capacity(k + 2);
        first.push(ring.one());
        first.push(ring.neg(a_kk));
        let mut v = col;
        for _ in 0..k {
            let rv = row
                .iter()
                .zip(&v)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
            first.push(ring.neg(&rv));
            v = (0..k)
                .map(|i| {
                    (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&m[i][j], &v[j])))
                })
                .collect();
        }
        // p_new = T p, T lower-triangular Toeplitz of size (k+2)×(k+1).
        let next: Vec<R::Elem> = (0..k + 2)
            .map(|i| {
                (0..=k.min(i)).fold(ring.zero(), |acc, j| {
                    if i - j < first.len() {
                        ring.add(&acc, &ring.mul(&first[i - j], &p[j]))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        p = next;
    }
    p
}

pub fn berkowitz_det<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    let p = berkowitz_charpoly(ring, m);
    if n % 2 == 0 {
        p[n].clone()
    } else {
        ring.neg(&p[n])
    }
}
