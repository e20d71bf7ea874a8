//! Dense exact linear algebra on rational vectors and matrices.
//!
//! Matrices are row-major `Vec<Vec<Rational>>`. Nothing here allocates
//! anything clever; the sizes involved stay in the low hundreds.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vec<Rational>>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![zero_vector(cols); rows]
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().all(|r| is_zero(r))
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            s += a * b;
        }
    }
    s
}

/// `u += s·v`
pub fn axpy(u: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in u.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

pub fn scaled(v: &[Rational], s: &Rational) -> Vector {
    v.iter().map(|x| x * s).collect()
}

pub fn add(u: &[Rational], v: &[Rational]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Rational], v: &[Rational]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// `Σ cᵢ vᵢ`
pub fn combination(coeffs: &[Rational], vectors: &[Vector], len: usize) -> Vector {
    let mut out = zero_vector(len);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vector(cols);
            for (x, brow) in row.iter().zip(b) {
                axpy(&mut out, x, brow);
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vector {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| add(r, s)).collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| sub(r, s)).collect()
}

pub fn mat_scale(a: &Matrix, s: &Rational) -> Matrix {
    a.iter().map(|r| scaled(r, s)).collect()
}

/// `AB − BA`
pub fn mat_commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

pub fn trace(a: &Matrix) -> Rational {
    let mut t = Rational::zero();
    for (i, r) in a.iter().enumerate() {
        t += &r[i];
    }
    t
}

/// `xᵀ M y`
pub fn bilinear(m: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    dot(x, &mat_vec(m, y))
}

pub fn is_symmetric(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == m[j][i]))
}

pub fn is_antisymmetric(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == -&m[j][i]))
}

/// Reduces `m` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        if !inv.is_one() {
            for x in m[row].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = -other[col].clone();
                axpy(other, &f, &pivot_row);
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = m.clone();
    let p = rref_in_place(&mut m);
    (m, p)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// A basis of `{x : M x = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = unit_vector(cols, f);
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `M x = b`, if the system is consistent.
pub fn solve(m: &Matrix, b: &[Rational], cols: usize) -> Option<Vector> {
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = zero_vector(cols);
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend(unit_vector(n, i));
            r
        })
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Flattens a matrix row by row.
pub fn flatten(m: &Matrix) -> Vector {
    m.iter().flatten().cloned().collect()
}
