use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::quat::Quat;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A dense quaternionic matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: Vec<Quat>,
}

#[derive(Deserialize)]
struct RawQMat {
    rows: usize,
    cols: usize,
    entries: Vec<Quat>,
}

impl<'de> Deserialize<'de> for QMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawQMat::deserialize(d)?;
        QMat::from_entries(raw.rows, raw.cols, raw.entries).map_err(serde::de::Error::custom)
    }
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, entries: vec![Quat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Quat::one())
    }

    /// `q` times the identity.
    pub fn scalar(n: usize, q: &Quat) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q.clone();
        }
        m
    }

    pub fn diag(d: &[Quat]) -> Self {
        let mut m = QMat::zeros(d.len(), d.len());
        for (i, q) in d.iter().enumerate() {
            m[(i, i)] = q.clone();
        }
        m
    }

    /// `I_{p,q}`: `p` ones followed by `q` minus ones on the diagonal.
    pub fn signature(p: usize, q: usize) -> Self {
        let d: Vec<Quat> = (0..p + q)
            .map(|i| if i < p { Quat::one() } else { -Quat::one() })
            .collect();
        QMat::diag(&d)
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Quat>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMat { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        QMat { rows, cols, entries }
    }

    /// A column vector.
    pub fn column(entries: Vec<Quat>) -> Self {
        let rows = entries.len();
        QMat { rows, cols: 1, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Quat] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Quat::is_zero)
    }

    pub fn try_mul(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[r * other.cols + c] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &QMat) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &QMat) -> Result<QMat> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &QMat) -> Result<QMat> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &QMat, f: impl Fn(&Quat, &Quat) -> Quat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Quat) -> Quat) -> QMat {
        QMat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Multiplication by a real scalar.
    pub fn scale(&self, r: &Rational) -> QMat {
        self.map(|q| q.scale(r))
    }

    /// `q · M`, the scalar acting from the left on every entry.
    pub fn left_scalar(&self, q: &Quat) -> QMat {
        self.map(|e| q * e)
    }

    /// `M · q`, the scalar acting from the right on every entry.
    pub fn right_scalar(&self, q: &Quat) -> QMat {
        self.map(|e| e * q)
    }

    /// The conjugate transpose `M*`.
    pub fn conj_transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// `4 · Re(tr M)`: the trace of `M` acting as a real-linear map on `ℍ^n`.
    pub fn real_trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += self[(i, i)].re();
        }
        Ok(t * rational::rat(4))
    }

    /// `MN − NM`.
    pub fn commutator(&self, other: &QMat) -> Result<QMat> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        self.check_same_shape(other)?;
        let mn = self.try_mul(other)?;
        let nm = other.try_mul(self)?;
        mn.try_sub(&nm)
    }

    /// Coordinates over the ordered basis `(1, i, j, k)` per entry, entries row-major.
    pub fn realify(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(4 * self.entries.len());
        for q in &self.entries {
            v.extend(q.components().into_iter().cloned());
        }
        v
    }

    /// Inverse of [`QMat::realify`].
    pub fn from_real(rows: usize, cols: usize, coords: &[Rational]) -> Result<QMat> {
        if coords.len() != 4 * rows * cols {
            return Err(Error::Shape(format!(
                "{} real coordinates for a {rows}x{cols} quaternionic matrix",
                coords.len()
            )));
        }
        let entries = coords
            .chunks(4)
            .map(|c| Quat::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()))
            .collect();
        QMat::from_entries(rows, cols, entries)
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> QMat {
        QMat::from_fn(rows, cols, |r, c| self[(row + r, col + c)].clone())
    }

    pub fn set_block(&mut self, row: usize, col: usize, b: &QMat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(row + r, col + c)] = b[(r, c)].clone();
            }
        }
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diag(blocks: &[QMat]) -> QMat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = QMat::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            m.set_block(off, off, b);
            off += b.rows;
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Quat;
    fn index(&self, (r, c): (usize, usize)) -> &Quat {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quat {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.entries[r * self.cols + c]
    }
}

// The operator impls panic on shape mismatch; use the `try_*` methods for fallible code.

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, rhs: &QMat) -> QMat {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, rhs: &QMat) -> QMat {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, rhs: &QMat) -> QMat {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &QMat {
    type Output = QMat;
    fn neg(self) -> QMat {
        self.map(|q| -q)
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "[ {} ]", row.join(", "))?;
        }
        Ok(())
    }
}
