use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{self, axpy, is_zero, Vector};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A linear subspace of `ℚ^N`, stored as its reduced row-echelon basis.
///
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    #[serde(with = "crate::rational::serde_rational_mat")]
    basis: Vec<Vector>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: linalg::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The linear hull of `vectors` inside `ℚ^ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        let mut s = Subspace::zero(ambient_dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Span of the coordinate axes listed in `coords`.
    pub fn coordinate(ambient_dim: usize, coords: &[usize]) -> Self {
        let mut c = coords.to_vec();
        c.sort_unstable();
        c.dedup();
        Subspace {
            ambient_dim,
            basis: c.iter().map(|&i| linalg::unit_vector(ambient_dim, i)).collect(),
            pivots: c,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::MixedDimension { expected: self.ambient_dim, found: v.len() });
        }
        Ok(())
    }

    /// `v` minus its component along the pivot coordinates; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                axpy(&mut r, &f, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && is_zero(&self.reduce(v))
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> Result<bool> {
        self.check_len(v)?;
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        if !inv.is_one() {
            for x in r.iter_mut() {
                *x *= &inv;
            }
        }
        for row in self.basis.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.basis.insert(at, r);
        self.pivots.insert(at, p);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Zassenhaus intersection.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::MixedDimension { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let n = self.ambient_dim;
        let mut rows: Vec<Vector> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(linalg::zero_vector(n));
            rows.push(r);
        }
        let pivots = linalg::rref_in_place(&mut rows);
        let tail: Vec<Vector> = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Subspace::span(n, &tail)
    }

    /// Coordinates of `v` in the reduced basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// A basis of a complement of `self` inside `within`: the reduced span of
    /// `within`'s basis taken modulo `self`.
    pub fn complement_in(&self, within: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(within) {
            return Err(Error::NotContained);
        }
        let reduced: Vec<Vector> = within.basis.iter().map(|v| self.reduce(v)).collect();
        Subspace::span(self.ambient_dim, &reduced)
    }
}

/// Coordinates with respect to an arbitrary ordered basis.
///
/// Built by reducing `[B | I]`: the right half records how each reduced row
/// is assembled from the original vectors.
#[derive(Clone, Debug)]
pub struct Frame {
    vectors: Vec<Vector>,
    space: Subspace,
    transfer: Vec<Vector>,
}

impl Frame {
    pub fn new(ambient_dim: usize, vectors: Vec<Vector>) -> Result<Frame> {
        let k = vectors.len();
        let mut rows: Vec<Vector> = Vec::with_capacity(k);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(Error::MixedDimension { expected: ambient_dim, found: v.len() });
            }
            let mut r = v.clone();
            r.extend(linalg::unit_vector(k, i));
            rows.push(r);
        }
        let pivots = linalg::rref_in_place(&mut rows);
        if pivots.len() != k || pivots.iter().any(|&p| p >= ambient_dim) {
            return Err(Error::Invalid("frame vectors are linearly dependent".into()));
        }
        let basis: Vec<Vector> = rows.iter().map(|r| r[..ambient_dim].to_vec()).collect();
        let transfer = rows.into_iter().map(|r| r[ambient_dim..].to_vec()).collect();
        Ok(Frame { vectors, space: Subspace { ambient_dim, basis, pivots }, transfer })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace {
        &self.space
    }

    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.space.contains(v) {
            return None;
        }
        let mut c = linalg::zero_vector(self.vectors.len());
        for (t, &p) in self.transfer.iter().zip(&self.space.pivots) {
            axpy(&mut c, &v[p], t);
        }
        Some(c)
    }

    pub fn combine(&self, coeffs: &[Rational]) -> Vector {
        linalg::combination(coeffs, &self.vectors, self.space.ambient_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(2, &[v(&[1, 0]), v(&[2, 0])]).unwrap().dim(), 1);
        assert!(Subspace::span(2, &[]).unwrap().is_zero());
        assert_eq!(Subspace::span(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap(), Subspace::full(2));
        assert!(matches!(
            Subspace::span(2, &[v(&[1, 0]), v(&[1, 0, 0])]),
            Err(Error::MixedDimension { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn canonical_basis() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection() {
        let u = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 1, 0])]).unwrap();
        let w = Subspace::span(4, &[v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        let i = u.intersection(&w).unwrap();
        assert_eq!(i, Subspace::span(4, &[v(&[0, 1, 1, 0])]).unwrap());
        assert_eq!(u.sum(&w).unwrap().dim() + i.dim(), u.dim() + w.dim());
    }

    #[test]
    fn frame_coordinates() {
        let f = Frame::new(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(f.coordinates(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(f.coordinates(&v(&[1, 0, 0])), None);
        assert!(Frame::new(2, vec![v(&[1, 1]), v(&[2, 2])]).is_err());
    }
}
