use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{self, is_zero, Matrix, Vector};
use super::space::{Frame, Subspace};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Smallest bracket-closed subspace containing `s`.
///
/// Each round only brackets pairs involving at least one vector added in the
/// previous round, so the work is proportional to the final dimension squared.
pub fn bracket_closure<F>(s: &Subspace, bracket: F) -> Result<Subspace>
where
    F: Fn(&[Rational], &[Rational]) -> Vector + Sync,
{
    let mut space = Subspace::zero(s.ambient_dim());
    let mut gens: Vec<Vector> = Vec::new();
    for v in s.basis() {
        if space.insert(v)? {
            gens.push(v.clone());
        }
    }
    let mut fresh = 0;
    while fresh < gens.len() {
        let end = gens.len();
        let pairs: Vec<(usize, usize)> =
            (fresh..end).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let products: Vec<Vector> =
            pairs.par_iter().map(|&(i, j)| bracket(&gens[i], &gens[j])).collect();
        for p in products {
            if space.insert(&p)? {
                gens.push(p);
            }
        }
        fresh = end;
    }
    Ok(space)
}

/// Structure constants of `span(basis) / modulo`, where `basis ∪ modulo` is
/// linearly independent and spans a subalgebra in which `modulo` is an ideal.
/// Both conditions are checked.
pub fn presentation_on_basis<F>(
    ambient_dim: usize,
    basis: &[Vector],
    modulo: &Subspace,
    bracket: F,
    labels: Vec<String>,
) -> Result<LiePresentation>
where
    F: Fn(&[Rational], &[Rational]) -> Vector + Sync,
{
    let d = basis.len();
    let mut all = basis.to_vec();
    all.extend(modulo.basis().iter().cloned());
    let frame = Frame::new(ambient_dim, all)?;

    let ideal_ok = frame
        .vectors()
        .par_iter()
        .all(|x| modulo.basis().iter().all(|t| modulo.contains(&bracket(x, t))));
    if !ideal_ok {
        return Err(Error::NotAnIdeal);
    }

    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let coords: Vec<Option<Vector>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            frame.coordinates(&bracket(&basis[i], &basis[j])).map(|mut c| {
                c.truncate(d);
                c
            })
        })
        .collect();

    let mut c = vec![vec![linalg::zero_vector(d); d]; d];
    for (&(i, j), cij) in pairs.iter().zip(coords) {
        let cij = cij.ok_or(Error::NotContained)?;
        c[j][i] = cij.iter().map(|x| -x).collect();
        c[i][j] = cij;
    }
    LiePresentation::new(c, labels)
}

/// Structure constants of `S/T` on the complement basis obtained by reducing
/// `S` modulo `T`.
pub fn quotient_presentation<F>(s: &Subspace, t: &Subspace, bracket: F) -> Result<LiePresentation>
where
    F: Fn(&[Rational], &[Rational]) -> Vector + Sync,
{
    let complement = t.complement_in(s)?;
    presentation_on_basis(s.ambient_dim(), complement.basis(), t, bracket, Vec::new())
}

/// A finite-dimensional Lie algebra given by structure constants:
/// `[bᵢ, bⱼ] = Σₖ c[i][j][k] bₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct LiePresentation {
    dim: usize,
    #[serde(with = "crate::rational::serde_rational_tensor")]
    c: Vec<Vec<Vector>>,
    labels: Vec<String>,
}

#[derive(Deserialize)]
struct RawPresentation {
    dim: usize,
    #[serde(with = "crate::rational::serde_rational_tensor")]
    c: Vec<Vec<Vector>>,
    #[serde(default)]
    labels: Vec<String>,
}

impl TryFrom<RawPresentation> for LiePresentation {
    type Error = Error;
    fn try_from(raw: RawPresentation) -> Result<Self> {
        let p = LiePresentation::new(raw.c, raw.labels)?;
        if p.dim != raw.dim {
            return Err(Error::Shape(format!("dim {} but {} basis vectors", raw.dim, p.dim)));
        }
        Ok(p)
    }
}

impl LiePresentation {
    /// Checks shape and antisymmetry. The Jacobi identity is not checked here;
    /// see [`LiePresentation::satisfies_jacobi`].
    pub fn new(c: Vec<Vec<Vector>>, labels: Vec<String>) -> Result<Self> {
        let dim = c.len();
        if c.iter().any(|m| m.len() != dim || m.iter().any(|v| v.len() != dim)) {
            return Err(Error::Shape(format!("structure constants are not {dim}x{dim}x{dim}")));
        }
        if !labels.is_empty() && labels.len() != dim {
            return Err(Error::Shape(format!("{} labels for dimension {dim}", labels.len())));
        }
        for i in 0..dim {
            for j in 0..=i {
                if c[i][j].iter().zip(&c[j][i]).any(|(a, b)| *a != -b) {
                    return Err(Error::Invalid(format!("bracket not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(LiePresentation { dim, c, labels })
    }

    pub fn abelian(dim: usize) -> Self {
        LiePresentation { dim, c: vec![vec![linalg::zero_vector(dim); dim]; dim], labels: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::Shape(format!("{} labels for dimension {}", labels.len(), self.dim)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn structure_constants(&self) -> &[Vec<Vector>] {
        &self.c
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = linalg::zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                linalg::axpy(&mut out, &(xi * yj), &self.c[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad(bᵢ)`; column `j` holds the coordinates of `[bᵢ, bⱼ]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        linalg::transpose(&self.c[i])
    }

    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let mut cols = vec![linalg::zero_vector(self.dim); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, col) in cols.iter_mut().enumerate() {
                linalg::axpy(col, xi, &self.c[i][j]);
            }
        }
        linalg::transpose(&cols)
    }

    /// `B(bᵢ, bⱼ) = tr(ad bᵢ ∘ ad bⱼ)`.
    pub fn killing_form(&self) -> Matrix {
        let d = self.dim;
        if d == 0 {
            return Vec::new();
        }
        let c = &self.c;
        (0..d)
            .into_par_iter()
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut s = Rational::zero();
                        for a in 0..d {
                            for b in 0..d {
                                let x = &c[i][a][b];
                                if x.is_zero() {
                                    continue;
                                }
                                let y = &c[j][b][a];
                                if !y.is_zero() {
                                    s += x * y;
                                }
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    /// `span [A, B]`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let prods: Vec<Vector> = a
            .basis()
            .par_iter()
            .flat_map_iter(|x| b.basis().iter().map(move |y| self.bracket(x, y)))
            .collect();
        Subspace::span(self.dim, &prods).expect("brackets stay in the presentation space")
    }

    pub fn derived(&self, a: &Subspace) -> Subspace {
        self.bracket_span(a, a)
    }

    /// `a ⊇ [a,a] ⊇ …`, ending at the first repeated term.
    pub fn derived_series(&self, a: &Subspace) -> Vec<Subspace> {
        let mut series = vec![a.clone()];
        loop {
            let next = self.derived(series.last().expect("nonempty"));
            if next.dim() == series.last().expect("nonempty").dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self, a: &Subspace) -> bool {
        self.derived_series(a).last().is_some_and(Subspace::is_zero)
    }

    pub fn is_abelian(&self, a: &Subspace) -> bool {
        self.derived(a).is_zero()
    }

    pub fn is_subalgebra(&self, a: &Subspace) -> bool {
        self.derived(a).is_subspace_of(a)
    }

    pub fn is_ideal(&self, a: &Subspace) -> bool {
        self.bracket_span(&self.full(), a).is_subspace_of(a)
    }

    /// The radical as the Killing-orthogonal of `[g, g]` (Cartan's criterion),
    /// with solvability checked on the result.
    pub fn radical(&self) -> Result<Subspace> {
        let b = self.killing_form();
        self.radical_with(&b)
    }

    /// Same as [`LiePresentation::radical`] with a precomputed Killing form.
    pub fn radical_with(&self, killing: &Matrix) -> Result<Subspace> {
        let derived = self.derived(&self.full());
        let rows: Vec<Vector> = derived.basis().iter().map(|d| linalg::mat_vec(killing, d)).collect();
        let r = Subspace::span(self.dim, &linalg::nullspace(&rows, self.dim))?;
        if !self.is_solvable(&r) {
            return Err(Error::RadicalNotSolvable);
        }
        Ok(r)
    }

    /// Largest ideal contained in `l`, by shrinking `l` to
    /// `{x ∈ l : [g, x] ⊆ l}` until it stabilizes.
    pub fn max_ideal_in(&self, l: &Subspace) -> Result<Subspace> {
        if l.ambient_dim() != self.dim {
            return Err(Error::MixedDimension { expected: self.dim, found: l.ambient_dim() });
        }
        let mut cur = l.clone();
        loop {
            let vs = cur.basis();
            let k = vs.len();
            if k == 0 {
                return Ok(cur);
            }
            // Column t holds the residual of [bᵢ, v_t] modulo the current space.
            let blocks: Vec<Matrix> = (0..self.dim)
                .into_par_iter()
                .map(|i| {
                    let e = linalg::unit_vector(self.dim, i);
                    let cols: Vec<Vector> = vs.iter().map(|v| cur.reduce(&self.bracket(&e, v))).collect();
                    linalg::transpose(&cols)
                })
                .collect();
            let rows: Matrix = blocks.into_iter().flatten().filter(|r| !is_zero(r)).collect();
            let sol = linalg::nullspace(&rows, k);
            let next: Vec<Vector> = sol.iter().map(|t| linalg::combination(t, vs, self.dim)).collect();
            let next = Subspace::span(self.dim, &next)?;
            if next.dim() == cur.dim() {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `{x : [x, a] = 0 for all a ∈ A}`.
    pub fn centralizer(&self, a: &Subspace) -> Subspace {
        // [x, a] = −ad(a) x
        let rows: Matrix = a.basis().iter().flat_map(|v| self.ad(v)).filter(|r| !is_zero(r)).collect();
        Subspace::span(self.dim, &linalg::nullspace(&rows, self.dim))
            .expect("nullspace vectors have the presentation dimension")
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..=i).all(|j| self.c[i][j].iter().zip(&self.c[j][i]).all(|(a, b)| *a == -b))
        })
    }

    /// Jacobi identity on all basis triples.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim;
        (0..d).into_par_iter().all(|i| {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut s = self.bracket(&self.c[i][j], &linalg::unit_vector(d, k));
                    s = linalg::add(&s, &self.bracket(&self.c[j][k], &linalg::unit_vector(d, i)));
                    s = linalg::add(&s, &self.bracket(&self.c[k][i], &linalg::unit_vector(d, j)));
                    if !is_zero(&s) {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// Whether the linear map `D` (column `j` = image of `bⱼ`) is a derivation.
    pub fn is_derivation(&self, dmat: &Matrix) -> bool {
        let d = self.dim;
        let cols = linalg::transpose(dmat);
        (0..d).into_par_iter().all(|i| {
            (i + 1..d).all(|j| {
                let lhs = linalg::mat_vec(dmat, &self.c[i][j]);
                let rhs = linalg::add(
                    &self.bracket(&cols[i], &linalg::unit_vector(d, j)),
                    &self.bracket(&linalg::unit_vector(d, i), &cols[j]),
                );
                lhs == rhs
            })
        })
    }
}
