use std::sync::OnceLock;

use rayon::prelude::*;

use super::tau::{m_element, symtest, TauElement};
use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::Rational;
use crate::sostar::{hn_basis, levi_form, realified_bracket, SkewForm};
use crate::subspace::linalg::{self, Matrix, Vector};
use crate::subspace::{presentation_on_basis, LiePresentation, Subspace};

/// The reductive complement `m`, lifted into `so*(2n+4)`.
#[derive(Clone, Debug)]
pub struct MBasis {
    /// `X̃(e)` for the `4n` real basis vectors `e` of `ℍⁿ`, in that order.
    pub matrices: Vec<QMat>,
    pub space: Subspace,
}

/// Builds `m = {X̃(X)}` after checking the generator equation.
pub fn build_m(tau: &TauElement, form: &SkewForm) -> Result<MBasis> {
    let rep = symtest(tau)?;
    if !rep.pass {
        return Err(Error::SymtestFailed { nonzero: rep.residuals.len(), total: rep.total });
    }
    let matrices: Vec<QMat> =
        hn_basis(tau.n()).iter().map(|x| m_element(tau, form, x)).collect::<Result<_>>()?;
    let size = tau.n() + 2;
    let vectors: Vec<Vector> = matrices.iter().map(QMat::realify).collect();
    let space = Subspace::span(4 * size * size, &vectors)?;
    Ok(MBasis { matrices, space })
}

/// A transvection algebra `g = l ⊕ m` with its quaternionic structure and 2-form.
///
/// The basis of `g` lists a basis of `l` first, then the `4n` lifted vectors
/// `X̃(e)`, so coordinates on `m` are the real coordinates of `X ∈ ℍⁿ`.
#[derive(Clone, Debug)]
pub struct Tila {
    pub(crate) tau: TauElement,
    pub(crate) form: SkewForm,
    pub(crate) g: LiePresentation,
    pub(crate) dim_l: usize,
    pub(crate) lifts: Vec<Vector>,
    pub(crate) t_line: Subspace,
    pub(crate) q0: [Matrix; 3],
    pub(crate) omega0: Matrix,
    pub(crate) killing: OnceLock<Matrix>,
}

/// Builds `g = ([m,m]/t) ⊕ m` where `t = [m,m] ∩ ℝτ`.
pub fn build_tila(tau: &TauElement, form: &SkewForm) -> Result<Tila> {
    let m = build_m(tau, form)?;
    let n = tau.n();
    let size = n + 2;
    let amb = 4 * size * size;
    let bracket = realified_bracket(size);
    let mvecs: Vec<Vector> = m.matrices.iter().map(QMat::realify).collect();
    let tau_vec = tau.assemble(form)?.realify();

    let commutes = mvecs.par_iter().all(|x| linalg::is_zero(&bracket(x, &tau_vec)));
    if !commutes {
        return Err(Error::QuotientIllDefined);
    }

    let k = mvecs.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let prods: Vec<Vector> = pairs.par_iter().map(|&(i, j)| bracket(&mvecs[i], &mvecs[j])).collect();
    let mm = Subspace::span(amb, &prods)?;

    if !mm.intersection(&m.space)?.is_zero() {
        return Err(Error::GradingViolated);
    }
    let back_in_m = mm
        .basis()
        .par_iter()
        .all(|u| mvecs.iter().all(|x| m.space.contains(&bracket(u, x))));
    if !back_in_m {
        return Err(Error::GradingViolated);
    }
    if !mm.basis().par_iter().all(|u| linalg::is_zero(&bracket(u, &tau_vec))) {
        return Err(Error::QuotientIllDefined);
    }

    let t_line = mm.intersection(&Subspace::span(amb, &[tau_vec])?)?;
    let l = t_line.complement_in(&mm)?;
    let dim_l = l.dim();

    let mut basis: Vec<Vector> = l.basis().to_vec();
    basis.extend(mvecs);
    let labels = (0..dim_l)
        .map(|i| format!("l{i}"))
        .chain((0..n).flat_map(|r| ["1", "i", "j", "k"].map(|q| format!("X{r}.{q}"))))
        .collect();
    let g = presentation_on_basis(amb, &basis, &t_line, bracket, labels).map_err(|e| match e {
        Error::NotContained => Error::GradingViolated,
        other => other,
    })?;

    let q0 = quaternionic_structure(n);
    let omega0 = levi_gram(form)?;
    Ok(Tila { tau: tau.clone(), form: form.clone(), g, dim_l, lifts: basis, t_line, q0, omega0, killing: OnceLock::new() })
}

/// `J_a(X) = X·q̄_a` for `q_a ∈ (i, j, k)`, as matrices on the real coordinates of `ℍⁿ`.
///
/// Right multiplication by the conjugate keeps `J₁J₂ = J₃`; plain right
/// multiplication would reverse the orientation.
pub fn quaternionic_structure(n: usize) -> [Matrix; 3] {
    [Quat::i(), Quat::j(), Quat::k()].map(|q| {
        let qc = q.conj();
        let mut cols = Vec::with_capacity(4 * n);
        for x in hn_basis(n) {
            cols.push(x.right_scalar(&qc).realify());
        }
        linalg::transpose(&cols)
    })
}

/// Gram matrix of the Levi form on the real basis of `ℍⁿ`.
pub fn levi_gram(form: &SkewForm) -> Result<Matrix> {
    let b = hn_basis(form.n());
    b.iter().map(|x| b.iter().map(|y| levi_form(x, y, form)).collect()).collect()
}

impl Tila {
    pub fn tau(&self) -> &TauElement {
        &self.tau
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn presentation(&self) -> &LiePresentation {
        &self.g
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_m(&self) -> usize {
        self.g.dim() - self.dim_l
    }

    /// `+1` on `l`, `−1` on `m`.
    pub fn sigma(&self) -> Vec<i8> {
        (0..self.g.dim()).map(|i| if i < self.dim_l { 1 } else { -1 }).collect()
    }

    pub fn l_space(&self) -> Subspace {
        Subspace::coordinate(self.g.dim(), &(0..self.dim_l).collect::<Vec<_>>())
    }

    pub fn m_space(&self) -> Subspace {
        Subspace::coordinate(self.g.dim(), &(self.dim_l..self.g.dim()).collect::<Vec<_>>())
    }

    /// Whether `τ` itself lies in `[m, m]` (and was quotiented out).
    pub fn tau_in_bracket_span(&self) -> bool {
        !self.t_line.is_zero()
    }

    pub fn t_line(&self) -> &Subspace {
        &self.t_line
    }

    /// Ambient (realified) matrices representing the basis of `g`.
    pub fn lifts(&self) -> &[Vector] {
        &self.lifts
    }

    pub fn lift(&self, coords: &[Rational]) -> Vector {
        linalg::combination(coords, &self.lifts, self.lifts.first().map_or(0, Vec::len))
    }

    pub fn q0(&self) -> &[Matrix; 3] {
        &self.q0
    }

    pub fn omega0(&self) -> &Matrix {
        &self.omega0
    }

    /// The same algebra with `ω₀` replaced. Used to exercise the checks.
    pub fn with_omega0(&self, omega: Matrix) -> Result<Tila> {
        let k = self.dim_m();
        if omega.len() != k || omega.iter().any(|r| r.len() != k) {
            return Err(Error::Shape(format!("ω₀ must be {k}x{k}")));
        }
        let mut t = self.clone();
        t.omega0 = omega;
        Ok(t)
    }

    pub fn killing_form(&self) -> &Matrix {
        self.killing.get_or_init(|| self.g.killing_form())
    }

    /// `ad(x)|_m` for `x ∈ l`, as a matrix on `m`-coordinates.
    pub fn rho(&self, x: &[Rational]) -> Matrix {
        let ad = self.g.ad(x);
        let l = self.dim_l;
        ad[l..].iter().map(|row| row[l..].to_vec()).collect()
    }

    /// `ad(bᵢ)|_m` for each basis vector of `l`.
    pub fn rho_basis(&self) -> Vec<Matrix> {
        (0..self.dim_l).map(|i| self.rho(&linalg::unit_vector(self.g.dim(), i))).collect()
    }
}
