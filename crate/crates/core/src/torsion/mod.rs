//! Generators with `C ≠ 0`: the torsion functional of a lifted complement,
//! the nondegeneracy argument that forces `C = 0` for symmetric spaces, and
//! the solvable subalgebra generated by the complement.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::catalog::torsion_example;
use crate::error::{Error, Result};
use crate::quatlin::QMat;
use crate::rational::{self, Rational};
use crate::sostar::{ambient_membership, hn_basis, pseudo_hermitian_metrics, realified_bracket, SkewForm};
use crate::subspace::{bracket_closure, linalg, presentation_on_basis, Subspace};
use crate::tila::{self, TauElement};

/// Ambient elements `X̃(X)`, one per real basis vector `X` of `ℍⁿ`, each with
/// `g₋₁`-part `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedComplement {
    form: SkewForm,
    elements: Vec<QMat>,
}

impl LiftedComplement {
    /// Checks there are `4n` elements, each an ambient member carrying its own basis vector.
    pub fn new(form: SkewForm, elements: Vec<QMat>) -> Result<Self> {
        let n = form.n();
        if elements.len() != 4 * n {
            return Err(Error::Shape(format!("expected {} elements, got {}", 4 * n, elements.len())));
        }
        for (k, (el, x)) in elements.iter().zip(hn_basis(n)).enumerate() {
            if el.rows() != n + 2 || el.cols() != n + 2 {
                return Err(Error::Shape(format!("element {k} is {}x{}", el.rows(), el.cols())));
            }
            if !ambient_membership(el, &form)? {
                return Err(Error::NotAmbient(format!("complement element {k}")));
            }
            if el.block(1, 0, n, 1) != x {
                return Err(Error::Invalid(format!("element {k} does not lift basis vector {k}")));
            }
        }
        Ok(LiftedComplement { form, elements })
    }

    /// `X̃(X) = ((0, F*𝕛, 0), (X, 0, F), (0, −X*𝕛, 0))` for a symmetric generator.
    pub fn symmetric(tau: &TauElement, form: &SkewForm) -> Result<Self> {
        let elements = hn_basis(tau.n()).iter().map(|x| tila::m_element(tau, form, x)).collect::<Result<_>>()?;
        LiftedComplement::new(form.clone(), elements)
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn elements(&self) -> &[QMat] {
        &self.elements
    }

    /// The `g₁`-part `F(X)` of element `k`.
    pub fn g1_part(&self, k: usize) -> QMat {
        let n = self.n();
        self.elements[k].block(1, n + 1, n, 1)
    }

    /// The `g₋₂` corner of element `k`; zero for every complement of this shape.
    pub fn g_minus_two_part(&self, k: usize) -> Rational {
        let n = self.n();
        self.elements[k][(n + 1, 0)].re().clone()
    }
}

/// `λ` on the real basis of `ℍⁿ`, with `[τ̂, X̃(X)] = 2λ(X)·τ̂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionFunctional {
    #[serde(with = "rational::serde_rational_vec")]
    pub coefficients: Vec<Rational>,
}

impl TorsionFunctional {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// `λ(X)` for `X` given as a column in `ℍⁿ`.
    pub fn eval(&self, x: &QMat) -> Rational {
        linalg::dot(&self.coefficients, &x.realify())
    }
}

/// Decomposes each `[τ̂, X̃(X)]` along `ℝτ̂` and halves the coefficient.
///
/// Fails with `BracketOffLine` at the first basis vector whose bracket leaves the line.
pub fn torsion_coefficient(tauhat: &TauElement, m: &LiftedComplement) -> Result<TorsionFunctional> {
    if tauhat.n() != m.n() {
        return Err(Error::MixedDimension { expected: tauhat.n(), found: m.n() });
    }
    let t = tauhat.assemble(m.form())?;
    let t_real = t.realify();
    let pivot = t_real.iter().position(|v| !v.is_zero()).expect("τ̂ has a unit in its g₋₂ corner");
    let half = rational::frac(1, 2);
    let coefficients = m
        .elements()
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let mut residual = t.commutator(x)?.realify();
            let c = &residual[pivot] / &t_real[pivot];
            linalg::axpy(&mut residual, &-c.clone(), &t_real);
            if !linalg::is_zero(&residual) {
                let off = QMat::from_real(t.rows(), t.cols(), &residual)?;
                return Err(Error::BracketOffLine { index: k, residual: off.to_string() });
            }
            Ok(c * &half)
        })
        .collect::<Result<_>>()?;
    Ok(TorsionFunctional { coefficients })
}

/// Rank of the stacked Gram matrices of `g₁, g₂, g₃` on the real basis of `ℍⁿ`.
pub fn forcing_rank(form: &SkewForm) -> Result<usize> {
    let basis = hn_basis(form.n());
    let mut rows: Vec<Vec<Rational>> = vec![Vec::with_capacity(basis.len()); 3 * basis.len()];
    for (k, x) in basis.iter().enumerate() {
        for y in &basis {
            let g = pseudo_hermitian_metrics(x, y, form)?;
            for (a, v) in g.into_iter().enumerate() {
                rows[a * basis.len() + k].push(v);
            }
        }
    }
    Ok(linalg::rank(&rows))
}

/// Whether `g₁(C, ·) = g₂(C, ·) = g₃(C, ·) = 0` forces `C = 0`.
///
/// True when the stacked Gram system has full rank `4n`, and `C` itself is
/// either zero or detected by one of the three metrics.
pub fn symmetric_forcing_check(form: &SkewForm, c: &QMat) -> Result<bool> {
    let n = form.n();
    if c.rows() != n || c.cols() != 1 {
        return Err(Error::Shape(format!("C must be a column in H^{n}")));
    }
    if forcing_rank(form)? != 4 * n {
        return Ok(false);
    }
    if c.is_zero() {
        return Ok(true);
    }
    for y in hn_basis(n) {
        if pseudo_hermitian_metrics(c, &y, form)?.iter().any(|v| !v.is_zero()) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The subalgebra generated by a lifted complement, taken modulo `ℝτ̂` when it contains `τ̂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraReport {
    pub dim: usize,
    pub solvable: bool,
    pub contains_tau: bool,
}

pub fn solvable_subalgebra_report(tauhat: &TauElement, m: &LiftedComplement) -> Result<SubalgebraReport> {
    let size = m.n() + 2;
    let ambient = 4 * size * size;
    let bracket = realified_bracket(size);
    let gens: Vec<Vec<Rational>> = m.elements().iter().map(QMat::realify).collect();
    let closure = bracket_closure(&Subspace::span(ambient, &gens)?, bracket)?;
    let t = tauhat.assemble(m.form())?.realify();
    let contains_tau = closure.contains(&t);
    let line = if contains_tau { Subspace::span(ambient, &[t])? } else { Subspace::zero(ambient) };
    let complement = line.complement_in(&closure)?;
    let pres = presentation_on_basis(ambient, complement.basis(), &line, bracket, Vec::new())?;
    Ok(SubalgebraReport { dim: pres.dim(), solvable: pres.is_solvable(&pres.full()), contains_tau })
}

/// `{ "lambda", "on_line", "closure_dim", "solvable" }`; `lambda` is empty when off-line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub n: usize,
    #[serde(with = "rational::serde_rational_vec")]
    pub lambda: Vec<Rational>,
    pub on_line: bool,
    pub closure_dim: usize,
    pub solvable: bool,
}

pub fn torsion_report(tauhat: &TauElement, m: &LiftedComplement) -> Result<TorsionReport> {
    let (lambda, on_line) = match torsion_coefficient(tauhat, m) {
        Ok(f) => (f.coefficients, true),
        Err(Error::BracketOffLine { .. }) => (Vec::new(), false),
        Err(e) => return Err(e),
    };
    let sub = solvable_subalgebra_report(tauhat, m)?;
    Ok(TorsionReport { n: m.n(), lambda, on_line, closure_dim: sub.dim, solvable: sub.solvable })
}

/// The report for the non-symmetric example of size `n`.
pub fn example_report(n: usize) -> Result<TorsionReport> {
    let ex = torsion_example(n)?;
    let m = LiftedComplement::new(ex.form, ex.m_basis)?;
    torsion_report(&ex.tauhat, &m)
}
