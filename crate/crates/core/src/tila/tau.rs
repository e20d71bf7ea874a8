use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::{self, Rational};
use crate::sostar::{self, hn_basis, AmbientElement, SkewForm};

/// A generator `τ = ((a, C*𝕛, d), (0, A, C), (1, 0, a))` of a line in `so*(2n+4)`.
///
/// `C` is absent for the symmetric generators; it only appears for the
/// torsion examples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTau", into = "RawTau")]
pub struct TauElement {
    n: usize,
    a: Quat,
    big_a: QMat,
    d: Rational,
    c: Option<QMat>,
}

#[derive(Serialize, Deserialize)]
struct RawTau {
    n: usize,
    a: Quat,
    #[serde(rename = "A")]
    big_a: QMat,
    #[serde(with = "rational::serde_rational")]
    d: Rational,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    c: Option<QMat>,
}

impl TryFrom<RawTau> for TauElement {
    type Error = Error;
    fn try_from(r: RawTau) -> Result<Self> {
        let t = TauElement::new(r.a, r.big_a, r.d)?;
        if t.n != r.n {
            return Err(Error::Shape(format!("n = {} but A is {}x{}", r.n, t.n, t.n)));
        }
        match r.c {
            Some(c) => t.with_c(c),
            None => Ok(t),
        }
    }
}

impl From<TauElement> for RawTau {
    fn from(t: TauElement) -> Self {
        RawTau { n: t.n, a: t.a, big_a: t.big_a, d: t.d, c: t.c }
    }
}

impl TauElement {
    pub fn new(a: Quat, big_a: QMat, d: Rational) -> Result<Self> {
        if !a.is_imaginary() {
            return Err(Error::Invalid(format!("a = {a} must be purely imaginary")));
        }
        if !big_a.is_square() {
            return Err(Error::NotSquare { rows: big_a.rows(), cols: big_a.cols() });
        }
        Ok(TauElement { n: big_a.rows(), a, big_a, d, c: None })
    }

    pub fn with_c(mut self, c: QMat) -> Result<Self> {
        if c.rows() != self.n || c.cols() != 1 {
            return Err(Error::MixedDimension { expected: self.n, found: c.rows() });
        }
        self.c = if c.is_zero() { None } else { Some(c) };
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Quat {
        &self.a
    }

    pub fn big_a(&self) -> &QMat {
        &self.big_a
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn c(&self) -> Option<&QMat> {
        self.c.as_ref()
    }

    pub fn is_symmetric_form(&self) -> bool {
        self.c.is_none()
    }

    pub fn assemble(&self, form: &SkewForm) -> Result<QMat> {
        if form.n() != self.n {
            return Err(Error::MixedDimension { expected: self.n, found: form.n() });
        }
        let el = AmbientElement {
            a: self.a.clone(),
            x: QMat::zeros(self.n, 1),
            y: self.c.clone().unwrap_or_else(|| QMat::zeros(self.n, 1)),
            c: rational::one(),
            d: self.d.clone(),
            big_a: self.big_a.clone(),
        };
        el.assemble(form)
    }

    /// Whether `A ∈ so*(2n)` for `form`, i.e. the assembled matrix is a member.
    pub fn is_member(&self, form: &SkewForm) -> Result<bool> {
        sostar::ambient_membership(&self.assemble(form)?, form)
    }

    /// `R(X) = Xd + 2AXa − Xa² − A²X`.
    pub fn residual(&self, x: &QMat) -> QMat {
        let a = &self.a;
        let a2 = a * a;
        let ax = &self.big_a * x;
        let aax = &self.big_a * &ax;
        let mut r = x.scale(&self.d);
        r = &r + &ax.right_scalar(a).scale(&rational::rat(2));
        r = &r - &x.right_scalar(&a2);
        &r - &aax
    }

    /// `F(X) = AX − Xa`, the `g₁`-part of the lifted complement.
    pub fn lift_map(&self, x: &QMat) -> QMat {
        &(&self.big_a * x) - &x.right_scalar(&self.a)
    }
}

/// Outcome of evaluating the generator equation on the real basis of `ℍⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymtestReport {
    pub pass: bool,
    pub total: usize,
    /// `(basis index, R(e))` for every basis vector with nonzero residual.
    pub residuals: Vec<(usize, QMat)>,
}

/// Evaluates `R(X) = Xd + 2AXa − Xa² − A²X` on all `4n` real basis vectors.
/// `R` is real-linear, so this decides the equation for every `X`.
pub fn symtest(tau: &TauElement) -> Result<SymtestReport> {
    if !tau.is_symmetric_form() {
        return Err(Error::NotApplicable("the generator equation assumes C = 0".into()));
    }
    let basis = hn_basis(tau.n);
    let residuals: Vec<(usize, QMat)> = basis
        .iter()
        .enumerate()
        .map(|(k, x)| (k, tau.residual(x)))
        .filter(|(_, r)| !r.is_zero())
        .collect();
    Ok(SymtestReport { pass: residuals.is_empty(), total: basis.len(), residuals })
}

/// `X̃(X) = ((0, F*𝕛, 0), (X, 0, F), (0, −X*𝕛, 0))` with `F = AX − Xa`.
pub fn m_element(tau: &TauElement, form: &SkewForm, x: &QMat) -> Result<QMat> {
    let el = AmbientElement {
        a: Quat::zero(),
        x: x.clone(),
        y: tau.lift_map(x),
        c: Rational::zero(),
        d: Rational::zero(),
        big_a: QMat::zeros(tau.n, tau.n),
    };
    el.assemble(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn symtest_examples() {
        let m1 = TauElement::new(Quat::i(), QMat::zeros(2, 2), rat(-1)).unwrap();
        assert!(symtest(&m1).unwrap().pass);
        let m2 = TauElement::new(Quat::zero(), QMat::signature(1, 1).left_scalar(&Quat::j()), rat(-1)).unwrap();
        assert!(symtest(&m2).unwrap().pass);
        let bad = TauElement::new(Quat::zero(), QMat::zeros(2, 2), rat(1)).unwrap();
        let rep = symtest(&bad).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.residuals.len(), 8);
        // R(X) = X
        for (k, r) in &rep.residuals {
            assert_eq!(r, &hn_basis(2)[*k]);
        }
    }

    #[test]
    fn rejects_real_a() {
        assert!(TauElement::new(Quat::one(), QMat::zeros(1, 1), rat(0)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = TauElement::new(Quat::i(), QMat::zeros(2, 2), rat(-1)).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(!s.contains("\"C\""));
        assert_eq!(serde_json::from_str::<TauElement>(&s).unwrap(), t);
        let with_c = t.with_c(QMat::column(vec![Quat::one(), Quat::zero()])).unwrap();
        let s = serde_json::to_string(&with_c).unwrap();
        assert_eq!(serde_json::from_str::<TauElement>(&s).unwrap(), with_c);
    }
}
