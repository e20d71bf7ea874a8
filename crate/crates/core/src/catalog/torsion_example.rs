use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::rat;
use crate::sostar::SkewForm;
use crate::tila::TauElement;

/// The non-symmetric generator `τ̂` with `C ≠ 0` and its lifted complement.
#[derive(Clone, Debug)]
pub struct TorsionExample {
    pub n: usize,
    pub tauhat: TauElement,
    pub form: SkewForm,
    /// Lifted complement on the real basis of `ℍⁿ = ℍ ⊕ ℍⁿ⁻¹`.
    pub m_basis: Vec<QMat>,
}

/// `τ̂` with `a = i`, `A = diag(2j, 0, …)`, `d = 3`, `C = (2 − 2k, 0, …)` and `𝕛 = j`,
/// together with its displayed complement.
pub fn torsion_example(n: usize) -> Result<TorsionExample> {
    if n < 2 {
        return Err(Error::Constraint(format!("the torsion example needs n >= 2, got {n}")));
    }
    let mut big_a = QMat::zeros(n, n);
    big_a[(0, 0)] = Quat::ints(0, 0, 2, 0);
    let mut c = QMat::zeros(n, 1);
    c[(0, 0)] = Quat::ints(2, 0, 0, -2);
    let tauhat = TauElement::new(Quat::i(), big_a, rat(3))?.with_c(c)?;
    let form = SkewForm::skew_hermitian(n)?;
    let mut m_basis = Vec::with_capacity(4 * n);
    for u in 0..4 {
        m_basis.push(m_element(n, &Quat::basis(u), &QMat::zeros(n - 1, 1)));
    }
    for r in 0..n - 1 {
        for u in 0..4 {
            let mut x2 = QMat::zeros(n - 1, 1);
            x2[(r, 0)] = Quat::basis(u);
            m_basis.push(m_element(n, &Quat::zero(), &x2));
        }
    }
    Ok(TorsionExample { n, tauhat, form, m_basis })
}

/// The displayed complement element for `X = (X₁, X₂)`, blocks of sizes `1, 1, n−1, 1`.
pub fn m_element(n: usize, x1: &Quat, x2: &QMat) -> QMat {
    let (i, j, k) = (Quat::i(), Quat::j(), Quat::k());
    let one = Quat::one();
    let two = rat(2);
    let x1c = x1.conj();
    let x2s = x2.conj_transpose();
    // 2(x₂ − x₃)i
    let shift = i.scale(&(&(&x1.x - &x1.y) * &two));

    let mut m = QMat::zeros(n + 2, n + 2);
    m[(0, 0)] = &(&x1c * &(&k - &one)) + &shift;
    m[(0, 1)] = &x1c.scale(&two) + &(&(&i * &x1c) * &j);
    m.set_block(0, 2, &x2s.left_scalar(&i).right_scalar(&j));
    m[(0, n + 1)] = Quat::real(&(&x1.x - &x1.y) * &two);

    m[(1, 0)] = x1.clone();
    m.set_block(1, 2, &x2s.left_scalar(&(&i - &j)).right_scalar(&j));
    m[(1, n + 1)] = &(&j * x1).scale(&two) - &(x1 * &i);

    m.set_block(2, 0, x2);
    m.set_block(2, 1, &-&x2.right_scalar(&(&one + &k)));
    m.set_block(2, n + 1, &-&x2.right_scalar(&i));

    m[(n + 1, 1)] = -(&x1c * &j);
    m.set_block(n + 1, 2, &-&x2s.right_scalar(&j));
    m[(n + 1, n + 1)] = &(&(&one + &k) * x1) + &shift;
    m
}
