use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::form::SkewForm;
use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::{self, Rational};
use crate::subspace::linalg::{self, Vector};

/// `((0, 0, 1), (0, 𝕛, 0), (−1, 0, 0))`, the form preserved by `so*(2n+4)`.
pub fn j_full(form: &SkewForm) -> QMat {
    let n = form.n();
    let mut j = QMat::zeros(n + 2, n + 2);
    j[(0, n + 1)] = Quat::one();
    j[(n + 1, 0)] = -Quat::one();
    j.set_block(1, 1, form.matrix());
    j
}

/// `M*·J + J·M`; zero exactly for members of `so*(2n+4)`.
pub fn membership_residual(m: &QMat, form: &SkewForm) -> Result<QMat> {
    let size = form.n() + 2;
    if m.rows() != size || m.cols() != size {
        return Err(Error::Shape(format!(
            "expected a {size}x{size} matrix for n = {}, got {}x{}",
            form.n(),
            m.rows(),
            m.cols()
        )));
    }
    let j = j_full(form);
    Ok(&(&m.conj_transpose() * &j) + &(&j * m))
}

pub fn ambient_membership(m: &QMat, form: &SkewForm) -> Result<bool> {
    Ok(membership_residual(m, form)?.is_zero())
}

/// Real dimension of `so*(2n+4)`.
pub fn ambient_dim(n: usize) -> usize {
    let s = n + 2;
    2 * s * s - s
}

/// Real dimensions of the five graded pieces, from `g₋₂` to `g₂`.
pub fn graded_dims(n: usize) -> [usize; 5] {
    [1, 4 * n, 2 * n * n - n + 4, 4 * n, 1]
}

/// Block parametrization
/// `((a, Y*𝕛, d), (X, A, Y), (c, −X*𝕛, −a*))` of an element of `so*(2n+4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientElement {
    pub a: Quat,
    #[serde(rename = "X")]
    pub x: QMat,
    #[serde(rename = "Y")]
    pub y: QMat,
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    #[serde(with = "rational::serde_rational")]
    pub d: Rational,
    #[serde(rename = "A")]
    pub big_a: QMat,
}

impl AmbientElement {
    pub fn zero(n: usize) -> Self {
        AmbientElement {
            a: Quat::zero(),
            x: QMat::zeros(n, 1),
            y: QMat::zeros(n, 1),
            c: Rational::zero(),
            d: Rational::zero(),
            big_a: QMat::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn assemble(&self, form: &SkewForm) -> Result<QMat> {
        let n = form.n();
        if self.x.rows() != n || self.y.rows() != n || self.big_a.rows() != n || self.big_a.cols() != n {
            return Err(Error::Shape(format!("block sizes do not match n = {n}")));
        }
        let jm = form.matrix();
        let mut m = QMat::zeros(n + 2, n + 2);
        m[(0, 0)] = self.a.clone();
        m.set_block(0, 1, &(&self.y.conj_transpose() * jm));
        m[(0, n + 1)] = Quat::real(self.d.clone());
        m.set_block(1, 0, &self.x);
        m.set_block(1, 1, &self.big_a);
        m.set_block(1, n + 1, &self.y);
        m[(n + 1, 0)] = Quat::real(self.c.clone());
        m.set_block(n + 1, 1, &-&(&self.x.conj_transpose() * jm));
        m[(n + 1, n + 1)] = -self.a.conj();
        Ok(m)
    }

    /// Reads the blocks back off a member of `so*(2n+4)`.
    pub fn from_matrix(m: &QMat, form: &SkewForm) -> Result<Self> {
        let res = membership_residual(m, form)?;
        if !res.is_zero() {
            return Err(Error::NotAmbient(format!("M*J + JM is nonzero:\n{res}")));
        }
        let n = form.n();
        Ok(AmbientElement {
            a: m[(0, 0)].clone(),
            x: m.block(1, 0, n, 1),
            y: m.block(1, n + 1, n, 1),
            c: m[(n + 1, 0)].re().clone(),
            d: m[(0, n + 1)].re().clone(),
            big_a: m.block(1, 1, n, n),
        })
    }

    pub fn is_valid(&self, form: &SkewForm) -> Result<bool> {
        ambient_membership(&self.assemble(form)?, form)
    }
}

/// Grade of the matrix entry `(r, c)` of an `(n+2)×(n+2)` matrix.
pub fn entry_grade(n: usize, r: usize, c: usize) -> i32 {
    let deg = |i: usize| -> i32 {
        if i == 0 {
            1
        } else if i == n + 1 {
            -1
        } else {
            0
        }
    };
    deg(r) - deg(c)
}

/// The five homogeneous components of an ambient element, each as a full matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedParts {
    parts: [QMat; 5],
}

impl GradedParts {
    /// Component of grade `k ∈ {−2, …, 2}`.
    pub fn part(&self, k: i32) -> &QMat {
        &self.parts[(k + 2) as usize]
    }

    pub fn sum(&self) -> QMat {
        self.parts[1..].iter().fold(self.parts[0].clone(), |acc, p| &acc + p)
    }

    /// Grades with a nonzero component.
    pub fn support(&self) -> Vec<i32> {
        (-2..=2).filter(|&k| !self.part(k).is_zero()).collect()
    }
}

pub fn grade_project(m: &QMat, form: &SkewForm) -> Result<GradedParts> {
    if !ambient_membership(m, form)? {
        return Err(Error::NotAmbient("cannot grade a non-member".into()));
    }
    let n = form.n();
    let parts = [-2, -1, 0, 1, 2].map(|k| {
        QMat::from_fn(n + 2, n + 2, |r, c| {
            if entry_grade(n, r, c) == k {
                m[(r, c)].clone()
            } else {
                Quat::zero()
            }
        })
    });
    Ok(GradedParts { parts })
}

/// The `sl₂`-triple `(e, h, f)` with `e ∈ g₂`, `f ∈ g₋₂`, `h = [e, f]`.
pub fn sl2_triple(n: usize) -> (QMat, QMat, QMat) {
    let mut e = QMat::zeros(n + 2, n + 2);
    e[(0, n + 1)] = Quat::one();
    let mut f = QMat::zeros(n + 2, n + 2);
    f[(n + 1, 0)] = Quat::one();
    let h = e.commutator(&f).expect("square matrices of equal size");
    (e, h, f)
}

/// `X ∈ ℍⁿ` placed in `g₋₁`.
pub fn embed_minus_one(x: &QMat, form: &SkewForm) -> Result<QMat> {
    let mut el = AmbientElement::zero(form.n());
    el.x = x.clone();
    el.assemble(form)
}

fn check_vector(x: &QMat, n: usize) -> Result<()> {
    if x.rows() != n || x.cols() != 1 {
        return Err(Error::MixedDimension { expected: n, found: x.rows() });
    }
    Ok(())
}

/// The `g₋₂`-coefficient of `[X, Y]` for `X, Y ∈ g₋₁`. Equals `2·Re(Y*𝕛X)`.
pub fn levi_form(x: &QMat, y: &QMat, form: &SkewForm) -> Result<Rational> {
    let n = form.n();
    check_vector(x, n)?;
    check_vector(y, n)?;
    let br = embed_minus_one(x, form)?.commutator(&embed_minus_one(y, form)?)?;
    Ok(br[(n + 1, 0)].re().clone())
}

/// `(g₁, g₂, g₃)(C, X)`: the `i, j, k` components of `½(C*𝕛X + X*𝕛C)`.
pub fn pseudo_hermitian_metrics(c: &QMat, x: &QMat, form: &SkewForm) -> Result<[Rational; 3]> {
    let n = form.n();
    check_vector(c, n)?;
    check_vector(x, n)?;
    let jm = form.matrix();
    let s = &(&(&c.conj_transpose() * jm) * x) + &(&(&x.conj_transpose() * jm) * c);
    let h = s[(0, 0)].scale(&rational::frac(1, 2));
    Ok([h.x, h.y, h.z])
}

/// The `4n` real basis vectors of `ℍⁿ`: `e_r·q` for `q ∈ (1, i, j, k)`, row-major.
pub fn hn_basis(n: usize) -> Vec<QMat> {
    (0..n)
        .flat_map(|r| {
            (0..4).map(move |b| {
                let mut x = QMat::zeros(n, 1);
                x[(r, 0)] = Quat::basis(b);
                x
            })
        })
        .collect()
}

/// Real basis of `so*(2n) = {A : A*𝕛 + 𝕛A = 0}`.
pub fn so_star_basis(form: &SkewForm) -> Vec<QMat> {
    let n = form.n();
    let jm = form.matrix();
    let coords = 4 * n * n;
    let images: Vec<Vector> = (0..coords)
        .map(|k| {
            let a = QMat::from_real(n, n, &linalg::unit_vector(coords, k)).expect("shape");
            (&(&a.conj_transpose() * jm) + &(jm * &a)).realify()
        })
        .collect();
    let map = linalg::transpose(&images);
    linalg::nullspace(&map, coords)
        .into_iter()
        .map(|v| QMat::from_real(n, n, &v).expect("shape"))
        .collect()
}

/// A real basis of each graded piece, indexed by `grade + 2`.
pub fn graded_basis(form: &SkewForm) -> [Vec<QMat>; 5] {
    let n = form.n();
    let build = |f: &dyn Fn(&mut AmbientElement)| {
        let mut el = AmbientElement::zero(n);
        f(&mut el);
        el.assemble(form).expect("blocks sized from the form")
    };
    let one = rational::one();
    let minus2 = vec![build(&|e| e.c = one.clone())];
    let plus2 = vec![build(&|e| e.d = one.clone())];
    let minus1 = hn_basis(n).iter().map(|x| build(&|e| e.x = x.clone())).collect();
    let plus1 = hn_basis(n).iter().map(|y| build(&|e| e.y = y.clone())).collect();
    let mut zero: Vec<QMat> = (0..4).map(|b| build(&|e| e.a = Quat::basis(b))).collect();
    zero.extend(so_star_basis(form).iter().map(|a| build(&|e| e.big_a = a.clone())));
    [minus2, minus1, zero, plus1, plus2]
}

/// The commutator bracket on realified `(n+2)×(n+2)` matrices.
pub fn realified_bracket(size: usize) -> impl Fn(&[Rational], &[Rational]) -> Vector + Sync + Copy {
    move |x, y| {
        let a = QMat::from_real(size, size, x).expect("realified matrix");
        let b = QMat::from_real(size, size, y).expect("realified matrix");
        a.commutator(&b).expect("square matrices of equal size").realify()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn forms() -> Vec<SkewForm> {
        vec![
            SkewForm::skew_hermitian(2).unwrap(),
            SkewForm::darboux_even(2).unwrap(),
            SkewForm::darboux_odd(3).unwrap(),
            SkewForm::signed(1, 1).unwrap(),
        ]
    }

    #[test]
    fn j_full_is_forced_by_the_parametrization() {
        // Among matrices J = ((α,0,β),(0,𝕛,0),(γ,0,δ)) with real corner entries,
        // requiring every parametrized element to be a member leaves only the
        // multiples of ((0,0,1),(0,𝕛,0),(−1,0,0)) up to the 𝕛 block.
        let form = SkewForm::skew_hermitian(1).unwrap();
        let mut g = graded_basis(&form).concat();
        g.push(sl2_triple(1).1);
        let mut rows = Vec::new();
        for corner in 0..4 {
            let mut j = QMat::zeros(3, 3);
            let pos = [(0, 0), (0, 2), (2, 0), (2, 2)][corner];
            j[pos] = Quat::one();
            let col: Vector = g.iter().flat_map(|m| (&(&m.conj_transpose() * &j) + &(&j * m)).realify()).collect();
            rows.push(col);
        }
        let mut jf = j_full(&form);
        jf[(0, 2)] = Quat::zero();
        jf[(2, 0)] = Quat::zero();
        let rest: Vector = g.iter().flat_map(|m| (&(&m.conj_transpose() * &jf) + &(&jf * m)).realify()).collect();
        // Solve Σ tᵢ·corner_i = −rest.
        let sys = linalg::transpose(&rows);
        let neg: Vector = rest.iter().map(|x| -x).collect();
        let t = linalg::solve(&sys, &neg, 4).expect("a consistent corner assignment");
        assert_eq!(t, vec![rat(0), rat(1), rat(-1), rat(0)]);
        assert_eq!(linalg::rank(&sys), 4);
    }

    #[test]
    fn sl2_members_and_relations() {
        let (e, h, f) = sl2_triple(2);
        let form = SkewForm::skew_hermitian(2).unwrap();
        for m in [&e, &h, &f] {
            assert!(ambient_membership(m, &form).unwrap());
        }
        assert_eq!(h.commutator(&e).unwrap(), e.scale(&rat(2)));
        assert_eq!(h.commutator(&f).unwrap(), f.scale(&rat(-2)));
        let hp = grade_project(&h, &form).unwrap();
        assert_eq!(hp.support(), vec![0]);
        assert_eq!(AmbientElement::from_matrix(&h, &form).unwrap().a, Quat::one());
        assert_eq!(grade_project(&e, &form).unwrap().support(), vec![2]);
    }

    #[test]
    fn imaginary_corner_is_rejected() {
        let form = SkewForm::skew_hermitian(1).unwrap();
        let mut m = QMat::zeros(3, 3);
        m[(2, 0)] = Quat::i();
        let r = membership_residual(&m, &form).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r[(0, 0)], Quat::ints(0, 2, 0, 0));
        assert!(ambient_membership(&QMat::zeros(3, 3), &form).unwrap());
        assert!(ambient_membership(&QMat::zeros(4, 4), &form).is_err());
    }

    #[test]
    fn graded_dimensions() {
        for form in forms() {
            let n = form.n();
            let basis = graded_basis(&form);
            let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
            assert_eq!(dims, graded_dims(n).to_vec());
            assert_eq!(dims.iter().sum::<usize>(), ambient_dim(n));
            for m in basis.iter().flatten() {
                assert!(ambient_membership(m, &form).unwrap());
            }
        }
    }

    #[test]
    fn levi_form_closed_form() {
        let form = SkewForm::skew_hermitian(1).unwrap();
        let b = hn_basis(1);
        let gram: Vec<Vector> =
            b.iter().map(|x| b.iter().map(|y| levi_form(x, y, &form).unwrap()).collect()).collect();
        assert_eq!(linalg::rank(&gram), 4);
        assert!(linalg::is_antisymmetric(&gram));
        let one = &b[0];
        let j = &b[2];
        assert!(!levi_form(one, j, &form).unwrap().is_zero());
        for x in &b {
            for y in &b {
                let direct = (&(&y.conj_transpose() * form.matrix()) * x)[(0, 0)].re() * rat(2);
                assert_eq!(levi_form(x, y, &form).unwrap(), direct);
            }
        }
    }

    #[test]
    fn metrics_vanish_at_zero() {
        let form = SkewForm::skew_hermitian(2).unwrap();
        let x = QMat::column(vec![Quat::ints(1, 2, 0, -1), Quat::ints(0, 1, 1, 3)]);
        let g = pseudo_hermitian_metrics(&QMat::zeros(2, 1), &x, &form).unwrap();
        assert!(g.iter().all(Zero::is_zero));
    }

    #[test]
    fn element_json_roundtrip() {
        let form = SkewForm::skew_hermitian(1).unwrap();
        let mut el = AmbientElement::zero(1);
        el.a = Quat::i();
        el.d = rat(-1);
        el.c = rat(1);
        let s = serde_json::to_string(&el).unwrap();
        let back: AmbientElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, el);
        assert!(el.is_valid(&form).unwrap());
    }
}
