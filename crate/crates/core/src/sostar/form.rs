use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::subspace::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormVariant {
    /// `𝕛 = j·Iₙ`
    SkewHermitian,
    /// `𝕛 = ((0, I), (−I, 0))` with `n/2`-blocks.
    DarbouxEven,
    /// `𝕛 = ((0, 0, I), (0, j, 0), (−I, 0, 0))` with `(n−1)/2`-blocks.
    DarbouxOdd,
    /// `𝕛 = j·I_{p,q}`.
    DarbouxSigned,
    /// Any other skew-Hermitian matrix, such as a block-diagonal sum of the above.
    Custom,
}

/// A standard skew-Hermitian form `𝕛` on `ℍⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct SkewForm {
    n: usize,
    variant: FormVariant,
    p: usize,
    q: usize,
    matrix: QMat,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    n: usize,
    variant: FormVariant,
    #[serde(default)]
    p: usize,
    #[serde(default)]
    q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<QMat>,
}

impl TryFrom<RawForm> for SkewForm {
    type Error = Error;
    fn try_from(r: RawForm) -> Result<Self> {
        if r.variant == FormVariant::Custom {
            let m = r.matrix.ok_or_else(|| Error::Invalid("a custom form needs its matrix".into()))?;
            if m.rows() != r.n {
                return Err(Error::MixedDimension { expected: r.n, found: m.rows() });
            }
            return SkewForm::custom(m);
        }
        SkewForm::from_variant(r.n, r.variant, r.p, r.q)
    }
}

impl From<SkewForm> for RawForm {
    fn from(f: SkewForm) -> Self {
        let matrix = (f.variant == FormVariant::Custom).then_some(f.matrix);
        RawForm { n: f.n, variant: f.variant, p: f.p, q: f.q, matrix }
    }
}

impl SkewForm {
    pub fn from_variant(n: usize, variant: FormVariant, p: usize, q: usize) -> Result<Self> {
        match variant {
            FormVariant::SkewHermitian => SkewForm::skew_hermitian(n),
            FormVariant::DarbouxEven => SkewForm::darboux_even(n),
            FormVariant::DarbouxOdd => SkewForm::darboux_odd(n),
            FormVariant::DarbouxSigned => {
                if p + q != n {
                    return Err(Error::Invalid(format!("signed form needs p + q = n, got {p} + {q} != {n}")));
                }
                SkewForm::signed(p, q)
            }
            FormVariant::Custom => Err(Error::Invalid("a custom form needs its matrix".into())),
        }
    }

    /// An arbitrary skew-Hermitian form, checked for `𝕛* = −𝕛` and invertibility.
    pub fn custom(matrix: QMat) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let n = matrix.rows();
        let f = SkewForm { n, variant: FormVariant::Custom, p: 0, q: 0, matrix };
        if !f.is_valid() {
            return Err(Error::Invalid("matrix is not an invertible skew-Hermitian form".into()));
        }
        Ok(f)
    }

    pub fn skew_hermitian(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(SkewForm { n, variant: FormVariant::SkewHermitian, p: n, q: 0, matrix: QMat::scalar(n, &Quat::j()) })
    }

    pub fn darboux_even(n: usize) -> Result<Self> {
        check_n(n)?;
        if n % 2 != 0 {
            return Err(Error::Invalid(format!("even Darboux form needs n even, got {n}")));
        }
        let h = n / 2;
        let mut m = QMat::zeros(n, n);
        m.set_block(0, h, &QMat::identity(h));
        m.set_block(h, 0, &QMat::scalar(h, &-Quat::one()));
        Ok(SkewForm { n, variant: FormVariant::DarbouxEven, p: 0, q: 0, matrix: m })
    }

    pub fn darboux_odd(n: usize) -> Result<Self> {
        check_n(n)?;
        if n % 2 != 1 {
            return Err(Error::Invalid(format!("odd Darboux form needs n odd, got {n}")));
        }
        let h = (n - 1) / 2;
        let mut m = QMat::zeros(n, n);
        if h > 0 {
            m.set_block(0, h + 1, &QMat::identity(h));
            m.set_block(h + 1, 0, &QMat::scalar(h, &-Quat::one()));
        }
        m[(h, h)] = Quat::j();
        Ok(SkewForm { n, variant: FormVariant::DarbouxOdd, p: 0, q: 0, matrix: m })
    }

    pub fn signed(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        check_n(n)?;
        let matrix = QMat::signature(p, q).left_scalar(&Quat::j());
        Ok(SkewForm { n, variant: FormVariant::DarbouxSigned, p, q, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> FormVariant {
        self.variant
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    /// `𝕛* = −𝕛` and `X ↦ 𝕛X` invertible.
    pub fn is_valid(&self) -> bool {
        let m = &self.matrix;
        if m.conj_transpose() != -m {
            return false;
        }
        let cols: Vec<_> = (0..self.n)
            .flat_map(|r| (0..4).map(move |b| (r, b)))
            .map(|(r, b)| {
                let mut x = QMat::zeros(self.n, 1);
                x[(r, 0)] = Quat::basis(b);
                (m * &x).realify()
            })
            .collect();
        linalg::rank(&cols) == 4 * self.n
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("quaternionic dimension must be positive".into()));
    }
    Ok(())
}
