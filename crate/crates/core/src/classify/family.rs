use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::{self, Rational};
use crate::sostar::hn_basis;
use crate::subspace::linalg::{self, Matrix};
use crate::tila::TauElement;

/// The shape of a Jordan block of `A ∈ so*(2n)`, without its eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "J1_zero")]
    J1Zero,
    #[serde(rename = "J2_zero")]
    J2Zero,
    #[serde(rename = "J1_bj")]
    J1Bj,
    #[serde(rename = "J1_beta_pair")]
    J1BetaPair,
    #[serde(rename = "J2_bj")]
    J2Bj,
    #[serde(rename = "J2_beta_pair")]
    J2BetaPair,
    #[serde(rename = "J3_zero")]
    J3Zero,
}

impl FamilyKind {
    /// Kinds allowed by the block-size bound.
    pub const ADMISSIBLE: [FamilyKind; 4] =
        [FamilyKind::J1Zero, FamilyKind::J2Zero, FamilyKind::J1Bj, FamilyKind::J1BetaPair];
    /// Larger blocks, kept only to confirm they never admit a solution.
    pub const EXCLUDED: [FamilyKind; 3] = [FamilyKind::J2Bj, FamilyKind::J2BetaPair, FamilyKind::J3Zero];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::J1Zero => "J1_zero",
            FamilyKind::J2Zero => "J2_zero",
            FamilyKind::J1Bj => "J1_bj",
            FamilyKind::J1BetaPair => "J1_beta_pair",
            FamilyKind::J2Bj => "J2_bj",
            FamilyKind::J2BetaPair => "J2_beta_pair",
            FamilyKind::J3Zero => "J3_zero",
        }
    }

    /// Quaternionic size of the block; a β-pair occupies two copies of its Jordan block.
    pub fn size(self) -> usize {
        match self {
            FamilyKind::J1Zero | FamilyKind::J1Bj => 1,
            FamilyKind::J2Zero | FamilyKind::J1BetaPair | FamilyKind::J2Bj => 2,
            FamilyKind::J3Zero => 3,
            FamilyKind::J2BetaPair => 4,
        }
    }

    pub fn is_admissible(self) -> bool {
        FamilyKind::ADMISSIBLE.contains(&self)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ADMISSIBLE
            .iter()
            .chain(FamilyKind::EXCLUDED.iter())
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A Jordan block together with its parameters.
///
/// `kappa = ±1` picks between a block and its conjugate transpose for `J2_zero`,
/// and the sign of `bj` for the imaginary eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    #[serde(rename = "J1_zero")]
    J1Zero,
    #[serde(rename = "J2_zero")]
    J2Zero { kappa: i8 },
    #[serde(rename = "J1_bj")]
    J1Bj {
        #[serde(with = "rational::serde_rational")]
        b: Rational,
        kappa: i8,
    },
    #[serde(rename = "J1_beta_pair")]
    J1BetaPair {
        #[serde(with = "rational::serde_rational")]
        re: Rational,
        #[serde(with = "rational::serde_rational")]
        im: Rational,
    },
    #[serde(rename = "J2_bj")]
    J2Bj {
        #[serde(with = "rational::serde_rational")]
        b: Rational,
        kappa: i8,
    },
    #[serde(rename = "J2_beta_pair")]
    J2BetaPair {
        #[serde(with = "rational::serde_rational")]
        re: Rational,
        #[serde(with = "rational::serde_rational")]
        im: Rational,
    },
    #[serde(rename = "J3_zero")]
    J3Zero,
}

impl Family {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::J1Zero => FamilyKind::J1Zero,
            Family::J2Zero { .. } => FamilyKind::J2Zero,
            Family::J1Bj { .. } => FamilyKind::J1Bj,
            Family::J1BetaPair { .. } => FamilyKind::J1BetaPair,
            Family::J2Bj { .. } => FamilyKind::J2Bj,
            Family::J2BetaPair { .. } => FamilyKind::J2BetaPair,
            Family::J3Zero => FamilyKind::J3Zero,
        }
    }

    pub fn size(&self) -> usize {
        self.kind().size()
    }

    /// Rejects `kappa ∉ {±1}`, `b ≤ 0`, `Re β ≤ 0` and `Im β < 0`.
    pub fn validate(&self) -> Result<()> {
        let kappa_ok = |k: i8| {
            if k == 1 || k == -1 {
                Ok(())
            } else {
                Err(Error::Constraint(format!("kappa must be ±1, got {k}")))
            }
        };
        match self {
            Family::J1Zero | Family::J3Zero => Ok(()),
            Family::J2Zero { kappa } => kappa_ok(*kappa),
            Family::J1Bj { b, kappa } | Family::J2Bj { b, kappa } => {
                kappa_ok(*kappa)?;
                if b.is_positive() {
                    Ok(())
                } else {
                    Err(Error::Constraint(format!("b must be positive, got {}", rational::format(b))))
                }
            }
            Family::J1BetaPair { re, im } | Family::J2BetaPair { re, im } => {
                if !re.is_positive() {
                    return Err(Error::Constraint(format!("Re β must be positive, got {}", rational::format(re))));
                }
                if im.is_negative() {
                    return Err(Error::Constraint(format!("Im β must be nonnegative, got {}", rational::format(im))));
                }
                Ok(())
            }
        }
    }

    /// The leading eigenvalue parameter, if the block has one.
    pub fn parameter(&self) -> Option<&Rational> {
        match self {
            Family::J1Bj { b, .. } | Family::J2Bj { b, .. } => Some(b),
            Family::J1BetaPair { re, .. } | Family::J2BetaPair { re, .. } => Some(re),
            _ => None,
        }
    }

    /// Multiplies every eigenvalue parameter by `s`.
    pub fn scaled(&self, s: &Rational) -> Family {
        match self {
            Family::J1Bj { b, kappa } => Family::J1Bj { b: b * s, kappa: *kappa },
            Family::J2Bj { b, kappa } => Family::J2Bj { b: b * s, kappa: *kappa },
            Family::J1BetaPair { re, im } => Family::J1BetaPair { re: re * s, im: im * s },
            Family::J2BetaPair { re, im } => Family::J2BetaPair { re: re * s, im: im * s },
            other => other.clone(),
        }
    }

    /// The block `A` and a skew-Hermitian form `𝕛` with `A*𝕛 + 𝕛A = 0`.
    ///
    /// Units sit under the diagonal; `kappa = −1` on `J2_zero` takes the
    /// conjugate transpose.
    pub fn realize(&self) -> Result<(QMat, QMat)> {
        self.validate()?;
        let z = Quat::zero;
        let one = Quat::one;
        let darboux2 = QMat::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => one(),
            (1, 0) => -one(),
            _ => z(),
        });
        let beta = |re: &Rational, im: &Rational| Quat::new(re.clone(), im.clone(), Rational::zero(), Rational::zero());
        let bj = |b: &Rational, kappa: i8| Quat::j().scale(&(b * Rational::from_integer(kappa.into())));
        let pair = |p: &QMat| -> (QMat, QMat) {
            let h = p.rows();
            let q = -&p.conj_transpose();
            let mut form = QMat::zeros(2 * h, 2 * h);
            form.set_block(0, h, &QMat::identity(h));
            form.set_block(h, 0, &-&QMat::identity(h));
            (QMat::block_diag(&[p.clone(), q]), form)
        };
        Ok(match self {
            Family::J1Zero => (QMat::zeros(1, 1), QMat::scalar(1, &Quat::j())),
            Family::J2Zero { kappa } => {
                let a = QMat::from_fn(2, 2, |r, c| if (r, c) == (1, 0) { one() } else { z() });
                let a = if *kappa == 1 { a } else { a.conj_transpose() };
                (a, darboux2)
            }
            Family::J1Bj { b, kappa } => (QMat::scalar(1, &bj(b, *kappa)), QMat::scalar(1, &Quat::j())),
            Family::J1BetaPair { re, im } => pair(&QMat::scalar(1, &beta(re, im))),
            Family::J2Bj { b, kappa } => {
                let l = bj(b, *kappa);
                (QMat::from_fn(2, 2, |r, c| if r == c { l.clone() } else if r == 1 { one() } else { z() }), darboux2)
            }
            Family::J2BetaPair { re, im } => {
                let l = beta(re, im);
                pair(&QMat::from_fn(2, 2, |r, c| if r == c { l.clone() } else if r == 1 { one() } else { z() }))
            }
            Family::J3Zero => {
                let a = QMat::from_fn(3, 3, |r, c| if r == c + 1 { one() } else { z() });
                let form = QMat::from_fn(3, 3, |r, c| match (r, c) {
                    (1, 1) => Quat::j(),
                    (0, 2) | (2, 0) => -Quat::j(),
                    _ => z(),
                });
                (a, form)
            }
        })
    }

    /// Whether the block admits `(μi, d)`, read off the solved generator equation.
    ///
    /// Only admissible kinds can return true.
    pub fn admits_closed_form(&self, mu: &Rational, d: &Rational) -> bool {
        match self {
            Family::J1Zero => *d == -(mu * mu),
            Family::J2Zero { .. } => mu.is_zero() && d.is_zero(),
            Family::J1Bj { b, .. } => mu.is_zero() && *d == -(b * b),
            Family::J1BetaPair { re, im } => mu.is_zero() && im.is_zero() && *d == re * re,
            Family::J2Bj { .. } | Family::J2BetaPair { .. } | Family::J3Zero => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = rational::format;
        match self {
            Family::J1Zero | Family::J3Zero => write!(f, "{}", self.kind()),
            Family::J2Zero { kappa } => write!(f, "J2_zero(κ={kappa})"),
            Family::J1Bj { b, kappa } | Family::J2Bj { b, kappa } => {
                write!(f, "{}(b={}, κ={kappa})", self.kind(), r(b))
            }
            Family::J1BetaPair { re, im } | Family::J2BetaPair { re, im } => {
                write!(f, "{}(β={}+{}i)", self.kind(), r(re), r(im))
            }
        }
    }
}

/// The generator equation restricted to one block, as a real `4s × 4s` matrix
/// in the basis `{1, i, j, k}` of each quaternionic coordinate.
///
/// It vanishes exactly when the block admits `(a, d)`.
pub fn block_residual(family: &Family, a: &Quat, d: &Rational) -> Result<Matrix> {
    let (big_a, _) = family.realize()?;
    let tau = TauElement::new(a.clone(), big_a, d.clone())?;
    let s = family.size();
    let cols: Vec<Vec<Rational>> = hn_basis(s).iter().map(|x| tau.residual(x).realify()).collect();
    Ok(linalg::transpose(&cols))
}

/// `block_residual` from a family name and its parameters `[b]` or `[Re β, Im β]`.
pub fn block_residual_named(name: &str, kappa: i8, params: &[Rational], a: &Quat, d: &Rational) -> Result<Matrix> {
    let kind: FamilyKind = name.parse()?;
    let param = |i: usize| {
        params
            .get(i)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("{name} needs {} parameter(s)", i + 1)))
    };
    let family = match kind {
        FamilyKind::J1Zero => Family::J1Zero,
        FamilyKind::J3Zero => Family::J3Zero,
        FamilyKind::J2Zero => Family::J2Zero { kappa },
        FamilyKind::J1Bj => Family::J1Bj { b: param(0)?, kappa },
        FamilyKind::J2Bj => Family::J2Bj { b: param(0)?, kappa },
        FamilyKind::J1BetaPair => Family::J1BetaPair { re: param(0)?, im: param(1)? },
        FamilyKind::J2BetaPair => Family::J2BetaPair { re: param(0)?, im: param(1)? },
    };
    block_residual(&family, a, d)
}

pub(crate) fn sign_of(r: &Rational) -> Rational {
    if r.is_zero() {
        Rational::zero()
    } else if r.is_positive() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::sostar::ambient_membership;

    fn qi(mu: Rational) -> Quat {
        Quat::i().scale(&mu)
    }

    /// The size-1 conditions written out with quaternion products, one real basis vector at a time.
    fn size_one_oracle(f: impl Fn(&Quat) -> Quat) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..4)
            .map(|b| {
                let y = f(&Quat::basis(b));
                y.components().iter().map(|c| (*c).clone()).collect()
            })
            .collect();
        linalg::transpose(&cols)
    }

    #[test]
    fn size_one_residuals_match_written_conditions() {
        let grid = [rat(0), frac(1, 2), rat(1), rat(-1), frac(-3, 2), rat(2)];
        for mu in &grid {
            for d in &grid {
                let a = qi(mu.clone());
                let a2 = &a * &a;
                let got = block_residual(&Family::J1Zero, &a, d).unwrap();
                let want = size_one_oracle(|x| &x.scale(d) - &(x * &a2));
                assert_eq!(got, want);

                let b = frac(3, 2);
                let bj = Quat::j().scale(&b);
                let got = block_residual(&Family::J1Bj { b: b.clone(), kappa: 1 }, &a, d).unwrap();
                let want = size_one_oracle(|x| {
                    let t = &(&x.scale(d) + &(&(&bj * x) * &a).scale(&rat(2))) - &(x * &a2);
                    &t + &x.scale(&(&b * &b))
                });
                assert_eq!(got, want);

                let beta = Quat::new(rat(1), frac(1, 3), rat(0), rat(0));
                let got = block_residual(&Family::J1BetaPair { re: rat(1), im: frac(1, 3) }, &a, d).unwrap();
                let top = size_one_oracle(|x| {
                    let t = &(&x.scale(d) + &(&(&beta * x) * &a).scale(&rat(2))) - &(x * &a2);
                    &t - &(&(&beta * &beta) * x)
                });
                for r in 0..4 {
                    assert_eq!(got[r][..4], top[r][..]);
                }
            }
        }
    }

    #[test]
    fn listed_solutions_are_zero() {
        let z = |f: &Family, a: Quat, d: Rational| linalg::is_zero(&linalg::flatten(&block_residual(f, &a, &d).unwrap()));
        assert!(z(&Family::J1Zero, Quat::i(), rat(-1)));
        assert!(z(&Family::J1Bj { b: rat(1), kappa: 1 }, Quat::zero(), rat(-1)));
        assert!(z(&Family::J1BetaPair { re: rat(1), im: rat(0) }, Quat::zero(), rat(1)));
        assert!(z(&Family::J2Zero { kappa: 1 }, Quat::zero(), rat(0)));
        assert!(!z(&Family::J2Zero { kappa: -1 }, Quat::i(), rat(-1)));
        assert!(!z(&Family::J3Zero, Quat::zero(), rat(0)));
    }

    #[test]
    fn realizations_lie_in_so_star() {
        let fams = [
            Family::J1Zero,
            Family::J2Zero { kappa: 1 },
            Family::J2Zero { kappa: -1 },
            Family::J1Bj { b: frac(2, 3), kappa: -1 },
            Family::J1BetaPair { re: rat(2), im: frac(1, 2) },
            Family::J2Bj { b: rat(1), kappa: 1 },
            Family::J2BetaPair { re: rat(1), im: rat(1) },
            Family::J3Zero,
        ];
        for f in &fams {
            let (a, form) = f.realize().unwrap();
            assert_eq!(a.rows(), f.size());
            assert!((&(&a.conj_transpose() * &form) + &(&form * &a)).is_zero(), "{f}");
            assert!((&form.conj_transpose() + &form).is_zero(), "{f}");
            // membership of the block inside so*(2s+4) with a = 0, d = 0
            let tau = TauElement::new(Quat::zero(), a, rat(0)).unwrap();
            let sf = crate::sostar::SkewForm::custom(form).unwrap();
            assert!(ambient_membership(&tau.assemble(&sf).unwrap(), &sf).unwrap());
        }
    }

    #[test]
    fn unknown_and_invalid_families_are_rejected() {
        assert!(matches!(
            block_residual_named("J4_zero", 1, &[], &Quat::zero(), &rat(0)),
            Err(Error::UnknownFamily(_))
        ));
        assert!(block_residual_named("J1_bj", 1, &[rat(-1)], &Quat::zero(), &rat(0)).is_err());
        assert!(block_residual_named("J2_zero", 2, &[], &Quat::zero(), &rat(0)).is_err());
        assert!(block_residual(&Family::J1Zero, &Quat::one(), &rat(0)).is_err());
    }

    #[test]
    fn family_json() {
        let f = Family::J1Bj { b: frac(1, 2), kappa: -1 };
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"family":"J1_bj","b":"1/2","kappa":-1}"#);
        assert_eq!(serde_json::from_str::<Family>(&s).unwrap(), f);
        assert_eq!("J1_beta_pair".parse::<FamilyKind>().unwrap(), FamilyKind::J1BetaPair);
    }
}
