//! Parametric generators for every family of the classification, with the
//! structural data each one is expected to produce.

mod torsion_example;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::rat;
use crate::sostar::SkewForm;
use crate::tila::{BlockLayout, TauElement};

pub use torsion_example::{torsion_example, TorsionExample};

/// A case of the catalog, or the torsion example.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    NsEven { n: usize, p: usize, q: usize },
    NsOdd { n: usize, p: usize, q: usize },
    M1 { n: usize },
    M2 { n: usize, p: usize, q: usize },
    M3 { n: usize },
    Torsion { n: usize },
}

impl Tag {
    pub fn n(&self) -> usize {
        match *self {
            Tag::NsEven { n, .. }
            | Tag::NsOdd { n, .. }
            | Tag::M1 { n }
            | Tag::M2 { n, .. }
            | Tag::M3 { n }
            | Tag::Torsion { n } => n,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Tag::NsEven { .. } => "ns-even",
            Tag::NsOdd { .. } => "ns-odd",
            Tag::M1 { .. } => "m1",
            Tag::M2 { .. } => "m2",
            Tag::M3 { .. } => "m3",
            Tag::Torsion { .. } => "torsion",
        }
    }

    /// `p + q = 0` in the non-semisimple families.
    pub fn is_linear_model(&self) -> bool {
        matches!(*self, Tag::NsEven { p: 0, q: 0, .. } | Tag::NsOdd { p: 0, q: 0, .. })
    }

    /// Checks the parameter constraints, naming the violated inequality.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Constraint(msg));
        let n = self.n();
        if n < 2 {
            return fail(format!("n > 1 required, got n = {n}"));
        }
        match *self {
            Tag::NsEven { n, p, q } => {
                if n % 2 != 0 {
                    return fail(format!("ns-even needs n even, got n = {n}"));
                }
                if p + q > n / 2 {
                    return fail(format!("p + q <= n/2 violated: {p} + {q} > {}", n / 2));
                }
            }
            Tag::NsOdd { n, p, q } => {
                if n % 2 != 1 {
                    return fail(format!("ns-odd needs n odd, got n = {n}"));
                }
                if p + q > (n - 1) / 2 {
                    return fail(format!("p + q <= (n-1)/2 violated: {p} + {q} > {}", (n - 1) / 2));
                }
            }
            Tag::M2 { n, p, q } => {
                if p + q != n {
                    return fail(format!("m2 needs p + q = n: {p} + {q} != {n}"));
                }
            }
            Tag::M3 { n } => {
                if n % 2 != 0 {
                    return fail(format!("m3 needs n even, got n = {n}"));
                }
            }
            Tag::M1 { .. } | Tag::Torsion { .. } => {}
        }
        Ok(())
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Tag::NsEven { n, p, q } | Tag::NsOdd { n, p, q } | Tag::M2 { n, p, q } => {
                write!(f, "{}:{n},{p},{q}", self.family())
            }
            Tag::M1 { n } | Tag::M3 { n } | Tag::Torsion { n } => write!(f, "{}:{n}", self.family()),
        }
    }
}

impl FromStr for Tag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownTag(s.to_string());
        let (family, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> =
            args.split(',').map(|a| a.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        let tag = match (family, nums.as_slice()) {
            ("ns-even", &[n, p, q]) => Tag::NsEven { n, p, q },
            ("ns-odd", &[n, p, q]) => Tag::NsOdd { n, p, q },
            ("m1", &[n]) => Tag::M1 { n },
            ("m2", &[n, p, q]) => Tag::M2 { n, p, q },
            ("m3", &[n]) => Tag::M3 { n },
            ("torsion", &[n]) => Tag::Torsion { n },
            _ => return Err(bad()),
        };
        Ok(tag)
    }
}

impl Serialize for Tag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Every admissible symmetric tag with `2 <= n <= max_n`.
pub fn all_tags(max_n: usize) -> Vec<Tag> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let half = if n % 2 == 0 { n / 2 } else { (n - 1) / 2 };
        for p in 0..=half {
            for q in 0..=half - p {
                out.push(if n % 2 == 0 { Tag::NsEven { n, p, q } } else { Tag::NsOdd { n, p, q } });
            }
        }
        out.push(Tag::M1 { n });
        for p in 0..=n {
            out.push(Tag::M2 { n, p, q: n - p });
        }
        if n % 2 == 0 {
            out.push(Tag::M3 { n });
        }
    }
    out
}

/// Dimensions and flags a case should produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedReport {
    pub dim_g: usize,
    pub dim_m: usize,
    pub dim_l: usize,
    pub semisimple_dim: usize,
    pub radical_dim: usize,
    pub r_qh_dim: Option<usize>,
    pub r_deg_dim: Option<usize>,
    /// Whether the ambient trace form on `m` is degenerate.
    pub trace_form_degenerate: bool,
    pub radical_abelian: Option<bool>,
    pub linear_model: bool,
    /// Name of the algebra `g`, or of its semisimple part.
    pub identification: String,
}

pub fn expected_report(tag: &Tag) -> Result<ExpectedReport> {
    tag.validate()?;
    let n = tag.n();
    let dim_m = 4 * n;
    let simple = |dim_g: usize, id: String| ExpectedReport {
        dim_g,
        dim_m,
        dim_l: dim_g - dim_m,
        semisimple_dim: dim_g,
        radical_dim: 0,
        r_qh_dim: None,
        r_deg_dim: None,
        trace_form_degenerate: false,
        radical_abelian: None,
        linear_model: false,
        identification: id,
    };
    let rep = match *tag {
        Tag::NsEven { p, q, .. } | Tag::NsOdd { p, q, .. } => {
            let s = p + q;
            let odd = matches!(tag, Tag::NsOdd { .. });
            let r = if odd { (n - 1) / 2 - s } else { n / 2 - s };
            let r_deg = if odd { (8 * r + 4) * (s + 1) } else { 8 * r * (s + 1) };
            let r_qh = (s + 1) * (2 * s + 1) - 1;
            if s == 0 {
                ExpectedReport {
                    dim_g: dim_m,
                    dim_m,
                    dim_l: 0,
                    semisimple_dim: 0,
                    radical_dim: dim_m,
                    r_qh_dim: Some(r_qh),
                    r_deg_dim: Some(r_deg),
                    trace_form_degenerate: true,
                    radical_abelian: Some(true),
                    linear_model: true,
                    identification: "linear model".into(),
                }
            } else {
                let dim_g = 4 * (s + 1) * (n + 1 - s) - 1;
                let semisimple_dim = (s + 1) * (2 * s + 3);
                ExpectedReport {
                    dim_g,
                    dim_m,
                    dim_l: dim_g - dim_m,
                    semisimple_dim,
                    radical_dim: dim_g - semisimple_dim,
                    r_qh_dim: Some(r_qh),
                    r_deg_dim: Some(r_deg),
                    trace_form_degenerate: true,
                    // Odd n always leaves a Heisenberg-type piece in the radical; for
                    // even n it is abelian exactly when no degenerate blocks remain.
                    radical_abelian: Some(!odd && r == 0),
                    linear_model: false,
                    identification: format!("sp({},{q}) semisimple part", p + 1),
                }
            }
        }
        Tag::M1 { n } => simple((n + 1) * (2 * n + 1), format!("so*({})", 2 * n + 2)),
        Tag::M2 { n, p, q } => simple((n + 2) * (n + 2) - 1, format!("su({},{q})", p + 2)),
        Tag::M3 { n } => simple((n + 2) * (n + 2) - 1, format!("sl({},H)", n / 2 + 1)),
        Tag::Torsion { .. } => {
            return Err(Error::NotApplicable("the torsion example has no symmetric report".into()))
        }
    };
    Ok(rep)
}

/// A generator, its form and what it should produce.
#[derive(Clone, Debug)]
pub struct CatalogCase {
    pub tag: Tag,
    pub tau: TauElement,
    pub form: SkewForm,
    pub expected: ExpectedReport,
    pub layout: Option<BlockLayout>,
}

pub fn make_case(tag: &Tag) -> Result<CatalogCase> {
    tag.validate()?;
    let n = tag.n();
    let (tau, form, layout) = match *tag {
        Tag::NsEven { p, q, .. } => {
            let h = n / 2;
            let mut a = QMat::zeros(n, n);
            for k in 0..p {
                a[(h + k, k)] = Quat::one();
            }
            for k in 0..q {
                a[(p + k, h + p + k)] = Quat::one();
            }
            let layout = even_layout(p, q, h - p - q);
            (TauElement::new(Quat::zero(), a, rat(0))?, SkewForm::darboux_even(n)?, Some(layout))
        }
        Tag::NsOdd { p, q, .. } => {
            let h = (n - 1) / 2;
            let mut a = QMat::zeros(n, n);
            for k in 0..p {
                a[(h + 1 + k, k)] = Quat::one();
            }
            for k in 0..q {
                a[(p + k, h + 1 + p + k)] = Quat::one();
            }
            let layout = odd_layout(p, q, h - p - q);
            (TauElement::new(Quat::zero(), a, rat(0))?, SkewForm::darboux_odd(n)?, Some(layout))
        }
        Tag::M1 { .. } => (TauElement::new(Quat::i(), QMat::zeros(n, n), rat(-1))?, SkewForm::skew_hermitian(n)?, None),
        Tag::M2 { p, q, .. } => {
            let a = QMat::signature(p, q).left_scalar(&Quat::j());
            (TauElement::new(Quat::zero(), a, rat(-1))?, SkewForm::skew_hermitian(n)?, None)
        }
        Tag::M3 { .. } => {
            let a = QMat::signature(n / 2, n / 2);
            (TauElement::new(Quat::zero(), a, rat(1))?, SkewForm::darboux_even(n)?, None)
        }
        Tag::Torsion { .. } => {
            return Err(Error::NotApplicable("use torsion_example for the torsion generator".into()))
        }
    };
    Ok(CatalogCase { tag: *tag, tau, form, expected: expected_report(tag)?, layout })
}

fn grid(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

/// Block labels of `g` for the even non-semisimple family, block sizes
/// `(1, p, q, r, p, q, r, 1)`.
pub fn even_layout(p: usize, q: usize, r: usize) -> BlockLayout {
    BlockLayout {
        sizes: vec![1, p, q, r, p, q, r, 1],
        grid: grid(&[
            &["S1", "X1", "", "", "", "X2", "", ""],
            &["X1", "S2", "", "", "", "S3", "", ""],
            &["Y1", "H1", "S4", "R1", "S3", "H2", "R2", "X2"],
            &["Z1", "R3", "", "", "", "R2", "", ""],
            &["Y2", "H3", "S3", "R4", "S2", "H1", "R3", "X1"],
            &["X2", "S3", "", "", "", "S4", "", ""],
            &["Z2", "R4", "", "", "", "R1", "", ""],
            &["H4", "Y2", "X2", "Z2", "X1", "Y1", "Z1", "S1"],
        ]),
    }
}

/// Block labels for the odd family, block sizes `(1, p, q, r, 1, p, q, r, 1)`.
pub fn odd_layout(p: usize, q: usize, r: usize) -> BlockLayout {
    BlockLayout {
        sizes: vec![1, p, q, r, 1, p, q, r, 1],
        grid: grid(&[
            &["S1", "X1", "", "", "", "", "X2", "", ""],
            &["X1", "S2", "", "", "", "", "S3", "", ""],
            &["Y1", "H1", "S4", "R1", "R6", "S3", "H2", "R2", "X2"],
            &["Z1", "R3", "", "", "", "", "R2", "", ""],
            &["Z3", "R5", "", "", "", "", "R6", "", ""],
            &["Y2", "H3", "S3", "R4", "R5", "S2", "H1", "R3", "X1"],
            &["X2", "S3", "", "", "", "", "S4", "", ""],
            &["Z2", "R4", "", "", "", "", "R1", "", ""],
            &["H4", "Y2", "X2", "Z2", "Z3", "X1", "Y1", "Z1", "S1"],
        ]),
    }
}
