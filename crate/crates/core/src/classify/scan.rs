use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{block_residual, sign_of, Family, FamilyKind};
use crate::catalog::Tag;
use crate::error::{Error, Result};
use crate::quatlin::{QMat, Quat};
use crate::rational::{self, Rational};
use crate::sostar::SkewForm;
use crate::subspace::linalg;
use crate::tila::TauElement;

/// `(a, d)` and the block multiset of `A`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalizedTriple {
    pub a: Quat,
    #[serde(with = "rational::serde_rational")]
    pub d: Rational,
    pub blocks: Vec<Family>,
}

impl NormalizedTriple {
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Family::size).sum()
    }

    /// The generator and its block-diagonal form.
    pub fn assemble(&self) -> Result<(TauElement, SkewForm)> {
        assemble(&self.a, &self.blocks, &self.d)
    }
}

/// Block-diagonal `A` and `𝕛` from a list of blocks.
pub fn assemble(a: &Quat, blocks: &[Family], d: &Rational) -> Result<(TauElement, SkewForm)> {
    if blocks.is_empty() {
        return Err(Error::Invalid("at least one block is needed".into()));
    }
    let (mats, forms): (Vec<QMat>, Vec<QMat>) = blocks.iter().map(Family::realize).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    let tau = TauElement::new(a.clone(), QMat::block_diag(&mats), d.clone())?;
    Ok((tau, SkewForm::custom(QMat::block_diag(&forms))?))
}

/// Brings `(a, A, d)` to its representative under `a ↦ e^{2t}bab⁻¹`,
/// `A ↦ e^{2t}BAB⁻¹`, `d ↦ e^{4t}d`.
///
/// `a` is rotated onto `ℝ≥0·i` and scaled to `i`. When `a = 0` the leading
/// block parameter is scaled to 1, or else `d` to its sign. Rotating `a` onto
/// `i` needs `|a|` to be rational; otherwise the result is `IrrationalScale`.
pub fn normalize(a: &Quat, blocks: &[Family], d: &Rational) -> Result<NormalizedTriple> {
    if !a.is_imaginary() {
        return Err(Error::Invalid(format!("a = {a} must be purely imaginary")));
    }
    for b in blocks {
        b.validate()?;
    }
    let mut sorted = blocks.to_vec();
    sorted.sort();
    let norm_sq = a.norm_sq();
    let (new_a, s) = if !norm_sq.is_zero() {
        let mu = rational::sqrt_exact(&norm_sq).ok_or_else(|| Error::IrrationalScale(rational::format(&norm_sq)))?;
        (Quat::i(), mu.recip())
    } else if let Some(p) = sorted.iter().find_map(Family::parameter) {
        (Quat::zero(), p.recip())
    } else {
        // only d² scales here, so no square root is needed
        let d_new = sign_of(d);
        return Ok(NormalizedTriple { a: Quat::zero(), d: d_new, blocks: sorted });
    };
    let blocks = sorted.iter().map(|b| b.scaled(&s)).collect();
    Ok(NormalizedTriple { a: new_a, d: d * &s * &s, blocks })
}

/// The catalog tag a normalized triple belongs to, if any.
pub fn match_tag(t: &NormalizedTriple) -> Option<Tag> {
    let n = t.n();
    if n < 2 {
        return None;
    }
    let one = Rational::one();
    let all = |f: &dyn Fn(&Family) -> bool| t.blocks.iter().all(f);
    let count = |f: &dyn Fn(&Family) -> bool| t.blocks.iter().filter(|b| f(b)).count();
    if t.a.is_zero() && t.d.is_zero() && all(&|b| matches!(b, Family::J1Zero | Family::J2Zero { .. })) {
        let p = count(&|b| *b == Family::J2Zero { kappa: 1 });
        let q = count(&|b| *b == Family::J2Zero { kappa: -1 });
        return Some(if n % 2 == 0 { Tag::NsEven { n, p, q } } else { Tag::NsOdd { n, p, q } });
    }
    if t.a == Quat::i() && t.d == -&one && all(&|b| *b == Family::J1Zero) {
        return Some(Tag::M1 { n });
    }
    if t.a.is_zero() && t.d == -&one && all(&|b| matches!(b, Family::J1Bj { b, .. } if b.is_one())) {
        let p = count(&|b| matches!(b, Family::J1Bj { kappa: 1, .. }));
        return Some(Tag::M2 { n, p, q: n - p });
    }
    if t.a.is_zero() && t.d == one && all(&|b| matches!(b, Family::J1BetaPair { re, im } if re.is_one() && im.is_zero())) {
        return Some(Tag::M3 { n });
    }
    None
}

/// The normal form of a catalog generator, up to the action.
pub fn catalog_normal_form(tag: &Tag) -> Result<NormalizedTriple> {
    tag.validate()?;
    let n = tag.n();
    let rep = |f: Family, k: usize| std::iter::repeat_n(f, k);
    let (a, d, blocks): (Quat, Rational, Vec<Family>) = match *tag {
        Tag::NsEven { p, q, .. } | Tag::NsOdd { p, q, .. } => {
            let blocks = rep(Family::J2Zero { kappa: 1 }, p)
                .chain(rep(Family::J2Zero { kappa: -1 }, q))
                .chain(rep(Family::J1Zero, n - 2 * (p + q)))
                .collect();
            (Quat::zero(), Rational::zero(), blocks)
        }
        Tag::M1 { .. } => (Quat::i(), -Rational::one(), rep(Family::J1Zero, n).collect()),
        Tag::M2 { p, q, .. } => {
            let bj = |kappa| Family::J1Bj { b: Rational::one(), kappa };
            (Quat::zero(), -Rational::one(), rep(bj(1), p).chain(rep(bj(-1), q)).collect())
        }
        Tag::M3 { .. } => {
            let f = Family::J1BetaPair { re: Rational::one(), im: Rational::zero() };
            (Quat::zero(), Rational::one(), rep(f, n / 2).collect())
        }
        Tag::Torsion { .. } => return Err(Error::NotApplicable("the torsion example has no normal form".into())),
    };
    normalize(&a, &blocks, &d)
}

/// Parameter values of the scan: rationals `p/q` with `|p|, q ≤ height` in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub height: u32,
    #[serde(with = "rational::serde_rational")]
    pub lo: Rational,
    #[serde(with = "rational::serde_rational")]
    pub hi: Rational,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { height: 4, lo: Rational::from_integer((-2).into()), hi: Rational::from_integer(2.into()) }
    }
}

impl Grid {
    pub fn new(height: u32, lo: Rational, hi: Rational) -> Result<Self> {
        if height == 0 {
            return Err(Error::Invalid("grid height must be positive".into()));
        }
        if lo > hi {
            return Err(Error::Invalid("grid range is empty".into()));
        }
        Ok(Grid { height, lo, hi })
    }

    pub fn values(&self) -> Vec<Rational> {
        let h = i64::from(self.height);
        let set: BTreeSet<Rational> = (1..=h)
            .flat_map(|q| (-h..=h).map(move |p| Rational::new(p.into(), q.into())))
            .filter(|v| *v >= self.lo && *v <= self.hi)
            .collect();
        set.into_iter().collect()
    }
}

/// A normalized survivor and the catalog tag it matched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassOutcome {
    /// A catalog tag, or `"unmatched"`.
    pub tag: String,
    pub normalized: NormalizedTriple,
    /// Grid points that normalized to this class.
    pub witnesses: usize,
}

impl ClassOutcome {
    pub fn is_matched(&self) -> bool {
        self.tag != "unmatched"
    }
}

/// A grid point where a block outside the size bound admitted a solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedHit {
    pub family: Family,
    pub a: Quat,
    #[serde(with = "rational::serde_rational")]
    pub d: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub n: usize,
    pub grid: Grid,
    pub outcomes: Vec<ClassOutcome>,
    pub unmatched: Vec<ClassOutcome>,
    /// Larger Jordan blocks that admitted a grid point (expected empty).
    pub excluded_survivors: Vec<ExcludedHit>,
}

impl ClassifyReport {
    pub fn tags(&self) -> Vec<String> {
        self.outcomes.iter().map(|o| o.tag.clone()).collect()
    }
}

/// `R(μi, d) = (d + μ²)·I + μ·M₁ + M₀`, split once per block so the scan can
/// test each grid point entry by entry.
struct SplitResidual {
    family: Family,
    m1: linalg::Matrix,
    m0: linalg::Matrix,
}

impl SplitResidual {
    fn new(family: Family) -> Result<Self> {
        let m0 = block_residual(&family, &Quat::zero(), &Rational::zero())?;
        let ri = block_residual(&family, &Quat::i(), &Rational::zero())?;
        let mut m1 = linalg::mat_sub(&ri, &m0);
        for (k, row) in m1.iter_mut().enumerate() {
            row[k] -= Rational::one();
        }
        Ok(SplitResidual { family, m1, m0 })
    }

    fn vanishes(&self, mu: &Rational, d: &Rational) -> bool {
        let diag = d + mu * mu;
        self.m0.iter().zip(&self.m1).enumerate().all(|(r, (row0, row1))| {
            row0.iter().zip(row1).enumerate().all(|(c, (e0, e1))| {
                let mut v = e0 + mu * e1;
                if r == c {
                    v += &diag;
                }
                v.is_zero()
            })
        })
    }
}

/// Every block of `kind` with parameters on the grid.
pub fn grid_families(kind: FamilyKind, values: &[Rational]) -> Vec<Family> {
    let pos: Vec<&Rational> = values.iter().filter(|v| v.is_positive()).collect();
    let nonneg: Vec<&Rational> = values.iter().filter(|v| !v.is_negative()).collect();
    let signs = [1i8, -1];
    match kind {
        FamilyKind::J1Zero => vec![Family::J1Zero],
        FamilyKind::J3Zero => vec![Family::J3Zero],
        FamilyKind::J2Zero => signs.iter().map(|&kappa| Family::J2Zero { kappa }).collect(),
        FamilyKind::J1Bj | FamilyKind::J2Bj => pos
            .iter()
            .flat_map(|b| {
                signs.iter().map(move |&kappa| {
                    if kind == FamilyKind::J1Bj {
                        Family::J1Bj { b: (*b).clone(), kappa }
                    } else {
                        Family::J2Bj { b: (*b).clone(), kappa }
                    }
                })
            })
            .collect(),
        FamilyKind::J1BetaPair | FamilyKind::J2BetaPair => pos
            .iter()
            .flat_map(|re| {
                nonneg.iter().map(move |im| {
                    let (re, im) = ((*re).clone(), (*im).clone());
                    if kind == FamilyKind::J1BetaPair {
                        Family::J1BetaPair { re, im }
                    } else {
                        Family::J2BetaPair { re, im }
                    }
                })
            })
            .collect(),
    }
}

/// Multisets of admissible kinds whose sizes add up to `n`, each as a sorted list.
pub fn kind_multisets(n: usize) -> Vec<Vec<FamilyKind>> {
    fn go(kinds: &[FamilyKind], n: usize, start: usize, cur: &mut Vec<FamilyKind>, out: &mut Vec<Vec<FamilyKind>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, k) in kinds.iter().enumerate().skip(start) {
            if k.size() <= n {
                cur.push(*k);
                go(kinds, n - k.size(), i, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&FamilyKind::ADMISSIBLE, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Multisets of size `k` drawn from `items`.
fn multichoose<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in multichoose(&items[i..], k - 1) {
            rest.insert(0, x.clone());
            out.push(rest);
        }
    }
    out
}

/// Enumerates block multisets for `A ∈ so*(2n)`, keeps the grid points where
/// every block admits the same `(a, d)`, normalizes them and matches each
/// class against the catalog.
pub fn classify_scan(n: usize, grid: &Grid) -> Result<ClassifyReport> {
    if n < 2 {
        return Err(Error::Constraint(format!("n must be at least 2, got {n}")));
    }
    let values = grid.values();
    let mus: Vec<Rational> = values.iter().filter(|v| !v.is_negative()).cloned().collect();
    let points: Vec<(Rational, Rational)> =
        mus.iter().flat_map(|mu| values.iter().map(move |d| (mu.clone(), d.clone()))).collect();
    let multisets = kind_multisets(n);
    let all_kinds: Vec<FamilyKind> = FamilyKind::ADMISSIBLE.iter().chain(FamilyKind::EXCLUDED.iter()).copied().collect();
    let candidates: BTreeMap<FamilyKind, Vec<SplitResidual>> = all_kinds
        .iter()
        .map(|&k| Ok((k, grid_families(k, &values).into_iter().map(SplitResidual::new).collect::<Result<_>>()?)))
        .collect::<Result<_>>()?;

    let per_point: Vec<(Vec<NormalizedTriple>, Vec<ExcludedHit>)> = points
        .par_iter()
        .map(|(mu, d)| -> Result<_> {
            let a = Quat::i().scale(mu);
            let survivors: BTreeMap<FamilyKind, Vec<Family>> = candidates
                .iter()
                .map(|(k, fs)| (*k, fs.iter().filter(|f| f.vanishes(mu, d)).map(|f| f.family.clone()).collect()))
                .collect();
            let excluded = FamilyKind::EXCLUDED
                .iter()
                .flat_map(|k| survivors[k].iter())
                .map(|f| ExcludedHit { family: f.clone(), a: a.clone(), d: d.clone() })
                .collect();
            let mut triples = Vec::new();
            for ms in &multisets {
                let mut counts: BTreeMap<FamilyKind, usize> = BTreeMap::new();
                for k in ms {
                    *counts.entry(*k).or_default() += 1;
                }
                // blocks glue exactly when each one admits the shared (a, d)
                let mut combos: Vec<Vec<Family>> = vec![Vec::new()];
                for (k, c) in &counts {
                    let choices = multichoose(&survivors[k], *c);
                    combos = combos
                        .iter()
                        .flat_map(|pre| {
                            choices.iter().map(move |ch| {
                                let mut v = pre.clone();
                                v.extend(ch.iter().cloned());
                                v
                            })
                        })
                        .collect();
                    if combos.is_empty() {
                        break;
                    }
                }
                for blocks in combos {
                    triples.push(normalize(&a, &blocks, d)?);
                }
            }
            Ok((triples, excluded))
        })
        .collect::<Result<_>>()?;

    let mut classes: BTreeMap<NormalizedTriple, usize> = BTreeMap::new();
    let mut excluded_survivors = Vec::new();
    for (triples, excl) in per_point {
        for t in triples {
            *classes.entry(t).or_default() += 1;
        }
        excluded_survivors.extend(excl);
    }
    let (outcomes, unmatched): (Vec<ClassOutcome>, Vec<ClassOutcome>) = classes
        .into_iter()
        .map(|(normalized, witnesses)| {
            let tag = match_tag(&normalized).map_or_else(|| "unmatched".to_string(), |t| t.to_string());
            ClassOutcome { tag, normalized, witnesses }
        })
        .partition(ClassOutcome::is_matched);
    Ok(ClassifyReport { n, grid: grid.clone(), outcomes, unmatched, excluded_survivors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn normalize_examples() {
        let t = normalize(&Quat::k().scale(&rat(3)), &[Family::J1Zero], &rat(-9)).unwrap();
        assert_eq!((t.a, t.d), (Quat::i(), rat(-1)));
        let t = normalize(&Quat::zero(), &[Family::J1Zero], &rat(0)).unwrap();
        assert_eq!((t.a, t.d), (Quat::zero(), rat(0)));
        let t = normalize(&Quat::zero(), &[Family::J1Bj { b: rat(2), kappa: 1 }], &rat(-4)).unwrap();
        assert_eq!(t.blocks, vec![Family::J1Bj { b: rat(1), kappa: 1 }]);
        assert_eq!(t.d, rat(-1));
        let t = normalize(&Quat::zero(), &[Family::J1Zero, Family::J1Zero], &frac(-7, 3)).unwrap();
        assert_eq!(t.d, rat(-1));
        assert!(matches!(normalize(&(Quat::i().scale(&rat(2)) + Quat::j()), &[], &rat(0)), Err(Error::IrrationalScale(_))));
    }

    #[test]
    fn split_residual_agrees_with_direct_evaluation() {
        let fams = [
            Family::J1Zero,
            Family::J2Zero { kappa: -1 },
            Family::J1Bj { b: frac(1, 2), kappa: 1 },
            Family::J1BetaPair { re: rat(1), im: frac(2, 3) },
            Family::J3Zero,
        ];
        for f in fams {
            let split = SplitResidual::new(f.clone()).unwrap();
            for mu in [rat(0), frac(1, 2), rat(2)] {
                for d in [rat(-1), rat(0), frac(1, 4)] {
                    let direct = block_residual(&f, &Quat::i().scale(&mu), &d).unwrap();
                    let mut rebuilt = linalg::mat_add(&split.m0, &linalg::mat_scale(&split.m1, &mu));
                    for (k, row) in rebuilt.iter_mut().enumerate() {
                        row[k] += &d + &mu * &mu;
                    }
                    assert_eq!(direct, rebuilt);
                    assert_eq!(split.vanishes(&mu, &d), linalg::is_zero(&linalg::flatten(&direct)));
                }
            }
        }
    }

    #[test]
    fn grid_default_has_nineteen_values() {
        let v = Grid::default().values();
        assert_eq!(v.len(), 19);
        assert_eq!(v.first(), Some(&rat(-2)));
        assert!(v.contains(&frac(4, 3)) && !v.contains(&frac(5, 4)));
    }

    #[test]
    fn multisets_for_small_n() {
        assert_eq!(kind_multisets(1), vec![vec![FamilyKind::J1Zero], vec![FamilyKind::J1Bj]]);
        // {00, 0b, bb, J2, β}
        assert_eq!(kind_multisets(2).len(), 5);
        assert_eq!(multichoose(&[1, 2, 3], 2).len(), 6);
    }

    #[test]
    fn catalog_forms_match_their_tags() {
        for tag in crate::catalog::all_tags(5).into_iter().filter(|t| !matches!(t, Tag::Torsion { .. })) {
            let t = catalog_normal_form(&tag).unwrap();
            assert_eq!(match_tag(&t), Some(tag), "{tag}");
        }
    }
}
