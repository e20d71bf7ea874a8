use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::build::Tila;
use crate::error::{Error, Result};
use crate::quatlin::QMat;
use crate::rational::{self, Rational};
use crate::sostar::hn_basis;
use crate::subspace::linalg::{self, Matrix, Vector};
use crate::subspace::Subspace;

/// Outcome of each structural check on a [`Tila`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub sigma_automorphism: bool,
    pub l_equals_mm: bool,
    pub no_ideal_in_l: bool,
    pub q0_quaternionic: bool,
    pub q0_l_invariant: bool,
    pub omega_skew: bool,
    pub omega_nondegenerate: bool,
    pub omega_q_hermitian: bool,
    pub omega_l_invariant: bool,
    pub omega_cocycle: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    /// The condition on `ω₀` alone.
    pub fn omega_ok(&self) -> bool {
        self.omega_skew && self.omega_nondegenerate && self.omega_q_hermitian && self.omega_l_invariant
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("sigma_automorphism", self.sigma_automorphism),
            ("l_equals_mm", self.l_equals_mm),
            ("no_ideal_in_l", self.no_ideal_in_l),
            ("q0_quaternionic", self.q0_quaternionic),
            ("q0_l_invariant", self.q0_l_invariant),
            ("omega_skew", self.omega_skew),
            ("omega_nondegenerate", self.omega_nondegenerate),
            ("omega_q_hermitian", self.omega_q_hermitian),
            ("omega_l_invariant", self.omega_l_invariant),
            ("omega_cocycle", self.omega_cocycle),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

pub fn sigma_is_automorphism(t: &Tila) -> bool {
    let s = t.sigma();
    let c = t.g.structure_constants();
    (0..t.dim_g()).all(|i| {
        (0..t.dim_g()).all(|j| {
            c[i][j].iter().enumerate().all(|(k, x)| x.is_zero() || s[i] * s[j] == s[k])
        })
    })
}

pub fn l_equals_mm(t: &Tila) -> bool {
    let m = t.m_space();
    t.g.bracket_span(&m, &m) == t.l_space()
}

/// `J_a² = −1` and `J₁J₂ = J₃ = −J₂J₁`.
pub fn q0_is_quaternionic(t: &Tila) -> bool {
    let [j1, j2, j3] = t.q0();
    let k = t.dim_m();
    let minus_id = linalg::mat_scale(&linalg::identity(k), &rational::rat(-1));
    [j1, j2, j3].iter().all(|j| linalg::mat_mul(j, j) == minus_id)
        && linalg::mat_mul(j1, j2) == *j3
        && linalg::mat_mul(j2, j1) == linalg::mat_scale(j3, &rational::rat(-1))
}

/// `[ρ(x), J_a] ∈ span(J₁, J₂, J₃)` for every `x ∈ l`.
pub fn q0_is_l_invariant(t: &Tila) -> bool {
    let k = t.dim_m();
    let q_span = Subspace::span(k * k, &t.q0().iter().map(linalg::flatten).collect::<Vec<_>>())
        .expect("flattened square matrices");
    t.rho_basis()
        .par_iter()
        .all(|r| t.q0().iter().all(|j| q_span.contains(&linalg::flatten(&linalg::mat_commutator(r, j)))))
}

fn omega_checks(t: &Tila) -> (bool, bool, bool, bool) {
    let w = t.omega0();
    let k = t.dim_m();
    let skew = linalg::is_antisymmetric(w);
    let nondeg = linalg::rank(w) == k;
    let herm = t.q0().iter().all(|j| linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(j), w), j) == *w);
    let linv = t.rho_basis().par_iter().all(|r| {
        let s = linalg::mat_add(&linalg::mat_mul(&linalg::transpose(r), w), &linalg::mat_mul(w, r));
        linalg::is_zero_matrix(&s)
    });
    (skew, nondeg, herm, linv)
}

/// `ω₀` extended by zero on `l`, tested as a Chevalley–Eilenberg 2-cocycle on
/// all basis triples.
pub fn omega_is_cocycle(t: &Tila) -> bool {
    let d = t.dim_g();
    let l = t.dim_l();
    let mut w = linalg::zero_matrix(d, d);
    for (i, row) in t.omega0().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            w[l + i][l + j] = x.clone();
        }
    }
    let c = t.g.structure_constants();
    // ω([bᵢ,bⱼ], b_k) = Σ_p c[i][j][p] w[p][k]
    let wb = |i: usize, j: usize, k: usize| -> Rational {
        let mut s = Rational::zero();
        for (p, x) in c[i][j].iter().enumerate() {
            if !x.is_zero() && !w[p][k].is_zero() {
                s += x * &w[p][k];
            }
        }
        s
    };
    (0..d).into_par_iter().all(|i| {
        (i + 1..d).all(|j| (j + 1..d).all(|k| (wb(i, j, k) + wb(j, k, i) + wb(k, i, j)).is_zero()))
    })
}

pub fn verify_axioms(t: &Tila) -> Result<AxiomReport> {
    let (omega_skew, omega_nondegenerate, omega_q_hermitian, omega_l_invariant) = omega_checks(t);
    Ok(AxiomReport {
        sigma_automorphism: sigma_is_automorphism(t),
        l_equals_mm: l_equals_mm(t),
        no_ideal_in_l: t.g.max_ideal_in(&t.l_space())?.is_zero(),
        q0_quaternionic: q0_is_quaternionic(t),
        q0_l_invariant: q0_is_l_invariant(t),
        omega_skew,
        omega_nondegenerate,
        omega_q_hermitian,
        omega_l_invariant,
        omega_cocycle: omega_is_cocycle(t),
    })
}

/// The trace form `tr_ℝ(X̃(X)·X̃(Y))` of the ambient algebra, restricted to `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceFormReport {
    #[serde(with = "rational::serde_rational_mat")]
    pub gram: Matrix,
    pub rank: usize,
    pub degenerate: bool,
    /// Whether the Gram matrix agrees with the block expansion
    /// `4·Re(F_X*𝕛Y − X*𝕛F_Y + tr(X F_Y*𝕛 − F_X Y*𝕛))`.
    pub matches_expansion: bool,
}

pub fn ambient_trace_form_on_m(t: &Tila) -> Result<TraceFormReport> {
    let tau = t.tau();
    let form = t.form();
    let jm = form.matrix();
    let basis = hn_basis(tau.n());
    let lifted: Vec<QMat> = basis.iter().map(|x| super::tau::m_element(tau, form, x)).collect::<Result<_>>()?;
    let gram: Matrix = lifted
        .par_iter()
        .map(|x| lifted.iter().map(|y| (x * y).real_trace()).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let expanded: Matrix = basis
        .iter()
        .map(|x| {
            let fx = tau.lift_map(x);
            basis
                .iter()
                .map(|y| {
                    let fy = tau.lift_map(y);
                    let scalar = &(&(&fx.conj_transpose() * jm) * y) - &(&(&x.conj_transpose() * jm) * &fy);
                    let block = &(&(x * &fy.conj_transpose()) * jm) - &(&(&fx * &y.conj_transpose()) * jm);
                    let s = scalar[(0, 0)].re() + block.real_trace().expect("square") / rational::rat(4);
                    s * rational::rat(4)
                })
                .collect()
        })
        .collect();
    let rank = linalg::rank(&gram);
    Ok(TraceFormReport { matches_expansion: expanded == gram, degenerate: rank < gram.len(), rank, gram })
}

/// The endomorphism `I` of `m` with `B_m(X, Y) = ω₀(X, IY)` and an element
/// `Z₀` with `ad(Z₀) = I ⊕ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralElement {
    #[serde(with = "rational::serde_rational_mat")]
    pub i_matrix: Matrix,
    #[serde(with = "rational::serde_rational_vec")]
    pub z0: Vector,
    pub commutes_with_l: bool,
    pub b_skew: bool,
    pub is_derivation: bool,
    pub centralizer_dim: usize,
    pub centralizer_is_l: bool,
}

pub fn central_element_analysis(t: &Tila) -> Result<CentralElement> {
    let b = t.killing_form();
    let l = t.dim_l();
    let d = t.dim_g();
    let k = t.dim_m();
    let bm: Matrix = b[l..].iter().map(|r| r[l..].to_vec()).collect();
    if linalg::rank(&bm) < k {
        return Err(Error::NotApplicable("the Killing form restricted to m is degenerate".into()));
    }
    let w_inv = linalg::inverse(t.omega0()).ok_or_else(|| Error::NotApplicable("ω₀ is degenerate".into()))?;
    let i_matrix = linalg::mat_mul(&w_inv, &bm);

    let commutes_with_l = t
        .rho_basis()
        .iter()
        .all(|r| linalg::mat_mul(r, &i_matrix) == linalg::mat_mul(&i_matrix, r));
    let b_skew = linalg::is_zero_matrix(&linalg::mat_add(
        &linalg::mat_mul(&linalg::transpose(&i_matrix), &bm),
        &linalg::mat_mul(&bm, &i_matrix),
    ));

    let mut dmat = linalg::zero_matrix(d, d);
    for (r, row) in i_matrix.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            dmat[l + r][l + c] = x.clone();
        }
    }
    let is_derivation = t.g.is_derivation(&dmat);

    // ad(Z)[p][q] = Σᵢ Zᵢ c[i][q][p] must equal D[p][q].
    let c = t.g.structure_constants();
    let mut rows = Vec::with_capacity(d * d);
    let mut rhs = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            rows.push((0..d).map(|i| c[i][q][p].clone()).collect::<Vector>());
            rhs.push(dmat[p][q].clone());
        }
    }
    let z0 = linalg::solve(&rows, &rhs, d).ok_or(Error::NoAdRealization)?;
    let cent = t.g.centralizer(&Subspace::span(d, std::slice::from_ref(&z0))?);
    Ok(CentralElement {
        i_matrix,
        centralizer_dim: cent.dim(),
        centralizer_is_l: cent == t.l_space(),
        z0,
        commutes_with_l,
        b_skew,
        is_derivation,
    })
}

/// Rough role of a labeled block in a structured matrix picture of `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockCategory {
    Semisimple,
    QuaternionicHermitian,
    Degenerate,
}

/// Labeled block positions of `(n+2)×(n+2)` matrices.
///
/// `grid[r][c]` names block `(r, c)`; an empty label marks a block that is
/// always zero. Labels starting with `X` or `S` are semisimple, `Y` or `H`
/// quaternionic Hermitian, `Z` or `R` degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLayout {
    pub sizes: Vec<usize>,
    pub grid: Vec<Vec<String>>,
}

impl BlockLayout {
    pub fn category(label: &str) -> Option<BlockCategory> {
        match label.chars().next()? {
            'X' | 'S' => Some(BlockCategory::Semisimple),
            'Y' | 'H' => Some(BlockCategory::QuaternionicHermitian),
            'Z' | 'R' => Some(BlockCategory::Degenerate),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Realified coordinates of all entries in blocks of category `cat`.
    pub fn mask(&self, cat: BlockCategory) -> Vec<usize> {
        let size = self.size();
        let offsets: Vec<usize> = self.sizes.iter().scan(0, |acc, s| { let o = *acc; *acc += s; Some(o) }).collect();
        let mut out = Vec::new();
        for (bi, row) in self.grid.iter().enumerate() {
            for (bj, label) in row.iter().enumerate() {
                if Self::category(label) != Some(cat) {
                    continue;
                }
                for r in offsets[bi]..offsets[bi] + self.sizes[bi] {
                    for c in offsets[bj]..offsets[bj] + self.sizes[bj] {
                        out.extend((0..4).map(|q| 4 * (r * size + c) + q));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviReport {
    pub killing_rank: usize,
    pub radical_dim: usize,
    pub semisimple_dim: usize,
    pub radical_abelian: bool,
    /// `dim(r_qH / t)`, when a block layout is known.
    pub r_qh_dim: Option<usize>,
    pub r_deg_dim: Option<usize>,
}

pub fn levi_structure(t: &Tila, layout: Option<&BlockLayout>) -> Result<LeviReport> {
    let b = t.killing_form();
    let rad = t.g.radical_with(b)?;
    let (r_qh_dim, r_deg_dim) = match layout {
        None => (None, None),
        Some(layout) => {
            let amb = t.lifts().first().map_or(0, Vec::len);
            let lifted: Vec<Vector> = rad.basis().iter().map(|r| t.lift(r)).collect();
            let lift = Subspace::span(amb, &lifted)?.sum(t.t_line())?;
            let part = |cat| -> Result<usize> {
                let mask = Subspace::coordinate(amb, &layout.mask(cat));
                Ok(lift.intersection(&mask)?.dim())
            };
            let qh = part(BlockCategory::QuaternionicHermitian)?;
            (Some(qh - t.t_line().dim()), Some(part(BlockCategory::Degenerate)?))
        }
    };
    Ok(LeviReport {
        killing_rank: linalg::rank(b),
        radical_dim: rad.dim(),
        semisimple_dim: t.dim_g() - rad.dim(),
        radical_abelian: t.g.is_abelian(&rad),
        r_qh_dim,
        r_deg_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingSummary {
    pub intrinsic_rank: usize,
    pub ambient_m_rank: usize,
    /// Whether the ambient trace form on `m` is degenerate.
    pub degenerate: bool,
}

/// Everything checked about one algebra, in reporting form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub dim_g: usize,
    pub dim_m: usize,
    pub dim_l: usize,
    pub tau_in_mm: bool,
    pub axioms: AxiomReport,
    pub killing: KillingSummary,
    pub levi: LeviReport,
    #[serde(rename = "Z0", with = "opt_vec")]
    pub z0: Option<Vector>,
}

impl VerificationRecord {
    pub fn all_pass(&self) -> bool {
        self.axioms.all_pass()
    }
}

mod opt_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{self, Rational};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| v.iter().map(rational::format).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|v| v.iter().map(|s| rational::parse(s).map_err(serde::de::Error::custom)).collect())
            .transpose()
    }
}

pub fn verification_record(t: &Tila, layout: Option<&BlockLayout>) -> Result<VerificationRecord> {
    let axioms = verify_axioms(t)?;
    let trace = ambient_trace_form_on_m(t)?;
    let levi = levi_structure(t, layout)?;
    let z0 = match central_element_analysis(t) {
        Ok(c) => Some(c.z0),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(VerificationRecord {
        dim_g: t.dim_g(),
        dim_m: t.dim_m(),
        dim_l: t.dim_l(),
        tau_in_mm: t.tau_in_bracket_span(),
        axioms,
        killing: KillingSummary {
            intrinsic_rank: levi.killing_rank,
            ambient_m_rank: trace.rank,
            degenerate: trace.degenerate,
        },
        levi,
        z0,
    })
}
