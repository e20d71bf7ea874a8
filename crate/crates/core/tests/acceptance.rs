//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsh_tila::catalog::{all_tags, make_case, torsion_example, Tag};
use qsh_tila::classify::{classify_scan, Grid};
use qsh_tila::error::Error;
use qsh_tila::quatlin::{QMat, Quat};
use qsh_tila::rational::rat;
use qsh_tila::sostar::{ambient_membership, grade_project, graded_basis, hn_basis, sl2_triple, SkewForm};
use qsh_tila::subspace::linalg;
use qsh_tila::tila::{
    build_m, build_tila, central_element_analysis, m_element, quaternionic_structure, symtest, verification_record,
    verify_axioms, TauElement,
};
use qsh_tila::torsion::{solvable_subalgebra_report, torsion_coefficient, LiftedComplement};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn tag(s: &str) -> Tag {
    s.parse().expect("catalog tag")
}

fn c1_example_even() -> Check {
    let case = make_case(&tag("ns-even:2,1,0")).map_err(err)?;
    let t = build_tila(&case.tau, &case.form).map_err(err)?;
    let rec = verification_record(&t, case.layout.as_ref()).map_err(err)?;
    let got = (rec.dim_g, rec.dim_m, rec.dim_l, rec.levi.radical_dim, rec.levi.semisimple_dim);
    ensure(got == (15, 8, 7, 5, 10), format!("(g, m, l, rad, ss) = {got:?}"))?;
    ensure(rec.axioms.all_pass(), format!("axiom failures {:?}", rec.axioms.failures()))?;
    ensure(rec.killing.degenerate, "ambient trace form on m is nondegenerate")?;
    Ok(format!("g=15 m=8 l=7 rad=5 ss=10, axioms pass, trace form rank {}/8", rec.killing.ambient_m_rank))
}

fn c2_examples_other() -> Check {
    let case = make_case(&tag("ns-even:2,0,1")).map_err(err)?;
    let t = build_tila(&case.tau, &case.form).map_err(err)?;
    ensure(t.dim_g() == 15, format!("ns-even:2,0,1 dim g = {}", t.dim_g()))?;
    let case = make_case(&tag("ns-odd:3,1,0")).map_err(err)?;
    let t = build_tila(&case.tau, &case.form).map_err(err)?;
    let rec = verification_record(&t, case.layout.as_ref()).map_err(err)?;
    ensure(rec.dim_m == 12, format!("ns-odd:3,1,0 dim m = {}", rec.dim_m))?;
    ensure(!rec.levi.radical_abelian, "ns-odd:3,1,0 radical is abelian")?;
    Ok(format!("ns-even:2,0,1 g=15; ns-odd:3,1,0 m=12, radical dim {} non-abelian", rec.levi.radical_dim))
}

fn c3_semisimple() -> Check {
    let mut count = 0;
    for n in 2..=4usize {
        let mut tags = vec![Tag::M1 { n }];
        tags.extend((0..=n).map(|p| Tag::M2 { n, p, q: n - p }));
        if n % 2 == 0 {
            tags.push(Tag::M3 { n });
        }
        for tg in tags {
            // dim so*(2m) = m(2m−1); dim su(p,q) = (p+q)² − 1; dim sl(m,H) = 4m² − 1
            let want = match tg {
                Tag::M1 { n } => (n + 1) * (2 * n + 1),
                Tag::M2 { p, q, .. } => (p + 2 + q) * (p + 2 + q) - 1,
                Tag::M3 { n } => 4 * (n / 2 + 1) * (n / 2 + 1) - 1,
                _ => unreachable!(),
            };
            let case = make_case(&tg).map_err(err)?;
            let t = build_tila(&case.tau, &case.form).map_err(err)?;
            let rec = verification_record(&t, None).map_err(err)?;
            ensure(rec.dim_g == want, format!("{tg}: dim g {} != {want}", rec.dim_g))?;
            ensure(rec.levi.radical_dim == 0, format!("{tg}: radical {}", rec.levi.radical_dim))?;
            ensure(rec.killing.intrinsic_rank == rec.dim_g, format!("{tg}: Killing form degenerate"))?;
            let z = central_element_analysis(&t).map_err(|e| format!("{tg}: {e}"))?;
            ensure(z.is_derivation && z.commutes_with_l && z.centralizer_is_l, format!("{tg}: Z0 checks fail"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cases: radical 0, Killing nondegenerate, Z0 with ad(Z0)|m = I"))
}

fn c4_symtest() -> Check {
    let tags: Vec<Tag> = all_tags(6);
    let mut vectors = 0;
    for tg in &tags {
        let case = make_case(tg).map_err(err)?;
        let rep = symtest(&case.tau).map_err(err)?;
        ensure(rep.pass && rep.total == 4 * tg.n(), format!("{tg}: symtest fails on {} vectors", rep.residuals.len()))?;
        let tau = case.tau.assemble(&case.form).map_err(err)?;
        for x in hn_basis(tg.n()) {
            let xt = m_element(&case.tau, &case.form, &x).map_err(err)?;
            ensure(tau.commutator(&xt).map_err(err)?.is_zero(), format!("{tg}: [X~, tau] != 0"))?;
            vectors += 1;
        }
    }
    Ok(format!("{} cases, {vectors} basis vectors, all residuals and brackets zero", tags.len()))
}

fn c5_classify() -> Check {
    let r2 = classify_scan(2, &Grid::default()).map_err(err)?;
    let got: BTreeSet<String> = r2.tags().into_iter().collect();
    let want: BTreeSet<String> = ["ns-even:2,0,0", "ns-even:2,1,0", "ns-even:2,0,1", "m1:2", "m2:2,2,0", "m2:2,1,1", "m2:2,0,2", "m3:2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(r2.outcomes.len() == 8 && got == want, format!("n=2 classes {got:?}"))?;
    ensure(r2.unmatched.is_empty(), format!("n=2 unmatched {}", r2.unmatched.len()))?;
    ensure(r2.excluded_survivors.is_empty(), "n=2 larger blocks admitted solutions")?;
    let r3 = classify_scan(3, &Grid::default()).map_err(err)?;
    ensure(r3.unmatched.is_empty(), format!("n=3 unmatched {}", r3.unmatched.len()))?;
    ensure(!r3.tags().iter().any(|t| t.starts_with("m3")), "n=3 produced an m3 class")?;
    Ok(format!("n=2: 8 classes, none unmatched; n=3: {} classes, no m3", r3.outcomes.len()))
}

fn c6_torsion() -> Check {
    let ex = torsion_example(2).map_err(err)?;
    let m = LiftedComplement::new(ex.form.clone(), ex.m_basis.clone()).map_err(err)?;
    let f = torsion_coefficient(&ex.tauhat, &m).map_err(err)?;
    let mut want = vec![rat(0); 8];
    want[0] = rat(-1);
    want[3] = rat(1);
    ensure(f.coefficients == want, format!("lambda = {:?}", f.coefficients))?;
    let t = ex.tauhat.assemble(&ex.form).map_err(err)?;
    for (x, xt) in hn_basis(2).iter().zip(&ex.m_basis) {
        let q = &x[(0, 0)];
        let coeff = (&q.z - &q.w) * rat(2);
        ensure(t.commutator(xt).map_err(err)? == t.scale(&coeff), "[tauhat, X~] != 2(x4 - x1) tauhat")?;
    }
    let sub = solvable_subalgebra_report(&ex.tauhat, &m).map_err(err)?;
    ensure(sub.dim == 9 && sub.solvable, format!("subalgebra dim {} solvable {}", sub.dim, sub.solvable))?;
    Ok("lambda = x4 - x1, [tauhat, m] = 2(x4 - x1) tauhat entrywise, 9-dim solvable".into())
}

fn c7_properties() -> Check {
    // (a) grading law on the ambient algebra
    let mut pairs = 0usize;
    for n in 2..=4usize {
        let form = if n % 2 == 0 { SkewForm::darboux_even(n) } else { SkewForm::darboux_odd(n) }.map_err(err)?;
        let gb = graded_basis(&form);
        for (i, bi) in gb.iter().enumerate() {
            for (j, bj) in gb.iter().enumerate() {
                let k = i as i32 + j as i32 - 4;
                for x in bi {
                    for y in bj {
                        let br = x.commutator(y).map_err(err)?;
                        let support = grade_project(&br, &form).map_err(err)?.support();
                        ensure(support.iter().all(|&s| s == k), format!("n={n}: [g{}, g{}] has grades {support:?}", i as i32 - 2, j as i32 - 2))?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    // (c) J_a² = −id and J₁J₂ = J₃
    for n in 2..=4usize {
        let [j1, j2, j3] = quaternionic_structure(n);
        let minus_id = linalg::mat_scale(&linalg::identity(4 * n), &rat(-1));
        for ja in [&j1, &j2, &j3] {
            ensure(linalg::mat_mul(ja, ja) == minus_id, format!("n={n}: J_a^2 != -id"))?;
        }
        ensure(linalg::mat_mul(&j1, &j2) == j3, format!("n={n}: J1 J2 != J3"))?;
    }
    // (b), (d), (e) on every constructed algebra
    let tags = all_tags(4);
    for tg in &tags {
        let case = make_case(tg).map_err(err)?;
        let t = build_tila(&case.tau, &case.form).map_err(err)?;
        let ax = verify_axioms(&t).map_err(err)?;
        ensure(ax.all_pass(), format!("{tg}: {:?}", ax.failures()))?;
    }
    Ok(format!("{pairs} homogeneous pairs graded; omega0, Q0, sigma and l checks pass on {} algebras", tags.len()))
}

fn c8_negative() -> Check {
    let tau = TauElement::new(Quat::zero(), QMat::zeros(2, 2), rat(1)).map_err(err)?;
    let rep = symtest(&tau).map_err(err)?;
    ensure(!rep.pass, "symtest passed for (0, 0, 1)")?;
    let form = SkewForm::skew_hermitian(2).map_err(err)?;
    ensure(matches!(build_m(&tau, &form), Err(Error::SymtestFailed { .. })), "build_m did not report SymtestFailed")?;

    let case = make_case(&tag("ns-even:2,1,0")).map_err(err)?;
    let t = build_tila(&case.tau, &case.form).map_err(err)?;
    let mut omega = t.omega0().clone();
    omega[0][1] += rat(1);
    let bad = t.with_omega0(omega).map_err(err)?;
    let ax = verify_axioms(&bad).map_err(err)?;
    ensure(!ax.omega_ok(), "corrupted omega0 passed")?;

    let ex = torsion_example(2).map_err(err)?;
    let mut els = ex.m_basis.clone();
    let (_, h, _) = sl2_triple(2);
    els[5] = &els[5] + &h;
    ensure(ambient_membership(&els[5], &ex.form).map_err(err)?, "perturbation left the ambient algebra")?;
    let m = LiftedComplement::new(ex.form, els).map_err(err)?;
    let res = torsion_coefficient(&ex.tauhat, &m);
    ensure(matches!(res, Err(Error::BracketOffLine { index: 5, .. })), format!("perturbed basis gave {res:?}"))?;
    Ok(format!("symtest fails, omega0 flags {:?}, bracket off-line at vector 5", ax.failures()))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, u64, fn() -> Check); 8] = [
        (1, "ns-even:2,1,0 reproduction", 5, c1_example_even),
        (2, "ns-even:2,0,1 and ns-odd:3,1,0", 10, c2_examples_other),
        (3, "semisimple realizations n<=4", 60, c3_semisimple),
        (4, "symtest exhaustiveness n<=6", 60, c4_symtest),
        (5, "desk-scale classification", 300, c5_classify),
        (6, "torsion example", 5, c6_torsion),
        (7, "property suites", 120, c7_properties),
        (8, "negative controls", 30, c8_negative),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match outcome {
            Ok(d) if !over => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget}s budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{status}] {id}. {name}: {detail} ({:.2}s)", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
