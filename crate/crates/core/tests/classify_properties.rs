use proptest::prelude::*;
use rayon::prelude::*;
use qsh_tila::catalog::all_tags;
use qsh_tila::classify::{
    assemble, block_residual, catalog_normal_form, classify_scan, grid_families, kind_multisets, match_tag, normalize,
    ClassifyReport, Family, FamilyKind, Grid,
};
use qsh_tila::quatlin::Quat;
use qsh_tila::rational::{frac, rat, Rational};
use qsh_tila::subspace::linalg;
use qsh_tila::tila::symtest;

fn vanishes(f: &Family, a: &Quat, d: &Rational) -> bool {
    linalg::is_zero_matrix(&block_residual(f, a, d).unwrap())
}

/// Rational unit quaternions from Pythagorean quadruples.
fn unit_quats() -> Vec<Quat> {
    let q = |w, x, y, z, n| Quat::new(frac(w, n), frac(x, n), frac(y, n), frac(z, n));
    vec![q(1, 0, 0, 0, 1), q(1, 2, 2, 4, 5), q(0, 2, 3, 6, 7), q(2, 3, 6, 0, 7), q(1, 4, 8, 0, 9), q(-4, 1, 8, 0, 9)]
}

#[test]
fn closed_form_solutions_agree_with_the_grid() {
    let values = Grid::default().values();
    // larger blocks only on a few parameter values; the scan covers their full grid
    let coarse = [frac(1, 2), rat(1), rat(2), rat(0)];
    let families: Vec<Family> = FamilyKind::ADMISSIBLE
        .iter()
        .flat_map(|k| grid_families(*k, &values))
        .chain(FamilyKind::EXCLUDED.iter().flat_map(|k| grid_families(*k, &coarse)))
        .collect();
    families.par_iter().for_each(|f| {
        for mu in values.iter().filter(|v| **v >= rat(0)) {
            for d in &values {
                let a = Quat::i().scale(mu);
                assert_eq!(vanishes(f, &a, d), f.admits_closed_form(mu, d), "{f} mu={mu} d={d}");
            }
        }
    });
}

#[test]
fn assembled_symtest_iff_every_block_vanishes() {
    // parameters restricted to a few scales; (mu, d) run over the whole grid
    let values = Grid::default().values();
    let params = [frac(1, 2), rat(1), rat(2)];
    let per_kind = |k: FamilyKind| -> Vec<Family> {
        match k {
            FamilyKind::J1Bj => params.iter().flat_map(|b| [1, -1].map(|kappa| Family::J1Bj { b: b.clone(), kappa })).collect(),
            FamilyKind::J1BetaPair => params
                .iter()
                .flat_map(|re| [rat(0), rat(1)].map(|im| Family::J1BetaPair { re: re.clone(), im }))
                .collect(),
            k => grid_families(k, &values),
        }
    };
    let mut checked = 0;
    for n in 2..=3 {
        for ms in kind_multisets(n) {
            let mut combos: Vec<Vec<Family>> = vec![Vec::new()];
            for k in &ms {
                combos = combos
                    .iter()
                    .flat_map(|pre| {
                        per_kind(*k).into_iter().map(move |f| {
                            let mut v = pre.clone();
                            v.push(f);
                            v
                        })
                    })
                    .collect();
            }
            for blocks in combos.iter().step_by(3) {
                for mu in values.iter().filter(|v| **v >= rat(0)).step_by(2) {
                    for d in values.iter().step_by(2) {
                        let a = Quat::i().scale(mu);
                        let (tau, form) = assemble(&a, blocks, d).unwrap();
                        assert!(tau.is_member(&form).unwrap());
                        let whole = symtest(&tau).unwrap().pass;
                        let each = blocks.iter().all(|b| vanishes(b, &a, d));
                        assert_eq!(whole, each, "{blocks:?} mu={mu} d={d}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn catalog_normal_forms_land_in_their_own_class() {
    let r2 = classify_scan(2, &Grid::default()).unwrap();
    let r3 = classify_scan(3, &Grid::default()).unwrap();
    for tag in all_tags(3) {
        let nf = catalog_normal_form(&tag).unwrap();
        let report = if tag.n() == 2 { &r2 } else { &r3 };
        let class = report.outcomes.iter().find(|o| o.normalized == nf);
        assert_eq!(class.map(|o| o.tag.clone()), Some(tag.to_string()));
    }
    for r in [&r2, &r3] {
        assert!(r.unmatched.is_empty());
        assert!(r.excluded_survivors.is_empty());
    }
}

#[test]
fn scan_is_deterministic_and_round_trips() {
    let a = classify_scan(2, &Grid::default()).unwrap();
    let b = classify_scan(2, &Grid::default()).unwrap();
    let sa = serde_json::to_string(&a).unwrap();
    assert_eq!(sa, serde_json::to_string(&b).unwrap());
    let back: ClassifyReport = serde_json::from_str(&sa).unwrap();
    assert_eq!(back, a);
}

#[test]
fn scan_rejects_small_n_and_narrow_grids_still_match() {
    assert!(classify_scan(1, &Grid::default()).is_err());
    let g = Grid::new(2, rat(-1), rat(1)).unwrap();
    let r = classify_scan(2, &g).unwrap();
    assert_eq!(r.outcomes.len(), 8);
    assert!(Grid::new(2, rat(1), rat(-1)).is_err());
}

fn admissible_family() -> impl Strategy<Value = Family> {
    let pos = (1i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q));
    let nonneg = (0i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q));
    let kappa = prop_oneof![Just(1i8), Just(-1i8)];
    prop_oneof![
        Just(Family::J1Zero),
        kappa.clone().prop_map(|kappa| Family::J2Zero { kappa }),
        (pos.clone(), kappa).prop_map(|(b, kappa)| Family::J1Bj { b, kappa }),
        (pos, nonneg).prop_map(|(re, im)| Family::J1BetaPair { re, im }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent_and_orbit_invariant(
        blocks in prop::collection::vec(admissible_family(), 1..4),
        mu in (0i64..=5, 1i64..=3),
        d in (-6i64..=6, 1i64..=3),
        s in (1i64..=5, 1i64..=5),
        b_idx in 0usize..6,
    ) {
        let mu = frac(mu.0, mu.1);
        let d = frac(d.0, d.1);
        let s = frac(s.0, s.1);
        let a = Quat::i().scale(&mu);
        let t = normalize(&a, &blocks, &d).unwrap();
        prop_assert_eq!(&normalize(&t.a, &t.blocks, &t.d).unwrap(), &t);

        // (t, b, B): a ↦ s·bab⁻¹, parameters ↦ s·parameters, d ↦ s²d; B permutes blocks
        let b = &unit_quats()[b_idx];
        let a2 = (&(b * &a) * &b.conj()).scale(&s);
        let mut moved: Vec<Family> = blocks.iter().map(|f| f.scaled(&s)).collect();
        moved.reverse();
        let t2 = normalize(&a2, &moved, &(&d * &s * &s)).unwrap();
        prop_assert_eq!(t2, t);
    }

    #[test]
    fn matched_triples_satisfy_the_generator_equation(blocks in prop::collection::vec(admissible_family(), 1..4)) {
        // any triple the matcher accepts must be a genuine solution
        for (a, d) in [(Quat::zero(), rat(0)), (Quat::i(), rat(-1)), (Quat::zero(), rat(-1)), (Quat::zero(), rat(1))] {
            let t = normalize(&a, &blocks, &d).unwrap();
            if match_tag(&t).is_some() {
                let (tau, _) = t.assemble().unwrap();
                prop_assert!(symtest(&tau).unwrap().pass);
            }
        }
    }
}
