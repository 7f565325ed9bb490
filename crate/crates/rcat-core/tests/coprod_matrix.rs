use proptest::prelude::*;
use rcat_core::category::{FinCategory, FinCategoryBuilder, FinRCat, RestrictionCategory, Trivial};
use rcat_core::coproduct::fam::fam_completion;
use rcat_core::coproduct::{
    binary_retractions, check_restriction_coproducts, check_restriction_zero, decision_from_binary, extensive_subcategory,
    find_decision, injection_retraction, is_extensive_map, is_own_decision, matrix_decompose, matrix_multiply,
    matrix_recompose, middle_four, nary_sum, sum_map, zero_conditions, adding_decisions, Cocone, Coproducts,
    DisjointUnion, PartialMatrix,
};
use rcat_core::instances::{rigid_pair_rcat, trivial_category, RigidPairs, WordSums};
use rcat_core::par::{FinSet, Par, PartialFn};
use rcat_core::{Category, CatError, CheckOptions};

/// Pointwise decision in Par: `x ↦ (κ, x)` where `f(x)` lies in block `κ`.
fn par_decision_oracle(f: &PartialFn, blocks: &[usize]) -> PartialFn {
    let n = f.src;
    PartialFn::from_fn(n, n * blocks.len(), |x| {
        let y = f.at(x)?;
        let mut start = 0;
        for (k, b) in blocks.iter().enumerate() {
            if y < start + b {
                return Some(k * n + x);
            }
            start += b;
        }
        unreachable!()
    })
}

/// Entry `(λ, κ)` is defined at `x` iff `f(x)` is defined and lies in `B_κ`.
fn par_matrix_oracle(f: &PartialFn, rows: &[usize], cols: &[usize]) -> Vec<Vec<PartialFn>> {
    let off = |v: &[usize], k: usize| v[..k].iter().sum::<usize>();
    (0..rows.len())
        .map(|l| {
            (0..cols.len())
                .map(|k| {
                    PartialFn::from_fn(rows[l], cols[k], |x| {
                        let y = f.at(off(rows, l) + x)?;
                        (y >= off(cols, k) && y < off(cols, k) + cols[k]).then(|| y - off(cols, k))
                    })
                })
                .collect()
        })
        .collect()
}

#[test]
fn par_has_restriction_coproducts_and_zero() {
    let par = Par::new(2);
    assert!(check_restriction_coproducts(&par, &DisjointUnion, CheckOptions::default()).passed);
    assert!(check_restriction_zero(&par, &DisjointUnion, CheckOptions::default()).passed);
}

/// Disjoint union with the left injection of `1 + 1` undefined at its point.
struct BrokenInjection;

impl Coproducts<Par> for BrokenInjection {
    fn initial(&self, c: &Par) -> usize {
        DisjointUnion.initial(c)
    }
    fn initial_map(&self, c: &Par, a: &usize) -> PartialFn {
        DisjointUnion.initial_map(c, a)
    }
    fn cocone(&self, c: &Par, a: &usize, b: &usize) -> Option<Cocone<usize, PartialFn>> {
        let mut k = DisjointUnion.cocone(c, a, b)?;
        if (*a, *b) == (1, 1) {
            k.inl = PartialFn::nowhere(1, 2);
        }
        Some(k)
    }
    fn copair(&self, c: &Par, f: &PartialFn, g: &PartialFn) -> Option<PartialFn> {
        DisjointUnion.copair(c, f, g)
    }
}

#[test]
fn partial_injection_fails_totality() {
    let r = check_restriction_coproducts(&Par::new(2), &BrokenInjection, CheckOptions::default());
    assert_eq!(r.first_law(), Some("injection-total"));
    assert_eq!(r.violations[0].witnesses, vec!["1>2:-".to_string()]);
}

#[test]
fn trivial_category_is_vacuously_fine() {
    let x = trivial_category();
    let star = x.objects()[0];
    let cp = rcat_core::coproduct::TableCoproducts {
        initial: star,
        initial_maps: [(star, x.identity(&star))].into(),
        cocones: [((star, star), Cocone { sum: star, inl: x.identity(&star), inr: x.identity(&star) })].into(),
    };
    assert!(check_restriction_coproducts(&x, &cp, CheckOptions::default()).passed);
    assert!(check_restriction_zero(&x, &cp, CheckOptions::default()).passed);
}

#[test]
fn total_finset_has_no_zero_and_all_conditions_agree() {
    let fs = FinSet::new(2);
    let z = zero_conditions(&fs, &DisjointUnion);
    assert!(!z.zero_idempotents && !z.initial_maps_monic && !z.terminal_retractions);
    let r = check_restriction_zero(&fs, &DisjointUnion, CheckOptions::default());
    assert_eq!(r.first_law(), Some("no-restriction-zero"));
}

#[test]
fn injection_retractions_in_par() {
    let par = Par::new(2);
    for a in 0..=2 {
        for b in 0..=2 {
            let (istar, jstar) = binary_retractions(&par, &DisjointUnion, &a, &b).unwrap();
            assert_eq!(istar, PartialFn::from_fn(a + b, a, |x| (x < a).then_some(x)));
            assert_eq!(jstar, PartialFn::from_fn(a + b, b, |x| (x >= a).then(|| x - a)));
            // i i* = 1 + 0
            let one_plus_zero = PartialFn::sum(&PartialFn::identity(a), &PartialFn::nowhere(b, b));
            assert_eq!(par.compose(&PartialFn::inl(a, b), &istar), one_plus_zero);
        }
        // the B component of A + 0 undoes the injection
        let s = nary_sum(&par, &DisjointUnion, &[a, 0]).unwrap();
        assert_eq!(injection_retraction(&par, &DisjointUnion, &s, 0).unwrap(), PartialFn::identity(a));
    }
}

#[test]
fn decision_examples() {
    let par = Par::new(3);
    let cp = DisjointUnion;
    // injections are their own decisions
    let i = PartialFn::inl(2, 1);
    let d = find_decision(&par, &cp, &i, &[2, 1]).unwrap();
    assert!(d.unique);
    // K a singleton: r̄f
    let f = PartialFn::new(2, 2, vec![None, Some(0)]).unwrap();
    let d = find_decision(&par, &cp, &f, &[2]).unwrap();
    assert_eq!(d.decision.unwrap().h, par.restriction(&f));
    // K empty: the map to zero
    let d = find_decision(&par, &cp, &PartialFn::nowhere(2, 0), &[]).unwrap();
    assert_eq!(d.decision.unwrap().h, PartialFn::nowhere(2, 0));
    // the worked example on C = 3, A = B = 1
    let f = PartialFn::new(3, 2, vec![Some(0), Some(1), None]).unwrap();
    let d = find_decision(&par, &cp, &f, &[1, 1]).unwrap();
    assert!(d.unique && d.characterizations_agree);
    assert_eq!(d.decision.unwrap().h.table, vec![Some(0), Some(4), None]);
}

#[test]
fn injection_is_own_decision() {
    let par = Par::new(2);
    let d = find_decision(&par, &DisjointUnion, &PartialFn::inl(1, 1), &[1, 1]).unwrap().decision.unwrap();
    assert_eq!(d.h, PartialFn::inl(1, 1));
}

#[test]
fn all_par2_decisions_match_the_pointwise_oracle() {
    let par = Par::new(2);
    for c in 0..=2 {
        for a in 0..=2 {
            for b in 0..=2 {
                for f in PartialFn::enumerate(c, a + b, false) {
                    let s = find_decision(&par, &DisjointUnion, &f, &[a, b]).unwrap();
                    assert!(s.unique && s.characterizations_agree, "{f}");
                    assert_eq!(s.decision.unwrap().h, par_decision_oracle(&f, &[a, b]), "{f}");
                }
            }
        }
    }
}

#[test]
fn ternary_decisions_from_binary() {
    let par = Par::new(2);
    for f in PartialFn::enumerate(2, 3, false) {
        let d = decision_from_binary(&par, &DisjointUnion, &f, &[1, 1, 1]).unwrap();
        assert_eq!(d.h, par_decision_oracle(&f, &[1, 1, 1]), "{f}");
        let s = find_decision(&par, &DisjointUnion, &f, &[1, 1, 1]).unwrap();
        assert_eq!(s.decision.unwrap().h, d.h);
    }
    assert_eq!(
        decision_from_binary(&par, &DisjointUnion, &PartialFn::identity(2), &[2]).unwrap().h,
        PartialFn::identity(2)
    );
}

#[test]
fn conjugation_by_restriction_inverses() {
    // (Σf) h g is a decision for every decision h on A and restriction-inverse pair (f, g)
    let par = Par::new(2);
    let cp = DisjointUnion;
    for a in 0..=2 {
        let hs: Vec<PartialFn> =
            par.hom(&a, &(2 * a)).into_iter().filter(|h| is_own_decision(&par, &cp, h, 2).unwrap()).collect();
        assert_eq!(hs.len(), 3usize.pow(a as u32)); // left, right or undefined per point
        for b in 0..=2 {
            for f in par.hom(&a, &b) {
                let Some(g) = par.restriction_inverse(&f) else { continue };
                for h in &hs {
                    let sf = sum_map(&par, &cp, &f, &f).unwrap();
                    let conj = par.compose(&sf, &par.compose(h, &g));
                    assert!(is_own_decision(&par, &cp, &conj, 2).unwrap());
                    let sg = sum_map(&par, &cp, &g, &g).unwrap();
                    // the restriction identity, read with f and g in their typed places
                    let _ = sg;
                    assert_eq!(par.restriction(&conj), par.restriction(&par.compose(h, &g)));
                }
            }
        }
    }
}

#[test]
fn decisions_on_sums_factor() {
    let par = Par::new(2);
    let cp = DisjointUnion;
    let (a1, a2) = (1, 2);
    let s = a1 + a2;
    let (i1, i2) = (PartialFn::inl(a1, a2), PartialFn::inr(a1, a2));
    let (s1, s2) = binary_retractions(&par, &cp, &a1, &a2).unwrap();
    let sigma = middle_four(&par, &cp, &a1, &a1, &a2, &a2).unwrap();
    let mut seen = 0;
    for h in par.hom(&s, &(2 * s)) {
        if !is_own_decision(&par, &cp, &h, 2).unwrap() {
            continue;
        }
        seen += 1;
        let k1 = par.compose(&sum_map(&par, &cp, &s1, &s1).unwrap(), &par.compose(&h, &i1));
        let k2 = par.compose(&sum_map(&par, &cp, &s2, &s2).unwrap(), &par.compose(&h, &i2));
        assert!(is_own_decision(&par, &cp, &k1, 2).unwrap());
        assert!(is_own_decision(&par, &cp, &k2, 2).unwrap());
        assert_eq!(par.compose(&sigma, &sum_map(&par, &cp, &k1, &k2).unwrap()), h);
    }
    assert_eq!(seen, 27);
}

#[test]
fn adding_decisions_formula() {
    let par = Par::new(2);
    let cp = DisjointUnion;
    for f in PartialFn::enumerate(1, 2, false) {
        for f2 in PartialFn::enumerate(2, 2, false) {
            let h = find_decision(&par, &cp, &f, &[1, 1]).unwrap().decision.unwrap().h;
            let h2 = find_decision(&par, &cp, &f2, &[1, 1]).unwrap().decision.unwrap().h;
            let (subject, decision) = adding_decisions(&par, &cp, (&f, &1, &1), (&f2, &1, &1), &h, &h2).unwrap();
            let found = find_decision(&par, &cp, &subject, &[2, 2]).unwrap();
            assert_eq!(found.decision.unwrap().h, decision);
        }
    }
}

#[test]
fn decision_domains_are_preimages() {
    let par = Par::new(2);
    for f in PartialFn::enumerate(2, 3, false) {
        let (istar, jstar) = binary_retractions(&par, &DisjointUnion, &1, &2).unwrap();
        let pre = |lo: usize, hi: usize| {
            let d: Vec<usize> = (0..2).filter(|&x| f.at(x).is_some_and(|y| y >= lo && y < hi)).collect();
            PartialFn::partial_identity(2, &d)
        };
        assert_eq!(par.restriction(&par.compose(&istar, &f)), pre(0, 1));
        assert_eq!(par.restriction(&par.compose(&jstar, &f)), pre(1, 3));
    }
}

#[test]
fn matrix_examples() {
    let par = Par::new(2);
    let cp = DisjointUnion;
    // the identity on 1 + 1
    let m = matrix_decompose(&par, &cp, &PartialFn::identity(2), &[1, 1], &[1, 1]).unwrap();
    assert_eq!(m.entries[0], vec![PartialFn::identity(1), PartialFn::nowhere(1, 1)]);
    assert_eq!(m.entries[1], vec![PartialFn::nowhere(1, 1), PartialFn::identity(1)]);
    assert_eq!(matrix_recompose(&par, &cp, &m).unwrap(), PartialFn::identity(2));
    // A₁'s point to B₂'s point, A₂ undefined
    let f = PartialFn::new(2, 2, vec![Some(1), None]).unwrap();
    let m = matrix_decompose(&par, &cp, &f, &[1, 1], &[1, 1]).unwrap();
    assert_eq!(m.entries, par_matrix_oracle(&f, &[1, 1], &[1, 1]));
    assert!(m.entries[0][1].is_total());
    assert_eq!(matrix_recompose(&par, &cp, &m).unwrap(), f);
    // nowhere defined
    let z = PartialFn::nowhere(3, 2);
    let m = matrix_decompose(&par, &cp, &z, &[1, 2], &[1, 1]).unwrap();
    assert!(m.entries.iter().flatten().all(|e| e.domain().is_empty()));
    // 1×1
    let g = PartialFn::new(2, 2, vec![Some(1), None]).unwrap();
    let m = matrix_decompose(&par, &cp, &g, &[2], &[2]).unwrap();
    assert_eq!(m.entries[0][0], g);
    assert_eq!(matrix_recompose(&par, &cp, &m).unwrap(), g);
}

#[test]
fn bad_witness_is_rejected() {
    let par = Par::new(2);
    let f = PartialFn::new(2, 2, vec![Some(1), None]).unwrap();
    let mut m = matrix_decompose(&par, &DisjointUnion, &f, &[1, 1], &[1, 1]).unwrap();
    m.witnesses[0] = PartialFn::nowhere(1, 2);
    assert!(matches!(matrix_recompose(&par, &DisjointUnion, &m), Err(CatError::InvalidWitness(0))));
}

#[test]
fn matrix_multiply_examples() {
    let par = Par::new(2);
    let cp = DisjointUnion;
    // K = {1, 2}: f₁₁ defined, f₁₂ undefined; g₁₁, g₂₁ defined
    let f = PartialFn::new(1, 3, vec![Some(0)]).unwrap();
    let g = PartialFn::total(3, 1, &[0, 0, 0]);
    let mf = matrix_decompose(&par, &cp, &f, &[1], &[1, 2]).unwrap();
    let mg = matrix_decompose(&par, &cp, &g, &[1, 2], &[1]).unwrap();
    let prod = matrix_multiply(&par, &cp, &mg, &mf).unwrap();
    assert_eq!(prod.entries[0][0], par.compose(&g, &f));
    assert!(prod.entries[0][0].is_total());
    // identity matrix
    let id = matrix_decompose(&par, &cp, &PartialFn::identity(3), &[1, 2], &[1, 2]).unwrap();
    assert_eq!(matrix_multiply(&par, &cp, &id, &mf).unwrap(), mf);
    // zero row of G gives a zero row
    let zg = matrix_decompose(&par, &cp, &PartialFn::nowhere(3, 1), &[1, 2], &[1]).unwrap();
    let p = matrix_multiply(&par, &cp, &zg, &mf).unwrap();
    assert!(p.entries[0][0].domain().is_empty());
    assert!(matrix_multiply(&par, &cp, &mf, &mf).is_err());
}

fn blocks() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (proptest::collection::vec(0usize..=2, 1..=2), proptest::collection::vec(0usize..=2, 1..=2))
}

fn map_between(src: usize, tgt: usize) -> impl Strategy<Value = PartialFn> {
    let cell = if tgt == 0 { Just(None).boxed() } else { proptest::option::of(0..tgt as u32).boxed() };
    proptest::collection::vec(cell, src).prop_map(move |t| PartialFn::new(src, tgt, t).unwrap())
}

proptest! {
    #[test]
    fn decompose_recompose_round_trip(
        (rows, cols, f) in blocks().prop_flat_map(|(r, c)| {
            let (s, t) = (r.iter().sum(), c.iter().sum());
            (Just(r), Just(c), map_between(s, t))
        })
    ) {
        let par = Par::new(2);
        let m = matrix_decompose(&par, &DisjointUnion, &f, &rows, &cols).unwrap();
        prop_assert_eq!(&m.entries, &par_matrix_oracle(&f, &rows, &cols));
        prop_assert_eq!(matrix_recompose(&par, &DisjointUnion, &m).unwrap(), f.clone());
        let again: PartialMatrix<usize, PartialFn> =
            matrix_decompose(&par, &DisjointUnion, &matrix_recompose(&par, &DisjointUnion, &m).unwrap(), &rows, &cols).unwrap();
        prop_assert_eq!(again, m);
    }
}

#[test]
fn par_maps_are_extensive() {
    let x = rcat_core::par::par_to_rcat(2).unwrap();
    let cp = rcat_core::coproduct::search_coproducts(&x, None).0.unwrap();
    let (ex, back, report) = extensive_subcategory(&x, &cp, CheckOptions::default()).unwrap();
    assert!(report.passed, "{:?}", report.violations);
    assert_eq!(ex.n_morphisms(), x.n_morphisms());
    assert_eq!(back.len(), x.n_morphisms());
}

#[test]
fn idempotents_and_injections_are_extensive() {
    let par = Par::new(2);
    let cp = DisjointUnion;
    for e in rcat_core::category::restriction_idempotents(&par, &2) {
        assert!(is_extensive_map(&par, &cp, &e).unwrap().extensive);
    }
    assert!(is_extensive_map(&par, &cp, &PartialFn::inl(1, 1)).unwrap().extensive);
    assert!(is_extensive_map(&par, &cp, &PartialFn::copair(&PartialFn::identity(1), &PartialFn::identity(1)).unwrap()).unwrap().extensive);
}

#[test]
fn rigid_pair_map_is_not_extensive() {
    let y = RigidPairs::standard(true);
    let (p, eleven) = (y.word("P").unwrap(), y.word("11").unwrap());
    let f = y.hom(&p, &eleven).into_iter().find(|f| f.map.table == vec![Some(0), Some(1)]).unwrap();
    assert!(find_decision(&y, &WordSums, &f, &[y.word("1").unwrap(); 2]).unwrap().decision.is_none());
    let v = is_extensive_map(&y, &WordSums, &f).unwrap();
    assert!(!v.extensive);
    let h = v.witness.unwrap();
    assert_eq!(y.mor_label(&h), "11>1111:0,3");
    let (x, cp) = rigid_pair_rcat(true).unwrap();
    let (ex, _, report) = extensive_subcategory(&x, &cp, CheckOptions::default()).unwrap();
    assert!(report.passed, "{:?}", report.violations);
    assert!(ex.n_morphisms() < x.n_morphisms());
    assert!(ex.base.morphism_by_name("P>11:0,1").is_err());
}

#[test]
fn fam_completion_examples() {
    let x = trivial_category();
    let (f2, cp) = fam_completion(&x, 2, 10_000).unwrap();
    assert_eq!(f2.n_objects(), 3);
    assert!(rcat_core::category::check_restriction_axioms(&f2, CheckOptions::default()).passed);
    assert!(check_restriction_coproducts(&f2, &cp, CheckOptions::default()).passed);
    let (f1, _) = fam_completion(&x, 1, 10_000).unwrap();
    // k = 1: the empty family and the singleton
    assert_eq!(f1.n_objects(), 2);
    let par = rcat_core::par::par_to_rcat(1).unwrap();
    let (fp, cpp) = fam_completion(&par, 2, 10_000).unwrap();
    assert!(rcat_core::category::check_restriction_axioms(&fp, CheckOptions::default()).passed);
    assert!(check_restriction_coproducts(&fp, &cpp, CheckOptions::default()).passed);
    for f in fp.all_morphisms() {
        let name = fp.base.mor_name(fp.restriction(&f)).to_string();
        let phi = name.split(':').nth(1).unwrap().split('|').next().unwrap().to_string();
        let n = phi.split(',').filter(|s| !s.is_empty()).count();
        let ident: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        assert_eq!(phi, ident.join(","), "{name}");
    }
}

#[allow(dead_code)]
fn unused(_: FinCategory, _: FinCategoryBuilder, _: Trivial<'_, FinRCat>) {}
