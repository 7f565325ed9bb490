use std::time::Instant;

use rcat_core::category::{check_restriction_axioms, restriction_idempotents, split_idempotent, TotalView};
use rcat_core::coproduct::{binary_retractions, verify_coproducts, Coproducts, DisjointUnion, TableCoproducts};
use rcat_core::instances::{trivial_category, RigidPairs, WordSums};
use rcat_core::par::{par_to_rcat, FinSet, Par, PartialFn};
use rcat_core::split::{
    check_extensive_category, chosen_pairs, is_extensive_rcat, is_pullback, parse_split_name, split_idempotents,
    split_name, total_coproducts, total_subcategory, Kr, KrCoproducts,
};
use rcat_core::{Category, CheckOptions, FinRCat, MorId, ObjId, RestrictionCategory};

fn ids(n: usize, s: &[usize]) -> PartialFn {
    PartialFn::partial_identity(n, s)
}

#[test]
fn kr_of_par2_counts() {
    let par = Par::new(2);
    let k = split_idempotents(&par, Some(&DisjointUnion), 10_000).unwrap();
    // one object per subset of each n ≤ 2
    assert_eq!(k.table.n_objects(), (0..=2).map(|n| 1usize << n).sum::<usize>());
    let src = k.object(&2, &PartialFn::identity(2)).unwrap();
    let tgt = k.object(&2, &ids(2, &[0])).unwrap();
    // partial maps {0,1} → {0}: each point undefined or sent to 0
    assert_eq!(k.table.hom(&src, &tgt).len(), 2usize.pow(2));
    assert!(check_restriction_axioms(&k.table, CheckOptions::default()).passed);
}

#[test]
fn kr_of_trivial_restriction_is_the_category() {
    let x = trivial_category();
    let k = split_idempotents(&x, None::<&TableCoproducts<ObjId, MorId>>, 100).unwrap();
    assert_eq!(k.table.n_objects(), 1);
    assert_eq!(k.table.n_morphisms(), 1);
    let fs = FinSet::new(2);
    let k = split_idempotents(&fs, Some(&DisjointUnion), 1000).unwrap();
    assert_eq!(k.table.n_objects(), 3);
    assert_eq!(k.table.n_morphisms(), fs.morphism_count());
}

#[test]
fn restriction_idempotents_split_canonically_in_kr() {
    let par = Par::new(2);
    let kr = Kr::new(&par);
    for a in kr.objects() {
        for d in restriction_idempotents(&kr, &a) {
            let s = split_idempotent(&kr, &d).unwrap();
            assert_eq!(s.object.idem, d.map);
            assert_eq!(kr.compose(&s.mono, &s.retraction), d);
            assert_eq!(kr.compose(&s.retraction, &s.mono), kr.identity(&s.object));
        }
    }
}

#[test]
fn inherited_coproducts_in_kr() {
    let par = Par::new(2);
    let kr = Kr::new(&par);
    let cp = KrCoproducts(&DisjointUnion);
    let a = kr.objects()[2].clone();
    let b = kr.objects()[4].clone();
    let k = cp.cocone(&kr, &a, &b).unwrap();
    assert_eq!(k.sum.base, a.base + b.base);
    assert_eq!(k.sum.idem, PartialFn::sum(&a.idem, &b.idem));
    let r = rcat_core::coproduct::check_restriction_coproducts(&kr, &cp, CheckOptions::default());
    assert!(r.passed, "{:?}", r.violations);
    assert!(rcat_core::coproduct::check_restriction_zero(&kr, &cp, CheckOptions::default()).passed);
}

#[test]
fn total_subcategory_examples() {
    let x = par_to_rcat(2).unwrap();
    let t = total_subcategory(&x).unwrap();
    let two = t.object_by_name("2").unwrap();
    assert_eq!(t.hom(&two, &two).len(), 4);
    let triv = FinRCat::trivial(x.base.clone());
    assert_eq!(total_subcategory(&triv).unwrap().n_morphisms(), x.n_morphisms());
    let par = Par::new(3);
    let k = split_idempotents(&par, Some(&DisjointUnion), 10_000).unwrap();
    let tk = total_subcategory(&k.table).unwrap();
    let src = k.object(&2, &PartialFn::identity(2)).unwrap();
    let tgt = k.object(&3, &ids(3, &[0, 2])).unwrap();
    // functions {0,1} → {0,2}
    assert_eq!(tk.hom(&src, &tgt).len(), 4);
}

#[test]
fn split_names_round_trip() {
    for (o, e) in [("2", "2>2:0,-"), ("(a|b)", "x:y>z"), ("", "")] {
        let n = split_name(o, e);
        assert_eq!(parse_split_name(&n), Some((o.to_string(), e.to_string())));
    }
    let par = Par::new(1);
    let k = split_idempotents(&par, Some(&DisjointUnion), 1000).unwrap();
    let twice = split_idempotents(&k.table, k.coproducts.as_ref(), 10_000).unwrap();
    for a in twice.table.objects() {
        let (inner, _) = parse_split_name(twice.table.base.obj_name(a)).unwrap();
        assert!(k.table.base.object_by_name(&inner).is_ok());
    }
}

#[test]
fn extensive_rcat_verdicts() {
    assert!(is_extensive_rcat(&Par::new(2), &DisjointUnion, CheckOptions::default()).passed);
    let r = is_extensive_rcat(&FinSet::new(2), &DisjointUnion, CheckOptions::default());
    assert_eq!(r.first_law(), Some("no-restriction-zero"));
    let x = trivial_category();
    let star = x.objects()[0];
    let one = x.identity(&star);
    let cp = TableCoproducts {
        initial: star,
        initial_maps: [(star, one)].into(),
        cocones: [((star, star), rcat_core::coproduct::Cocone { sum: star, inl: one, inr: one })].into(),
    };
    assert!(is_extensive_rcat(&x, &cp, CheckOptions::default()).passed);
    let y = RigidPairs::standard(false);
    let r = is_extensive_rcat(&y, &WordSums, CheckOptions::default());
    assert_eq!(r.first_law(), Some("decision-missing"));
    assert_eq!(r.violations[0].witnesses, vec!["P>11:0,1".to_string()]);
}

fn chosen(
    cp: &TableCoproducts<ObjId, MorId>,
) -> impl Fn(&ObjId, &ObjId) -> Option<rcat_core::coproduct::Cocone<ObjId, MorId>> + '_ {
    move |a, b| cp.cocones.get(&(*a, *b)).cloned()
}

#[test]
fn total_kr_par2_is_extensive() {
    let t0 = Instant::now();
    let par = Par::new(2);
    let k = split_idempotents(&par, Some(&DisjointUnion), 10_000).unwrap();
    let total = total_subcategory(&k.table).unwrap();
    let cp = total_coproducts(&k.table, &total, k.coproducts.as_ref().unwrap()).unwrap();
    let pick = chosen(&cp);
    let r = check_extensive_category(&total, &chosen_pairs(&cp), Some(&pick), CheckOptions::default());
    assert!(r.passed, "{:?}", r.violations);
    assert!(t0.elapsed().as_secs() < 30);
}

#[test]
fn finset_fragment_missing_a_sum_fails() {
    let x = FinRCat::materialize_default(&FinSet::new(2)).unwrap().0;
    let c = x.base;
    let (one, two) = (c.object_by_name("1").unwrap(), c.object_by_name("2").unwrap());
    let r = check_extensive_category(&c, &[(one, one), (one, two)], None, CheckOptions::default());
    assert_eq!(r.first_law(), Some("coproduct-missing"));
    assert_eq!(r.violations[0].witnesses, vec!["1".to_string(), "2".to_string()]);
}

#[test]
fn one_object_category_is_extensive() {
    let x = trivial_category();
    let star = x.objects()[0];
    assert!(check_extensive_category(&x.base, &[(star, star)], None, CheckOptions::default()).passed);
}

#[test]
fn decision_splittings_are_pullbacks() {
    // the split of r̄(i*f) is the pullback of i along f in Total(Par)
    let par = Par::new(3);
    let total = TotalView(&par);
    for (a, b) in [(1, 1), (1, 2), (2, 1)] {
        let (istar, jstar) = binary_retractions(&par, &DisjointUnion, &a, &b).unwrap();
        let (i, j) = (PartialFn::inl(a, b), PartialFn::inr(a, b));
        for c in 0..=2 {
            for f in PartialFn::enumerate(c, a + b, true) {
                for (inj, star) in [(&i, &istar), (&j, &jstar)] {
                    let e = par.restriction(&par.compose(star, &f));
                    let s = split_idempotent(&par, &e).unwrap();
                    let k = s.mono.clone();
                    let m = par.compose(star, &par.compose(&f, &k));
                    assert!(m.is_total());
                    assert!(is_pullback(&total, &f, inj, &k, &m), "{f}");
                }
            }
        }
    }
}

#[test]
fn coproducts_survive_into_total_and_total_kr() {
    let x = par_to_rcat(2).unwrap();
    let (cp, _) = rcat_core::coproduct::search_coproducts(&x, None);
    let cp = cp.unwrap();
    let total = total_subcategory(&x).unwrap();
    let tcp = total_coproducts(&x, &total, &cp).unwrap();
    assert!(!tcp.cocones.is_empty());
    assert!(verify_coproducts(&total, &tcp, CheckOptions::default()).passed);
    let par = Par::new(2);
    let k = split_idempotents(&par, Some(&DisjointUnion), 10_000).unwrap();
    let tk = total_subcategory(&k.table).unwrap();
    let tkcp = total_coproducts(&k.table, &tk, k.coproducts.as_ref().unwrap()).unwrap();
    assert!(verify_coproducts(&tk, &tkcp, CheckOptions::default()).passed);
}

#[test]
fn rigid_pairs_fail_both_sides_with_the_same_map() {
    let y = RigidPairs::standard(false);
    let rx = is_extensive_rcat(&y, &WordSums, CheckOptions::default());
    assert!(!rx.passed);
    let k = split_idempotents(&y, Some(&WordSums), 10_000).unwrap();
    assert_eq!(k.table.n_objects(), 27);
    let total = total_subcategory(&k.table).unwrap();
    let cp = total_coproducts(&k.table, &total, k.coproducts.as_ref().unwrap()).unwrap();
    let pick = chosen(&cp);
    let rt = check_extensive_category(&total, &chosen_pairs(&cp), Some(&pick), CheckOptions::default());
    assert!(!rt.passed);
    // the failing map of Total(K_r(Y)) has the same underlying map
    let name = rt.violations[0].witnesses.last().unwrap();
    let f = k.table.base.morphism_by_name(name).unwrap();
    assert_eq!(y.mor_label(k.base_map(f)), rx.violations[0].witnesses[0]);
}

#[test]
fn equivalence_on_small_par() {
    for n in 0..=2 {
        let par = Par::new(n);
        let lhs = is_extensive_rcat(&par, &DisjointUnion, CheckOptions::default()).passed;
        let k = split_idempotents(&par, Some(&DisjointUnion), 10_000).unwrap();
        let total = total_subcategory(&k.table).unwrap();
        let cp = total_coproducts(&k.table, &total, k.coproducts.as_ref().unwrap()).unwrap();
        let pick = chosen(&cp);
        let rhs = check_extensive_category(&total, &chosen_pairs(&cp), Some(&pick), CheckOptions::default()).passed;
        assert_eq!(lhs, rhs, "n={n}");
        assert!(lhs);
    }
}
