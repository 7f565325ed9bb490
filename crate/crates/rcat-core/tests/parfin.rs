use proptest::prelude::*;
use rcat_core::category::{check_restriction_axioms, check_restriction_axioms_sampled, restriction_idempotents};
use rcat_core::par::{kleisli_plus_one_check, par_compose, par_restriction, par_to_rcat, Par, PartialFn};
use rcat_core::{Category, CheckOptions, RestrictionCategory};

/// `(n + 1)^m` partial maps from an m-set to an n-set.
fn count(m: usize, n: usize) -> usize {
    (n + 1).pow(m as u32)
}

fn pfn(max: usize) -> impl Strategy<Value = PartialFn> {
    (0..=max, 0..=max).prop_flat_map(|(s, t)| {
        let cell = if t == 0 { Just(None).boxed() } else { proptest::option::of(0..t as u32).boxed() };
        proptest::collection::vec(cell, s).prop_map(move |table| PartialFn::new(s, t, table).unwrap())
    })
}

#[test]
fn compose_examples() {
    let f = PartialFn::new(2, 1, vec![Some(0), None]).unwrap();
    let g = PartialFn::new(1, 2, vec![Some(1)]).unwrap();
    let gf = par_compose(&g, &f).unwrap();
    assert_eq!(gf.table, vec![Some(1), None]);
    assert_eq!(par_compose(&g, &PartialFn::identity(1)).unwrap(), g);
    assert_eq!(par_compose(&g, &PartialFn::nowhere(3, 1)).unwrap(), PartialFn::nowhere(3, 2));
    assert!(par_compose(&f, &f).is_err());
}

#[test]
fn restriction_examples() {
    assert_eq!(par_restriction(&PartialFn::total(2, 3, &[2, 0])), PartialFn::identity(2));
    let f = PartialFn::new(3, 1, vec![Some(0), None, Some(0)]).unwrap();
    assert_eq!(par_restriction(&f).table, vec![Some(0), None, Some(2)]);
    assert_eq!(par_restriction(&PartialFn::nowhere(2, 2)), PartialFn::nowhere(2, 2));
}

#[test]
fn materialized_sizes() {
    let x0 = par_to_rcat(0).unwrap();
    assert_eq!((x0.n_objects(), x0.n_morphisms()), (1, 1));
    assert!(check_restriction_axioms(&x0, CheckOptions::default()).passed);
    for n in 1..=3 {
        let x = par_to_rcat(n).unwrap();
        let expected: usize = (0..=n).flat_map(|m| (0..=n).map(move |k| count(m, k))).sum();
        assert_eq!(x.n_morphisms(), expected);
    }
    let x = par_to_rcat(2).unwrap();
    let two = x.base.object_by_name("2").unwrap();
    assert_eq!(x.hom(&two, &two).len(), 9);
}

#[test]
fn monomorphisms_are_total() {
    let x = par_to_rcat(2).unwrap();
    for f in x.all_morphisms() {
        let a = x.dom(&f);
        let mono = x.objects().iter().all(|z| {
            let hs = x.hom(z, &a);
            hs.iter().all(|g| hs.iter().all(|h| g == h || x.compose(&f, g) != x.compose(&f, h)))
        });
        if mono {
            assert_eq!(x.restriction(&f), x.identity(&a), "{}", x.mor_label(&f));
        }
    }
}

#[test]
fn idempotents_are_partial_identities() {
    let par = Par::new(4);
    for n in 0..=4 {
        let es = restriction_idempotents(&par, &n);
        assert_eq!(es.len(), 1 << n);
        assert!(es.iter().all(|e| e.table.iter().enumerate().all(|(i, v)| v.is_none() || *v == Some(i as u32))));
    }
}

#[test]
fn axioms_par3_exhaustive_and_par4_sampled() {
    assert!(check_restriction_axioms(&par_to_rcat(3).unwrap(), CheckOptions::default()).passed);
    let r = check_restriction_axioms_sampled(&Par::new(4), 20_000, 7, CheckOptions::default());
    assert!(r.passed, "{:?}", r.violations);
}

#[test]
fn kleisli_agreement() {
    for n in 0..=3 {
        let r = kleisli_plus_one_check(n, CheckOptions::default());
        assert!(r.passed, "n={n}: {:?}", r.violations);
    }
}

#[test]
fn text_forms_round_trip() {
    let f = PartialFn::new(3, 2, vec![Some(1), None, Some(0)]).unwrap();
    assert_eq!(f.text(), "3 2 1 - 0");
    assert_eq!(PartialFn::parse(&f.text()).unwrap(), f);
    assert_eq!(f.label(), "3>2:1,-,0");
    assert_eq!(PartialFn::from_label(&f.label()).unwrap(), f);
    assert!(PartialFn::parse("2 1 0 1").is_err());
    assert!(PartialFn::parse("2 1 0").is_err());
}

#[test]
fn layout_conventions() {
    assert_eq!(PartialFn::inr(2, 3).table, vec![Some(2), Some(3), Some(4)]);
    assert_eq!(PartialFn::proj_left(2, 3).at(4), Some(1));
    assert_eq!(PartialFn::proj_right(2, 3).at(4), Some(1));
    assert_eq!(PartialFn::diagonal(3).at(2), Some(8));
}

proptest! {
    #[test]
    fn pointwise_axioms(f in pfn(4), g in pfn(4), h in pfn(4)) {
        let rf = par_restriction(&f);
        prop_assert_eq!(par_compose(&f, &rf).unwrap(), f.clone());
        if g.src == f.src {
            let rg = par_restriction(&g);
            prop_assert_eq!(par_compose(&rf, &rg).unwrap(), par_compose(&rg, &rf).unwrap());
            prop_assert_eq!(par_restriction(&par_compose(&g, &rf).unwrap()), par_compose(&rg, &rf).unwrap());
        }
        if h.src == f.tgt {
            let lhs = par_compose(&par_restriction(&h), &f).unwrap();
            let rhs = par_compose(&f, &par_restriction(&par_compose(&h, &f).unwrap())).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_is_pointwise(f in pfn(4), g in pfn(4)) {
        if let Ok(gf) = par_compose(&g, &f) {
            for x in 0..f.src {
                prop_assert_eq!(gf.at(x), f.at(x).and_then(|y| g.at(y)));
            }
        } else {
            prop_assert_ne!(f.tgt, g.src);
        }
    }
}
