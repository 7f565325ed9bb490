use rcat_core::category::{
    check_category_laws, check_derived_invariants, check_restriction_axioms, inverse, is_total, leq,
    FinCategoryBuilder, Trivial,
};
use rcat_core::format::{load_rcat, save_rcat, CategoryFile};
use rcat_core::par::{par_to_rcat, PartialFn};
use rcat_core::{CatError, Category, CheckOptions, FinRCat, RestrictionCategory, Status};

fn one_object() -> FinRCat {
    let mut b = FinCategoryBuilder::new();
    let a = b.object("*");
    let id = b.morphism("1", a, a);
    b.set_identity(a, id);
    b.set_compose(id, id, id);
    FinRCat::trivial(b.build().unwrap())
}

#[test]
fn one_object_passes_everything() {
    let x = one_object();
    assert!(check_category_laws(&x, CheckOptions::default()).passed);
    assert!(check_restriction_axioms(&x, CheckOptions::default()).passed);
    assert!(check_derived_invariants(&x, CheckOptions::default()).passed);
}

#[test]
fn par_up_to_one_passes_category_laws() {
    let x = par_to_rcat(1).unwrap();
    // sizes 0 and 1: hom(0,0)=1, hom(0,1)=1, hom(1,0)=1, hom(1,1)=2
    assert_eq!(x.n_morphisms(), 5);
    assert!(check_category_laws(&x, CheckOptions::default()).passed);
}

#[test]
fn wrong_codomain_composite_is_malformed() {
    let mut b = FinCategoryBuilder::new();
    let a = b.object("a");
    let c = b.object("b");
    let ia = b.morphism("1a", a, a);
    let ib = b.morphism("1b", c, c);
    let f = b.morphism("f", a, c);
    b.set_identity(a, ia);
    b.set_identity(c, ib);
    b.set_compose(ia, ia, f); // f : a → b is not an endo of a
    b.set_compose(ib, ib, ib);
    b.set_compose(f, ia, f);
    b.set_compose(ib, f, f);
    assert!(matches!(b.build(), Err(CatError::MalformedTable(_))));
}

#[test]
fn trivial_restriction_on_par_passes() {
    let x = par_to_rcat(2).unwrap();
    let t = Trivial(&x.base);
    assert!(check_restriction_axioms(&t, CheckOptions::default()).passed);
}

#[test]
fn par2_passes_axioms() {
    let x = par_to_rcat(2).unwrap();
    let r = check_restriction_axioms(&x, CheckOptions::default());
    assert_eq!(r.status, Status::Pass);
    assert!(r.checked > 0);
}

#[test]
fn nowhere_defined_restriction_breaks_r1_at_that_map() {
    let mut x = par_to_rcat(2).unwrap();
    let f = x.base.morphism_by_name(&PartialFn::new(2, 2, vec![Some(1), None]).unwrap().label()).unwrap();
    let nowhere = x.base.morphism_by_name(&PartialFn::nowhere(2, 2).label()).unwrap();
    x.set_restriction(f, nowhere).unwrap();
    let r = check_restriction_axioms(&x, CheckOptions::default());
    assert!(!r.passed);
    assert_eq!(r.violations[0].law, "R.1");
    assert!(r.violations[0].witnesses.contains(&x.base.mor_name(f).to_string()));
}

#[test]
fn totality_examples() {
    let x = par_to_rcat(2).unwrap();
    let id = x.identity(&x.base.object_by_name("2").unwrap());
    assert!(is_total(&x, &id));
    let partial = x.base.morphism_by_name(&PartialFn::new(2, 1, vec![Some(0), None]).unwrap().label()).unwrap();
    assert!(!is_total(&x, &partial));
    let total = x.base.morphism_by_name(&PartialFn::total(2, 1, &[0, 0]).label()).unwrap();
    assert!(is_total(&x, &total));
}

#[test]
fn restriction_inverse_examples() {
    let x = par_to_rcat(2).unwrap();
    let name = |f: &PartialFn| x.base.morphism_by_name(&f.label()).unwrap();
    for e in [PartialFn::partial_identity(2, &[0]), PartialFn::partial_identity(2, &[]), PartialFn::identity(2)] {
        assert_eq!(x.restriction_inverse(&name(&e)), Some(name(&e)));
    }
    // i : 1 → 1+1 has the partial inverse defined only on the first summand
    let i = name(&PartialFn::inl(1, 1));
    let i_star = name(&PartialFn::new(2, 1, vec![Some(0), None]).unwrap());
    assert_eq!(x.restriction_inverse(&i), Some(i_star));
    let collapse = name(&PartialFn::total(2, 1, &[0, 0]));
    assert_eq!(x.restriction_inverse(&collapse), None);
    assert_eq!(inverse(&x, &i), None);
    let swap = name(&PartialFn::total(2, 2, &[1, 0]));
    assert_eq!(inverse(&x, &swap), Some(swap));
}

#[test]
fn leq_examples() {
    let x = par_to_rcat(2).unwrap();
    let name = |f: &PartialFn| x.base.morphism_by_name(&f.label()).unwrap();
    let f = name(&PartialFn::total(2, 2, &[0, 1]));
    let g = name(&PartialFn::total(2, 2, &[1, 1]));
    let zero = name(&PartialFn::nowhere(2, 2));
    assert!(leq(&x, &f, &f).unwrap());
    assert!(leq(&x, &zero, &f).unwrap());
    assert!(!leq(&x, &f, &g).unwrap());
    let other = name(&PartialFn::nowhere(2, 1));
    assert!(matches!(leq(&x, &f, &other), Err(CatError::NotParallel(_))));
}

#[test]
fn derived_invariants_on_par3() {
    let x = par_to_rcat(3).unwrap();
    assert!(check_derived_invariants(&x, CheckOptions::default()).passed);
}

#[test]
fn cap_truncates_instead_of_sampling() {
    let x = par_to_rcat(3).unwrap();
    let r = check_restriction_axioms(&x, CheckOptions { cap: 10, all_violations: false });
    assert_eq!(r.status, Status::Truncated);
    assert!(!r.passed);
}

#[test]
fn file_format_round_trips() {
    let x = par_to_rcat(2).unwrap();
    let text = save_rcat(&x);
    let y = load_rcat(&text).unwrap();
    assert_eq!(save_rcat(&y), text);
    assert_eq!(y.n_morphisms(), x.n_morphisms());
}

#[test]
fn loader_errors_are_positional() {
    let bad = r#"{"objects":["a"],"morphisms":[{"name":"1","dom":"a","cod":"b"}],
        "identity":{"a":"1"},"compose":[["1","1","1"]],"restriction":{"1":"1"}}"#;
    let err = CategoryFile::from_json(bad).unwrap().to_rcat().unwrap_err().to_string();
    assert!(err.contains("morphisms[0].cod"), "{err}");
    let err = CategoryFile::from_json("{\"objects\": [1]}").unwrap_err().to_string();
    assert!(err.contains("line 1"), "{err}");
}
