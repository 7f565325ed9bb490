use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{is_total, leq, Category, RestrictionCategory};
use crate::report::{CheckOptions, Checker, LawReport};

fn capped<C: Category + ?Sized>(c: &C, opts: &CheckOptions) -> Option<LawReport> {
    let n = c.morphism_count();
    (n > opts.cap).then(|| LawReport::truncated(n, opts.cap))
}

/// Identity and associativity over every composable pair and triple of the
/// universe, plus dom/cod consistency of composites.
pub fn check_category_laws<C: Category + ?Sized>(c: &C, opts: CheckOptions) -> LawReport {
    if let Some(r) = capped(c, &opts) {
        return r;
    }
    let mut ck = Checker::new(opts);
    let all = c.all_morphisms();
    for f in &all {
        let (a, b) = (c.dom(f), c.cod(f));
        ensure_law!(ck, c.compose(f, &c.identity(&a)) == *f, "identity-right", vec![c.mor_label(f)]);
        ensure_law!(ck, c.compose(&c.identity(&b), f) == *f, "identity-left", vec![c.mor_label(f)]);
    }
    for f in &all {
        for g in c.hom_from(&c.cod(f)) {
            let gf = c.compose(&g, f);
            ensure_law!(
                ck,
                c.dom(&gf) == c.dom(f) && c.cod(&gf) == c.cod(&g),
                "composite-shape",
                vec![c.mor_label(&g), c.mor_label(f)]
            );
        }
    }
    for f in &all {
        for g in c.hom_from(&c.cod(f)) {
            let gf = c.compose(&g, f);
            for h in c.hom_from(&c.cod(&g)) {
                let lhs = c.compose(&h, &gf);
                let rhs = c.compose(&c.compose(&h, &g), f);
                ensure_law!(ck, lhs == rhs, "associativity", vec![c.mor_label(&h), c.mor_label(&g), c.mor_label(f)]);
            }
        }
    }
    ck.finish()
}

/// R.1–R.4 over every pair sharing a domain and every composable pair.
pub fn check_restriction_axioms<C: RestrictionCategory + ?Sized>(c: &C, opts: CheckOptions) -> LawReport {
    if let Some(r) = capped(c, &opts) {
        return r;
    }
    let mut ck = Checker::new(opts);
    let all = c.all_morphisms();
    for f in &all {
        let rf = c.restriction(f);
        let a = c.dom(f);
        ensure_law!(ck, c.dom(&rf) == a && c.cod(&rf) == a, "restriction-shape", vec![c.mor_label(f)]);
    }
    for f in &all {
        let rf = c.restriction(f);
        ensure_law!(ck, c.compose(f, &rf) == *f, "R.1", vec![c.mor_label(f)]);
    }
    for f in &all {
        let rf = c.restriction(f);
        ensure_law!(ck, c.compose(&rf, &rf) == rf, "restriction-idempotent", vec![c.mor_label(f)]);
    }
    for f in &all {
        let rf = c.restriction(f);
        for g in c.hom_from(&c.dom(f)) {
            let rg = c.restriction(&g);
            ensure_law!(
                ck,
                c.compose(&rf, &rg) == c.compose(&rg, &rf),
                "R.2",
                vec![c.mor_label(f), c.mor_label(&g)]
            );
        }
    }
    for f in &all {
        let rf = c.restriction(f);
        for g in c.hom_from(&c.dom(f)) {
            let rg = c.restriction(&g);
            ensure_law!(
                ck,
                c.restriction(&c.compose(&g, &rf)) == c.compose(&rg, &rf),
                "R.3",
                vec![c.mor_label(f), c.mor_label(&g)]
            );
        }
    }
    for f in &all {
        for h in c.hom_from(&c.cod(f)) {
            let lhs = c.compose(&c.restriction(&h), f);
            let rhs = c.compose(f, &c.restriction(&c.compose(&h, f)));
            ensure_law!(ck, lhs == rhs, "R.4", vec![c.mor_label(f), c.mor_label(&h)]);
        }
    }
    ck.finish()
}

/// R.1–R.4 on `samples` random triples `f : A → B`, `g : A → C`, `h : B → D`.
pub fn check_restriction_axioms_sampled<C: RestrictionCategory + ?Sized>(
    c: &C,
    samples: usize,
    seed: u64,
    opts: CheckOptions,
) -> LawReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let all = c.all_morphisms();
    let mut ck = Checker::new(opts);
    if all.is_empty() {
        return ck.finish();
    }
    let objs = c.objects();
    let out: Vec<Vec<C::Mor>> = objs.iter().map(|a| c.hom_from(a)).collect();
    let pos = |a: &C::Obj| objs.binary_search(a).ok();
    for _ in 0..samples {
        let f = all.choose(&mut rng).unwrap();
        let Some(g) = pos(&c.dom(f)).and_then(|i| out[i].choose(&mut rng)) else { continue };
        let Some(h) = pos(&c.cod(f)).and_then(|i| out[i].choose(&mut rng)) else { continue };
        let (rf, rg, rh) = (c.restriction(f), c.restriction(g), c.restriction(h));
        let w = || vec![c.mor_label(f), c.mor_label(g), c.mor_label(h)];
        ensure_law!(ck, c.compose(f, &rf) == *f, "R.1", w());
        ensure_law!(ck, c.compose(&rf, &rg) == c.compose(&rg, &rf), "R.2", w());
        ensure_law!(ck, c.restriction(&c.compose(g, &rf)) == c.compose(&rg, &rf), "R.3", w());
        ensure_law!(ck, c.compose(&rh, f) == c.compose(f, &c.restriction(&c.compose(h, f))), "R.4", w());
    }
    ck.finish()
}

/// Consequences every restriction category must satisfy: r̄r̄f = r̄f,
/// r̄(gf) = r̄(r̄g·f), monics are total, restriction inverses are involutive
/// and ≤ is a partial order on each hom-set.
pub fn check_derived_invariants<C: RestrictionCategory + ?Sized>(c: &C, opts: CheckOptions) -> LawReport {
    if let Some(r) = capped(c, &opts) {
        return r;
    }
    let mut ck = Checker::new(opts);
    let all = c.all_morphisms();
    let objs = c.objects();
    for f in &all {
        let rf = c.restriction(f);
        ensure_law!(ck, c.restriction(&rf) == rf, "rr=r", vec![c.mor_label(f)]);
        for g in c.hom_from(&c.cod(f)) {
            let lhs = c.restriction(&c.compose(&g, f));
            let rhs = c.restriction(&c.compose(&c.restriction(&g), f));
            ensure_law!(ck, lhs == rhs, "r(gf)=r(rg.f)", vec![c.mor_label(&g), c.mor_label(f)]);
        }
    }
    for f in &all {
        let a = c.dom(f);
        let monic = objs.iter().all(|z| {
            let h = c.hom(z, &a);
            h.iter().all(|u| h.iter().all(|v| u == v || c.compose(f, u) != c.compose(f, v)))
        });
        ensure_law!(ck, !monic || is_total(c, f), "monic-total", vec![c.mor_label(f)]);
    }
    for f in &all {
        if let Some(g) = c.restriction_inverse(f) {
            let back = c.restriction_inverse(&g);
            ensure_law!(ck, back.as_ref() == Some(f), "restriction-inverse-involutive", vec![c.mor_label(f)]);
        }
    }
    for a in &objs {
        for b in &objs {
            let h = c.hom(a, b);
            let le = |x: &C::Mor, y: &C::Mor| leq(c, x, y).unwrap_or(false);
            for x in &h {
                ensure_law!(ck, le(x, x), "leq-reflexive", vec![c.mor_label(x)]);
                for y in &h {
                    if le(x, y) && le(y, x) {
                        ensure_law!(ck, x == y, "leq-antisymmetric", vec![c.mor_label(x), c.mor_label(y)]);
                    }
                    if !le(x, y) {
                        continue;
                    }
                    for z in &h {
                        if le(y, z) {
                            ensure_law!(
                                ck,
                                le(x, z),
                                "leq-transitive",
                                vec![c.mor_label(x), c.mor_label(y), c.mor_label(z)]
                            );
                        }
                    }
                }
            }
        }
    }
    ck.finish()
}
