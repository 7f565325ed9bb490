//! `Total(K_r(D₊₁))` and the functor `N` into it.

use std::collections::BTreeMap;

use super::distributive::Distributive;
use super::kleisli::{kleisli_restriction, Kleisli, KleisliMor, KleisliTable};
use super::monad::{MonoidalMonad, PlusOne};
use crate::category::{plain_inverse, Category, FinCategory, MorId, ObjId, RestrictionCategory};
use crate::coproduct::{sum_map, Coproducts, TableCoproducts};
use crate::error::{CatError, Result};
use crate::product::{find_ordinary_product, OrdinaryProduct};
use crate::report::{CheckOptions, Checker, LawReport};
use crate::split::{check_extensive_category, chosen_pairs, split_idempotents, total_coproducts, SplitObject, KrMor};

/// An isomorphism `object ≅ N(source)` in the completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative<O> {
    pub object: ObjId,
    pub source: O,
    pub to: MorId,
    pub from: MorId,
}

pub struct Completion<O: Ord, M: Ord> {
    pub kleisli: KleisliTable,
    /// `Total(K_r(D₊₁))`.
    pub category: FinCategory,
    pub coproducts: TableCoproducts<ObjId, MorId>,
    pub products: BTreeMap<(ObjId, ObjId), OrdinaryProduct<ObjId, MorId>>,
    /// Pairs whose product falls outside the universe.
    pub missing_products: Vec<(ObjId, ObjId)>,
    pub n_obj: BTreeMap<O, ObjId>,
    pub n_mor: BTreeMap<M, MorId>,
    /// Every object of the completion, isomorphic to some `N A`.
    pub representatives: Vec<Representative<O>>,
    /// Extensivity, functoriality of `N`, preservation of (co)products up
    /// to the comparison maps, and the equivalence data.
    pub report: LawReport,
}

/// `D → Kleisli → split → Total`, then `N A = (A, 1)`, `N f = (A, 1) → (B, 1)`
/// given by `η f`.
pub fn extensive_completion<D, S>(d: &D, s: &S, opts: CheckOptions) -> Result<Completion<D::Obj, D::Mor>>
where
    D: Category,
    S: Distributive<D>,
{
    let kt = kleisli_restriction(d, s, opts)?;
    let k = Kleisli::new(d, s);
    let x = &kt.table;
    let kr = split_idempotents(x, Some(&kt.coproducts), opts.cap)?;
    let kr_cp = kr.coproducts.as_ref().ok_or_else(|| CatError::MalformedTable("coproducts lost in K_r".into()))?;
    let total = crate::split::total_subcategory(&kr.table)?;
    let tcp = total_coproducts(&kr.table, &total, kr_cp)?;

    let mut ck = Checker::new(opts);
    let pick = |a: &ObjId, b: &ObjId| tcp.cocones.get(&(*a, *b)).cloned();
    ck.absorb(check_extensive_category(&total, &chosen_pairs(&tcp), Some(&pick), opts));

    let objs = total.objects();
    let mut products = BTreeMap::new();
    let mut missing_products = vec![];
    for a in &objs {
        for b in &objs {
            match find_ordinary_product(&total, a, b).first {
                Some(p) => {
                    products.insert((*a, *b), p);
                }
                None => missing_products.push((*a, *b)),
            }
        }
    }

    // N, through the Kleisli table and K_r.
    let by_name = |f: MorId| total.morphism_by_name(kr.table.base.mor_name(f)).ok();
    let k_obj = |a: &D::Obj| x.base.object_by_name(&k.obj_label(a)).ok();
    let n_of_obj = |a: &D::Obj| -> Option<ObjId> {
        let ka = k_obj(a)?;
        let id = x.identity(&ka);
        let o = kr.object(&ka, &id)?;
        total.object_by_name(kr.table.base.obj_name(o)).ok()
    };
    let n_of_mor = |f: &D::Mor| -> Option<MorId> {
        let (ka, kb) = (k_obj(&d.dom(f))?, k_obj(&d.cod(f))?);
        let g = x.base.morphism_by_name(&k.mor_label(&k.pure(f))).ok()?;
        let full = |o: ObjId| SplitObject { base: o, idem: x.identity(&o) };
        let m = kr.index.try_mor(&KrMor { src: full(ka), tgt: full(kb), map: g })?;
        by_name(m)
    };
    let universe = k.objects();
    let mut n_obj = BTreeMap::new();
    let mut n_mor = BTreeMap::new();
    for a in &universe {
        let Some(na) = n_of_obj(a) else { continue };
        n_obj.insert(a.clone(), na);
        for b in &universe {
            for f in d.hom(a, b) {
                if let Some(nf) = n_of_mor(&f) {
                    n_mor.insert(f, nf);
                }
            }
        }
    }

    let report = 'laws: {
        macro_rules! law {
            ($cond:expr, $law:expr, $wit:expr) => {
                if !$cond {
                    if ck.fail($law, $wit) {
                        break 'laws ck.finish();
                    }
                } else {
                    ck.tick();
                }
            };
        }
        if ck.stopped() {
            break 'laws ck.finish();
        }
        let l = |a: &D::Obj| d.obj_label(a);
        for a in &universe {
            law!(n_obj.contains_key(a), "functor", vec![l(a)]);
            law!(n_mor.get(&d.identity(a)) == Some(&total.identity(&n_obj[a])), "functor", vec![l(a)]);
            for b in &universe {
                for f in d.hom(a, b) {
                    law!(n_mor.contains_key(&f), "functor", vec![d.mor_label(&f)]);
                    for x2 in &universe {
                        for g in d.hom(b, x2) {
                            let ok = n_mor.get(&d.compose(&g, &f)) == Some(&total.compose(&n_mor[&g], &n_mor[&f]));
                            law!(ok, "functor", vec![d.mor_label(&f), d.mor_label(&g)]);
                        }
                    }
                }
                // fully faithful
                let image: std::collections::BTreeSet<MorId> = d.hom(a, b).iter().filter_map(|f| n_mor.get(f).copied()).collect();
                let ok = image.len() == d.hom(a, b).len() && image.len() == total.hom(&n_obj[a], &n_obj[b]).len();
                law!(ok, "fully-faithful", vec![l(a), l(b)]);
            }
        }

        let zero = s.initial(d);
        if let Some(nz) = n_obj.get(&zero) {
            law!(objs.iter().all(|z| total.hom(nz, z).len() == 1), "preserves-initial", vec![l(&zero)]);
        }
        let one = s.terminal(d);
        if let Some(n1) = n_obj.get(&one) {
            law!(objs.iter().all(|z| total.hom(z, n1).len() == 1), "preserves-terminal", vec![l(&one)]);
        }
        for a in &universe {
            for b in &universe {
                let w = || vec![l(a), l(b)];
                if let Some(kd) = s.cocone(d, a, b) {
                    let nk = tcp.cocones.get(&(n_obj[a], n_obj[b]));
                    let (Some(nsum), Some(ninl), Some(ninr)) = (n_obj.get(&kd.sum), n_mor.get(&kd.inl), n_mor.get(&kd.inr)) else {
                        continue;
                    };
                    let Some(nk) = nk else {
                        law!(false, "preserves-coproducts", w());
                        continue;
                    };
                    let theta = tcp.copair(&total, ninl, ninr);
                    let ok = theta.is_some_and(|t| total.dom(&t) == nk.sum && total.cod(&t) == *nsum && plain_inverse(&total, &t).is_some());
                    law!(ok, "preserves-coproducts", w());
                }
                if let Some((p, pl, pr)) = s.product(d, a, b) {
                    let (Some(np), Some(npl), Some(npr)) = (n_obj.get(&p), n_mor.get(&pl), n_mor.get(&pr)) else { continue };
                    let Some(w2) = products.get(&(n_obj[a], n_obj[b])) else {
                        law!(false, "preserves-products", w());
                        continue;
                    };
                    let cmp = total
                        .hom(np, &w2.object)
                        .into_iter()
                        .find(|h| total.compose(&w2.left, h) == *npl && total.compose(&w2.right, h) == *npr);
                    law!(cmp.is_some_and(|h| plain_inverse(&total, &h).is_some()), "preserves-products", w());
                }
            }
        }
        ck.finish()
    };

    let mut representatives = vec![];
    let mut report = report;
    let mut ck = Checker::new(opts);
    for o in &objs {
        let found = n_obj.iter().find_map(|(a, na)| {
            total.hom(o, na).into_iter().find_map(|to| {
                let from = plain_inverse(&total, &to)?;
                Some(Representative { object: *o, source: a.clone(), to, from })
            })
        });
        match found {
            Some(r) => {
                ck.tick();
                representatives.push(r);
            }
            None => {
                if ck.fail("essentially-surjective", vec![total.obj_name(*o).to_string()]) {
                    break;
                }
            }
        }
    }
    report.absorb(ck.finish());
    report.absorb(kt.report.clone());

    Ok(Completion {
        kleisli: kt,
        category: total,
        coproducts: tcp,
        products,
        missing_products,
        n_obj,
        n_mor,
        representatives,
        report,
    })
}

/// A functor between formula models, defined where it can be.
pub trait Functor<D: Category, E: Category> {
    fn obj(&self, a: &D::Obj) -> Option<E::Obj>;
    fn map(&self, f: &D::Mor) -> Option<E::Mor>;
}

/// For `H : D → E` preserving coproducts, `φ_A = (HA + !) θ⁻¹ : H(A+1) → HA + 1`
/// where `θ = ⟨H i | H j⟩`. Checks naturality, compatibility with `η`
/// and `μ`, and with the induced restriction on maps `a : A → 1 + 1`.
pub fn check_classifying_morphism<D, E, SD, SE, H>(d: &D, sd: &SD, e: &E, se: &SE, h: &H, opts: CheckOptions) -> LawReport
where
    D: Category,
    E: Category,
    SD: Distributive<D>,
    SE: Distributive<E>,
    H: Functor<D, E>,
{
    let mut ck = Checker::new(opts);
    let (td, te) = (PlusOne(sd), PlusOne(se));
    let one = sd.terminal(d);
    let phi = |a: &D::Obj| -> Option<E::Mor> {
        let k = sd.cocone(d, a, &one)?;
        let theta = se.copair(e, &h.map(&k.inl)?, &h.map(&k.inr)?)?;
        let inv = plain_inverse(e, &theta)?;
        let bang = se.to_terminal(e, &h.obj(&one)?)?;
        Some(e.compose(&sum_map(e, se, &e.identity(&h.obj(a)?), &bang)?, &inv))
    };
    let kd = Kleisli::new(d, sd);
    let ke = Kleisli::new(e, se);
    let objs = d.objects();
    for a in &objs {
        let w = || vec![d.obj_label(a)];
        let Some(pa) = phi(a) else {
            ensure_law!(ck, false, "coproduct-preservation", w());
            continue;
        };
        ck.tick();
        let square = (|| {
            let ha = h.obj(a)?;
            let unit = e.compose(&pa, &h.map(&td.unit(d, a)?)?) == te.unit(e, &ha)?;
            let ta = td.obj(d, a)?;
            let lhs = e.compose(&pa, &h.map(&td.mult(d, a)?)?);
            let rhs = comp!(e; te.mult(e, &ha)?, te.map(e, &pa)?, phi(&ta)?);
            Some([unit, lhs == rhs])
        })();
        if let Some([unit, mult]) = square {
            ensure_law!(ck, unit, "phi-unit", w());
            ensure_law!(ck, mult, "phi-multiplication", w());
        }
        for b in &objs {
            for f in d.hom(a, b) {
                let nat = (|| {
                    let pb = phi(b)?;
                    let lhs = e.compose(&pb, &h.map(&td.map(d, &f)?)?);
                    Some(lhs == e.compose(&te.map(e, &h.map(&f)?)?, &pa))
                })();
                if let Some(ok) = nat {
                    ensure_law!(ck, ok, "phi-natural", vec![d.mor_label(&f)]);
                }
            }
        }
        let two = sd.cocone(d, &one, &one).map(|k| k.sum);
        let Some(two) = two else { continue };
        for a2 in d.hom(a, &two) {
            let restr = (|| {
                let p1 = phi(&one)?;
                let ha = h.obj(a)?;
                let h1 = h.obj(&one)?;
                let lhs = ke.restriction(&KleisliMor { tgt: h1, map: e.compose(&p1, &h.map(&a2)?) });
                let rd = kd.restriction(&KleisliMor { tgt: one.clone(), map: a2.clone() });
                let rhs = e.compose(&pa, &h.map(&rd.map)?);
                Some(lhs.map == rhs && lhs.tgt == ha)
            })();
            if let Some(ok) = restr {
                ensure_law!(ck, ok, "phi-restriction", vec![d.mor_label(&a2)]);
            }
        }
    }
    ck.finish()
}
