//! The Kleisli category `D₊₁` of `+1` on a distributive category.

use std::collections::HashSet;

use super::distributive::{check_distributive_data, cross, Distributive, FinSetDistributive};
use super::monad::{MonoidalMonad, PlusOne};
use super::{check_counital_copy, CopyMaps, SymmetricMonoidal};
use crate::category::{check_restriction_axioms, Category, FinRCat, MorId, ObjId, RestrictionCategory};
use crate::coproduct::{
    check_restriction_coproducts, check_restriction_zero, find_decision, is_decision_of, sum_map, Cocone, Coproducts,
    Decision, TableCoproducts,
};
use crate::error::{CatError, Result};
use crate::par::{par_restriction, Par, PartialFn};
use crate::report::{CheckOptions, Checker, LawReport};

/// A Kleisli map `A → B`, stored as the underlying `A → B + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KleisliMor<O, M> {
    pub tgt: O,
    pub map: M,
}

/// `D₊₁`: composition `g ∘ f = [g | ⊥] f`, identities the first
/// injections, restriction `(π₁ + !) δ⁻¹ ⟨1, f⟩`.
///
/// The universe is the largest set of objects `A` of `D` for which `A + 1`
/// and every `A × (B + 1)` with its `δ⁻¹` are available.
pub struct Kleisli<'a, D: Category, S> {
    pub base: &'a D,
    pub dist: &'a S,
    objects: Vec<D::Obj>,
}

impl<'a, D: Category, S: Distributive<D>> Kleisli<'a, D, S> {
    pub fn new(base: &'a D, dist: &'a S) -> Self {
        let one = dist.terminal(base);
        let t = PlusOne(dist);
        let mut objects: Vec<D::Obj> = base.objects().into_iter().filter(|a| t.obj(base, a).is_some()).collect();
        loop {
            let keep: Vec<D::Obj> = objects
                .iter()
                .filter(|a| {
                    objects.iter().all(|b| {
                        t.obj(base, b).is_some_and(|tb| dist.product(base, a, &tb).is_some())
                            && dist.product(base, a, b).is_some()
                            && dist.product(base, a, &one).is_some()
                            && dist.undistribute(base, a, b, &one).is_some()
                    })
                })
                .cloned()
                .collect();
            if keep.len() == objects.len() {
                break;
            }
            objects = keep;
        }
        Kleisli { base, dist, objects }
    }

    fn plus_one(&self, a: &D::Obj) -> Cocone<D::Obj, D::Mor> {
        self.dist
            .cocone(self.base, a, &self.dist.terminal(self.base))
            .unwrap_or_else(|| panic!("{} + 1 is not chosen", self.base.obj_label(a)))
    }

    /// The graph of a `D`-map: `η f`.
    pub fn pure(&self, f: &D::Mor) -> KleisliMor<D::Obj, D::Mor> {
        let b = self.base.cod(f);
        KleisliMor { map: self.base.compose(&self.plus_one(&b).inl, f), tgt: b }
    }

    /// The Kleisli map `A → B` nowhere defined: `A → 1 → B + 1`.
    pub fn nowhere(&self, a: &D::Obj, b: &D::Obj) -> KleisliMor<D::Obj, D::Mor> {
        let bang = self.dist.to_terminal(self.base, a).expect("every object maps to 1");
        KleisliMor { map: self.base.compose(&self.plus_one(b).inr, &bang), tgt: b.clone() }
    }

    fn expect<T>(&self, x: Option<T>, what: &str, f: &KleisliMor<D::Obj, D::Mor>) -> T {
        x.unwrap_or_else(|| panic!("{what} unavailable for {}", self.base.mor_label(&f.map)))
    }
}

impl<D: Category, S: Distributive<D>> Category for Kleisli<'_, D, S> {
    type Obj = D::Obj;
    type Mor = KleisliMor<D::Obj, D::Mor>;
    fn objects(&self) -> Vec<D::Obj> {
        self.objects.clone()
    }
    fn hom(&self, a: &D::Obj, b: &D::Obj) -> Vec<Self::Mor> {
        let tb = self.plus_one(b).sum;
        self.base.hom(a, &tb).into_iter().map(|map| KleisliMor { tgt: b.clone(), map }).collect()
    }
    fn dom(&self, f: &Self::Mor) -> D::Obj {
        self.base.dom(&f.map)
    }
    fn cod(&self, f: &Self::Mor) -> D::Obj {
        f.tgt.clone()
    }
    fn identity(&self, a: &D::Obj) -> Self::Mor {
        KleisliMor { tgt: a.clone(), map: self.plus_one(a).inl }
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        let lifted = self.dist.copair(self.base, &g.map, &self.plus_one(&g.tgt).inr);
        let lifted = self.expect(lifted, "copair", g);
        KleisliMor { tgt: g.tgt.clone(), map: self.base.compose(&lifted, &f.map) }
    }
    fn obj_label(&self, a: &D::Obj) -> String {
        self.base.obj_label(a)
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        self.base.mor_label(&f.map)
    }
}

impl<D: Category, S: Distributive<D>> RestrictionCategory for Kleisli<'_, D, S> {
    fn restriction(&self, f: &Self::Mor) -> Self::Mor {
        let (d, s) = (self.base, self.dist);
        let a = self.base.dom(&f.map);
        let r = (|| {
            let one = s.terminal(d);
            let graph = s.pair(d, &d.identity(&a), &f.map)?;
            let split = s.undistribute(d, &a, &f.tgt, &one)?;
            let (_, p1, _) = s.product(d, &a, &f.tgt)?;
            let (a1, _, _) = s.product(d, &a, &one)?;
            let keep = sum_map(d, s, &p1, &s.to_terminal(d, &a1)?)?;
            Some(comp!(d; keep, split, graph))
        })();
        KleisliMor { map: self.expect(r, "restriction", f), tgt: a }
    }
}

/// Coproducts of `D` with injections `η i`, `η j`.
pub struct KleisliCoproducts;

impl<D: Category, S: Distributive<D>> Coproducts<Kleisli<'_, D, S>> for KleisliCoproducts {
    fn initial(&self, k: &Kleisli<'_, D, S>) -> D::Obj {
        k.dist.initial(k.base)
    }
    fn initial_map(&self, k: &Kleisli<'_, D, S>, a: &D::Obj) -> KleisliMor<D::Obj, D::Mor> {
        k.pure(&k.dist.initial_map(k.base, a))
    }
    fn cocone(&self, k: &Kleisli<'_, D, S>, a: &D::Obj, b: &D::Obj) -> Option<Cocone<D::Obj, KleisliMor<D::Obj, D::Mor>>> {
        let c = k.dist.cocone(k.base, a, b)?;
        k.objects.contains(&c.sum).then_some(())?;
        Some(Cocone { inl: k.pure(&c.inl), inr: k.pure(&c.inr), sum: c.sum })
    }
    fn copair(
        &self,
        k: &Kleisli<'_, D, S>,
        f: &KleisliMor<D::Obj, D::Mor>,
        g: &KleisliMor<D::Obj, D::Mor>,
    ) -> Option<KleisliMor<D::Obj, D::Mor>> {
        (f.tgt == g.tgt).then_some(())?;
        Some(KleisliMor { tgt: f.tgt.clone(), map: k.dist.copair(k.base, &f.map, &g.map)? })
    }
}

/// The copy structure of `D₊₁`: `f ⊗ g = φ (f × g)`, and `η` applied to
/// the diagonal, the map to `1` and the swap.
pub struct KleisliCopy;

impl<D: Category, S: Distributive<D>> SymmetricMonoidal<Kleisli<'_, D, S>> for KleisliCopy {
    fn tensor_obj(&self, k: &Kleisli<'_, D, S>, a: &D::Obj, b: &D::Obj) -> Option<D::Obj> {
        Some(k.dist.product(k.base, a, b)?.0)
    }
    fn tensor(
        &self,
        k: &Kleisli<'_, D, S>,
        f: &KleisliMor<D::Obj, D::Mor>,
        g: &KleisliMor<D::Obj, D::Mor>,
    ) -> Option<KleisliMor<D::Obj, D::Mor>> {
        let phi = PlusOne(k.dist).phi(k.base, &f.tgt, &g.tgt)?;
        let tgt = self.tensor_obj(k, &f.tgt, &g.tgt)?;
        Some(KleisliMor { tgt, map: k.base.compose(&phi, &cross(k.base, k.dist, &f.map, &g.map)?) })
    }
    fn unit(&self, k: &Kleisli<'_, D, S>) -> D::Obj {
        k.dist.terminal(k.base)
    }
    fn symmetry(&self, k: &Kleisli<'_, D, S>, a: &D::Obj, b: &D::Obj) -> Option<KleisliMor<D::Obj, D::Mor>> {
        let (_, p, q) = k.dist.product(k.base, a, b)?;
        Some(k.pure(&k.dist.pair(k.base, &q, &p)?))
    }
}

impl<D: Category, S: Distributive<D>> CopyMaps<Kleisli<'_, D, S>> for KleisliCopy {
    fn copy(&self, k: &Kleisli<'_, D, S>, a: &D::Obj) -> Option<KleisliMor<D::Obj, D::Mor>> {
        let id = k.base.identity(a);
        Some(k.pure(&k.dist.pair(k.base, &id, &id)?))
    }
    fn discard(&self, k: &Kleisli<'_, D, S>, a: &D::Obj) -> Option<KleisliMor<D::Obj, D::Mor>> {
        Some(k.pure(&k.dist.to_terminal(k.base, a)?))
    }
}

/// `D₊₁` tabulated over its universe, with the inherited coproducts.
pub struct KleisliTable {
    pub table: FinRCat,
    pub coproducts: TableCoproducts<ObjId, MorId>,
    /// Restriction axioms, restriction coproducts, restriction zero and
    /// counital copy structure, all on the formula model.
    pub report: LawReport,
}

/// Build `D₊₁` from verified distributive data and check it.
pub fn kleisli_restriction<D: Category, S: Distributive<D>>(d: &D, s: &S, opts: CheckOptions) -> Result<KleisliTable> {
    let valid = check_distributive_data(d, s, opts);
    if let Some(v) = valid.violations.first() {
        return Err(CatError::InvalidDistributiveData(format!("{}: {}", v.law, v.witnesses.join(", "))));
    }
    let k = Kleisli::new(d, s);
    let (table, index) = FinRCat::materialize(&k, opts.cap)?;
    let coproducts = TableCoproducts::transport(
        &k,
        &KleisliCoproducts,
        &index.objs,
        |o| index.obj_index.get(o).copied(),
        |f| index.try_mor(f),
    )
    .ok_or_else(|| CatError::MalformedTable("initial maps leave the universe".into()))?;
    let mut report = check_restriction_axioms(&k, opts);
    report.absorb(check_restriction_coproducts(&k, &KleisliCoproducts, opts));
    report.absorb(check_restriction_zero(&k, &KleisliCoproducts, opts));
    report.absorb(check_counital_copy(&k, &KleisliCopy, opts));
    Ok(KleisliTable { table, coproducts, report })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleisliDecision<O, M> {
    pub decision: Decision<O, M>,
    /// D.1, D.2 and agreement with exhaustive search.
    pub report: LawReport,
}

/// `h = (π₁ + π₁ + !) δ⁻¹ ⟨1, f⟩ : C → C + C` for `f : C → A + B` in `D₊₁`.
pub fn decision_in_kleisli<D: Category, S: Distributive<D>>(
    k: &Kleisli<'_, D, S>,
    f: &KleisliMor<D::Obj, D::Mor>,
    a: &D::Obj,
    b: &D::Obj,
    opts: CheckOptions,
) -> Result<KleisliDecision<D::Obj, KleisliMor<D::Obj, D::Mor>>> {
    let (d, s) = (k.base, k.dist);
    let c = d.dom(&f.map);
    let no = || CatError::NoCoproduct(d.obj_label(a), d.obj_label(b));
    let ab = s.cocone(d, a, b).ok_or_else(no)?;
    if ab.sum != f.tgt {
        return Err(CatError::ShapeMismatch(format!("codomain of {} is not {} + {}", k.mor_label(f), d.obj_label(a), d.obj_label(b))));
    }
    let map = (|| {
        let one = s.terminal(d);
        let cc = s.cocone(d, &c, &c)?;
        let into = s.cocone(d, &cc.sum, &one)?;
        let graph = s.pair(d, &d.identity(&c), &f.map)?;
        let outer = s.undistribute(d, &c, &ab.sum, &one)?;
        let (_, pa, _) = s.product(d, &c, a)?;
        let (_, pb, _) = s.product(d, &c, b)?;
        let sides = comp!(d; into.inl, sum_map(d, s, &pa, &pb)?, s.undistribute(d, &c, a, b)?);
        let (c1, _, _) = s.product(d, &c, &one)?;
        let undefined = d.compose(&into.inr, &s.to_terminal(d, &c1)?);
        Some(comp!(d; s.copair(d, &sides, &undefined)?, outer, graph))
    })()
    .ok_or_else(no)?;
    let h = KleisliMor { tgt: s.cocone(d, &c, &c).ok_or_else(no)?.sum, map };
    let parts = [a.clone(), b.clone()];
    let mut ck = Checker::new(opts);
    let w = || vec![k.mor_label(f), k.mor_label(&h)];
    if !is_decision_of(k, &KleisliCoproducts, f, &parts, &h)? {
        ck.fail("decision-axioms", w());
    } else {
        ck.tick();
    }
    let found = find_decision(k, &KleisliCoproducts, f, &parts)?;
    if !(found.unique && found.decision.as_ref().is_some_and(|x| x.h == h)) {
        ck.fail("decision-search", w());
    } else {
        ck.tick();
    }
    Ok(KleisliDecision { decision: Decision { subject: f.clone(), parts: parts.to_vec(), h }, report: ck.finish() })
}

/// Read a Kleisli map of `+1` on FinSet as a partial function: the extra
/// point is "undefined".
pub fn kleisli_to_par(f: &KleisliMor<usize, PartialFn>) -> PartialFn {
    PartialFn::from_fn(f.map.src, f.tgt, |x| f.map.at(x).filter(|&y| y < f.tgt))
}

/// The Kleisli category of `+1` on FinSet against Par on sizes `0..=n`:
/// the translation must be a bijection on every hom-set and preserve
/// identities, composition and restriction.
pub fn plus_one_agreement(n: usize, opts: CheckOptions) -> LawReport {
    let fs = crate::par::FinSet::new(n);
    let k = Kleisli::new(&fs, &FinSetDistributive);
    let par = Par::new(n);
    let mut ck = Checker::new(opts);
    let objs: Vec<usize> = (0..=n).collect();
    for a in &objs {
        ensure_law!(ck, kleisli_to_par(&k.identity(a)) == par.identity(a), "identity", vec![a.to_string()]);
        for b in &objs {
            let homs = k.hom(a, b);
            let image: HashSet<PartialFn> = homs.iter().map(kleisli_to_par).collect();
            let target: HashSet<PartialFn> = par.hom(a, b).into_iter().collect();
            ensure_law!(ck, image.len() == homs.len() && image == target, "hom-bijection", vec![a.to_string(), b.to_string()]);
            for f in &homs {
                let pf = kleisli_to_par(f);
                let r = kleisli_to_par(&k.restriction(f));
                ensure_law!(ck, r == par_restriction(&pf), "restriction", vec![pf.label()]);
                for x in &objs {
                    for g in k.hom(b, x) {
                        let ok = kleisli_to_par(&k.compose(&g, f)) == par.compose(&kleisli_to_par(&g), &pf);
                        ensure_law!(ck, ok, "composition", vec![pf.label(), kleisli_to_par(&g).label()]);
                    }
                }
            }
        }
    }
    ck.finish()
}
