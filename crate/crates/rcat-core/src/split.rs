//! Splitting restriction idempotents (`K_r`), total maps, and extensivity.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::category::{
    is_total, plain_inverse, restriction_idempotents, Category, FinCategory, FinRCat, Materialized, MorId, ObjId,
    RestrictionCategory, Splitting,
};
use crate::coproduct::{
    check_restriction_coproducts, check_restriction_zero, find_coproduct, find_decision, is_coproduct, sum_map,
    Cocone, Coproducts, TableCoproducts,
};
use crate::error::{CatError, Result};
use crate::format::{escape, split_unescaped, unescape};
use crate::report::{CheckOptions, Checker, LawReport};

/// An object `(A, e)` of `K_r(X)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitObject<O, M> {
    pub base: O,
    pub idem: M,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KrMor<O, M> {
    pub src: SplitObject<O, M>,
    pub tgt: SplitObject<O, M>,
    pub map: M,
}

/// `K_r(X)` computed on demand over any restriction category.
pub struct Kr<'a, C> {
    pub base: &'a C,
}

impl<'a, C> Kr<'a, C> {
    pub fn new(base: &'a C) -> Self {
        Kr { base }
    }
}

type KObj<C> = SplitObject<<C as Category>::Obj, <C as Category>::Mor>;
type KMor<C> = KrMor<<C as Category>::Obj, <C as Category>::Mor>;

impl<C: RestrictionCategory> Kr<'_, C> {
    pub fn full(&self, a: &C::Obj) -> KObj<C> {
        SplitObject { base: a.clone(), idem: self.base.identity(a) }
    }

    /// Wrap a base map, if it belongs to `hom(src, tgt)`.
    pub fn lift(&self, src: &KObj<C>, tgt: &KObj<C>, f: &C::Mor) -> Option<KMor<C>> {
        let x = self.base;
        let ok = x.dom(f) == src.base
            && x.cod(f) == tgt.base
            && x.compose(f, &src.idem) == *f
            && x.compose(&tgt.idem, f) == *f;
        ok.then(|| KrMor { src: src.clone(), tgt: tgt.clone(), map: f.clone() })
    }
}

impl<C: RestrictionCategory> Category for Kr<'_, C> {
    type Obj = KObj<C>;
    type Mor = KMor<C>;

    fn objects(&self) -> Vec<KObj<C>> {
        let x = self.base;
        x.objects()
            .into_iter()
            .flat_map(|a| restriction_idempotents(x, &a).into_iter().map(move |e| SplitObject { base: a.clone(), idem: e }))
            .collect()
    }
    fn hom(&self, a: &KObj<C>, b: &KObj<C>) -> Vec<KMor<C>> {
        self.base.hom(&a.base, &b.base).iter().filter_map(|f| self.lift(a, b, f)).collect()
    }
    fn dom(&self, f: &KMor<C>) -> KObj<C> {
        f.src.clone()
    }
    fn cod(&self, f: &KMor<C>) -> KObj<C> {
        f.tgt.clone()
    }
    fn identity(&self, a: &KObj<C>) -> KMor<C> {
        KrMor { src: a.clone(), tgt: a.clone(), map: a.idem.clone() }
    }
    fn compose(&self, g: &KMor<C>, f: &KMor<C>) -> KMor<C> {
        KrMor { src: f.src.clone(), tgt: g.tgt.clone(), map: self.base.compose(&g.map, &f.map) }
    }
    fn obj_label(&self, a: &KObj<C>) -> String {
        split_name(&self.base.obj_label(&a.base), &self.base.mor_label(&a.idem))
    }
    fn mor_label(&self, f: &KMor<C>) -> String {
        format!("{}:{}>{}", escape(&self.base.mor_label(&f.map)), self.obj_label(&f.src), self.obj_label(&f.tgt))
    }
}

impl<C: RestrictionCategory> RestrictionCategory for Kr<'_, C> {
    fn restriction(&self, f: &KMor<C>) -> KMor<C> {
        KrMor { src: f.src.clone(), tgt: f.src.clone(), map: self.base.restriction(&f.map) }
    }

    fn restriction_inverse(&self, f: &KMor<C>) -> Option<KMor<C>> {
        let g = self.base.restriction_inverse(&f.map)?;
        self.lift(&f.tgt, &f.src, &g)
    }

    /// `d ≤ e` on `(A, e)` splits through `(A, d)`.
    fn canonical_splitting(&self, d: &KMor<C>) -> Option<Splitting<KObj<C>, KMor<C>>> {
        if d.src != d.tgt || self.base.restriction(&d.map) != d.map {
            return None;
        }
        let obj = SplitObject { base: d.src.base.clone(), idem: d.map.clone() };
        Some(Splitting {
            mono: KrMor { src: obj.clone(), tgt: d.src.clone(), map: d.map.clone() },
            retraction: KrMor { src: d.src.clone(), tgt: obj.clone(), map: d.map.clone() },
            object: obj,
        })
    }
}

/// `(A|e)` with both components escaped.
pub fn split_name(object: &str, idem: &str) -> String {
    format!("({}|{})", escape(object), escape(idem))
}

/// Inverse of [`split_name`].
pub fn parse_split_name(name: &str) -> Option<(String, String)> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let parts = split_unescaped(inner, '|');
    (parts.len() == 2).then(|| (unescape(&parts[0]), unescape(&parts[1])))
}

/// Inherited coproducts `(A, e) + (B, e′) = (A + B, e + e′)`.
pub struct KrCoproducts<'a, CP>(pub &'a CP);

impl<C: RestrictionCategory, CP: Coproducts<C>> Coproducts<Kr<'_, C>> for KrCoproducts<'_, CP> {
    fn initial(&self, k: &Kr<'_, C>) -> KObj<C> {
        k.full(&self.0.initial(k.base))
    }
    fn initial_map(&self, k: &Kr<'_, C>, a: &KObj<C>) -> KMor<C> {
        let z = self.0.initial_map(k.base, &a.base);
        KrMor { src: self.initial(k), tgt: a.clone(), map: k.base.compose(&a.idem, &z) }
    }
    fn cocone(&self, k: &Kr<'_, C>, a: &KObj<C>, b: &KObj<C>) -> Option<Cocone<KObj<C>, KMor<C>>> {
        let x = k.base;
        let base = self.0.cocone(x, &a.base, &b.base)?;
        let sum = SplitObject { base: base.sum.clone(), idem: sum_map(x, self.0, &a.idem, &b.idem)? };
        Some(Cocone {
            inl: KrMor { src: a.clone(), tgt: sum.clone(), map: x.compose(&base.inl, &a.idem) },
            inr: KrMor { src: b.clone(), tgt: sum.clone(), map: x.compose(&base.inr, &b.idem) },
            sum,
        })
    }
    fn copair(&self, k: &Kr<'_, C>, f: &KMor<C>, g: &KMor<C>) -> Option<KMor<C>> {
        if f.tgt != g.tgt {
            return None;
        }
        let sum = self.cocone(k, &f.src, &g.src)?.sum;
        Some(KrMor { src: sum, tgt: f.tgt.clone(), map: self.0.copair(k.base, &f.map, &g.map)? })
    }
}

/// A tabulated `K_r(X)` with the map back to the model.
pub struct KrCategory<'a, C: RestrictionCategory> {
    pub table: FinRCat,
    pub coproducts: Option<TableCoproducts<ObjId, MorId>>,
    pub index: Materialized<Kr<'a, C>>,
}

impl<C: RestrictionCategory> KrCategory<'_, C> {
    pub fn object(&self, base: &C::Obj, idem: &C::Mor) -> Option<ObjId> {
        self.index.obj_index.get(&SplitObject { base: base.clone(), idem: idem.clone() }).copied()
    }

    /// The underlying model map of a tabulated morphism.
    pub fn base_map(&self, f: MorId) -> &C::Mor {
        &self.index.model_mor(f).map
    }
}

/// Tabulate `K_r(X)`; inherited cocones are kept where their sum is in the
/// universe.
pub fn split_idempotents<'a, C: RestrictionCategory, CP: Coproducts<C>>(
    x: &'a C,
    cp: Option<&CP>,
    cap: usize,
) -> Result<KrCategory<'a, C>> {
    let k = Kr::new(x);
    let (table, index) = FinRCat::materialize(&k, cap)?;
    let coproducts = cp.and_then(|cp| {
        TableCoproducts::transport(
            &k,
            &KrCoproducts(cp),
            &index.objs,
            |o| index.obj_index.get(o).copied(),
            |f| index.try_mor(f),
        )
    });
    Ok(KrCategory { table, coproducts, index })
}

/// The wide subcategory of total maps.
pub fn total_subcategory(x: &FinRCat) -> Result<FinCategory> {
    Ok(x.base.subcategory(&|_| true, &|f| is_total(x, &f))?.0)
}

/// Cocones of a restriction category that survive into `Total`.
pub fn total_coproducts(x: &FinRCat, total: &FinCategory, cp: &TableCoproducts<ObjId, MorId>) -> Result<TableCoproducts<ObjId, MorId>> {
    let tr = |f: &MorId| total.morphism_by_name(x.base.mor_name(*f)).ok();
    let objs = x.objects();
    TableCoproducts::transport(x, cp, &objs, |o| Some(*o), tr)
        .ok_or_else(|| CatError::MalformedTable("initial maps are not total".into()))
}

/// Restriction coproducts, a restriction zero and a decision for every
/// `f : C → A + B` (whenever `C + C` is chosen too).
pub fn is_extensive_rcat<C: RestrictionCategory, CP: Coproducts<C>>(c: &C, cp: &CP, opts: CheckOptions) -> LawReport {
    let mut ck = Checker::new(opts);
    if ck.absorb(check_restriction_coproducts(c, cp, opts)) {
        return ck.finish();
    }
    if ck.absorb(check_restriction_zero(c, cp, opts)) {
        return ck.finish();
    }
    let objs = c.objects();
    for a in &objs {
        for b in &objs {
            let Some(k) = cp.cocone(c, a, b) else { continue };
            for src in &objs {
                if cp.cocone(c, src, src).is_none() {
                    continue;
                }
                for f in c.hom(src, &k.sum) {
                    let s = match find_decision(c, cp, &f, &[a.clone(), b.clone()]) {
                        Ok(s) => s,
                        Err(e) => {
                            if ck.fail("decision-error", vec![c.mor_label(&f), e.to_string()]) {
                                return ck.finish();
                            }
                            continue;
                        }
                    };
                    ensure_law!(ck, s.decision.is_some(), "decision-missing", vec![c.mor_label(&f)]);
                    ensure_law!(
                        ck,
                        s.decision.is_none() || (s.unique && s.characterizations_agree),
                        "decision-ambiguous",
                        vec![c.mor_label(&f)]
                    );
                }
            }
        }
    }
    ck.finish()
}

/// A pullback `(P, k : P → C, m : P → A)` of `i : A → S` along `f : C → S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback<O, M> {
    pub object: O,
    pub left: M,
    pub right: M,
}

/// Cones `(u, v)` over the cospan `f, i` from each object of `objs`.
fn cospan_cones<C: Category>(c: &C, f: &C::Mor, i: &C::Mor, objs: &[C::Obj]) -> Vec<BTreeSet<(C::Mor, C::Mor)>> {
    let (src, a) = (c.dom(f), c.dom(i));
    objs.iter()
        .map(|z| {
            let vs = c.hom(z, &a);
            let mut set = BTreeSet::new();
            for u in c.hom(z, &src) {
                let fu = c.compose(f, &u);
                for v in &vs {
                    if fu == c.compose(i, v) {
                        set.insert((u.clone(), v.clone()));
                    }
                }
            }
            set
        })
        .collect()
}

fn universal<C: Category>(
    c: &C,
    p: &C::Obj,
    k: &C::Mor,
    m: &C::Mor,
    objs: &[C::Obj],
    cones: &[BTreeSet<(C::Mor, C::Mor)>],
) -> bool {
    objs.iter().zip(cones).all(|(z, cs)| {
        let ws = c.hom(z, p);
        if ws.len() != cs.len() {
            return false;
        }
        let mut seen = HashSet::with_capacity(cs.len());
        ws.iter().all(|w| {
            let pair = (c.compose(k, w), c.compose(m, w));
            cs.contains(&pair) && seen.insert(pair)
        })
    })
}

/// `(k, m)` is a pullback of `i` along `f`, checked against every object.
pub fn is_pullback<C: Category>(c: &C, f: &C::Mor, i: &C::Mor, k: &C::Mor, m: &C::Mor) -> bool {
    if c.compose(f, k) != c.compose(i, m) {
        return false;
    }
    let objs = c.objects();
    let cones = cospan_cones(c, f, i, &objs);
    universal(c, &c.dom(k), k, m, &objs, &cones)
}

/// First pullback in object/hom order, with the universal property checked
/// against every object of the universe.
pub fn find_pullback<C: Category>(c: &C, f: &C::Mor, i: &C::Mor) -> Option<Pullback<C::Obj, C::Mor>> {
    let objs = c.objects();
    let cones = cospan_cones(c, f, i, &objs);
    for (pi, p) in objs.iter().enumerate() {
        if objs.iter().zip(&cones).any(|(z, cs)| c.hom(z, p).len() != cs.len()) {
            continue;
        }
        for (k, m) in &cones[pi] {
            if universal(c, p, k, m, &objs, &cones) {
                return Some(Pullback { object: p.clone(), left: k.clone(), right: m.clone() });
            }
        }
    }
    None
}

/// Extensivity of a plain category, via its proof: for each demanded
/// coproduct `A + B` and each `f : C → A + B`, pullbacks of both injections
/// along `f` exist and `⟨k|l⟩ : C_A + C_B → C` is invertible.
///
/// Coproducts come from `chosen` when given (their universal property is
/// re-verified), and are searched for otherwise.
pub fn check_extensive_category<C: Category>(
    c: &C,
    pairs: &[(C::Obj, C::Obj)],
    chosen: Option<&dyn Fn(&C::Obj, &C::Obj) -> Option<Cocone<C::Obj, C::Mor>>>,
    opts: CheckOptions,
) -> LawReport {
    let mut ck = Checker::new(opts);
    if c.morphism_count() > opts.cap {
        return LawReport::truncated(c.morphism_count(), opts.cap);
    }
    let objs = c.objects();
    let mut found: HashMap<(C::Obj, C::Obj), Option<Cocone<C::Obj, C::Mor>>> = HashMap::new();
    for (a, b) in pairs {
        let k = match chosen.and_then(|ch| ch(a, b)) {
            Some(k) => {
                ensure_law!(
                    ck,
                    is_coproduct(c, a, b, &k, &objs),
                    "coproduct-not-universal",
                    vec![c.obj_label(a), c.obj_label(b)]
                );
                Some(k)
            }
            None => find_coproduct(c, a, b),
        };
        let Some(k) = k else {
            if ck.fail("coproduct-missing", vec![c.obj_label(a), c.obj_label(b)]) {
                return ck.finish();
            }
            continue;
        };
        for src in &objs {
            for f in c.hom(src, &k.sum) {
                let left = find_pullback(c, &f, &k.inl);
                let right = find_pullback(c, &f, &k.inr);
                let (Some(pl), Some(pr)) = (left, right) else {
                    if ck.fail("pullback-missing", vec![c.mor_label(&f)]) {
                        return ck.finish();
                    }
                    continue;
                };
                let key = (pl.object.clone(), pr.object.clone());
                let sum = found.entry(key).or_insert_with(|| find_coproduct(c, &pl.object, &pr.object)).clone();
                let Some(sum) = sum else {
                    if ck.fail(
                        "coproduct-missing",
                        vec![c.obj_label(&pl.object), c.obj_label(&pr.object), c.mor_label(&f)],
                    ) {
                        return ck.finish();
                    }
                    continue;
                };
                let copair = c
                    .hom(&sum.sum, src)
                    .into_iter()
                    .find(|h| c.compose(h, &sum.inl) == pl.left && c.compose(h, &sum.inr) == pr.left);
                let invertible = copair.as_ref().is_some_and(|h| plain_inverse(c, h).is_some());
                ensure_law!(ck, invertible, "copair-not-invertible", vec![c.mor_label(&f)]);
            }
        }
    }
    ck.finish()
}

/// All pairs of a tabulated structure's chosen cocones.
pub fn chosen_pairs(cp: &TableCoproducts<ObjId, MorId>) -> Vec<(ObjId, ObjId)> {
    cp.cocones.keys().cloned().collect()
}
