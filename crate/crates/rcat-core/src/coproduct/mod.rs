//! Restriction coproducts, restriction zeros, decisions and matrices.

use std::collections::BTreeMap;

use crate::category::{inverse, is_total, Category, RestrictionCategory};
use crate::par::PartialFn;
use crate::report::{CheckOptions, Checker, LawReport};

pub mod decision;
pub mod extensive;
pub mod fam;
pub mod matrix;

pub use decision::{
    middle_four,
    adding_decisions, decision_from_binary, find_decision, is_decision_of, is_own_decision, Decision,
    DecisionSearch,
};
pub use extensive::{extensive_subcategory, is_extensive_map};
pub use fam::{fam_completion, Family};
pub use matrix::{matrix_decompose, matrix_multiply, matrix_recompose, PartialMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cocone<O, M> {
    pub sum: O,
    pub inl: M,
    pub inr: M,
}

/// Chosen binary coproducts and a chosen initial object.
pub trait Coproducts<C: Category> {
    fn initial(&self, c: &C) -> C::Obj;
    /// `z_A : 0 → A`
    fn initial_map(&self, c: &C, a: &C::Obj) -> C::Mor;
    fn cocone(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<Cocone<C::Obj, C::Mor>>;
    /// `⟨f|g⟩ : dom f + dom g → cod f` out of the chosen cocone.
    fn copair(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor>;
}

/// Disjoint union on finite sets, valid for any category of partial
/// functions keyed by size (Par, FinSet, tabulations through a model).
#[derive(Debug, Clone, Copy, Default)]
pub struct DisjointUnion;

impl<C: Category<Obj = usize, Mor = PartialFn>> Coproducts<C> for DisjointUnion {
    fn initial(&self, _c: &C) -> usize {
        0
    }
    fn initial_map(&self, _c: &C, a: &usize) -> PartialFn {
        PartialFn::nowhere(0, *a)
    }
    fn cocone(&self, _c: &C, a: &usize, b: &usize) -> Option<Cocone<usize, PartialFn>> {
        Some(Cocone { sum: a + b, inl: PartialFn::inl(*a, *b), inr: PartialFn::inr(*a, *b) })
    }
    fn copair(&self, _c: &C, f: &PartialFn, g: &PartialFn) -> Option<PartialFn> {
        PartialFn::copair(f, g).ok()
    }
}

/// Explicitly chosen cocones; copairs are found by search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCoproducts<O: Ord, M> {
    pub initial: O,
    pub initial_maps: BTreeMap<O, M>,
    pub cocones: BTreeMap<(O, O), Cocone<O, M>>,
}

impl<C: Category> Coproducts<C> for TableCoproducts<C::Obj, C::Mor> {
    fn initial(&self, _c: &C) -> C::Obj {
        self.initial.clone()
    }
    fn initial_map(&self, _c: &C, a: &C::Obj) -> C::Mor {
        self.initial_maps[a].clone()
    }
    fn cocone(&self, _c: &C, a: &C::Obj, b: &C::Obj) -> Option<Cocone<C::Obj, C::Mor>> {
        self.cocones.get(&(a.clone(), b.clone())).cloned()
    }
    fn copair(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        let k = self.cocones.get(&(c.dom(f), c.dom(g)))?;
        let z = c.cod(f);
        if c.cod(g) != z {
            return None;
        }
        c.hom(&k.sum, &z).into_iter().find(|h| c.compose(h, &k.inl) == *f && c.compose(h, &k.inr) == *g)
    }
}

impl<O: Ord + Clone, M: Clone> TableCoproducts<O, M> {
    /// Transport a structure along a translation of objects and morphisms,
    /// keeping only the cocones whose data lands inside the target.
    pub fn transport<C, CP>(
        c: &C,
        cp: &CP,
        objects: &[C::Obj],
        obj: impl Fn(&C::Obj) -> Option<O>,
        mor: impl Fn(&C::Mor) -> Option<M>,
    ) -> Option<Self>
    where
        C: Category,
        CP: Coproducts<C>,
    {
        let initial = obj(&cp.initial(c))?;
        let mut initial_maps = BTreeMap::new();
        for a in objects {
            initial_maps.insert(obj(a)?, mor(&cp.initial_map(c, a))?);
        }
        let mut cocones = BTreeMap::new();
        for a in objects {
            for b in objects {
                let Some(k) = cp.cocone(c, a, b) else { continue };
                if let (Some(s), Some(i), Some(j)) = (obj(&k.sum), mor(&k.inl), mor(&k.inr)) {
                    cocones.insert((obj(a)?, obj(b)?), Cocone { sum: s, inl: i, inr: j });
                }
            }
        }
        Some(TableCoproducts { initial, initial_maps, cocones })
    }
}

/// First cocone on `(a, b)` in object/hom order with the coproduct
/// universal property over the universe.
pub fn find_coproduct<C: Category>(c: &C, a: &C::Obj, b: &C::Obj) -> Option<Cocone<C::Obj, C::Mor>> {
    let objs = c.objects();
    let counts: Vec<(usize, usize)> = objs.iter().map(|z| (c.hom(a, z).len(), c.hom(b, z).len())).collect();
    for s in &objs {
        if objs.iter().zip(&counts).any(|(z, (x, y))| c.hom(s, z).len() != x * y) {
            continue;
        }
        let (ls, rs) = (c.hom(a, s), c.hom(b, s));
        for i in &ls {
            for j in &rs {
                let k = Cocone { sum: s.clone(), inl: i.clone(), inr: j.clone() };
                if is_coproduct(c, a, b, &k, &objs) {
                    return Some(k);
                }
            }
        }
    }
    None
}

/// `h ↦ (h i, h j)` is a bijection `hom(S, Z) → hom(A, Z) × hom(B, Z)`.
pub fn is_coproduct<C: Category>(c: &C, a: &C::Obj, b: &C::Obj, k: &Cocone<C::Obj, C::Mor>, objs: &[C::Obj]) -> bool {
    objs.iter().all(|z| {
        let hs = c.hom(&k.sum, z);
        if hs.len() != c.hom(a, z).len() * c.hom(b, z).len() {
            return false;
        }
        let mut seen = std::collections::HashSet::with_capacity(hs.len());
        hs.iter().all(|h| seen.insert((c.compose(h, &k.inl), c.compose(h, &k.inr))))
    })
}

/// First object with exactly one map to every object of the universe.
pub fn find_initial<C: Category>(c: &C) -> Option<C::Obj> {
    let objs = c.objects();
    objs.iter().find(|i| objs.iter().all(|z| c.hom(i, z).len() == 1)).cloned()
}

/// First object with exactly one map from every object of the universe.
pub fn find_terminal<C: Category>(c: &C) -> Option<C::Obj> {
    let objs = c.objects();
    objs.iter().find(|t| objs.iter().all(|z| c.hom(z, t).len() == 1)).cloned()
}

/// Search coproducts for the given pairs (all pairs when `None`); pairs with
/// no coproduct are returned separately.
#[allow(clippy::type_complexity)]
pub fn search_coproducts<C: Category>(
    c: &C,
    pairs: Option<&[(C::Obj, C::Obj)]>,
) -> (Option<TableCoproducts<C::Obj, C::Mor>>, Vec<(C::Obj, C::Obj)>) {
    let objs = c.objects();
    let all: Vec<(C::Obj, C::Obj)> = match pairs {
        Some(p) => p.to_vec(),
        None => objs.iter().flat_map(|a| objs.iter().map(move |b| (a.clone(), b.clone()))).collect(),
    };
    let mut missing = Vec::new();
    let mut cocones = BTreeMap::new();
    for (a, b) in all {
        match find_coproduct(c, &a, &b) {
            Some(k) => {
                cocones.insert((a, b), k);
            }
            None => missing.push((a, b)),
        }
    }
    let Some(initial) = find_initial(c) else { return (None, missing) };
    let initial_maps = objs.iter().map(|a| (a.clone(), c.hom(&initial, a)[0].clone())).collect();
    (Some(TableCoproducts { initial, initial_maps, cocones }), missing)
}

/// Verify the universal property of every chosen cocone and of the initial
/// object over the universe.
pub fn verify_coproducts<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, opts: CheckOptions) -> LawReport {
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    let zero = cp.initial(c);
    for z in &objs {
        let h = c.hom(&zero, z);
        ensure_law!(
            ck,
            h.len() == 1 && h[0] == cp.initial_map(c, z),
            "initial-universal",
            vec![c.obj_label(z)]
        );
    }
    for a in &objs {
        for b in &objs {
            let Some(k) = cp.cocone(c, a, b) else { continue };
            let shape_ok = c.dom(&k.inl) == *a && c.dom(&k.inr) == *b && c.cod(&k.inl) == k.sum && c.cod(&k.inr) == k.sum;
            ensure_law!(ck, shape_ok, "cocone-shape", vec![c.obj_label(a), c.obj_label(b)]);
            if !shape_ok {
                continue;
            }
            let universe: Vec<C::Obj> = objs.clone();
            ensure_law!(
                ck,
                is_coproduct(c, a, b, &k, &universe),
                "coproduct-universal",
                vec![c.obj_label(a), c.obj_label(b)]
            );
        }
    }
    ck.finish()
}

/// `f + g`
pub fn sum_map<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
    let k = cp.cocone(c, &c.cod(f), &c.cod(g))?;
    cp.copair(c, &c.compose(&k.inl, f), &c.compose(&k.inr, g))
}

/// `∇ = ⟨1|1⟩ : A + A → A`
pub fn codiagonal<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, a: &C::Obj) -> Option<C::Mor> {
    let id = c.identity(a);
    cp.copair(c, &id, &id)
}

/// A right-nested n-ary coproduct `B₀ + (B₁ + (… + Bₙ₋₁))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NarySum<O, M> {
    pub parts: Vec<O>,
    pub sum: O,
    pub injections: Vec<M>,
}

pub fn nary_sum<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, parts: &[C::Obj]) -> Option<NarySum<C::Obj, C::Mor>> {
    match parts.len() {
        0 => Some(NarySum { parts: vec![], sum: cp.initial(c), injections: vec![] }),
        1 => Some(NarySum { parts: parts.to_vec(), sum: parts[0].clone(), injections: vec![c.identity(&parts[0])] }),
        _ => {
            let rest = nary_sum(c, cp, &parts[1..])?;
            let k = cp.cocone(c, &parts[0], &rest.sum)?;
            let mut injections = vec![k.inl.clone()];
            injections.extend(rest.injections.iter().map(|i| c.compose(&k.inr, i)));
            Some(NarySum { parts: parts.to_vec(), sum: k.sum, injections })
        }
    }
}

/// `⟨f₀|…|fₙ₋₁⟩ : Σ Bₖ → target`
pub fn nary_copair<C: Category, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    maps: &[C::Mor],
    target: &C::Obj,
) -> Option<C::Mor> {
    match maps.len() {
        0 => Some(cp.initial_map(c, target)),
        1 => Some(maps[0].clone()),
        _ => {
            let rest = nary_copair(c, cp, &maps[1..], target)?;
            cp.copair(c, &maps[0], &rest)
        }
    }
}

/// `Σ fₖ : Σ dom fₖ → Σ cod fₖ`
pub fn nary_sum_map<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, maps: &[C::Mor]) -> Option<C::Mor> {
    let cods: Vec<C::Obj> = maps.iter().map(|f| c.cod(f)).collect();
    let tgt = nary_sum(c, cp, &cods)?;
    let legs: Vec<C::Mor> = maps.iter().zip(&tgt.injections).map(|(f, i)| c.compose(i, f)).collect();
    nary_copair(c, cp, &legs, &tgt.sum)
}

/// The unique map `A → 0`, if `0` is terminal among maps out of `A`.
pub fn to_zero<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, a: &C::Obj) -> Option<C::Mor> {
    let h = c.hom(a, &cp.initial(c));
    (h.len() == 1).then(|| h[0].clone())
}

/// `0_{AB} = z_B t_A`
pub fn zero_map<C: Category, CP: Coproducts<C>>(c: &C, cp: &CP, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
    Some(c.compose(&cp.initial_map(c, b), &to_zero(c, cp, a)?))
}

/// A verified restriction zero: the chosen initial object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroWitness<O> {
    pub zero: O,
}

/// Totality of injections, `z_A` and `∇`, and `r̄(f+g) = r̄f + r̄g`.
pub fn check_restriction_coproducts<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    opts: CheckOptions,
) -> LawReport {
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    for a in &objs {
        let z = cp.initial_map(c, a);
        ensure_law!(ck, is_total(c, &z), "initial-map-total", vec![c.mor_label(&z)]);
    }
    for a in &objs {
        for b in &objs {
            let Some(k) = cp.cocone(c, a, b) else { continue };
            ensure_law!(ck, is_total(c, &k.inl), "injection-total", vec![c.mor_label(&k.inl)]);
            ensure_law!(ck, is_total(c, &k.inr), "injection-total", vec![c.mor_label(&k.inr)]);
        }
        if cp.cocone(c, a, a).is_some() {
            let nabla = codiagonal(c, cp, a);
            ensure_law!(
                ck,
                nabla.as_ref().is_some_and(|n| is_total(c, n)),
                "codiagonal-total",
                vec![c.obj_label(a)]
            );
        }
    }
    let homs: Vec<(C::Obj, C::Obj, Vec<C::Mor>)> = objs
        .iter()
        .flat_map(|a| objs.iter().map(move |b| (a.clone(), b.clone())))
        .map(|(a, b)| {
            let h = c.hom(&a, &b);
            (a, b, h)
        })
        .collect();
    for (a, a2, fs) in &homs {
        for (b, b2, gs) in &homs {
            if cp.cocone(c, a, b).is_none() || cp.cocone(c, a2, b2).is_none() {
                continue;
            }
            for f in fs {
                for g in gs {
                    let lhs = sum_map(c, cp, f, g).map(|s| c.restriction(&s));
                    let rhs = sum_map(c, cp, &c.restriction(f), &c.restriction(g));
                    ensure_law!(
                        ck,
                        lhs.is_some() && lhs == rhs,
                        "restriction-of-sum",
                        vec![c.mor_label(f), c.mor_label(g)]
                    );
                }
            }
        }
    }
    ck.finish()
}

/// Outcome of the three equivalent restriction-zero conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroConditions {
    /// `0` is a zero object and `r̄0_AA = 0_AA`.
    pub zero_idempotents: bool,
    /// initial and terminal objects exist and each `z_A` is restriction monic.
    pub initial_maps_monic: bool,
    /// a terminal object exists and each `t_A` is a restriction retraction.
    pub terminal_retractions: bool,
}

pub fn zero_conditions<C: RestrictionCategory, CP: Coproducts<C>>(c: &C, cp: &CP) -> ZeroConditions {
    let objs = c.objects();
    let zero = cp.initial(c);
    let initial_ok = objs.iter().all(|z| c.hom(&zero, z).len() == 1);
    let zero_terminal = objs.iter().all(|a| c.hom(a, &zero).len() == 1);
    let zero_idempotents = initial_ok
        && zero_terminal
        && objs.iter().all(|a| {
            let z = zero_map(c, cp, a, a).expect("zero is terminal");
            c.restriction(&z) == z
        });
    let terminal = find_terminal(c);
    let initial_maps_monic = initial_ok
        && terminal.is_some()
        && objs.iter().all(|a| {
            let z = cp.initial_map(c, a);
            is_total(c, &z) && c.restriction_inverse(&z).is_some()
        });
    let terminal_retractions = terminal.as_ref().is_some_and(|one| {
        objs.iter().all(|a| {
            let t = c.hom(a, one)[0].clone();
            let id1 = c.identity(one);
            c.hom(one, a).iter().any(|s| {
                let st = c.compose(s, &t);
                c.compose(&t, s) == id1 && c.restriction(&st) == st
            })
        })
    });
    ZeroConditions { zero_idempotents, initial_maps_monic, terminal_retractions }
}

/// The three conditions, evaluated independently, must agree; the check
/// passes when all hold.
pub fn check_restriction_zero<C: RestrictionCategory, CP: Coproducts<C>>(c: &C, cp: &CP, opts: CheckOptions) -> LawReport {
    let mut ck = Checker::new(opts);
    let z = zero_conditions(c, cp);
    let flags = [z.zero_idempotents, z.initial_maps_monic, z.terminal_retractions];
    let agree = flags.iter().all(|&f| f == flags[0]);
    let w = || {
        vec![
            format!("zero_idempotents={}", z.zero_idempotents),
            format!("initial_maps_monic={}", z.initial_maps_monic),
            format!("terminal_retractions={}", z.terminal_retractions),
        ]
    };
    ensure_law!(ck, agree, "zero-conditions-disagree", w());
    ensure_law!(ck, flags[0], "no-restriction-zero", vec![c.obj_label(&cp.initial(c))]);
    ck.finish()
}

/// `i*_k = ⟨0|…|1|…|0⟩ : Σ Bⱼ → Bₖ`, with `i* i = 1` and `i i* = r̄(i*)`
/// asserted.
pub fn injection_retraction<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    sum: &NarySum<C::Obj, C::Mor>,
    k: usize,
) -> crate::Result<C::Mor> {
    let target = &sum.parts[k];
    let mut legs = Vec::with_capacity(sum.parts.len());
    for (j, b) in sum.parts.iter().enumerate() {
        if j == k {
            legs.push(c.identity(b));
        } else {
            legs.push(zero_map(c, cp, b, target).ok_or_else(|| crate::CatError::NoZero(c.obj_label(b)))?);
        }
    }
    let r = nary_copair(c, cp, &legs, target)
        .ok_or_else(|| crate::CatError::NoCoproduct(c.obj_label(&sum.sum), c.obj_label(target)))?;
    let i = &sum.injections[k];
    if c.compose(&r, i) != c.identity(target) || c.compose(i, &r) != c.restriction(&r) {
        return Err(crate::CatError::NoZero(format!("⟨1|0⟩ is not a restriction retraction of injection {k}")));
    }
    Ok(r)
}

/// Binary `i*` and `j*` for the chosen `A + B`.
pub fn binary_retractions<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    a: &C::Obj,
    b: &C::Obj,
) -> crate::Result<(C::Mor, C::Mor)> {
    let s = nary_sum(c, cp, &[a.clone(), b.clone()])
        .ok_or_else(|| crate::CatError::NoCoproduct(c.obj_label(a), c.obj_label(b)))?;
    Ok((injection_retraction(c, cp, &s, 0)?, injection_retraction(c, cp, &s, 1)?))
}

/// `f` is an isomorphism.
pub fn is_iso<C: RestrictionCategory>(c: &C, f: &C::Mor) -> bool {
    inverse(c, f).is_some()
}
