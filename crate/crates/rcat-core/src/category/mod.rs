//! Categories, restriction structure and the basic predicates.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{CatError, Result};

mod laws;
mod table;

pub use laws::{
    check_category_laws, check_derived_invariants, check_restriction_axioms,
    check_restriction_axioms_sampled,
};
pub use table::{FinCategory, FinCategoryBuilder, FinRCat, Materialized, MorId, ObjId};

/// A category with a finite universe of objects to quantify over.
///
/// Composites may leave the universe (a formula model can compose maps of
/// any size); `hom` is only ever asked about objects the caller holds.
pub trait Category {
    type Obj: Clone + Eq + Ord + Hash + Debug;
    type Mor: Clone + Eq + Ord + Hash + Debug;

    fn objects(&self) -> Vec<Self::Obj>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`. Callers guarantee `cod f == dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn obj_label(&self, a: &Self::Obj) -> String {
        format!("{a:?}")
    }
    fn mor_label(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }

    /// Morphisms out of `a` into the universe, in hom order.
    fn hom_from(&self, a: &Self::Obj) -> Vec<Self::Mor> {
        self.objects().iter().flat_map(|b| self.hom(a, b)).collect()
    }

    fn all_morphisms(&self) -> Vec<Self::Mor> {
        self.objects().iter().flat_map(|a| self.hom_from(a)).collect()
    }

    fn morphism_count(&self) -> usize {
        let obs = self.objects();
        obs.iter().map(|a| obs.iter().map(|b| self.hom(a, b).len()).sum::<usize>()).sum()
    }
}

/// A splitting `s ∘ m = 1`, `m ∘ s = e` of an idempotent `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting<O, M> {
    pub object: O,
    /// `m : object → A`
    pub mono: M,
    /// `s : A → object`
    pub retraction: M,
}

pub trait RestrictionCategory: Category {
    /// `r̄f : dom f → dom f`
    fn restriction(&self, f: &Self::Mor) -> Self::Mor;

    /// The unique `g` with `g f = r̄f` and `f g = r̄g`.
    fn restriction_inverse(&self, f: &Self::Mor) -> Option<Self::Mor> {
        search_restriction_inverse(self, f)
    }

    /// A splitting known without search, if the model has one.
    fn canonical_splitting(&self, _e: &Self::Mor) -> Option<Splitting<Self::Obj, Self::Mor>> {
        None
    }
}

pub fn search_restriction_inverse<C: RestrictionCategory + ?Sized>(
    c: &C,
    f: &C::Mor,
) -> Option<C::Mor> {
    let rf = c.restriction(f);
    c.hom(&c.cod(f), &c.dom(f))
        .into_iter()
        .find(|g| c.compose(g, f) == rf && c.compose(f, g) == c.restriction(g))
}

pub fn is_total<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor) -> bool {
    c.restriction(f) == c.identity(&c.dom(f))
}

pub fn is_restriction_idempotent<C: RestrictionCategory + ?Sized>(c: &C, e: &C::Mor) -> bool {
    c.dom(e) == c.cod(e) && c.restriction(e) == *e
}

/// Restriction idempotents on `a`, in hom order.
pub fn restriction_idempotents<C: RestrictionCategory + ?Sized>(c: &C, a: &C::Obj) -> Vec<C::Mor> {
    c.hom(a, a).into_iter().filter(|e| c.restriction(e) == *e).collect()
}

/// `f ≤ g` iff `f = g r̄f`.
pub fn leq<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<bool> {
    if c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) {
        return Err(CatError::NotParallel(format!("{} vs {}", c.mor_label(f), c.mor_label(g))));
    }
    Ok(*f == c.compose(g, &c.restriction(f)))
}

/// Two-sided inverse: a total map whose restriction inverse is total.
pub fn inverse<C: RestrictionCategory + ?Sized>(c: &C, f: &C::Mor) -> Option<C::Mor> {
    if !is_total(c, f) {
        return None;
    }
    c.restriction_inverse(f).filter(|g| is_total(c, g))
}

/// Two-sided inverse in a plain category, by search.
pub fn plain_inverse<C: Category + ?Sized>(c: &C, f: &C::Mor) -> Option<C::Mor> {
    let (a, b) = (c.dom(f), c.cod(f));
    let (ia, ib) = (c.identity(&a), c.identity(&b));
    c.hom(&b, &a).into_iter().find(|g| c.compose(g, f) == ia && c.compose(f, g) == ib)
}

/// Splitting of a restriction idempotent: the model's canonical one if it
/// has one, else the first by search in object order.
pub fn split_idempotent<C: RestrictionCategory + ?Sized>(
    c: &C,
    e: &C::Mor,
) -> Option<Splitting<C::Obj, C::Mor>> {
    if let Some(s) = c.canonical_splitting(e) {
        return Some(s);
    }
    let a = c.dom(e);
    for p in c.objects() {
        let ip = c.identity(&p);
        let sections = c.hom(&a, &p);
        for m in c.hom(&p, &a) {
            if let Some(s) = sections.iter().find(|s| c.compose(s, &m) == ip && c.compose(&m, s) == *e) {
                return Some(Splitting { object: p, mono: m, retraction: s.clone() });
            }
        }
    }
    None
}

/// The wide subcategory of total maps, viewed through the same objects.
pub struct TotalView<'a, C>(pub &'a C);

impl<C: RestrictionCategory> Category for TotalView<'_, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    fn objects(&self) -> Vec<C::Obj> {
        self.0.objects()
    }
    fn hom(&self, a: &C::Obj, b: &C::Obj) -> Vec<C::Mor> {
        self.0.hom(a, b).into_iter().filter(|f| is_total(self.0, f)).collect()
    }
    fn dom(&self, f: &C::Mor) -> C::Obj {
        self.0.dom(f)
    }
    fn cod(&self, f: &C::Mor) -> C::Obj {
        self.0.cod(f)
    }
    fn identity(&self, a: &C::Obj) -> C::Mor {
        self.0.identity(a)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> C::Mor {
        self.0.compose(g, f)
    }
    fn obj_label(&self, a: &C::Obj) -> String {
        self.0.obj_label(a)
    }
    fn mor_label(&self, f: &C::Mor) -> String {
        self.0.mor_label(f)
    }
}

/// A category with the trivial restriction `r̄f = 1`.
pub struct Trivial<'a, C>(pub &'a C);

impl<C: Category> Category for Trivial<'_, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    fn objects(&self) -> Vec<C::Obj> {
        self.0.objects()
    }
    fn hom(&self, a: &C::Obj, b: &C::Obj) -> Vec<C::Mor> {
        self.0.hom(a, b)
    }
    fn dom(&self, f: &C::Mor) -> C::Obj {
        self.0.dom(f)
    }
    fn cod(&self, f: &C::Mor) -> C::Obj {
        self.0.cod(f)
    }
    fn identity(&self, a: &C::Obj) -> C::Mor {
        self.0.identity(a)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> C::Mor {
        self.0.compose(g, f)
    }
    fn obj_label(&self, a: &C::Obj) -> String {
        self.0.obj_label(a)
    }
    fn mor_label(&self, f: &C::Mor) -> String {
        self.0.mor_label(f)
    }
}

impl<C: Category> RestrictionCategory for Trivial<'_, C> {
    fn restriction(&self, f: &C::Mor) -> C::Mor {
        self.0.identity(&self.0.dom(f))
    }
}
