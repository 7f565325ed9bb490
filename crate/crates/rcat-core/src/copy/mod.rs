//! Counital copy categories, monoidal monads, the `+1` Kleisli category and
//! the extensive completion built from it.
//!
//! Monoidal data is strict throughout: `A ⊗ I = A`, `(A ⊗ B) ⊗ C = A ⊗ (B ⊗ C)`
//! on the nose, so `1 ⊗ τ ⊗ 1` and friends are plain composites.

use crate::category::{check_restriction_axioms, Category, RestrictionCategory};
use crate::error::{CatError, Result};
use crate::product::ProductStructure;
use crate::report::{CheckOptions, Checker, LawReport};

pub mod completion;
pub mod distributive;
pub mod kleisli;
pub mod monad;

pub use completion::{extensive_completion, Completion};
pub use distributive::{check_distributive_copy, Distributive, FinSetDistributive, TableDistributive};
pub use kleisli::{decision_in_kleisli, kleisli_restriction, Kleisli, KleisliCopy, KleisliCoproducts, KleisliMor};
pub use monad::{check_copy_monad, check_equational_lifting, IdentityMonad, MonoidalMonad, PlusOne};

/// A strict symmetric monoidal structure.
pub trait SymmetricMonoidal<C: Category> {
    fn tensor_obj(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Obj>;
    fn tensor(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor>;
    fn unit(&self, c: &C) -> C::Obj;
    /// `τ : A ⊗ B → B ⊗ A`
    fn symmetry(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor>;
}

/// `Δ_A : A → A ⊗ A` and `ε_A : A → I`.
pub trait CopyMaps<C: Category> {
    fn copy(&self, c: &C, a: &C::Obj) -> Option<C::Mor>;
    fn discard(&self, c: &C, a: &C::Obj) -> Option<C::Mor>;
}

/// Copy data read off restriction products: `ε = t`, `τ = (q × p)Δ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProductsAsCopy<P>(pub P);

impl<C: Category, P: ProductStructure<C>> SymmetricMonoidal<C> for ProductsAsCopy<P> {
    fn tensor_obj(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Obj> {
        self.0.product(c, a, b)
    }
    fn tensor(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        self.0.tensor(c, f, g)
    }
    fn unit(&self, c: &C) -> C::Obj {
        self.0.terminal(c)
    }
    fn symmetry(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        let ab = self.0.product(c, a, b)?;
        let qp = self.0.tensor(c, &self.0.proj_right(c, a, b)?, &self.0.proj_left(c, a, b)?)?;
        Some(c.compose(&qp, &self.0.diagonal(c, &ab)?))
    }
}

impl<C: Category, P: ProductStructure<C>> CopyMaps<C> for ProductsAsCopy<P> {
    fn copy(&self, c: &C, a: &C::Obj) -> Option<C::Mor> {
        self.0.diagonal(c, a)
    }
    fn discard(&self, c: &C, a: &C::Obj) -> Option<C::Mor> {
        Some(self.0.to_terminal(c, a))
    }
}

/// Product data read off copy data: `p = 1 ⊗ ε`, `q = ε ⊗ 1`, `t = ε`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CopyAsProducts<M>(pub M);

impl<C: Category, M: SymmetricMonoidal<C> + CopyMaps<C>> ProductStructure<C> for CopyAsProducts<M> {
    fn product(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Obj> {
        self.0.tensor_obj(c, a, b)
    }
    fn tensor(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        self.0.tensor(c, f, g)
    }
    fn diagonal(&self, c: &C, a: &C::Obj) -> Option<C::Mor> {
        self.0.copy(c, a)
    }
    fn proj_left(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        let p = self.0.tensor(c, &c.identity(a), &self.0.discard(c, b)?)?;
        (c.cod(&p) == *a).then_some(p)
    }
    fn proj_right(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        let q = self.0.tensor(c, &self.0.discard(c, a)?, &c.identity(b))?;
        (c.cod(&q) == *b).then_some(q)
    }
    fn terminal(&self, c: &C) -> C::Obj {
        self.0.unit(c)
    }
    fn to_terminal(&self, c: &C, a: &C::Obj) -> C::Mor {
        self.0.discard(c, a).unwrap_or_else(|| panic!("no discard map on {}", c.obj_label(a)))
    }
}

/// `r̄f = (1 ⊗ ε_B f) Δ_A`, read through the strict unit `A ⊗ I = A`.
pub fn derived_restriction<C: Category, M: SymmetricMonoidal<C> + CopyMaps<C> + ?Sized>(
    c: &C,
    m: &M,
    f: &C::Mor,
) -> Option<C::Mor> {
    let (a, b) = (c.dom(f), c.cod(f));
    let ef = c.compose(&m.discard(c, &b)?, f);
    let r = c.compose(&m.tensor(c, &c.identity(&a), &ef)?, &m.copy(c, &a)?);
    (c.cod(&r) == a).then_some(r)
}

/// A category with copy data, viewed as a restriction category through
/// [`derived_restriction`]. Only meaningful where every map has one.
pub struct DerivedRestriction<'a, C, M> {
    pub base: &'a C,
    pub m: &'a M,
}

impl<C: Category, M> Category for DerivedRestriction<'_, C, M> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    fn objects(&self) -> Vec<C::Obj> {
        self.base.objects()
    }
    fn hom(&self, a: &C::Obj, b: &C::Obj) -> Vec<C::Mor> {
        self.base.hom(a, b)
    }
    fn dom(&self, f: &C::Mor) -> C::Obj {
        self.base.dom(f)
    }
    fn cod(&self, f: &C::Mor) -> C::Obj {
        self.base.cod(f)
    }
    fn identity(&self, a: &C::Obj) -> C::Mor {
        self.base.identity(a)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> C::Mor {
        self.base.compose(g, f)
    }
    fn obj_label(&self, a: &C::Obj) -> String {
        self.base.obj_label(a)
    }
    fn mor_label(&self, f: &C::Mor) -> String {
        self.base.mor_label(f)
    }
}

impl<C: Category, M: SymmetricMonoidal<C> + CopyMaps<C>> RestrictionCategory for DerivedRestriction<'_, C, M> {
    fn restriction(&self, f: &C::Mor) -> C::Mor {
        derived_restriction(self.base, self.m, f)
            .unwrap_or_else(|| panic!("no derived restriction for {}", self.base.mor_label(f)))
    }
}

/// Coassociative, cocommutative, counital, monoidally natural copying on a
/// strict symmetric monoidal category. Instances whose tensor leaves the
/// universe are skipped. When the derived restriction is defined on every
/// map it must satisfy the restriction axioms, and its total maps must be
/// exactly the counit-preserving ones.
pub fn check_counital_copy<C, M>(c: &C, m: &M, opts: CheckOptions) -> LawReport
where
    C: Category,
    M: SymmetricMonoidal<C> + CopyMaps<C>,
{
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    let unit = m.unit(c);
    let l = |a: &C::Obj| c.obj_label(a);
    let id = |a: &C::Obj| c.identity(a);
    let t = |f: &C::Mor, g: &C::Mor| m.tensor(c, f, g);

    for a in &objs {
        let (Some(au), Some(ua)) = (m.tensor_obj(c, a, &unit), m.tensor_obj(c, &unit, a)) else { continue };
        ensure_law!(ck, au == *a && ua == *a, "strictness", vec![l(a)]);
        if let Some(f) = t(&id(a), &id(&unit)) {
            ensure_law!(ck, f == id(a), "strictness", vec![l(a)]);
        }
        if let Some(s) = m.symmetry(c, a, &unit) {
            ensure_law!(ck, s == id(a), "symmetry-unit", vec![l(a)]);
        }
        let (Some(d), Some(e)) = (m.copy(c, a), m.discard(c, a)) else { continue };
        if let Some(aa) = m.tensor_obj(c, a, a) {
            ensure_law!(ck, c.dom(&d) == *a && c.cod(&d) == aa && c.cod(&e) == unit, "copy-shape", vec![l(a)]);
            if let (Some(dl), Some(dr)) = (t(&d, &id(a)), t(&id(a), &d)) {
                ensure_law!(ck, c.compose(&dl, &d) == c.compose(&dr, &d), "coassociativity", vec![l(a)]);
            }
            if let Some(s) = m.symmetry(c, a, a) {
                ensure_law!(ck, c.compose(&s, &d) == d, "cocommutativity", vec![l(a)]);
            }
            if let (Some(el), Some(er)) = (t(&e, &id(a)), t(&id(a), &e)) {
                let ok = c.compose(&el, &d) == id(a) && c.compose(&er, &d) == id(a);
                ensure_law!(ck, ok, "counit", vec![l(a)]);
            }
        }
    }
    if let (Some(d), Some(e)) = (m.copy(c, &unit), m.discard(c, &unit)) {
        ensure_law!(ck, d == id(&unit), "copy-monoidal", vec![l(&unit)]);
        ensure_law!(ck, e == id(&unit), "discard-monoidal", vec![l(&unit)]);
    }

    for a in &objs {
        for b in &objs {
            let Some(ab) = m.tensor_obj(c, a, b) else { continue };
            let w = || vec![l(a), l(b)];
            if let Some(f) = t(&id(a), &id(b)) {
                ensure_law!(ck, f == id(&ab), "tensor-identity", w());
            }
            if let (Some(s), Some(s2)) = (m.symmetry(c, a, b), m.symmetry(c, b, a)) {
                ensure_law!(ck, c.compose(&s2, &s) == id(&ab), "symmetry-involution", w());
            }
            let copies = (m.copy(c, a), m.copy(c, b), m.copy(c, &ab));
            if let (Some(da), Some(db), Some(dab)) = copies {
                let mid = m.symmetry(c, a, b).and_then(|s| t(&t(&id(a), &s)?, &id(b)));
                if let (Some(mid), Some(dd)) = (mid, t(&da, &db)) {
                    ensure_law!(ck, dab == c.compose(&mid, &dd), "copy-monoidal", w());
                }
            }
            if let (Some(ea), Some(eb), Some(eab)) = (m.discard(c, a), m.discard(c, b), m.discard(c, &ab)) {
                if let Some(ee) = t(&ea, &eb) {
                    ensure_law!(ck, eab == ee, "discard-monoidal", w());
                }
            }
            for x in &objs {
                let w3 = || vec![l(a), l(b), l(x)];
                if let (Some(ab_x), Some(bx)) = (m.tensor_obj(c, &ab, x), m.tensor_obj(c, b, x)) {
                    if let Some(a_bx) = m.tensor_obj(c, a, &bx) {
                        ensure_law!(ck, ab_x == a_bx, "strictness", w3());
                    }
                }
                // τ_{A,B⊗X} = (1_B ⊗ τ_{A,X})(τ_{A,B} ⊗ 1_X)
                let hexagon = (|| {
                    let bx = m.tensor_obj(c, b, x)?;
                    let lhs = m.symmetry(c, a, &bx)?;
                    let first = t(&m.symmetry(c, a, b)?, &id(x))?;
                    let second = t(&id(b), &m.symmetry(c, a, x)?)?;
                    Some(lhs == c.compose(&second, &first))
                })();
                if let Some(ok) = hexagon {
                    ensure_law!(ck, ok, "hexagon", w3());
                }
            }
        }
    }

    let mors = c.all_morphisms();
    for f in &mors {
        let (a, b) = (c.dom(f), c.cod(f));
        let fl = || vec![c.mor_label(f)];
        if let (Some(da), Some(db), Some(ff)) = (m.copy(c, &a), m.copy(c, &b), t(f, f)) {
            ensure_law!(ck, c.compose(&db, f) == c.compose(&ff, &da), "copy-natural", fl());
        }
        for g in &mors {
            let (x, y) = (c.dom(g), c.cod(g));
            let Some(fg) = t(f, g) else { continue };
            if let (Some(s1), Some(s2), Some(gf)) = (m.symmetry(c, &a, &x), m.symmetry(c, &b, &y), t(g, f)) {
                let ok = c.compose(&s2, &fg) == c.compose(&gf, &s1);
                ensure_law!(ck, ok, "symmetry-natural", vec![c.mor_label(f), c.mor_label(g)]);
            }
            // interchange; with the one-sided laws below this is functoriality of ⊗
            let (Some(f1), Some(g1), Some(f1b), Some(g1b)) = (t(f, &id(&y)), t(&id(&a), g), t(f, &id(&x)), t(&id(&b), g)) else {
                continue;
            };
            let ok = c.compose(&f1, &g1) == fg && c.compose(&g1b, &f1b) == fg;
            ensure_law!(ck, ok, "tensor-composition", vec![c.mor_label(f), c.mor_label(g)]);
        }
        for f2 in c.hom_from(&b) {
            let f2f = c.compose(&f2, f);
            for x in &objs {
                let sides = [
                    (t(&f2, &id(x)), t(f, &id(x)), t(&f2f, &id(x))),
                    (t(&id(x), &f2), t(&id(x), f), t(&id(x), &f2f)),
                ];
                for (after, before, whole) in sides {
                    let (Some(after), Some(before), Some(whole)) = (after, before, whole) else { continue };
                    let ok = c.compose(&after, &before) == whole;
                    ensure_law!(ck, ok, "tensor-composition", vec![c.mor_label(f), c.mor_label(&f2), c.obj_label(x)]);
                }
            }
        }
    }

    let derived: Option<Vec<C::Mor>> = mors.iter().map(|f| derived_restriction(c, m, f)).collect();
    if let Some(rs) = derived {
        for (f, r) in mors.iter().zip(&rs) {
            let (a, b) = (c.dom(f), c.cod(f));
            let (Some(ea), Some(eb)) = (m.discard(c, &a), m.discard(c, &b)) else { continue };
            let total = *r == id(&a);
            ensure_law!(ck, total == (c.compose(&eb, f) == ea), "total-counit", vec![c.mor_label(f)]);
        }
        if ck.absorb(check_restriction_axioms(&DerivedRestriction { base: c, m }, opts)) {
            return ck.finish();
        }
    }
    ck.finish()
}

/// Derived restriction against a stored one, map by map.
pub fn derived_matches_stored<C, M>(c: &C, m: &M, opts: CheckOptions) -> LawReport
where
    C: RestrictionCategory,
    M: SymmetricMonoidal<C> + CopyMaps<C>,
{
    let mut ck = Checker::new(opts);
    for f in c.all_morphisms() {
        let ok = derived_restriction(c, m, &f).is_some_and(|r| r == c.restriction(&f));
        ensure_law!(ck, ok, "derived-restriction", vec![c.mor_label(&f)]);
    }
    ck.finish()
}

/// A cocommutative comonoid `(C, δ, ε)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comonoid<O, M> {
    pub object: O,
    pub copy: M,
    pub discard: M,
}

/// Every cocommutative comonoid on objects of the universe, found by
/// solving coassociativity, counit and cocommutativity over
/// `hom(C, C⊗C) × hom(C, I)`.
pub fn enumerate_comonoids<C, M>(c: &C, m: &M, opts: CheckOptions) -> Result<Vec<Comonoid<C::Obj, C::Mor>>>
where
    C: Category,
    M: SymmetricMonoidal<C> + ?Sized,
{
    let unit = m.unit(c);
    let mut out = vec![];
    for a in c.objects() {
        let Some(aa) = m.tensor_obj(c, &a, &a) else { continue };
        let Some(tau) = m.symmetry(c, &a, &a) else { continue };
        let copies = c.hom(&a, &aa);
        let discards = c.hom(&a, &unit);
        let count = copies.len() * discards.len();
        if count > opts.cap {
            return Err(CatError::CapExceeded { count, cap: opts.cap });
        }
        let id = c.identity(&a);
        for d in &copies {
            if c.compose(&tau, d) != *d {
                continue;
            }
            let (Some(dl), Some(dr)) = (m.tensor(c, d, &id), m.tensor(c, &id, d)) else { continue };
            if c.compose(&dl, d) != c.compose(&dr, d) {
                continue;
            }
            for e in &discards {
                let (Some(el), Some(er)) = (m.tensor(c, e, &id), m.tensor(c, &id, e)) else { continue };
                if c.compose(&el, d) == id && c.compose(&er, d) == id {
                    out.push(Comonoid { object: a.clone(), copy: d.clone(), discard: e.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// A morphism of `Copy(V)`: a cosemigroup homomorphism `δ_B f = (f⊗f)δ_A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoMor<M> {
    pub src: usize,
    pub tgt: usize,
    pub map: M,
}

/// `Copy(V)` on a list of comonoids; objects are indices into the list.
pub struct CopyOf<'a, C: Category, M> {
    pub base: &'a C,
    pub m: &'a M,
    pub comonoids: Vec<Comonoid<C::Obj, C::Mor>>,
}

impl<'a, C: Category, M: SymmetricMonoidal<C>> CopyOf<'a, C, M> {
    pub fn new(base: &'a C, m: &'a M, comonoids: Vec<Comonoid<C::Obj, C::Mor>>) -> Self {
        CopyOf { base, m, comonoids }
    }

    fn is_hom(&self, i: usize, j: usize, f: &C::Mor) -> bool {
        let (x, y) = (&self.comonoids[i], &self.comonoids[j]);
        self.m
            .tensor(self.base, f, f)
            .is_some_and(|ff| self.base.compose(&y.copy, f) == self.base.compose(&ff, &x.copy))
    }

    fn find(&self, k: &Comonoid<C::Obj, C::Mor>) -> Option<usize> {
        self.comonoids.iter().position(|x| x == k)
    }
}

impl<C: Category, M: SymmetricMonoidal<C>> Category for CopyOf<'_, C, M> {
    type Obj = usize;
    type Mor = CoMor<C::Mor>;
    fn objects(&self) -> Vec<usize> {
        (0..self.comonoids.len()).collect()
    }
    fn hom(&self, a: &usize, b: &usize) -> Vec<CoMor<C::Mor>> {
        let (x, y) = (&self.comonoids[*a].object, &self.comonoids[*b].object);
        self.base
            .hom(x, y)
            .into_iter()
            .filter(|f| self.is_hom(*a, *b, f))
            .map(|map| CoMor { src: *a, tgt: *b, map })
            .collect()
    }
    fn dom(&self, f: &CoMor<C::Mor>) -> usize {
        f.src
    }
    fn cod(&self, f: &CoMor<C::Mor>) -> usize {
        f.tgt
    }
    fn identity(&self, a: &usize) -> CoMor<C::Mor> {
        CoMor { src: *a, tgt: *a, map: self.base.identity(&self.comonoids[*a].object) }
    }
    fn compose(&self, g: &CoMor<C::Mor>, f: &CoMor<C::Mor>) -> CoMor<C::Mor> {
        CoMor { src: f.src, tgt: g.tgt, map: self.base.compose(&g.map, &f.map) }
    }
    fn obj_label(&self, a: &usize) -> String {
        let k = &self.comonoids[*a];
        format!("({}, {})", self.base.obj_label(&k.object), self.base.mor_label(&k.copy))
    }
    fn mor_label(&self, f: &CoMor<C::Mor>) -> String {
        self.base.mor_label(&f.map)
    }
}

/// The tensor of `Copy(V)`: `(A, δ, ε) ⊗ (B, δ′, ε′) = (A⊗B, (1⊗τ⊗1)(δ⊗δ′), ε⊗ε′)`.
pub struct CopyOfStructure;

impl<C: Category, M: SymmetricMonoidal<C>> SymmetricMonoidal<CopyOf<'_, C, M>> for CopyOfStructure {
    fn tensor_obj(&self, k: &CopyOf<'_, C, M>, a: &usize, b: &usize) -> Option<usize> {
        let (c, m) = (k.base, k.m);
        let (x, y) = (&k.comonoids[*a], &k.comonoids[*b]);
        let object = m.tensor_obj(c, &x.object, &y.object)?;
        let mid = m.tensor(c, &m.tensor(c, &c.identity(&x.object), &m.symmetry(c, &x.object, &y.object)?)?, &c.identity(&y.object))?;
        let copy = c.compose(&mid, &m.tensor(c, &x.copy, &y.copy)?);
        let discard = m.tensor(c, &x.discard, &y.discard)?;
        k.find(&Comonoid { object, copy, discard })
    }
    fn tensor(&self, k: &CopyOf<'_, C, M>, f: &CoMor<C::Mor>, g: &CoMor<C::Mor>) -> Option<CoMor<C::Mor>> {
        Some(CoMor {
            src: self.tensor_obj(k, &f.src, &g.src)?,
            tgt: self.tensor_obj(k, &f.tgt, &g.tgt)?,
            map: k.m.tensor(k.base, &f.map, &g.map)?,
        })
    }
    fn unit(&self, k: &CopyOf<'_, C, M>) -> usize {
        let u = k.m.unit(k.base);
        let id = k.base.identity(&u);
        k.find(&Comonoid { object: u, copy: id.clone(), discard: id }).expect("the unit carries the trivial comonoid")
    }
    fn symmetry(&self, k: &CopyOf<'_, C, M>, a: &usize, b: &usize) -> Option<CoMor<C::Mor>> {
        let map = k.m.symmetry(k.base, &k.comonoids[*a].object, &k.comonoids[*b].object)?;
        Some(CoMor { src: self.tensor_obj(k, a, b)?, tgt: self.tensor_obj(k, b, a)?, map })
    }
}

impl<C: Category, M: SymmetricMonoidal<C>> CopyMaps<CopyOf<'_, C, M>> for CopyOfStructure {
    fn copy(&self, k: &CopyOf<'_, C, M>, a: &usize) -> Option<CoMor<C::Mor>> {
        Some(CoMor { src: *a, tgt: self.tensor_obj(k, a, a)?, map: k.comonoids[*a].copy.clone() })
    }
    fn discard(&self, k: &CopyOf<'_, C, M>, a: &usize) -> Option<CoMor<C::Mor>> {
        Some(CoMor { src: *a, tgt: self.unit(k), map: k.comonoids[*a].discard.clone() })
    }
}

/// A one-object category read as a strict monoidal category through a
/// commutative composition: `f ⊗ g = f g`, `τ = 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CommutativeMonoid;

impl<C: Category> SymmetricMonoidal<C> for CommutativeMonoid {
    fn tensor_obj(&self, _c: &C, a: &C::Obj, _b: &C::Obj) -> Option<C::Obj> {
        Some(a.clone())
    }
    fn tensor(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        Some(c.compose(f, g))
    }
    fn unit(&self, c: &C) -> C::Obj {
        c.objects().into_iter().next().expect("a one-object category")
    }
    fn symmetry(&self, c: &C, a: &C::Obj, _b: &C::Obj) -> Option<C::Mor> {
        Some(c.identity(a))
    }
}
