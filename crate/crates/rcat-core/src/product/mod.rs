//! Restriction products, p-categories and restriction terminal objects.

use std::collections::BTreeMap;

use crate::category::{is_total, restriction_idempotents, Category, RestrictionCategory};
use crate::coproduct::find_terminal;
use crate::error::{CatError, Result};
use crate::par::PartialFn;
use crate::report::{CheckOptions, Checker, LawReport};
use crate::split::{Kr, KrMor, SplitObject};

mod lattice;
mod limit;

pub use lattice::{
    check_substitution, find_ordinary_product, idempotent_lattice, IdempotentLattice, OrdinaryProduct,
    OrdinaryProducts, ParOrdinaryProducts, ProductSearch, SearchedProducts,
};
pub use limit::{
    restriction_limit_of_arrow, restriction_limit_of_diagram, total_equalizer, ArrowLimit, Diagram, DiagramFile,
    DiagramLimit, Equalizer, ShapeArrow, MAX_SHAPE_ARROWS, MAX_SHAPE_NODES,
};

/// `×`, `Δ`, `p`, `q` and a terminal object. Entries outside a truncated
/// universe are `None`; checkers skip the equations that need them.
pub trait ProductStructure<C: Category> {
    fn product(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Obj>;
    fn tensor(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor>;
    fn diagonal(&self, c: &C, a: &C::Obj) -> Option<C::Mor>;
    fn proj_left(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor>;
    fn proj_right(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor>;
    fn terminal(&self, c: &C) -> C::Obj;
    fn to_terminal(&self, c: &C, a: &C::Obj) -> C::Mor;
}

/// Deliberate defects for negative instances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Perturbation {
    #[default]
    None,
    /// `p` forgets the first pair.
    PartialProjection,
    /// `Δ x = (x, x+1)` on objects with at least two elements.
    TwistedDiagonal,
}

/// Cartesian product of finite sets with `f × g` defined where both are.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CartesianPar {
    pub perturbation: Perturbation,
}

impl CartesianPar {
    pub fn perturbed(perturbation: Perturbation) -> Self {
        CartesianPar { perturbation }
    }
}

impl<C: Category<Obj = usize, Mor = PartialFn>> ProductStructure<C> for CartesianPar {
    fn product(&self, _c: &C, a: &usize, b: &usize) -> Option<usize> {
        Some(a * b)
    }
    fn tensor(&self, _c: &C, f: &PartialFn, g: &PartialFn) -> Option<PartialFn> {
        Some(PartialFn::tensor(f, g))
    }
    fn diagonal(&self, _c: &C, a: &usize) -> Option<PartialFn> {
        let a = *a;
        Some(match self.perturbation {
            Perturbation::TwistedDiagonal if a >= 2 => PartialFn::from_fn(a, a * a, |x| Some(x * a + (x + 1) % a)),
            _ => PartialFn::diagonal(a),
        })
    }
    fn proj_left(&self, _c: &C, a: &usize, b: &usize) -> Option<PartialFn> {
        let (a, b) = (*a, *b);
        Some(match self.perturbation {
            Perturbation::PartialProjection => PartialFn::from_fn(a * b, a, |i| (i != 0).then_some(i / b)),
            _ => PartialFn::proj_left(a, b),
        })
    }
    fn proj_right(&self, _c: &C, a: &usize, b: &usize) -> Option<PartialFn> {
        Some(PartialFn::proj_right(*a, *b))
    }
    fn terminal(&self, _c: &C) -> usize {
        1
    }
    fn to_terminal(&self, _c: &C, a: &usize) -> PartialFn {
        PartialFn::total(*a, 1, &vec![0; *a])
    }
}

/// Products in `K_r(X)` inherited from `X`: `(A,e) × (B,e′) = (A×B, e×e′)`.
pub struct KrProducts<'a, P>(pub &'a P);

impl<C: RestrictionCategory, P: ProductStructure<C>> ProductStructure<Kr<'_, C>> for KrProducts<'_, P> {
    fn product(
        &self,
        k: &Kr<'_, C>,
        a: &SplitObject<C::Obj, C::Mor>,
        b: &SplitObject<C::Obj, C::Mor>,
    ) -> Option<SplitObject<C::Obj, C::Mor>> {
        let x = k.base;
        Some(SplitObject { base: self.0.product(x, &a.base, &b.base)?, idem: self.0.tensor(x, &a.idem, &b.idem)? })
    }
    fn tensor(&self, k: &Kr<'_, C>, f: &KrMor<C::Obj, C::Mor>, g: &KrMor<C::Obj, C::Mor>) -> Option<KrMor<C::Obj, C::Mor>> {
        Some(KrMor {
            src: self.product(k, &f.src, &g.src)?,
            tgt: self.product(k, &f.tgt, &g.tgt)?,
            map: self.0.tensor(k.base, &f.map, &g.map)?,
        })
    }
    fn diagonal(&self, k: &Kr<'_, C>, a: &SplitObject<C::Obj, C::Mor>) -> Option<KrMor<C::Obj, C::Mor>> {
        let x = k.base;
        let aa = self.product(k, a, a)?;
        let map = comp!(x; aa.idem, self.0.diagonal(x, &a.base)?, a.idem);
        Some(KrMor { src: a.clone(), tgt: aa, map })
    }
    fn proj_left(
        &self,
        k: &Kr<'_, C>,
        a: &SplitObject<C::Obj, C::Mor>,
        b: &SplitObject<C::Obj, C::Mor>,
    ) -> Option<KrMor<C::Obj, C::Mor>> {
        let ab = self.product(k, a, b)?;
        let map = comp!(k.base; a.idem, self.0.proj_left(k.base, &a.base, &b.base)?, ab.idem);
        Some(KrMor { src: ab, tgt: a.clone(), map })
    }
    fn proj_right(
        &self,
        k: &Kr<'_, C>,
        a: &SplitObject<C::Obj, C::Mor>,
        b: &SplitObject<C::Obj, C::Mor>,
    ) -> Option<KrMor<C::Obj, C::Mor>> {
        let ab = self.product(k, a, b)?;
        let map = comp!(k.base; b.idem, self.0.proj_right(k.base, &a.base, &b.base)?, ab.idem);
        Some(KrMor { src: ab, tgt: b.clone(), map })
    }
    fn terminal(&self, k: &Kr<'_, C>) -> SplitObject<C::Obj, C::Mor> {
        k.full(&self.0.terminal(k.base))
    }
    fn to_terminal(&self, k: &Kr<'_, C>, a: &SplitObject<C::Obj, C::Mor>) -> KrMor<C::Obj, C::Mor> {
        let x = k.base;
        KrMor { src: a.clone(), tgt: self.terminal(k), map: x.compose(&self.0.to_terminal(x, &a.base), &a.idem) }
    }
}

/// Restriction products tabulated by search, for tables with no formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableProducts<O: Ord, M: Ord> {
    pub terminal: O,
    pub to_terminal: BTreeMap<O, M>,
    pub products: BTreeMap<(O, O), (O, M, M)>,
    pub diagonals: BTreeMap<O, M>,
    pub tensors: BTreeMap<(M, M), M>,
}

impl<C: Category> ProductStructure<C> for TableProducts<C::Obj, C::Mor> {
    fn product(&self, _c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Obj> {
        self.products.get(&(a.clone(), b.clone())).map(|t| t.0.clone())
    }
    fn tensor(&self, _c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        self.tensors.get(&(f.clone(), g.clone())).cloned()
    }
    fn diagonal(&self, _c: &C, a: &C::Obj) -> Option<C::Mor> {
        self.diagonals.get(a).cloned()
    }
    fn proj_left(&self, _c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        self.products.get(&(a.clone(), b.clone())).map(|t| t.1.clone())
    }
    fn proj_right(&self, _c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        self.products.get(&(a.clone(), b.clone())).map(|t| t.2.clone())
    }
    fn terminal(&self, _c: &C) -> C::Obj {
        self.terminal.clone()
    }
    fn to_terminal(&self, _c: &C, a: &C::Obj) -> C::Mor {
        self.to_terminal[a].clone()
    }
}

fn total_hom<C: RestrictionCategory>(c: &C, a: &C::Obj, b: &C::Obj) -> Vec<C::Mor> {
    c.hom(a, b).into_iter().filter(|f| is_total(c, f)).collect()
}

/// First `(P, p, q)` in object/hom order that is a product in `Total(X)`.
fn total_product<C: RestrictionCategory>(c: &C, a: &C::Obj, b: &C::Obj) -> Option<(C::Obj, C::Mor, C::Mor)> {
    let objs = c.objects();
    let sizes: Vec<usize> = objs.iter().map(|z| total_hom(c, z, a).len() * total_hom(c, z, b).len()).collect();
    for p in &objs {
        let into: Vec<Vec<C::Mor>> = objs.iter().map(|z| total_hom(c, z, p)).collect();
        if into.iter().zip(&sizes).any(|(h, n)| h.len() != *n) {
            continue;
        }
        for l in total_hom(c, p, a) {
            for r in total_hom(c, p, b) {
                let universal = into.iter().all(|h| {
                    let mut seen = std::collections::HashSet::new();
                    h.iter().all(|k| seen.insert((c.compose(&l, k), c.compose(&r, k))))
                });
                if universal {
                    return Some((p.clone(), l, r));
                }
            }
        }
    }
    None
}

/// Tabulate restriction products by search: products in `Total(X)`, and
/// `f × g` as the unique `h` with `ph = f p r̄h`, `qh = g q r̄h` and
/// `r̄h = r̄(fp) r̄(gq)`. Pairs without a product in the universe are left out.
pub fn search_restriction_products<C: RestrictionCategory>(c: &C) -> Option<TableProducts<C::Obj, C::Mor>> {
    let objs = c.objects();
    let terminal = find_terminal(&crate::category::TotalView(c))?;
    let mut to_terminal = BTreeMap::new();
    for a in &objs {
        to_terminal.insert(a.clone(), total_hom(c, a, &terminal).into_iter().next()?);
    }
    let mut products = BTreeMap::new();
    for a in &objs {
        for b in &objs {
            if let Some(t) = total_product(c, a, b) {
                products.insert((a.clone(), b.clone()), t);
            }
        }
    }
    let mut diagonals = BTreeMap::new();
    for a in &objs {
        let Some((aa, p, q)) = products.get(&(a.clone(), a.clone())) else { continue };
        let one = c.identity(a);
        if let Some(d) = total_hom(c, a, aa).into_iter().find(|d| c.compose(p, d) == one && c.compose(q, d) == one) {
            diagonals.insert(a.clone(), d);
        }
    }
    let mut tensors = BTreeMap::new();
    let morphs = c.all_morphisms();
    for f in &morphs {
        for g in &morphs {
            let key = |x: &C::Mor, y: &C::Mor| (c.dom(x), c.dom(y));
            let (Some((s, p, q)), Some((t, p2, q2))) =
                (products.get(&key(f, g)), products.get(&(c.cod(f), c.cod(g))))
            else {
                continue;
            };
            let (fp, gq) = (c.compose(f, p), c.compose(g, q));
            let dom = c.compose(&c.restriction(&fp), &c.restriction(&gq));
            let found = c.hom(s, t).into_iter().find(|h| {
                c.restriction(h) == dom && c.compose(p2, h) == c.compose(&fp, &dom) && c.compose(q2, h) == c.compose(&gq, &dom)
            });
            if let Some(h) = found {
                tensors.insert((f.clone(), g.clone()), h);
            }
        }
    }
    Some(TableProducts { terminal, to_terminal, products, diagonals, tensors })
}

/// `dom f = p (1 × f) Δ`.
pub fn derive_restriction<C: Category, P: ProductStructure<C> + ?Sized>(c: &C, ps: &P, f: &C::Mor) -> Option<C::Mor> {
    let (a, b) = (c.dom(f), c.cod(f));
    let one_f = ps.tensor(c, &c.identity(&a), f)?;
    let p = ps.proj_left(c, &a, &b)?;
    Some(comp!(c; p, one_f, ps.diagonal(c, &a)?))
}

/// `τ = (q × p) Δ : A × B → B × A`.
pub fn derived_symmetry<C: Category, P: ProductStructure<C> + ?Sized>(
    c: &C,
    ps: &P,
    a: &C::Obj,
    b: &C::Obj,
) -> Option<C::Mor> {
    let ab = ps.product(c, a, b)?;
    let qp = ps.tensor(c, &ps.proj_right(c, a, b)?, &ps.proj_left(c, a, b)?)?;
    Some(c.compose(&qp, &ps.diagonal(c, &ab)?))
}

/// `α = (1 × q)((1 × p) × q) Δ : X × (Y × Z) → (X × Y) × Z`.
pub fn derived_associator<C: Category, P: ProductStructure<C> + ?Sized>(
    c: &C,
    ps: &P,
    x: &C::Obj,
    y: &C::Obj,
    z: &C::Obj,
) -> Option<C::Mor> {
    let yz = ps.product(c, y, z)?;
    let src = ps.product(c, x, &yz)?;
    let xy = ps.product(c, x, y)?;
    let inner = ps.tensor(c, &ps.tensor(c, &c.identity(x), &ps.proj_left(c, y, z)?)?, &ps.proj_right(c, x, &yz)?)?;
    let outer = ps.tensor(c, &c.identity(&xy), &ps.proj_right(c, y, z)?)?;
    Some(comp!(c; outer, inner, ps.diagonal(c, &src)?))
}

fn labels<C: Category>(c: &C, ms: &[&C::Mor]) -> Vec<String> {
    ms.iter().map(|m| c.mor_label(m)).collect()
}

fn composable_pairs<C: Category>(c: &C, morphs: &[C::Mor]) -> Vec<(C::Mor, C::Mor)> {
    let mut by_dom: BTreeMap<C::Obj, Vec<&C::Mor>> = BTreeMap::new();
    for g in morphs {
        by_dom.entry(c.dom(g)).or_default().push(g);
    }
    let mut out = vec![];
    for f in morphs {
        for g in by_dom.get(&c.cod(f)).into_iter().flatten() {
            out.push(((*g).clone(), f.clone()));
        }
    }
    out
}

/// `×` is a functor: `1 × 1 = 1` and `(g × g′)(f × f′) = gf × g′f′`.
fn check_tensor_functor<C: Category, P: ProductStructure<C> + ?Sized>(c: &C, ps: &P, opts: CheckOptions) -> LawReport {
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    for a in &objs {
        for b in &objs {
            let (ia, ib) = (c.identity(a), c.identity(b));
            let (Some(ab), Some(t)) = (ps.product(c, a, b), ps.tensor(c, &ia, &ib)) else { continue };
            ensure_law!(ck, t == c.identity(&ab), "tensor-identity", vec![c.obj_label(a), c.obj_label(b)]);
        }
    }
    let pairs = composable_pairs(c, &c.all_morphisms());
    for (g, f) in &pairs {
        for (g2, f2) in &pairs {
            let (Some(gg), Some(ff), Some(whole)) = (
                ps.tensor(c, g, g2),
                ps.tensor(c, f, f2),
                ps.tensor(c, &c.compose(g, f), &c.compose(g2, f2)),
            ) else {
                continue;
            };
            ensure_law!(ck, c.compose(&gg, &ff) == whole, "tensor-composition", labels(c, &[g, f, g2, f2]));
        }
    }
    ck.finish()
}

/// The restriction-product diagrams: total `Δ, p, q, t`; the triangles
/// `pΔ = 1 = qΔ` and `(p × q)Δ = 1`; lax naturality of `p`, `q` and `Δ`;
/// `r̄(f × g) = r̄f × r̄g`; the terminal laws `t_T = 1`, `t_B f = t_A r̄f`.
/// Also the two consequences `r̄((f × g)Δ) = r̄f r̄g` and `Δf = (f × f)Δ`.
pub fn check_restriction_products<C: RestrictionCategory, P: ProductStructure<C> + ?Sized>(
    c: &C,
    ps: &P,
    opts: CheckOptions,
) -> LawReport {
    let n = c.morphism_count();
    if n > opts.cap {
        return LawReport::truncated(n, opts.cap);
    }
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    let t = ps.terminal(c);
    ensure_law!(ck, ps.to_terminal(c, &t) == c.identity(&t), "terminal-identity", vec![c.obj_label(&t)]);
    for a in &objs {
        let ta = ps.to_terminal(c, a);
        ensure_law!(ck, is_total(c, &ta), "terminal-total", vec![c.mor_label(&ta)]);
        if let (Some(d), Some(p), Some(q)) = (ps.diagonal(c, a), ps.proj_left(c, a, a), ps.proj_right(c, a, a)) {
            ensure_law!(ck, is_total(c, &d), "diagonal-total", vec![c.mor_label(&d)]);
            let one = c.identity(a);
            ensure_law!(ck, c.compose(&p, &d) == one && c.compose(&q, &d) == one, "triangle", vec![c.obj_label(a)]);
        }
        for b in &objs {
            let (Some(ab), Some(p), Some(q)) = (ps.product(c, a, b), ps.proj_left(c, a, b), ps.proj_right(c, a, b))
            else {
                continue;
            };
            ensure_law!(ck, is_total(c, &p), "projection-total", vec![c.mor_label(&p)]);
            ensure_law!(ck, is_total(c, &q), "projection-total", vec![c.mor_label(&q)]);
            if let (Some(d), Some(pq)) = (ps.diagonal(c, &ab), ps.tensor(c, &p, &q)) {
                ensure_law!(
                    ck,
                    c.compose(&pq, &d) == c.identity(&ab),
                    "pairing-of-projections",
                    vec![c.obj_label(a), c.obj_label(b)]
                );
            }
        }
    }
    if ck.absorb(check_tensor_functor(c, ps, opts)) {
        return ck.finish();
    }
    let morphs = c.all_morphisms();
    for f in &morphs {
        let (a, b) = (c.dom(f), c.cod(f));
        let rf = c.restriction(f);
        let lhs = c.compose(&ps.to_terminal(c, &b), f);
        ensure_law!(ck, lhs == c.compose(&ps.to_terminal(c, &a), &rf), "terminal-lax", vec![c.mor_label(f)]);
        if let (Some(da), Some(db), Some(ff)) = (ps.diagonal(c, &a), ps.diagonal(c, &b), ps.tensor(c, f, f)) {
            let df = c.compose(&db, f);
            ensure_law!(ck, df == comp!(c; ff, da, rf), "diagonal-lax", vec![c.mor_label(f)]);
            ensure_law!(ck, df == c.compose(&ff, &da), "diagonal-natural", vec![c.mor_label(f)]);
        }
        for g in &morphs {
            let Some(fg) = ps.tensor(c, f, g) else { continue };
            let rg = c.restriction(g);
            let Some(rr) = ps.tensor(c, &rf, &rg) else { continue };
            ensure_law!(ck, c.restriction(&fg) == rr, "restriction-preserved", labels(c, &[f, g]));
            let (a2, b2) = (c.dom(g), c.cod(g));
            if let (Some(p), Some(p2)) = (ps.proj_left(c, &a, &a2), ps.proj_left(c, &b, &b2)) {
                ensure_law!(ck, c.compose(&p2, &fg) == comp!(c; f, p, rr), "p-lax", labels(c, &[f, g]));
            }
            if let (Some(q), Some(q2)) = (ps.proj_right(c, &a, &a2), ps.proj_right(c, &b, &b2)) {
                ensure_law!(ck, c.compose(&q2, &fg) == comp!(c; g, q, rr), "q-lax", labels(c, &[f, g]));
            }
            if a == a2 {
                if let Some(d) = ps.diagonal(c, &a) {
                    let paired = c.restriction(&c.compose(&fg, &d));
                    ensure_law!(ck, paired == c.compose(&rf, &rg), "restricted-pairing", labels(c, &[f, g]));
                }
            }
        }
    }
    ck.finish()
}

/// Objects must be strictly associative wherever both bracketings exist.
pub fn check_strict<C: Category, P: ProductStructure<C> + ?Sized>(c: &C, ps: &P) -> Result<()> {
    let objs = c.objects();
    for x in &objs {
        for y in &objs {
            for z in &objs {
                let left = ps.product(c, x, y).and_then(|xy| ps.product(c, &xy, z));
                let right = ps.product(c, y, z).and_then(|yz| ps.product(c, x, &yz));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        return Err(CatError::NonStrict(format!(
                            "({}×{})×{} is {} but {}×({}×{}) is {}",
                            c.obj_label(x),
                            c.obj_label(y),
                            c.obj_label(z),
                            c.obj_label(&l),
                            c.obj_label(x),
                            c.obj_label(y),
                            c.obj_label(z),
                            c.obj_label(&r)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The p-category diagrams, with `α` and `τ` derived from `Δ, p, q`, plus
/// agreement of `dom f = p(1 × f)Δ` with the stored restriction.
pub fn check_p_category<C: RestrictionCategory, P: ProductStructure<C> + ?Sized>(
    c: &C,
    ps: &P,
    opts: CheckOptions,
) -> Result<LawReport> {
    check_strict(c, ps)?;
    let n = c.morphism_count();
    if n > opts.cap {
        return Ok(LawReport::truncated(n, opts.cap));
    }
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    for a in &objs {
        if let (Some(d), Some(p), Some(q)) = (ps.diagonal(c, a), ps.proj_left(c, a, a), ps.proj_right(c, a, a)) {
            let one = c.identity(a);
            ensure_law_ok!(ck, c.compose(&p, &d) == one && c.compose(&q, &d) == one, "triangle", vec![c.obj_label(a)]);
        }
        for b in &objs {
            let (Some(ab), Some(p), Some(q)) = (ps.product(c, a, b), ps.proj_left(c, a, b), ps.proj_right(c, a, b))
            else {
                continue;
            };
            if let (Some(d), Some(pq)) = (ps.diagonal(c, &ab), ps.tensor(c, &p, &q)) {
                ensure_law_ok!(
                    ck,
                    c.compose(&pq, &d) == c.identity(&ab),
                    "pairing-of-projections",
                    vec![c.obj_label(a), c.obj_label(b)]
                );
            }
            if let (Some(tau), Some(back)) = (derived_symmetry(c, ps, a, b), derived_symmetry(c, ps, b, a)) {
                ensure_law_ok!(
                    ck,
                    c.compose(&back, &tau) == c.identity(&ab),
                    "symmetry-involution",
                    vec![c.obj_label(a), c.obj_label(b)]
                );
            }
            for z in &objs {
                let wit = || vec![c.obj_label(a), c.obj_label(b), c.obj_label(z)];
                // X × (Y × Z) → X two ways, and (X × Y) × Z → Z two ways.
                if let Some(yz) = ps.product(c, b, z) {
                    let ia = c.identity(a);
                    let parts = (
                        ps.proj_left(c, a, &yz),
                        ps.proj_left(c, b, z).and_then(|pyz| ps.tensor(c, &ia, &pyz)),
                        ps.proj_right(c, b, z).and_then(|qyz| ps.tensor(c, &ia, &qyz)),
                        ps.proj_left(c, a, z),
                    );
                    if let (Some(pxyz), Some(one_p), Some(one_q), Some(pxz)) = parts {
                        let ok = c.compose(&p, &one_p) == pxyz && c.compose(&pxz, &one_q) == pxyz;
                        ensure_law_ok!(ck, ok, "projection-associativity", wit());
                    }
                }
                if let (Some(qxyz), Some(qyz), Some(qxz)) =
                    (ps.proj_right(c, &ab, z), ps.proj_right(c, b, z), ps.proj_right(c, a, z))
                {
                    let (p_one, q_one) = (ps.tensor(c, &p, &c.identity(z)), ps.tensor(c, &q, &c.identity(z)));
                    if let (Some(p_one), Some(q_one)) = (p_one, q_one) {
                        let ok = c.compose(&qxz, &p_one) == qxyz && c.compose(&qyz, &q_one) == qxyz;
                        ensure_law_ok!(ck, ok, "projection-associativity", wit());
                    }
                }
                if let (Some(alpha), Some(yz)) = (derived_associator(c, ps, a, b, z), ps.product(c, b, z)) {
                    let src = ps.product(c, a, &yz);
                    ensure_law_ok!(ck, src.map(|s| c.identity(&s)) == Some(alpha), "associativity", wit());
                }
            }
        }
    }
    if ck.absorb(check_tensor_functor(c, ps, opts)) {
        return Ok(ck.finish());
    }
    let morphs = c.all_morphisms();
    for f in &morphs {
        let (a, b) = (c.dom(f), c.cod(f));
        if let (Some(da), Some(db), Some(ff)) = (ps.diagonal(c, &a), ps.diagonal(c, &b), ps.tensor(c, f, f)) {
            ensure_law_ok!(ck, c.compose(&db, f) == c.compose(&ff, &da), "diagonal-natural", vec![c.mor_label(f)]);
        }
        if let Some(dom) = derive_restriction(c, ps, f) {
            ensure_law_ok!(ck, dom == c.restriction(f), "derived-restriction", vec![c.mor_label(f)]);
        }
        for z in &objs {
            let iz = c.identity(z);
            // p natural in its first argument, q in its second.
            if let (Some(fz), Some(p), Some(p2)) = (ps.tensor(c, f, &iz), ps.proj_left(c, &a, z), ps.proj_left(c, &b, z)) {
                ensure_law_ok!(ck, c.compose(&p2, &fz) == c.compose(f, &p), "p-natural", vec![c.mor_label(f), c.obj_label(z)]);
            }
            if let (Some(zf), Some(q), Some(q2)) = (ps.tensor(c, &iz, f), ps.proj_right(c, z, &a), ps.proj_right(c, z, &b)) {
                ensure_law_ok!(ck, c.compose(&q2, &zf) == c.compose(f, &q), "q-natural", vec![c.obj_label(z), c.mor_label(f)]);
            }
        }
        for g in &morphs {
            let (a2, b2) = (c.dom(g), c.cod(g));
            let parts = (
                ps.tensor(c, f, g),
                ps.tensor(c, g, f),
                derived_symmetry(c, ps, &a, &a2),
                derived_symmetry(c, ps, &b, &b2),
            );
            if let (Some(fg), Some(gf), Some(t1), Some(t2)) = parts {
                ensure_law_ok!(ck, c.compose(&t2, &fg) == c.compose(&gf, &t1), "symmetry-natural", labels(c, &[f, g]));
            }
        }
    }
    Ok(ck.finish())
}

/// The bijection `hom(A, T) ≅ RId(A)` for one object.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RidBijection {
    pub object: String,
    /// `(f, r̄f)` for every `f : A → T`.
    pub maps: Vec<(String, String)>,
    /// `(e, t_A e)` for every restriction idempotent `e` on `A`.
    pub idempotents: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalReport {
    pub report: LawReport,
    pub bijections: Vec<RidBijection>,
}

/// `t_T = 1`, `t_A` total, `t_B f = t_A r̄f`, and `f ↦ r̄f`, `e ↦ t_A e`
/// mutually inverse. With products, also `p : X × T → X` invertible with
/// inverse `(1 × t_X)Δ`.
pub fn restriction_terminal_check<C: RestrictionCategory>(
    c: &C,
    t: &C::Obj,
    to_t: &dyn Fn(&C::Obj) -> C::Mor,
    products: Option<&dyn ProductStructure<C>>,
    opts: CheckOptions,
) -> TerminalReport {
    let mut ck = Checker::new(opts);
    let mut bijections = vec![];
    let objs = c.objects();
    let finish = |ck: &mut Checker, bijections| TerminalReport { report: ck.finish(), bijections };
    macro_rules! law {
        ($cond:expr, $law:expr, $wit:expr) => {
            if !$cond {
                if ck.fail($law, $wit) {
                    return finish(&mut ck, bijections);
                }
            } else {
                ck.tick();
            }
        };
    }
    law!(to_t(t) == c.identity(t), "terminal-identity", vec![c.obj_label(t)]);
    for a in &objs {
        let ta = to_t(a);
        law!(is_total(c, &ta), "terminal-total", vec![c.mor_label(&ta)]);
        let maps = c.hom(a, t);
        let idems = restriction_idempotents(c, a);
        let mut bij = RidBijection { object: c.obj_label(a), maps: vec![], idempotents: vec![] };
        let mut inverse = maps.len() == idems.len();
        for f in &maps {
            let rf = c.restriction(f);
            inverse &= c.compose(&ta, &rf) == *f;
            bij.maps.push((c.mor_label(f), c.mor_label(&rf)));
        }
        for e in &idems {
            let te = c.compose(&ta, e);
            inverse &= c.restriction(&te) == *e;
            bij.idempotents.push((c.mor_label(e), c.mor_label(&te)));
        }
        bijections.push(bij);
        law!(inverse, "rid-bijection", vec![c.obj_label(a), format!("{} maps, {} idempotents", maps.len(), idems.len())]);
        if let Some(ps) = products {
            let (Some(xt), Some(p), Some(d)) = (ps.product(c, a, t), ps.proj_left(c, a, t), ps.diagonal(c, a)) else {
                continue;
            };
            let Some(one_t) = ps.tensor(c, &c.identity(a), &ta) else { continue };
            let inv = c.compose(&one_t, &d);
            let ok = c.compose(&p, &inv) == c.identity(a) && c.compose(&inv, &p) == c.identity(&xt);
            law!(ok, "one-element-object", vec![c.obj_label(a)]);
        }
    }
    for f in c.all_morphisms() {
        let (a, b) = (c.dom(&f), c.cod(&f));
        let lhs = c.compose(&to_t(&b), &f);
        law!(lhs == c.compose(&to_t(&a), &c.restriction(&f)), "terminal-lax", vec![c.mor_label(&f)]);
    }
    finish(&mut ck, bijections)
}

/// Restriction structures that a genuine terminal object or genuine
/// products force to be trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityDiagnostic {
    /// An object with exactly one map, a total one, from every object.
    pub strict_terminal: Option<String>,
    /// Every `A × A` is an ordinary product with total projections and
    /// total diagonal, and the diagonal is natural.
    pub genuine_products: bool,
    pub all_total: bool,
    /// `all_total` holds whenever either hypothesis does.
    pub consistent: bool,
}

pub fn triviality_diagnostic<C: RestrictionCategory>(c: &C) -> TrivialityDiagnostic {
    let objs = c.objects();
    let strict_terminal = objs.iter().find(|t| {
        objs.iter().all(|a| {
            let h = c.hom(a, t);
            h.len() == 1 && is_total(c, &h[0])
        })
    });
    let mut genuine = !objs.is_empty();
    let mut diagonals = BTreeMap::new();
    for a in &objs {
        let Some(w) = find_ordinary_product(c, a, a).first else {
            genuine = false;
            break;
        };
        let one = c.identity(a);
        let d = c.hom(a, &w.object).into_iter().find(|d| c.compose(&w.left, d) == one && c.compose(&w.right, d) == one);
        match d {
            Some(d) if is_total(c, &d) && is_total(c, &w.left) && is_total(c, &w.right) => {
                diagonals.insert(a.clone(), (w, d));
            }
            _ => {
                genuine = false;
                break;
            }
        }
    }
    if genuine {
        // Δ_B f = (f × f) Δ_A with f × f = ⟨f π₁, f π₂⟩.
        genuine = c.all_morphisms().iter().all(|f| {
            let (wa, da) = &diagonals[&c.dom(f)];
            let (wb, db) = &diagonals[&c.cod(f)];
            let (l, r) = (c.compose(f, &wa.left), c.compose(f, &wa.right));
            let ff = c.hom(&wa.object, &wb.object).into_iter().find(|h| c.compose(&wb.left, h) == l && c.compose(&wb.right, h) == r);
            ff.is_some_and(|ff| c.compose(db, f) == c.compose(&ff, da))
        });
    }
    let all_total = c.all_morphisms().iter().all(|f| is_total(c, f));
    let hypothesis = strict_terminal.is_some() || genuine;
    TrivialityDiagnostic {
        strict_terminal: strict_terminal.map(|t| c.obj_label(t)),
        genuine_products: genuine,
        all_total,
        consistent: !hypothesis || all_total,
    }
}
