//! Distributive categories and distributive copy categories.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{inverse, is_total, plain_inverse, Category, FinCategory, MorId, ObjId, RestrictionCategory};
use crate::coproduct::{
    check_restriction_zero, find_coproduct, find_decision, find_initial, find_terminal, verify_coproducts,
    Cocone, Coproducts, DisjointUnion, TableCoproducts,
};
use crate::error::{CatError, Result};
use crate::format::CategoryFile;
use crate::par::PartialFn;
use crate::product::{find_ordinary_product, KrProducts, ProductStructure};
use crate::report::{CheckOptions, Checker, LawReport};
use crate::split::{is_extensive_rcat, Kr, KrCoproducts};

/// Finite products, finite coproducts and the inverse distributor
/// `δ⁻¹ : A × (B + C) → A × B + A × C`.
pub trait Distributive<D: Category>: Coproducts<D> {
    /// `(A × B, π₁, π₂)`
    fn product(&self, d: &D, a: &D::Obj, b: &D::Obj) -> Option<(D::Obj, D::Mor, D::Mor)>;
    fn pair(&self, d: &D, f: &D::Mor, g: &D::Mor) -> Option<D::Mor>;
    fn terminal(&self, d: &D) -> D::Obj;
    fn to_terminal(&self, d: &D, a: &D::Obj) -> Option<D::Mor>;
    fn undistribute(&self, d: &D, a: &D::Obj, b: &D::Obj, c: &D::Obj) -> Option<D::Mor>;
}

/// `f × g = ⟨f π₁, g π₂⟩`
pub fn cross<D: Category, S: Distributive<D> + ?Sized>(d: &D, s: &S, f: &D::Mor, g: &D::Mor) -> Option<D::Mor> {
    let (_, p, q) = s.product(d, &d.dom(f), &d.dom(g))?;
    s.pair(d, &d.compose(f, &p), &d.compose(g, &q))
}

/// `δ = ⟨1 × i | 1 × j⟩ : A × B + A × C → A × (B + C)`
pub fn distributor<D: Category, S: Distributive<D> + ?Sized>(d: &D, s: &S, a: &D::Obj, b: &D::Obj, c: &D::Obj) -> Option<D::Mor> {
    let k = s.cocone(d, b, c)?;
    let ida = d.identity(a);
    s.copair(d, &cross(d, s, &ida, &k.inl)?, &cross(d, s, &ida, &k.inr)?)
}

/// The products of distributive data as a [`ProductStructure`].
pub struct DistProducts<'a, S>(pub &'a S);

impl<D: Category, S: Distributive<D>> ProductStructure<D> for DistProducts<'_, S> {
    fn product(&self, d: &D, a: &D::Obj, b: &D::Obj) -> Option<D::Obj> {
        self.0.product(d, a, b).map(|p| p.0)
    }
    fn tensor(&self, d: &D, f: &D::Mor, g: &D::Mor) -> Option<D::Mor> {
        cross(d, self.0, f, g)
    }
    fn diagonal(&self, d: &D, a: &D::Obj) -> Option<D::Mor> {
        let id = d.identity(a);
        self.0.pair(d, &id, &id)
    }
    fn proj_left(&self, d: &D, a: &D::Obj, b: &D::Obj) -> Option<D::Mor> {
        self.0.product(d, a, b).map(|p| p.1)
    }
    fn proj_right(&self, d: &D, a: &D::Obj, b: &D::Obj) -> Option<D::Mor> {
        self.0.product(d, a, b).map(|p| p.2)
    }
    fn terminal(&self, d: &D) -> D::Obj {
        self.0.terminal(d)
    }
    fn to_terminal(&self, d: &D, a: &D::Obj) -> D::Mor {
        self.0.to_terminal(d, a).unwrap_or_else(|| panic!("no map {} → 1", d.obj_label(a)))
    }
}

/// FinSet on the skeleton: `A × B` at `a·|B| + b`, `A + B` with `A` first,
/// so `δ⁻¹` is an index formula.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinSetDistributive;

impl<C: Category<Obj = usize, Mor = PartialFn>> Coproducts<C> for FinSetDistributive {
    fn initial(&self, c: &C) -> usize {
        DisjointUnion.initial(c)
    }
    fn initial_map(&self, c: &C, a: &usize) -> PartialFn {
        DisjointUnion.initial_map(c, a)
    }
    fn cocone(&self, c: &C, a: &usize, b: &usize) -> Option<Cocone<usize, PartialFn>> {
        DisjointUnion.cocone(c, a, b)
    }
    fn copair(&self, c: &C, f: &PartialFn, g: &PartialFn) -> Option<PartialFn> {
        DisjointUnion.copair(c, f, g)
    }
}

impl<C: Category<Obj = usize, Mor = PartialFn>> Distributive<C> for FinSetDistributive {
    fn product(&self, _d: &C, a: &usize, b: &usize) -> Option<(usize, PartialFn, PartialFn)> {
        Some((a * b, PartialFn::proj_left(*a, *b), PartialFn::proj_right(*a, *b)))
    }
    fn pair(&self, _d: &C, f: &PartialFn, g: &PartialFn) -> Option<PartialFn> {
        PartialFn::pair(f, g).ok()
    }
    fn terminal(&self, _d: &C) -> usize {
        1
    }
    fn to_terminal(&self, _d: &C, a: &usize) -> Option<PartialFn> {
        Some(PartialFn::total(*a, 1, &vec![0; *a]))
    }
    fn undistribute(&self, _d: &C, a: &usize, b: &usize, c: &usize) -> Option<PartialFn> {
        let (a, b, c) = (*a, *b, *c);
        let bc = b + c;
        Some(PartialFn::from_fn(a * bc, a * b + a * c, |i| {
            let (x, y) = (i / bc, i % bc);
            Some(if y < b { x * b + y } else { a * b + x * c + (y - b) })
        }))
    }
}

/// Distributive data on a finite table, with explicit `δ⁻¹` maps. Triples
/// whose objects fall outside the table are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDistributive<O: Ord, M> {
    pub coproducts: TableCoproducts<O, M>,
    pub products: BTreeMap<(O, O), (O, M, M)>,
    pub terminal: O,
    pub to_terminal: BTreeMap<O, M>,
    pub undistribute: BTreeMap<(O, O, O), M>,
}

impl<C: Category> Coproducts<C> for TableDistributive<C::Obj, C::Mor> {
    fn initial(&self, c: &C) -> C::Obj {
        self.coproducts.initial(c)
    }
    fn initial_map(&self, c: &C, a: &C::Obj) -> C::Mor {
        self.coproducts.initial_map(c, a)
    }
    fn cocone(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<Cocone<C::Obj, C::Mor>> {
        self.coproducts.cocone(c, a, b)
    }
    fn copair(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        self.coproducts.copair(c, f, g)
    }
}

impl<C: Category> Distributive<C> for TableDistributive<C::Obj, C::Mor> {
    fn product(&self, _d: &C, a: &C::Obj, b: &C::Obj) -> Option<(C::Obj, C::Mor, C::Mor)> {
        self.products.get(&(a.clone(), b.clone())).cloned()
    }
    fn pair(&self, d: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        let (p, l, r) = self.products.get(&(d.cod(f), d.cod(g)))?;
        d.hom(&d.dom(f), p).into_iter().find(|h| d.compose(l, h) == *f && d.compose(r, h) == *g)
    }
    fn terminal(&self, _d: &C) -> C::Obj {
        self.terminal.clone()
    }
    fn to_terminal(&self, _d: &C, a: &C::Obj) -> Option<C::Mor> {
        self.to_terminal.get(a).cloned()
    }
    fn undistribute(&self, _d: &C, a: &C::Obj, b: &C::Obj, c: &C::Obj) -> Option<C::Mor> {
        self.undistribute.get(&(a.clone(), b.clone(), c.clone())).cloned()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub object: String,
    pub p: String,
    pub q: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoproductEntry {
    pub left: String,
    pub right: String,
    pub object: String,
    pub inl: String,
    pub inr: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct UndistributeEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub map: String,
}

/// The JSON form of distributive data: a category file plus chosen
/// (co)products and `δ⁻¹` maps, all by name.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DistributiveFile {
    pub category: CategoryFile,
    pub terminal: String,
    pub initial: String,
    pub products: Vec<ProductEntry>,
    pub coproducts: Vec<CoproductEntry>,
    pub undistribute: Vec<UndistributeEntry>,
}

impl DistributiveFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CatError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("distributive files always serialize");
        s.push('\n');
        s
    }

    /// Parse and verify; the category is returned alongside its data.
    pub fn load(&self) -> Result<(FinCategory, TableDistributive<ObjId, MorId>)> {
        let d = self.category.to_category()?;
        let o = |n: &str| d.object_by_name(n);
        let m = |n: &str| d.morphism_by_name(n);
        let terminal = o(&self.terminal)?;
        let initial = o(&self.initial)?;
        let unique = |from: ObjId, to: ObjId| -> Result<MorId> {
            match d.hom(&from, &to).as_slice() {
                [f] => Ok(*f),
                _ => Err(CatError::InvalidDistributiveData(format!("{} → {} is not a single map", d.obj_name(from), d.obj_name(to)))),
            }
        };
        let objs = d.objects();
        let to_terminal = objs.iter().map(|a| Ok((*a, unique(*a, terminal)?))).collect::<Result<_>>()?;
        let initial_maps = objs.iter().map(|a| Ok((*a, unique(initial, *a)?))).collect::<Result<_>>()?;
        let mut products = BTreeMap::new();
        for e in &self.products {
            products.insert((o(&e.left)?, o(&e.right)?), (o(&e.object)?, m(&e.p)?, m(&e.q)?));
        }
        let mut cocones = BTreeMap::new();
        for e in &self.coproducts {
            cocones.insert((o(&e.left)?, o(&e.right)?), Cocone { sum: o(&e.object)?, inl: m(&e.inl)?, inr: m(&e.inr)? });
        }
        let mut undistribute = BTreeMap::new();
        for e in &self.undistribute {
            undistribute.insert((o(&e.a)?, o(&e.b)?, o(&e.c)?), m(&e.map)?);
        }
        let data = TableDistributive {
            coproducts: TableCoproducts { initial, initial_maps, cocones },
            products,
            terminal,
            to_terminal,
            undistribute,
        };
        let report = check_distributive_data(&d, &data, CheckOptions::default());
        if let Some(v) = report.violations.first() {
            return Err(CatError::InvalidDistributiveData(format!("{}: {}", v.law, v.witnesses.join(", "))));
        }
        Ok((d, data))
    }
}

impl TableDistributive<ObjId, MorId> {
    /// Products, coproducts and terminal by search; `δ⁻¹` by inverting `δ`.
    /// Fails when some `δ` inside the table has no inverse.
    pub fn search(d: &FinCategory) -> Result<Self> {
        let invalid = |s: String| CatError::InvalidDistributiveData(s);
        let terminal = find_terminal(d).ok_or_else(|| invalid("no terminal object".into()))?;
        let initial = find_initial(d).ok_or_else(|| invalid("no initial object".into()))?;
        let objs = d.objects();
        let to_terminal = objs.iter().map(|a| (*a, d.hom(a, &terminal)[0])).collect();
        let initial_maps = objs.iter().map(|a| (*a, d.hom(&initial, a)[0])).collect();
        let mut products = BTreeMap::new();
        let mut cocones = BTreeMap::new();
        for a in &objs {
            for b in &objs {
                if let Some(p) = find_ordinary_product(d, a, b).first {
                    products.insert((*a, *b), (p.object, p.left, p.right));
                }
                if let Some(k) = find_coproduct(d, a, b) {
                    cocones.insert((*a, *b), k);
                }
            }
        }
        let mut data = TableDistributive {
            coproducts: TableCoproducts { initial, initial_maps, cocones },
            products,
            terminal,
            to_terminal,
            undistribute: BTreeMap::new(),
        };
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    let Some(delta) = distributor(d, &data, a, b, c) else { continue };
                    let inv = plain_inverse(d, &delta).ok_or_else(|| {
                        invalid(format!("δ is not invertible at ({}, {}, {})", d.obj_name(*a), d.obj_name(*b), d.obj_name(*c)))
                    })?;
                    data.undistribute.insert((*a, *b, *c), inv);
                }
            }
        }
        Ok(data)
    }

    pub fn to_file(&self, d: &FinCategory) -> DistributiveFile {
        let on = |o: &ObjId| d.obj_name(*o).to_string();
        let mn = |m: &MorId| d.mor_name(*m).to_string();
        DistributiveFile {
            category: CategoryFile::from_category(d),
            terminal: on(&self.terminal),
            initial: on(&self.coproducts.initial),
            products: self
                .products
                .iter()
                .map(|((a, b), (p, l, r))| ProductEntry { left: on(a), right: on(b), object: on(p), p: mn(l), q: mn(r) })
                .collect(),
            coproducts: self
                .coproducts
                .cocones
                .iter()
                .map(|((a, b), k)| CoproductEntry { left: on(a), right: on(b), object: on(&k.sum), inl: mn(&k.inl), inr: mn(&k.inr) })
                .collect(),
            undistribute: self
                .undistribute
                .iter()
                .map(|((a, b, c), m)| UndistributeEntry { a: on(a), b: on(b), c: on(c), map: mn(m) })
                .collect(),
        }
    }
}

/// Universal properties of the chosen products, coproducts and terminal,
/// and `δ⁻¹` two-sided inverse to `δ`, over the universe.
pub fn check_distributive_data<D: Category, S: Distributive<D>>(d: &D, s: &S, opts: CheckOptions) -> LawReport {
    let mut ck = Checker::new(opts);
    if ck.absorb(verify_coproducts(d, s, opts)) {
        return ck.finish();
    }
    let objs = d.objects();
    let l = |a: &D::Obj| d.obj_label(a);
    let t = s.terminal(d);
    for z in &objs {
        let ok = d.hom(z, &t).len() == 1 && s.to_terminal(d, z).is_some_and(|m| d.dom(&m) == *z && d.cod(&m) == t);
        ensure_law!(ck, ok, "terminal", vec![l(z)]);
    }
    for a in &objs {
        for b in &objs {
            let Some((p, pl, pr)) = s.product(d, a, b) else { continue };
            let universal = objs.iter().all(|z| {
                let into = d.hom(z, &p);
                let mut seen = std::collections::HashSet::new();
                into.len() == d.hom(z, a).len() * d.hom(z, b).len()
                    && into.iter().all(|h| seen.insert((d.compose(&pl, h), d.compose(&pr, h))))
            });
            ensure_law!(ck, universal, "product-universal", vec![l(a), l(b)]);
        }
    }
    for a in &objs {
        for b in &objs {
            for c in &objs {
                let (Some(delta), Some(inv)) = (distributor(d, s, a, b, c), s.undistribute(d, a, b, c)) else { continue };
                let ok = d.dom(&inv) == d.cod(&delta)
                    && d.cod(&inv) == d.dom(&delta)
                    && d.compose(&inv, &delta) == d.identity(&d.dom(&delta))
                    && d.compose(&delta, &inv) == d.identity(&d.cod(&delta));
                ensure_law!(ck, ok, "undistribute-inverse", vec![l(a), l(b), l(c)]);
            }
        }
    }
    ck.finish()
}

/// `δ = ⟨1⊗i | 1⊗j⟩` in a restriction category with restriction products.
fn copy_distributor<C, CP, P>(c: &C, cp: &CP, ps: &P, a: &C::Obj, b: &C::Obj, x: &C::Obj) -> Option<C::Mor>
where
    C: Category,
    CP: Coproducts<C> + ?Sized,
    P: ProductStructure<C> + ?Sized,
{
    let k = cp.cocone(c, b, x)?;
    let ida = c.identity(a);
    cp.copair(c, &ps.tensor(c, &ida, &k.inl)?, &ps.tensor(c, &ida, &k.inr)?)
}

/// First triple whose distributor is not invertible, by the given test.
fn first_failure<C, CP, P>(
    c: &C,
    cp: &CP,
    ps: &P,
    invertible: impl Fn(&C::Mor) -> bool,
) -> (usize, Option<[C::Obj; 3]>)
where
    C: Category,
    CP: Coproducts<C>,
    P: ProductStructure<C>,
{
    let objs = c.objects();
    let mut checked = 0;
    for a in &objs {
        for b in &objs {
            for x in &objs {
                let Some(delta) = copy_distributor(c, cp, ps, a, b, x) else { continue };
                checked += 1;
                if !invertible(&delta) {
                    return (checked, Some([a.clone(), b.clone(), x.clone()]));
                }
            }
        }
    }
    (checked, None)
}

/// `δ⁻¹ (1 ⊗ (!+!) f) Δ : C → C + C` for `f : C → A + B`; with strict
/// units `C ⊗ (1+1) ≅ C + C` through `δ⁻¹`.
pub fn decision_by_copying<C, CP, P>(c: &C, cp: &CP, ps: &P, f: &C::Mor, a: &C::Obj, b: &C::Obj) -> Option<C::Mor>
where
    C: RestrictionCategory,
    CP: Coproducts<C>,
    P: ProductStructure<C>,
{
    let src = c.dom(f);
    let one = ps.terminal(c);
    let bangs = crate::coproduct::sum_map(c, cp, &ps.to_terminal(c, a), &ps.to_terminal(c, b))?;
    let delta = copy_distributor(c, cp, ps, &src, &one, &one)?;
    let inv = inverse(c, &delta)?;
    let lifted = ps.tensor(c, &c.identity(&src), &c.compose(&bangs, f))?;
    let h = comp!(c; inv, lifted, ps.diagonal(c, &src)?);
    let cc = cp.cocone(c, &src, &src)?;
    (c.cod(&h) == cc.sum).then_some(h)
}

/// A counital copy category with restriction coproducts is distributive
/// when every `δ : A⊗B + A⊗C → A⊗(B+C)` is invertible. Cross-checked
/// against `Total(X)` and `K_r(X)`, and against extensivity: extensive
/// exactly when distributive with a restriction zero, in which case the
/// decision of `f` is `δ⁻¹ (C ⊗ f) Δ`.
pub fn check_distributive_copy<C, CP, P>(c: &C, cp: &CP, ps: &P, opts: CheckOptions) -> LawReport
where
    C: RestrictionCategory,
    CP: Coproducts<C>,
    P: ProductStructure<C>,
{
    let mut ck = Checker::new(opts);
    let labels = |t: &[C::Obj; 3]| t.iter().map(|o| c.obj_label(o)).collect::<Vec<_>>();

    let two_sided = |d: &C::Mor| {
        c.restriction_inverse(d).is_some_and(|g| {
            c.compose(&g, d) == c.identity(&c.dom(d)) && c.compose(d, &g) == c.identity(&c.cod(d))
        })
    };
    let (checked, failure) = first_failure(c, cp, ps, two_sided);
    for _ in 0..checked.saturating_sub(failure.is_some() as usize) {
        ck.tick();
    }
    let distributive = failure.is_none();
    if let Some(t) = &failure {
        if ck.fail("distributivity", labels(t)) {
            return ck.finish();
        }
    }

    // Total(X): δ is total and its inverse lies in Total.
    let in_total = |d: &C::Mor| is_total(c, d) && inverse(c, d).is_some();
    let total_ok = first_failure(c, cp, ps, in_total).1.is_none();
    ensure_law!(ck, total_ok == distributive, "total-distributive", vec![format!("total={total_ok}"), format!("copy={distributive}")]);

    let k = Kr::new(c);
    let kp = KrProducts(ps);
    let kcp = KrCoproducts(cp);
    let kr_ok = first_failure(&k, &kcp, &kp, |d| inverse(&k, d).is_some()).1.is_none();
    ensure_law!(ck, kr_ok == distributive, "kr-distributive", vec![format!("kr={kr_ok}"), format!("copy={distributive}")]);

    let zero = check_restriction_zero(c, cp, opts).passed;
    let extensive = is_extensive_rcat(c, cp, opts).passed;
    let w = || vec![format!("extensive={extensive}"), format!("distributive={distributive}"), format!("zero={zero}")];
    ensure_law!(ck, extensive == (distributive && zero), "extensive-equivalence", w());

    if distributive && zero {
        let objs = c.objects();
        for f in c.all_morphisms() {
            for a in &objs {
                for b in &objs {
                    let Some(k) = cp.cocone(c, a, b) else { continue };
                    if k.sum != c.cod(&f) {
                        continue;
                    }
                    let Some(h) = decision_by_copying(c, cp, ps, &f, a, b) else { continue };
                    let parts = [a.clone(), b.clone()];
                    let Ok(found) = find_decision(c, cp, &f, &parts) else { continue };
                    let ok = found.decision.is_some_and(|dd| dd.h == h);
                    ensure_law!(ck, ok, "decision-by-copying", vec![c.mor_label(&f), c.obj_label(a), c.obj_label(b)]);
                }
            }
        }
    }
    ck.finish()
}
