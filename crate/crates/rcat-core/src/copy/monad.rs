//! Symmetric monoidal monads, copy monads and equational lifting.

use super::distributive::{Distributive, FinSetDistributive};
use super::{CopyMaps, SymmetricMonoidal};
use crate::category::Category;
use crate::coproduct::sum_map;
use crate::par::PartialFn;
use crate::report::{CheckOptions, Checker, LawReport};

/// `T`, `η`, `μ` and `φ_{A,B} : TA ⊗ TB → T(A ⊗ B)`.
pub trait MonoidalMonad<C: Category> {
    fn obj(&self, c: &C, a: &C::Obj) -> Option<C::Obj>;
    fn map(&self, c: &C, f: &C::Mor) -> Option<C::Mor>;
    fn unit(&self, c: &C, a: &C::Obj) -> Option<C::Mor>;
    fn mult(&self, c: &C, a: &C::Obj) -> Option<C::Mor>;
    fn phi(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor>;
}

/// `ψ_{A,B} = φ_{A,B} (η_A ⊗ 1) : A ⊗ TB → T(A ⊗ B)`
pub fn psi<C, M, T>(c: &C, m: &M, t: &T, a: &C::Obj, b: &C::Obj) -> Option<C::Mor>
where
    C: Category,
    M: SymmetricMonoidal<C> + ?Sized,
    T: MonoidalMonad<C> + ?Sized,
{
    let tb = t.obj(c, b)?;
    let lift = m.tensor(c, &t.unit(c, a)?, &c.identity(&tb))?;
    Some(c.compose(&t.phi(c, a, b)?, &lift))
}

/// The restriction a classifying monad induces on `f : A → TB`:
/// `T(p) ψ_{A,B} ⟨1, f⟩`, with `p = 1 ⊗ ε`.
pub fn monad_restriction<C, M, T>(c: &C, m: &M, t: &T, f: &C::Mor, b: &C::Obj) -> Option<C::Mor>
where
    C: Category,
    M: SymmetricMonoidal<C> + CopyMaps<C> + ?Sized,
    T: MonoidalMonad<C> + ?Sized,
{
    let a = c.dom(f);
    let p = m.tensor(c, &c.identity(&a), &m.discard(c, b)?)?;
    let graph = c.compose(&m.tensor(c, &c.identity(&a), f)?, &m.copy(c, &a)?);
    Some(comp!(c; t.map(c, &p)?, psi(c, m, t, &a, b)?, graph))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityMonad<M>(pub M);

impl<C: Category, M: SymmetricMonoidal<C>> MonoidalMonad<C> for IdentityMonad<M> {
    fn obj(&self, _c: &C, a: &C::Obj) -> Option<C::Obj> {
        Some(a.clone())
    }
    fn map(&self, _c: &C, f: &C::Mor) -> Option<C::Mor> {
        Some(f.clone())
    }
    fn unit(&self, c: &C, a: &C::Obj) -> Option<C::Mor> {
        Some(c.identity(a))
    }
    fn mult(&self, c: &C, a: &C::Obj) -> Option<C::Mor> {
        Some(c.identity(a))
    }
    fn phi(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<C::Mor> {
        Some(c.identity(&self.0.tensor_obj(c, a, b)?))
    }
}

/// `A ↦ A + 1` on a distributive category, with
/// `φ = (A×B + !) δ⁻¹ : (A+1) × (B+1) → A×B + 1`.
pub struct PlusOne<'a, S>(pub &'a S);

impl<S> PlusOne<'_, S> {
    fn point<D: Category>(&self, d: &D, a: &D::Obj) -> Option<D::Mor>
    where
        S: Distributive<D>,
    {
        Some(self.0.cocone(d, a, &self.0.terminal(d))?.inr)
    }

    fn swap<D: Category>(&self, d: &D, a: &D::Obj, b: &D::Obj) -> Option<D::Mor>
    where
        S: Distributive<D>,
    {
        let (_, p, q) = self.0.product(d, a, b)?;
        self.0.pair(d, &q, &p)
    }

    /// The constant map `X → 1 → A + 1`.
    fn nothing<D: Category>(&self, d: &D, x: &D::Obj, a: &D::Obj) -> Option<D::Mor>
    where
        S: Distributive<D>,
    {
        Some(d.compose(&self.point(d, a)?, &self.0.to_terminal(d, x)?))
    }
}

impl<D: Category, S: Distributive<D>> MonoidalMonad<D> for PlusOne<'_, S> {
    fn obj(&self, d: &D, a: &D::Obj) -> Option<D::Obj> {
        Some(self.0.cocone(d, a, &self.0.terminal(d))?.sum)
    }
    fn map(&self, d: &D, f: &D::Mor) -> Option<D::Mor> {
        sum_map(d, self.0, f, &d.identity(&self.0.terminal(d)))
    }
    fn unit(&self, d: &D, a: &D::Obj) -> Option<D::Mor> {
        Some(self.0.cocone(d, a, &self.0.terminal(d))?.inl)
    }
    fn mult(&self, d: &D, a: &D::Obj) -> Option<D::Mor> {
        let ta = self.obj(d, a)?;
        self.0.copair(d, &d.identity(&ta), &self.point(d, a)?)
    }
    fn phi(&self, d: &D, a: &D::Obj, b: &D::Obj) -> Option<D::Mor> {
        let s = self.0;
        let one = s.terminal(d);
        let ta = self.obj(d, a)?;
        let (ab, _, _) = s.product(d, a, b)?;
        let into = s.cocone(d, &ab, &one)?.inl;
        // TA × B → B × (A + 1) → B × A + B × 1 → A × B + 1
        let (b_one, _, _) = s.product(d, b, &one)?;
        let split_b = comp!(d; s.undistribute(d, b, a, &one)?, self.swap(d, &ta, b)?);
        let left = d.compose(&s.copair(d, &d.compose(&into, &self.swap(d, b, a)?), &self.nothing(d, &b_one, &ab)?)?, &split_b);
        let (ta_one, _, _) = s.product(d, &ta, &one)?;
        let outer = s.copair(d, &left, &self.nothing(d, &ta_one, &ab)?)?;
        Some(d.compose(&outer, &s.undistribute(d, &ta, b, &one)?))
    }
}

/// `+1` on FinSet with `φ` sending `(a, ⊥)` to `(a, 0)` instead of `⊥`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReroutedPlusOne;

impl<C: Category<Obj = usize, Mor = PartialFn>> MonoidalMonad<C> for ReroutedPlusOne {
    fn obj(&self, c: &C, a: &usize) -> Option<usize> {
        PlusOne(&FinSetDistributive).obj(c, a)
    }
    fn map(&self, c: &C, f: &PartialFn) -> Option<PartialFn> {
        PlusOne(&FinSetDistributive).map(c, f)
    }
    fn unit(&self, c: &C, a: &usize) -> Option<PartialFn> {
        PlusOne(&FinSetDistributive).unit(c, a)
    }
    fn mult(&self, c: &C, a: &usize) -> Option<PartialFn> {
        PlusOne(&FinSetDistributive).mult(c, a)
    }
    fn phi(&self, c: &C, a: &usize, b: &usize) -> Option<PartialFn> {
        let phi = PlusOne(&FinSetDistributive).phi(c, a, b)?;
        let (a, b) = (*a, *b);
        Some(PartialFn::from_fn(phi.src, phi.tgt, |i| {
            let (x, y) = (i / (b + 1), i % (b + 1));
            if x < a && y == b && b > 0 {
                Some(x * b)
            } else {
                phi.at(i)
            }
        }))
    }
}

/// Monad laws, the symmetric monoidal squares for `φ`, and the copy
/// condition `φ_{B,B} Δ_{TB} = T Δ_B`. When everything holds, the Kleisli
/// copy maps `η Δ` are checked natural against every `f : A → TB`.
pub fn check_copy_monad<C, M, T>(c: &C, m: &M, t: &T, opts: CheckOptions) -> LawReport
where
    C: Category,
    M: SymmetricMonoidal<C> + CopyMaps<C>,
    T: MonoidalMonad<C>,
{
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    let l = |a: &C::Obj| c.obj_label(a);

    for a in &objs {
        let w = || vec![l(a)];
        let laws = (|| {
            let ta = t.obj(c, a)?;
            let (eta, mu) = (t.unit(c, a)?, t.mult(c, a)?);
            let unit_l = c.compose(&mu, &t.unit(c, &ta)?) == c.identity(&ta);
            let unit_r = c.compose(&mu, &t.map(c, &eta)?) == c.identity(&ta);
            let assoc = c.compose(&mu, &t.mult(c, &ta)?) == c.compose(&mu, &t.map(c, &mu)?);
            let ident = t.map(c, &c.identity(a))? == c.identity(&ta);
            Some([unit_l && unit_r, assoc, ident])
        })();
        if let Some([unit, assoc, ident]) = laws {
            ensure_law!(ck, unit, "monad-unit", w());
            ensure_law!(ck, assoc, "monad-associativity", w());
            ensure_law!(ck, ident, "functor", w());
        }
        let copy = (|| {
            let ta = t.obj(c, a)?;
            let lhs = c.compose(&t.phi(c, a, a)?, &m.copy(c, &ta)?);
            Some(lhs == t.map(c, &m.copy(c, a)?)?)
        })();
        if let Some(ok) = copy {
            ensure_law!(ck, ok, "copy-monad", w());
        }
        for b in &objs {
            let w2 = || vec![l(a), l(b)];
            let squares = (|| {
                let (ta, tb) = (t.obj(c, a)?, t.obj(c, b)?);
                let phi = t.phi(c, a, b)?;
                let sym = c.compose(&t.map(c, &m.symmetry(c, a, b)?)?, &phi)
                    == c.compose(&t.phi(c, b, a)?, &m.symmetry(c, &ta, &tb)?);
                let ab = m.tensor_obj(c, a, b)?;
                let unit = c.compose(&phi, &m.tensor(c, &t.unit(c, a)?, &t.unit(c, b)?)?) == t.unit(c, &ab)?;
                let mult = comp!(c; t.mult(c, &ab)?, t.map(c, &phi)?, t.phi(c, &ta, &tb)?)
                    == c.compose(&phi, &m.tensor(c, &t.mult(c, a)?, &t.mult(c, b)?)?);
                Some([sym, unit, mult])
            })();
            if let Some([sym, unit, mult]) = squares {
                ensure_law!(ck, sym, "phi-symmetry", w2());
                ensure_law!(ck, unit, "phi-unit", w2());
                ensure_law!(ck, mult, "phi-multiplication", w2());
            }
        }
    }

    let mors = c.all_morphisms();
    for f in &mors {
        let fl = || vec![c.mor_label(f)];
        let nat = (|| {
            let (a, b) = (c.dom(f), c.cod(f));
            let tf = t.map(c, f)?;
            let unit = c.compose(&tf, &t.unit(c, &a)?) == c.compose(&t.unit(c, &b)?, f);
            let mult = c.compose(&tf, &t.mult(c, &a)?) == c.compose(&t.mult(c, &b)?, &t.map(c, &tf)?);
            Some([unit, mult])
        })();
        if let Some([unit, mult]) = nat {
            ensure_law!(ck, unit, "unit-natural", fl());
            ensure_law!(ck, mult, "mult-natural", fl());
        }
        for g in c.hom_from(&c.cod(f)) {
            if let (Some(tg), Some(tf), Some(tgf)) = (t.map(c, &g), t.map(c, f), t.map(c, &c.compose(&g, f))) {
                ensure_law!(ck, tgf == c.compose(&tg, &tf), "functor", vec![c.mor_label(f), c.mor_label(&g)]);
            }
        }
        for g in &mors {
            let ok = (|| {
                let (a, b, x, y) = (c.dom(f), c.cod(f), c.dom(g), c.cod(g));
                let lhs = c.compose(&t.phi(c, &b, &y)?, &m.tensor(c, &t.map(c, f)?, &t.map(c, g)?)?);
                let rhs = c.compose(&t.map(c, &m.tensor(c, f, g)?)?, &t.phi(c, &a, &x)?);
                Some(lhs == rhs)
            })();
            if let Some(ok) = ok {
                ensure_law!(ck, ok, "phi-natural", vec![c.mor_label(f), c.mor_label(g)]);
            }
        }
    }

    let mut report = ck.finish();
    if report.passed {
        let mut ck = Checker::new(opts);
        'outer: for a in &objs {
            for b in &objs {
                let (Some(tb), Some(db), Some(phi)) = (t.obj(c, b), m.copy(c, b), t.phi(c, b, b)) else { continue };
                let (Some(da), Some(tdb)) = (m.copy(c, a), t.map(c, &db)) else { continue };
                for f in c.hom(a, &tb) {
                    let Some(ff) = m.tensor(c, &f, &f) else { continue };
                    let ok = comp!(c; phi, ff, da) == c.compose(&tdb, &f);
                    if !ok {
                        if ck.fail("kleisli-copy-natural", vec![c.mor_label(&f), l(b)]) {
                            break 'outer;
                        }
                    } else {
                        ck.tick();
                    }
                }
            }
        }
        report.absorb(ck.finish());
    }
    report
}

/// `ψ_{TA,A} Δ_{TA} = T(η_A ⊗ 1) T Δ_A` for every `A`, plus the two
/// classifying equations: the induced restriction of `η_B f` is `η_A` and
/// that of `1 : TA → TA` is `Tη_A`. A pass must imply [`check_copy_monad`]
/// passes.
pub fn check_equational_lifting<C, M, T>(c: &C, m: &M, t: &T, opts: CheckOptions) -> LawReport
where
    C: Category,
    M: SymmetricMonoidal<C> + CopyMaps<C>,
    T: MonoidalMonad<C>,
{
    let mut ck = Checker::new(opts);
    let objs = c.objects();
    let l = |a: &C::Obj| c.obj_label(a);
    for a in &objs {
        let square = (|| {
            let ta = t.obj(c, a)?;
            let lhs = c.compose(&psi(c, m, t, &ta, a)?, &m.copy(c, &ta)?);
            let lift = t.map(c, &m.tensor(c, &t.unit(c, a)?, &c.identity(a))?)?;
            Some(lhs == c.compose(&lift, &t.map(c, &m.copy(c, a)?)?))
        })();
        if let Some(ok) = square {
            ensure_law!(ck, ok, "equational-lifting", vec![l(a)]);
        }
        let ident = (|| {
            let ta = t.obj(c, a)?;
            Some(monad_restriction(c, m, t, &c.identity(&ta), a)? == t.map(c, &t.unit(c, a)?)?)
        })();
        if let Some(ok) = ident {
            ensure_law!(ck, ok, "classifying-identity", vec![l(a)]);
        }
    }
    for f in c.all_morphisms() {
        let unit = (|| {
            let (a, b) = (c.dom(&f), c.cod(&f));
            let ef = c.compose(&t.unit(c, &b)?, &f);
            Some(monad_restriction(c, m, t, &ef, &b)? == t.unit(c, &a)?)
        })();
        if let Some(ok) = unit {
            ensure_law!(ck, ok, "classifying-unit", vec![c.mor_label(&f)]);
        }
    }
    let mut report = ck.finish();
    if report.passed {
        let copy = check_copy_monad(c, m, t, opts);
        if !copy.passed {
            let mut ck = Checker::new(opts);
            let w = copy.violations.first().map(|v| vec![v.law.clone()]).unwrap_or_default();
            ck.fail("lifting-implies-copy", w);
            report.absorb(ck.finish());
        }
    }
    report
}
