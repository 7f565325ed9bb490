//! Ordinary products and the lattice of restriction idempotents.

use std::collections::HashSet;

use crate::category::{is_total, plain_inverse, restriction_idempotents, Category, RestrictionCategory};
use crate::coproduct::find_terminal;
use crate::error::{CatError, Result};
use crate::par::PartialFn;
use crate::report::{CheckOptions, Checker, LawReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryProduct<O, M> {
    pub object: O,
    pub left: M,
    pub right: M,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSearch<O, M> {
    /// First witness in object/hom order.
    pub first: Option<OrdinaryProduct<O, M>>,
    /// Every witness span.
    pub witnesses: Vec<OrdinaryProduct<O, M>>,
    /// Distinct objects carrying a witness.
    pub objects: Vec<O>,
    /// Those objects up to isomorphism (1 whenever a product exists).
    pub iso_classes: usize,
}

fn is_universal<C: Category>(c: &C, objs: &[C::Obj], w: &OrdinaryProduct<C::Obj, C::Mor>, a: &C::Obj, b: &C::Obj) -> bool {
    objs.iter().all(|z| {
        let into = c.hom(z, &w.object);
        if into.len() != c.hom(z, a).len() * c.hom(z, b).len() {
            return false;
        }
        let mut seen = HashSet::new();
        into.iter().all(|h| seen.insert((c.compose(&w.left, h), c.compose(&w.right, h))))
    })
}

/// Brute-force search for products in the ordinary sense: spans
/// `A ← P → B` through which every span factors uniquely.
pub fn find_ordinary_product<C: Category>(c: &C, a: &C::Obj, b: &C::Obj) -> ProductSearch<C::Obj, C::Mor> {
    let objs = c.objects();
    let sizes: Vec<usize> = objs.iter().map(|z| c.hom(z, a).len() * c.hom(z, b).len()).collect();
    let mut witnesses = vec![];
    let mut objects: Vec<C::Obj> = vec![];
    for p in &objs {
        if objs.iter().zip(&sizes).any(|(z, n)| c.hom(z, p).len() != *n) {
            continue;
        }
        for l in c.hom(p, a) {
            for r in c.hom(p, b) {
                let w = OrdinaryProduct { object: p.clone(), left: l.clone(), right: r };
                if is_universal(c, &objs, &w, a, b) {
                    if objects.last() != Some(p) {
                        objects.push(p.clone());
                    }
                    witnesses.push(w);
                }
            }
        }
    }
    let mut reps: Vec<&C::Obj> = vec![];
    for o in &objects {
        let iso = reps.iter().any(|r| c.hom(r, o).iter().any(|f| plain_inverse(c, f).is_some()));
        if !iso {
            reps.push(o);
        }
    }
    let iso_classes = reps.len();
    ProductSearch { first: witnesses.first().cloned(), witnesses, objects, iso_classes }
}

/// Products and terminal in the ordinary sense.
pub trait OrdinaryProducts<C: Category> {
    fn product(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<OrdinaryProduct<C::Obj, C::Mor>>;
    /// `⟨f, g⟩ : Z → A × B`.
    fn pair(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor>;
    fn terminal(&self, c: &C) -> Option<C::Obj>;
    fn to_terminal(&self, c: &C, a: &C::Obj) -> Option<C::Mor>;
}

/// Products in `Par`: `A × B` is `A + A×B + B`, where a point defined in
/// only one coordinate lands in the outer summands. The empty set is
/// terminal.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParOrdinaryProducts;

impl ParOrdinaryProducts {
    pub fn size(a: usize, b: usize) -> usize {
        a + a * b + b
    }
}

impl<C: Category<Obj = usize, Mor = PartialFn>> OrdinaryProducts<C> for ParOrdinaryProducts {
    fn product(&self, _c: &C, a: &usize, b: &usize) -> Option<OrdinaryProduct<usize, PartialFn>> {
        let (a, b) = (*a, *b);
        let n = Self::size(a, b);
        let mid = a + a * b;
        let left = PartialFn::from_fn(n, a, |i| match i {
            i if i < a => Some(i),
            i if i < mid => Some((i - a) / b),
            _ => None,
        });
        let right = PartialFn::from_fn(n, b, |i| match i {
            i if i < a => None,
            i if i < mid => Some((i - a) % b),
            i => Some(i - mid),
        });
        Some(OrdinaryProduct { object: n, left, right })
    }
    fn pair(&self, _c: &C, f: &PartialFn, g: &PartialFn) -> Option<PartialFn> {
        if f.src != g.src {
            return None;
        }
        let (a, b) = (f.tgt, g.tgt);
        Some(PartialFn::from_fn(f.src, Self::size(a, b), |x| match (f.at(x), g.at(x)) {
            (Some(u), Some(v)) => Some(a + u * b + v),
            (Some(u), None) => Some(u),
            (None, Some(v)) => Some(a + a * b + v),
            (None, None) => None,
        }))
    }
    fn terminal(&self, _c: &C) -> Option<usize> {
        Some(0)
    }
    fn to_terminal(&self, _c: &C, a: &usize) -> Option<PartialFn> {
        Some(PartialFn::nowhere(*a, 0))
    }
}

/// Ordinary products found by search in the universe; pairings are the
/// unique mediating maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchedProducts;

impl<C: Category> OrdinaryProducts<C> for SearchedProducts {
    fn product(&self, c: &C, a: &C::Obj, b: &C::Obj) -> Option<OrdinaryProduct<C::Obj, C::Mor>> {
        find_ordinary_product(c, a, b).first
    }
    fn pair(&self, c: &C, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        let w = self.product(c, &c.cod(f), &c.cod(g))?;
        c.hom(&c.dom(f), &w.object).into_iter().find(|h| c.compose(&w.left, h) == *f && c.compose(&w.right, h) == *g)
    }
    fn terminal(&self, c: &C) -> Option<C::Obj> {
        find_terminal(c)
    }
    fn to_terminal(&self, c: &C, a: &C::Obj) -> Option<C::Mor> {
        let t = find_terminal(c)?;
        c.hom(a, &t).into_iter().next()
    }
}

/// Restriction idempotents on one object with meet `e e′`, join
/// `r̄⟨e, e′⟩` and bottom `r̄(!_A)`; tables are indexed by `elements`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentLattice<M> {
    pub elements: Vec<M>,
    pub bottom: usize,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub report: LawReport,
}

impl<M: PartialEq> IdempotentLattice<M> {
    pub fn index(&self, e: &M) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

fn join_of<C: RestrictionCategory, P: OrdinaryProducts<C> + ?Sized>(c: &C, op: &P, e: &C::Mor, e2: &C::Mor) -> Result<C::Mor> {
    let pair = op.pair(c, e, e2).ok_or_else(|| CatError::NoProducts(c.mor_label(e)))?;
    Ok(c.restriction(&pair))
}

fn bottom_of<C: RestrictionCategory, P: OrdinaryProducts<C> + ?Sized>(c: &C, op: &P, a: &C::Obj) -> Result<C::Mor> {
    let bang = op.to_terminal(c, a).ok_or_else(|| CatError::NoProducts("no terminal object".into()))?;
    Ok(c.restriction(&bang))
}

/// The lattice of restriction idempotents on `a`, with the distributive
/// lattice laws checked exhaustively.
pub fn idempotent_lattice<C: RestrictionCategory, P: OrdinaryProducts<C> + ?Sized>(
    c: &C,
    op: &P,
    a: &C::Obj,
    opts: CheckOptions,
) -> Result<IdempotentLattice<C::Mor>> {
    let elements = restriction_idempotents(c, a);
    let outside = |m: &C::Mor| CatError::NoProducts(format!("{} is not a restriction idempotent on {}", c.mor_label(m), c.obj_label(a)));
    let find = |m: &C::Mor| elements.iter().position(|x| x == m).ok_or_else(|| outside(m));
    let n = elements.len();
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for (i, e) in elements.iter().enumerate() {
        for (j, e2) in elements.iter().enumerate() {
            meet[i][j] = find(&c.compose(e, e2))?;
            join[i][j] = find(&join_of(c, op, e, e2)?)?;
        }
    }
    let bottom = find(&bottom_of(c, op, a)?)?;
    let top = find(&c.identity(a))?;
    let mut ck = Checker::new(opts);
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
        let w = |is: &[usize]| is.iter().map(|&i| c.mor_label(&elements[i])).collect::<Vec<_>>();
        for x in 0..n {
            law!(join[x][x] == x && meet[x][x] == x, "idempotence", w(&[x]));
            law!(meet[x][bottom] == bottom && join[x][bottom] == x, "bottom", w(&[x]));
            law!(meet[x][top] == x && join[x][top] == top, "top", w(&[x]));
            for y in 0..n {
                law!(join[x][y] == join[y][x] && meet[x][y] == meet[y][x], "commutativity", w(&[x, y]));
                law!(meet[x][join[x][y]] == x && join[x][meet[x][y]] == x, "absorption", w(&[x, y]));
                for z in 0..n {
                    law!(
                        join[join[x][y]][z] == join[x][join[y][z]] && meet[meet[x][y]][z] == meet[x][meet[y][z]],
                        "associativity",
                        w(&[x, y, z])
                    );
                    law!(meet[x][join[y][z]] == join[meet[x][y]][meet[x][z]], "distributivity", w(&[x, y, z]));
                }
            }
        }
        ck.finish()
    };
    Ok(IdempotentLattice { elements, bottom, top, meet, join, report })
}

/// Substitution `RId(f)(e) = r̄(e f)` along `f : A → B` preserves meets,
/// joins and bottom; it preserves top exactly when `f` is total.
pub fn check_substitution<C: RestrictionCategory, P: OrdinaryProducts<C> + ?Sized>(
    c: &C,
    op: &P,
    f: &C::Mor,
    opts: CheckOptions,
) -> Result<LawReport> {
    let (a, b) = (c.dom(f), c.cod(f));
    let subst = |e: &C::Mor| c.restriction(&c.compose(e, f));
    let idems = restriction_idempotents(c, &b);
    let mut ck = Checker::new(opts);
    let fl = c.mor_label(f);
    let bottom_b = bottom_of(c, op, &b)?;
    ensure_law_ok!(ck, subst(&bottom_b) == bottom_of(c, op, &a)?, "substitution-bottom", vec![fl.clone()]);
    let keeps_top = subst(&c.identity(&b)) == c.identity(&a);
    ensure_law_ok!(ck, keeps_top == is_total(c, f), "substitution-top", vec![fl.clone()]);
    for e in &idems {
        for e2 in &idems {
            let wit = || vec![fl.clone(), c.mor_label(e), c.mor_label(e2)];
            ensure_law_ok!(ck, subst(&c.compose(e, e2)) == c.compose(&subst(e), &subst(e2)), "substitution-meet", wit());
            let pair = op.pair(c, e, e2).ok_or_else(|| CatError::NoProducts(c.mor_label(e)))?;
            let lhs = c.restriction(&c.compose(&pair, f));
            ensure_law_ok!(ck, lhs == join_of(c, op, &subst(e), &subst(e2))?, "substitution-join", wit());
        }
    }
    Ok(ck.finish())
}
