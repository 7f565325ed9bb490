//! Restriction limits: of a single arrow, of a finite diagram, and
//! equalizers of total maps through separable objects.

use std::collections::{BTreeMap, HashSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use serde::{Deserialize, Serialize};

use super::ProductStructure;
use crate::category::{is_total, split_idempotent, Category, FinCategory, MorId, ObjId, RestrictionCategory};
use crate::error::{CatError, Result};
use crate::report::{CheckOptions, Checker, LawReport};

/// Beyond this shape size lax cones are sampled instead of enumerated.
pub const MAX_SHAPE_NODES: usize = 4;
pub const MAX_SHAPE_ARROWS: usize = 6;

/// A diagram on the free category of a finite acyclic graph: each node is
/// sent to an object and each edge `(from, to, f)` to `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram<O, M> {
    pub nodes: Vec<O>,
    pub arrows: Vec<(usize, usize, M)>,
}

impl<O: Clone + Eq, M: Clone> Diagram<O, M> {
    pub fn validate<C: Category<Obj = O, Mor = M>>(&self, c: &C) -> Result<()> {
        for (k, (i, j, f)) in self.arrows.iter().enumerate() {
            let (Some(a), Some(b)) = (self.nodes.get(*i), self.nodes.get(*j)) else {
                return Err(CatError::InvalidDiagram(format!("arrow {k} names a missing node")));
            };
            if c.dom(f) != *a || c.cod(f) != *b {
                return Err(CatError::InvalidDiagram(format!("arrow {k}: {} does not go {i} → {j}", c.mor_label(f))));
            }
        }
        // Kahn's algorithm; a leftover node sits on a cycle.
        let mut indeg = vec![0usize; self.nodes.len()];
        for (_, j, _) in &self.arrows {
            indeg[*j] += 1;
        }
        let mut ready: Vec<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = ready.pop() {
            seen += 1;
            for (a, j, _) in &self.arrows {
                if *a == i {
                    indeg[*j] -= 1;
                    if indeg[*j] == 0 {
                        ready.push(*j);
                    }
                }
            }
        }
        if seen != self.nodes.len() {
            return Err(CatError::InvalidDiagram("shape has a cycle".into()));
        }
        Ok(())
    }

    /// `S` of every non-empty path out of node `i`.
    fn paths_from<C: Category<Obj = O, Mor = M>>(&self, c: &C, i: usize) -> Vec<M> {
        let mut out = vec![];
        let mut stack: Vec<(usize, M)> =
            self.arrows.iter().filter(|(a, _, _)| *a == i).map(|(_, j, f)| (*j, f.clone())).collect();
        while let Some((j, f)) = stack.pop() {
            for (a, k, g) in &self.arrows {
                if *a == j {
                    stack.push((*k, c.compose(g, &f)));
                }
            }
            out.push(f);
        }
        out
    }

    fn is_large(&self) -> bool {
        self.nodes.len() > MAX_SHAPE_NODES || self.arrows.len() > MAX_SHAPE_ARROWS
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowLimit<O, M> {
    pub object: O,
    /// `p : P → X`
    pub p: M,
    /// `s : X → P`
    pub s: M,
    pub report: LawReport,
}

/// The restriction limit of `f : X → Y` is a splitting of `r̄f`. The
/// universal property is checked against every lax cone `(q, q′)`,
/// `q′ = f q r̄q′`: exactly one `r` with `p r = q r̄q′`.
pub fn restriction_limit_of_arrow<C: RestrictionCategory>(
    c: &C,
    f: &C::Mor,
    opts: CheckOptions,
) -> Option<ArrowLimit<C::Obj, C::Mor>> {
    let x = c.dom(f);
    let rf = c.restriction(f);
    let (object, p, s) = if rf == c.identity(&x) {
        (x.clone(), rf.clone(), rf.clone())
    } else {
        let sp = split_idempotent(c, &rf)?;
        (sp.object, sp.mono, sp.retraction)
    };
    let mut ck = Checker::new(opts);
    let report = 'laws: {
        let one = c.identity(&object);
        if c.compose(&s, &p) != one || c.compose(&p, &s) != rf {
            ck.fail("splitting", vec![c.mor_label(&rf)]);
            break 'laws ck.finish();
        }
        for q_obj in c.objects() {
            // Uniqueness: p is monic on hom(Q, P).
            let mut seen = HashSet::new();
            if !c.hom(&q_obj, &object).iter().all(|r| seen.insert(c.compose(&p, r))) {
                if ck.fail("universal-property", vec![c.obj_label(&q_obj), "not unique".into()]) {
                    break 'laws ck.finish();
                }
            }
            let outs = c.hom(&q_obj, &c.cod(f));
            for q in c.hom(&q_obj, &x) {
                let fq = c.compose(f, &q);
                for q2 in &outs {
                    let rq2 = c.restriction(q2);
                    if *q2 != c.compose(&fq, &rq2) {
                        continue;
                    }
                    let target = c.compose(&q, &rq2);
                    let r = comp!(c; s, target);
                    if c.compose(&p, &r) != target {
                        if ck.fail("universal-property", vec![c.mor_label(&q), c.mor_label(q2)]) {
                            break 'laws ck.finish();
                        }
                    } else {
                        ck.tick();
                    }
                }
            }
        }
        ck.finish()
    };
    Some(ArrowLimit { object, p, s, report })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramLimit<O, M> {
    pub apex: O,
    /// `i_C p_C` for each node.
    pub legs: Vec<M>,
    /// `e_C` for each node.
    pub idempotents: Vec<M>,
    /// Lax cones were sampled rather than enumerated.
    pub sampled: bool,
    pub lax_cones: usize,
    pub report: LawReport,
}

/// Every assignment of maps `m → S(node)` satisfying `accept` on each
/// arrow whose ends are assigned, by backtracking in node order.
fn cones<M: Clone>(
    homs: &[Vec<M>],
    arrows: &[(usize, usize)],
    accept: &dyn Fn(usize, &M, &M) -> bool,
    limit: usize,
) -> Vec<Vec<M>> {
    fn go<M: Clone>(
        k: usize,
        homs: &[Vec<M>],
        arrows: &[(usize, usize)],
        accept: &dyn Fn(usize, &M, &M) -> bool,
        cur: &mut Vec<M>,
        out: &mut Vec<Vec<M>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == homs.len() {
            out.push(cur.clone());
            return;
        }
        for m in &homs[k] {
            cur.push(m.clone());
            let ok = arrows.iter().enumerate().all(|(e, &(i, j))| {
                let top = i.max(j);
                top != k || accept(e, &cur[i], &cur[j])
            });
            if ok {
                go(k + 1, homs, arrows, accept, cur, out, limit);
            }
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, homs, arrows, accept, &mut Vec::with_capacity(homs.len()), &mut out, limit);
    out
}

fn total_hom<C: RestrictionCategory>(c: &C, a: &C::Obj, b: &C::Obj) -> Vec<C::Mor> {
    c.hom(a, b).into_iter().filter(|f| is_total(c, f)).collect()
}

/// The restriction limit of a finite diagram in a split restriction
/// category whose total maps have the needed limits: restrict each node to
/// `e_C`, the meet of `r̄(Sf)` over paths out of `C`; split to `S′`; take the
/// limit of `S′` among total maps; return the legs `i_C p_C`.
///
/// The universal property checked is: for every lax cone `q` from `M` with
/// `e = Π r̄q_C`, exactly one `f : M → L` has `r̄f = e` and `leg_C f = q_C e`.
pub fn restriction_limit_of_diagram<C: RestrictionCategory>(
    c: &C,
    d: &Diagram<C::Obj, C::Mor>,
    opts: CheckOptions,
) -> Result<DiagramLimit<C::Obj, C::Mor>> {
    d.validate(c)?;
    let n = d.nodes.len();
    let mut idempotents = Vec::with_capacity(n);
    let mut splits = Vec::with_capacity(n);
    for (i, a) in d.nodes.iter().enumerate() {
        let e = d.paths_from(c, i).iter().fold(c.identity(a), |acc, f| c.compose(&acc, &c.restriction(f)));
        let sp = if e == c.identity(a) {
            crate::category::Splitting { object: a.clone(), mono: e.clone(), retraction: e.clone() }
        } else {
            split_idempotent(c, &e).ok_or_else(|| CatError::NotSplit(c.mor_label(&e)))?
        };
        idempotents.push(e);
        splits.push(sp);
    }
    // S′u = r_D S(u) i_C
    let shape: Vec<(usize, usize)> = d.arrows.iter().map(|(i, j, _)| (*i, *j)).collect();
    let restricted: Vec<C::Mor> =
        d.arrows.iter().map(|(i, j, f)| comp!(c; splits[*j].retraction, f, splits[*i].mono)).collect();
    let objs = c.objects();
    let total_cone = |e: usize, a: &C::Mor, b: &C::Mor| c.compose(&restricted[e], a) == *b;
    let total_cones: Vec<Vec<Vec<C::Mor>>> = objs
        .iter()
        .map(|z| {
            let homs: Vec<Vec<C::Mor>> = splits.iter().map(|s| total_hom(c, z, &s.object)).collect();
            cones(&homs, &shape, &total_cone, usize::MAX)
        })
        .collect();
    let mut found = None;
    'search: for (li, l) in objs.iter().enumerate() {
        let into: Vec<Vec<C::Mor>> = objs.iter().map(|z| total_hom(c, z, l)).collect();
        if into.iter().zip(&total_cones).any(|(h, k)| h.len() != k.len()) {
            continue;
        }
        for lam in &total_cones[li] {
            let universal = into.iter().all(|h| {
                let mut seen = HashSet::new();
                h.iter().all(|k| seen.insert(lam.iter().map(|p| c.compose(p, k)).collect::<Vec<_>>()))
            });
            if universal {
                found = Some((l.clone(), lam.clone()));
                break 'search;
            }
        }
    }
    let (apex, lam) = found.ok_or_else(|| {
        CatError::NoTotalLimit(d.nodes.iter().map(|a| c.obj_label(a)).collect::<Vec<_>>().join(", "))
    })?;
    let legs: Vec<C::Mor> = lam.iter().zip(&splits).map(|(p, s)| c.compose(&s.mono, p)).collect();

    let sampled = d.is_large();
    let limit = if sampled { opts.cap } else { usize::MAX };
    let mut rng = StdRng::seed_from_u64(0);
    let maps: Vec<&C::Mor> = d.arrows.iter().map(|(_, _, f)| f).collect();
    let lax = |e: usize, a: &C::Mor, b: &C::Mor| *b == comp!(c; maps[e], a, c.restriction(b));
    let mut ck = Checker::new(opts);
    let mut lax_cones = 0;
    let report = 'laws: {
        let wit = |q: &[C::Mor]| q.iter().map(|m| c.mor_label(m)).collect::<Vec<_>>();
        if !shape.iter().enumerate().all(|(e, &(i, j))| lax(e, &legs[i], &legs[j])) {
            ck.fail("lax-cone", wit(&legs));
            break 'laws ck.finish();
        }
        for m in &objs {
            let mut homs: Vec<Vec<C::Mor>> = d.nodes.iter().map(|a| c.hom(m, a)).collect();
            if sampled {
                homs.iter_mut().for_each(|h| h.shuffle(&mut rng));
            }
            let candidates = c.hom(m, &apex);
            for q in cones(&homs, &shape, &lax, limit) {
                lax_cones += 1;
                let e = q.iter().fold(c.identity(m), |acc, qi| c.compose(&acc, &c.restriction(qi)));
                let targets: Vec<C::Mor> = q.iter().map(|qi| c.compose(qi, &e)).collect();
                let count = candidates
                    .iter()
                    .filter(|f| c.restriction(f) == e && legs.iter().zip(&targets).all(|(l, t)| c.compose(l, f) == *t))
                    .count();
                if count != 1 {
                    if ck.fail("universal-property", wit(&q)) {
                        break 'laws ck.finish();
                    }
                } else {
                    ck.tick();
                }
            }
        }
        ck.finish()
    };
    Ok(DiagramLimit { apex, legs, idempotents, sampled, lax_cones, report })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equalizer<O, M> {
    pub object: O,
    pub inclusion: M,
    pub report: LawReport,
}

/// Equalizer of total `f, g : X → Y`: with `h = ⟨f, g⟩` and `r` the
/// restriction retraction of `Δ_Y`, split `r̄(r h)`. Checked to be an
/// equalizer among total maps by exhaustive search.
pub fn total_equalizer<C: RestrictionCategory, P: ProductStructure<C> + ?Sized>(
    c: &C,
    ps: &P,
    f: &C::Mor,
    g: &C::Mor,
    opts: CheckOptions,
) -> Result<Equalizer<C::Obj, C::Mor>> {
    let (x, y) = (c.dom(f), c.cod(f));
    if c.dom(g) != x || c.cod(g) != y {
        return Err(CatError::NotParallel(format!("{} vs {}", c.mor_label(f), c.mor_label(g))));
    }
    if !is_total(c, f) || !is_total(c, g) {
        return Err(CatError::ShapeMismatch(format!("{} and {} must be total", c.mor_label(f), c.mor_label(g))));
    }
    let retraction_of_diagonal = |a: &C::Obj| {
        let d = ps.diagonal(c, a)?;
        let r = c.restriction_inverse(&d)?;
        (c.compose(&r, &d) == c.identity(a)).then_some(r)
    };
    for a in c.objects() {
        if ps.diagonal(c, &a).is_some() && retraction_of_diagonal(&a).is_none() {
            return Err(CatError::NotSeparable(c.obj_label(&a)));
        }
    }
    let r = retraction_of_diagonal(&y).ok_or_else(|| CatError::NotSeparable(c.obj_label(&y)))?;
    let fg = ps.tensor(c, f, g).ok_or_else(|| CatError::NoProducts(c.obj_label(&y)))?;
    let h = c.compose(&fg, &ps.diagonal(c, &x).ok_or_else(|| CatError::NoProducts(c.obj_label(&x)))?);
    let e = c.restriction(&c.compose(&r, &h));
    let (object, inclusion) = if e == c.identity(&x) {
        (x.clone(), e)
    } else {
        let sp = split_idempotent(c, &e).ok_or_else(|| CatError::NotSplit(c.mor_label(&e)))?;
        (sp.object, sp.mono)
    };

    let mut ck = Checker::new(opts);
    let report = 'laws: {
        if !is_total(c, &inclusion) || c.compose(f, &inclusion) != c.compose(g, &inclusion) {
            ck.fail("equalizer", vec![c.mor_label(&inclusion)]);
            break 'laws ck.finish();
        }
        for z in c.objects() {
            let through = total_hom(c, &z, &object);
            for j in total_hom(c, &z, &x) {
                if c.compose(f, &j) != c.compose(g, &j) {
                    continue;
                }
                let count = through.iter().filter(|k| c.compose(&inclusion, k) == j).count();
                if count != 1 {
                    if ck.fail("equalizer", vec![c.mor_label(&j)]) {
                        break 'laws ck.finish();
                    }
                } else {
                    ck.tick();
                }
            }
        }
        ck.finish()
    };
    Ok(Equalizer { object, inclusion, report })
}

/// An arrow of a diagram shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeArrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// Diagram JSON: a shape plus an assignment of its nodes to objects and its
/// arrows to morphisms of a category file.
///
/// ```json
/// { "nodes": ["x", "y"], "arrows": [{"name": "a", "from": "x", "to": "y"}],
///   "assignment": {"x": "2", "y": "1", "a": "2>1:0,-"} }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub nodes: Vec<String>,
    pub arrows: Vec<ShapeArrow>,
    pub assignment: BTreeMap<String, String>,
}

impl DiagramFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CatError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn resolve(&self, x: &FinCategory) -> Result<Diagram<ObjId, MorId>> {
        let assigned = |k: &str| {
            self.assignment.get(k).ok_or_else(|| CatError::InvalidDiagram(format!("`{k}` has no assignment")))
        };
        let node = |k: &str| {
            self.nodes.iter().position(|n| n == k).ok_or_else(|| CatError::InvalidDiagram(format!("unknown node `{k}`")))
        };
        let nodes = self.nodes.iter().map(|n| x.object_by_name(assigned(n)?)).collect::<Result<Vec<_>>>()?;
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok((node(&a.from)?, node(&a.to)?, x.morphism_by_name(assigned(&a.name)?)?)))
            .collect::<Result<Vec<_>>>()?;
        let d = Diagram { nodes, arrows };
        d.validate(x)?;
        Ok(d)
    }
}
