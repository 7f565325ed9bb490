use std::collections::HashMap;
use std::fmt;

use super::{Category, RestrictionCategory};
use crate::error::{CatError, Result};
use crate::report::DEFAULT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

const UNSET: u32 = u32::MAX;

/// A finite category stored as dense tables.
///
/// Composition is stored per morphism `f` as a row indexed by the position
/// of `g` among the morphisms out of `cod f`, so the table holds exactly the
/// composable pairs and lookup is two array reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    homs: Vec<Vec<MorId>>,
    out: Vec<Vec<MorId>>,
    out_pos: Vec<u32>,
    comp_offset: Vec<usize>,
    comp: Vec<u32>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

/// Incremental construction; `build` validates everything.
#[derive(Debug, Default, Clone)]
pub struct FinCategoryBuilder {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<Option<MorId>>,
    compose: Vec<(MorId, MorId, MorId)>,
}

impl FinCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.obj_names.push(name.into());
        self.identity.push(None);
        ObjId(self.obj_names.len() as u32 - 1)
    }

    pub fn morphism(&mut self, name: impl Into<String>, dom: ObjId, cod: ObjId) -> MorId {
        self.mor_names.push(name.into());
        self.dom.push(dom);
        self.cod.push(cod);
        MorId(self.mor_names.len() as u32 - 1)
    }

    pub fn set_identity(&mut self, a: ObjId, f: MorId) {
        self.identity[a.0 as usize] = Some(f);
    }

    pub fn set_compose(&mut self, g: MorId, f: MorId, gf: MorId) {
        self.compose.push((g, f, gf));
    }

    pub fn build(self) -> Result<FinCategory> {
        let n_obj = self.obj_names.len();
        let n_mor = self.mor_names.len();
        let bad = |m: String| CatError::MalformedTable(m);
        for (i, (&d, &c)) in self.dom.iter().zip(&self.cod).enumerate() {
            if d.0 as usize >= n_obj || c.0 as usize >= n_obj {
                return Err(bad(format!("morphism #{i} `{}` has unknown dom/cod", self.mor_names[i])));
            }
        }
        let mut identity = Vec::with_capacity(n_obj);
        for (a, id) in self.identity.iter().enumerate() {
            let id = id.ok_or_else(|| bad(format!("object #{a} `{}` has no identity", self.obj_names[a])))?;
            if id.0 as usize >= n_mor {
                return Err(bad(format!("identity of `{}` is an unknown morphism", self.obj_names[a])));
            }
            if self.dom[id.0 as usize].0 as usize != a || self.cod[id.0 as usize].0 as usize != a {
                return Err(bad(format!(
                    "identity of `{}` is `{}`, which is not an endomorphism of it",
                    self.obj_names[a], self.mor_names[id.0 as usize]
                )));
            }
            identity.push(id);
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        let mut out = vec![Vec::new(); n_obj];
        let mut out_pos = vec![0u32; n_mor];
        for m in 0..n_mor {
            let (d, c) = (self.dom[m].0 as usize, self.cod[m].0 as usize);
            homs[d * n_obj + c].push(MorId(m as u32));
            out_pos[m] = out[d].len() as u32;
            out[d].push(MorId(m as u32));
        }
        let mut comp_offset = Vec::with_capacity(n_mor);
        let mut total = 0usize;
        for m in 0..n_mor {
            comp_offset.push(total);
            total += out[self.cod[m].0 as usize].len();
        }
        let mut comp = vec![UNSET; total];
        for (pos, &(g, f, gf)) in self.compose.iter().enumerate() {
            let at = |what: &str| bad(format!("compose entry #{pos}: {what}"));
            if g.0 as usize >= n_mor || f.0 as usize >= n_mor || gf.0 as usize >= n_mor {
                return Err(at("unknown morphism id"));
            }
            let (gi, fi, ri) = (g.0 as usize, f.0 as usize, gf.0 as usize);
            if self.cod[fi] != self.dom[gi] {
                return Err(at(&format!(
                    "`{}` and `{}` are not composable",
                    self.mor_names[gi], self.mor_names[fi]
                )));
            }
            if self.dom[ri] != self.dom[fi] || self.cod[ri] != self.cod[gi] {
                return Err(at(&format!(
                    "composite `{}` of `{}` after `{}` has the wrong dom/cod",
                    self.mor_names[ri], self.mor_names[gi], self.mor_names[fi]
                )));
            }
            let slot = &mut comp[comp_offset[fi] + out_pos[gi] as usize];
            if *slot != UNSET {
                return Err(at(&format!(
                    "duplicate entry for `{}` after `{}`",
                    self.mor_names[gi], self.mor_names[fi]
                )));
            }
            *slot = gf.0;
        }
        for f in 0..n_mor {
            let c = self.cod[f].0 as usize;
            for (k, g) in out[c].iter().enumerate() {
                if comp[comp_offset[f] + k] == UNSET {
                    return Err(bad(format!(
                        "missing compose entry for `{}` after `{}`",
                        self.mor_names[g.0 as usize], self.mor_names[f]
                    )));
                }
            }
        }
        let mut obj_index = HashMap::new();
        for (i, n) in self.obj_names.iter().enumerate() {
            if obj_index.insert(n.clone(), ObjId(i as u32)).is_some() {
                return Err(bad(format!("duplicate object name `{n}`")));
            }
        }
        let mut mor_index = HashMap::new();
        for (i, n) in self.mor_names.iter().enumerate() {
            if mor_index.insert(n.clone(), MorId(i as u32)).is_some() {
                return Err(bad(format!("duplicate morphism name `{n}`")));
            }
        }
        Ok(FinCategory {
            obj_names: self.obj_names,
            mor_names: self.mor_names,
            dom: self.dom,
            cod: self.cod,
            identity,
            homs,
            out,
            out_pos,
            comp_offset,
            comp,
            obj_index,
            mor_index,
        })
    }
}

impl FinCategory {
    pub fn n_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn obj_name(&self, a: ObjId) -> &str {
        &self.obj_names[a.0 as usize]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f.0 as usize]
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjId> {
        self.obj_index.get(name).copied().ok_or_else(|| CatError::UnknownObject(name.into()))
    }

    pub fn morphism_by_name(&self, name: &str) -> Result<MorId> {
        self.mor_index.get(name).copied().ok_or_else(|| CatError::UnknownMorphism(name.into()))
    }

    pub fn hom_slice(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.0 as usize * self.n_objects() + b.0 as usize]
    }

    pub fn out_slice(&self, a: ObjId) -> &[MorId] {
        &self.out[a.0 as usize]
    }

    pub fn check_id(&self, f: MorId) -> Result<()> {
        if (f.0 as usize) < self.n_morphisms() {
            Ok(())
        } else {
            Err(CatError::UnknownMorphism(f.to_string()))
        }
    }

    /// `g ∘ f` or `None` when not composable.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let (gi, fi) = (g.0 as usize, f.0 as usize);
        if self.cod[fi] != self.dom[gi] {
            return None;
        }
        Some(MorId(self.comp[self.comp_offset[fi] + self.out_pos[gi] as usize]))
    }

    /// All `(g, f, g∘f)` triples in (f, g) id order.
    pub fn compose_triples(&self) -> Vec<(MorId, MorId, MorId)> {
        let mut v = Vec::with_capacity(self.comp.len());
        for f in 0..self.n_morphisms() {
            let c = self.cod[f].0 as usize;
            for (k, g) in self.out[c].iter().enumerate() {
                v.push((*g, MorId(f as u32), MorId(self.comp[self.comp_offset[f] + k])));
            }
        }
        v
    }

    /// Morphism ids whose `keep` flag is set, as a wide or full subcategory
    /// (objects are kept when `keep_obj` says so). Identities must be kept and
    /// the kept set must be closed under composition.
    pub fn subcategory(&self, keep_obj: &dyn Fn(ObjId) -> bool, keep: &dyn Fn(MorId) -> bool) -> Result<(FinCategory, Vec<MorId>)> {
        let mut b = FinCategoryBuilder::new();
        let mut obj_map = vec![None; self.n_objects()];
        for a in 0..self.n_objects() {
            if keep_obj(ObjId(a as u32)) {
                obj_map[a] = Some(b.object(self.obj_names[a].clone()));
            }
        }
        let mut mor_map = vec![None; self.n_morphisms()];
        let mut back = Vec::new();
        for f in 0..self.n_morphisms() {
            let (d, c) = (obj_map[self.dom[f].0 as usize], obj_map[self.cod[f].0 as usize]);
            if let (Some(d), Some(c)) = (d, c) {
                if keep(MorId(f as u32)) {
                    mor_map[f] = Some(b.morphism(self.mor_names[f].clone(), d, c));
                    back.push(MorId(f as u32));
                }
            }
        }
        for a in 0..self.n_objects() {
            if let Some(na) = obj_map[a] {
                let id = mor_map[self.identity[a].0 as usize].ok_or_else(|| {
                    CatError::MalformedTable(format!("subcategory drops the identity of `{}`", self.obj_names[a]))
                })?;
                b.set_identity(na, id);
            }
        }
        for (g, f, gf) in self.compose_triples() {
            if let (Some(ng), Some(nf)) = (mor_map[g.0 as usize], mor_map[f.0 as usize]) {
                let ngf = mor_map[gf.0 as usize].ok_or_else(|| {
                    CatError::MalformedTable(format!(
                        "subcategory not closed: `{}` after `{}`",
                        self.mor_names[g.0 as usize], self.mor_names[f.0 as usize]
                    ))
                })?;
                b.set_compose(ng, nf, ngf);
            }
        }
        Ok((b.build()?, back))
    }
}

impl Category for FinCategory {
    type Obj = ObjId;
    type Mor = MorId;

    fn objects(&self) -> Vec<ObjId> {
        (0..self.n_objects() as u32).map(ObjId).collect()
    }
    fn hom(&self, a: &ObjId, b: &ObjId) -> Vec<MorId> {
        self.hom_slice(*a, *b).to_vec()
    }
    fn hom_from(&self, a: &ObjId) -> Vec<MorId> {
        self.out_slice(*a).to_vec()
    }
    fn all_morphisms(&self) -> Vec<MorId> {
        (0..self.n_morphisms() as u32).map(MorId).collect()
    }
    fn morphism_count(&self) -> usize {
        self.n_morphisms()
    }
    fn dom(&self, f: &MorId) -> ObjId {
        self.dom[f.0 as usize]
    }
    fn cod(&self, f: &MorId) -> ObjId {
        self.cod[f.0 as usize]
    }
    fn identity(&self, a: &ObjId) -> MorId {
        self.identity[a.0 as usize]
    }
    fn compose(&self, g: &MorId, f: &MorId) -> MorId {
        self.try_compose(*g, *f).unwrap_or_else(|| {
            panic!("compose: `{}` after `{}` is not composable", self.mor_name(*g), self.mor_name(*f))
        })
    }
    fn obj_label(&self, a: &ObjId) -> String {
        self.obj_name(*a).to_string()
    }
    fn mor_label(&self, f: &MorId) -> String {
        self.mor_name(*f).to_string()
    }
}

/// A finite category with a restriction assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinRCat {
    pub base: FinCategory,
    restriction: Vec<MorId>,
}

impl FinRCat {
    /// Attach a restriction table; only shape (an endomorphism of dom f) is
    /// validated here, the axioms are the checker's business.
    pub fn new(base: FinCategory, restriction: Vec<MorId>) -> Result<Self> {
        if restriction.len() != base.n_morphisms() {
            return Err(CatError::MalformedTable(format!(
                "restriction table has {} entries for {} morphisms",
                restriction.len(),
                base.n_morphisms()
            )));
        }
        for (i, r) in restriction.iter().enumerate() {
            base.check_id(*r)?;
            let d = base.dom(&MorId(i as u32));
            if base.dom(r) != d || base.cod(r) != d {
                return Err(CatError::MalformedTable(format!(
                    "restriction of `{}` is `{}`, not an endomorphism of its domain",
                    base.mor_name(MorId(i as u32)),
                    base.mor_name(*r)
                )));
            }
        }
        Ok(FinRCat { base, restriction })
    }

    pub fn trivial(base: FinCategory) -> Self {
        let restriction = (0..base.n_morphisms() as u32).map(|f| base.identity(&base.dom(&MorId(f)))).collect();
        FinRCat { base, restriction }
    }

    /// Overwrite one restriction entry (perturbation experiments).
    pub fn set_restriction(&mut self, f: MorId, r: MorId) -> Result<()> {
        self.base.check_id(f)?;
        self.base.check_id(r)?;
        self.restriction[f.0 as usize] = r;
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.base.n_objects()
    }

    pub fn n_morphisms(&self) -> usize {
        self.base.n_morphisms()
    }

    pub fn restriction_table(&self) -> &[MorId] {
        &self.restriction
    }

    /// Tabulate any restriction category over its universe.
    pub fn materialize<C: RestrictionCategory>(c: &C, cap: usize) -> Result<(FinRCat, Materialized<C>)> {
        let count = c.morphism_count();
        if count > cap {
            return Err(CatError::CapExceeded { count, cap });
        }
        let objs = c.objects();
        let mut b = FinCategoryBuilder::new();
        let mut obj_index = HashMap::new();
        for o in &objs {
            let id = b.object(c.obj_label(o));
            obj_index.insert(o.clone(), id);
        }
        let mut mors = Vec::with_capacity(count);
        let mut mor_index = HashMap::new();
        for a in &objs {
            for bo in &objs {
                for f in c.hom(a, bo) {
                    let id = b.morphism(c.mor_label(&f), obj_index[a], obj_index[bo]);
                    mor_index.insert(f.clone(), id);
                    mors.push(f);
                }
            }
        }
        let lookup = |f: &C::Mor, what: &str| -> Result<MorId> {
            mor_index.get(f).copied().ok_or_else(|| {
                CatError::MalformedTable(format!("{what} `{}` is outside the universe", c.mor_label(f)))
            })
        };
        for o in &objs {
            b.set_identity(obj_index[o], lookup(&c.identity(o), "identity")?);
        }
        let mut by_dom: HashMap<C::Obj, Vec<usize>> = HashMap::new();
        for (i, f) in mors.iter().enumerate() {
            by_dom.entry(c.dom(f)).or_default().push(i);
        }
        let mut restriction = Vec::with_capacity(mors.len());
        for (fi, f) in mors.iter().enumerate() {
            if let Some(gs) = by_dom.get(&c.cod(f)) {
                for &gi in gs {
                    let gf = c.compose(&mors[gi], f);
                    b.set_compose(MorId(gi as u32), MorId(fi as u32), lookup(&gf, "composite")?);
                }
            }
            restriction.push(lookup(&c.restriction(f), "restriction")?);
        }
        let base = b.build()?;
        let rc = FinRCat::new(base, restriction)?;
        Ok((rc, Materialized { objs, mors, obj_index, mor_index }))
    }

    pub fn materialize_default<C: RestrictionCategory>(c: &C) -> Result<(FinRCat, Materialized<C>)> {
        Self::materialize(c, DEFAULT_CAP)
    }
}

/// The correspondence between a model and its tabulation.
pub struct Materialized<C: Category> {
    pub objs: Vec<C::Obj>,
    pub mors: Vec<C::Mor>,
    pub obj_index: HashMap<C::Obj, ObjId>,
    pub mor_index: HashMap<C::Mor, MorId>,
}

impl<C: Category> Materialized<C> {
    pub fn obj(&self, a: &C::Obj) -> ObjId {
        self.obj_index[a]
    }
    pub fn mor(&self, f: &C::Mor) -> MorId {
        self.mor_index[f]
    }
    pub fn try_mor(&self, f: &C::Mor) -> Option<MorId> {
        self.mor_index.get(f).copied()
    }
    pub fn model_obj(&self, a: ObjId) -> &C::Obj {
        &self.objs[a.0 as usize]
    }
    pub fn model_mor(&self, f: MorId) -> &C::Mor {
        &self.mors[f.0 as usize]
    }
}

impl Category for FinRCat {
    type Obj = ObjId;
    type Mor = MorId;

    fn objects(&self) -> Vec<ObjId> {
        self.base.objects()
    }
    fn hom(&self, a: &ObjId, b: &ObjId) -> Vec<MorId> {
        self.base.hom(a, b)
    }
    fn hom_from(&self, a: &ObjId) -> Vec<MorId> {
        self.base.hom_from(a)
    }
    fn all_morphisms(&self) -> Vec<MorId> {
        self.base.all_morphisms()
    }
    fn morphism_count(&self) -> usize {
        self.base.n_morphisms()
    }
    fn dom(&self, f: &MorId) -> ObjId {
        self.base.dom(f)
    }
    fn cod(&self, f: &MorId) -> ObjId {
        self.base.cod(f)
    }
    fn identity(&self, a: &ObjId) -> MorId {
        self.base.identity(a)
    }
    fn compose(&self, g: &MorId, f: &MorId) -> MorId {
        self.base.compose(g, f)
    }
    fn obj_label(&self, a: &ObjId) -> String {
        self.base.obj_label(a)
    }
    fn mor_label(&self, f: &MorId) -> String {
        self.base.mor_label(f)
    }
}

impl RestrictionCategory for FinRCat {
    fn restriction(&self, f: &MorId) -> MorId {
        self.restriction[f.0 as usize]
    }
}
