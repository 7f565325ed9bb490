//! The JSON category file format.
//!
//! ```json
//! { "objects": ["A"], "morphisms": [{"name": "1A", "dom": "A", "cod": "A"}],
//!   "identity": {"A": "1A"}, "compose": [["1A", "1A", "1A"]],
//!   "restriction": {"1A": "1A"} }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{Category, FinCategory, FinCategoryBuilder, FinRCat, MorId, RestrictionCategory};
use crate::error::{CatError, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismEntry {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identity: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
    pub restriction: BTreeMap<String, String>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> CatError {
    CatError::Parse { location: location.into(), message: message.into() }
}

impl CategoryFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("category files always serialize");
        s.push('\n');
        s
    }

    pub fn from_rcat(x: &FinRCat) -> Self {
        let c = &x.base;
        let mut f = Self::from_category(c);
        f.restriction = c
            .all_morphisms()
            .iter()
            .map(|m| (c.mor_name(*m).to_string(), c.mor_name(x.restriction(m)).to_string()))
            .collect();
        f
    }

    /// A plain category is written with the trivial restriction, so every
    /// emitted file is a valid restriction category.
    pub fn from_category(c: &FinCategory) -> Self {
        let objects = c.objects().iter().map(|a| c.obj_name(*a).to_string()).collect();
        let morphisms = c
            .all_morphisms()
            .iter()
            .map(|m| MorphismEntry {
                name: c.mor_name(*m).to_string(),
                dom: c.obj_name(c.dom(m)).to_string(),
                cod: c.obj_name(c.cod(m)).to_string(),
            })
            .collect();
        let identity = c
            .objects()
            .iter()
            .map(|a| (c.obj_name(*a).to_string(), c.mor_name(c.identity(a)).to_string()))
            .collect();
        let compose = c
            .compose_triples()
            .into_iter()
            .map(|(g, f, gf)| [c.mor_name(g).to_string(), c.mor_name(f).to_string(), c.mor_name(gf).to_string()])
            .collect();
        let restriction = c
            .all_morphisms()
            .iter()
            .map(|m| (c.mor_name(*m).to_string(), c.mor_name(c.identity(&c.dom(m))).to_string()))
            .collect();
        CategoryFile { objects, morphisms, identity, compose, restriction }
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        let mut b = FinCategoryBuilder::new();
        let mut objs = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if objs.insert(o.as_str(), b.object(o.clone())).is_some() {
                return Err(parse_err(format!("objects[{i}]"), format!("duplicate object `{o}`")));
            }
        }
        let obj = |loc: String, n: &str| {
            objs.get(n).copied().ok_or_else(|| parse_err(loc, format!("unknown object `{n}`")))
        };
        let mut mors = BTreeMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            let d = obj(format!("morphisms[{i}].dom"), &m.dom)?;
            let c = obj(format!("morphisms[{i}].cod"), &m.cod)?;
            if mors.insert(m.name.as_str(), b.morphism(m.name.clone(), d, c)).is_some() {
                return Err(parse_err(format!("morphisms[{i}].name"), format!("duplicate morphism `{}`", m.name)));
            }
        }
        let mor = |loc: String, n: &str| {
            mors.get(n).copied().ok_or_else(|| parse_err(loc, format!("unknown morphism `{n}`")))
        };
        for (o, m) in &self.identity {
            let a = obj(format!("identity.{o}"), o)?;
            b.set_identity(a, mor(format!("identity.{o}"), m)?);
        }
        for (i, [g, f, gf]) in self.compose.iter().enumerate() {
            b.set_compose(
                mor(format!("compose[{i}][0]"), g)?,
                mor(format!("compose[{i}][1]"), f)?,
                mor(format!("compose[{i}][2]"), gf)?,
            );
        }
        b.build()
    }

    pub fn to_rcat(&self) -> Result<FinRCat> {
        let base = self.to_category()?;
        let mut table: Vec<Option<MorId>> = vec![None; base.n_morphisms()];
        for (f, r) in &self.restriction {
            let fi = base.morphism_by_name(f).map_err(|_| {
                parse_err(format!("restriction.{f}"), format!("unknown morphism `{f}`"))
            })?;
            let ri = base.morphism_by_name(r).map_err(|_| {
                parse_err(format!("restriction.{f}"), format!("unknown morphism `{r}`"))
            })?;
            table[fi.0 as usize] = Some(ri);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.ok_or_else(|| {
                    parse_err("restriction", format!("no entry for `{}`", base.mor_name(MorId(i as u32))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FinRCat::new(base, table)
    }
}

pub fn load_rcat(text: &str) -> Result<FinRCat> {
    CategoryFile::from_json(text)?.to_rcat()
}

pub fn save_rcat(x: &FinRCat) -> String {
    CategoryFile::from_rcat(x).to_json()
}

/// Escape a name component so that `(`, `)`, `|`, `:`, `>` and `\` can be
/// used as separators in generated names.
pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        if matches!(ch, '\\' | '(' | ')' | '|' | ':' | '>' | ',') {
            out.push('\\');
        }
        out.push(ch);
    }
    out
}

/// Inverse of [`escape`].
pub fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut it = s.chars();
    while let Some(ch) = it.next() {
        if ch == '\\' {
            if let Some(n) = it.next() {
                out.push(n);
            }
        } else {
            out.push(ch);
        }
    }
    out
}

/// Split on an unescaped separator.
pub fn split_unescaped(s: &str, sep: char) -> Vec<String> {
    let mut parts = vec![String::new()];
    let mut it = s.chars();
    while let Some(ch) = it.next() {
        if ch == '\\' {
            parts.last_mut().unwrap().push(ch);
            if let Some(n) = it.next() {
                parts.last_mut().unwrap().push(n);
            }
        } else if ch == sep {
            parts.push(String::new());
        } else {
            parts.last_mut().unwrap().push(ch);
        }
    }
    parts
}
