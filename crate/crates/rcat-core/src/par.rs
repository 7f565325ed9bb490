//! Finite sets with partial and total functions.
//!
//! Elements are 0-based indices. `A + B` puts `A` first, `A × B` pairs
//! `(a, b)` at `a·|B| + b`, and the extra point of `B + 1` is the last index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::{Category, FinRCat, RestrictionCategory, Splitting};
use crate::error::{CatError, Result};
use crate::report::{CheckOptions, LawReport};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartialFn {
    pub src: usize,
    pub tgt: usize,
    pub table: Vec<Option<u32>>,
}

impl PartialFn {
    pub fn new(src: usize, tgt: usize, table: Vec<Option<u32>>) -> Result<Self> {
        if table.len() != src {
            return Err(CatError::ShapeMismatch(format!("table of length {} for source {src}", table.len())));
        }
        if let Some(bad) = table.iter().flatten().find(|&&t| t as usize >= tgt) {
            return Err(CatError::ShapeMismatch(format!("entry {bad} out of range for target {tgt}")));
        }
        Ok(PartialFn { src, tgt, table })
    }

    pub fn total(src: usize, tgt: usize, table: &[u32]) -> Self {
        Self::new(src, tgt, table.iter().map(|&t| Some(t)).collect()).expect("valid total table")
    }

    pub fn from_fn(src: usize, tgt: usize, f: impl Fn(usize) -> Option<usize>) -> Self {
        let table = (0..src).map(|x| f(x).map(|y| {
            debug_assert!(y < tgt);
            y as u32
        })).collect();
        PartialFn { src, tgt, table }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, Some)
    }

    pub fn nowhere(src: usize, tgt: usize) -> Self {
        PartialFn { src, tgt, table: vec![None; src] }
    }

    pub fn at(&self, x: usize) -> Option<usize> {
        self.table[x].map(|y| y as usize)
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.src).filter(|&x| self.table[x].is_some()).collect()
    }

    /// Partial identity on `subset` of `n`.
    pub fn partial_identity(n: usize, subset: &[usize]) -> Self {
        Self::from_fn(n, n, |x| subset.contains(&x).then_some(x))
    }

    /// `self ∘ f`, or `ShapeMismatch`.
    pub fn after(&self, f: &PartialFn) -> Result<PartialFn> {
        par_compose(self, f)
    }

    /// `src tgt t0 t1 ...` with `-` for undefined.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |m: String| CatError::Parse { location: format!("partial function `{text}`"), message: m };
        let mut it = text.split_whitespace();
        let mut num = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| err(format!("missing {what}")))?
                .parse()
                .map_err(|e| err(format!("{what}: {e}")))
        };
        let src = num("source size")?;
        let tgt = num("target size")?;
        let rest: Vec<&str> = text.split_whitespace().skip(2).collect();
        if rest.len() != src {
            return Err(err(format!("expected {src} entries, found {}", rest.len())));
        }
        let table = rest
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if *t == "-" {
                    Ok(None)
                } else {
                    t.parse::<u32>().map(Some).map_err(|e| err(format!("entry {i}: {e}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PartialFn::new(src, tgt, table).map_err(|e| err(e.to_string()))
    }

    pub fn text(&self) -> String {
        let mut s = format!("{} {}", self.src, self.tgt);
        for t in &self.table {
            match t {
                Some(y) => s.push_str(&format!(" {y}")),
                None => s.push_str(" -"),
            }
        }
        s
    }

    /// Compact label used as a morphism name: `2>3:0,-`.
    pub fn label(&self) -> String {
        let entries: Vec<String> = self.table.iter().map(|t| t.map_or("-".into(), |y| y.to_string())).collect();
        format!("{}>{}:{}", self.src, self.tgt, entries.join(","))
    }

    /// Inverse of [`PartialFn::label`].
    pub fn from_label(label: &str) -> Result<Self> {
        let err = || CatError::Parse { location: format!("label `{label}`"), message: "expected `n>m:t,...`".into() };
        let (shape, rest) = label.split_once(':').ok_or_else(err)?;
        let (s, t) = shape.split_once('>').ok_or_else(err)?;
        let src: usize = s.parse().map_err(|_| err())?;
        let tgt: usize = t.parse().map_err(|_| err())?;
        let table = if rest.is_empty() {
            vec![]
        } else {
            rest.split(',')
                .map(|e| if e == "-" { Ok(None) } else { e.parse::<u32>().map(Some).map_err(|_| err()) })
                .collect::<Result<Vec<_>>>()?
        };
        PartialFn::new(src, tgt, table)
    }

    // Coproducts: A + B with A's indices first.

    pub fn inl(a: usize, b: usize) -> Self {
        Self::from_fn(a, a + b, Some)
    }

    pub fn inr(a: usize, b: usize) -> Self {
        Self::from_fn(b, a + b, |x| Some(a + x))
    }

    /// `⟨f|g⟩ : A + B → C`
    pub fn copair(f: &PartialFn, g: &PartialFn) -> Result<Self> {
        if f.tgt != g.tgt {
            return Err(CatError::ShapeMismatch(format!("copair targets {} and {}", f.tgt, g.tgt)));
        }
        let mut table = f.table.clone();
        table.extend_from_slice(&g.table);
        Ok(PartialFn { src: f.src + g.src, tgt: f.tgt, table })
    }

    /// `f + g`
    pub fn sum(f: &PartialFn, g: &PartialFn) -> Self {
        let off = f.tgt as u32;
        let mut table = f.table.clone();
        table.extend(g.table.iter().map(|t| t.map(|y| y + off)));
        PartialFn { src: f.src + g.src, tgt: f.tgt + g.tgt, table }
    }

    // Cartesian structure: (a, b) at a·|B| + b.

    /// `f × g`, defined where both are.
    pub fn tensor(f: &PartialFn, g: &PartialFn) -> Self {
        Self::from_fn(f.src * g.src, f.tgt * g.tgt, |i| {
            let (x, y) = (i / g.src, i % g.src);
            Some(f.at(x)? * g.tgt + g.at(y)?)
        })
    }

    pub fn diagonal(a: usize) -> Self {
        Self::from_fn(a, a * a, |x| Some(x * a + x))
    }

    pub fn proj_left(a: usize, b: usize) -> Self {
        Self::from_fn(a * b, a, |i| Some(i / b))
    }

    pub fn proj_right(a: usize, b: usize) -> Self {
        Self::from_fn(a * b, b, |i| Some(i % b))
    }

    /// `⟨f, g⟩ : C → A × B` for total-on-a-common-domain pairing.
    pub fn pair(f: &PartialFn, g: &PartialFn) -> Result<Self> {
        if f.src != g.src {
            return Err(CatError::ShapeMismatch(format!("pairing sources {} and {}", f.src, g.src)));
        }
        Ok(Self::from_fn(f.src, f.tgt * g.tgt, |x| Some(f.at(x)? * g.tgt + g.at(x)?)))
    }

    /// `τ : A × B → B × A`
    pub fn swap(a: usize, b: usize) -> Self {
        Self::from_fn(a * b, b * a, |i| Some((i % b) * a + i / b))
    }

    /// Every table `src → tgt + 1` in lexicographic order, `None` first.
    pub fn enumerate(src: usize, tgt: usize, total_only: bool) -> Vec<PartialFn> {
        let choices: Vec<Option<u32>> = if total_only {
            (0..tgt as u32).map(Some).collect()
        } else {
            std::iter::once(None).chain((0..tgt as u32).map(Some)).collect()
        };
        let k = choices.len();
        if src > 0 && k == 0 {
            return vec![];
        }
        let count = k.pow(src as u32);
        (0..count)
            .map(|mut n| {
                let mut table = vec![None; src];
                for slot in table.iter_mut().rev() {
                    *slot = choices[n % k];
                    n /= k;
                }
                PartialFn { src, tgt, table }
            })
            .collect()
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// `g ∘ f` of partial functions.
pub fn par_compose(g: &PartialFn, f: &PartialFn) -> Result<PartialFn> {
    if f.tgt != g.src {
        return Err(CatError::ShapeMismatch(format!("target {} ≠ source {}", f.tgt, g.src)));
    }
    Ok(PartialFn { src: f.src, tgt: g.tgt, table: f.table.iter().map(|t| t.and_then(|y| g.table[y as usize])).collect() })
}

/// Partial identity on the domain of definition.
pub fn par_restriction(f: &PartialFn) -> PartialFn {
    PartialFn { src: f.src, tgt: f.src, table: (0..f.src as u32).map(|x| f.table[x as usize].map(|_| x)).collect() }
}

fn compose_unchecked(g: &PartialFn, f: &PartialFn) -> PartialFn {
    par_compose(g, f).unwrap_or_else(|e| panic!("{e}: {} after {}", g.label(), f.label()))
}

/// Par(FinSet) with objects `0..=max` as the quantification universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Par {
    pub max: usize,
}

impl Par {
    pub fn new(max: usize) -> Self {
        Par { max }
    }
}

impl Category for Par {
    type Obj = usize;
    type Mor = PartialFn;
    fn objects(&self) -> Vec<usize> {
        (0..=self.max).collect()
    }
    fn hom(&self, a: &usize, b: &usize) -> Vec<PartialFn> {
        PartialFn::enumerate(*a, *b, false)
    }
    fn dom(&self, f: &PartialFn) -> usize {
        f.src
    }
    fn cod(&self, f: &PartialFn) -> usize {
        f.tgt
    }
    fn identity(&self, a: &usize) -> PartialFn {
        PartialFn::identity(*a)
    }
    fn compose(&self, g: &PartialFn, f: &PartialFn) -> PartialFn {
        compose_unchecked(g, f)
    }
    fn obj_label(&self, a: &usize) -> String {
        a.to_string()
    }
    fn mor_label(&self, f: &PartialFn) -> String {
        f.label()
    }
    fn morphism_count(&self) -> usize {
        let n = self.max;
        (0..=n).map(|a| (0..=n).map(|b| (b + 1).pow(a as u32)).sum::<usize>()).sum()
    }
}

impl RestrictionCategory for Par {
    fn restriction(&self, f: &PartialFn) -> PartialFn {
        par_restriction(f)
    }

    fn restriction_inverse(&self, f: &PartialFn) -> Option<PartialFn> {
        par_restriction_inverse(f)
    }

    fn canonical_splitting(&self, e: &PartialFn) -> Option<Splitting<usize, PartialFn>> {
        par_splitting(e)
    }
}

/// Partial inverse of a map injective on its domain.
pub fn par_restriction_inverse(f: &PartialFn) -> Option<PartialFn> {
    let mut table = vec![None; f.tgt];
    for (x, t) in f.table.iter().enumerate() {
        if let Some(y) = t {
            if table[*y as usize].is_some() {
                return None;
            }
            table[*y as usize] = Some(x as u32);
        }
    }
    Some(PartialFn { src: f.tgt, tgt: f.src, table })
}

/// Split a partial identity through its domain, listed in increasing order.
pub fn par_splitting(e: &PartialFn) -> Option<Splitting<usize, PartialFn>> {
    if e.src != e.tgt || par_restriction(e) != *e {
        return None;
    }
    let dom = e.domain();
    let k = dom.len();
    let mono = PartialFn::from_fn(k, e.src, |i| Some(dom[i]));
    let retraction = PartialFn::from_fn(e.src, k, |x| dom.iter().position(|&d| d == x));
    Some(Splitting { object: k, mono, retraction })
}

/// FinSet with total functions and the trivial restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinSet {
    pub max: usize,
}

impl FinSet {
    pub fn new(max: usize) -> Self {
        FinSet { max }
    }
}

impl Category for FinSet {
    type Obj = usize;
    type Mor = PartialFn;
    fn objects(&self) -> Vec<usize> {
        (0..=self.max).collect()
    }
    fn hom(&self, a: &usize, b: &usize) -> Vec<PartialFn> {
        PartialFn::enumerate(*a, *b, true)
    }
    fn dom(&self, f: &PartialFn) -> usize {
        f.src
    }
    fn cod(&self, f: &PartialFn) -> usize {
        f.tgt
    }
    fn identity(&self, a: &usize) -> PartialFn {
        PartialFn::identity(*a)
    }
    fn compose(&self, g: &PartialFn, f: &PartialFn) -> PartialFn {
        compose_unchecked(g, f)
    }
    fn obj_label(&self, a: &usize) -> String {
        a.to_string()
    }
    fn mor_label(&self, f: &PartialFn) -> String {
        f.label()
    }
}

impl RestrictionCategory for FinSet {
    fn restriction(&self, f: &PartialFn) -> PartialFn {
        PartialFn::identity(f.src)
    }

    fn restriction_inverse(&self, f: &PartialFn) -> Option<PartialFn> {
        // Restriction inverses are two-sided inverses here.
        let g = par_restriction_inverse(f)?;
        g.is_total().then_some(g)
    }
}

/// Par(FinSet) on sizes `0..=max_size` as dense tables.
pub fn par_to_rcat(max_size: usize) -> Result<FinRCat> {
    par_to_rcat_capped(max_size, crate::report::DEFAULT_CAP)
}

pub fn par_to_rcat_capped(max_size: usize, cap: usize) -> Result<FinRCat> {
    FinRCat::materialize(&Par::new(max_size), cap).map(|(x, _)| x)
}

/// Compare the Kleisli category of `+1` on FinSet with Par: the bijection
/// sending the extra point to "undefined" must preserve identities,
/// composition and restriction.
pub fn kleisli_plus_one_check(max_size: usize, opts: CheckOptions) -> LawReport {
    crate::copy::kleisli::plus_one_agreement(max_size, opts)
}
