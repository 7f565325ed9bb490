//! Small hand-built categories used as examples and counterexamples.

use crate::category::{Category, FinCategory, FinCategoryBuilder, FinRCat, MorId, ObjId, RestrictionCategory};
use crate::coproduct::{Cocone, Coproducts, TableCoproducts};
use crate::error::Result;
use crate::par::{par_compose, par_restriction, PartialFn};

/// One object, one morphism.
pub fn trivial_category() -> FinRCat {
    let mut b = FinCategoryBuilder::new();
    let a = b.object("*");
    let id = b.morphism("1", a, a);
    b.set_identity(a, id);
    b.set_compose(id, id, id);
    FinRCat::trivial(b.build().expect("one-object table"))
}

/// The poset on `names` ordered by `le` (reflexive and transitive), one
/// morphism `a<=b` per related pair.
pub fn poset_category(names: &[&str], le: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
    let mut b = FinCategoryBuilder::new();
    let objs: Vec<ObjId> = names.iter().map(|n| b.object(*n)).collect();
    let n = names.len();
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if le(i, j) {
                arrow[i][j] = Some(b.morphism(format!("{}<={}", names[i], names[j]), objs[i], objs[j]));
            }
        }
    }
    for i in 0..n {
        b.set_identity(objs[i], arrow[i][i].expect("reflexive"));
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                    b.set_compose(g, f, arrow[i][k].expect("transitive"));
                }
            }
        }
    }
    b.build()
}

/// The pentagon lattice `0 < a < c < 1`, `0 < b < 1`; not distributive.
pub fn n5() -> FinCategory {
    const UP: [&[usize]; 5] = [&[0, 1, 2, 3, 4], &[1, 3, 4], &[2, 4], &[3, 4], &[4]];
    poset_category(&["0", "a", "b", "c", "1"], |i, j| UP[i].contains(&j)).expect("N5 is a poset")
}

/// A monoid on `0..n` as a one-object category; morphism `k` is named `k`.
pub fn monoid_category(n: usize, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FinCategory> {
    let mut b = FinCategoryBuilder::new();
    let o = b.object("*");
    let ms: Vec<MorId> = (0..n).map(|k| b.morphism(k.to_string(), o, o)).collect();
    b.set_identity(o, ms[unit]);
    for g in 0..n {
        for f in 0..n {
            b.set_compose(ms[g], ms[f], ms[mul(g, f)]);
        }
    }
    b.build()
}

/// `Z/3` under multiplication: units `1, 2`, absorbing `0`.
pub fn z3_multiplicative() -> FinCategory {
    monoid_category(3, 1, |a, b| a * b % 3).expect("Z/3 is a monoid")
}

/// A word of atoms: `1` is a point, `P` a two-element pair that maps may not
/// tear apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Point,
    Pair,
}

fn parse_word(w: &str) -> Vec<Atom> {
    w.chars().filter(|c| *c != '0').map(|c| if c == 'P' { Atom::Pair } else { Atom::Point }).collect()
}

/// Element offsets and atom of each element.
fn layout(word: &[Atom]) -> Vec<(usize, Atom)> {
    let mut out = Vec::new();
    for (k, a) in word.iter().enumerate() {
        let n = if *a == Atom::Pair { 2 } else { 1 };
        out.extend(std::iter::repeat((k, *a)).take(n));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RigidMor {
    pub src: usize,
    pub tgt: usize,
    pub map: PartialFn,
}

/// The sub-restriction category of Par on words of points and rigid pairs.
///
/// A map is allowed when no point lands in a pair, and within each source
/// pair the elements landing in pairs all land in one pair, each at its own
/// position. It has the disjoint-union coproducts that fit, and `∅` is a
/// restriction zero, but the total map `P → 1+1` splitting a pair has no
/// decision: its decision would have to tear `P` across `P + P`.
pub struct RigidPairs {
    pub words: Vec<String>,
    atoms: Vec<Vec<(usize, Atom)>>,
}

impl RigidPairs {
    pub fn new(words: &[&str]) -> Self {
        let atoms = words.iter().map(|w| layout(&parse_word(w))).collect();
        RigidPairs { words: words.iter().map(|w| w.to_string()).collect(), atoms }
    }

    /// Words `0, 1, 11, P, PP`; with `extended`, also `1111`.
    pub fn standard(extended: bool) -> Self {
        if extended {
            Self::new(&["0", "1", "11", "P", "PP", "1111"])
        } else {
            Self::new(&["0", "1", "11", "P", "PP"])
        }
    }

    pub fn word(&self, w: &str) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }

    pub fn allowed(&self, src: usize, tgt: usize, f: &PartialFn) -> bool {
        let (s, t) = (&self.atoms[src], &self.atoms[tgt]);
        let mut pair_image: Vec<Option<usize>> = vec![None; s.len()];
        for (x, y) in f.table.iter().enumerate() {
            let Some(y) = y.map(|y| y as usize) else { continue };
            if t[y].1 != Atom::Pair {
                continue;
            }
            if s[x].1 == Atom::Point {
                return false;
            }
            // same position inside the pair
            let pos_src = x - s.iter().position(|e| e.0 == s[x].0).unwrap();
            let pos_tgt = y - t.iter().position(|e| e.0 == t[y].0).unwrap();
            if pos_src != pos_tgt {
                return false;
            }
            let atom = s[x].0;
            for (x2, img) in pair_image.iter().enumerate() {
                if s[x2].0 == atom && img.is_some_and(|a| a != t[y].0) {
                    return false;
                }
            }
            pair_image[x] = Some(t[y].0);
        }
        true
    }

    fn size(&self, w: usize) -> usize {
        self.atoms[w].len()
    }

    fn mk(&self, src: usize, tgt: usize, map: PartialFn) -> RigidMor {
        debug_assert!(self.allowed(src, tgt, &map));
        RigidMor { src, tgt, map }
    }

    fn concat(&self, a: usize, b: usize) -> Option<usize> {
        let w = match (self.words[a].as_str(), self.words[b].as_str()) {
            ("0", y) => y.to_string(),
            (x, "0") => x.to_string(),
            (x, y) => format!("{x}{y}"),
        };
        self.word(&w)
    }
}

impl Category for RigidPairs {
    type Obj = usize;
    type Mor = RigidMor;

    fn objects(&self) -> Vec<usize> {
        (0..self.words.len()).collect()
    }
    fn hom(&self, a: &usize, b: &usize) -> Vec<RigidMor> {
        PartialFn::enumerate(self.size(*a), self.size(*b), false)
            .into_iter()
            .filter(|f| self.allowed(*a, *b, f))
            .map(|f| RigidMor { src: *a, tgt: *b, map: f })
            .collect()
    }
    fn dom(&self, f: &RigidMor) -> usize {
        f.src
    }
    fn cod(&self, f: &RigidMor) -> usize {
        f.tgt
    }
    fn identity(&self, a: &usize) -> RigidMor {
        self.mk(*a, *a, PartialFn::identity(self.size(*a)))
    }
    fn compose(&self, g: &RigidMor, f: &RigidMor) -> RigidMor {
        let map = par_compose(&g.map, &f.map).expect("composable rigid maps");
        RigidMor { src: f.src, tgt: g.tgt, map }
    }
    fn obj_label(&self, a: &usize) -> String {
        self.words[*a].clone()
    }
    fn mor_label(&self, f: &RigidMor) -> String {
        let cells: Vec<String> =
            f.map.table.iter().map(|v| v.map_or("-".to_string(), |y| y.to_string())).collect();
        format!("{}>{}:{}", self.words[f.src], self.words[f.tgt], cells.join(","))
    }
}

impl RestrictionCategory for RigidPairs {
    fn restriction(&self, f: &RigidMor) -> RigidMor {
        RigidMor { src: f.src, tgt: f.src, map: par_restriction(&f.map) }
    }
}

/// Concatenation of words, where the result is in the universe.
pub struct WordSums;

impl Coproducts<RigidPairs> for WordSums {
    fn initial(&self, c: &RigidPairs) -> usize {
        c.word("0").expect("empty word present")
    }
    fn initial_map(&self, c: &RigidPairs, a: &usize) -> RigidMor {
        RigidMor { src: self.initial(c), tgt: *a, map: PartialFn::nowhere(0, c.size(*a)) }
    }
    fn cocone(&self, c: &RigidPairs, a: &usize, b: &usize) -> Option<Cocone<usize, RigidMor>> {
        let s = c.concat(*a, *b)?;
        let (m, n) = (c.size(*a), c.size(*b));
        Some(Cocone {
            sum: s,
            inl: c.mk(*a, s, PartialFn::inl(m, n)),
            inr: c.mk(*b, s, PartialFn::inr(m, n)),
        })
    }
    fn copair(&self, c: &RigidPairs, f: &RigidMor, g: &RigidMor) -> Option<RigidMor> {
        let s = c.concat(f.src, g.src)?;
        let map = PartialFn::copair(&f.map, &g.map).ok()?;
        (f.tgt == g.tgt && c.allowed(s, f.tgt, &map)).then(|| RigidMor { src: s, tgt: f.tgt, map })
    }
}

/// The rigid pair category as a table with its word coproducts.
pub fn rigid_pair_rcat(extended: bool) -> Result<(FinRCat, TableCoproducts<ObjId, MorId>)> {
    let y = RigidPairs::standard(extended);
    let (x, m) = FinRCat::materialize_default(&y)?;
    let cp = TableCoproducts::transport(&y, &WordSums, &m.objs, |o| Some(m.obj(o)), |f| m.try_mor(f))
        .expect("word sums land in the universe");
    Ok((x, cp))
}

/// The total map `P → 1+1` sending the two elements of the pair apart.
pub fn rigid_pair_witness() -> String {
    "P>11:0,1".to_string()
}
