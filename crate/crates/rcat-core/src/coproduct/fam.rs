//! `Fam(X)`: finite families of objects, with coproduct = concatenation.

use super::{Cocone, Coproducts, TableCoproducts};
use crate::category::{Category, FinRCat, MorId, ObjId, RestrictionCategory};
use crate::error::Result;
use crate::format::escape;

pub type Family = Vec<ObjId>;

/// `(φ, (f_λ))` with `f_λ : A_λ → B_{φλ}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamMor {
    pub src: Family,
    pub tgt: Family,
    pub phi: Vec<usize>,
    pub maps: Vec<MorId>,
}

/// Families of length at most `k` over a tabulated restriction category.
pub struct Fam<'a> {
    pub base: &'a FinRCat,
    pub k: usize,
}

impl Fam<'_> {
    fn families(&self, len: usize) -> Vec<Family> {
        let obs = self.base.objects();
        let mut out: Vec<Family> = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|f| obs.iter().map(move |o| [f.clone(), vec![*o]].concat())).collect();
        }
        out
    }
}

impl Category for Fam<'_> {
    type Obj = Family;
    type Mor = FamMor;

    fn objects(&self) -> Vec<Family> {
        (0..=self.k).flat_map(|n| self.families(n)).collect()
    }

    fn hom(&self, a: &Family, b: &Family) -> Vec<FamMor> {
        let m = b.len();
        let n = a.len();
        if n > 0 && m == 0 {
            return vec![];
        }
        let mut out = Vec::new();
        for code in 0..m.pow(n as u32) {
            let mut phi = vec![0; n];
            let mut r = code;
            for slot in phi.iter_mut().rev() {
                *slot = r % m;
                r /= m;
            }
            let mut partial: Vec<Vec<MorId>> = vec![vec![]];
            for (l, &t) in phi.iter().enumerate() {
                let h = self.base.base.hom_slice(a[l], b[t]);
                partial = partial.into_iter().flat_map(|p| h.iter().map(move |f| [p.clone(), vec![*f]].concat())).collect();
            }
            out.extend(partial.into_iter().map(|maps| FamMor { src: a.clone(), tgt: b.clone(), phi: phi.clone(), maps }));
        }
        out
    }

    fn dom(&self, f: &FamMor) -> Family {
        f.src.clone()
    }
    fn cod(&self, f: &FamMor) -> Family {
        f.tgt.clone()
    }
    fn identity(&self, a: &Family) -> FamMor {
        FamMor {
            src: a.clone(),
            tgt: a.clone(),
            phi: (0..a.len()).collect(),
            maps: a.iter().map(|o| self.base.identity(o)).collect(),
        }
    }
    fn compose(&self, g: &FamMor, f: &FamMor) -> FamMor {
        FamMor {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            phi: f.phi.iter().map(|&t| g.phi[t]).collect(),
            maps: f.maps.iter().zip(&f.phi).map(|(fl, &t)| self.base.compose(&g.maps[t], fl)).collect(),
        }
    }
    fn obj_label(&self, a: &Family) -> String {
        let parts: Vec<String> = a.iter().map(|o| escape(self.base.base.obj_name(*o))).collect();
        format!("[{}]", parts.join(","))
    }
    fn mor_label(&self, f: &FamMor) -> String {
        let phi: Vec<String> = f.phi.iter().map(|t| t.to_string()).collect();
        let maps: Vec<String> = f.maps.iter().map(|m| escape(self.base.base.mor_name(*m))).collect();
        format!("{}:{}|{}>{}", self.obj_label(&f.src), phi.join(","), maps.join(","), self.obj_label(&f.tgt))
    }
}

impl RestrictionCategory for Fam<'_> {
    fn restriction(&self, f: &FamMor) -> FamMor {
        FamMor {
            src: f.src.clone(),
            tgt: f.src.clone(),
            phi: (0..f.src.len()).collect(),
            maps: f.maps.iter().map(|m| self.base.restriction(m)).collect(),
        }
    }
}

/// Concatenation, where it stays within length `k`.
pub struct Concat;

impl Coproducts<Fam<'_>> for Concat {
    fn initial(&self, _c: &Fam<'_>) -> Family {
        vec![]
    }
    fn initial_map(&self, _c: &Fam<'_>, a: &Family) -> FamMor {
        FamMor { src: vec![], tgt: a.clone(), phi: vec![], maps: vec![] }
    }
    fn cocone(&self, c: &Fam<'_>, a: &Family, b: &Family) -> Option<Cocone<Family, FamMor>> {
        if a.len() + b.len() > c.k {
            return None;
        }
        let sum = [a.clone(), b.clone()].concat();
        let inl = FamMor {
            src: a.clone(),
            tgt: sum.clone(),
            phi: (0..a.len()).collect(),
            maps: a.iter().map(|o| c.base.identity(o)).collect(),
        };
        let inr = FamMor {
            src: b.clone(),
            tgt: sum.clone(),
            phi: (a.len()..a.len() + b.len()).collect(),
            maps: b.iter().map(|o| c.base.identity(o)).collect(),
        };
        Some(Cocone { sum, inl, inr })
    }
    fn copair(&self, c: &Fam<'_>, f: &FamMor, g: &FamMor) -> Option<FamMor> {
        if f.tgt != g.tgt || f.src.len() + g.src.len() > c.k {
            return None;
        }
        Some(FamMor {
            src: [f.src.clone(), g.src.clone()].concat(),
            tgt: f.tgt.clone(),
            phi: [f.phi.clone(), g.phi.clone()].concat(),
            maps: [f.maps.clone(), g.maps.clone()].concat(),
        })
    }
}

/// Tabulate `Fam(X)` on families of length `≤ k` with its concatenation
/// coproducts.
pub fn fam_completion(x: &FinRCat, k: usize, cap: usize) -> Result<(FinRCat, TableCoproducts<ObjId, MorId>)> {
    let fam = Fam { base: x, k };
    let (table, m) = FinRCat::materialize(&fam, cap)?;
    let objs = fam.objects();
    let cp = TableCoproducts::transport(&fam, &Concat, &objs, |o| m.obj_index.get(o).copied(), |f| m.try_mor(f))
        .expect("the empty family and its maps are tabulated");
    Ok((table, cp))
}
