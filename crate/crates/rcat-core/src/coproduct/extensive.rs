//! Extensive maps: those along which every decision can be pulled back.

use super::{find_decision, is_own_decision, sum_map, Coproducts};
use crate::category::{Category, FinRCat, MorId, RestrictionCategory};
use crate::error::Result;
use crate::report::{CheckOptions, Checker, LawReport};

/// Verdict with the first decision `h : B → B + B` for which `hf` has no
/// decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensiveVerdict<M> {
    pub extensive: bool,
    pub witness: Option<M>,
    /// False when the table lacks `A + A` or `B + B` for `f : A → B`; the map
    /// then counts as extensive since no decision can be asked of it.
    pub evaluated: bool,
}

/// Self-decisions `h : B → B + B`, by scanning the hom-set.
pub fn binary_decisions_on<C: RestrictionCategory, CP: Coproducts<C>>(c: &C, cp: &CP, b: &C::Obj) -> Result<Vec<C::Mor>> {
    let Some(k) = cp.cocone(c, b, b) else { return Ok(vec![]) };
    let mut out = Vec::new();
    for h in c.hom(b, &k.sum) {
        if is_own_decision(c, cp, &h, 2)? {
            out.push(h);
        }
    }
    Ok(out)
}

pub fn is_extensive_map<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
) -> Result<ExtensiveVerdict<C::Mor>> {
    let b = c.cod(f);
    let a = c.dom(f);
    if cp.cocone(c, &a, &a).is_none() || cp.cocone(c, &b, &b).is_none() {
        return Ok(ExtensiveVerdict { extensive: true, witness: None, evaluated: false });
    }
    for h in binary_decisions_on(c, cp, &b)? {
        if find_decision(c, cp, &c.compose(&h, f), &[b.clone(), b.clone()])?.decision.is_none() {
            return Ok(ExtensiveVerdict { extensive: false, witness: Some(h), evaluated: true });
        }
    }
    Ok(ExtensiveVerdict { extensive: true, witness: None, evaluated: true })
}

/// `Ex(X)`: the wide subcategory of extensive maps, with a report on its
/// closure under composition, restriction and `+`, and on containing every
/// decision.
///
/// Verdicts on maps whose domain has no chosen `A + A` are provisional. Maps
/// generated from identities and evaluated extensive maps are protected; an
/// unprotected provisional map is dropped as soon as a composite, restriction
/// or sum through it leaves the subcategory. A closure failure among
/// protected maps is a violation.
pub fn extensive_subcategory<CP: Coproducts<FinRCat>>(
    x: &FinRCat,
    cp: &CP,
    opts: CheckOptions,
) -> Result<(FinRCat, Vec<MorId>, LawReport)> {
    let all = x.all_morphisms();
    let n = all.len();
    let mut ext = vec![false; n];
    let mut provisional = vec![false; n];
    for f in &all {
        let v = is_extensive_map(x, cp, f)?;
        ext[f.0 as usize] = v.extensive;
        provisional[f.0 as usize] = !v.evaluated;
    }
    let sums: Vec<(MorId, MorId, MorId)> = {
        let mut out = Vec::new();
        for f in &all {
            for g in &all {
                if cp.cocone(x, &x.dom(f), &x.dom(g)).is_some() && cp.cocone(x, &x.cod(f), &x.cod(g)).is_some() {
                    if let Some(s) = sum_map(x, cp, f, g) {
                        out.push((*f, *g, s));
                    }
                }
            }
        }
        out
    };
    // Each rule: if all `parts` are kept, `result` must be kept.
    let mut rules: Vec<(&'static str, Vec<MorId>, MorId)> = Vec::new();
    for f in &all {
        rules.push(("restriction-closed", vec![*f], x.restriction(f)));
        for g in x.hom_from(&x.cod(f)) {
            rules.push(("composition-closed", vec![g, *f], x.compose(&g, f)));
        }
    }
    for (f, g, s) in &sums {
        rules.push(("sum-closed", vec![*f, *g], *s));
    }
    let mut protected: Vec<bool> = (0..n).map(|i| ext[i] && !provisional[i]).collect();
    for a in x.objects() {
        protected[x.identity(&a).0 as usize] = true;
    }
    loop {
        let mut changed = false;
        for (_, parts, result) in &rules {
            if parts.iter().all(|m| protected[m.0 as usize]) && !protected[result.0 as usize] {
                protected[result.0 as usize] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for i in 0..n {
        ext[i] |= protected[i];
    }
    let mut ck = Checker::new(opts);
    loop {
        let mut changed = false;
        for (_, parts, result) in &rules {
            let kept = |m: &MorId| ext[m.0 as usize];
            if parts.iter().all(kept) && !kept(result) {
                for p in parts {
                    if provisional[p.0 as usize] && ext[p.0 as usize] && !protected[p.0 as usize] {
                        ext[p.0 as usize] = false;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (law, parts, result) in &rules {
        if parts.iter().all(|m| ext[m.0 as usize]) && !ext[result.0 as usize] {
            let w = parts.iter().map(|m| x.mor_label(m)).collect();
            if ck.fail(law, w) {
                return Ok((x.clone(), vec![], ck.finish()));
            }
        } else {
            ck.tick();
        }
    }
    for b in x.objects() {
        for h in binary_decisions_on(x, cp, &b)? {
            ensure_law_ok(&mut ck, ext[h.0 as usize], "contains-decisions", || vec![x.mor_label(&h)]);
        }
    }
    let report = ck.finish();
    if !report.passed {
        return Ok((x.clone(), vec![], report));
    }
    let (sub, back) = x.base.subcategory(&|_| true, &|f| ext[f.0 as usize])?;
    let restriction = back
        .iter()
        .map(|f| sub.morphism_by_name(x.base.mor_name(x.restriction(f))))
        .collect::<Result<Vec<_>>>()?;
    Ok((FinRCat::new(sub, restriction)?, back, report))
}

fn ensure_law_ok(ck: &mut Checker, ok: bool, law: &str, w: impl FnOnce() -> Vec<String>) {
    if ok {
        ck.tick();
    } else {
        ck.fail(law, w());
    }
}
