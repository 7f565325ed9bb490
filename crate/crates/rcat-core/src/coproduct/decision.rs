//! Decisions `⟨f⟩ : C → Σ_K C` for maps `f : C → Σ_K B_κ`.

use super::{injection_retraction, nary_copair, nary_sum, nary_sum_map, sum_map, to_zero, Coproducts, NarySum};
use crate::category::{Category, RestrictionCategory};
use crate::error::{CatError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision<O, M> {
    pub subject: M,
    pub parts: Vec<O>,
    pub h: M,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionSearch<O, M> {
    pub decision: Option<Decision<O, M>>,
    /// Exactly one candidate satisfied the axioms.
    pub unique: bool,
    /// Candidates satisfying D.1 and D.2.
    pub by_axioms: usize,
    /// Candidates satisfying the restriction-inverse characterization.
    pub by_inverse: usize,
    /// Both characterizations selected the same set of candidates.
    pub characterizations_agree: bool,
    /// D.2 could be evaluated; it needs `Σ_K Σ_κ B_κ`, which a truncated
    /// table may lack. Without it the restriction-inverse form decides.
    pub axioms_evaluable: bool,
}

/// Precomputed data for testing candidates against one subject.
struct Frame<O, M> {
    f: M,
    rf: M,
    copies: NarySum<O, M>,
    nabla: M,
    /// `(Σf, (Σi_κ)f)`, when `Σ_K Σ_κ B_κ` is chosen.
    d2: Option<(M, M)>,
    selector: M,
}

fn frame<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
    parts: &[C::Obj],
) -> Result<Frame<C::Obj, C::Mor>> {
    let src = c.dom(f);
    let target = nary_sum(c, cp, parts).ok_or_else(|| CatError::NoCoproduct(format!("{parts:?}"), String::new()))?;
    if target.sum != c.cod(f) {
        return Err(CatError::ShapeMismatch(format!(
            "codomain of {} is not the chosen sum of {parts:?}",
            c.mor_label(f)
        )));
    }
    let k = parts.len();
    let no_sum = || CatError::NoCoproduct(c.obj_label(&src), format!("{k} copies"));
    let copies = nary_sum(c, cp, &vec![src.clone(); k]).ok_or_else(no_sum)?;
    let nabla = nary_copair(c, cp, &vec![c.identity(&src); k], &src).ok_or_else(no_sum)?;
    let d2 = nary_sum_map(c, cp, &vec![f.clone(); k])
        .zip(nary_sum_map(c, cp, &target.injections))
        .map(|(sum_f, sum_inj)| (sum_f, c.compose(&sum_inj, f)));
    let mut legs = Vec::with_capacity(k);
    for kappa in 0..k {
        let r = injection_retraction(c, cp, &target, kappa)?;
        legs.push(c.restriction(&c.compose(&r, f)));
    }
    let selector = nary_copair(c, cp, &legs, &src).ok_or_else(no_sum)?;
    Ok(Frame { f: f.clone(), rf: c.restriction(f), copies, nabla, d2, selector })
}

impl<O, M: PartialEq> Frame<O, M> {
    fn axioms<C: RestrictionCategory<Obj = O, Mor = M>>(&self, c: &C, h: &M) -> bool {
        match &self.d2 {
            Some((sum_f, sum_inj_f)) => c.compose(&self.nabla, h) == self.rf && c.compose(sum_f, h) == *sum_inj_f,
            None => self.inverse_form(c, h),
        }
    }

    fn inverse_form<C: RestrictionCategory<Obj = O, Mor = M>>(&self, c: &C, h: &M) -> bool {
        let g = &self.selector;
        let rh = c.restriction(h);
        c.compose(h, g) == c.restriction(g) && c.compose(g, h) == rh && rh == self.rf
    }
}

/// D.1 `∇h = r̄f` and D.2 `(Σf)h = (Σi_κ)f`.
pub fn is_decision_of<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
    parts: &[C::Obj],
    h: &C::Mor,
) -> Result<bool> {
    if parts.is_empty() {
        return Ok(to_zero(c, cp, &c.dom(f)).as_ref() == Some(h));
    }
    let fr = frame(c, cp, f, parts)?;
    Ok(c.dom(h) == c.dom(f) && c.cod(h) == fr.copies.sum && fr.axioms(c, h))
}

/// `h : A → Σ_K A` is its own decision.
pub fn is_own_decision<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    h: &C::Mor,
    k: usize,
) -> Result<bool> {
    let parts = vec![c.dom(h); k];
    is_decision_of(c, cp, h, &parts, h)
}

/// Exhaustive search of `hom(C, Σ_K C)` under both characterizations.
pub fn find_decision<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
    parts: &[C::Obj],
) -> Result<DecisionSearch<C::Obj, C::Mor>> {
    let src = c.dom(f);
    if parts.is_empty() {
        let h = to_zero(c, cp, &src).ok_or_else(|| CatError::NoZero(c.obj_label(&src)))?;
        return Ok(DecisionSearch {
            decision: Some(Decision { subject: f.clone(), parts: vec![], h }),
            unique: true,
            by_axioms: 1,
            by_inverse: 1,
            characterizations_agree: true,
            axioms_evaluable: true,
        });
    }
    let fr = frame(c, cp, f, parts)?;
    let mut first = None;
    let (mut by_axioms, mut by_inverse, mut agree) = (0, 0, true);
    for h in c.hom(&src, &fr.copies.sum) {
        let a = fr.axioms(c, &h);
        let b = fr.inverse_form(c, &h);
        by_axioms += a as usize;
        by_inverse += b as usize;
        agree &= a == b;
        if a && first.is_none() {
            first = Some(h);
        }
    }
    Ok(DecisionSearch {
        decision: first.map(|h| Decision { subject: fr.f.clone(), parts: parts.to_vec(), h }),
        unique: by_axioms == 1,
        by_axioms,
        by_inverse,
        characterizations_agree: agree,
        axioms_evaluable: fr.d2.is_some(),
    })
}

/// n-ary decisions from binary ones: peel off the first summand with a
/// binary decision `h₀`, decide `j*f` over the rest, and take `(1 + h′)h₀`.
pub fn decision_from_binary<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
    parts: &[C::Obj],
) -> Result<Decision<C::Obj, C::Mor>> {
    let h = from_binary_step(c, cp, f, parts, 0)?;
    if !is_decision_of(c, cp, f, parts, &h)? {
        return Err(CatError::MissingBinaryDecision(0));
    }
    Ok(Decision { subject: f.clone(), parts: parts.to_vec(), h })
}

fn from_binary_step<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
    parts: &[C::Obj],
    step: usize,
) -> Result<C::Mor> {
    let src = c.dom(f);
    match parts.len() {
        0 => to_zero(c, cp, &src).ok_or_else(|| CatError::NoZero(c.obj_label(&src))),
        1 => Ok(c.restriction(f)),
        2 => find_decision(c, cp, f, parts)?
            .decision
            .map(|d| d.h)
            .ok_or(CatError::MissingBinaryDecision(step)),
        _ => {
            let rest = nary_sum(c, cp, &parts[1..]).ok_or(CatError::MissingBinaryDecision(step))?;
            let split = [parts[0].clone(), rest.sum.clone()];
            let h0 = find_decision(c, cp, f, &split)?
                .decision
                .map(|d| d.h)
                .ok_or(CatError::MissingBinaryDecision(step))?;
            let outer = nary_sum(c, cp, &split).ok_or(CatError::MissingBinaryDecision(step))?;
            let j_star = injection_retraction(c, cp, &outer, 1)?;
            let h_rest = from_binary_step(c, cp, &c.compose(&j_star, f), &parts[1..], step + 1)?;
            let lift = sum_map(c, cp, &c.identity(&src), &h_rest).ok_or(CatError::MissingBinaryDecision(step))?;
            Ok(c.compose(&lift, &h0))
        }
    }
}

/// The middle-four interchange `(B + C) + (B′ + C′) → (B + B′) + (C + C′)`.
pub fn middle_four<C: Category, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    b: &C::Obj,
    cc: &C::Obj,
    b2: &C::Obj,
    c2: &C::Obj,
) -> Option<C::Mor> {
    let left = cp.cocone(c, b, b2)?;
    let right = cp.cocone(c, cc, c2)?;
    let outer = cp.cocone(c, &left.sum, &right.sum)?;
    let from_first = cp.copair(c, &c.compose(&outer.inl, &left.inl), &c.compose(&outer.inr, &right.inl))?;
    let from_second = cp.copair(c, &c.compose(&outer.inl, &left.inr), &c.compose(&outer.inr, &right.inr))?;
    cp.copair(c, &from_first, &from_second)
}

/// For decisions `h` of `f : A → B + C` and `h′` of `f′ : A′ → B′ + C′`,
/// returns `((1+τ+1)(f+f′), (1+τ+1)(h+h′))`; the second is the decision of
/// the first.
pub fn adding_decisions<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: (&C::Mor, &C::Obj, &C::Obj),
    f2: (&C::Mor, &C::Obj, &C::Obj),
    h: &C::Mor,
    h2: &C::Mor,
) -> Option<(C::Mor, C::Mor)> {
    let (a, a2) = (c.dom(f.0), c.dom(f2.0));
    let subject = c.compose(&middle_four(c, cp, f.1, f.2, f2.1, f2.2)?, &sum_map(c, cp, f.0, f2.0)?);
    let decision = c.compose(&middle_four(c, cp, &a, &a, &a2, &a2)?, &sum_map(c, cp, h, h2)?);
    Some((subject, decision))
}
