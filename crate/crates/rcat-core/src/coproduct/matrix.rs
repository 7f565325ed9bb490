//! Maps between finite coproducts as matrices of partial maps.

use super::{find_decision, injection_retraction, nary_copair, nary_sum, nary_sum_map, Coproducts};
use crate::category::{Category, FinCategory, MorId, ObjId, RestrictionCategory};
use crate::error::{CatError, Result};
use crate::format::{escape, split_unescaped, unescape};

/// A `Λ × K` grid of maps `f_{λκ} : A_λ → B_κ` with a row witness `h_λ`
/// restriction inverse to `⟨r̄f_{λκ}⟩_κ : Σ_κ A_λ → A_λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMatrix<O, M> {
    pub rows: Vec<O>,
    pub cols: Vec<O>,
    pub entries: Vec<Vec<M>>,
    pub witnesses: Vec<M>,
}

fn no_sum<C: Category>(c: &C, parts: &[C::Obj]) -> CatError {
    CatError::NoCoproduct(parts.iter().map(|p| c.obj_label(p)).collect::<Vec<_>>().join("+"), String::new())
}

/// `⟨r̄f_κ⟩_κ` for one row.
fn row_selector<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    row: &C::Obj,
    entries: &[C::Mor],
) -> Result<C::Mor> {
    let legs: Vec<C::Mor> = entries.iter().map(|f| c.restriction(f)).collect();
    nary_copair(c, cp, &legs, row).ok_or_else(|| no_sum(c, &vec![row.clone(); entries.len()]))
}

fn witness_ok<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    row: &C::Obj,
    entries: &[C::Mor],
    h: &C::Mor,
) -> Result<bool> {
    let g = row_selector(c, cp, row, entries)?;
    Ok(c.dom(h) == *row
        && c.cod(h) == c.dom(&g)
        && c.compose(h, &g) == c.restriction(&g)
        && c.compose(&g, h) == c.restriction(h))
}

/// The restriction inverse of `⟨r̄f_κ⟩_κ`, if the row admits one.
pub fn row_witness<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    row: &C::Obj,
    entries: &[C::Mor],
) -> Result<Option<C::Mor>> {
    let g = row_selector(c, cp, row, entries)?;
    Ok(c.restriction_inverse(&g))
}

/// Entries `i*_κ f i_λ`, with the decision of `f i_λ` as row witness.
pub fn matrix_decompose<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    f: &C::Mor,
    rows: &[C::Obj],
    cols: &[C::Obj],
) -> Result<PartialMatrix<C::Obj, C::Mor>> {
    let src = nary_sum(c, cp, rows).ok_or_else(|| no_sum(c, rows))?;
    let tgt = nary_sum(c, cp, cols).ok_or_else(|| no_sum(c, cols))?;
    if c.dom(f) != src.sum || c.cod(f) != tgt.sum {
        return Err(CatError::ShapeMismatch(format!(
            "{} is not a map {} → {}",
            c.mor_label(f),
            c.obj_label(&src.sum),
            c.obj_label(&tgt.sum)
        )));
    }
    let stars = (0..cols.len()).map(|k| injection_retraction(c, cp, &tgt, k)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(rows.len());
    let mut witnesses = Vec::with_capacity(rows.len());
    for (l, i) in src.injections.iter().enumerate() {
        let fi = c.compose(f, i);
        entries.push(stars.iter().map(|s| c.compose(s, &fi)).collect());
        let d = find_decision(c, cp, &fi, cols)?.decision.ok_or(CatError::NoDecision(l))?;
        witnesses.push(d.h);
    }
    Ok(PartialMatrix { rows: rows.to_vec(), cols: cols.to_vec(), entries, witnesses })
}

/// `∇ (Σ_λ Σ_κ f_{λκ}) (Σ_λ h_λ)`.
pub fn matrix_recompose<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    m: &PartialMatrix<C::Obj, C::Mor>,
) -> Result<C::Mor> {
    check_shape(c, m)?;
    for (l, row) in m.rows.iter().enumerate() {
        if !witness_ok(c, cp, row, &m.entries[l], &m.witnesses[l])? {
            return Err(CatError::InvalidWitness(l));
        }
    }
    let tgt = nary_sum(c, cp, &m.cols).ok_or_else(|| no_sum(c, &m.cols))?;
    let src = nary_sum(c, cp, &m.rows).ok_or_else(|| no_sum(c, &m.rows))?;
    let mut row_maps = Vec::with_capacity(m.rows.len());
    for row in &m.entries {
        row_maps.push(nary_sum_map(c, cp, row).ok_or_else(|| no_sum(c, &m.cols))?);
    }
    let inner = nary_sum_map(c, cp, &row_maps).ok_or_else(|| no_sum(c, &m.rows))?;
    let hs = nary_sum_map(c, cp, &m.witnesses).ok_or_else(|| no_sum(c, &m.rows))?;
    let nabla = nary_copair(c, cp, &vec![c.identity(&tgt.sum); m.rows.len()], &tgt.sum)
        .ok_or_else(|| no_sum(c, &m.rows))?;
    let out = c.compose(&nabla, &c.compose(&inner, &hs));
    debug_assert_eq!(c.dom(&out), src.sum);
    Ok(out)
}

fn check_shape<C: Category>(c: &C, m: &PartialMatrix<C::Obj, C::Mor>) -> Result<()> {
    if m.entries.len() != m.rows.len() || m.witnesses.len() != m.rows.len() {
        return Err(CatError::ShapeMismatch("row count".into()));
    }
    for (l, row) in m.entries.iter().enumerate() {
        if row.len() != m.cols.len() {
            return Err(CatError::ShapeMismatch(format!("row {l} has {} entries", row.len())));
        }
        for (k, f) in row.iter().enumerate() {
            if c.dom(f) != m.rows[l] || c.cod(f) != m.cols[k] {
                return Err(CatError::ShapeMismatch(format!("entry ({l},{k}) is {}", c.mor_label(f))));
            }
        }
    }
    Ok(())
}

/// Entry `(λ, μ)` is `⟨g_{κμ} f_{λκ}⟩_κ h_λ`.
pub fn matrix_multiply<C: RestrictionCategory, CP: Coproducts<C>>(
    c: &C,
    cp: &CP,
    g: &PartialMatrix<C::Obj, C::Mor>,
    f: &PartialMatrix<C::Obj, C::Mor>,
) -> Result<PartialMatrix<C::Obj, C::Mor>> {
    check_shape(c, f)?;
    check_shape(c, g)?;
    if f.cols != g.rows {
        return Err(CatError::ShapeMismatch("columns of F differ from rows of G".into()));
    }
    let mut entries = Vec::with_capacity(f.rows.len());
    let mut witnesses = Vec::with_capacity(f.rows.len());
    for (l, a) in f.rows.iter().enumerate() {
        let mut row = Vec::with_capacity(g.cols.len());
        for (mu, target) in g.cols.iter().enumerate() {
            let legs: Vec<C::Mor> = (0..f.cols.len()).map(|k| c.compose(&g.entries[k][mu], &f.entries[l][k])).collect();
            let join = nary_copair(c, cp, &legs, target).ok_or_else(|| no_sum(c, &f.cols))?;
            row.push(c.compose(&join, &f.witnesses[l]));
        }
        let h = row_witness(c, cp, a, &row)?.ok_or(CatError::InvalidWitness(l))?;
        entries.push(row);
        witnesses.push(h);
    }
    Ok(PartialMatrix { rows: f.rows.clone(), cols: g.cols.clone(), entries, witnesses })
}

/// Text form over a table:
///
/// ```text
/// rows=A,B cols=C,D
/// f00
/// f01
/// f10
/// f11
/// witnesses
/// h0
/// h1
/// ```
///
/// Object names are escaped, morphism names sit one per line.
impl PartialMatrix<ObjId, MorId> {
    pub fn to_text(&self, x: &FinCategory) -> String {
        let list = |os: &[ObjId]| os.iter().map(|o| escape(x.obj_name(*o))).collect::<Vec<_>>().join(",");
        let mut out = format!("rows={} cols={}\n", list(&self.rows), list(&self.cols));
        for f in self.entries.iter().flatten() {
            out.push_str(x.mor_name(*f));
            out.push('\n');
        }
        out.push_str("witnesses\n");
        for h in &self.witnesses {
            out.push_str(x.mor_name(*h));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, x: &FinCategory) -> Result<Self> {
        let err = |line: usize, message: String| CatError::Parse { location: format!("line {line}"), message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (n, header) = lines.next().ok_or_else(|| err(1, "empty matrix".into()))?;
        let mut fields = header.split_whitespace();
        let mut objects = |key: &str| -> Result<Vec<ObjId>> {
            let field = fields.next().and_then(|f| f.strip_prefix(key)).ok_or_else(|| err(n, format!("expected `{key}...`")))?;
            if field.is_empty() {
                return Ok(vec![]);
            }
            split_unescaped(field, ',').iter().map(|s| x.object_by_name(&unescape(s)).map_err(|e| err(n, e.to_string()))).collect()
        };
        let rows = objects("rows=")?;
        let cols = objects("cols=")?;
        let rest: Vec<(usize, &str)> = lines.collect();
        let last = rest.last().map_or(n, |(i, _)| *i);
        let mor = |k: usize, what: &str| -> Result<MorId> {
            let (i, l) = rest.get(k).ok_or_else(|| err(last, format!("missing {what}")))?;
            x.morphism_by_name(l).map_err(|e| err(*i, e.to_string()))
        };
        let (r, k) = (rows.len(), cols.len());
        let entries = (0..r).map(|l| (0..k).map(|j| mor(l * k + j, "entry")).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        match rest.get(r * k) {
            Some((_, "witnesses")) => {}
            Some((i, l)) => return Err(err(*i, format!("expected `witnesses`, found `{l}`"))),
            None => return Err(err(last, "missing `witnesses`".into())),
        }
        let witnesses = (0..r).map(|l| mor(r * k + 1 + l, "witness")).collect::<Result<Vec<_>>>()?;
        if let Some((i, l)) = rest.get(r * k + 1 + r) {
            return Err(err(*i, format!("trailing `{l}`")));
        }
        let m = PartialMatrix { rows, cols, entries, witnesses };
        check_shape(x, &m)?;
        Ok(m)
    }
}
