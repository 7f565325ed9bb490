use std::path::Path;

use rcat_core::category::{check_category_laws, check_restriction_axioms, is_total};
use rcat_core::copy::distributive::DistributiveFile;
use rcat_core::copy::{extensive_completion, Completion, FinSetDistributive};
use rcat_core::coproduct::{
    check_restriction_coproducts, check_restriction_zero, find_decision, is_extensive_map, matrix_decompose,
    matrix_multiply, matrix_recompose, search_coproducts, PartialMatrix, TableCoproducts,
};
use rcat_core::format::{split_unescaped, unescape, CategoryFile};
use rcat_core::par::{par_to_rcat_capped, FinSet};
use rcat_core::product::{
    check_restriction_products, idempotent_lattice, restriction_limit_of_arrow, restriction_limit_of_diagram,
    search_restriction_products, total_equalizer, DiagramFile, SearchedProducts,
};
use rcat_core::split::{check_extensive_category, is_extensive_rcat, split_idempotents, total_subcategory};
use rcat_core::{CatError, Category, CheckOptions, FinCategory, FinRCat, MorId, ObjId, Result};

use crate::report::Report;
use crate::{Command, MatrixOp, Output};

type Artifact = (Option<String>, Option<Output>);

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CatError::Parse { location: path.display().to_string(), message: e.to_string() })
}

fn load(path: &Path) -> Result<FinRCat> {
    CategoryFile::from_json(&read(path)?).and_then(|f| f.to_rcat()).map_err(|e| located(path, e))
}

fn located(path: &Path, e: CatError) -> CatError {
    match e {
        CatError::Parse { location, message } => {
            CatError::Parse { location: format!("{}: {location}", path.display()), message }
        }
        other => other,
    }
}

fn names(x: &FinCategory, ms: &[MorId]) -> Vec<String> {
    ms.iter().map(|m| x.mor_name(*m).to_string()).collect()
}

fn objects(x: &FinCategory, list: &str, sep: char) -> Result<Vec<ObjId>> {
    split_unescaped(list, sep).iter().map(|s| x.object_by_name(unescape(s).trim())).collect()
}

fn coproducts(x: &FinRCat, report: &mut Report) -> Option<TableCoproducts<ObjId, MorId>> {
    let (cp, missing) = search_coproducts(x, None);
    report.detail("missing_coproducts", missing.len());
    cp
}

/// Runs one command; returns the constructed category, if any, as a file.
pub fn run(command: &Command, opts: CheckOptions, report: &mut Report) -> Result<Artifact> {
    match command {
        Command::Check { file, coproducts: with_cp, zero, products } => {
            let x = load(file)?;
            report.detail("objects", x.n_objects());
            report.detail("morphisms", x.n_morphisms());
            report.absorb(check_category_laws(&x.base, opts));
            report.absorb(check_restriction_axioms(&x, opts));
            if *with_cp || *zero {
                match coproducts(&x, report) {
                    Some(cp) => {
                        if *with_cp {
                            report.absorb(check_restriction_coproducts(&x, &cp, opts));
                        }
                        if *zero {
                            report.absorb(check_restriction_zero(&x, &cp, opts));
                        }
                    }
                    None => report.fail("initial", vec!["no initial object".into()]),
                }
            }
            if *products {
                match search_restriction_products(&x) {
                    Some(ps) => report.absorb(check_restriction_products(&x, &ps, opts)),
                    None => report.fail("terminal", vec!["no terminal object among total maps".into()]),
                }
            }
            Ok((None, None))
        }
        Command::Decide { file, morphism, coproduct } => {
            let x = load(file)?;
            let f = x.base.morphism_by_name(morphism)?;
            let parts = objects(&x.base, coproduct, '+')?;
            let cp = coproducts(&x, report).ok_or_else(|| CatError::NoZero("no initial object".into()))?;
            let s = find_decision(&x, &cp, &f, &parts)?;
            report.detail("by_axioms", s.by_axioms);
            report.detail("by_inverse", s.by_inverse);
            report.detail("characterizations_agree", s.characterizations_agree);
            report.detail("axioms_evaluable", s.axioms_evaluable);
            report.detail("unique", s.unique);
            match &s.decision {
                Some(d) => {
                    report.detail("decision", x.base.mor_name(d.h));
                    report.checked += 1;
                }
                None => report.fail("decision-missing", vec![morphism.clone()]),
            }
            if s.decision.is_some() && !s.unique {
                report.fail("decision-ambiguous", vec![morphism.clone()]);
            }
            if !s.characterizations_agree {
                report.fail("characterizations-disagree", vec![morphism.clone()]);
            }
            Ok((None, None))
        }
        Command::Matrix { op } => matrix(op, report),
        Command::Split { file, out } => {
            let x = load(file)?;
            let cp = search_coproducts(&x, None).0;
            let kr = split_idempotents(&x, cp.as_ref(), opts.cap)?;
            emit_rcat(&kr.table, opts, report, out)
        }
        Command::Total { file, out } => {
            let x = load(file)?;
            let t = total_subcategory(&x)?;
            emit_category(&t, opts, report, out)
        }
        Command::Complete { finset, file, out } => {
            let c = match (finset, file) {
                (Some(n), _) => completion(extensive_completion(&FinSet::new(*n), &FinSetDistributive, opts)?, report),
                (None, Some(path)) => {
                    let data = DistributiveFile::from_json(&read(path)?).map_err(|e| located(path, e))?;
                    let (d, s) = data.load().map_err(|e| located(path, e))?;
                    completion(extensive_completion(&d, &s, opts)?, report)
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            emit_category(&c, opts, report, out)
        }
        Command::Limits { file, morphism, diagram, equalizer } => {
            let x = load(file)?;
            let b = &x.base;
            if let Some(m) = morphism {
                let f = b.morphism_by_name(m)?;
                match restriction_limit_of_arrow(&x, &f, opts) {
                    Some(l) => {
                        report.detail("limit", b.obj_name(l.object));
                        report.detail("p", b.mor_name(l.p));
                        report.detail("s", b.mor_name(l.s));
                        report.absorb(l.report);
                    }
                    None => report.fail("limit-missing", vec![m.clone()]),
                }
            } else if let Some(path) = diagram {
                let d = DiagramFile::from_json(&read(path)?).map_err(|e| located(path, e))?.resolve(b)?;
                let l = restriction_limit_of_diagram(&x, &d, opts)?;
                report.detail("limit", b.obj_name(l.apex));
                report.detail("legs", names(b, &l.legs));
                report.detail("idempotents", names(b, &l.idempotents));
                report.detail("lax_cones", l.lax_cones);
                report.detail("sampled", l.sampled);
                report.absorb(l.report);
            } else if let Some(pair) = equalizer {
                let (f, g) = (b.morphism_by_name(&pair[0])?, b.morphism_by_name(&pair[1])?);
                let ps = search_restriction_products(&x).ok_or_else(|| CatError::NoProducts("no terminal object".into()))?;
                let e = total_equalizer(&x, &ps, &f, &g, opts)?;
                report.detail("equalizer", b.obj_name(e.object));
                report.detail("inclusion", b.mor_name(e.inclusion));
                report.absorb(e.report);
            } else {
                return Err(CatError::ShapeMismatch("give --morphism, --diagram or --equalizer".into()));
            }
            Ok((None, None))
        }
        Command::Lattice { file, object } => {
            let x = load(file)?;
            let b = &x.base;
            let a = b.object_by_name(object)?;
            let l = idempotent_lattice(&x, &SearchedProducts, &a, opts)?;
            let el = names(b, &l.elements);
            let table = |t: &Vec<Vec<usize>>| -> Vec<Vec<String>> {
                t.iter().map(|row| row.iter().map(|&k| el[k].clone()).collect()).collect()
            };
            report.detail("bottom", &el[l.bottom]);
            report.detail("top", &el[l.top]);
            report.detail("meet", table(&l.meet));
            report.detail("join", table(&l.join));
            report.detail("elements", &el);
            report.absorb(l.report);
            Ok((None, None))
        }
        Command::Extensive { file, morphism } => {
            let x = load(file)?;
            let b = &x.base;
            if let Some(m) = morphism {
                let f = b.morphism_by_name(m)?;
                let cp = coproducts(&x, report).ok_or_else(|| CatError::NoZero("no initial object".into()))?;
                let v = is_extensive_map(&x, &cp, &f)?;
                report.detail("evaluated", v.evaluated);
                report.checked += 1;
                if !v.extensive {
                    let w = v.witness.map(|h| b.mor_name(h).to_string()).into_iter();
                    report.fail("extensive-map", std::iter::once(m.clone()).chain(w).collect());
                }
            } else if b.all_morphisms().iter().all(|f| is_total(&x, f)) {
                // every map total: an ordinary category, extensive in the
                // pullback sense
                report.detail("mode", "category");
                let (cp, missing) = search_coproducts(b, None);
                report.detail("missing_coproducts", missing.len());
                let pairs: Vec<(ObjId, ObjId)> = cp.map(|k| k.cocones.keys().cloned().collect()).unwrap_or_default();
                report.absorb(check_extensive_category(b, &pairs, None, opts));
            } else {
                report.detail("mode", "restriction");
                match coproducts(&x, report) {
                    Some(cp) => report.absorb(is_extensive_rcat(&x, &cp, opts)),
                    None => report.fail("initial", vec!["no initial object".into()]),
                }
            }
            Ok((None, None))
        }
        Command::Par { n, finset, out } => {
            let x = if *finset {
                FinRCat::materialize(&FinSet::new(*n), opts.cap)?.0
            } else {
                par_to_rcat_capped(*n, opts.cap)?
            };
            emit_rcat(&x, opts, report, out)
        }
    }
}

fn completion<O: Ord, M: Ord>(c: Completion<O, M>, report: &mut Report) -> FinCategory {
    report.detail("missing_products", c.missing_products.len());
    report.detail("representatives", c.representatives.len());
    report.absorb(c.report);
    c.category
}

fn emit_rcat(x: &FinRCat, opts: CheckOptions, report: &mut Report, out: &Output) -> Result<Artifact> {
    report.detail("objects", x.n_objects());
    report.detail("morphisms", x.n_morphisms());
    report.absorb(check_restriction_axioms(x, opts));
    Ok((Some(CategoryFile::from_rcat(x).to_json()), Some(out.clone())))
}

fn emit_category(c: &FinCategory, opts: CheckOptions, report: &mut Report, out: &Output) -> Result<Artifact> {
    report.detail("objects", c.n_objects());
    report.detail("morphisms", c.n_morphisms());
    report.absorb(check_category_laws(c, opts));
    Ok((Some(CategoryFile::from_category(c).to_json()), Some(out.clone())))
}

fn matrix(op: &MatrixOp, report: &mut Report) -> Result<Artifact> {
    let with = |file: &Path, report: &mut Report| -> Result<(FinRCat, TableCoproducts<ObjId, MorId>)> {
        let x = load(file)?;
        let cp = coproducts(&x, report).ok_or_else(|| CatError::NoZero("no initial object".into()))?;
        Ok((x, cp))
    };
    let parse = |path: &Path, x: &FinRCat| PartialMatrix::parse(&read(path)?, &x.base).map_err(|e| located(path, e));
    match op {
        MatrixOp::Decompose { file, morphism, rows, cols } => {
            let (x, cp) = with(file, report)?;
            let f = x.base.morphism_by_name(morphism)?;
            let m = matrix_decompose(&x, &cp, &f, &objects(&x.base, rows, ',')?, &objects(&x.base, cols, ',')?)?;
            report.checked += 1;
            Ok((Some(m.to_text(&x.base)), None))
        }
        MatrixOp::Recompose { file, matrix } => {
            let (x, cp) = with(file, report)?;
            let m = parse(matrix, &x)?;
            let f = matrix_recompose(&x, &cp, &m)?;
            report.checked += 1;
            report.detail("morphism", x.base.mor_name(f));
            Ok((None, None))
        }
        MatrixOp::Multiply { file, g, f } => {
            let (x, cp) = with(file, report)?;
            let (mg, mf) = (parse(g, &x)?, parse(f, &x)?);
            let m = matrix_multiply(&x, &cp, &mg, &mf)?;
            report.checked += 1;
            Ok((Some(m.to_text(&x.base)), None))
        }
    }
}
