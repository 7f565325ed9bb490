//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rcat_core::category::{check_restriction_axioms, check_restriction_axioms_sampled, plain_inverse, TotalView};
use rcat_core::copy::distributive::decision_by_copying;
use rcat_core::copy::kleisli::kleisli_to_par;
use rcat_core::copy::{
    check_counital_copy, decision_in_kleisli, extensive_completion, FinSetDistributive, Kleisli, KleisliMor,
    ProductsAsCopy,
};
use rcat_core::coproduct::{
    decision_from_binary, find_decision, matrix_decompose, matrix_multiply, matrix_recompose, DisjointUnion,
    PartialMatrix, TableCoproducts,
};
use rcat_core::instances::{RigidPairs, WordSums};
use rcat_core::par::{par_to_rcat, FinSet, Par, PartialFn};
use rcat_core::product::{
    check_p_category, check_restriction_products, check_substitution, idempotent_lattice, restriction_limit_of_arrow,
    restriction_limit_of_diagram, total_equalizer, CartesianPar, Diagram, KrProducts, ParOrdinaryProducts, Perturbation,
};
use rcat_core::split::{
    check_extensive_category, chosen_pairs, is_extensive_rcat, parse_split_name, split_idempotents, total_coproducts,
    total_subcategory, Kr, KrMor, SplitObject,
};
use rcat_core::{Category, CheckOptions, MorId, ObjId, RestrictionCategory};

const AXIOMS_EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(5);
const AXIOM_SAMPLES: usize = 100_000;
const MATRIX_LIMIT: Duration = Duration::from_secs(30);
const MULTIPLY_PAIRS: usize = 10_000;
const STRUCTURE_LIMIT: Duration = Duration::from_secs(60);
const COMPLETION_LIMIT: Duration = Duration::from_secs(120);
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

/// Pointwise decision in Par: `x ↦ (κ, x)` where `f(x)` lies in block `κ`.
fn decision_oracle(f: &PartialFn, blocks: &[usize]) -> PartialFn {
    let n = f.src;
    PartialFn::from_fn(n, n * blocks.len(), |x| {
        let y = f.at(x)?;
        let mut start = 0;
        for (k, b) in blocks.iter().enumerate() {
            if y < start + b {
                return Some(k * n + x);
            }
            start += b;
        }
        None
    })
}

fn random_map(rng: &mut StdRng, src: usize, tgt: usize) -> PartialFn {
    let table = (0..src).map(|_| if tgt == 0 || rng.gen_bool(0.25) { None } else { Some(rng.gen_range(0..tgt)) }).collect::<Vec<_>>();
    PartialFn::from_fn(src, tgt, |x| table[x])
}

fn random_blocks(rng: &mut StdRng) -> Vec<usize> {
    let n = rng.gen_range(1..=2);
    (0..n).map(|_| rng.gen_range(0..=2)).collect()
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let mut morphisms = 0;
    for n in 0..=3 {
        let x = par_to_rcat(n).map_err(|e| e.to_string())?;
        morphisms += x.base.n_morphisms();
        let r = check_restriction_axioms(&x, opts());
        ensure(r.passed, || format!("Par≤{n}: {:?}", r.violations))?;
    }
    let t = within(t0, AXIOMS_EXHAUSTIVE_LIMIT, "exhaustive axioms")?;
    let r = check_restriction_axioms_sampled(&Par::new(4), AXIOM_SAMPLES, SEED, opts());
    ensure(r.passed, || format!("Par≤4 sampled: {:?}", r.violations))?;
    Ok(format!("n≤3 exhaustive over {morphisms} morphisms in {t:.2?}; {AXIOM_SAMPLES} sampled triples for n=4"))
}

fn criterion_2() -> Outcome {
    let t0 = Instant::now();
    let par = Par::new(4);
    let cp = DisjointUnion;
    let err = |e: rcat_core::CatError| e.to_string();
    // valid single rows A → Σ cols, keyed by (|A|, cols)
    let mut rows_ok: BTreeMap<(usize, [usize; 2]), Vec<(Vec<PartialFn>, PartialFn)>> = BTreeMap::new();
    let mut rejected = 0usize;
    for r in 0..=2 {
        for c0 in 0..=2 {
            for c1 in 0..=2 {
                let cols = [c0, c1];
                let mut valid = vec![];
                for e0 in PartialFn::enumerate(r, c0, false) {
                    for e1 in PartialFn::enumerate(r, c1, false) {
                        for w in PartialFn::enumerate(r, 2 * r, false) {
                            let m = PartialMatrix { rows: vec![r], cols: cols.to_vec(), entries: vec![vec![e0.clone(), e1.clone()]], witnesses: vec![w.clone()] };
                            match matrix_recompose(&par, &cp, &m) {
                                Ok(f) => {
                                    let back = matrix_decompose(&par, &cp, &f, &[r], &cols).map_err(err)?;
                                    ensure(back == m, || format!("Φ∘Ψ ≠ id on row {e0} {e1} / {w}"))?;
                                    valid.push((vec![e0.clone(), e1.clone()], w));
                                }
                                Err(_) => rejected += 1,
                            }
                        }
                    }
                }
                // one valid row per map out of A
                ensure(valid.len() == (c0 + c1 + 1).pow(r as u32), || format!("{} valid rows for {r} → {c0}+{c1}", valid.len()))?;
                rows_ok.insert((r, cols), valid);
            }
        }
    }
    let mut maps = 0usize;
    let mut expected_maps = 0usize;
    for r0 in 0..=2 {
        for r1 in 0..=2 {
            for c0 in 0..=2 {
                for c1 in 0..=2 {
                    let (rows, cols) = ([r0, r1], [c0, c1]);
                    for f in PartialFn::enumerate(r0 + r1, c0 + c1, false) {
                        let m = matrix_decompose(&par, &cp, &f, &rows, &cols).map_err(err)?;
                        ensure(matrix_recompose(&par, &cp, &m).map_err(err)? == f, || format!("Ψ∘Φ ≠ id at {f}"))?;
                        maps += 1;
                    }
                    let mut matrices = 0usize;
                    for (x0, w0) in &rows_ok[&(r0, cols)] {
                        for (x1, w1) in &rows_ok[&(r1, cols)] {
                            let m = PartialMatrix {
                                rows: rows.to_vec(),
                                cols: cols.to_vec(),
                                entries: vec![x0.clone(), x1.clone()],
                                witnesses: vec![w0.clone(), w1.clone()],
                            };
                            let f = matrix_recompose(&par, &cp, &m).map_err(err)?;
                            let back = matrix_decompose(&par, &cp, &f, &rows, &cols).map_err(err)?;
                            ensure(back == m, || format!("Φ∘Ψ ≠ id at {f}"))?;
                            matrices += 1;
                        }
                    }
                    let expect = (c0 + c1 + 1).pow((r0 + r1) as u32);
                    expected_maps += expect;
                    ensure(matrices == expect, || format!("{matrices} matrices for {expect} maps"))?;
                }
            }
        }
    }
    // every partial map between sums of two blocks of size ≤ 2
    ensure(maps == expected_maps, || format!("{maps} maps enumerated, {expected_maps} expected"))?;
    let t = within(t0, MATRIX_LIMIT, "matrix bijection")?;

    let mut rng = StdRng::seed_from_u64(SEED);
    let mut mismatches = 0;
    for _ in 0..MULTIPLY_PAIRS {
        let (rows, mid, cols) = (random_blocks(&mut rng), random_blocks(&mut rng), random_blocks(&mut rng));
        let (a, b, c): (usize, usize, usize) = (rows.iter().sum(), mid.iter().sum(), cols.iter().sum());
        let f = random_map(&mut rng, a, b);
        let g = random_map(&mut rng, b, c);
        let mf = matrix_decompose(&par, &cp, &f, &rows, &mid).map_err(err)?;
        let mg = matrix_decompose(&par, &cp, &g, &mid, &cols).map_err(err)?;
        let prod = matrix_multiply(&par, &cp, &mg, &mf).map_err(err)?;
        if prod != matrix_decompose(&par, &cp, &par.compose(&g, &f), &rows, &cols).map_err(err)? {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} multiply mismatches"))?;
    Ok(format!("{maps} maps, {rejected} invalid rows rejected, bijection in {t:.2?}; {MULTIPLY_PAIRS} products, 0 mismatches"))
}

fn criterion_3() -> Outcome {
    let par = Par::new(2);
    let wide = Par::new(8);
    let fs = FinSet::new(4);
    let k = Kleisli::new(&fs, &FinSetDistributive);
    let err = |e: rcat_core::CatError| e.to_string();
    let mut n = 0;
    for c in 0..=2 {
        for a in 0..=2 {
            for b in 0..=2 {
                for f in PartialFn::enumerate(c, a + b, false) {
                    let s = find_decision(&par, &DisjointUnion, &f, &[a, b]).map_err(err)?;
                    ensure(s.unique && s.characterizations_agree, || format!("{f}: {s:?}"))?;
                    let h = s.decision.ok_or_else(|| format!("{f}: no decision"))?.h;
                    ensure(h == decision_oracle(&f, &[a, b]), || format!("{f}: wrong decision {h}"))?;
                    let hb = decision_from_binary(&par, &DisjointUnion, &f, &[a, b]).map_err(err)?.h;
                    ensure(hb == h, || format!("{f}: from binary {hb}"))?;
                    let ht = decision_by_copying(&wide, &DisjointUnion, &CartesianPar::default(), &f, &a, &b)
                        .ok_or_else(|| format!("{f}: formula undefined"))?;
                    ensure(ht == h, || format!("{f}: formula gives {ht}"))?;
                    let kf = KleisliMor { tgt: a + b, map: PartialFn::from_fn(c, a + b + 1, |x| Some(f.at(x).unwrap_or(a + b))) };
                    ensure(kleisli_to_par(&kf) == f, || format!("{f}: Kleisli encoding"))?;
                    let kd = decision_in_kleisli(&k, &kf, &a, &b, opts()).map_err(err)?;
                    ensure(kd.report.passed, || format!("{f}: {:?}", kd.report.violations))?;
                    let hk = kleisli_to_par(&kd.decision.h);
                    ensure(hk == h, || format!("{f}: Kleisli gives {hk}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} maps, unique, characterizations agree, four constructions coincide"))
}

fn chosen(cp: &TableCoproducts<ObjId, MorId>) -> impl Fn(&ObjId, &ObjId) -> Option<rcat_core::coproduct::Cocone<ObjId, MorId>> + '_ {
    move |a, b| cp.cocones.get(&(*a, *b)).cloned()
}

fn criterion_4() -> Outcome {
    let err = |e: rcat_core::CatError| e.to_string();
    let par = Par::new(2);
    let r = is_extensive_rcat(&par, &DisjointUnion, opts());
    ensure(r.passed, || format!("Par≤2: {:?}", r.violations))?;
    let k = split_idempotents(&par, Some(&DisjointUnion), opts().cap).map_err(err)?;
    let total = total_subcategory(&k.table).map_err(err)?;
    let cp = total_coproducts(&k.table, &total, k.coproducts.as_ref().ok_or("no coproducts")?).map_err(err)?;
    let pick = chosen(&cp);
    let r = check_extensive_category(&total, &chosen_pairs(&cp), Some(&pick), opts());
    ensure(r.passed, || format!("Total(K_r(Par≤2)): {:?}", r.violations))?;

    let y = RigidPairs::standard(false);
    let rx = is_extensive_rcat(&y, &WordSums, opts());
    ensure(!rx.passed, || "counterexample passes as a restriction category".into())?;
    let ky = split_idempotents(&y, Some(&WordSums), opts().cap).map_err(err)?;
    let ty = total_subcategory(&ky.table).map_err(err)?;
    let tcp = total_coproducts(&ky.table, &ty, ky.coproducts.as_ref().ok_or("no coproducts")?).map_err(err)?;
    let pick = chosen(&tcp);
    let rt = check_extensive_category(&ty, &chosen_pairs(&tcp), Some(&pick), opts());
    ensure(!rt.passed, || "counterexample passes as a category".into())?;
    let name = rt.violations[0].witnesses.last().ok_or("no witness")?;
    let f = ky.table.base.morphism_by_name(name).map_err(err)?;
    let underlying = y.mor_label(ky.base_map(f));
    ensure(underlying == rx.violations[0].witnesses[0], || format!("witnesses {underlying} vs {}", rx.violations[0].witnesses[0]))?;
    Ok(format!("Par≤2 passes both; counterexample fails both at {underlying}"))
}

fn criterion_5() -> Outcome {
    let t0 = Instant::now();
    let par = Par::new(2);
    let all = CheckOptions::all();
    let mut verdicts = vec![];
    for p in [Perturbation::None, Perturbation::PartialProjection, Perturbation::TwistedDiagonal] {
        let ps = CartesianPar::perturbed(p);
        let rp = check_restriction_products(&par, &ps, all).passed;
        let pc = check_p_category(&par, &ps, all).map(|r| r.passed).unwrap_or(false);
        let cc = check_counital_copy(&par, &ProductsAsCopy(ps), all).passed;
        ensure(rp == pc && pc == cc, || format!("{p:?}: {rp}/{pc}/{cc}"))?;
        ensure(rp == (p == Perturbation::None), || format!("{p:?}: verdict {rp}"))?;
        verdicts.push(format!("{p:?}={}", if rp { "accept" } else { "reject" }));
    }
    let t = within(t0, STRUCTURE_LIMIT, "structure suite")?;
    Ok(format!("{} in {t:.2?}", verdicts.join(", ")))
}

fn mask(e: &PartialFn) -> u32 {
    e.domain().iter().map(|&x| 1u32 << x).sum()
}

fn criterion_6() -> Outcome {
    let err = |e: rcat_core::CatError| e.to_string();
    let par = Par::new(4);
    for a in 0..=4 {
        let l = idempotent_lattice(&par, &ParOrdinaryProducts, &a, opts()).map_err(err)?;
        ensure(l.report.passed, || format!("{a}: {:?}", l.report.violations))?;
        ensure(l.elements.len() == 1 << a, || format!("{a}: {} elements", l.elements.len()))?;
        ensure(mask(&l.elements[l.bottom]) == 0, || format!("{a}: bottom"))?;
        ensure(mask(&l.elements[l.top]) == (1 << a) - 1, || format!("{a}: top"))?;
        let n = l.elements.len();
        for i in 0..n {
            for j in 0..n {
                let (m, m2) = (mask(&l.elements[i]), mask(&l.elements[j]));
                ensure(mask(&l.elements[l.join[i][j]]) == m | m2, || format!("{a}: join"))?;
                ensure(mask(&l.elements[l.meet[i][j]]) == m & m2, || format!("{a}: meet"))?;
                for z in 0..n {
                    let lhs = l.meet[i][l.join[j][z]];
                    let rhs = l.join[l.meet[i][j]][l.meet[i][z]];
                    ensure(lhs == rhs, || format!("{a}: distributivity"))?;
                }
            }
        }
    }
    let mut maps = 0;
    for f in par.all_morphisms() {
        let r = check_substitution(&par, &ParOrdinaryProducts, &f, opts()).map_err(err)?;
        ensure(r.passed, || format!("{}: {:?}", f.label(), r.violations))?;
        maps += 1;
    }
    Ok(format!("objects 0..=4 are subset lattices; substitution checked along {maps} maps"))
}

type KObj = SplitObject<usize, PartialFn>;
type KMor = KrMor<usize, PartialFn>;

fn equalizer_oracle(k: &Kr<'_, Par>, f: &KMor, g: &KMor) -> Option<(KObj, KMor)> {
    let t = TotalView(k);
    let objs = t.objects();
    for e in &objs {
        for i in t.hom(e, &f.src) {
            if k.compose(f, &i) != k.compose(g, &i) {
                continue;
            }
            let universal = objs.iter().all(|z| {
                t.hom(z, &f.src)
                    .iter()
                    .filter(|j| k.compose(f, j) == k.compose(g, j))
                    .all(|j| t.hom(z, e).iter().filter(|h| k.compose(&i, h) == *j).count() == 1)
            });
            if universal {
                return Some((e.clone(), i));
            }
        }
    }
    None
}

fn criterion_7() -> Outcome {
    let err = |e: rcat_core::CatError| e.to_string();
    let par3 = Par::new(3);
    let mut arrows = 0;
    for f in par3.all_morphisms() {
        let l = restriction_limit_of_arrow(&par3, &f, opts()).ok_or_else(|| format!("{}: no limit", f.label()))?;
        ensure(l.report.passed, || format!("{}: {:?}", f.label(), l.report.violations))?;
        ensure(l.object == f.domain().len(), || format!("{}: apex {}", f.label(), l.object))?;
        ensure(par3.compose(&l.p, &l.s) == par3.restriction(&f), || format!("{}: not a splitting", f.label()))?;
        ensure(par3.compose(&l.s, &l.p) == PartialFn::identity(l.object), || format!("{}: s p ≠ 1", f.label()))?;
        arrows += 1;
    }

    let par = Par::new(2);
    let pf = |s: &str| PartialFn::from_label(s).unwrap();
    let shapes = vec![
        Diagram { nodes: vec![], arrows: vec![] },
        Diagram { nodes: vec![1, 2], arrows: vec![] },
        Diagram { nodes: vec![2, 1], arrows: vec![(0, 1, pf("2>1:0,-"))] },
        Diagram { nodes: vec![1, 2, 1], arrows: vec![(0, 1, pf("1>2:0")), (2, 1, pf("1>2:1"))] },
        Diagram { nodes: vec![2, 2, 1], arrows: vec![(0, 1, pf("2>2:0,-")), (2, 1, pf("1>2:0"))] },
        Diagram { nodes: vec![2, 2], arrows: vec![(0, 1, pf("2>2:0,1")), (0, 1, pf("2>2:0,0"))] },
        Diagram { nodes: vec![2, 1, 2], arrows: vec![(0, 1, pf("2>1:0,-")), (0, 2, pf("2>2:1,0"))] },
        Diagram { nodes: vec![1, 2, 1, 2], arrows: vec![(0, 1, pf("1>2:0")), (2, 1, pf("1>2:0")), (3, 0, pf("2>1:0,-"))] },
        Diagram {
            nodes: vec![2, 2, 2, 2],
            arrows: vec![(0, 1, pf("2>2:0,-")), (0, 2, pf("2>2:1,1")), (1, 3, pf("2>2:0,1")), (2, 3, pf("2>2:0,0"))],
        },
    ];
    let mut cones = 0;
    for (n, d) in shapes.iter().enumerate() {
        let l = restriction_limit_of_diagram(&par, d, opts()).map_err(|e| format!("shape {n}: {e}"))?;
        ensure(l.report.passed, || format!("shape {n}: {:?}", l.report.violations))?;
        ensure(!l.sampled, || format!("shape {n}: sampled"))?;
        cones += l.lax_cones;
    }

    let k = Kr::new(&par);
    let kp = KrProducts(&CartesianPar::default());
    let t = TotalView(&k);
    let objs = t.objects();
    let mut pairs = 0;
    for x in &objs {
        for y in &objs {
            let maps = t.hom(x, y);
            for f in &maps {
                for g in &maps {
                    let eq = total_equalizer(&k, &kp, f, g, opts()).map_err(err)?;
                    ensure(eq.report.passed, || format!("{}: {:?}", k.mor_label(f), eq.report.violations))?;
                    let (e, i) = equalizer_oracle(&k, f, g).ok_or("no brute-force equalizer")?;
                    let iso = t.hom(&eq.object, &e).into_iter().any(|h| k.compose(&i, &h) == eq.inclusion && plain_inverse(&t, &h).is_some());
                    ensure(iso, || format!("equalizer of {} and {}", k.mor_label(f), k.mor_label(g)))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{arrows} arrows split; {} shapes against {cones} lax cones; {pairs} equalizer pairs", shapes.len()))
}

fn split_object(name: &str) -> Option<(usize, BTreeSet<usize>)> {
    let (base, idem) = parse_split_name(name)?;
    let n: usize = base.parse().ok()?;
    let e = PartialFn::from_label(&idem).ok()?;
    Some((n, (0..n).filter(|&x| e.at(x) == Some(x)).collect()))
}

fn criterion_8() -> Outcome {
    let t0 = Instant::now();
    let fs = FinSet::new(2);
    let c = extensive_completion(&fs, &FinSetDistributive, opts()).map_err(|e| e.to_string())?;
    ensure(c.report.passed, || format!("{:?}", c.report.violations))?;
    let k = &c.category;
    let objs: Vec<(usize, BTreeSet<usize>)> =
        k.objects().iter().map(|o| split_object(k.obj_name(*o)).ok_or_else(|| k.obj_name(*o).to_string())).collect::<Result<_, _>>()?;
    ensure(objs.len() == 7, || format!("{} objects", objs.len()))?;
    for (i, (_, s)) in objs.iter().enumerate() {
        for (j, (_, t)) in objs.iter().enumerate() {
            let got = k.hom(&ObjId(i as u32), &ObjId(j as u32)).len();
            ensure(got == t.len().pow(s.len() as u32), || format!("hom({s:?}, {t:?}) = {got}"))?;
        }
    }
    let find = |n: usize, s: &[usize]| objs.iter().position(|o| *o == (n, s.iter().copied().collect())).map(|i| ObjId(i as u32));
    let (full, half) = (find(2, &[0, 1]).ok_or("no (2,{0,1})")?, find(2, &[0]).ok_or("no (2,{0})")?);
    ensure(k.hom(&full, &half).len() == 1, || "|hom((2,{0,1}),(2,{0}))| ≠ 1".into())?;
    // (n, S) ≅ N|S| = (|S|, full)
    ensure(c.representatives.len() == objs.len(), || "missing representatives".into())?;
    for r in &c.representatives {
        let (_, s) = &objs[r.object.0 as usize];
        ensure(r.source == s.len(), || format!("{s:?} represented by {}", r.source))?;
        ensure(c.n_obj.get(&r.source).is_some_and(|na| k.dom(&r.to) == r.object && k.cod(&r.to) == *na), || "bad comparison".into())?;
    }
    ensure(c.coproducts.initial == c.n_obj[&0], || "N 0 is not the chosen initial object".into())?;
    let t = within(t0, COMPLETION_LIMIT, "completion")?;
    Ok(format!("7 objects, {} morphisms, {} products outside the universe, in {t:.2?}", k.n_morphisms(), c.missing_products.len()))
}

fn rcat(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rcat")).current_dir(dir).args(args).env_remove("RCAT_CAP").output().expect("rcat runs")
}

fn criterion_9() -> Outcome {
    let run = |tag: &str| -> Result<Vec<(String, Vec<u8>)>, String> {
        let d = std::env::temp_dir().join(format!("rcat-acceptance-{}-{tag}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        std::fs::create_dir_all(&d).map_err(|e| e.to_string())?;
        let emit: [&[&str]; 6] = [
            &["par", "3", "-o", "par3.json"],
            &["par", "2", "--finset", "-o", "fin2.json"],
            &["split", "par3.json", "-o", "split.json"],
            &["total", "par3.json", "-o", "total.json"],
            &["split", "split.json", "-o", "split2.json"],
            &["complete", "--finset", "2", "-o", "complete.json"],
        ];
        let mut out = vec![];
        for args in emit {
            let o = rcat(&d, args);
            ensure(o.status.success(), || format!("rcat {}: {}", args.join(" "), String::from_utf8_lossy(&o.stderr)))?;
            out.push((args.join(" "), o.stdout));
            let file = args[args.len() - 1];
            let o = rcat(&d, &["--json", "check", file]);
            ensure(o.status.success(), || format!("rcat check {file}: {}", String::from_utf8_lossy(&o.stdout)))?;
            out.push((format!("check {file}"), o.stdout));
            out.push((file.to_string(), std::fs::read(d.join(file)).map_err(|e| e.to_string())?));
        }
        let o = rcat(&d, &["--json", "extensive", "complete.json"]);
        ensure(o.status.success(), || format!("rcat extensive: {}", String::from_utf8_lossy(&o.stdout)))?;
        out.push(("extensive".into(), o.stdout));
        let _ = std::fs::remove_dir_all(&d);
        Ok(out)
    };
    let (a, b) = (run("a")?, run("b")?);
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        ensure(x == y, || format!("{name} differs between runs"))?;
    }
    Ok(format!("6 emitted files re-pass check; {} outputs byte-identical across runs", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom suite", criterion_1),
        ("matrix bijection", criterion_2),
        ("decision suite", criterion_3),
        ("extensivity equivalence", criterion_4),
        ("structure equivalence", criterion_5),
        ("lattice suite", criterion_6),
        ("limits suite", criterion_7),
        ("completion pipeline", criterion_8),
        ("cli round-trip", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = t0.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg}) [{t:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({msg}) [{t:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
