use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn rcat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcat")).current_dir(dir).args(args).env_remove("RCAT_CAP").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("rcat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn ok(o: &Output) -> &Output {
    assert_eq!(o.status.code(), Some(0), "{}{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr));
    o
}

#[test]
fn par3_checks() {
    let d = scratch("par3");
    ok(&rcat(&d, &["par", "3", "-o", "par3.json"]));
    let r = json(ok(&rcat(&d, &["--json", "check", "par3.json"])));
    assert_eq!(r["status"], "pass");
    // Σ_{a,b ≤ 3} (b+1)^a partial maps
    let count: u64 = (0..=3u32).flat_map(|a| (0..=3u64).map(move |b| (b + 1).pow(a))).sum();
    assert_eq!(r["details"]["morphisms"], count);
    assert_eq!(r["details"]["objects"], 4);
}

#[test]
fn nowhere_defined_map_decides_to_nowhere() {
    let d = scratch("decide");
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    let r = json(ok(&rcat(&d, &["--json", "decide", "par2.json", "--morphism", "1>2:-", "--coproduct", "1+1"])));
    assert_eq!(r["details"]["decision"], "1>2:-");
    assert_eq!(r["details"]["unique"], true);
}

#[test]
fn completion_of_finset_two() {
    let d = scratch("complete");
    let r = rcat(&d, &["--json", "complete", "--finset", "2", "-o", "c2.json"]);
    let r = json(ok(&r));
    assert_eq!(r["details"]["objects"], 7);
    assert_eq!(r["artifact"], "c2.json");
    let e = json(ok(&rcat(&d, &["--json", "extensive", "c2.json"])));
    assert_eq!(e["status"], "pass");
    assert_eq!(e["details"]["mode"], "category");
}

#[test]
fn emitted_categories_recheck() {
    let d = scratch("roundtrip");
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    ok(&rcat(&d, &["par", "2", "--finset", "-o", "fin2.json"]));
    ok(&rcat(&d, &["split", "par2.json", "-o", "split.json"]));
    ok(&rcat(&d, &["split", "split.json", "-o", "split2.json"]));
    ok(&rcat(&d, &["total", "par2.json", "-o", "total.json"]));
    ok(&rcat(&d, &["complete", "--finset", "2", "-o", "c2.json"]));
    for f in ["par2.json", "fin2.json", "split.json", "split2.json", "total.json", "c2.json"] {
        let r = json(ok(&rcat(&d, &["--json", "check", f])));
        assert_eq!(r["status"], "pass", "{f}");
    }
    // objects of the first split are subsets S ⊆ n, of the second pairs T ⊆ S
    let a = json(&rcat(&d, &["--json", "check", "split.json"]));
    let b = json(&rcat(&d, &["--json", "check", "split2.json"]));
    assert_eq!(a["details"]["objects"], (0..=2u32).map(|n| 2u64.pow(n)).sum::<u64>());
    assert_eq!(b["details"]["objects"], (0..=2u32).map(|n| 3u64.pow(n)).sum::<u64>());
}

#[test]
fn output_is_byte_stable() {
    let d = scratch("stable");
    let first = rcat(&d, &["complete", "--finset", "2"]);
    let second = rcat(&d, &["complete", "--finset", "2"]);
    ok(&first);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    let a = rcat(&d, &["--json", "--all", "check", "par2.json", "--coproducts", "--zero", "--products"]);
    let b = rcat(&d, &["--json", "--all", "check", "par2.json", "--coproducts", "--zero", "--products"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timing_ms"));
    let t = json(&rcat(&d, &["--json", "--timing", "check", "par2.json"]));
    assert!(t["timing_ms"].is_u64());
}

#[test]
fn malformed_input_exits_two_with_position() {
    let d = scratch("malformed");
    std::fs::write(d.join("bad.json"), "{\"objects\": [\"A\"],\n \"morphisms\": [\n").unwrap();
    let o = rcat(&d, &["check", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json") && err.contains("line"), "{err}");

    std::fs::write(
        d.join("dangling.json"),
        r#"{"objects": ["A"], "morphisms": [{"name": "1", "dom": "A", "cod": "B"}],
            "identity": {"A": "1"}, "compose": [["1", "1", "1"]], "restriction": {"1": "1"}}"#,
    )
    .unwrap();
    let o = rcat(&d, &["check", "dangling.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("morphisms[0].cod"));

    assert_eq!(rcat(&d, &["check", "missing.json"]).status.code(), Some(2));
    assert_eq!(rcat(&d, &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn broken_restriction_exits_one() {
    let d = scratch("broken");
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(d.join("par2.json")).unwrap()).unwrap();
    // the partial identity on {0} claims to be total
    file["restriction"]["2>2:0,-"] = Value::String("2>2:0,1".into());
    std::fs::write(d.join("broken.json"), serde_json::to_string(&file).unwrap()).unwrap();
    let o = rcat(&d, &["--json", "check", "broken.json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["status"], "fail");
    assert!(!r["violations"].as_array().unwrap().is_empty());
}

#[test]
fn size_cap_from_environment() {
    let d = scratch("cap");
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    let o = Command::new(env!("CARGO_BIN_EXE_rcat"))
        .current_dir(&d)
        .args(["--json", "check", "par2.json"])
        .env("RCAT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["status"], "truncated");
    assert_eq!(r["violations"].as_array().unwrap().len(), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_rcat")).current_dir(&d).args(["check", "par2.json"]).env("RCAT_CAP", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matrix_round_trip() {
    let d = scratch("matrix");
    ok(&rcat(&d, &["par", "4", "-o", "par4.json"]));
    // the swap 2 → 2 as a 2 × 2 matrix over 1 + 1
    let m = rcat(&d, &["matrix", "decompose", "par4.json", "--morphism", "2>2:1,0", "--rows", "1,1", "--cols", "1,1"]);
    let text = String::from_utf8(ok(&m).stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "rows=1,1 cols=1,1");
    assert_eq!(&lines[1..5], &["1>1:-", "1>1:0", "1>1:0", "1>1:-"]);
    std::fs::write(d.join("swap.txt"), &text).unwrap();
    let r = json(ok(&rcat(&d, &["--json", "matrix", "recompose", "par4.json", "swap.txt"])));
    assert_eq!(r["details"]["morphism"], "2>2:1,0");
    // swap twice is the identity matrix
    let sq = rcat(&d, &["matrix", "multiply", "par4.json", "swap.txt", "swap.txt"]);
    let sq = String::from_utf8(ok(&sq).stdout.clone()).unwrap();
    let lines: Vec<&str> = sq.lines().collect();
    assert_eq!(&lines[1..5], &["1>1:0", "1>1:-", "1>1:-", "1>1:0"]);

    std::fs::write(d.join("short.txt"), "rows=1,1 cols=1,1\n1>1:0\n").unwrap();
    let o = rcat(&d, &["matrix", "recompose", "par4.json", "short.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn limits_of_arrow_and_diagram() {
    let d = scratch("limits");
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    let r = json(ok(&rcat(&d, &["--json", "limits", "par2.json", "--morphism", "2>1:0,-"])));
    // the limit of f splits r̄f, the partial identity on {0}
    assert_eq!(r["details"]["limit"], "1");
    std::fs::write(
        d.join("span.json"),
        r#"{"nodes": ["x", "y", "z"],
            "arrows": [{"name": "a", "from": "x", "to": "z"}, {"name": "b", "from": "y", "to": "z"}],
            "assignment": {"x": "1", "y": "1", "z": "1", "a": "1>1:0", "b": "1>1:0"}}"#,
    )
    .unwrap();
    let r = json(ok(&rcat(&d, &["--json", "limits", "par2.json", "--diagram", "span.json"])));
    assert_eq!(r["status"], "pass");
    std::fs::write(d.join("cycle.json"), r#"{"nodes": ["x"], "arrows": [{"name": "a", "from": "x", "to": "x"}], "assignment": {"x": "1", "a": "1>1:0"}}"#).unwrap();
    assert_eq!(rcat(&d, &["limits", "par2.json", "--diagram", "cycle.json"]).status.code(), Some(2));
}

#[test]
fn lattice_and_extensive() {
    let d = scratch("lattice");
    ok(&rcat(&d, &["par", "2", "-o", "par2.json"]));
    // joins pair into 1 × 1, which has three points
    let o = rcat(&d, &["lattice", "par2.json", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("products"));
    ok(&rcat(&d, &["par", "4", "-o", "par4.json"]));
    let r = json(ok(&rcat(&d, &["--json", "lattice", "par4.json", "1"])));
    assert_eq!(r["details"]["elements"].as_array().unwrap().len(), 2);
    assert_eq!(r["details"]["bottom"], "1>1:-");
    assert_eq!(r["details"]["top"], "1>1:0");
    let r = json(ok(&rcat(&d, &["--json", "extensive", "par2.json"])));
    assert_eq!(r["details"]["mode"], "restriction");
}
