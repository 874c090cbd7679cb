//! End-to-end runs of the `fgeq` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use freegroup::{format_word, parse_word, Alphabet, Letter, Word};
use freegroup_cli::homfile::{parse_hom, print_hom};
use proptest::prelude::*;
use serde_json::Value;

fn fgeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgeq")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(path: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fold_prints_rank_and_basis() {
    let out = fgeq(&["fold", "--gens", "ab,abb"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "rank: 2\nbasis: a, b\n");
    let out = fgeq(&["fold", "--gens", ""]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("rank: 0\n"));
    let out = fgeq(&["fold", "--gens", "aa,b"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("rank: 2\n"));
}

#[test]
fn fold_reports_parse_positions() {
    let out = fgeq(&["fold", "--alphabet", "a,b", "--gens", "ab,aqb"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1, column 5"), "{err}");
}

#[test]
fn fold_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = fgeq(&["fold", "--gens", "aa,b", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let al = Alphabet::new(["a", "b"]).unwrap();
    let gens = [parse_word(&al, "aa").unwrap(), parse_word(&al, "b").unwrap()];
    let expected = freegroup::SubgroupGraph::fold(&al, &gens).to_dot();
    assert_eq!(fs::read_to_string(dot).unwrap(), expected);
}

#[test]
fn sd_statuses_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = file(d, "g.hom", "x -> a\ny -> b\n");
    let h = file(d, "h.hom", "x -> a\ny -> c\n");
    let report = d.join("sd.json");
    let out = fgeq(&["sd", &g, &h, "--json", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(report.to_str().unwrap());
    assert_eq!(v["status"], "stabilized");
    assert_eq!(v["sdBasis"], serde_json::json!(["x"]));

    let d1 = file(d, "d1.hom", "x -> aa\ny -> b\n");
    let d2 = file(d, "d2.hom", "x -> a\ny -> bb\n");
    let out = fgeq(&["sd", &d1, &d2, "--max-iter", "6", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "cap-reached");
    assert_eq!(v["iterateRanks"], serde_json::json!([2, 2, 2, 2, 2, 2]));

    let out = fgeq(&["sd", &g, &g, "--json", "-"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stabilizedAt"], 0);

    let k = file(d, "k.hom", "x -> ab\ny -> 1\n");
    let out = fgeq(&["sd", &k, &d1, "--json", "-"]);
    assert_eq!(code(&out), 4);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "unsupported");
}

#[test]
fn eq_verdicts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let id = file(d, "id.hom", "a -> x\nb -> y\n");
    let inv = file(d, "inv.hom", "a -> x\nb -> Y\n");
    let swap = file(d, "swap.hom", "a -> y\nb -> x\n");
    let out = fgeq(&["eq", &id, &inv, "--json", "-"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "exact-basis");
    assert_eq!(v["basisWords"], serde_json::json!(["a"]));
    let out = fgeq(&["eq", &id, &swap, "--json", "-"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["basisWords"], serde_json::json!([]));

    let g = file(d, "g.hom", "x -> a\ny -> b\n");
    let h = file(d, "h.hom", "x -> a\ny -> c\n");
    let rg = file(d, "rg.hom", "a -> a\nb -> b\nc -> 1\n");
    let rh = file(d, "rh.hom", "a -> a\nb -> 1\nc -> c\n");
    let out = fgeq(&["eq", &g, &h, "--retraction", &rg, "--retraction", &rh, "--json", "-"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "exact-basis");
    assert_eq!(v["basisWords"], serde_json::json!(["x"]));
    let out = fgeq(&["eq", &g, &h, "--retraction", &rh, "--retraction", &rg]);
    assert_eq!(code(&out), 2);
    let out = fgeq(&["eq", &g, &h, "--retraction", &rg]);
    assert_eq!(code(&out), 1);
    let bad = file(d, "bad.hom", "x -> a\ny -> b?\n");
    let out = fgeq(&["eq", &g, &bad]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
}

#[test]
fn fuzz_reports() {
    let out = fgeq(&["fuzz", "--property", "inertness-rank2", "--seed", "7", "--trials", "200", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["trialsRun"], 200);
    for alias in ["theoremA", "appendixA-restriction"] {
        let out = fgeq(&["fuzz", "--property", alias, "--seed", "7", "--trials", "100"]);
        assert_eq!(code(&out), 0, "{alias}");
    }
    assert_eq!(code(&fgeq(&["fuzz", "--property", "no-such"])), 1);
    assert_eq!(code(&fgeq(&["fuzz", "--property", "hanna-neumann", "--trials", "0"])), 1);
}

#[test]
fn json_has_stable_keys_and_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = file(d, "g.hom", "a -> xy\nb -> y\n");
    let h = file(d, "h.hom", "a -> x\nb -> y\n");
    let first = fgeq(&["eq", &g, &h, "--json", "-"]).stdout;
    let second = fgeq(&["eq", &g, &h, "--json", "-"]).stdout;
    assert_eq!(first, second);
    let v: Value = serde_json::from_slice(&first).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let keys = ["version", "kind", "verdict", "basisWords", "rank", "witnesses", "provenance", "radius", "rankBound"];
    assert_eq!(v.as_object().unwrap().len(), keys.len());
    let positions: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
    assert!(positions.windows(2).all(|p| p[0] < p[1]), "{text}");
    assert_eq!(v["verdict"], "sound-candidate");
    assert_eq!(v["radius"], 8);
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn word_grammar_round_trips(w in word(3, 12), raw in "[abcABC1 ]{0,12}") {
        let compact = Alphabet::new(["a", "b", "c"]).unwrap();
        let extended = Alphabet::new(["x1", "x2", "x3"]).unwrap();
        prop_assert_eq!(parse_word(&compact, &format_word(&compact, &w)).unwrap(), w.clone());
        prop_assert_eq!(parse_word(&extended, &format_word(&extended, &w)).unwrap(), w);
        if let Ok(parsed) = parse_word(&compact, &raw) {
            let printed = format_word(&compact, &parsed);
            prop_assert_eq!(format_word(&compact, &parse_word(&compact, &printed).unwrap()), printed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hom_documents_round_trip(images in prop::collection::vec(word(3, 6), 2..=3)) {
        let codomain = Alphabet::new(["a", "b", "c"]).unwrap();
        let domain = Alphabet::new(["x", "y", "z"][..images.len()].iter().copied()).unwrap();
        let h = freegroup::Homomorphism::new(domain, codomain, images).unwrap();
        prop_assert_eq!(parse_hom(&print_hom(&h)).unwrap(), h);
    }
}
