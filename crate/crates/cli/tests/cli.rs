use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use algaut::algebra::{find_isomorphism, FinAlgebra, VarietyTag};
use algaut::automata::Coalgebra;
use algaut::langlib::{alphabet, parse_regex, RegularLanguage};
use algaut::monoids::{DMonoid, GeneratedDMonoid};
use algaut::preimage::morphism_from_specs;
use serde_json::Value;

fn algaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algaut")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = algaut(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, v: &T) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn syntactic_monoid_document() {
    let text = ok(&["syntactic", "--tag", "BA", "--regex", "(ab)*", "--json"]);
    let m: GeneratedDMonoid = serde_json::from_str(&text).unwrap();
    assert_eq!(m.size(), 6);
    assert!(m.check_representatives().unwrap());
    // byte-identical on a second run and after a round trip
    assert_eq!(text, ok(&["syntactic", "--tag", "BA", "--regex", "(ab)*", "--json"]));
    assert_eq!(serde_json::to_string_pretty(&m).unwrap() + "\n", text);
    assert!(ok(&["syntactic", "--tag", "BA", "--regex", "(ab)*"]).starts_with("SET monoid with 6 elements"));
}

#[test]
fn dualize_reverses_a_semilattice_chain() {
    let dir = tempfile::tempdir().unwrap();
    let chain = FinAlgebra::chain(VarietyTag::Jsl0, 3).unwrap();
    let path = write_json(dir.path(), "chain3.alg", &chain);
    let dual: FinAlgebra = serde_json::from_str(&ok(&["dualize", "--pair", "JSL0", "--in", &path, "--json"])).unwrap();
    assert_eq!(dual.size, 3);
    assert!(find_isomorphism(&dual, &chain).is_some());
    let back = write_json(dir.path(), "dual.alg", &dual);
    let twice: FinAlgebra = serde_json::from_str(&ok(&["dualize", "--pair", "JSL0", "--in", &back, "--json"])).unwrap();
    assert!(find_isomorphism(&twice, &chain).is_some());
    assert!(ok(&["dualize", "--pair", "JSL0", "--in", &path, "--dot"]).starts_with("digraph hasse"));
}

#[test]
fn dualize_morphism_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let b = FinAlgebra::powerset_ba(1);
    let h = algaut::algebra::AlgMorphism { source: b.clone(), target: FinAlgebra::powerset_ba(2), map: vec![0, 3] };
    let path = write_json(dir.path(), "h.json", &h);
    let d: Value = serde_json::from_str(&ok(&["dualize", "--pair", "BA", "--in", &path, "--json"])).unwrap();
    assert_eq!(d["map"].as_array().unwrap().len(), 2);
    let report = ok(&["dualize", "--pair", "BA", "--check", "--max-size", "4"]);
    assert!(report.ends_with("all laws hold\n"));
}

#[test]
fn check_laws_small_corpus() {
    let out = ok(&["check-laws", "--laws", "lrev", "--max-states", "3"]);
    assert!(out.ends_with("holds on corpus\n"), "{out}");
    let o = algaut(&["check-laws", "--laws", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minimize_and_derivatives() {
    let dir = tempfile::tempdir().unwrap();
    let l: RegularLanguage = serde_json::from_str(&ok(&["minimize", "--regex", "(ab)*", "--json"])).unwrap();
    assert_eq!(l.num_states(), 3);
    let path = write_json(dir.path(), "l.json", &l);
    assert_eq!(serde_json::from_str::<RegularLanguage>(&ok(&["minimize", "--in", &path, "--json"])).unwrap(), l);
    // a redundant two-state automaton for a* collapses
    let redundant = r#"{"alphabet":"a","states":2,"delta":[[1],[0]],"finals":[0,1],"initial":0}"#;
    let rp = dir.path().join("r.json");
    fs::write(&rp, redundant).unwrap();
    let m: RegularLanguage = serde_json::from_str(&ok(&["minimize", "--in", rp.to_str().unwrap(), "--json"])).unwrap();
    assert_eq!(m, parse_regex("a*", &alphabet("a")).unwrap());
    let d: RegularLanguage =
        serde_json::from_str(&ok(&["deriv", "--side", "left", "--letter", "a", "--regex", "(ab)*", "--json"])).unwrap();
    assert_eq!(d, parse_regex("b(ab)*", &alphabet("ab")).unwrap());
    let r: RegularLanguage =
        serde_json::from_str(&ok(&["deriv", "--side", "right", "--letter", "b", "--regex", "(ab)*", "--json"])).unwrap();
    assert_eq!(r, parse_regex("(ab)*a", &alphabet("ab")).unwrap());
}

#[test]
fn local_variety_and_preimage() {
    let dir = tempfile::tempdir().unwrap();
    let v: Value = serde_json::from_str(&ok(&["localvariety", "--tag", "BA", "--regex", "(ab)*", "--json"])).unwrap();
    let q: Coalgebra = serde_json::from_value(v["coalgebra"].clone()).unwrap();
    assert_eq!(v["languages"].as_array().unwrap().len(), q.size());
    let qp = write_json(dir.path(), "q.json", &q);
    let f = morphism_from_specs(VarietyTag::Set, "c", "ab", &["ab"]).unwrap();
    let fp = write_json(dir.path(), "f.json", &f);
    let qf: Coalgebra = serde_json::from_str(&ok(&["preimage", "--automaton", &qp, "--map", &fp, "--json"])).unwrap();
    assert_eq!(qf.alphabet, vec!['c']);
    assert_eq!(qf.size(), q.size());
    let state = ok(&["minimize", "--in", &qp, "--state", "0", "--json"]);
    assert!(serde_json::from_str::<RegularLanguage>(&state).is_ok());
    assert!(ok(&["localvariety", "--tag", "BA", "--regex", "(ab)*", "--dot"]).starts_with("digraph coalgebra"));
    let seeds = dir.path().join("seeds.txt");
    fs::write(&seeds, "# parity\n(aa)*\n").unwrap();
    let text = ok(&["localvariety", "--tag", "BA", "--seeds", seeds.to_str().unwrap()]);
    assert!(text.starts_with("4 languages"), "{text}");
}

#[test]
fn languages_of_the_order_two_group() {
    let text = ok(&["varlang", "--builtin", "order2", "--tag", "SET", "--alphabet", "a", "--pair", "BA", "--json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let langs: Vec<RegularLanguage> =
        v["languages"].as_array().unwrap().iter().map(|e| serde_json::from_value(e["automaton"].clone()).unwrap()).collect();
    let mut want: Vec<RegularLanguage> =
        ["0", "(aa)*", "a(aa)*", "a*"].iter().map(|r| parse_regex(r, &alphabet("a")).unwrap()).collect();
    want.sort();
    assert_eq!(langs, want);
}

#[test]
fn eilenberg_table_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.txt");
    fs::write(&samples, "(aa)* a\n(ab)* ab\n").unwrap();
    let s = samples.to_str().unwrap();
    let m = algaut::lab::order2_group(VarietyTag::Set).unwrap();
    let mp = write_json(dir.path(), "g2.json", &m);
    assert_eq!(serde_json::from_str::<DMonoid>(&fs::read_to_string(&mp).unwrap()).unwrap(), m);
    let out = ok(&["eilenberg-check", "--monoid", &mp, "--samples", s, "--nmax", "2"]);
    assert!(out.contains("2 rows, 0 mismatches, 0 inconclusive"), "{out}");
    let j: Value = serde_json::from_str(&ok(&["eilenberg-check", "--monoid", &mp, "--samples", s, "--json"])).unwrap();
    assert_eq!(j["rows"][1]["division"]["verdict"], "no");
    // tuple cap too small for the direct search, and the free monoid too large
    let big = algaut::lab::nil3_monoid(VarietyTag::Vect(2)).unwrap();
    let bp = write_json(dir.path(), "big.json", &big);
    let abc = dir.path().join("abc.txt");
    fs::write(&abc, "(abc)* abc\n").unwrap();
    let o = algaut(&["eilenberg-check", "--monoid", &bp, "--samples", abc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn enumerate_counts() {
    let v: Vec<FinAlgebra> = serde_json::from_str(&ok(&["enumerate", "--tag", "DL01", "--size", "4", "--json"])).unwrap();
    assert_eq!(v.len(), 2);
    assert!(ok(&["enumerate", "--tag", "BA", "--size", "4"]).starts_with("1 algebras"));
}

#[test]
fn usage_errors() {
    assert_eq!(algaut(&["minimize", "--regex", "(ab"]).status.code(), Some(2));
    assert_eq!(algaut(&["minimize", "--in", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(algaut(&["bogus"]).status.code(), Some(2));
    assert_eq!(algaut(&["varlang", "--builtin", "order2", "--alphabet", "a"]).status.code(), Some(2));
    let o = algaut(&["check-laws", "--laws", "nonsense"]);
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
}
