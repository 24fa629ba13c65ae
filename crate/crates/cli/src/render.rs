//! Text, JSON and DOT forms of command results.

use std::fmt::Write;

use algaut::algebra::{AlgMorphism, FinAlgebra, Table};
use algaut::automata::{language_of_state, Coalgebra, LAlgebra};
use algaut::dot;
use algaut::duality::{PairTag, PredualityReport};
use algaut::lab::EilenbergReport;
use algaut::langlib::RegularLanguage;
use algaut::monoids::{Division, GeneratedDMonoid};
use algaut::preimage::LawReport;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::emit;

/// A local variety as a document: its coalgebra and, per state, the language
/// as a regex and as a canonical automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyOut {
    pub coalgebra: Coalgebra,
    pub languages: Vec<LanguageEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageEntry {
    pub regex: String,
    pub automaton: RegularLanguage,
}

impl VarietyOut {
    pub fn new(coalgebra: Coalgebra, languages: Vec<RegularLanguage>) -> Self {
        let languages = languages.into_iter().map(|l| LanguageEntry { regex: l.to_regex(), automaton: l }).collect();
        VarietyOut { coalgebra, languages }
    }
}

pub enum Output {
    Algebra(FinAlgebra),
    Algebras(Vec<FinAlgebra>),
    Morphism(AlgMorphism),
    Language(RegularLanguage),
    Coalgebra(Coalgebra),
    LAlgebra(LAlgebra),
    Variety(VarietyOut),
    Monoid(GeneratedDMonoid),
    Eilenberg(EilenbergReport),
    Laws(LawReport),
    Preduality(PairTag, usize, PredualityReport),
}

impl Output {
    /// 0 success, 1 counterexample or mismatch, 3 inconclusive.
    pub fn status(&self) -> u8 {
        match self {
            Output::Eilenberg(r) if !r.mismatches().is_empty() => 1,
            Output::Eilenberg(r) if !r.inconclusive().is_empty() => 3,
            Output::Laws(r) if !r.passed() => 1,
            Output::Preduality(_, _, r) if !r.passed() => 1,
            _ => 0,
        }
    }

    pub fn json(&self) -> String {
        match self {
            Output::Algebra(a) => emit(a),
            Output::Algebras(v) => emit(v),
            Output::Morphism(h) => emit(h),
            Output::Language(l) => emit(l),
            Output::Coalgebra(q) => emit(q),
            Output::LAlgebra(a) => emit(a),
            Output::Variety(v) => emit(v),
            Output::Monoid(m) => emit(m),
            Output::Eilenberg(r) => emit(r),
            Output::Laws(r) => emit(r),
            Output::Preduality(pair, n, r) => emit(&json!({
                "pair": pair,
                "max_size": n,
                "objects": r.objects,
                "morphisms": r.morphisms,
                "compositions": r.compositions,
                "hom_counts": r.hom_counts,
                "failures": r.failures.iter().map(|f| json!({"law": f.law, "witness": f.witness})).collect::<Vec<_>>(),
            })),
        }
    }

    pub fn dot(&self) -> Option<String> {
        Some(match self {
            Output::Algebra(a) => dot::hasse_dot(a),
            Output::Language(l) => dot::language_dot(l),
            Output::Coalgebra(q) => dot::coalgebra_dot(q),
            Output::LAlgebra(a) => dot::lalgebra_dot(a),
            Output::Variety(v) => dot::coalgebra_dot(&v.coalgebra),
            Output::Monoid(m) => dot::hasse_dot(&m.base.carrier),
            _ => return None,
        })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Algebra(a) => algebra(&mut s, a),
            Output::Algebras(v) => {
                let _ = writeln!(s, "{} algebras", v.len());
                for (i, a) in v.iter().enumerate() {
                    let _ = writeln!(s, "#{i}");
                    algebra(&mut s, a);
                }
            }
            Output::Morphism(h) => {
                s.push_str("source: ");
                algebra(&mut s, &h.source);
                s.push_str("target: ");
                algebra(&mut s, &h.target);
                let _ = writeln!(s, "map: {:?}", h.map);
            }
            Output::Language(l) => language(&mut s, l),
            Output::Coalgebra(q) => {
                let _ = writeln!(s, "coalgebra for {} over {:?}", q.pair, q.alphabet.iter().collect::<String>());
                s.push_str("states: ");
                algebra(&mut s, &q.states);
                transitions(&mut s, &q.alphabet, &q.trans);
                let _ = writeln!(s, "out: {:?}", q.out);
                for x in 0..q.size() {
                    let _ = writeln!(s, "  {x} accepts {}", language_of_state(q, x).to_regex());
                }
            }
            Output::LAlgebra(a) => {
                let _ = writeln!(s, "algebra automaton for {} over {:?}", a.pair, a.alphabet.iter().collect::<String>());
                s.push_str("states: ");
                algebra(&mut s, &a.states);
                transitions(&mut s, &a.alphabet, &a.trans);
                let _ = writeln!(s, "init: {}", a.init);
            }
            Output::Variety(v) => {
                let _ = writeln!(s, "{} languages over {:?}", v.languages.len(), v.coalgebra.alphabet.iter().collect::<String>());
                for (i, e) in v.languages.iter().enumerate() {
                    let _ = writeln!(s, "  {i}: {}", e.regex);
                }
            }
            Output::Monoid(m) => monoid(&mut s, m),
            Output::Eilenberg(r) => eilenberg(&mut s, r),
            Output::Laws(r) => {
                for o in &r.outcomes {
                    let verdict = match &o.counterexample {
                        None => "holds".to_string(),
                        Some(c) => format!("FAILS: {c}"),
                    };
                    let _ = writeln!(s, "{:<8} {:>6} checks  {verdict}", o.law, o.checked);
                }
                s.push_str(if r.passed() { "holds on corpus\n" } else { "counterexample found\n" });
            }
            Output::Preduality(pair, n, r) => {
                let _ = writeln!(
                    s,
                    "{pair} up to size {n}: {} objects, {} morphisms, {} compositions, {} hom-count pairs",
                    r.objects,
                    r.morphisms,
                    r.compositions,
                    r.hom_counts.len()
                );
                for f in &r.failures {
                    let _ = writeln!(s, "  FAIL {}: {}", f.law, f.witness);
                }
                s.push_str(if r.passed() { "all laws hold\n" } else { "counterexample found\n" });
            }
        }
        s
    }
}

fn algebra(s: &mut String, a: &FinAlgebra) {
    let _ = writeln!(s, "{} algebra with {} elements", a.tag, a.size);
    for (sym, t) in &a.ops {
        match t {
            Table::Const(c) => {
                let _ = writeln!(s, "  {sym} = {c}");
            }
            Table::Unary(t) => {
                let _ = writeln!(s, "  {sym}: {t:?}");
            }
            Table::Binary(t) => {
                let _ = writeln!(s, "  {sym}:");
                for row in t {
                    let _ = writeln!(s, "    {row:?}");
                }
            }
        }
    }
    let covers = dot::covers(a);
    if !covers.is_empty() {
        let c: Vec<String> = covers.iter().map(|(x, y)| format!("{x}<{y}")).collect();
        let _ = writeln!(s, "  covers: {}", c.join(" "));
    }
}

fn transitions(s: &mut String, alphabet: &[char], trans: &[Vec<usize>]) {
    for (c, t) in alphabet.iter().zip(trans) {
        let _ = writeln!(s, "{c}: {t:?}");
    }
}

fn language(s: &mut String, l: &RegularLanguage) {
    let _ = writeln!(s, "regex: {}", l.to_regex());
    let _ = writeln!(s, "{} states, initial 0, finals {:?}", l.num_states(), (0..l.num_states()).filter(|&q| l.finals()[q]).collect::<Vec<_>>());
    for (q, row) in l.delta().iter().enumerate() {
        let moves: Vec<String> = l.alphabet().iter().zip(row).map(|(c, t)| format!("{c}→{t}")).collect();
        let _ = writeln!(s, "  {q}: {}", moves.join(" "));
    }
}

fn monoid(s: &mut String, m: &GeneratedDMonoid) {
    let _ = writeln!(s, "{} monoid with {} elements on {:?}", m.tag(), m.size(), m.alphabet.iter().collect::<String>());
    for (i, r) in m.repr.iter().enumerate() {
        let _ = writeln!(s, "  {i}: {r}");
    }
    let gens: Vec<String> = m.alphabet.iter().zip(&m.gen_images).map(|(c, g)| format!("{c}={g}")).collect();
    let _ = writeln!(s, "generators: {}", gens.join(" "));
    s.push_str("mult:\n");
    for row in &m.base.mult {
        let _ = writeln!(s, "  {row:?}");
    }
    let covers = dot::covers(&m.base.carrier);
    if !covers.is_empty() {
        let c: Vec<String> = covers.iter().map(|(x, y)| format!("{x}<{y}")).collect();
        let _ = writeln!(s, "covers: {}", c.join(" "));
    }
}

fn eilenberg(s: &mut String, r: &EilenbergReport) {
    let _ = writeln!(s, "{:<16} {:<4} {:>4}  {:<8} {:<12} verdict", "regex", "Σ", "|S|", "in V", "divides");
    for row in &r.rows {
        let div = match &row.division {
            Division::Yes { n, .. } => format!("yes (n={n})"),
            Division::No => "no".into(),
            Division::Inconclusive { .. } => "inconclusive".into(),
        };
        let verdict = match row.agrees() {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "inconclusive",
        };
        let _ = writeln!(s, "{:<16} {:<4} {:>4}  {:<8} {:<12} {verdict}", row.regex, row.alphabet, row.monoid_size, row.language_side, div);
    }
    let _ = writeln!(
        s,
        "{} rows, {} mismatches, {} inconclusive (n_max = {})",
        r.rows.len(),
        r.mismatches().len(),
        r.inconclusive().len(),
        r.n_max
    );
}
