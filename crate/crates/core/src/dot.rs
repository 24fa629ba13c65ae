//! Graphviz export for automata, languages and Hasse diagrams.

use std::fmt::Write;

use crate::algebra::FinAlgebra;
use crate::automata::{Coalgebra, LAlgebra};
use crate::langlib::RegularLanguage;

/// Covering pairs `x ⋖ y` of the carrier order.
pub fn covers(a: &FinAlgebra) -> Vec<(usize, usize)> {
    let o = a.order_matrix();
    let n = a.size;
    let lt = |x: usize, y: usize| x != y && o[x][y];
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn hasse_dot(a: &FinAlgebra) -> String {
    let mut s = format!("digraph hasse {{\n  label=\"{}\";\n  rankdir=BT;\n  node [shape=circle];\n", a.tag);
    for x in 0..a.size {
        let _ = writeln!(s, "  {x};");
    }
    for (x, y) in covers(a) {
        let _ = writeln!(s, "  {x} -> {y} [arrowhead=none];");
    }
    s.push_str("}\n");
    s
}

/// Transition edges grouped by endpoints so parallel letters share a label.
fn edges(s: &mut String, alphabet: &[char], trans: &[Vec<usize>], n: usize) {
    for x in 0..n {
        for y in 0..n {
            let label: Vec<String> = alphabet.iter().zip(trans).filter(|(_, t)| t[x] == y).map(|(c, _)| c.to_string()).collect();
            if !label.is_empty() {
                let _ = writeln!(s, "  {x} -> {y} [label=\"{}\"];", label.join(","));
            }
        }
    }
}

fn order_edges(s: &mut String, a: &FinAlgebra) {
    for (x, y) in covers(a) {
        let _ = writeln!(s, "  {x} -> {y} [style=dashed, arrowhead=none, color=gray];");
    }
}

/// States labelled with their output; carrier order as dashed edges.
pub fn coalgebra_dot(q: &Coalgebra) -> String {
    let mut s = format!("digraph coalgebra {{\n  label=\"{} coalgebra over {}\";\n  node [shape=circle];\n", q.pair, q.alphabet.iter().collect::<String>());
    for x in 0..q.size() {
        let _ = writeln!(s, "  {x} [label=\"{x}/{}\"];", q.out[x]);
    }
    edges(&mut s, &q.alphabet, &q.trans, q.size());
    order_edges(&mut s, &q.states);
    s.push_str("}\n");
    s
}

/// The initial state gets an entry arrow; carrier order as dashed edges.
pub fn lalgebra_dot(a: &LAlgebra) -> String {
    let mut s = format!("digraph lalgebra {{\n  label=\"{} algebra automaton over {}\";\n  node [shape=circle];\n  init [shape=point];\n", a.pair, a.alphabet.iter().collect::<String>());
    let _ = writeln!(s, "  init -> {};", a.init);
    edges(&mut s, &a.alphabet, &a.trans, a.size());
    order_edges(&mut s, &a.states);
    s.push_str("}\n");
    s
}

pub fn language_dot(l: &RegularLanguage) -> String {
    let mut s = String::from("digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n  init -> 0;\n");
    for q in 0..l.num_states() {
        let shape = if l.finals()[q] { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  {q} [shape={shape}];");
    }
    edges(&mut s, l.alphabet(), &transpose(l.delta(), l.alphabet().len()), l.num_states());
    s.push_str("}\n");
    s
}

fn transpose(delta: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| delta.iter().map(|r| r[a]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyTag;
    use crate::langlib::{alphabet, parse_regex};

    #[test]
    fn hasse_of_a_square() {
        let b = FinAlgebra::powerset_ba(2);
        assert_eq!(covers(&b), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(hasse_dot(&b).contains("1 -> 3 [arrowhead=none]"));
        assert!(covers(&FinAlgebra::set(3)).is_empty());
        assert_eq!(covers(&FinAlgebra::chain(VarietyTag::Dl01, 3).unwrap()).len(), 2);
    }

    #[test]
    fn language_graph() {
        let l = parse_regex("(ab)*", &alphabet("ab")).unwrap();
        let d = language_dot(&l);
        assert!(d.contains("0 [shape=doublecircle]"));
        assert!(d.contains("0 -> 1 [label=\"a\"]"));
    }
}
