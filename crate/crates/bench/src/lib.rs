//! Fixtures shared by the benches in `benches/`.

use algaut::automata::Coalgebra;
use algaut::langlib::{alphabet, generated_local_variety, parse_regex};
use algaut::PairTag;

/// The local variety generated by one regex.
pub fn local_variety(pair: PairTag, regex: &str, letters: &str) -> Coalgebra {
    let l = parse_regex(regex, &alphabet(letters)).expect("fixture regex parses");
    generated_local_variety(pair.c_tag(), &[l]).expect("fixture variety fits the caps").coalgebra
}
