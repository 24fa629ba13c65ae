use std::collections::{HashMap, VecDeque};

use algaut::algebra::{enumerate_up_to, VarietyTag};
use algaut::automata::{is_local_variety, is_subcoalgebra_of_rho, language_of_state};
use algaut::duality::{dual_object, double_dual_iso, PairTag};
use algaut::langlib::{
    alphabet, generated_local_variety, parse_regex, preimage_language, words_up_to, DMonoidMorphismFree, RegularLanguage,
};
use algaut::monoids::dual_generated_monoid;
use proptest::prelude::*;

fn dfa(max_states: usize) -> impl Strategy<Value = RegularLanguage> {
    (1..=max_states).prop_flat_map(|n| {
        (prop::collection::vec(prop::collection::vec(0..n, 2), n), prop::collection::vec(any::<bool>(), n))
            .prop_map(move |(delta, finals)| RegularLanguage::from_dfa(alphabet("ab"), &delta, &finals, 0))
    })
}

/// Size of the transition monoid of the minimal automaton, by breadth-first
/// search over state maps.
fn transition_monoid_size(l: &RegularLanguage) -> usize {
    let n = l.num_states();
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::from([(id.clone(), ())]);
    let mut queue = VecDeque::from([id]);
    while let Some(f) = queue.pop_front() {
        for a in 0..l.alphabet().len() {
            let g: Vec<usize> = f.iter().map(|&q| l.delta()[q][a]).collect();
            if seen.insert(g.clone(), ()).is_none() {
                queue.push_back(g);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversal_is_an_involution(l in dfa(5)) {
        prop_assert_eq!(l.reversal().reversal(), l.clone());
        for w in words_up_to(l.alphabet(), 5) {
            let r: String = w.chars().rev().collect();
            prop_assert_eq!(l.accepts(&w), l.reversal().accepts(&r));
        }
    }

    #[test]
    fn derivatives_shift_words(l in dfa(5)) {
        for c in ['a', 'b'] {
            let left = l.left_deriv(c).unwrap();
            let right = l.right_deriv(c).unwrap();
            for w in words_up_to(l.alphabet(), 4) {
                prop_assert_eq!(left.accepts(&w), l.accepts(&format!("{c}{w}")));
                prop_assert_eq!(right.accepts(&w), l.accepts(&format!("{w}{c}")));
            }
        }
    }

    #[test]
    fn regex_round_trip(l in dfa(4)) {
        prop_assert_eq!(parse_regex(&l.to_regex(), l.alphabet()).unwrap(), l);
    }

    #[test]
    fn generated_varieties_are_closed(l in dfa(3), tag in prop::sample::select(vec![VarietyTag::Ba, VarietyTag::Dl01, VarietyTag::Jsl0])) {
        let v = generated_local_variety(tag, &[l.clone()]);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        prop_assert!(v.index_of(&l).is_some());
        for (x, k) in v.languages.iter().enumerate() {
            prop_assert_eq!(&language_of_state(&v.coalgebra, x), k);
            for c in ['a', 'b'] {
                prop_assert!(v.index_of(&k.left_deriv(c).unwrap()).is_some());
                prop_assert!(v.index_of(&k.right_deriv(c).unwrap()).is_some());
            }
            if tag == VarietyTag::Ba {
                prop_assert!(v.index_of(&k.complement()).is_some());
            }
        }
        let rho = is_subcoalgebra_of_rho(&v.coalgebra).unwrap();
        prop_assert!(rho.agree() && rho.holds().unwrap());
        let lv = is_local_variety(&v.coalgebra).unwrap();
        prop_assert!(lv.agree() && lv.holds().unwrap());
    }

    #[test]
    fn dual_monoid_matches_transition_monoid(l in dfa(4)) {
        let v = generated_local_variety(VarietyTag::Ba, &[l.clone()]);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        let m = dual_generated_monoid(&v.coalgebra).unwrap();
        prop_assert_eq!(m.size(), transition_monoid_size(&l));
    }

    #[test]
    fn preimages_pull_back_membership(
        l in dfa(4),
        images in prop::collection::vec("[ab]{0,3}", 2),
    ) {
        let words: Vec<&str> = images.iter().map(String::as_str).collect();
        let f = DMonoidMorphismFree::from_words(VarietyTag::Set, "xy", "ab", &words).unwrap();
        let k = preimage_language(&l, &f).unwrap();
        for w in words_up_to(&['x', 'y'], 5) {
            let fw: String = w.chars().map(|c| if c == 'x' { words[0] } else { words[1] }).collect();
            prop_assert_eq!(k.accepts(&w), l.accepts(&fw));
        }
    }

    #[test]
    fn double_dual_is_an_isomorphism(
        pair in prop::sample::select(PairTag::MAIN.to_vec()),
        pick in any::<prop::sample::Index>(),
    ) {
        let algebras = enumerate_up_to(pair.c_tag(), 4).unwrap();
        let q = pick.get(&algebras);
        let h = double_dual_iso(pair, q).unwrap();
        let dd = dual_object(pair, &dual_object(pair, q).unwrap()).unwrap();
        prop_assert_eq!(dd.size, q.size);
        let mut img = h.clone();
        img.sort_unstable();
        img.dedup();
        prop_assert_eq!(img.len(), q.size);
    }
}
