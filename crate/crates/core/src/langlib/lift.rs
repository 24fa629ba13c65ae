//! Preimages of languages under morphisms of free D-monoids.

use super::{explore, letters_of, DMonoidMorphismFree, FreeElement, RegularLanguage};
use crate::algebra::VarietyTag;
use crate::error::{Error, Result};
use crate::gf;

/// `L·f = {w ∈ Δ* : L evaluates to 1 on f(w)}`, by running the automaton of
/// `L` lifted through `f`: on states for words, on sets of states for finite
/// languages and on state vectors for weighted languages.
pub fn preimage_language(l: &RegularLanguage, f: &DMonoidMorphismFree) -> Result<RegularLanguage> {
    if f.target != l.alphabet() {
        return Err(Error::Alphabet("the morphism does not target the language's alphabet".into()));
    }
    let run = |q: usize, w: &str| l.run_from(q, &letters_of(l.alphabet(), w).expect("checked alphabet"));
    let n = l.num_states();
    Ok(match f.tag {
        VarietyTag::Set | VarietyTag::Pos | VarietyTag::SetStar => {
            // state n is the zero sink
            let img: Vec<Option<&str>> = f
                .images
                .iter()
                .map(|x| match x {
                    FreeElement::Word(w) => Some(w.as_str()),
                    _ => None,
                })
                .collect();
            explore(
                &f.source,
                0usize,
                |&q, b| match img[b] {
                    Some(w) if q < n => run(q, w),
                    _ => n,
                },
                |&q| q < n && l.finals()[q],
            )
        }
        VarietyTag::Jsl0 => explore(
            &f.source,
            vec![0usize],
            |s, b| {
                let mut t: Vec<usize> = s.iter().flat_map(|&q| f.images[b].words().into_iter().map(move |w| run(q, w))).collect();
                t.sort_unstable();
                t.dedup();
                t
            },
            |s| s.iter().any(|&q| l.finals()[q]),
        ),
        VarietyTag::Vect(p) => {
            let mut start = vec![0u8; n];
            start[0] = 1;
            explore(
                &f.source,
                start,
                |v, b| {
                    let mut out = vec![0u8; n];
                    if let FreeElement::Weighted { terms, .. } = &f.images[b] {
                        for (q, &c) in v.iter().enumerate().filter(|t| *t.1 != 0) {
                            for (w, d) in terms {
                                let t = run(q, w);
                                out[t] = gf::add(p, out[t], gf::mul(p, c, *d));
                            }
                        }
                    }
                    out
                },
                |v| v.iter().zip(l.finals()).filter(|t| *t.1).fold(0, |s, (&c, _)| gf::add(p, s, c)) == 1,
            )
        }
        t => return Err(Error::Unsupported(format!("no free D-monoid for {t}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langlib::{alphabet, eval_language, parse_regex, words_up_to};

    fn re(s: &str, a: &str) -> RegularLanguage {
        parse_regex(s, &alphabet(a)).unwrap()
    }

    #[test]
    fn spot_values() {
        let f = DMonoidMorphismFree::from_words(VarietyTag::Set, "b", "ab", &["ab"]).unwrap();
        assert_eq!(preimage_language(&re("(ab)*", "ab"), &f).unwrap(), re("b*", "b"));

        let g = DMonoidMorphismFree::new(VarietyTag::Jsl0, vec!['b'], vec!['a'], vec![FreeElement::finite(["a", "aa"])]).unwrap();
        assert_eq!(preimage_language(&re("(aa)*", "a"), &g).unwrap(), re("b*", "b"));

        let z = DMonoidMorphismFree::new(VarietyTag::SetStar, vec!['b'], vec!['a'], vec![FreeElement::Zero]).unwrap();
        assert_eq!(preimage_language(&re("a*", "a"), &z).unwrap(), re("ε", "b"));
        assert_eq!(preimage_language(&re("aa*", "a"), &z).unwrap(), re("∅", "b"));
    }

    #[test]
    fn lifted_automaton_agrees_with_wordwise_evaluation() {
        let l = re("(a|b)*ab(a|b)*|b*", "ab");
        let maps = [
            DMonoidMorphismFree::from_words(VarietyTag::Pos, "cd", "ab", &["ab", "b"]).unwrap(),
            DMonoidMorphismFree::new(VarietyTag::Vect(2), vec!['c', 'd'], vec!['a', 'b'], vec![
                FreeElement::weighted(2, [("", 1), ("a", 1)]),
                FreeElement::weighted(2, [("ba", 1), ("b", 1), ("a", 1)]),
            ])
            .unwrap(),
            DMonoidMorphismFree::new(VarietyTag::Jsl0, vec!['c', 'd'], vec!['a', 'b'], vec![
                FreeElement::finite(["a", "bb"]),
                FreeElement::finite(Vec::<String>::new()),
            ])
            .unwrap(),
        ];
        for f in &maps {
            let pre = preimage_language(&l, f).unwrap();
            for w in words_up_to(&f.source, 6) {
                let v = eval_language(&l, &f.apply_word(&w).unwrap()).unwrap();
                assert_eq!(pre.accepts(&w), v == 1, "{w}");
            }
        }
    }
}
