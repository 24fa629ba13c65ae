//! Closure of language families under derivatives and the operations of a
//! C-side variety, presented as coalgebras of languages.
//!
//! Every language in the closure of the seeds is a union of classes of the
//! transition monoid of the seeds' product automaton, so members are kept as
//! bitsets over that monoid and only rebuilt as automata at the end.

use std::collections::HashMap;

use super::{explore, LangOp, RegularLanguage};
use crate::algebra::{FinAlgebra, VarietyTag};
use crate::automata::Coalgebra;
use crate::duality::PairTag;
use crate::error::{Error, Result};

/// Default cap on the number of languages in a closure.
pub const LANGUAGE_CAP: usize = 4096;
/// Cap on the size of the transition monoid used to represent a closure.
pub const MONOID_CAP: usize = 1 << 16;

/// A local variety: its coalgebra with left-derivative transitions, and the
/// language of each state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVariety {
    pub coalgebra: Coalgebra,
    pub languages: Vec<RegularLanguage>,
}

impl LocalVariety {
    pub fn index_of(&self, l: &RegularLanguage) -> Option<usize> {
        self.languages.binary_search(l).ok()
    }
}

type Bits = Vec<u64>;

struct Engine {
    alphabet: Vec<char>,
    size: usize,
    /// right multiplication by letters
    right: Vec<Vec<usize>>,
    /// left multiplication by letters
    left: Vec<Vec<usize>>,
}

impl Engine {
    fn new(seeds: &[RegularLanguage]) -> Result<(Engine, Vec<Bits>)> {
        let alphabet = seeds[0].alphabet().to_vec();
        if seeds.iter().any(|l| l.alphabet() != alphabet) {
            return Err(Error::Alphabet("seed languages over different alphabets".into()));
        }
        let k = alphabet.len();
        // product automaton, states numbered by discovery
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states = vec![vec![0usize; seeds.len()]];
        index.insert(states[0].clone(), 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::new();
            for a in 0..k {
                let t: Vec<usize> = states[i].iter().zip(seeds).map(|(&q, l)| l.delta()[q][a]).collect();
                let next = states.len();
                let j = *index.entry(t.clone()).or_insert_with(|| {
                    states.push(t);
                    next
                });
                row.push(j);
            }
            delta.push(row);
            i += 1;
        }
        let n = states.len();
        // transition monoid, elements as maps on product states
        let mut elems: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut eindex: HashMap<Vec<usize>, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut j = 0;
        while j < elems.len() {
            let mut row = Vec::new();
            for a in 0..k {
                let t: Vec<usize> = elems[j].iter().map(|&q| delta[q][a]).collect();
                let next = elems.len();
                let idx = *eindex.entry(t.clone()).or_insert_with(|| {
                    elems.push(t);
                    next
                });
                row.push(idx);
            }
            right.push(row);
            j += 1;
            if elems.len() > MONOID_CAP {
                return Err(Error::Cap(format!("transition monoid exceeds {MONOID_CAP} elements")));
            }
        }
        let size = elems.len();
        let left: Vec<Vec<usize>> = (0..size)
            .map(|m| (0..k).map(|a| eindex[&(0..n).map(|q| elems[m][delta[q][a]]).collect::<Vec<_>>()]).collect())
            .collect();
        let engine = Engine { alphabet, size, right, left };
        let seed_bits = seeds
            .iter()
            .enumerate()
            .map(|(i, l)| engine.bits(|m| l.finals()[states[elems[m][0]][i]]))
            .collect();
        Ok((engine, seed_bits))
    }

    fn words(&self) -> usize {
        self.size.div_ceil(64)
    }

    fn bits(&self, f: impl Fn(usize) -> bool) -> Bits {
        let mut b = vec![0u64; self.words()];
        for m in 0..self.size {
            if f(m) {
                b[m / 64] |= 1 << (m % 64);
            }
        }
        b
    }

    fn has(b: &Bits, m: usize) -> bool {
        b[m / 64] >> (m % 64) & 1 == 1
    }

    fn unary(&self, op: LangOp, b: &Bits) -> Bits {
        match op {
            LangOp::Complement => {
                let mut c: Bits = b.iter().map(|x| !x).collect();
                if self.size % 64 != 0 {
                    *c.last_mut().unwrap() &= (1u64 << (self.size % 64)) - 1;
                }
                c
            }
            _ => unreachable!(),
        }
    }

    fn binary(op: LangOp, x: &Bits, y: &Bits) -> Bits {
        x.iter()
            .zip(y)
            .map(|(a, b)| match op {
                LangOp::Union => a | b,
                LangOp::Intersection => a & b,
                _ => a ^ b,
            })
            .collect()
    }

    fn left_deriv(&self, b: &Bits, a: usize) -> Bits {
        self.bits(|m| Engine::has(b, self.left[m][a]))
    }

    fn right_deriv(&self, b: &Bits, a: usize) -> Bits {
        self.bits(|m| Engine::has(b, self.right[m][a]))
    }

    fn constant(&self, op: LangOp) -> Bits {
        self.bits(|_| op == LangOp::Full)
    }

    fn language(&self, b: &Bits) -> RegularLanguage {
        explore(&self.alphabet, 0usize, |&m, a| self.right[m][a], |&m| Engine::has(b, m))
    }
}

fn check_tag(tag: VarietyTag) -> Result<&'static [LangOp]> {
    match tag {
        VarietyTag::Ba | VarietyTag::Dl01 | VarietyTag::Jsl0 | VarietyTag::Vect(2) | VarietyTag::Br => LangOp::signature(tag),
        t => Err(Error::Unsupported(format!("language closures are not available for {t}"))),
    }
}

fn close(engine: &Engine, tag: VarietyTag, seeds: Vec<Bits>, left: bool, right: bool, cap: usize) -> Result<Vec<Bits>> {
    let ops = check_tag(tag)?;
    let mut members: Vec<Bits> = Vec::new();
    let mut seen: HashMap<Bits, usize> = HashMap::new();
    let mut pending: Vec<Bits> = seeds;
    pending.extend(ops.iter().filter(|o| o.arity() == 0).map(|&o| engine.constant(o)));
    let k = engine.alphabet.len();
    let mut i = 0;
    loop {
        for b in pending.drain(..) {
            if !seen.contains_key(&b) {
                seen.insert(b.clone(), members.len());
                members.push(b);
                if members.len() > cap {
                    return Err(Error::Cap(format!("closure exceeds {cap} languages")));
                }
            }
        }
        if i == members.len() {
            break;
        }
        let x = members[i].clone();
        for &op in ops {
            match op.arity() {
                1 => pending.push(engine.unary(op, &x)),
                2 => {
                    for y in &members[..=i] {
                        pending.push(Engine::binary(op, &x, y));
                    }
                }
                _ => {}
            }
        }
        for a in 0..k {
            if left {
                pending.push(engine.left_deriv(&x, a));
            }
            if right {
                pending.push(engine.right_deriv(&x, a));
            }
        }
        i += 1;
    }
    Ok(members)
}

/// Close `seeds` under the operations of `tag` and, as requested, under left
/// and right derivatives. The result is sorted.
pub fn close_languages(tag: VarietyTag, seeds: &[RegularLanguage], left: bool, right: bool) -> Result<Vec<RegularLanguage>> {
    if seeds.is_empty() {
        return Err(Error::Invalid("at least one seed language is required".into()));
    }
    let (engine, bits) = Engine::new(seeds)?;
    let members = close(&engine, tag, bits, left, right, LANGUAGE_CAP)?;
    let mut langs: Vec<RegularLanguage> = members.iter().map(|b| engine.language(b)).collect();
    langs.sort();
    Ok(langs)
}

/// The coalgebra of the closure of `langs` under the operations of `tag`, left
/// derivatives and, when `right` is set, right derivatives.
pub fn coalgebra_of_languages(tag: VarietyTag, langs: &[RegularLanguage], right: bool) -> Result<LocalVariety> {
    if langs.is_empty() {
        return Err(Error::Invalid("at least one seed language is required".into()));
    }
    let pair = PairTag::from_c_tag(tag)?;
    let (engine, bits) = Engine::new(langs)?;
    let members = close(&engine, tag, bits, true, right, LANGUAGE_CAP)?;
    let mut tagged: Vec<(RegularLanguage, Bits)> = members.into_iter().map(|b| (engine.language(&b), b)).collect();
    tagged.sort();
    let index: HashMap<&Bits, usize> = tagged.iter().enumerate().map(|(i, (_, b))| (b, i)).collect();
    let n = tagged.len();
    let look = |b: Bits| index[&b];
    let states = FinAlgebra::build(tag, n, |sym, args| {
        let b = |i: usize| &tagged[args[i]].1;
        match sym {
            "meet" => look(Engine::binary(LangOp::Intersection, b(0), b(1))),
            "mul" => look(Engine::binary(LangOp::Intersection, b(0), b(1))),
            "join" => look(Engine::binary(LangOp::Union, b(0), b(1))),
            "add" => look(Engine::binary(LangOp::SymDiff, b(0), b(1))),
            "neg" => look(engine.unary(LangOp::Complement, b(0))),
            "top" => look(engine.constant(LangOp::Full)),
            _ => look(engine.constant(LangOp::Empty)),
        }
    });
    let trans = (0..engine.alphabet.len())
        .map(|a| tagged.iter().map(|(_, b)| look(engine.left_deriv(b, a))).collect())
        .collect();
    let out = tagged.iter().map(|(_, b)| Engine::has(b, 0) as usize).collect();
    let coalgebra = Coalgebra::new(pair, engine.alphabet.clone(), states, trans, out)?;
    Ok(LocalVariety { coalgebra, languages: tagged.into_iter().map(|t| t.0).collect() })
}

/// The least local variety containing `seeds`, closed under both
/// derivatives and the operations of `tag`.
pub fn generated_local_variety(tag: VarietyTag, seeds: &[RegularLanguage]) -> Result<LocalVariety> {
    coalgebra_of_languages(tag, seeds, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{is_local_variety, language_of_state};
    use crate::langlib::{alphabet, parse_regex};

    fn re(s: &str, a: &str) -> RegularLanguage {
        parse_regex(s, &alphabet(a)).unwrap()
    }

    #[test]
    fn parity_closure_in_each_tag() {
        let expected: Vec<RegularLanguage> = {
            let mut v: Vec<_> = ["∅", "(aa)*", "a(aa)*", "a*"].iter().map(|s| re(s, "a")).collect();
            v.sort();
            v
        };
        let v = generated_local_variety(VarietyTag::Ba, &[re("(aa)*", "a")]).unwrap();
        assert_eq!(v.languages, expected);
        let v2 = generated_local_variety(VarietyTag::Vect(2), &[re("(aa)*", "a")]).unwrap();
        assert_eq!(v2.languages, expected);
        assert_eq!(v2.coalgebra.states.vect_basis().len(), 2);
    }

    #[test]
    fn empty_seed_in_jsl0() {
        let v = generated_local_variety(VarietyTag::Jsl0, &[re("∅", "ab")]).unwrap();
        assert_eq!(v.languages, vec![re("∅", "ab")]);
    }

    #[test]
    fn states_accept_their_languages_and_form_local_varieties() {
        for tag in [VarietyTag::Ba, VarietyTag::Dl01, VarietyTag::Jsl0, VarietyTag::Vect(2), VarietyTag::Br] {
            let v = generated_local_variety(tag, &[re("(ab)*", "ab"), re("a*b", "ab")]).unwrap();
            for (s, l) in v.languages.iter().enumerate() {
                assert_eq!(&language_of_state(&v.coalgebra, s), l);
            }
            assert!(is_local_variety(&v.coalgebra).unwrap().holds().unwrap(), "{tag}");
            if tag == VarietyTag::Vect(2) {
                assert!(v.languages.len().is_power_of_two());
            }
        }
    }

    #[test]
    fn left_only_closure_omits_right_derivatives() {
        let l = re("(ab)*", "ab");
        let c = close_languages(VarietyTag::Jsl0, &[l.clone()], true, false).unwrap();
        assert!(!c.contains(&l.right_deriv('b').unwrap()));
        let d = close_languages(VarietyTag::Jsl0, &[l.clone()], true, true).unwrap();
        assert!(d.contains(&l.right_deriv('b').unwrap()));
    }
}
