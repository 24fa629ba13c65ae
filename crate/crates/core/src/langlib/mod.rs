//! Regular languages as canonical minimal automata, with derivatives, the
//! algebraic operations of each C-side variety, free D-monoid elements and
//! preimages, and rational power series over small prime fields.

mod free;
mod lift;
mod regex;
mod series;
pub(crate) mod variety;

pub use free::{dagger, eval_language, free_mul, rev_free, DMonoidMorphismFree, FreeElement};
pub use lift::preimage_language;
pub use regex::{alphabet_of, parse_regex};
pub use series::{series_of_coalgebra, series_preimage, RationalSeries};
pub use variety::{close_languages, coalgebra_of_languages, generated_local_variety, LocalVariety, LANGUAGE_CAP};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::algebra::VarietyTag;
use crate::error::{Error, Result};

/// A regular language held as its canonical minimal complete DFA. States are
/// numbered breadth-first from the initial state 0, letters in alphabet order,
/// so two values are equal exactly when the languages are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LanguageDoc", into = "LanguageDoc")]
pub struct RegularLanguage {
    alphabet: Vec<char>,
    delta: Vec<Vec<usize>>,
    finals: Vec<bool>,
}

/// Document form of a language.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LanguageDoc {
    pub alphabet: String,
    pub states: usize,
    pub delta: Vec<Vec<usize>>,
    pub finals: Vec<usize>,
    pub initial: usize,
}

impl TryFrom<LanguageDoc> for RegularLanguage {
    type Error = Error;
    fn try_from(d: LanguageDoc) -> Result<Self> {
        let alphabet: Vec<char> = d.alphabet.chars().collect();
        let k = alphabet.len();
        if d.delta.len() != d.states
            || d.delta.iter().any(|r| r.len() != k || r.iter().any(|&q| q >= d.states))
            || d.initial >= d.states
            || d.finals.iter().any(|&q| q >= d.states)
        {
            return Err(Error::Structural("language document tables do not fit its state count".into()));
        }
        check_alphabet(&alphabet)?;
        let mut finals = vec![false; d.states];
        for q in d.finals {
            finals[q] = true;
        }
        Ok(RegularLanguage::from_dfa(alphabet, &d.delta, &finals, d.initial))
    }
}

impl From<RegularLanguage> for LanguageDoc {
    fn from(l: RegularLanguage) -> Self {
        LanguageDoc {
            alphabet: l.alphabet.iter().collect(),
            states: l.delta.len(),
            finals: (0..l.finals.len()).filter(|&q| l.finals[q]).collect(),
            delta: l.delta,
            initial: 0,
        }
    }
}

pub(crate) fn check_alphabet(alphabet: &[char]) -> Result<()> {
    if alphabet.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Alphabet("alphabet letters must be distinct and sorted".into()));
    }
    Ok(())
}

/// Sorted, deduplicated alphabet from a string of letters.
pub fn alphabet(letters: &str) -> Vec<char> {
    let mut v: Vec<char> = letters.chars().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Explore a deterministic automaton on hashable states breadth-first and
/// return its canonical minimal form.
pub(crate) fn explore<S: Clone + Eq + Hash>(
    alphabet: &[char],
    start: S,
    mut step: impl FnMut(&S, usize) -> S,
    accept: impl Fn(&S) -> bool,
) -> RegularLanguage {
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in 0..alphabet.len() {
            let t = step(&states[i], a);
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
    let finals: Vec<bool> = states.iter().map(&accept).collect();
    RegularLanguage::from_dfa(alphabet.to_vec(), &delta, &finals, 0)
}

impl RegularLanguage {
    /// Minimize and canonically renumber an arbitrary complete DFA.
    pub fn from_dfa(alphabet: Vec<char>, delta: &[Vec<usize>], finals: &[bool], initial: usize) -> Self {
        let k = alphabet.len();
        // reachable part
        let mut reach = vec![usize::MAX; delta.len()];
        let mut order = vec![initial];
        reach[initial] = 0;
        let mut i = 0;
        while i < order.len() {
            for a in 0..k {
                let t = delta[order[i]][a];
                if reach[t] == usize::MAX {
                    reach[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        // Moore refinement
        let n = order.len();
        let mut class: Vec<usize> = order.iter().map(|&q| finals[q] as usize).collect();
        let mut count = 0;
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|s| {
                    let sig = (class[s], (0..k).map(|a| class[reach[delta[order[s]][a]]]).collect());
                    let l = sig_index.len();
                    *sig_index.entry(sig).or_insert(l)
                })
                .collect();
            let c = sig_index.len();
            class = next;
            if c == count {
                break;
            }
            count = c;
        }
        // canonical BFS numbering of the quotient
        let rep: Vec<usize> = {
            let mut r = vec![usize::MAX; count];
            for s in (0..n).rev() {
                r[class[s]] = s;
            }
            r
        };
        let mut num = vec![usize::MAX; count];
        let mut queue = VecDeque::from([class[0]]);
        num[class[0]] = 0;
        let mut seq = vec![class[0]];
        while let Some(c) = queue.pop_front() {
            for a in 0..k {
                let t = class[reach[delta[order[rep[c]]][a]]];
                if num[t] == usize::MAX {
                    num[t] = seq.len();
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = seq
            .iter()
            .map(|&c| (0..k).map(|a| num[class[reach[delta[order[rep[c]]][a]]]]).collect())
            .collect();
        let finals = seq.iter().map(|&c| finals[order[rep[c]]]).collect();
        RegularLanguage { alphabet, delta, finals }
    }

    pub fn empty(alphabet: &[char]) -> Self {
        RegularLanguage { alphabet: alphabet.to_vec(), delta: vec![vec![0; alphabet.len()]], finals: vec![false] }
    }

    pub fn full(alphabet: &[char]) -> Self {
        RegularLanguage { alphabet: alphabet.to_vec(), delta: vec![vec![0; alphabet.len()]], finals: vec![true] }
    }

    /// The language `{w}`.
    pub fn word(alphabet: &[char], w: &str) -> Result<Self> {
        let letters = letters_of(alphabet, w)?;
        let n = letters.len();
        let delta: Vec<Vec<usize>> = (0..=n + 1)
            .map(|q| (0..alphabet.len()).map(|a| if q < n && letters[q] == a { q + 1 } else { n + 1 }).collect())
            .collect();
        let finals: Vec<bool> = (0..=n + 1).map(|q| q == n).collect();
        Ok(RegularLanguage::from_dfa(alphabet.to_vec(), &delta, &finals, 0))
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn is_empty(&self) -> bool {
        !self.finals.iter().any(|&f| f)
    }

    pub fn letter_index(&self, c: char) -> Result<usize> {
        self.alphabet.binary_search(&c).map_err(|_| Error::UnknownLetter(c))
    }

    pub fn run_from(&self, q: usize, w: &[usize]) -> usize {
        w.iter().fold(q, |q, &a| self.delta[q][a])
    }

    /// Membership; words using letters outside the alphabet are not members.
    pub fn accepts(&self, w: &str) -> bool {
        letters_of(&self.alphabet, w).is_ok_and(|l| self.finals[self.run_from(0, &l)])
    }

    pub fn contains_epsilon(&self) -> bool {
        self.finals[0]
    }

    fn same_alphabet(&self, other: &RegularLanguage) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::Alphabet(format!(
                "{:?} vs {:?}",
                self.alphabet.iter().collect::<String>(),
                other.alphabet.iter().collect::<String>()
            )));
        }
        Ok(())
    }

    /// Pointwise boolean combination via the product automaton.
    pub fn combine(&self, other: &RegularLanguage, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.same_alphabet(other)?;
        Ok(explore(
            &self.alphabet,
            (0usize, 0usize),
            |&(p, q), a| (self.delta[p][a], other.delta[q][a]),
            |&(p, q)| op(self.finals[p], other.finals[q]),
        ))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x || y)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x && y)
    }

    pub fn sym_diff(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x != y)
    }

    pub fn complement(&self) -> Self {
        RegularLanguage { alphabet: self.alphabet.clone(), delta: self.delta.clone(), finals: self.finals.iter().map(|f| !f).collect() }
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.combine(other, |x, y| x && !y)?.is_empty())
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(other)?;
        let seed = |p: usize, mut s: Vec<usize>| {
            if self.finals[p] && !s.contains(&0) {
                s.push(0);
            }
            s.sort_unstable();
            s
        };
        Ok(explore(
            &self.alphabet,
            (0usize, seed(0, Vec::new())),
            |(p, s), a| {
                let p2 = self.delta[*p][a];
                let mut t: Vec<usize> = s.iter().map(|&q| other.delta[q][a]).collect();
                t.sort_unstable();
                t.dedup();
                (p2, seed(p2, t))
            },
            |(_, s)| s.iter().any(|&q| other.finals[q]),
        ))
    }

    pub fn star(&self) -> Self {
        // (is the start state, current set of states)
        explore(
            &self.alphabet,
            (true, vec![0usize]),
            |(_, s), a| {
                let mut t: Vec<usize> = s.iter().map(|&q| self.delta[q][a]).collect();
                if t.iter().any(|&q| self.finals[q]) {
                    t.push(0);
                }
                t.sort_unstable();
                t.dedup();
                (false, t)
            },
            |(start, s)| *start || s.iter().any(|&q| self.finals[q]),
        )
    }

    pub fn reversal(&self) -> Self {
        let n = self.delta.len();
        let k = self.alphabet.len();
        let mut pre = vec![vec![Vec::new(); k]; n];
        for q in 0..n {
            for a in 0..k {
                pre[self.delta[q][a]][a].push(q);
            }
        }
        let start: Vec<usize> = (0..n).filter(|&q| self.finals[q]).collect();
        explore(
            &self.alphabet,
            start,
            |s, a| {
                let mut t: Vec<usize> = s.iter().flat_map(|&q| pre[q][a].iter().copied()).collect();
                t.sort_unstable();
                t.dedup();
                t
            },
            |s| s.contains(&0),
        )
    }

    /// `a⁻¹L = {w : aw ∈ L}`.
    pub fn left_deriv(&self, a: char) -> Result<Self> {
        let a = self.letter_index(a)?;
        Ok(self.shift_initial(self.delta[0][a]))
    }

    /// `u⁻¹L` for a word `u`.
    pub fn left_deriv_word(&self, u: &str) -> Result<Self> {
        let u = letters_of(&self.alphabet, u)?;
        Ok(self.shift_initial(self.run_from(0, &u)))
    }

    /// `La⁻¹ = {w : wa ∈ L}`, by moving the final states back along `a`.
    pub fn right_deriv(&self, a: char) -> Result<Self> {
        let a = self.letter_index(a)?;
        let finals: Vec<bool> = (0..self.delta.len()).map(|q| self.finals[self.delta[q][a]]).collect();
        Ok(RegularLanguage::from_dfa(self.alphabet.clone(), &self.delta, &finals, 0))
    }

    /// The language accepted from state `q`.
    pub fn shift_initial(&self, q: usize) -> Self {
        RegularLanguage::from_dfa(self.alphabet.clone(), &self.delta, &self.finals, q)
    }

    /// The same language over a larger alphabet (new letters lead to rejection).
    pub fn extend_alphabet(&self, alphabet: &[char]) -> Result<Self> {
        check_alphabet(alphabet)?;
        if let Some(&c) = self.alphabet.iter().find(|c| !alphabet.contains(c)) {
            return Err(Error::UnknownLetter(c));
        }
        let n = self.delta.len();
        let delta: Vec<Vec<usize>> = (0..=n)
            .map(|q| {
                alphabet
                    .iter()
                    .map(|c| match (q < n, self.alphabet.binary_search(c)) {
                        (true, Ok(a)) => self.delta[q][a],
                        _ => n,
                    })
                    .collect()
            })
            .collect();
        let finals: Vec<bool> = (0..=n).map(|q| q < n && self.finals[q]).collect();
        Ok(RegularLanguage::from_dfa(alphabet.to_vec(), &delta, &finals, 0))
    }

    /// Rename letters along a bijection of alphabets given as parallel lists.
    pub fn rename(&self, to: &[char]) -> Result<Self> {
        if to.len() != self.alphabet.len() {
            return Err(Error::Alphabet("renaming must be a bijection".into()));
        }
        let mut pairs: Vec<(char, usize)> = to.iter().copied().zip(0..).collect();
        pairs.sort_unstable();
        let new_alpha: Vec<char> = pairs.iter().map(|p| p.0).collect();
        check_alphabet(&new_alpha)?;
        let delta: Vec<Vec<usize>> =
            self.delta.iter().map(|row| pairs.iter().map(|&(_, old)| row[old]).collect()).collect();
        Ok(RegularLanguage::from_dfa(new_alpha, &delta, &self.finals, 0))
    }

    /// All members of length at most `n`, shortlex ordered.
    pub fn members_up_to(&self, n: usize) -> Vec<String> {
        words_up_to(&self.alphabet, n).into_iter().filter(|w| self.accepts(w)).collect()
    }

    /// Shortest member in shortlex order, if any.
    pub fn shortest_member(&self) -> Option<String> {
        let mut seen = vec![false; self.delta.len()];
        let mut queue = VecDeque::from([(0usize, String::new())]);
        seen[0] = true;
        while let Some((q, w)) = queue.pop_front() {
            if self.finals[q] {
                return Some(w);
            }
            for (a, &c) in self.alphabet.iter().enumerate() {
                let t = self.delta[q][a];
                if !seen[t] {
                    seen[t] = true;
                    let mut w2 = w.clone();
                    w2.push(c);
                    queue.push_back((t, w2));
                }
            }
        }
        None
    }

    /// A regular expression for the language, reconstructed by state elimination.
    pub fn to_regex(&self) -> String {
        regex::to_regex(self)
    }
}

impl fmt::Display for RegularLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_regex())
    }
}

/// Letter indices of a word.
pub fn letters_of(alphabet: &[char], w: &str) -> Result<Vec<usize>> {
    w.chars().map(|c| alphabet.binary_search(&c).map_err(|_| Error::UnknownLetter(c))).collect()
}

/// All words of length at most `n`, shortlex ordered.
pub fn words_up_to(alphabet: &[char], n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Shortlex comparison of words.
pub fn shortlex(a: &str, b: &str) -> std::cmp::Ordering {
    a.chars().count().cmp(&b.chars().count()).then_with(|| a.cmp(b))
}

/// Operation symbols on languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LangOp {
    Union,
    Intersection,
    Complement,
    SymDiff,
    Empty,
    Full,
}

impl LangOp {
    pub fn arity(self) -> usize {
        match self {
            LangOp::Union | LangOp::Intersection | LangOp::SymDiff => 2,
            LangOp::Complement => 1,
            LangOp::Empty | LangOp::Full => 0,
        }
    }

    /// The operations a C-side tag carries on languages.
    pub fn signature(tag: VarietyTag) -> Result<&'static [LangOp]> {
        use LangOp::*;
        Ok(match tag {
            VarietyTag::Ba => &[Union, Intersection, Complement, Empty, Full],
            VarietyTag::Dl01 => &[Union, Intersection, Empty, Full],
            VarietyTag::Jsl0 => &[Union, Empty],
            VarietyTag::Vect(2) => &[SymDiff, Empty],
            VarietyTag::Br => &[SymDiff, Intersection, Empty],
            t => return Err(Error::Unsupported(format!("no language operations for {t}"))),
        })
    }
}

/// Apply a language operation of the tag's signature.
pub fn language_op(tag: VarietyTag, op: LangOp, operands: &[RegularLanguage], alphabet: &[char]) -> Result<RegularLanguage> {
    if !LangOp::signature(tag)?.contains(&op) {
        return Err(Error::Unsupported(format!("{op:?} is not an operation of {tag}")));
    }
    if operands.len() != op.arity() {
        return Err(Error::Invalid(format!("{op:?} takes {} operands", op.arity())));
    }
    if let Some(l) = operands.iter().find(|l| l.alphabet() != alphabet) {
        return Err(Error::Alphabet(format!("operand over {:?}", l.alphabet().iter().collect::<String>())));
    }
    match op {
        LangOp::Union => operands[0].union(&operands[1]),
        LangOp::Intersection => operands[0].intersection(&operands[1]),
        LangOp::SymDiff => operands[0].sym_diff(&operands[1]),
        LangOp::Complement => Ok(operands[0].complement()),
        LangOp::Empty => Ok(RegularLanguage::empty(alphabet)),
        LangOp::Full => Ok(RegularLanguage::full(alphabet)),
    }
}
