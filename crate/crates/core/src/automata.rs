//! Deterministic automata enriched in a variety: coalgebras on the C side,
//! algebras with an initial state on the D side, and their duality.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{closure, is_hom, FinAlgebra};
use crate::duality::{self, canonical_constants, double_dual_iso, PairTag};
use crate::error::{Error, Result};
use crate::langlib::{explore, letters_of, FreeElement, RegularLanguage};

/// A C-side automaton without initial state: `(Q, γ_a, γ_out)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonDoc", into = "AutomatonDoc")]
pub struct Coalgebra {
    pub pair: PairTag,
    pub alphabet: Vec<char>,
    pub states: FinAlgebra,
    /// `trans[a][q]`, indexed by letter position.
    pub trans: Vec<Vec<usize>>,
    /// Output morphism into `O_C`, by carrier index (= label).
    pub out: Vec<usize>,
}

/// A D-side automaton without final states: `(A, α_a, α_in)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonDoc", into = "AutomatonDoc")]
pub struct LAlgebra {
    pub pair: PairTag,
    pub alphabet: Vec<char>,
    pub states: FinAlgebra,
    pub trans: Vec<Vec<usize>>,
    pub init: usize,
}

/// Shared document form of both automaton kinds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomatonDoc {
    pub pair: PairTag,
    pub alphabet: String,
    pub states: FinAlgebra,
    pub trans: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<usize>,
}

fn doc_trans(alphabet: &[char], doc: &BTreeMap<String, Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    if doc.len() != alphabet.len() {
        return Err(Error::Structural("one transition table per letter is required".into()));
    }
    alphabet
        .iter()
        .map(|c| doc.get(&c.to_string()).cloned().ok_or(Error::UnknownLetter(*c)))
        .collect()
}

impl TryFrom<AutomatonDoc> for Coalgebra {
    type Error = Error;
    fn try_from(d: AutomatonDoc) -> Result<Self> {
        let alphabet: Vec<char> = d.alphabet.chars().collect();
        let trans = doc_trans(&alphabet, &d.trans)?;
        let out = d.out.ok_or_else(|| Error::Structural("a coalgebra document needs `out`".into()))?;
        Coalgebra::new(d.pair, alphabet, d.states, trans, out)
    }
}

impl From<Coalgebra> for AutomatonDoc {
    fn from(q: Coalgebra) -> Self {
        AutomatonDoc {
            pair: q.pair,
            alphabet: q.alphabet.iter().collect(),
            trans: q.alphabet.iter().map(|c| c.to_string()).zip(q.trans).collect(),
            states: q.states,
            out: Some(q.out),
            init: None,
        }
    }
}

impl TryFrom<AutomatonDoc> for LAlgebra {
    type Error = Error;
    fn try_from(d: AutomatonDoc) -> Result<Self> {
        let alphabet: Vec<char> = d.alphabet.chars().collect();
        let trans = doc_trans(&alphabet, &d.trans)?;
        let init = d.init.ok_or_else(|| Error::Structural("an algebra document needs `init`".into()))?;
        LAlgebra::new(d.pair, alphabet, d.states, trans, init)
    }
}

impl From<LAlgebra> for AutomatonDoc {
    fn from(a: LAlgebra) -> Self {
        AutomatonDoc {
            pair: a.pair,
            alphabet: a.alphabet.iter().collect(),
            trans: a.alphabet.iter().map(|c| c.to_string()).zip(a.trans).collect(),
            states: a.states,
            out: None,
            init: Some(a.init),
        }
    }
}

fn check_tables(states: &FinAlgebra, alphabet: &[char], trans: &[Vec<usize>]) -> Result<()> {
    crate::langlib::check_alphabet(alphabet)?;
    if trans.len() != alphabet.len() || trans.iter().any(|t| t.len() != states.size || t.iter().any(|&x| x >= states.size)) {
        return Err(Error::Structural("transition tables do not fit the carrier".into()));
    }
    for (c, t) in alphabet.iter().zip(trans) {
        if let Some(ce) = is_hom(states, states, t) {
            return Err(Error::Invalid(format!("transition {c:?} is not a morphism: {ce:?}")));
        }
    }
    Ok(())
}

fn run_table(trans: &[Vec<usize>], alphabet: &[char], s: usize, w: &str) -> Result<usize> {
    Ok(letters_of(alphabet, w)?.into_iter().fold(s, |s, a| trans[a][s]))
}

impl Coalgebra {
    pub fn new(pair: PairTag, alphabet: Vec<char>, states: FinAlgebra, trans: Vec<Vec<usize>>, out: Vec<usize>) -> Result<Self> {
        if states.tag != pair.c_tag() {
            return Err(Error::TagMismatch(format!("coalgebra states must be {} algebras", pair.c_tag())));
        }
        let k = canonical_constants(pair)?;
        check_tables(&states, &alphabet, &trans)?;
        if out.len() != states.size || out.iter().any(|&x| x >= k.o_c.size) || is_hom(&states, &k.o_c, &out).is_some() {
            return Err(Error::Invalid("output is not a morphism into the output algebra".into()));
        }
        Ok(Coalgebra { pair, alphabet, states, trans, out })
    }

    pub fn size(&self) -> usize {
        self.states.size
    }

    /// `γ_w(s)`, first letter first.
    pub fn run(&self, s: usize, w: &str) -> Result<usize> {
        run_table(&self.trans, &self.alphabet, s, w)
    }

    pub fn letter(&self, c: char) -> Result<usize> {
        self.alphabet.binary_search(&c).map_err(|_| Error::UnknownLetter(c))
    }
}

impl LAlgebra {
    pub fn new(pair: PairTag, alphabet: Vec<char>, states: FinAlgebra, trans: Vec<Vec<usize>>, init: usize) -> Result<Self> {
        if states.tag != pair.d_tag() {
            return Err(Error::TagMismatch(format!("algebra states must be {} algebras", pair.d_tag())));
        }
        canonical_constants(pair)?;
        check_tables(&states, &alphabet, &trans)?;
        if init >= states.size {
            return Err(Error::Structural("initial state outside the carrier".into()));
        }
        Ok(LAlgebra { pair, alphabet, states, trans, init })
    }

    pub fn size(&self) -> usize {
        self.states.size
    }

    pub fn letter(&self, c: char) -> Result<usize> {
        self.alphabet.binary_search(&c).map_err(|_| Error::UnknownLetter(c))
    }
}

/// `γ_w` as a table.
pub fn run_word_co(q: &Coalgebra, w: &str) -> Result<Vec<usize>> {
    (0..q.size()).map(|s| q.run(s, w)).collect()
}

/// `α_w(α_in)`.
pub fn run_word(a: &LAlgebra, w: &str) -> Result<usize> {
    run_table(&a.trans, &a.alphabet, a.init, w)
}

/// The endomorphism `α_x` of the carrier induced by a free element.
pub fn alpha_x(a: &LAlgebra, x: &FreeElement) -> Result<Vec<usize>> {
    let tag = a.states.tag;
    if !x.fits(tag) {
        return Err(Error::TagMismatch(format!("{x:?} is not an element of the free {tag} monoid")));
    }
    x.check_alphabet(&a.alphabet)?;
    let n = a.size();
    let word = |w: &str| -> Vec<usize> { (0..n).map(|s| run_table(&a.trans, &a.alphabet, s, w).unwrap()).collect() };
    Ok(match x {
        FreeElement::Word(w) => word(w),
        FreeElement::Zero => vec![a.states.point(); n],
        FreeElement::Finite(ws) => {
            let mut acc = vec![a.states.constant("bot"); n];
            for w in ws {
                let t = word(w);
                for s in 0..n {
                    acc[s] = a.states.op2("join", acc[s], t[s]);
                }
            }
            acc
        }
        FreeElement::Weighted { terms, .. } => {
            let mut acc = vec![a.states.constant("zero"); n];
            for (w, c) in terms {
                let t = word(w);
                for s in 0..n {
                    acc[s] = a.states.op2("add", acc[s], a.states.scale(*c, t[s]));
                }
            }
            acc
        }
    })
}

/// `e_A(x) = α_x(α_in)`.
pub fn eval_free(a: &LAlgebra, x: &FreeElement) -> Result<usize> {
    Ok(alpha_x(a, x)?[a.init])
}

/// `{w : γ_out(γ_w(state)) = 1}`.
pub fn language_of_state(q: &Coalgebra, state: usize) -> RegularLanguage {
    explore(&q.alphabet, state, |&s, a| q.trans[a][s], |&s| q.out[s] == 1)
}

/// `{w : α_out(α_w(α_in)) = 1}` for an output morphism `out` into `O_D`.
pub fn language_of_output(a: &LAlgebra, out: &[usize]) -> Result<RegularLanguage> {
    let k = canonical_constants(a.pair)?;
    if out.len() != a.size() || out.iter().any(|&x| x >= k.o_d.size) || is_hom(&a.states, &k.o_d, out).is_some() {
        return Err(Error::Invalid("output is not a morphism into the output algebra".into()));
    }
    Ok(explore(&a.alphabet, a.init, |&s, c| a.trans[c][s], |&s| out[s] == 1))
}

/// The output morphism on the dual of `q` that corresponds to `state`.
pub fn dual_output(q: &Coalgebra, state: usize) -> Result<Vec<usize>> {
    duality::state_output(q.pair, &q.states, state)
}

pub fn dual_automaton(q: &Coalgebra) -> Result<LAlgebra> {
    let pair = q.pair;
    let states = duality::dual_obj(pair, &q.states)?;
    let trans = q.trans.iter().map(|t| duality::dual_map(pair, &q.states, &q.states, t)).collect::<Result<Vec<_>>>()?;
    let init = duality::init_from_out(pair, &q.states, &q.out)?;
    LAlgebra::new(pair, q.alphabet.clone(), states, trans, init)
}

pub fn dual_automaton_inv(a: &LAlgebra) -> Result<Coalgebra> {
    let pair = a.pair;
    let states = duality::dual_obj(pair, &a.states)?;
    let trans = a.trans.iter().map(|t| duality::dual_map(pair, &a.states, &a.states, t)).collect::<Result<Vec<_>>>()?;
    let out = duality::out_from_init(pair, &a.states, a.init)?;
    Coalgebra::new(pair, a.alphabet.clone(), states, trans, out)
}

/// Move a coalgebra on `dual(dual(Q))` back onto `Q` along the canonical iso.
pub fn transport_to(q_states: &FinAlgebra, pair: PairTag, co: &Coalgebra) -> Result<Coalgebra> {
    let dd = double_dual_iso(pair, q_states)?;
    let mut inv = vec![0; dd.len()];
    for (x, &y) in dd.iter().enumerate() {
        inv[y] = x;
    }
    let trans = co.trans.iter().map(|t| dd.iter().map(|&y| inv[t[y]]).collect()).collect();
    let out = dd.iter().map(|&y| co.out[y]).collect();
    Coalgebra::new(pair, co.alphabet.clone(), q_states.clone(), trans, out)
}

/// `(Q, γ_a, γ_out·γ_a)`.
pub fn right_derivative_view(q: &Coalgebra, a: char) -> Result<Coalgebra> {
    let i = q.letter(a)?;
    let out = q.trans[i].iter().map(|&s| q.out[s]).collect();
    Ok(Coalgebra { out, ..q.clone() })
}

/// Same transitions with initial state `e_A(x)`.
pub fn shift_initial(a: &LAlgebra, x: &FreeElement) -> Result<LAlgebra> {
    let init = eval_free(a, x)?;
    Ok(LAlgebra { init, ..a.clone() })
}

/// The coalgebra whose dual is `shift_initial(dual(Q), rev(x))`, on Q's carrier.
pub fn shift_initial_co(q: &Coalgebra, x: &FreeElement) -> Result<Coalgebra> {
    let d = shift_initial(&dual_automaton(q)?, &crate::langlib::rev_free(x))?;
    transport_to(&q.states, q.pair, &dual_automaton_inv(&d)?)
}

/// True iff `h` is a coalgebra homomorphism `q1 → q2`.
pub fn is_coalgebra_hom(q1: &Coalgebra, q2: &Coalgebra, h: &[usize]) -> bool {
    h.len() == q1.size()
        && h.iter().all(|&y| y < q2.size())
        && is_hom(&q1.states, &q2.states, h).is_none()
        && (0..q1.size()).all(|s| q1.out[s] == q2.out[h[s]])
        && (0..q1.alphabet.len()).all(|a| (0..q1.size()).all(|s| h[q1.trans[a][s]] == q2.trans[a][h[s]]))
}

/// Both criteria for being a subcoalgebra of the rational fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoReport {
    /// All states accept pairwise distinct languages.
    pub distinct_languages: bool,
    /// Two states accepting the same language, when there are any.
    pub witness: Option<(usize, usize)>,
    /// Word images generate the dual carrier under the D-operations.
    pub dual_reachable: bool,
}

impl RhoReport {
    pub fn agree(&self) -> bool {
        self.distinct_languages == self.dual_reachable
    }

    pub fn holds(&self) -> Result<bool> {
        if !self.agree() {
            return Err(Error::Disagreement(format!("language criterion {} vs reachability criterion {}", self.distinct_languages, self.dual_reachable)));
        }
        Ok(self.distinct_languages)
    }
}

/// Elements of the carrier of `a` of the form `α_w(α_in)`.
pub fn word_reachable(a: &LAlgebra) -> Vec<usize> {
    let mut seen = vec![false; a.size()];
    let mut queue = VecDeque::from([a.init]);
    seen[a.init] = true;
    let mut out = Vec::new();
    while let Some(s) = queue.pop_front() {
        out.push(s);
        for t in &a.trans {
            if !seen[t[s]] {
                seen[t[s]] = true;
                queue.push_back(t[s]);
            }
        }
    }
    out
}

/// Moore partition of the states of a deterministic output automaton:
/// two states share a class iff they accept the same language.
pub(crate) fn behaviour_classes(n: usize, k: usize, out: impl Fn(usize) -> usize, next: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut class: Vec<usize> = (0..n).map(&out).collect();
    let mut count = usize::MAX;
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let refined: Vec<usize> = (0..n)
            .map(|s| {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                sig.extend((0..k).map(|a| class[next(s, a)]));
                let l = ids.len();
                *ids.entry(sig).or_insert(l)
            })
            .collect();
        let c = ids.len();
        class = refined;
        if c == count {
            return class;
        }
        count = c;
    }
}

pub fn is_subcoalgebra_of_rho(q: &Coalgebra) -> Result<RhoReport> {
    let k = q.alphabet.len();
    let class = behaviour_classes(q.size(), k, |s| q.out[s], |s, a| q.trans[a][s]);
    let mut first: HashMap<usize, usize> = HashMap::new();
    let mut witness = None;
    for (s, &c) in class.iter().enumerate() {
        if let Some(&t) = first.get(&c) {
            witness.get_or_insert((t, s));
        } else {
            first.insert(c, s);
        }
    }
    let a = dual_automaton(q)?;
    let generated = closure(&a.states, &word_reachable(&a));
    Ok(RhoReport { distinct_languages: witness.is_none(), witness, dual_reachable: generated.len() == a.size() })
}

/// Both criteria for being a local variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVarietyReport {
    /// Every right derivative of every state language is a state language.
    pub closed_under_right_derivatives: bool,
    /// A state and letter whose right derivative is missing.
    pub witness: Option<(usize, char)>,
    /// For each letter, a homomorphism `(Q)_a → Q` when one exists.
    pub homomorphisms: Vec<Option<Vec<usize>>>,
}

impl LocalVarietyReport {
    pub fn homomorphisms_exist(&self) -> bool {
        self.homomorphisms.iter().all(Option::is_some)
    }

    pub fn agree(&self) -> bool {
        self.closed_under_right_derivatives == self.homomorphisms_exist()
    }

    pub fn holds(&self) -> Result<bool> {
        if !self.agree() {
            return Err(Error::Disagreement(format!(
                "derivative criterion {} vs homomorphism criterion {}",
                self.closed_under_right_derivatives,
                self.homomorphisms_exist()
            )));
        }
        Ok(self.closed_under_right_derivatives)
    }
}

/// A small set of states generating the carrier under the operations and transitions.
fn coalgebra_generators(q: &Coalgebra) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; q.size()];
    for s in 0..q.size() {
        if reached[s] {
            continue;
        }
        gens.push(s);
        let mut cur: Vec<usize> = (0..q.size()).filter(|&x| reached[x]).chain([s]).collect();
        loop {
            let mut c = closure(&q.states, &cur);
            for t in &q.trans {
                c.extend(c.clone().iter().map(|&x| t[x]));
            }
            c.sort_unstable();
            c.dedup();
            if c.len() == cur.len() {
                break;
            }
            cur = c;
        }
        for x in cur {
            reached[x] = true;
        }
    }
    gens
}

/// Extend `h(gens[i]) = images[i]` along operations and transitions.
fn extend_coalgebra_map(q1: &Coalgebra, q2: &Coalgebra, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = q1.size();
    let mut h: Vec<Option<usize>> = vec![None; n];
    let mut known: Vec<usize> = Vec::new();
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    let ops: Vec<(String, usize)> = q1.states.tag.signature();
    while let Some((x, y)) = queue.pop_front() {
        match h[x] {
            Some(z) if z == y => continue,
            Some(_) => return None,
            None => {}
        }
        h[x] = Some(y);
        known.push(x);
        for (a, t) in q1.trans.iter().enumerate() {
            queue.push_back((t[x], q2.trans[a][y]));
        }
        for (sym, arity) in &ops {
            match arity {
                0 => queue.push_back((q1.states.constant(sym), q2.states.constant(sym))),
                1 => queue.push_back((q1.states.op1(sym, x), q2.states.op1(sym, y))),
                _ => {
                    for &z in &known {
                        let hz = h[z].unwrap();
                        queue.push_back((q1.states.op2(sym, x, z), q2.states.op2(sym, y, hz)));
                        queue.push_back((q1.states.op2(sym, z, x), q2.states.op2(sym, hz, y)));
                    }
                }
            }
        }
    }
    h.into_iter().collect()
}

/// Search all coalgebra homomorphisms `q1 → q2` by generator images.
///
/// Homomorphisms preserve accepted languages, so each generator only ranges
/// over the target states with the same behaviour.
pub fn find_coalgebra_hom(q1: &Coalgebra, q2: &Coalgebra) -> Option<Vec<usize>> {
    if q1.alphabet != q2.alphabet {
        return None;
    }
    let (n1, n2) = (q1.size(), q2.size());
    let class = behaviour_classes(
        n1 + n2,
        q1.alphabet.len(),
        |s| if s < n1 { q1.out[s] } else { q2.out[s - n1] },
        |s, a| if s < n1 { q1.trans[a][s] } else { n1 + q2.trans[a][s - n1] },
    );
    // when behaviours are distinct in q2 the search space has a single map
    let mut by_class: HashMap<usize, Vec<usize>> = HashMap::new();
    for y in 0..n2 {
        by_class.entry(class[n1 + y]).or_default().push(y);
    }
    if by_class.values().all(|v| v.len() == 1) {
        let h: Option<Vec<usize>> = (0..n1).map(|x| by_class.get(&class[x]).map(|v| v[0])).collect();
        return h.filter(|h| is_coalgebra_hom(q1, q2, h));
    }
    let gens = coalgebra_generators(q1);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&g| (0..n2).filter(|&y| class[n1 + y] == class[g]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let pairs: Vec<(usize, usize)> = gens.iter().zip(&choice).enumerate().map(|(i, (&g, &c))| (g, candidates[i][c])).collect();
        if let Some(h) = extend_coalgebra_map(q1, q2, &pairs) {
            if is_coalgebra_hom(q1, q2, &h) {
                return Some(h);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn is_local_variety(q: &Coalgebra) -> Result<LocalVarietyReport> {
    if !is_subcoalgebra_of_rho(q)?.holds()? {
        return Err(Error::Precondition("the coalgebra is not a subcoalgebra of the rational fixpoint".into()));
    }
    let langs: Vec<RegularLanguage> = (0..q.size()).map(|s| language_of_state(q, s)).collect();
    let set: std::collections::HashSet<&RegularLanguage> = langs.iter().collect();
    let mut witness = None;
    'outer: for (s, l) in langs.iter().enumerate() {
        for &c in &q.alphabet {
            if !set.contains(&l.right_deriv(c)?) {
                witness = Some((s, c));
                break 'outer;
            }
        }
    }
    let homomorphisms = q
        .alphabet
        .iter()
        .map(|&c| Ok(find_coalgebra_hom(&right_derivative_view(q, c)?, q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalVarietyReport { closed_under_right_derivatives: witness.is_none(), witness, homomorphisms })
}

/// Identify states accepting the same language: the quotient coalgebra and
/// the quotient map. The coalgebra itself is left untouched.
pub fn language_image(q: &Coalgebra) -> Result<(Coalgebra, Vec<usize>)> {
    let mut classes: Vec<RegularLanguage> = Vec::new();
    let class: Vec<usize> = (0..q.size())
        .map(|s| {
            let l = language_of_state(q, s);
            classes.iter().position(|m| *m == l).unwrap_or_else(|| {
                classes.push(l);
                classes.len() - 1
            })
        })
        .collect();
    let (states, map) = crate::algebra::quotient(&q.states, &class)?;
    let m = states.size;
    let mut rep = vec![0; m];
    for s in (0..q.size()).rev() {
        rep[map[s]] = s;
    }
    let trans = q.trans.iter().map(|t| rep.iter().map(|&s| map[t[s]]).collect()).collect();
    let out = rep.iter().map(|&s| q.out[s]).collect();
    Ok((Coalgebra::new(q.pair, q.alphabet.clone(), states, trans, out)?, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyTag;
    use crate::langlib::{alphabet, generated_local_variety, parse_regex};

    fn re(s: &str, a: &str) -> RegularLanguage {
        parse_regex(s, &alphabet(a)).unwrap()
    }

    fn lv(tag: VarietyTag, seeds: &[&str], a: &str) -> Coalgebra {
        let seeds: Vec<RegularLanguage> = seeds.iter().map(|s| re(s, a)).collect();
        generated_local_variety(tag, &seeds).unwrap().coalgebra
    }

    #[test]
    fn one_state_ba_coalgebra_dualizes_to_a_singleton() {
        let q = Coalgebra::new(PairTag::Ba, alphabet("a"), FinAlgebra::powerset_ba(1), vec![vec![0, 1]], vec![0, 1]).unwrap();
        let a = dual_automaton(&q).unwrap();
        assert_eq!((a.states.tag, a.size()), (VarietyTag::Set, 1));
    }

    #[test]
    fn parity_variety_dualizes_to_a_two_cycle() {
        let q = lv(VarietyTag::Ba, &["(aa)*"], "a");
        assert_eq!(q.size(), 4);
        let a = dual_automaton(&q).unwrap();
        assert_eq!(a.size(), 2);
        assert_ne!(a.trans[0][a.init], a.init);
        assert_eq!(run_word(&a, "aa").unwrap(), a.init);
    }

    #[test]
    fn reversal_lemma_on_local_varieties() {
        for (tag, pair) in [(VarietyTag::Ba, PairTag::Ba), (VarietyTag::Dl01, PairTag::Dl01), (VarietyTag::Jsl0, PairTag::Jsl0), (VarietyTag::Vect(2), PairTag::Vect(2)), (VarietyTag::Br, PairTag::Br)] {
            let q = lv(tag, &["(ab)*", "a*b"], "ab");
            assert_eq!(q.pair, pair);
            let a = dual_automaton(&q).unwrap();
            for s in 0..q.size() {
                let out = dual_output(&q, s).unwrap();
                assert_eq!(language_of_output(&a, &out).unwrap(), language_of_state(&q, s).reversal(), "{tag}");
            }
        }
    }

    #[test]
    fn round_trip_is_the_identity_up_to_the_canonical_iso() {
        let q = lv(VarietyTag::Jsl0, &["a*b"], "ab");
        let back = transport_to(&q.states, q.pair, &dual_automaton_inv(&dual_automaton(&q).unwrap()).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn duplicate_state_fails_both_criteria() {
        // two copies of the one-state automaton for Σ*
        let q = Coalgebra::new(PairTag::Ba, alphabet("a"), FinAlgebra::powerset_ba(2), vec![vec![0, 1, 2, 3]], vec![0, 1, 0, 1]).unwrap();
        let r = is_subcoalgebra_of_rho(&q).unwrap();
        assert!(r.agree() && !r.distinct_languages && r.witness.is_some());
        let one = Coalgebra::new(PairTag::Ba, alphabet("a"), FinAlgebra::powerset_ba(1), vec![vec![0, 1]], vec![0, 1]).unwrap();
        assert!(is_subcoalgebra_of_rho(&one).unwrap().holds().unwrap());
    }

    #[test]
    fn missing_right_derivative_is_detected() {
        // left-derivative closure of (ab)* under BA operations only
        let l = re("(ab)*", "ab");
        let derivs = [l.clone(), l.left_deriv('a').unwrap(), RegularLanguage::empty(&alphabet("ab"))];
        let q = crate::langlib::variety::coalgebra_of_languages(VarietyTag::Ba, &derivs, false).unwrap().coalgebra;
        let r = is_local_variety(&q).unwrap();
        assert!(r.agree() && !r.closed_under_right_derivatives);
        let full = lv(VarietyTag::Ba, &["(ab)*"], "ab");
        assert!(is_local_variety(&full).unwrap().holds().unwrap());
    }

    #[test]
    fn right_derivative_view_matches_langlib() {
        let q = lv(VarietyTag::Ba, &["(ab)*"], "ab");
        let v = right_derivative_view(&q, 'b').unwrap();
        for s in 0..q.size() {
            assert_eq!(language_of_state(&v, s), language_of_state(&q, s).right_deriv('b').unwrap());
        }
    }

    #[test]
    fn shifting_by_the_empty_word_changes_nothing() {
        let q = lv(VarietyTag::Br, &["a*b"], "ab");
        let a = dual_automaton(&q).unwrap();
        assert_eq!(shift_initial(&a, &FreeElement::Word(String::new())).unwrap(), a);
        assert_eq!(shift_initial_co(&q, &FreeElement::Word(String::new())).unwrap(), q);
    }

    #[test]
    fn documents_round_trip() {
        let q = lv(VarietyTag::Dl01, &["a*b"], "ab");
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(serde_json::from_str::<Coalgebra>(&s).unwrap(), q);
        let a = dual_automaton(&q).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<LAlgebra>(&s).unwrap(), a);
    }
}
