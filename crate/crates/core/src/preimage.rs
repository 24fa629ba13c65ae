//! Preimages of automata along D-monoid morphisms between free monoids, and
//! executable checks of the preimage calculus on a finite corpus.

use serde::{Deserialize, Serialize};

use crate::algebra::{is_hom, product, VarietyTag};
use crate::automata::{
    dual_automaton, dual_automaton_inv, dual_output, eval_free, find_coalgebra_hom, is_coalgebra_hom,
    language_of_output, language_of_state, shift_initial_co, transport_to, Coalgebra, LAlgebra,
};
use crate::duality::PairTag;
use crate::error::{Error, Result};
use crate::langlib::{
    dagger, free_mul, generated_local_variety, parse_regex, preimage_language, words_up_to, DMonoidMorphismFree,
    FreeElement, RegularLanguage,
};

pub use crate::automata::alpha_x;

/// `A^f`: same states and initial state, transitions `α_{f(b)}`.
pub fn algebra_preimage(a: &LAlgebra, f: &DMonoidMorphismFree) -> Result<LAlgebra> {
    if f.target != a.alphabet {
        return Err(Error::Alphabet("the morphism does not land in the automaton's alphabet".into()));
    }
    if f.tag != a.states.tag {
        return Err(Error::TagMismatch(format!("a {} morphism cannot act on {} algebras", f.tag, a.states.tag)));
    }
    let trans = f.images.iter().map(|x| alpha_x(a, x)).collect::<Result<_>>()?;
    LAlgebra::new(a.pair, f.source.clone(), a.states.clone(), trans, a.init)
}

/// `Q^f`, the coalgebra on Q's carrier whose dual is `(Q̂)^{f†}`.
pub fn coalgebra_preimage(q: &Coalgebra, f: &DMonoidMorphismFree) -> Result<Coalgebra> {
    if f.tag != q.pair.d_tag() {
        return Err(Error::TagMismatch(format!("{} coalgebras need {} morphisms", q.pair, q.pair.d_tag())));
    }
    let a = algebra_preimage(&dual_automaton(q)?, &dagger(f))?;
    transport_to(&q.states, q.pair, &dual_automaton_inv(&a)?)
}

/// Coproduct of two coalgebras, computed as the dual of the product of their duals.
pub fn coproduct(q1: &Coalgebra, q2: &Coalgebra) -> Result<Coalgebra> {
    if q1.pair != q2.pair || q1.alphabet != q2.alphabet {
        return Err(Error::Invalid("coproduct of coalgebras of different types".into()));
    }
    dual_automaton_inv(&algebra_product(&dual_automaton(q1)?, &dual_automaton(q2)?)?)
}

/// Componentwise product of two L-algebras.
pub fn algebra_product(a1: &LAlgebra, a2: &LAlgebra) -> Result<LAlgebra> {
    if a1.pair != a2.pair || a1.alphabet != a2.alphabet {
        return Err(Error::Invalid("product of algebras of different types".into()));
    }
    let (states, _, _) = product(&a1.states, &a2.states)?;
    let n2 = a2.size();
    let trans = a1
        .trans
        .iter()
        .zip(&a2.trans)
        .map(|(t1, t2)| (0..states.size).map(|x| t1[x / n2] * n2 + t2[x % n2]).collect())
        .collect();
    LAlgebra::new(a1.pair, a1.alphabet.clone(), states, trans, a1.init * n2 + a2.init)
}

/// Parse a letter image: `+`-separated words, `1` for the empty word, `0`
/// for the zero of the free monoid, and for VECT an optional leading
/// coefficient (`2ab`).
pub fn parse_image(tag: VarietyTag, spec: &str) -> Result<FreeElement> {
    let spec = spec.trim();
    if spec == "0" {
        return FreeElement::zero(tag).ok_or_else(|| Error::TagMismatch(format!("the free {tag} monoid has no zero")));
    }
    let terms: Vec<(String, u8)> = spec
        .split('+')
        .map(|t| {
            let t = t.trim();
            let digits: String = t.chars().take_while(char::is_ascii_digit).collect();
            let rest = &t[digits.len()..];
            let (c, w) = match (digits.as_str(), rest) {
                ("1", "") => (1, ""),
                ("", w) => (1, w),
                (d, w) => (d.parse::<u8>().map_err(|_| Error::Invalid(format!("bad coefficient in {t:?}")))?, w),
            };
            Ok((w.to_string(), c))
        })
        .collect::<Result<_>>()?;
    match tag {
        VarietyTag::Jsl0 => Ok(FreeElement::finite(terms.into_iter().map(|t| t.0))),
        VarietyTag::Vect(p) => Ok(FreeElement::weighted(p, terms)),
        _ if terms.len() == 1 && terms[0].1 == 1 => FreeElement::word(tag, &terms[0].0),
        _ => Err(Error::TagMismatch(format!("{spec:?} is not a word of the free {tag} monoid"))),
    }
}

/// A morphism from letter-image specs, as in [`parse_image`].
pub fn morphism_from_specs(tag: VarietyTag, source: &str, target: &str, specs: &[&str]) -> Result<DMonoidMorphismFree> {
    let images = specs.iter().map(|s| parse_image(tag, s)).collect::<Result<_>>()?;
    DMonoidMorphismFree::new(tag, source.chars().collect(), target.chars().collect(), images)
}

/// A seed language of the corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub regex: String,
    pub alphabet: String,
}

/// Seeds, morphisms and pairs for [`check_preimage_laws`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub pairs: Vec<PairTag>,
    pub seeds: Vec<Seed>,
    pub morphisms: Vec<DMonoidMorphismFree>,
}

const DEFAULT_SEEDS: [(&str, &str); 22] = [
    ("0", "a"),
    ("1", "a"),
    ("a*", "a"),
    ("(aa)*", "a"),
    ("a(aa)*", "a"),
    ("aa*", "a"),
    ("(aaa)*", "a"),
    ("0", "ab"),
    ("1", "ab"),
    ("(ab)*", "ab"),
    ("a*b*", "ab"),
    ("(a|b)*a", "ab"),
    ("a(a|b)*", "ab"),
    ("b*a(a|b)*", "ab"),
    ("a*ba*", "ab"),
    ("(a|b)(a|b)", "ab"),
    ("((a|b)(a|b))*", "ab"),
    ("a|b", "ab"),
    ("a*(ba*ba*)*", "ab"),
    ("~((a|b)*b)", "ab"),
    ("(a|b)*ab(a|b)*", "ab"),
    ("b(ab)*", "ab"),
];

// (source, target, images); `0` is replaced per tag, and for tags without a
// zero the spec is skipped.
const DEFAULT_MORPHISMS: [(&str, &str, &[&str]); 24] = [
    ("x", "a", &["1"]),
    ("x", "a", &["a"]),
    ("x", "a", &["aa"]),
    ("x", "a", &["aaa"]),
    ("xy", "a", &["a", "aa"]),
    ("xy", "a", &["1", "a"]),
    ("xy", "a", &["aa", "aaa"]),
    ("x", "a", &["1+a"]),
    ("x", "a", &["a+aa"]),
    ("xy", "a", &["0", "a"]),
    ("xy", "a", &["a", "a"]),
    ("x", "ab", &["ab"]),
    ("x", "ab", &["ba"]),
    ("x", "ab", &["1"]),
    ("xy", "ab", &["a", "b"]),
    ("xy", "ab", &["b", "a"]),
    ("xy", "ab", &["ab", "1"]),
    ("xy", "ab", &["aa", "bb"]),
    ("xy", "ab", &["a+b", "ab"]),
    ("xy", "ab", &["1+ab", "b"]),
    ("x", "ab", &["a+ba"]),
    ("xy", "ab", &["0", "ab"]),
    ("xy", "ab", &["b", "0"]),
    ("x", "xy", &["xy"]),
];

impl Corpus {
    /// 22 seeds over `{a}` and `{a, b}` with small syntactic monoids, and
    /// between 10 and 24 morphisms per D-tag of the five main pairs.
    pub fn default_corpus() -> Corpus {
        let seeds = DEFAULT_SEEDS.iter().map(|(r, a)| Seed { regex: r.to_string(), alphabet: a.to_string() }).collect();
        let mut morphisms = Vec::new();
        for pair in PairTag::MAIN {
            let tag = pair.d_tag();
            for (s, t, imgs) in DEFAULT_MORPHISMS {
                if let Ok(f) = morphism_from_specs(tag, s, t, imgs) {
                    morphisms.push(f);
                }
            }
        }
        Corpus { pairs: PairTag::MAIN.to_vec(), seeds, morphisms }
    }

    /// Morphisms acting on coalgebras of `pair` over `alphabet`.
    pub fn morphisms_into<'a>(&'a self, pair: PairTag, alphabet: &'a [char]) -> impl Iterator<Item = &'a DMonoidMorphismFree> + 'a {
        self.morphisms.iter().filter(move |f| f.tag == pair.d_tag() && f.target == alphabet)
    }
}

/// The name of each checkable law, in report order.
pub const LAWS: [&str; 7] = ["lrev", "cpre", "proppre", "lempre", "qfcomp", "frcom", "tpre"];

/// Outcome of one law over the corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: String,
    /// Number of individual equalities checked.
    pub checked: usize,
    /// The first failure in corpus order.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.counterexample.is_none())
    }
}

/// Bounds on the corpus.
pub const MAX_SEED_VARIETY: usize = 4096;

struct Instance {
    pair: PairTag,
    seed: String,
    q: Coalgebra,
    langs: Vec<RegularLanguage>,
}

struct Tally {
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }
}

/// Run the selected laws (all of [`LAWS`] when `laws` is empty) on the corpus.
pub fn check_preimage_laws(corpus: &Corpus, laws: &[&str]) -> Result<LawReport> {
    for l in laws {
        if !LAWS.contains(l) && *l != "qfprops" {
            return Err(Error::Invalid(format!("unknown law {l:?}; known: {}", LAWS.join(", "))));
        }
    }
    let wanted = |l: &str| laws.is_empty() || laws.contains(&l) || (l == "qfcomp" && laws.contains(&"qfprops"));
    let mut instances = Vec::new();
    for &pair in &corpus.pairs {
        for s in &corpus.seeds {
            let alpha: Vec<char> = s.alphabet.chars().collect();
            let l = parse_regex(&s.regex, &alpha)?;
            let v = generated_local_variety(pair.c_tag(), &[l])?;
            if v.languages.len() > MAX_SEED_VARIETY {
                return Err(Error::Bound(format!("local variety of {} has more than {MAX_SEED_VARIETY} languages", s.regex)));
            }
            instances.push(Instance { pair, seed: s.regex.clone(), q: v.coalgebra, langs: v.languages });
        }
    }
    let mut outcomes = Vec::new();
    for law in LAWS {
        if !wanted(law) {
            continue;
        }
        let mut t = Tally { checked: 0, counterexample: None };
        match law {
            "lrev" => law_rev(&instances, &mut t)?,
            "cpre" => law_cpre(corpus, &instances, &mut t)?,
            "proppre" => law_proppre(corpus, &instances, &mut t)?,
            "lempre" => law_lempre(corpus, &instances, &mut t)?,
            "qfcomp" => law_qfcomp(corpus, &instances, &mut t)?,
            "frcom" => law_frcom(corpus, &instances, &mut t)?,
            "tpre" => law_tpre(corpus, &instances, &mut t)?,
            _ => unreachable!(),
        }
        outcomes.push(LawOutcome { law: law.to_string(), checked: t.checked, counterexample: t.counterexample });
    }
    Ok(LawReport { outcomes })
}

/// `x↦ab, y↦b` style rendering of a morphism.
pub fn show(f: &DMonoidMorphismFree) -> String {
    f.source.iter().zip(&f.images).map(|(c, x)| format!("{c}↦{x}")).collect::<Vec<_>>().join(", ")
}

fn describe(i: &Instance, f: Option<&DMonoidMorphismFree>) -> String {
    match f {
        Some(f) => format!("{} seed {} with f = {}", i.pair, i.seed, show(f)),
        None => format!("{} seed {}", i.pair, i.seed),
    }
}

fn law_rev(instances: &[Instance], t: &mut Tally) -> Result<()> {
    for i in instances {
        let a = dual_automaton(&i.q)?;
        for (s, l) in i.langs.iter().enumerate() {
            let got = language_of_output(&a, &dual_output(&i.q, s)?)?;
            t.check(got == l.reversal(), || format!("{}: state {l}", describe(i, None)));
        }
    }
    Ok(())
}

fn law_cpre(corpus: &Corpus, instances: &[Instance], t: &mut Tally) -> Result<()> {
    for i in instances {
        let a = dual_automaton(&i.q)?;
        for f in corpus.morphisms_into(i.pair, &i.q.alphabet) {
            let af = algebra_preimage(&a, f)?;
            for s in 0..i.q.size() {
                let out = dual_output(&i.q, s)?;
                let lhs = language_of_output(&af, &out)?;
                let rhs = preimage_language(&language_of_output(&a, &out)?, f)?;
                t.check(lhs == rhs, || format!("{}: output of state {}", describe(i, Some(f)), i.langs[s]));
            }
        }
    }
    Ok(())
}

fn law_proppre(corpus: &Corpus, instances: &[Instance], t: &mut Tally) -> Result<()> {
    for i in instances {
        for f in corpus.morphisms_into(i.pair, &i.q.alphabet) {
            let qf = coalgebra_preimage(&i.q, f)?;
            for (s, l) in i.langs.iter().enumerate() {
                let lhs = language_of_state(&qf, s);
                t.check(lhs == preimage_language(l, f)?, || format!("{}: state {l}", describe(i, Some(f))));
            }
        }
    }
    Ok(())
}

fn law_lempre(corpus: &Corpus, instances: &[Instance], t: &mut Tally) -> Result<()> {
    // (a): f is an L_Δ-homomorphism ΨΔ* → (ΨΣ*)^f, on words up to length 4
    for f in &corpus.morphisms {
        for x in words_up_to(&f.source, 4) {
            for (bi, &b) in f.source.iter().enumerate() {
                let lhs = f.apply_word(&format!("{x}{b}"))?;
                let rhs = free_mul(&f.apply_word(&x)?, &f.images[bi])?;
                t.check(lhs == rhs, || format!("(a) f = {}: word {x}{b}", show(f)));
            }
        }
        t.check(f.apply_word("")? == FreeElement::unit(f.tag)?, || "(a) unit".into());
    }
    // (b): the dual of the inclusion of consecutive local varieties is an
    // L-algebra homomorphism, and stays one after taking preimages;
    // (c): e_{A^f} = e_A · f
    for w in instances.windows(2) {
        let (small, big) = (&w[0], &w[1]);
        if small.pair != big.pair || small.q.alphabet != big.q.alphabet {
            continue;
        }
        let joint = generated_local_variety(big.pair.c_tag(), &[small.langs.clone(), big.langs.clone()].concat())?;
        let incl: Vec<usize> = small.langs.iter().map(|l| joint.index_of(l).unwrap()).collect();
        let (a_small, a_joint) = (dual_automaton(&small.q)?, dual_automaton(&joint.coalgebra)?);
        let h = crate::duality::dual_map(small.pair, &small.q.states, &joint.coalgebra.states, &incl)?;
        for f in corpus.morphisms_into(small.pair, &small.q.alphabet) {
            let (p, q) = (algebra_preimage(&a_joint, f)?, algebra_preimage(&a_small, f)?);
            let ok = is_lalgebra_hom(&p, &q, &h);
            t.check(ok, || format!("(b) {}", describe(small, Some(f))));
        }
    }
    for i in instances {
        let a = dual_automaton(&i.q)?;
        for f in corpus.morphisms_into(i.pair, &i.q.alphabet) {
            let af = algebra_preimage(&a, f)?;
            for x in sample_elements(f.tag, &f.source)? {
                let ok = eval_free(&af, &x)? == eval_free(&a, &f.apply(&x)?)?;
                t.check(ok, || format!("(c) {}: x = {x:?}", describe(i, Some(f))));
            }
        }
    }
    Ok(())
}

/// `h: A → A'` commutes with transitions and preserves the initial state.
pub fn is_lalgebra_hom(a: &LAlgebra, a2: &LAlgebra, h: &[usize]) -> bool {
    h.len() == a.size()
        && is_hom(&a.states, &a2.states, h).is_none()
        && h[a.init] == a2.init
        && a.trans.iter().zip(&a2.trans).all(|(t, t2)| (0..a.size()).all(|s| h[t[s]] == t2[h[s]]))
}

/// Words up to length 2 plus, where the free monoid has them, a zero and
/// a two-term combination.
fn sample_elements(tag: VarietyTag, alphabet: &[char]) -> Result<Vec<FreeElement>> {
    let words = words_up_to(alphabet, 2);
    let mut out: Vec<FreeElement> = words.iter().map(|w| FreeElement::word(tag, w)).collect::<Result<_>>()?;
    out.extend(FreeElement::zero(tag));
    match tag {
        VarietyTag::Jsl0 => out.push(FreeElement::finite([words[0].clone(), words[1].clone()])),
        VarietyTag::Vect(p) => out.push(FreeElement::weighted(p, [(words[0].clone(), 1), (words[1].clone(), 1)])),
        _ => {}
    }
    Ok(out)
}

fn law_qfcomp(corpus: &Corpus, instances: &[Instance], t: &mut Tally) -> Result<()> {
    // (d): (Q^f)^g = Q^{f·g}
    for i in instances {
        for f in corpus.morphisms_into(i.pair, &i.q.alphabet) {
            let qf = coalgebra_preimage(&i.q, f)?;
            for g in corpus.morphisms_into(i.pair, &f.source) {
                let lhs = coalgebra_preimage(&qf, g)?;
                let rhs = coalgebra_preimage(&i.q, &f.after(g)?)?;
                t.check(lhs == rhs, || format!("(d) {} and g = {}", describe(i, Some(f)), show(g)));
            }
        }
    }
    // (e): (Q1 + Q2)^f = Q1^f + Q2^f, for consecutive seeds of one type
    for w in instances.windows(2) {
        let (i1, i2) = (&w[0], &w[1]);
        if i1.pair != i2.pair || i1.q.alphabet != i2.q.alphabet || !coproduct_is_small(&i1.q, &i2.q)? {
            continue;
        }
        let sum = coproduct(&i1.q, &i2.q)?;
        for f in corpus.morphisms_into(i1.pair, &i1.q.alphabet) {
            let lhs = coalgebra_preimage(&sum, f)?;
            let rhs = coproduct(&coalgebra_preimage(&i1.q, f)?, &coalgebra_preimage(&i2.q, f)?)?;
            t.check(lhs == rhs, || format!("(e) {} + {}", describe(i1, Some(f)), i2.seed));
        }
    }
    Ok(())
}

/// The coproduct's carrier is the dual of a product of duals; for the
/// powerset-like pairs it is exponential in that product.
fn coproduct_is_small(q1: &Coalgebra, q2: &Coalgebra) -> Result<bool> {
    let n = dual_automaton(q1)?.size() * dual_automaton(q2)?.size();
    Ok(match q1.pair {
        PairTag::Ba | PairTag::Br | PairTag::Dl01 => n <= 10,
        _ => n <= 1024,
    })
}

fn law_frcom(corpus: &Corpus, instances: &[Instance], t: &mut Tally) -> Result<()> {
    for i in instances {
        for f in corpus.morphisms_into(i.pair, &i.q.alphabet) {
            let qf = coalgebra_preimage(&i.q, f)?;
            for x in sample_elements(f.tag, &f.source)? {
                let lhs = shift_initial_co(&qf, &x)?;
                let rhs = coalgebra_preimage(&shift_initial_co(&i.q, &f.apply(&x)?)?, f)?;
                t.check(lhs == rhs, || format!("{}: x = {x:?}", describe(i, Some(f))));
            }
        }
    }
    Ok(())
}

fn law_tpre(corpus: &Corpus, instances: &[Instance], t: &mut Tally) -> Result<()> {
    // VΔ is the local variety generated by the preimage of the seed alone, so
    // the inclusion {L·f : L ∈ VΣ} ⊆ VΔ can go either way.
    for i in instances {
        let seed = parse_regex(&i.seed, &i.q.alphabet)?;
        for f in corpus.morphisms_into(i.pair, &i.q.alphabet) {
            let target = generated_local_variety(i.pair.c_tag(), &[preimage_language(&seed, f)?])?;
            let images: Vec<RegularLanguage> = i.langs.iter().map(|l| preimage_language(l, f)).collect::<Result<_>>()?;
            let positions: Vec<Option<usize>> = images.iter().map(|l| target.index_of(l)).collect();
            let included = positions.iter().all(Option::is_some);
            let qf = coalgebra_preimage(&i.q, f)?;
            let hom = find_coalgebra_hom(&qf, &target.coalgebra);
            t.check(included == hom.is_some(), || {
                format!("{}: inclusion {included} but homomorphism {}", describe(i, Some(f)), hom.is_some())
            });
            if included {
                let map: Vec<usize> = positions.into_iter().map(Option::unwrap).collect();
                t.check(is_coalgebra_hom(&qf, &target.coalgebra, &map), || {
                    format!("{}: the preimage map is not a homomorphism", describe(i, Some(f)))
                });
            }
        }
    }
    Ok(())
}
