//! Finite D-monoids: monoids whose carrier is a D-algebra and whose
//! multiplication is a bimorphism.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_hom, FinAlgebra, LawViolation, Table, VarietyTag};
use crate::automata::{dual_automaton, is_local_variety, Coalgebra, LAlgebra};
use crate::duality::PairTag;
use crate::error::{Error, Result};
use crate::gf::{self, Echelon};
use crate::langlib::FreeElement;

/// Default cap on the size of generated D-monoids.
pub const MONOID_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DMonoidDoc", into = "DMonoidDoc")]
pub struct DMonoid {
    pub carrier: FinAlgebra,
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

#[derive(Serialize, Deserialize)]
struct DMonoidDoc {
    tag: VarietyTag,
    carrier: FinAlgebra,
    mult: Vec<Vec<usize>>,
    unit: usize,
}

impl TryFrom<DMonoidDoc> for DMonoid {
    type Error = Error;
    fn try_from(d: DMonoidDoc) -> Result<Self> {
        if d.tag != d.carrier.tag {
            return Err(Error::TagMismatch("monoid tag differs from its carrier's".into()));
        }
        DMonoid::new(d.carrier, d.mult, d.unit)
    }
}

impl From<DMonoid> for DMonoidDoc {
    fn from(m: DMonoid) -> Self {
        DMonoidDoc { tag: m.carrier.tag, carrier: m.carrier, mult: m.mult, unit: m.unit }
    }
}

impl DMonoid {
    /// Checks table shapes only; laws are checked by [`validate_dmonoid`].
    pub fn new(carrier: FinAlgebra, mult: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = carrier.size;
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) || unit >= n {
            return Err(Error::Structural("multiplication table does not fit the carrier".into()));
        }
        Ok(DMonoid { carrier, mult, unit })
    }

    pub fn size(&self) -> usize {
        self.carrier.size
    }

    pub fn tag(&self) -> VarietyTag {
        self.carrier.tag
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn trivial(tag: VarietyTag) -> Result<Self> {
        let carrier = match tag {
            VarietyTag::Pos => FinAlgebra::discrete_poset(1),
            t => FinAlgebra::build(t, 1, |_, _| 0),
        };
        DMonoid::new(carrier, vec![vec![0]], 0)
    }

    /// Value of a free element under the morphism extending `images`.
    pub fn evaluate(&self, images: &[usize], alphabet: &[char], x: &FreeElement) -> Result<usize> {
        if !x.fits(self.tag()) {
            return Err(Error::TagMismatch(format!("{x:?} is not in the free {} monoid", self.tag())));
        }
        let word = |w: &str| -> Result<usize> {
            crate::langlib::letters_of(alphabet, w).map(|l| l.into_iter().fold(self.unit, |acc, a| self.mul(acc, images[a])))
        };
        let c = &self.carrier;
        Ok(match x {
            FreeElement::Word(w) => word(w)?,
            FreeElement::Zero => c.point(),
            FreeElement::Finite(ws) => {
                let mut acc = c.constant("bot");
                for w in ws {
                    acc = c.op2("join", acc, word(w)?);
                }
                acc
            }
            FreeElement::Weighted { terms, .. } => {
                let mut acc = c.constant("zero");
                for (w, k) in terms {
                    acc = c.op2("add", acc, c.scale(*k, word(w)?));
                }
                acc
            }
        })
    }
}

/// Monoid laws, the bimorphism law, and absorption of the basepoint for SET_STAR.
pub fn validate_dmonoid(m: &DMonoid) -> Result<Vec<LawViolation>> {
    let mut report = crate::algebra::validate_algebra(&m.carrier)?;
    let n = m.size();
    let v = |law: &str, w: Vec<usize>| LawViolation { law: law.into(), witness: w };
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                    report.push(v("associativity", vec![x, y, z]));
                    break 'assoc;
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| m.mul(m.unit, x) != x || m.mul(x, m.unit) != x) {
        report.push(v("unit", vec![x]));
    }
    for x in 0..n {
        let left: Vec<usize> = (0..n).map(|y| m.mul(x, y)).collect();
        if let Some(ce) = is_hom(&m.carrier, &m.carrier, &left) {
            report.push(v(&format!("bimorphism: left section fails {}", ce.op), [vec![x], ce.args].concat()));
        }
        let right: Vec<usize> = (0..n).map(|y| m.mul(y, x)).collect();
        if let Some(ce) = is_hom(&m.carrier, &m.carrier, &right) {
            report.push(v(&format!("bimorphism: right section fails {}", ce.op), [vec![x], ce.args].concat()));
        }
    }
    if m.tag() == VarietyTag::SetStar {
        let z = m.carrier.point();
        if let Some(x) = (0..n).find(|&x| m.mul(x, z) != z || m.mul(z, x) != z) {
            report.push(v("zero absorption", vec![x]));
        }
    }
    Ok(report)
}

/// A D-monoid generated by the images of the letters of an alphabet, with a
/// representative free element for each carrier element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedDMonoid {
    pub base: DMonoid,
    pub alphabet: Vec<char>,
    pub gen_images: Vec<usize>,
    pub repr: Vec<FreeElement>,
}

impl GeneratedDMonoid {
    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn tag(&self) -> VarietyTag {
        self.base.tag()
    }

    /// `e(x)` for a free element `x`.
    pub fn eval(&self, x: &FreeElement) -> Result<usize> {
        self.base.evaluate(&self.gen_images, &self.alphabet, x)
    }

    /// Check that every representative evaluates back to its element.
    pub fn check_representatives(&self) -> Result<bool> {
        for (i, r) in self.repr.iter().enumerate() {
            if self.eval(r)? != i {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generation of a Σ-generated D-monoid over an arbitrary key type: words
/// breadth-first in shortlex order, then closure under the D-operations.
pub(crate) struct Generator<'a, K> {
    pub tag: VarietyTag,
    pub alphabet: Vec<char>,
    pub unit: K,
    /// right multiplication by a letter
    pub step: Box<dyn Fn(&K, usize) -> K + 'a>,
    /// D-operations on keys
    pub op: Box<dyn Fn(&str, &[&K]) -> K + 'a>,
    pub leq: Option<Box<dyn Fn(&K, &K) -> bool + 'a>>,
    /// full multiplication on keys, when available
    pub mul: Option<Box<dyn Fn(&K, &K) -> K + 'a>>,
    pub cap: usize,
}

impl<K: Clone + Eq + Hash> Generator<'_, K> {
    pub fn run(self) -> Result<(GeneratedDMonoid, Vec<K>)> {
        let cap_err = || Error::Cap(format!("generated D-monoid exceeds {} elements", self.cap));
        let k = self.alphabet.len();
        let mut keys: Vec<K> = vec![self.unit.clone()];
        let mut index: HashMap<K, usize> = HashMap::from([(self.unit.clone(), 0)]);
        let mut words: Vec<Option<String>> = vec![Some(String::new())];
        let add = |key: K, word: Option<String>, keys: &mut Vec<K>, index: &mut HashMap<K, usize>, words: &mut Vec<Option<String>>| -> Option<usize> {
            if index.contains_key(&key) {
                return None;
            }
            index.insert(key.clone(), keys.len());
            keys.push(key);
            words.push(word);
            Some(keys.len() - 1)
        };
        let sig = self.tag.signature();
        let mut stepped = 0;
        let mut closed = 0;
        loop {
            // words, breadth first
            let mut queue: VecDeque<usize> = (stepped..keys.len()).collect();
            stepped = keys.len();
            while let Some(i) = queue.pop_front() {
                for a in 0..k {
                    let t = (self.step)(&keys[i], a);
                    let w = words[i].as_ref().map(|w| format!("{w}{}", self.alphabet[a]));
                    if let Some(j) = add(t, w, &mut keys, &mut index, &mut words) {
                        queue.push_back(j);
                    }
                }
                if keys.len() > self.cap {
                    return Err(cap_err());
                }
            }
            stepped = stepped.max(keys.len());
            // D-operations
            for (sym, arity) in &sig {
                if *arity == 0 {
                    add((self.op)(sym, &[]), None, &mut keys, &mut index, &mut words);
                }
            }
            let mut i = closed;
            while i < keys.len() {
                for (sym, arity) in &sig {
                    match arity {
                        1 => {
                            let t = (self.op)(sym, &[&keys[i]]);
                            add(t, None, &mut keys, &mut index, &mut words);
                        }
                        2 => {
                            for j in 0..=i {
                                let t = (self.op)(sym, &[&keys[i], &keys[j]]);
                                add(t, None, &mut keys, &mut index, &mut words);
                                let t = (self.op)(sym, &[&keys[j], &keys[i]]);
                                add(t, None, &mut keys, &mut index, &mut words);
                            }
                        }
                        _ => {}
                    }
                }
                if keys.len() > self.cap {
                    return Err(cap_err());
                }
                i += 1;
            }
            closed = keys.len();
            // new elements must also be closed under letters
            let before = keys.len();
            for i in stepped..before {
                for a in 0..k {
                    let t = (self.step)(&keys[i], a);
                    add(t, None, &mut keys, &mut index, &mut words);
                }
            }
            stepped = before;
            if keys.len() == before {
                break;
            }
        }
        let n = keys.len();
        let look = |key: K| -> Result<usize> { index.get(&key).copied().ok_or_else(|| Error::Invalid("generated set is not closed".into())) };
        let err = std::cell::RefCell::new(None);
        let mut carrier = FinAlgebra::build(self.tag, n, |sym, args| {
            let key = match *args {
                [] => (self.op)(sym, &[]),
                [x] => (self.op)(sym, &[&keys[x]]),
                [x, y] => (self.op)(sym, &[&keys[x], &keys[y]]),
                _ => (self.op)(sym, &args.iter().map(|&i| &keys[i]).collect::<Vec<_>>()),
            };
            look(key).unwrap_or_else(|e| {
                *err.borrow_mut() = Some(e);
                0
            })
        });
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        if let Some(leq) = &self.leq {
            carrier.order = Some((0..n).map(|x| (0..n).map(|y| leq(&keys[x], &keys[y])).collect()).collect());
        }
        let repr = representatives(&carrier, &words)?;
        let gen_images: Vec<usize> = (0..k).map(|a| look((self.step)(&self.unit, a))).collect::<Result<_>>()?;
        let mult: Vec<Vec<usize>> = match &self.mul {
            Some(mul) => (0..n).map(|x| (0..n).map(|y| look(mul(&keys[x], &keys[y]))).collect::<Result<_>>()).collect::<Result<_>>()?,
            None => {
                // e(x)·e(y) = e(x•y): act on x by the representative of y
                let act = |x: usize, w: &str| -> Result<usize> {
                    let mut key = keys[x].clone();
                    for c in w.chars() {
                        key = (self.step)(&key, self.alphabet.binary_search(&c).unwrap());
                    }
                    look(key)
                };
                let mut table = vec![vec![0; n]; n];
                for x in 0..n {
                    for y in 0..n {
                        table[x][y] = match &repr[y] {
                            FreeElement::Word(w) => act(x, w)?,
                            FreeElement::Zero => carrier.point(),
                            FreeElement::Finite(ws) => {
                                let mut acc = carrier.constant("bot");
                                for w in ws {
                                    acc = carrier.op2("join", acc, act(x, w)?);
                                }
                                acc
                            }
                            FreeElement::Weighted { terms, .. } => {
                                let mut acc = carrier.constant("zero");
                                for (w, c) in terms {
                                    acc = carrier.op2("add", acc, carrier.scale(*c, act(x, w)?));
                                }
                                acc
                            }
                        };
                    }
                }
                table
            }
        };
        let base = DMonoid::new(carrier, mult, 0)?;
        Ok((GeneratedDMonoid { base, alphabet: self.alphabet, gen_images, repr }, keys))
    }
}

/// Canonical representatives: the shortlex-least word where one exists, the
/// zero marker for the basepoint, and otherwise a greedy combination of word
/// elements taken in shortlex order.
fn representatives(carrier: &FinAlgebra, words: &[Option<String>]) -> Result<Vec<FreeElement>> {
    let tag = carrier.tag;
    let n = carrier.size;
    let word_elems: Vec<(usize, &String)> = words.iter().enumerate().filter_map(|(i, w)| w.as_ref().map(|w| (i, w))).collect();
    let mut repr = Vec::with_capacity(n);
    let coords = if let VarietyTag::Vect(_) = tag { Some(carrier.coordinates()) } else { None };
    let mut word_basis: Option<(Vec<(usize, &String)>, Vec<Vec<u8>>)> = None;
    for x in 0..n {
        let r = match (tag, &words[x]) {
            (VarietyTag::SetStar, _) if x == carrier.point() => FreeElement::Zero,
            (_, Some(w)) => FreeElement::word(tag, w)?,
            (VarietyTag::Jsl0, None) => {
                let mut cur = carrier.constant("bot");
                let mut chosen: Vec<String> = Vec::new();
                for &(e, w) in &word_elems {
                    if cur == x {
                        break;
                    }
                    if carrier.leq(e, x) && !carrier.leq(e, cur) {
                        chosen.push(w.clone());
                        cur = carrier.op2("join", cur, e);
                    }
                }
                if cur != x {
                    return Err(Error::Invalid("element is not a join of word images".into()));
                }
                FreeElement::finite(chosen)
            }
            (VarietyTag::Vect(p), None) => {
                let coords = coords.as_ref().unwrap();
                let (basis, vecs) = word_basis.get_or_insert_with(|| {
                    let mut ech = Echelon::new(p);
                    let basis: Vec<(usize, &String)> = word_elems.iter().copied().filter(|&(e, _)| ech.insert(&coords[e])).collect();
                    let vecs = basis.iter().map(|(e, _)| coords[*e].clone()).collect();
                    (basis, vecs)
                });
                let c = gf::solve_combination(p, vecs, &coords[x])
                    .ok_or_else(|| Error::Invalid("element is not a combination of word images".into()))?;
                FreeElement::weighted(p, basis.iter().zip(c).map(|((_, w), c)| ((*w).clone(), c)))
            }
            _ => return Err(Error::Invalid("element is not reachable by a word".into())),
        };
        repr.push(r);
    }
    Ok(repr)
}

/// Pointwise D-operations on tables over the carrier of `a`.
/// Operations of `a` applied coordinatewise to tuples of length `len`.
pub(crate) fn pointwise_op<'a>(a: &'a FinAlgebra, len: usize) -> impl Fn(&str, &[&Vec<usize>]) -> Vec<usize> + 'a {
    move |sym, args| match a.table(sym) {
        Table::Const(c) => vec![*c; len],
        Table::Unary(t) => args[0].iter().map(|&x| t[x]).collect(),
        Table::Binary(t) => args[0].iter().zip(args[1]).map(|(&x, &y)| t[x][y]).collect(),
    }
}

pub(crate) fn pointwise_leq(a: &FinAlgebra) -> impl Fn(&Vec<usize>, &Vec<usize>) -> bool + '_ {
    move |f, g| f.iter().zip(g).all(|(&x, &y)| a.leq(x, y))
}

/// The sub-D-monoid of `[A, A]` generated by the letter actions, with
/// `mult(f, g) = g ∘ f` so that `α_{ab} = α_b ∘ α_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMonoidView {
    pub host: FinAlgebra,
    pub elements: Vec<Vec<usize>>,
    pub monoid: GeneratedDMonoid,
}

pub fn transition_dmonoid(a: &LAlgebra) -> Result<EndoMonoidView> {
    transition_dmonoid_capped(a, MONOID_CAP)
}

pub fn transition_dmonoid_capped(a: &LAlgebra, cap: usize) -> Result<EndoMonoidView> {
    let host = &a.states;
    let ordered = host.tag.is_ordered();
    let gen = Generator {
        tag: host.tag,
        alphabet: a.alphabet.clone(),
        unit: (0..host.size).collect::<Vec<usize>>(),
        step: Box::new(|f: &Vec<usize>, c| f.iter().map(|&s| a.trans[c][s]).collect()),
        op: Box::new(pointwise_op(host, host.size)),
        leq: if ordered { Some(Box::new(pointwise_leq(host))) } else { None },
        mul: Some(Box::new(|f: &Vec<usize>, g: &Vec<usize>| f.iter().map(|&s| g[s]).collect())),
        cap,
    };
    let (monoid, elements) = gen.run()?;
    Ok(EndoMonoidView { host: host.clone(), elements, monoid })
}

/// The L-algebra of right multiplication: `α_a(d) = d · e(a)`, initial state `e(ε)`.
pub fn associated_lalgebra(g: &GeneratedDMonoid) -> Result<LAlgebra> {
    let pair = PairTag::from_d_tag(g.tag())?;
    let trans = g.gen_images.iter().map(|&e| (0..g.size()).map(|d| g.base.mul(d, e)).collect()).collect();
    LAlgebra::new(pair, g.alphabet.clone(), g.base.carrier.clone(), trans, g.base.unit)
}

/// The Σ-generated D-monoid carried by the dual of a local variety, numbered
/// as the dual automaton so that its associated L-algebra is that automaton.
pub fn dual_generated_monoid(q: &Coalgebra) -> Result<GeneratedDMonoid> {
    if !is_local_variety(q)?.holds()? {
        return Err(Error::Precondition("the coalgebra is not a local variety".into()));
    }
    let a = dual_automaton(q)?;
    let host = &a.states;
    let gen = Generator {
        tag: host.tag,
        alphabet: a.alphabet.clone(),
        unit: a.init,
        step: Box::new(|&d: &usize, c| a.trans[c][d]),
        op: Box::new(|sym, args: &[&usize]| host.table(sym).apply(&args.iter().map(|&&x| x).collect::<Vec<_>>())),
        leq: if host.tag.is_ordered() { Some(Box::new(|&x: &usize, &y: &usize| host.leq(x, y))) } else { None },
        mul: None,
        cap: MONOID_CAP,
    };
    let (g, keys) = gen.run()?;
    if keys.len() != host.size {
        return Err(Error::Precondition("the dual automaton is not generated by its initial state".into()));
    }
    let n = keys.len();
    let mut mult = vec![vec![0; n]; n];
    let mut repr = vec![FreeElement::Zero; n];
    for x in 0..n {
        repr[keys[x]] = g.repr[x].clone();
        for y in 0..n {
            mult[keys[x]][keys[y]] = keys[g.base.mul(x, y)];
        }
    }
    let base = DMonoid::new(host.clone(), mult, a.init)?;
    let gen_images = g.gen_images.iter().map(|&e| keys[e]).collect();
    Ok(GeneratedDMonoid { base, alphabet: a.alphabet, gen_images, repr })
}

/// Image of the pairing of two Σ-generated D-monoids inside their product.
pub fn subdirect_product(e1: &GeneratedDMonoid, e2: &GeneratedDMonoid) -> Result<GeneratedDMonoid> {
    if e1.tag() != e2.tag() {
        return Err(Error::TagMismatch("subdirect product of different varieties".into()));
    }
    if e1.alphabet != e2.alphabet {
        return Err(Error::Alphabet("subdirect product over different alphabets".into()));
    }
    let (c1, c2) = (&e1.base.carrier, &e2.base.carrier);
    let gen = Generator {
        tag: e1.tag(),
        alphabet: e1.alphabet.clone(),
        unit: (e1.base.unit, e2.base.unit),
        step: Box::new(|&(x, y): &(usize, usize), a| (e1.base.mul(x, e1.gen_images[a]), e2.base.mul(y, e2.gen_images[a]))),
        op: Box::new(|sym, args: &[&(usize, usize)]| {
            let l: Vec<usize> = args.iter().map(|p| p.0).collect();
            let r: Vec<usize> = args.iter().map(|p| p.1).collect();
            (c1.table(sym).apply(&l), c2.table(sym).apply(&r))
        }),
        leq: if c1.tag.is_ordered() { Some(Box::new(|x: &(usize, usize), y: &(usize, usize)| c1.leq(x.0, y.0) && c2.leq(x.1, y.1))) } else { None },
        mul: Some(Box::new(|x: &(usize, usize), y: &(usize, usize)| (e1.base.mul(x.0, y.0), e2.base.mul(x.1, y.1)))),
        cap: MONOID_CAP,
    };
    Ok(gen.run()?.0)
}

/// Projections of a subdirect product onto its factors, by representatives.
pub fn subdirect_projections(p: &GeneratedDMonoid, e1: &GeneratedDMonoid, e2: &GeneratedDMonoid) -> Result<(Vec<usize>, Vec<usize>)> {
    let a = p.repr.iter().map(|r| e1.eval(r)).collect::<Result<_>>()?;
    let b = p.repr.iter().map(|r| e2.eval(r)).collect::<Result<_>>()?;
    Ok((a, b))
}

/// Direct product of two D-monoids.
pub fn dmonoid_product(m1: &DMonoid, m2: &DMonoid) -> Result<DMonoid> {
    let (carrier, _, _) = crate::algebra::product(&m1.carrier, &m2.carrier)?;
    let n2 = m2.size();
    let mult = (0..carrier.size)
        .map(|x| (0..carrier.size).map(|y| m1.mul(x / n2, y / n2) * n2 + m2.mul(x % n2, y % n2)).collect())
        .collect();
    DMonoid::new(carrier, mult, m1.unit * n2 + m2.unit)
}

/// The image of Ψ(Σ*) in `D^{|D|^Σ}`: the free Σ-generated D-monoid of the
/// pseudovariety generated by `d`.
pub fn free_monoid_in_simple_pseudovariety(d: &DMonoid, alphabet: &[char]) -> Result<GeneratedDMonoid> {
    let k = alphabet.len();
    let n = d.size();
    let count = (n as u128).checked_pow(k as u32).filter(|&c| c <= MONOID_CAP as u128).ok_or_else(|| {
        Error::Cap(format!("|D|^|Σ| = {n}^{k} exceeds {MONOID_CAP}"))
    })? as usize;
    // u ranges over maps Σ → |D|, u(a) = digit a of u in base n
    let digit = |u: usize, a: usize| (u / n.pow(a as u32)) % n;
    let c = &d.carrier;
    let gen = Generator {
        tag: c.tag,
        alphabet: alphabet.to_vec(),
        unit: vec![d.unit; count],
        step: Box::new(|t: &Vec<usize>, a| (0..count).map(|u| d.mul(t[u], digit(u, a))).collect()),
        op: Box::new(pointwise_op(c, count)),
        leq: if c.tag.is_ordered() { Some(Box::new(pointwise_leq(c))) } else { None },
        mul: Some(Box::new(|x: &Vec<usize>, y: &Vec<usize>| x.iter().zip(y).map(|(&a, &b)| d.mul(a, b)).collect())),
        cap: MONOID_CAP,
    };
    Ok(gen.run()?.0)
}

/// The D-monoid morphism `g → target` sending each generator to the given
/// image, when one exists.
pub fn morphism_from_images(g: &GeneratedDMonoid, target: &DMonoid, images: &[usize]) -> Result<Option<Vec<usize>>> {
    if g.tag() != target.tag() {
        return Err(Error::TagMismatch("morphism between different varieties".into()));
    }
    if images.len() != g.alphabet.len() || images.iter().any(|&x| x >= target.size()) {
        return Err(Error::Invalid("one image per generator is required".into()));
    }
    let h: Vec<usize> = g.repr.iter().map(|r| target.evaluate(images, &g.alphabet, r)).collect::<Result<_>>()?;
    let on_generators = g.gen_images.iter().zip(images).all(|(&x, &y)| h[x] == y);
    Ok((on_generators && is_monoid_hom(&g.base, target, &h)).then_some(h))
}

/// Extend a partial map along operations, multiplication and the unit.
fn extend_monoid_map(m1: &DMonoid, m2: &DMonoid, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut h: Vec<Option<usize>> = vec![None; m1.size()];
    let mut known: Vec<usize> = Vec::new();
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    queue.push_back((m1.unit, m2.unit));
    let sig = m1.tag().signature();
    while let Some((x, y)) = queue.pop_front() {
        match h[x] {
            Some(z) if z == y => continue,
            Some(_) => return None,
            None => {}
        }
        h[x] = Some(y);
        known.push(x);
        for &z in &known {
            let hz = h[z].unwrap();
            queue.push_back((m1.mul(x, z), m2.mul(y, hz)));
            queue.push_back((m1.mul(z, x), m2.mul(hz, y)));
            for (sym, arity) in &sig {
                if *arity == 2 {
                    queue.push_back((m1.carrier.op2(sym, x, z), m2.carrier.op2(sym, y, hz)));
                    queue.push_back((m1.carrier.op2(sym, z, x), m2.carrier.op2(sym, hz, y)));
                }
            }
        }
        for (sym, arity) in &sig {
            match arity {
                0 => queue.push_back((m1.carrier.constant(sym), m2.carrier.constant(sym))),
                1 => queue.push_back((m1.carrier.op1(sym, x), m2.carrier.op1(sym, y))),
                _ => {}
            }
        }
    }
    h.into_iter().collect()
}

/// Greedy generating set under multiplication and the D-operations.
pub fn monoid_generators(m: &DMonoid) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; m.size()];
    let mark = |gens: &[usize], reached: &mut Vec<bool>| {
        let id = DMonoid { carrier: m.carrier.clone(), mult: m.mult.clone(), unit: m.unit };
        let pairs: Vec<(usize, usize)> = gens.iter().map(|&g| (g, g)).collect();
        // closure = domain of the identity extended from the generators
        let mut h: Vec<bool> = vec![false; m.size()];
        let mut queue: VecDeque<usize> = pairs.iter().map(|p| p.0).chain([m.unit]).collect();
        let sig = m.tag().signature();
        let mut known = Vec::new();
        while let Some(x) = queue.pop_front() {
            if h[x] {
                continue;
            }
            h[x] = true;
            known.push(x);
            for &z in &known {
                queue.push_back(id.mul(x, z));
                queue.push_back(id.mul(z, x));
                for (sym, arity) in &sig {
                    if *arity == 2 {
                        queue.push_back(m.carrier.op2(sym, x, z));
                    }
                }
            }
            for (sym, arity) in &sig {
                match arity {
                    0 => queue.push_back(m.carrier.constant(sym)),
                    1 => queue.push_back(m.carrier.op1(sym, x)),
                    _ => {}
                }
            }
        }
        *reached = h;
    };
    mark(&gens, &mut reached);
    for x in 0..m.size() {
        if !reached[x] {
            gens.push(x);
            mark(&gens, &mut reached);
        }
    }
    gens
}

/// Unit, D-operations and multiplication are preserved.
pub fn is_monoid_hom(m1: &DMonoid, m2: &DMonoid, h: &[usize]) -> bool {
    h[m1.unit] == m2.unit
        && is_hom(&m1.carrier, &m2.carrier, h).is_none()
        && (0..m1.size()).all(|x| (0..m1.size()).all(|y| h[m1.mul(x, y)] == m2.mul(h[x], h[y])))
}

/// An isomorphism of D-monoids, found by search over generator images.
pub fn find_dmonoid_iso(m1: &DMonoid, m2: &DMonoid) -> Option<Vec<usize>> {
    if m1.size() != m2.size() || m1.tag() != m2.tag() {
        return None;
    }
    let gens = monoid_generators(m1);
    // cheap invariant: whether an element is idempotent
    let idem = |m: &DMonoid, x: usize| m.mul(x, x) == x;
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&g| (0..m2.size()).filter(|&y| idem(m1, g) == idem(m2, y)).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let pairs: Vec<(usize, usize)> = gens.iter().enumerate().map(|(i, &g)| (g, candidates[i][choice[i]])).collect();
        if let Some(h) = extend_monoid_map(m1, m2, &pairs) {
            let mut inv = vec![usize::MAX; m2.size()];
            for (x, &y) in h.iter().enumerate() {
                inv[y] = x;
            }
            if inv.iter().all(|&x| x != usize::MAX) && is_monoid_hom(m1, m2, &h) && is_monoid_hom(m2, m1, &inv) {
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

/// Outcome of a bounded division search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "verdict")]
pub enum Division {
    /// The candidate is a quotient of a sub-D-monoid of `generator^n`; `lifts`
    /// are the chosen preimages of the candidate's generators.
    Yes { n: usize, lifts: Vec<Vec<usize>> },
    No,
    Inconclusive { reason: String },
}

/// Default cap on the number of lift tuples tried by [`divides`].
pub const DIVIDES_CAP: usize = 1 << 20;

/// Whether `candidate` divides a finite power of `generator`. Powers up to
/// `n_max` are searched directly; past that the answer comes from the free
/// monoid of the pseudovariety, and is inconclusive only when that is capped.
pub fn divides(candidate: &DMonoid, generator: &DMonoid, n_max: usize) -> Result<Division> {
    divides_with(candidate, &monoid_generators(candidate), generator, n_max, DIVIDES_CAP)
}

/// As [`divides`], lifting the given generators of the candidate.
pub fn divides_with(candidate: &DMonoid, cgens: &[usize], generator: &DMonoid, n_max: usize, cap: usize) -> Result<Division> {
    if let Some(v) = search_powers(candidate, cgens, generator, n_max, cap)? {
        return Ok(v);
    }
    if cgens.len() > 26 {
        return Ok(Division::Inconclusive { reason: "too many generators for the exact test".into() });
    }
    let letters: Vec<char> = (0..cgens.len()).map(|i| char::from(b'a' + i as u8)).collect();
    match free_monoid_in_simple_pseudovariety(generator, &letters) {
        Ok(free) => quotient_of_free(&free, generator, candidate, cgens),
        Err(Error::Cap(reason)) => Ok(Division::Inconclusive { reason }),
        Err(e) => Err(e),
    }
}

/// The exact test past the direct search: the candidate divides a power of
/// `D` iff it is a quotient of the free monoid of the pseudovariety, which
/// sits in `D^(|D|^g)`. `free` must be that free monoid on `cgens.len()` letters.
pub fn quotient_of_free(free: &GeneratedDMonoid, generator: &DMonoid, candidate: &DMonoid, cgens: &[usize]) -> Result<Division> {
    if free.alphabet.len() != cgens.len() {
        return Err(Error::Invalid("one free generator per candidate generator is required".into()));
    }
    let g = cgens.len();
    let d = generator.size();
    Ok(match morphism_from_images(free, candidate, cgens)? {
        Some(_) => {
            let count = d.pow(g as u32);
            let lifts = (0..g).map(|a| (0..count).map(|u| u / d.pow(a as u32) % d).collect()).collect();
            Division::Yes { n: count, lifts }
        }
        None => Division::No,
    })
}

/// Direct search in `D^n` for `n ≤ n_max`; `None` when nothing was found.
pub(crate) fn search_powers(candidate: &DMonoid, cgens: &[usize], generator: &DMonoid, n_max: usize, cap: usize) -> Result<Option<Division>> {
    if candidate.tag() != generator.tag() {
        return Err(Error::TagMismatch("division between different varieties".into()));
    }
    let d = generator;
    let c = &candidate.carrier;
    let g = cgens.len();
    for n in 1..=n_max {
        let size = (d.size() as u128).pow(n as u32);
        let combos = size.checked_pow(g as u32).unwrap_or(u128::MAX);
        if size > MONOID_CAP as u128 || combos > cap as u128 {
            return Ok(Some(Division::Inconclusive { reason: format!("{combos} lift tuples at n = {n} exceed the cap") }));
        }
        let size = size as usize;
        let decode = |t: usize| -> Vec<usize> { (0..n).map(|i| (t / d.size().pow(i as u32)) % d.size()).collect() };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &x| acc * d.size() + x) };
        let dmul = |x: usize, y: usize| -> usize {
            let (a, b) = (decode(x), decode(y));
            encode(&a.iter().zip(&b).map(|(&p, &q)| d.mul(p, q)).collect::<Vec<_>>())
        };
        let dop = |sym: &str, args: &[usize]| -> usize {
            let cols: Vec<Vec<usize>> = args.iter().map(|&t| decode(t)).collect();
            encode(&(0..n).map(|i| d.carrier.table(sym).apply(&cols.iter().map(|v| v[i]).collect::<Vec<_>>())).collect::<Vec<_>>())
        };
        let dleq = |x: usize, y: usize| decode(x).iter().zip(decode(y)).all(|(&p, q)| d.carrier.leq(p, q));
        let unit = encode(&vec![d.unit; n]);
        let sig = c.tag.signature();
        let mut choice = vec![0usize; g];
        loop {
            // close {(s_i, c_i)} inside D^n × C
            let mut graph: Vec<Option<usize>> = vec![None; size];
            let mut known: Vec<usize> = Vec::new();
            let mut queue: VecDeque<(usize, usize)> = choice.iter().zip(cgens).map(|(&s, &x)| (s, x)).collect();
            queue.push_back((unit, candidate.unit));
            for (sym, arity) in &sig {
                if *arity == 0 {
                    queue.push_back((dop(sym, &[]), c.constant(sym)));
                }
            }
            let mut functional = true;
            while let Some((s, x)) = queue.pop_front() {
                match graph[s] {
                    Some(y) if y == x => continue,
                    Some(_) => {
                        functional = false;
                        break;
                    }
                    None => {}
                }
                graph[s] = Some(x);
                known.push(s);
                for &t in &known {
                    let y = graph[t].unwrap();
                    queue.push_back((dmul(s, t), candidate.mul(x, y)));
                    queue.push_back((dmul(t, s), candidate.mul(y, x)));
                    for (sym, arity) in &sig {
                        if *arity == 2 {
                            queue.push_back((dop(sym, &[s, t]), c.op2(sym, x, y)));
                            queue.push_back((dop(sym, &[t, s]), c.op2(sym, y, x)));
                        }
                    }
                }
                for (sym, arity) in &sig {
                    if *arity == 1 {
                        queue.push_back((dop(sym, &[s]), c.op1(sym, x)));
                    }
                }
            }
            if functional {
                let monotone = !c.tag.is_ordered()
                    || known.iter().all(|&s| known.iter().all(|&t| !dleq(s, t) || c.leq(graph[s].unwrap(), graph[t].unwrap())));
                let mut hit = vec![false; candidate.size()];
                for &s in &known {
                    hit[graph[s].unwrap()] = true;
                }
                if monotone && hit.iter().all(|&b| b) {
                    return Ok(Some(Division::Yes { n, lifts: choice.iter().map(|&s| decode(s)).collect() }));
                }
            }
            let mut i = 0;
            loop {
                if i == g {
                    break;
                }
                choice[i] += 1;
                if choice[i] < size {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == g {
                break;
            }
        }
    }
    Ok(None)
}
