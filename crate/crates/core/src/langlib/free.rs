//! Elements of the free D-monoid on an alphabet and morphisms between free
//! D-monoids given by generator images.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{letters_of, shortlex, RegularLanguage};
use crate::algebra::VarietyTag;
use crate::error::{Error, Result};
use crate::gf;

/// An element of the free D-monoid: a word (SET, POS, SET_STAR), the zero of
/// SET_STAR, a finite language (JSL0) or a weighted finite language (VECT(p)).
/// Word lists are shortlex sorted; weights are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FreeDoc", into = "FreeDoc")]
pub enum FreeElement {
    Word(String),
    Zero,
    Finite(Vec<String>),
    Weighted { p: u8, terms: Vec<(String, u8)> },
}

/// `1` for the empty word, `0` for zero and empty sums, terms joined by `+`.
impl std::fmt::Display for FreeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let word = |w: &str| if w.is_empty() { "1".to_string() } else { w.to_string() };
        let terms: Vec<String> = match self {
            FreeElement::Word(w) => vec![word(w)],
            FreeElement::Zero => Vec::new(),
            FreeElement::Finite(v) => v.iter().map(|w| word(w)).collect(),
            FreeElement::Weighted { terms, .. } => {
                terms.iter().map(|(w, c)| if *c == 1 { word(w) } else { format!("{c}{w}") }).collect()
            }
        };
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FreeDoc {
    Zero,
    Word(String),
    Finite(Vec<String>),
    Weighted { p: u8, terms: Vec<(String, u8)> },
}

impl TryFrom<FreeDoc> for FreeElement {
    type Error = Error;
    fn try_from(d: FreeDoc) -> Result<Self> {
        Ok(match d {
            FreeDoc::Zero => FreeElement::Zero,
            FreeDoc::Word(w) => FreeElement::Word(w),
            FreeDoc::Finite(v) => FreeElement::finite(v),
            FreeDoc::Weighted { p, terms } => {
                gf::check_prime(p)?;
                FreeElement::weighted(p, terms)
            }
        })
    }
}

impl From<FreeElement> for FreeDoc {
    fn from(x: FreeElement) -> Self {
        match x {
            FreeElement::Zero => FreeDoc::Zero,
            FreeElement::Word(w) => FreeDoc::Word(w),
            FreeElement::Finite(v) => FreeDoc::Finite(v),
            FreeElement::Weighted { p, terms } => FreeDoc::Weighted { p, terms },
        }
    }
}

impl FreeElement {
    pub fn finite<I: IntoIterator<Item = S>, S: Into<String>>(words: I) -> Self {
        let mut v: Vec<String> = words.into_iter().map(Into::into).collect();
        v.sort_by(|a, b| shortlex(a, b));
        v.dedup();
        FreeElement::Finite(v)
    }

    pub fn weighted<I: IntoIterator<Item = (S, u8)>, S: Into<String>>(p: u8, terms: I) -> Self {
        let mut m: BTreeMap<String, u8> = BTreeMap::new();
        for (w, c) in terms {
            let e = m.entry(w.into()).or_insert(0);
            *e = gf::add(p, *e, c % p);
        }
        let mut terms: Vec<(String, u8)> = m.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_by(|a, b| shortlex(&a.0, &b.0));
        FreeElement::Weighted { p, terms }
    }

    /// The image of the word `w` in the free D-monoid of `tag`.
    pub fn word(tag: VarietyTag, w: &str) -> Result<Self> {
        Ok(match tag {
            VarietyTag::Set | VarietyTag::Pos | VarietyTag::SetStar => FreeElement::Word(w.into()),
            VarietyTag::Jsl0 => FreeElement::finite([w]),
            VarietyTag::Vect(p) => FreeElement::weighted(p, [(w, 1)]),
            t => return Err(Error::Unsupported(format!("{t} has no free D-monoid here"))),
        })
    }

    pub fn unit(tag: VarietyTag) -> Result<Self> {
        FreeElement::word(tag, "")
    }

    /// The zero element, for tags that have one.
    pub fn zero(tag: VarietyTag) -> Option<Self> {
        match tag {
            VarietyTag::SetStar => Some(FreeElement::Zero),
            VarietyTag::Jsl0 => Some(FreeElement::Finite(Vec::new())),
            VarietyTag::Vect(p) => Some(FreeElement::Weighted { p, terms: Vec::new() }),
            _ => None,
        }
    }

    pub fn fits(&self, tag: VarietyTag) -> bool {
        match self {
            FreeElement::Word(_) => matches!(tag, VarietyTag::Set | VarietyTag::Pos | VarietyTag::SetStar),
            FreeElement::Zero => tag == VarietyTag::SetStar,
            FreeElement::Finite(_) => tag == VarietyTag::Jsl0,
            FreeElement::Weighted { p, .. } => tag == VarietyTag::Vect(*p),
        }
    }

    /// The words in the support.
    pub fn words(&self) -> Vec<&str> {
        match self {
            FreeElement::Word(w) => vec![w.as_str()],
            FreeElement::Zero => Vec::new(),
            FreeElement::Finite(v) => v.iter().map(String::as_str).collect(),
            FreeElement::Weighted { terms, .. } => terms.iter().map(|t| t.0.as_str()).collect(),
        }
    }

    /// Union of finite languages.
    pub fn join(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FreeElement::Finite(x), FreeElement::Finite(y)) => Ok(FreeElement::finite(x.iter().chain(y).cloned())),
            _ => Err(Error::TagMismatch("join needs two finite languages".into())),
        }
    }

    /// Sum of weighted languages.
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FreeElement::Weighted { p, terms: x }, FreeElement::Weighted { p: q, terms: y }) if p == q => {
                Ok(FreeElement::weighted(*p, x.iter().chain(y).cloned()))
            }
            _ => Err(Error::TagMismatch("add needs two weighted languages over one field".into())),
        }
    }

    pub fn scale(&self, k: u8) -> Result<Self> {
        match self {
            FreeElement::Weighted { p, terms } => {
                Ok(FreeElement::weighted(*p, terms.iter().map(|(w, c)| (w.clone(), gf::mul(*p, *c, k % p)))))
            }
            _ => Err(Error::TagMismatch("scale needs a weighted language".into())),
        }
    }

    pub fn check_alphabet(&self, alphabet: &[char]) -> Result<()> {
        for w in self.words() {
            letters_of(alphabet, w)?;
        }
        Ok(())
    }
}

fn cat(u: &str, v: &str) -> String {
    let mut s = String::with_capacity(u.len() + v.len());
    s.push_str(u);
    s.push_str(v);
    s
}

/// Multiplication of the free D-monoid.
pub fn free_mul(x: &FreeElement, y: &FreeElement) -> Result<FreeElement> {
    use FreeElement::*;
    Ok(match (x, y) {
        (Word(u), Word(v)) => Word(cat(u, v)),
        (Zero, Word(_)) | (Word(_), Zero) | (Zero, Zero) => Zero,
        (Finite(xs), Finite(ys)) => FreeElement::finite(xs.iter().flat_map(|u| ys.iter().map(move |v| cat(u, v)))),
        (Weighted { p, terms: xs }, Weighted { p: q, terms: ys }) if p == q => FreeElement::weighted(
            *p,
            xs.iter().flat_map(|(u, c)| ys.iter().map(move |(v, d)| (cat(u, v), gf::mul(*p, *c, *d)))),
        ),
        _ => return Err(Error::TagMismatch("free elements of different D-monoids".into())),
    })
}

fn rev(w: &str) -> String {
    w.chars().rev().collect()
}

/// Reverse every word, keeping the payload structure.
pub fn rev_free(x: &FreeElement) -> FreeElement {
    match x {
        FreeElement::Word(w) => FreeElement::Word(rev(w)),
        FreeElement::Zero => FreeElement::Zero,
        FreeElement::Finite(v) => FreeElement::finite(v.iter().map(|w| rev(w))),
        FreeElement::Weighted { p, terms } => FreeElement::weighted(*p, terms.iter().map(|(w, c)| (rev(w), *c))),
    }
}

/// Value of the language, seen as a morphism into the output object, on `x`.
pub fn eval_language(l: &RegularLanguage, x: &FreeElement) -> Result<u8> {
    x.check_alphabet(l.alphabet()).map_err(|e| Error::Alphabet(e.to_string()))?;
    Ok(match x {
        FreeElement::Word(w) => l.accepts(w) as u8,
        FreeElement::Zero => 0,
        FreeElement::Finite(v) => v.iter().any(|w| l.accepts(w)) as u8,
        FreeElement::Weighted { p, terms } => {
            terms.iter().filter(|(w, _)| l.accepts(w)).fold(0, |s, (_, c)| gf::add(*p, s, *c))
        }
    })
}

/// A D-monoid morphism from the free D-monoid on `source` to the one on
/// `target`, given by the images of the letters of `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MorphismDoc", into = "MorphismDoc")]
pub struct DMonoidMorphismFree {
    pub tag: VarietyTag,
    pub source: Vec<char>,
    pub target: Vec<char>,
    pub images: Vec<FreeElement>,
}

#[derive(Serialize, Deserialize)]
struct MorphismDoc {
    tag: VarietyTag,
    source: String,
    target: String,
    images: BTreeMap<String, FreeElement>,
}

impl TryFrom<MorphismDoc> for DMonoidMorphismFree {
    type Error = Error;
    fn try_from(d: MorphismDoc) -> Result<Self> {
        let source: Vec<char> = d.source.chars().collect();
        let mut images = Vec::new();
        for c in &source {
            let img = d.images.get(&c.to_string()).ok_or_else(|| Error::Invalid(format!("no image for {c:?}")))?;
            images.push(img.clone());
        }
        if d.images.len() != source.len() {
            return Err(Error::Invalid("images for letters outside the source alphabet".into()));
        }
        DMonoidMorphismFree::new(d.tag, source, d.target.chars().collect(), images)
    }
}

impl From<DMonoidMorphismFree> for MorphismDoc {
    fn from(f: DMonoidMorphismFree) -> Self {
        MorphismDoc {
            tag: f.tag,
            source: f.source.iter().collect(),
            target: f.target.iter().collect(),
            images: f.source.iter().map(|c| c.to_string()).zip(f.images).collect(),
        }
    }
}

impl DMonoidMorphismFree {
    pub fn new(tag: VarietyTag, source: Vec<char>, target: Vec<char>, images: Vec<FreeElement>) -> Result<Self> {
        super::check_alphabet(&source)?;
        super::check_alphabet(&target)?;
        FreeElement::unit(tag)?;
        if images.len() != source.len() {
            return Err(Error::Invalid("one image per source letter is required".into()));
        }
        for x in &images {
            if !x.fits(tag) {
                return Err(Error::TagMismatch(format!("image {x:?} is not an element of the free {tag} monoid")));
            }
            x.check_alphabet(&target)?;
        }
        Ok(DMonoidMorphismFree { tag, source, target, images })
    }

    /// Letter images given as words.
    pub fn from_words(tag: VarietyTag, source: &str, target: &str, words: &[&str]) -> Result<Self> {
        let images = words.iter().map(|w| FreeElement::word(tag, w)).collect::<Result<_>>()?;
        DMonoidMorphismFree::new(tag, source.chars().collect(), target.chars().collect(), images)
    }

    pub fn identity(tag: VarietyTag, alphabet: &[char]) -> Result<Self> {
        let images = alphabet.iter().map(|c| FreeElement::word(tag, &c.to_string())).collect::<Result<_>>()?;
        DMonoidMorphismFree::new(tag, alphabet.to_vec(), alphabet.to_vec(), images)
    }

    pub fn image_of(&self, c: char) -> Result<&FreeElement> {
        let i = self.source.binary_search(&c).map_err(|_| Error::UnknownLetter(c))?;
        Ok(&self.images[i])
    }

    /// Image of a word of the source alphabet.
    pub fn apply_word(&self, w: &str) -> Result<FreeElement> {
        let mut acc = FreeElement::unit(self.tag)?;
        for c in w.chars() {
            acc = free_mul(&acc, self.image_of(c)?)?;
        }
        Ok(acc)
    }

    /// The unique D-monoid morphism extending the letter images.
    pub fn apply(&self, x: &FreeElement) -> Result<FreeElement> {
        if !x.fits(self.tag) {
            return Err(Error::TagMismatch("argument is not in the source D-monoid".into()));
        }
        match x {
            FreeElement::Word(w) => self.apply_word(w),
            FreeElement::Zero => Ok(FreeElement::Zero),
            FreeElement::Finite(v) => {
                let mut acc = FreeElement::Finite(Vec::new());
                for w in v {
                    acc = acc.join(&self.apply_word(w)?)?;
                }
                Ok(acc)
            }
            FreeElement::Weighted { p, terms } => {
                let mut acc = FreeElement::Weighted { p: *p, terms: Vec::new() };
                for (w, c) in terms {
                    acc = acc.add(&self.apply_word(w)?.scale(*c)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// `self ∘ g`, first `g` then `self`.
    pub fn after(&self, g: &DMonoidMorphismFree) -> Result<Self> {
        if g.target != self.source || g.tag != self.tag {
            return Err(Error::Alphabet("morphisms are not composable".into()));
        }
        let images = g.images.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        DMonoidMorphismFree::new(self.tag, g.source.clone(), self.target.clone(), images)
    }
}

/// The reversal conjugate `rev ∘ f ∘ rev`, which reverses each letter image.
pub fn dagger(f: &DMonoidMorphismFree) -> DMonoidMorphismFree {
    DMonoidMorphismFree { images: f.images.iter().map(rev_free).collect(), ..f.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langlib::{alphabet, parse_regex};

    #[test]
    fn free_products() {
        let x = free_mul(&FreeElement::finite(["a"]), &FreeElement::finite(["", "a"])).unwrap();
        assert_eq!(x, FreeElement::finite(["a", "aa"]));
        let y = FreeElement::weighted(2, [("", 1), ("a", 1)]);
        assert_eq!(free_mul(&y, &y).unwrap(), FreeElement::weighted(2, [("", 1), ("aa", 1)]));
        assert_eq!(free_mul(&FreeElement::Zero, &FreeElement::Word("ab".into())).unwrap(), FreeElement::Zero);
    }

    #[test]
    fn evaluation_rules() {
        let l = parse_regex("(aa)*", &alphabet("a")).unwrap();
        assert_eq!(eval_language(&l, &FreeElement::finite(["a", "aa"])).unwrap(), 1);
        assert_eq!(eval_language(&l, &FreeElement::weighted(2, [("", 1), ("aa", 1)])).unwrap(), 0);
        assert_eq!(eval_language(&l, &FreeElement::Zero).unwrap(), 0);
        assert!(eval_language(&l, &FreeElement::Word("b".into())).is_err());
    }

    #[test]
    fn reversal_and_dagger() {
        assert_eq!(rev_free(&FreeElement::finite(["ab", "a"])), FreeElement::finite(["ba", "a"]));
        let f = DMonoidMorphismFree::from_words(VarietyTag::Set, "b", "ab", &["ab"]).unwrap();
        assert_eq!(dagger(&f).images[0], FreeElement::Word("ba".into()));
        assert_eq!(dagger(&dagger(&f)), f);
    }

    #[test]
    fn multiplicative_extension() {
        let f = DMonoidMorphismFree::new(VarietyTag::Jsl0, vec!['b'], vec!['a'], vec![FreeElement::finite(["a", "aa"])]).unwrap();
        assert_eq!(f.apply_word("bb").unwrap(), FreeElement::finite(["aa", "aaa", "aaaa"]));
        let id = DMonoidMorphismFree::identity(VarietyTag::Set, &alphabet("ab")).unwrap();
        assert_eq!(id.apply_word("abba").unwrap(), FreeElement::Word("abba".into()));
    }

    #[test]
    fn documents_round_trip() {
        for x in [
            FreeElement::Zero,
            FreeElement::Word("ab".into()),
            FreeElement::finite(["b", "", "ab"]),
            FreeElement::weighted(3, [("a", 2), ("", 1)]),
        ] {
            let s = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<FreeElement>(&s).unwrap(), x, "{s}");
        }
        let f = DMonoidMorphismFree::new(VarietyTag::SetStar, vec!['c', 'd'], vec!['a', 'b'], vec![FreeElement::Zero, FreeElement::Word("ab".into())]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<DMonoidMorphismFree>(&s).unwrap(), f);
    }
}
