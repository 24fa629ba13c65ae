//! Rational power series over GF(p) as linear weighted automata.

use serde::{Deserialize, Serialize};

use super::{letters_of, DMonoidMorphismFree, FreeElement};
use crate::automata::Coalgebra;
use crate::error::{Error, Result};
use crate::gf::{self, Echelon, Matrix};

/// Largest dimension accepted by the series constructors.
pub const SERIES_DIM_BOUND: usize = 64;

/// A linear automaton: `β(w) = out · M_{a_n} ⋯ M_{a_1} · init`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub p: u8,
    pub alphabet: Vec<char>,
    pub init: Vec<u8>,
    pub mats: Vec<Matrix>,
    pub out: Vec<u8>,
}

impl RationalSeries {
    pub fn new(p: u8, alphabet: Vec<char>, init: Vec<u8>, mats: Vec<Matrix>, out: Vec<u8>) -> Result<Self> {
        gf::check_prime(p)?;
        super::check_alphabet(&alphabet)?;
        let n = init.len();
        if n > SERIES_DIM_BOUND {
            return Err(Error::Bound(format!("series dimension {n} exceeds {SERIES_DIM_BOUND}")));
        }
        let square = |m: &Matrix| m.len() == n && m.iter().all(|r| r.len() == n && r.iter().all(|&x| x < p));
        if out.len() != n || mats.len() != alphabet.len() || !mats.iter().all(square) || init.iter().chain(&out).any(|&x| x >= p) {
            return Err(Error::Structural("series dimensions are inconsistent".into()));
        }
        Ok(RationalSeries { p, alphabet, init, mats, out })
    }

    pub fn dim(&self) -> usize {
        self.init.len()
    }

    /// State vector after reading `w`.
    pub fn state_after(&self, w: &str) -> Result<Vec<u8>> {
        let mut v = self.init.clone();
        for a in letters_of(&self.alphabet, w)? {
            v = gf::mat_vec(self.p, &self.mats[a], &v);
        }
        Ok(v)
    }

    pub fn value(&self, w: &str) -> Result<u8> {
        Ok(gf::dot(self.p, &self.out, &self.state_after(w)?))
    }

    /// Minimal equivalent automaton: restrict to the reachable span, then
    /// quotient by the unobservable subspace.
    pub fn minimize(&self) -> RationalSeries {
        let p = self.p;
        // reachability: basis of span{M_w init}
        let mut ech = Echelon::new(p);
        let mut basis: Vec<Vec<u8>> = Vec::new();
        let mut queue = vec![self.init.clone()];
        while let Some(v) = queue.pop() {
            if ech.insert(&v) {
                for m in &self.mats {
                    queue.push(gf::mat_vec(p, m, &v));
                }
                basis.push(v);
            }
        }
        let coords = |vs: &[Vec<u8>], v: &[u8]| gf::solve_combination(p, vs, v).expect("vector lies in the span");
        let r = basis.len();
        let init1 = coords(&basis, &self.init);
        let mats1: Vec<Matrix> = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vec<u8>> = basis.iter().map(|b| coords(&basis, &gf::mat_vec(p, m, b))).collect();
                (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect()
            })
            .collect();
        let out1: Vec<u8> = basis.iter().map(|b| gf::dot(p, &self.out, b)).collect();
        // observability: basis of span{out M_w} as row vectors
        let row_times = |u: &[u8], m: &Matrix| -> Vec<u8> {
            (0..r).map(|j| (0..r).fold(0, |s, i| gf::add(p, s, gf::mul(p, u[i], m[i][j])))).collect()
        };
        let mut ech = Echelon::new(p);
        let mut obs: Vec<Vec<u8>> = Vec::new();
        let mut queue = vec![out1.clone()];
        while let Some(u) = queue.pop() {
            if ech.insert(&u) {
                for m in &mats1 {
                    queue.push(row_times(&u, m));
                }
                obs.push(u);
            }
        }
        let init2: Vec<u8> = obs.iter().map(|o| gf::dot(p, o, &init1)).collect();
        let mats2: Vec<Matrix> = mats1.iter().map(|m| obs.iter().map(|o| coords(&obs, &row_times(o, m))).collect()).collect();
        let out2 = coords(&obs, &out1);
        RationalSeries { p, alphabet: self.alphabet.clone(), init: init2, mats: mats2, out: out2 }
    }

    /// Transition matrix of a word.
    pub fn word_matrix(&self, w: &str) -> Result<Matrix> {
        let mut m = gf::identity(self.dim());
        for a in letters_of(&self.alphabet, w)? {
            m = gf::mat_mul(self.p, &self.mats[a], &m);
        }
        Ok(m)
    }
}

/// `β′(w) = Σ_v f(w)(v)·β(v)`, by replacing each letter matrix with the
/// weighted sum of the word matrices of its image.
pub fn series_preimage(beta: &RationalSeries, f: &DMonoidMorphismFree) -> Result<RationalSeries> {
    let p = beta.p;
    if f.target != beta.alphabet {
        return Err(Error::Alphabet("the morphism does not target the series' alphabet".into()));
    }
    let n = beta.dim();
    let mut mats = Vec::new();
    for x in &f.images {
        let terms: Vec<(String, u8)> = match x {
            FreeElement::Weighted { p: q, terms } if *q == p => terms.clone(),
            FreeElement::Word(w) => vec![(w.clone(), 1)],
            _ => return Err(Error::TagMismatch(format!("image {x:?} is not a GF({p}) combination of words"))),
        };
        let mut m = gf::zero_matrix(n, n);
        for (w, c) in terms {
            m = gf::mat_add(p, &m, &gf::mat_scale(p, c, &beta.word_matrix(&w)?));
        }
        mats.push(m);
    }
    RationalSeries::new(p, f.source.clone(), beta.init.clone(), mats, beta.out.clone())
}

/// The series accepted by a state of a VECT(p) coalgebra, in the coordinates
/// of the state space's fixed basis.
pub fn series_of_coalgebra(q: &Coalgebra, state: usize) -> Result<RationalSeries> {
    let p = q.states.prime().ok_or_else(|| Error::TagMismatch("series need a vector space coalgebra".into()))?;
    let basis = q.states.vect_basis();
    let coords = q.states.coordinates();
    let d = basis.len();
    let mats = q
        .trans
        .iter()
        .map(|t| {
            let cols: Vec<&Vec<u8>> = basis.iter().map(|&b| &coords[t[b]]).collect();
            (0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect()
        })
        .collect();
    let out = basis.iter().map(|&b| q.out[b] as u8).collect();
    RationalSeries::new(p, q.alphabet.clone(), coords[state].clone(), mats, out)
}
