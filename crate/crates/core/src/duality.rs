//! Dual equivalences between finite algebras of the predual pairs.
//!
//! Objects and morphisms are dualized by the explicit formulas: atoms for
//! BA, join-irreducibles for DL01, the opposite semilattice for JSL0, the dual
//! space for VECT(p), atoms plus a basepoint for BR, and removal of the top
//! followed by order reversal for JSL01.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    enumerate_up_to, extend_pairs_total, homs, is_hom, validate_algebra, AlgMorphism, FinAlgebra,
    VarietyTag,
};
use crate::error::{Error, Result};
use crate::gf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PairTag {
    Ba,
    Dl01,
    Jsl0,
    Vect(u8),
    Br,
    Jsl01,
}

impl PairTag {
    /// The five pairs wired into the automata pipeline (VECT over GF(2)).
    pub const MAIN: [PairTag; 5] = [PairTag::Ba, PairTag::Dl01, PairTag::Jsl0, PairTag::Vect(2), PairTag::Br];

    pub fn c_tag(self) -> VarietyTag {
        match self {
            PairTag::Ba => VarietyTag::Ba,
            PairTag::Dl01 => VarietyTag::Dl01,
            PairTag::Jsl0 => VarietyTag::Jsl0,
            PairTag::Vect(p) => VarietyTag::Vect(p),
            PairTag::Br => VarietyTag::Br,
            PairTag::Jsl01 => VarietyTag::Jsl01,
        }
    }

    pub fn d_tag(self) -> VarietyTag {
        match self {
            PairTag::Ba => VarietyTag::Set,
            PairTag::Dl01 => VarietyTag::Pos,
            PairTag::Jsl0 => VarietyTag::Jsl0,
            PairTag::Vect(p) => VarietyTag::Vect(p),
            PairTag::Br => VarietyTag::SetStar,
            PairTag::Jsl01 => VarietyTag::Jsl,
        }
    }

    /// The pair whose D side is `tag`.
    pub fn from_d_tag(tag: VarietyTag) -> Result<PairTag> {
        match tag {
            VarietyTag::Set => Ok(PairTag::Ba),
            VarietyTag::Pos => Ok(PairTag::Dl01),
            VarietyTag::Jsl0 => Ok(PairTag::Jsl0),
            VarietyTag::Vect(p) => Ok(PairTag::Vect(p)),
            VarietyTag::SetStar => Ok(PairTag::Br),
            VarietyTag::Jsl => Ok(PairTag::Jsl01),
            t => Err(Error::Unsupported(format!("{t} is not the D side of a pair"))),
        }
    }

    /// The pair whose C side is `tag`.
    pub fn from_c_tag(tag: VarietyTag) -> Result<PairTag> {
        match tag {
            VarietyTag::Ba => Ok(PairTag::Ba),
            VarietyTag::Dl01 => Ok(PairTag::Dl01),
            VarietyTag::Jsl0 => Ok(PairTag::Jsl0),
            VarietyTag::Vect(p) => Ok(PairTag::Vect(p)),
            VarietyTag::Br => Ok(PairTag::Br),
            VarietyTag::Jsl01 => Ok(PairTag::Jsl01),
            t => Err(Error::Unsupported(format!("{t} is not the C side of a pair"))),
        }
    }

    pub fn is_self_dual(self) -> bool {
        self.c_tag() == self.d_tag()
    }
}

impl fmt::Display for PairTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c_tag())
    }
}

impl FromStr for PairTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let head = s.split(['↔', '-', '/']).next().unwrap_or(s).trim();
        PairTag::from_c_tag(head.parse()?)
    }
}

impl TryFrom<String> for PairTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PairTag> for String {
    fn from(p: PairTag) -> String {
        p.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    FromC,
    FromD,
}

fn direction(pair: PairTag, tag: VarietyTag) -> Result<Dir> {
    if tag == pair.c_tag() {
        Ok(Dir::FromC)
    } else if tag == pair.d_tag() {
        Ok(Dir::FromD)
    } else {
        Err(Error::TagMismatch(format!("{tag} does not belong to the pair {pair}")))
    }
}

fn position(list: &[usize], x: usize) -> Result<usize> {
    list.iter()
        .position(|&y| y == x)
        .ok_or_else(|| Error::Invalid("dual formula left the dual carrier".into()))
}

fn nonbase(a: &FinAlgebra) -> Vec<usize> {
    let p = a.point();
    (0..a.size).filter(|&x| x != p).collect()
}

/// The dual of a finite algebra on either side of `pair`.
pub fn dual_object(pair: PairTag, q: &FinAlgebra) -> Result<FinAlgebra> {
    let dir = direction(pair, q.tag)?;
    if !validate_algebra(q)?.is_empty() {
        return Err(Error::Invalid(format!("input is not a valid {} algebra", q.tag)));
    }
    Ok(dual_object_unchecked(pair, dir, q))
}

fn dual_object_unchecked(pair: PairTag, dir: Dir, q: &FinAlgebra) -> FinAlgebra {
    match (pair, dir) {
        (PairTag::Ba, Dir::FromC) => FinAlgebra::set(q.atoms().len()),
        (PairTag::Ba, Dir::FromD) => FinAlgebra::powerset_ba(q.size),
        (PairTag::Dl01, Dir::FromC) => {
            let j = q.join_irreducibles();
            FinAlgebra::poset(j.iter().map(|&x| j.iter().map(|&y| q.leq(x, y)).collect()).collect())
        }
        (PairTag::Dl01, Dir::FromD) => FinAlgebra::downset_lattice(q.size, |x, y| q.leq(x, y)).0,
        (PairTag::Jsl0, _) => {
            let top = q.top().expect("finite JSL0 has a top");
            FinAlgebra::build(VarietyTag::Jsl0, q.size, |s, a| {
                if s == "join" {
                    q.meet(a[0], a[1]).expect("finite JSL0 is a lattice")
                } else {
                    top
                }
            })
        }
        (PairTag::Vect(p), _) => FinAlgebra::vect_space(p, q.vect_basis().len()),
        (PairTag::Br, Dir::FromC) => FinAlgebra::pointed(q.atoms().len() + 1, 0),
        (PairTag::Br, Dir::FromD) => FinAlgebra::powerset_br(q.size - 1),
        (PairTag::Jsl01, Dir::FromC) => {
            let top = q.constant("top");
            let elems: Vec<usize> = (0..q.size).filter(|&x| x != top).collect();
            FinAlgebra::build(VarietyTag::Jsl, elems.len(), |_, a| {
                let m = q.meet(elems[a[0]], elems[a[1]]).expect("lattice");
                elems.iter().position(|&y| y == m).expect("meet of non-top elements is non-top")
            })
        }
        (PairTag::Jsl01, Dir::FromD) => {
            let m = q.size;
            let new = m;
            // meet in P with a fresh bottom adjoined
            let meet_bot = |x: usize, y: usize| -> usize {
                if x == new || y == new {
                    return new;
                }
                q.meet(x, y).unwrap_or(new)
            };
            let bot = if m == 0 { new } else { q.top().expect("nonempty finite JSL has a top") };
            FinAlgebra::build(VarietyTag::Jsl01, m + 1, |s, a| match s {
                "join" => meet_bot(a[0], a[1]),
                "bot" => bot,
                _ => new,
            })
        }
    }
}

/// Table of the dual of `h: src → dst`, a map `dual(dst) → dual(src)`.
fn dual_table(pair: PairTag, dir: Dir, src: &FinAlgebra, dst: &FinAlgebra, h: &[usize]) -> Result<Vec<usize>> {
    match (pair, dir) {
        (PairTag::Ba, Dir::FromC) | (PairTag::Dl01, Dir::FromC) => {
            let (qs, rs) = if pair == PairTag::Ba {
                (src.atoms(), dst.atoms())
            } else {
                (src.join_irreducibles(), dst.join_irreducibles())
            };
            rs.iter()
                .map(|&r| {
                    let m = src
                        .meet_all((0..src.size).filter(|&q| dst.leq(r, h[q])))
                        .expect("lattice");
                    position(&qs, m)
                })
                .collect()
        }
        (PairTag::Ba, Dir::FromD) => Ok((0..1usize << dst.size)
            .map(|s| (0..src.size).filter(|&x| s >> h[x] & 1 == 1).fold(0, |m, x| m | 1 << x))
            .collect()),
        (PairTag::Dl01, Dir::FromD) => {
            let (_, src_masks) = FinAlgebra::downset_lattice(src.size, |x, y| src.leq(x, y));
            let (_, dst_masks) = FinAlgebra::downset_lattice(dst.size, |x, y| dst.leq(x, y));
            dst_masks
                .iter()
                .map(|&s| {
                    let pre = (0..src.size).filter(|&x| s >> h[x] & 1 == 1).fold(0u64, |m, x| m | 1 << x);
                    position(&src_masks.iter().map(|&m| m as usize).collect::<Vec<_>>(), pre as usize)
                })
                .collect()
        }
        (PairTag::Jsl0, _) => Ok((0..dst.size)
            .map(|r| src.join_all((0..src.size).filter(|&q| dst.leq(h[q], r))).expect("bottom"))
            .collect()),
        (PairTag::Vect(p), _) => {
            let sb = src.vect_basis();
            let dc = dst.coordinates();
            let dd = dst.vect_basis().len();
            Ok((0..(p as usize).pow(dd as u32))
                .map(|u| {
                    let u = gf::decode(p, dd, u);
                    let img: Vec<u8> = sb.iter().map(|&b| gf::dot(p, &u, &dc[h[b]])).collect();
                    gf::encode(p, &img)
                })
                .collect())
        }
        (PairTag::Br, Dir::FromC) => {
            let qs = src.atoms();
            let mut out = vec![0];
            for &r in &dst.atoms() {
                let above: Vec<usize> = (0..src.size).filter(|&q| dst.leq(r, h[q])).collect();
                if above.is_empty() {
                    out.push(0);
                } else {
                    let m = src.meet_all(above).expect("ring meet");
                    out.push(1 + position(&qs, m)?);
                }
            }
            Ok(out)
        }
        (PairTag::Br, Dir::FromD) => {
            let (sn, dn) = (nonbase(src), nonbase(dst));
            Ok((0..1usize << dn.len())
                .map(|s| {
                    sn.iter()
                        .enumerate()
                        .filter(|&(_, &x)| dn.iter().position(|&y| y == h[x]).is_some_and(|j| s >> j & 1 == 1))
                        .fold(0, |m, (i, _)| m | 1 << i)
                })
                .collect())
        }
        (PairTag::Jsl01, Dir::FromC) => {
            let (st, dt) = (src.constant("top"), dst.constant("top"));
            let qs: Vec<usize> = (0..src.size).filter(|&x| x != st).collect();
            (0..dst.size)
                .filter(|&r| r != dt)
                .map(|r| {
                    let j = src.join_all((0..src.size).filter(|&q| dst.leq(h[q], r))).expect("bottom");
                    position(&qs, j)
                })
                .collect()
        }
        (PairTag::Jsl01, Dir::FromD) => {
            // k(y) = ⋁ {x ∈ P⊥ : g⊥(x) ≤ y} in P⊥, with ⊥ the adjoined element
            let (m, m2) = (src.size, dst.size);
            let leq_bot = |x: usize, y: usize| x == m2 || (y != m2 && dst.leq(x, y));
            Ok((0..=m2)
                .map(|y| {
                    let xs: Vec<usize> = (0..m).filter(|&x| leq_bot(h[x], y)).collect();
                    if xs.is_empty() {
                        m
                    } else {
                        src.join_all(xs).unwrap()
                    }
                })
                .collect())
        }
    }
}

/// The contravariant dual of a morphism.
pub fn dual_morphism(pair: PairTag, h: &AlgMorphism) -> Result<AlgMorphism> {
    let dir = direction(pair, h.source.tag)?;
    if h.source.tag != h.target.tag {
        return Err(Error::TagMismatch("morphism crosses tags".into()));
    }
    let src_dual = dual_object(pair, &h.source)?;
    let dst_dual = dual_object(pair, &h.target)?;
    let map = dual_table(pair, dir, &h.source, &h.target, &h.map)?;
    Ok(AlgMorphism::new(dst_dual, src_dual, map))
}

/// Raw dual table for callers that already hold validated algebras.
pub(crate) fn dual_map(pair: PairTag, src: &FinAlgebra, dst: &FinAlgebra, h: &[usize]) -> Result<Vec<usize>> {
    dual_table(pair, direction(pair, src.tag)?, src, dst, h)
}

pub(crate) fn dual_obj(pair: PairTag, q: &FinAlgebra) -> Result<FinAlgebra> {
    Ok(dual_object_unchecked(pair, direction(pair, q.tag)?, q))
}

/// The canonical isomorphism `q → dual(dual(q))`.
pub fn double_dual_iso(pair: PairTag, q: &FinAlgebra) -> Result<Vec<usize>> {
    let dir = direction(pair, q.tag)?;
    Ok(match (pair, dir) {
        (PairTag::Ba, Dir::FromC) | (PairTag::Br, Dir::FromC) => {
            let atoms = q.atoms();
            (0..q.size)
                .map(|x| atoms.iter().enumerate().filter(|&(_, &a)| q.leq(a, x)).fold(0, |m, (i, _)| m | 1 << i))
                .collect()
        }
        (PairTag::Ba, Dir::FromD) => (0..q.size).collect(),
        (PairTag::Br, Dir::FromD) => {
            let nb = nonbase(q);
            (0..q.size).map(|x| nb.iter().position(|&y| y == x).map_or(0, |i| i + 1)).collect()
        }
        (PairTag::Dl01, Dir::FromC) => {
            let j = q.join_irreducibles();
            let (_, masks) = FinAlgebra::downset_lattice(j.len(), |a, b| q.leq(j[a], j[b]));
            (0..q.size)
                .map(|x| {
                    let m = j.iter().enumerate().filter(|&(_, &y)| q.leq(y, x)).fold(0u64, |m, (i, _)| m | 1 << i);
                    masks.binary_search(&m).expect("down-set")
                })
                .collect()
        }
        (PairTag::Dl01, Dir::FromD) => {
            let (lat, masks) = FinAlgebra::downset_lattice(q.size, |a, b| q.leq(a, b));
            let j = lat.join_irreducibles();
            (0..q.size)
                .map(|x| {
                    let principal = (0..q.size).filter(|&y| q.leq(y, x)).fold(0u64, |m, y| m | 1 << y);
                    let idx = masks.binary_search(&principal).expect("principal down-set");
                    position(&j, idx).expect("principal down-sets are join-irreducible")
                })
                .collect()
        }
        (PairTag::Jsl0, _) | (PairTag::Jsl01, Dir::FromD) => (0..q.size).collect(),
        (PairTag::Vect(p), _) => q.coordinates().iter().map(|c| gf::encode(p, c)).collect(),
        (PairTag::Jsl01, Dir::FromC) => {
            let top = q.constant("top");
            let m = q.size - 1;
            let mut k = 0;
            (0..q.size)
                .map(|x| {
                    if x == top {
                        m
                    } else {
                        k += 1;
                        k - 1
                    }
                })
                .collect()
        }
    })
}

/// Fixed constants of a pair. Carrier indices of `o_c` and `o_d` equal the
/// labels 0 and 1 under which the two underlying sets are identified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsBundle {
    pub pair: PairTag,
    pub one_c: FinAlgebra,
    pub one_c_gen: usize,
    pub o_c: FinAlgebra,
    pub one_d: FinAlgebra,
    pub one_d_gen: usize,
    pub o_d: FinAlgebra,
    /// Isomorphism `dual(o_c) → one_d`.
    pub i: Vec<usize>,
    /// Isomorphism `dual(one_c) → o_d`.
    pub o_d_ident: Vec<usize>,
}

impl ConstantsBundle {
    pub const ONE: usize = 1;
}

pub fn canonical_constants(pair: PairTag) -> Result<ConstantsBundle> {
    let two_chain = |t| FinAlgebra::chain(t, 2).expect("chain");
    let b = match pair {
        PairTag::Ba => ConstantsBundle {
            pair,
            // ⊥, 1 (the generator), 0 (its complement), ⊤
            one_c: FinAlgebra::powerset_ba(2),
            one_c_gen: 1,
            o_c: FinAlgebra::powerset_ba(1),
            one_d: FinAlgebra::set(1),
            one_d_gen: 0,
            o_d: FinAlgebra::set(2),
            i: vec![0],
            o_d_ident: vec![1, 0],
        },
        PairTag::Dl01 => ConstantsBundle {
            pair,
            // ⊥ < 1 < 0
            one_c: FinAlgebra::chain(VarietyTag::Dl01, 3)?,
            one_c_gen: 1,
            o_c: two_chain(VarietyTag::Dl01),
            one_d: FinAlgebra::discrete_poset(1),
            one_d_gen: 0,
            // 1 < 0: the element 0 is the top
            o_d: FinAlgebra::poset(vec![vec![true, false], vec![true, true]]),
            i: vec![0],
            o_d_ident: vec![1, 0],
        },
        PairTag::Jsl0 => ConstantsBundle {
            pair,
            one_c: two_chain(VarietyTag::Jsl0),
            one_c_gen: 1,
            o_c: two_chain(VarietyTag::Jsl0),
            one_d: two_chain(VarietyTag::Jsl0),
            one_d_gen: 1,
            o_d: two_chain(VarietyTag::Jsl0),
            i: vec![1, 0],
            o_d_ident: vec![1, 0],
        },
        PairTag::Vect(p) => {
            gf::check_prime(p)?;
            let line = FinAlgebra::vect_space(p, 1);
            ConstantsBundle {
                pair,
                one_c: line.clone(),
                one_c_gen: 1,
                o_c: line.clone(),
                one_d: line.clone(),
                one_d_gen: 1,
                o_d: line,
                i: (0..p as usize).collect(),
                o_d_ident: (0..p as usize).collect(),
            }
        }
        PairTag::Br => ConstantsBundle {
            pair,
            one_c: FinAlgebra::powerset_br(1),
            one_c_gen: 1,
            o_c: FinAlgebra::powerset_br(1),
            one_d: FinAlgebra::pointed(2, 0),
            one_d_gen: 1,
            o_d: FinAlgebra::pointed(2, 0),
            i: vec![0, 1],
            o_d_ident: vec![0, 1],
        },
        PairTag::Jsl01 => {
            return Err(Error::Unsupported("the JSL01/JSL pair is not wired into automata".into()))
        }
    };
    Ok(b)
}

/// The morphism out of a one-generated free algebra sending the generator to `x`.
pub(crate) fn from_generator(free: &FinAlgebra, gen: usize, target: &FinAlgebra, x: usize) -> Vec<usize> {
    extend_pairs_total(free, target, &[(gen, x)]).expect("free algebra on one generator")
}

/// Output morphism `dual(q) → O_D` dual to the selector of `state`.
pub fn state_output(pair: PairTag, q: &FinAlgebra, state: usize) -> Result<Vec<usize>> {
    let k = canonical_constants(pair)?;
    let sel = from_generator(&k.one_c, k.one_c_gen, q, state);
    let d = dual_map(pair, &k.one_c, q, &sel)?;
    Ok(d.iter().map(|&x| k.o_d_ident[x]).collect())
}

/// The element of `dual(q)` selected by the dual of an output morphism `q → O_C`.
pub fn init_from_out(pair: PairTag, q: &FinAlgebra, out: &[usize]) -> Result<usize> {
    let k = canonical_constants(pair)?;
    let d = dual_map(pair, q, &k.o_c, out)?;
    let pre = k.i.iter().position(|&y| y == k.one_d_gen).expect("iso");
    Ok(d[pre])
}

/// The output morphism `dual(a) → O_C` dual to the initial-state selector of `a`.
pub fn out_from_init(pair: PairTag, a: &FinAlgebra, init: usize) -> Result<Vec<usize>> {
    let k = canonical_constants(pair)?;
    let sel = from_generator(&k.one_d, k.one_d_gen, a, init);
    let d_sel = dual_map(pair, &k.one_d, a, &sel)?; // dual(a) → dual(1_D)
    let o_c_dual = dual_obj(pair, &k.o_c)?;
    let i_dual = dual_map(pair, &o_c_dual, &k.one_d, &k.i)?; // dual(1_D) → dual(dual(O_C))
    let dd = double_dual_iso(pair, &k.o_c)?;
    let mut dd_inv = vec![0; dd.len()];
    for (x, &y) in dd.iter().enumerate() {
        dd_inv[y] = x;
    }
    Ok(d_sel.iter().map(|&x| dd_inv[i_dual[x]]).collect())
}

/// One failed law with a description of its minimal witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredualityReport {
    pub objects: usize,
    pub morphisms: usize,
    pub compositions: usize,
    /// (|Q|, |R|, |Hom(Q,R)|, |Hom(dual R, dual Q)|)
    pub hom_counts: Vec<(usize, usize, usize, usize)>,
    pub failures: Vec<LawFailure>,
}

impl PredualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Size bound of the C-side objects used by `verify_preduality`.
fn check_bound(pair: PairTag, n: usize) -> Result<()> {
    let limit = match pair {
        PairTag::Ba | PairTag::Br => 16,
        PairTag::Vect(p) => (p as usize).pow(3),
        _ => 6,
    };
    if n > limit {
        return Err(Error::Bound(format!("{pair} duality checks are limited to size {limit}")));
    }
    Ok(())
}

/// Exhaustively check the dual equivalence on all objects of size at most `n`.
pub fn verify_preduality(pair: PairTag, n: usize) -> Result<PredualityReport> {
    verify_preduality_with_fault(pair, n, &|_, _, _| {})
}

/// As [`verify_preduality`], with `fault` applied to every computed dual table.
pub fn verify_preduality_with_fault(
    pair: PairTag,
    n: usize,
    fault: &dyn Fn(&FinAlgebra, &FinAlgebra, &mut Vec<usize>),
) -> Result<PredualityReport> {
    check_bound(pair, n)?;
    let mut report = PredualityReport::default();
    let c_objs = enumerate_up_to(pair.c_tag(), n)?;
    let mut sides = vec![c_objs.clone()];
    if !pair.is_self_dual() {
        let d_objs: Vec<FinAlgebra> = enumerate_up_to(pair.d_tag(), n.min(6))?
            .into_iter()
            .filter(|d| dual_obj(pair, d).map_or(false, |c| c.size <= n))
            .collect();
        sides.push(d_objs);
    }
    for objs in &sides {
        check_side(pair, objs, fault, &mut report)?;
    }
    Ok(report)
}

fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&x| second[x]).collect()
}

fn check_side(
    pair: PairTag,
    objs: &[FinAlgebra],
    fault: &dyn Fn(&FinAlgebra, &FinAlgebra, &mut Vec<usize>),
    report: &mut PredualityReport,
) -> Result<()> {
    let duals: Vec<FinAlgebra> = objs.iter().map(|q| dual_obj(pair, q)).collect::<Result<_>>()?;
    let dds: Vec<Vec<usize>> = objs.iter().map(|q| double_dual_iso(pair, q)).collect::<Result<_>>()?;
    let ddobjs: Vec<FinAlgebra> = duals.iter().map(|d| dual_obj(pair, d)).collect::<Result<_>>()?;
    let fail = |report: &mut PredualityReport, law: &str, witness: String| {
        report.failures.push(LawFailure { law: law.into(), witness });
    };
    report.objects += objs.len();
    for (i, q) in objs.iter().enumerate() {
        if !validate_algebra(&duals[i])?.is_empty() {
            fail(report, "dual object is valid", format!("object #{i} of size {}", q.size));
        }
        let dd = &dds[i];
        let bijective = dd.len() == ddobjs[i].size && {
            let mut s = dd.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == dd.len()
        };
        let mut inv = vec![0; dd.len()];
        for (x, &y) in dd.iter().enumerate() {
            if y < inv.len() {
                inv[y] = x;
            }
        }
        if !bijective || is_hom(q, &ddobjs[i], dd).is_some() || is_hom(&ddobjs[i], q, &inv).is_some() {
            fail(report, "double dual isomorphism", format!("object #{i} of size {}", q.size));
        }
    }
    // dual tables for every morphism, keyed by (source, target, table)
    let mut hom_sets: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); objs.len()]; objs.len()];
    let mut dual_of: HashMap<(usize, usize, Vec<usize>), Vec<usize>> = HashMap::new();
    for (i, q) in objs.iter().enumerate() {
        for (j, r) in objs.iter().enumerate() {
            let hs = homs(q, r);
            let back = homs(&duals[j], &duals[i]);
            report.hom_counts.push((q.size, r.size, hs.len(), back.len()));
            if hs.len() != back.len() {
                fail(
                    report,
                    "hom-set bijection",
                    format!("|Hom| = {} but |Hom of duals| = {} for sizes {} → {}", hs.len(), back.len(), q.size, r.size),
                );
            }
            let mut images = std::collections::BTreeSet::new();
            for h in &hs {
                report.morphisms += 1;
                let mut d = dual_map(pair, q, r, h)?;
                fault(q, r, &mut d);
                let valid = d.len() == duals[j].size && d.iter().all(|&x| x < duals[i].size);
                if !valid || is_hom(&duals[j], &duals[i], &d).is_some() {
                    fail(report, "dual morphism is a morphism", format!("h = {h:?} between sizes {} → {}", q.size, r.size));
                    continue;
                }
                images.insert(d.clone());
                // naturality of the double dual: dd_R ∘ h = dual(dual h) ∘ dd_Q
                let ddh = dual_map(pair, &duals[j], &duals[i], &d)?;
                if compose(h, &dds[j]) != compose(&dds[i], &ddh) {
                    fail(report, "double dual naturality", format!("h = {h:?} between sizes {} → {}", q.size, r.size));
                }
                if i == j && h.iter().enumerate().all(|(x, &y)| x == y) && d.iter().enumerate().any(|(x, &y)| x != y) {
                    fail(report, "dual of identity is identity", format!("object of size {}", q.size));
                }
                dual_of.insert((i, j, h.clone()), d);
            }
            if images.len() != hs.len() {
                fail(report, "faithfulness", format!("two morphisms {} → {} share a dual", q.size, r.size));
            }
            hom_sets[i][j] = hs;
        }
    }
    for i in 0..objs.len() {
        for j in 0..objs.len() {
            for k in 0..objs.len() {
                for h in &hom_sets[i][j] {
                    let Some(dh) = dual_of.get(&(i, j, h.clone())) else { continue };
                    for g in &hom_sets[j][k] {
                        let Some(dg) = dual_of.get(&(j, k, g.clone())) else { continue };
                        report.compositions += 1;
                        let gh = compose(h, g);
                        let Some(dgh) = dual_of.get(&(i, k, gh)) else { continue };
                        if *dgh != compose(dg, dh) {
                            fail(
                                report,
                                "contravariant functoriality",
                                format!("h = {h:?}, g = {g:?} on sizes {} → {} → {}", objs[i].size, objs[j].size, objs[k].size),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_morphism;

    #[test]
    fn four_element_ba_has_two_atoms() {
        let d = dual_object(PairTag::Ba, &FinAlgebra::powerset_ba(2)).unwrap();
        assert_eq!((d.tag, d.size), (VarietyTag::Set, 2));
    }

    #[test]
    fn jsl0_chain_dualizes_to_the_reversed_chain() {
        let c = FinAlgebra::chain(VarietyTag::Jsl0, 2).unwrap();
        let d = dual_object(PairTag::Jsl0, &c).unwrap();
        assert!(d.leq(1, 0) && !d.leq(0, 1));
    }

    #[test]
    fn four_element_ring_dualizes_to_three_points() {
        let d = dual_object(PairTag::Br, &FinAlgebra::powerset_br(2)).unwrap();
        assert_eq!((d.tag, d.size, d.point()), (VarietyTag::SetStar, 3, 0));
    }

    #[test]
    fn identity_dualizes_to_identity() {
        for (pair, a) in [
            (PairTag::Ba, FinAlgebra::powerset_ba(3)),
            (PairTag::Jsl0, FinAlgebra::chain(VarietyTag::Jsl0, 4).unwrap()),
            (PairTag::Vect(3), FinAlgebra::vect_space(3, 2)),
        ] {
            let d = dual_morphism(pair, &AlgMorphism::identity(&a)).unwrap();
            assert!(d.map.iter().enumerate().all(|(x, &y)| x == y));
        }
    }

    #[test]
    fn ba_inclusion_sends_both_atoms_to_the_unique_atom() {
        let h = AlgMorphism::new(FinAlgebra::powerset_ba(1), FinAlgebra::powerset_ba(2), vec![0, 3]);
        assert!(check_morphism(&h).unwrap().is_none());
        assert_eq!(dual_morphism(PairTag::Ba, &h).unwrap().map, vec![0, 0]);
    }

    #[test]
    fn br_dual_uses_the_basepoint_branch() {
        // ring {0, a, b, 1} as masks {0, 1, 2, 3}; h(a) = 1, h(b) = 0
        let h = AlgMorphism::new(FinAlgebra::powerset_br(2), FinAlgebra::powerset_br(1), vec![0, 1, 0, 1]);
        assert!(check_morphism(&h).unwrap().is_none());
        let d = dual_morphism(PairTag::Br, &h).unwrap();
        // ⋆ ↦ ⋆ and the atom 1 ↦ a (the first atom, index 1)
        assert_eq!(d.map, vec![0, 1]);
    }

    #[test]
    fn constants_identify_zero_and_one() {
        for pair in PairTag::MAIN {
            let k = canonical_constants(pair).unwrap();
            let one_c_dual = dual_obj(pair, &k.one_c).unwrap();
            assert!(crate::algebra::find_isomorphism(&one_c_dual, &k.o_d).is_some());
            for c in 0..2 {
                let s = from_generator(&k.one_c, k.one_c_gen, &k.o_c, c);
                let d = dual_map(pair, &k.one_c, &k.o_c, &s).unwrap();
                let pre = k.i.iter().position(|&y| y == k.one_d_gen).unwrap();
                assert_eq!(k.o_d_ident[d[pre]], c, "{pair} label {c}");
            }
            // the identification maps are isomorphisms
            assert!(is_hom(&one_c_dual, &k.o_d, &k.o_d_ident).is_none());
            let o_c_dual = dual_obj(pair, &k.o_c).unwrap();
            assert!(is_hom(&o_c_dual, &k.one_d, &k.i).is_none());
        }
    }

    #[test]
    fn dl01_output_algebra_has_zero_on_top() {
        let k = canonical_constants(PairTag::Dl01).unwrap();
        assert!(k.o_d.leq(1, 0) && !k.o_d.leq(0, 1));
    }

    #[test]
    fn small_preduality_checks_pass() {
        for (pair, n) in [(PairTag::Ba, 4), (PairTag::Jsl0, 4), (PairTag::Dl01, 4), (PairTag::Br, 4), (PairTag::Jsl01, 4), (PairTag::Vect(2), 4), (PairTag::Vect(3), 9)] {
            let r = verify_preduality(pair, n).unwrap();
            assert!(r.passed(), "{pair}: {:?}", r.failures);
        }
    }

    #[test]
    fn corrupted_dual_is_detected() {
        let r = verify_preduality_with_fault(PairTag::Jsl0, 3, &|q, _, d| {
            if q.size == 3 && d.len() == 3 {
                d[0] = d[2];
            }
        })
        .unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().any(|f| !f.witness.is_empty()));
    }
}
