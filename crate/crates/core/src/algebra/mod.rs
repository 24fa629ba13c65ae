//! Finite (ordered) algebras for the eight varieties, stored as operation tables
//! over the index carrier `0..n`.

mod enumerate;
mod hom;

pub use enumerate::{enumerate_algebras, enumerate_up_to};
pub(crate) use hom::extend_pairs_total;
pub use hom::{
    are_isomorphic, check_morphism, closure, factorize, find_isomorphism, generated_subalgebra,
    generating_set, homs, is_hom, product, quotient, AlgMorphism, Counterexample,
    FactorizationPair,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf;

/// The varieties that appear on either side of a predual pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum VarietyTag {
    Set,
    SetStar,
    Pos,
    Ba,
    Br,
    Dl01,
    Jsl0,
    Jsl01,
    Jsl,
    Vect(u8),
}

impl VarietyTag {
    /// Signature as (symbol, arity) pairs in canonical order.
    pub fn signature(self) -> Vec<(String, usize)> {
        let s = |v: &[(&str, usize)]| v.iter().map(|(n, a)| (n.to_string(), *a)).collect();
        match self {
            VarietyTag::Set | VarietyTag::Pos => Vec::new(),
            VarietyTag::SetStar => s(&[("point", 0)]),
            VarietyTag::Ba => s(&[("meet", 2), ("join", 2), ("neg", 1), ("bot", 0), ("top", 0)]),
            VarietyTag::Dl01 => s(&[("meet", 2), ("join", 2), ("bot", 0), ("top", 0)]),
            VarietyTag::Jsl0 => s(&[("join", 2), ("bot", 0)]),
            VarietyTag::Jsl => s(&[("join", 2)]),
            VarietyTag::Jsl01 => s(&[("join", 2), ("bot", 0), ("top", 0)]),
            VarietyTag::Br => s(&[("add", 2), ("mul", 2), ("zero", 0)]),
            VarietyTag::Vect(p) => {
                let mut v: Vec<(String, usize)> = vec![("add".into(), 2), ("zero".into(), 0)];
                for k in 2..p {
                    v.push((format!("scale{k}"), 1));
                }
                v
            }
        }
    }

    /// True for tags whose algebras carry a partial order that morphisms must respect.
    pub fn is_ordered(self) -> bool {
        matches!(self, VarietyTag::Pos)
    }

    /// True for the lattice-like tags whose order is derived from `join`.
    fn join_ordered(self) -> bool {
        matches!(
            self,
            VarietyTag::Ba | VarietyTag::Dl01 | VarietyTag::Jsl0 | VarietyTag::Jsl | VarietyTag::Jsl01
        )
    }

    pub fn check(self) -> Result<()> {
        if let VarietyTag::Vect(p) = self {
            gf::check_prime(p)?;
        }
        Ok(())
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyTag::Set => write!(f, "SET"),
            VarietyTag::SetStar => write!(f, "SET_STAR"),
            VarietyTag::Pos => write!(f, "POS"),
            VarietyTag::Ba => write!(f, "BA"),
            VarietyTag::Br => write!(f, "BR"),
            VarietyTag::Dl01 => write!(f, "DL01"),
            VarietyTag::Jsl0 => write!(f, "JSL0"),
            VarietyTag::Jsl01 => write!(f, "JSL01"),
            VarietyTag::Jsl => write!(f, "JSL"),
            VarietyTag::Vect(p) => write!(f, "VECT{p}"),
        }
    }
}

impl FromStr for VarietyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = match s.to_ascii_uppercase().as_str() {
            "SET" => VarietyTag::Set,
            "SET_STAR" | "SETSTAR" => VarietyTag::SetStar,
            "POS" => VarietyTag::Pos,
            "BA" => VarietyTag::Ba,
            "BR" => VarietyTag::Br,
            "DL01" => VarietyTag::Dl01,
            "JSL0" => VarietyTag::Jsl0,
            "JSL01" => VarietyTag::Jsl01,
            "JSL" => VarietyTag::Jsl,
            other => {
                let p = other
                    .strip_prefix("VECT")
                    .map(|r| r.trim_start_matches(['(', '_']).trim_end_matches(')'))
                    .and_then(|r| r.parse::<u8>().ok())
                    .ok_or_else(|| Error::Invalid(format!("unknown variety tag {s:?}")))?;
                gf::check_prime(p)?;
                VarietyTag::Vect(p)
            }
        };
        Ok(t)
    }
}

impl TryFrom<String> for VarietyTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<VarietyTag> for String {
    fn from(t: VarietyTag) -> String {
        t.to_string()
    }
}

/// An operation table indexed by arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Table {
    Const(usize),
    Unary(Vec<usize>),
    Binary(Vec<Vec<usize>>),
}

impl Table {
    pub fn arity(&self) -> usize {
        match self {
            Table::Const(_) => 0,
            Table::Unary(_) => 1,
            Table::Binary(_) => 2,
        }
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        match self {
            Table::Const(c) => *c,
            Table::Unary(t) => t[args[0]],
            Table::Binary(t) => t[args[0]][args[1]],
        }
    }
}

/// A finite algebra of one of the supported varieties.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAlgebra {
    pub tag: VarietyTag,
    pub size: usize,
    pub ops: BTreeMap<String, Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Vec<bool>>>,
    /// Fixed basis for vector spaces; the greedy basis is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<usize>>,
}

/// A law that fails, with the arguments that witness the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: String,
    pub witness: Vec<usize>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

impl FinAlgebra {
    /// Build an algebra by evaluating every signature symbol with `eval`.
    pub fn build(tag: VarietyTag, size: usize, eval: impl Fn(&str, &[usize]) -> usize) -> Self {
        let mut ops = BTreeMap::new();
        for (sym, arity) in tag.signature() {
            let table = match arity {
                0 => Table::Const(eval(&sym, &[])),
                1 => Table::Unary((0..size).map(|x| eval(&sym, &[x])).collect()),
                _ => Table::Binary(
                    (0..size).map(|x| (0..size).map(|y| eval(&sym, &[x, y])).collect()).collect(),
                ),
            };
            ops.insert(sym, table);
        }
        FinAlgebra { tag, size, ops, order: None, basis: None }
    }

    pub fn set(n: usize) -> Self {
        FinAlgebra::build(VarietyTag::Set, n, |_, _| 0)
    }

    pub fn pointed(n: usize, point: usize) -> Self {
        FinAlgebra::build(VarietyTag::SetStar, n, |_, _| point)
    }

    pub fn poset(order: Vec<Vec<bool>>) -> Self {
        let mut a = FinAlgebra::build(VarietyTag::Pos, order.len(), |_, _| 0);
        a.order = Some(order);
        a
    }

    pub fn discrete_poset(n: usize) -> Self {
        FinAlgebra::poset((0..n).map(|i| (0..n).map(|j| i == j).collect()).collect())
    }

    /// Powerset boolean algebra on `k` atoms; element index = bitmask.
    pub fn powerset_ba(k: usize) -> Self {
        let full = (1usize << k) - 1;
        FinAlgebra::build(VarietyTag::Ba, 1 << k, |s, a| match s {
            "meet" => a[0] & a[1],
            "join" => a[0] | a[1],
            "neg" => full & !a[0],
            "bot" => 0,
            _ => full,
        })
    }

    /// Powerset boolean ring on `k` atoms; element index = bitmask.
    pub fn powerset_br(k: usize) -> Self {
        FinAlgebra::build(VarietyTag::Br, 1 << k, |s, a| match s {
            "add" => a[0] ^ a[1],
            "mul" => a[0] & a[1],
            _ => 0,
        })
    }

    /// Lattice of down-sets of a poset given by `leq`, indexed by ascending bitmask.
    pub fn downset_lattice(n: usize, leq: impl Fn(usize, usize) -> bool) -> (Self, Vec<u64>) {
        let masks = downsets(n, leq);
        let index: BTreeMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let alg = FinAlgebra::build(VarietyTag::Dl01, masks.len(), |s, a| match s {
            "meet" => index[&(masks[a[0]] & masks[a[1]])],
            "join" => index[&(masks[a[0]] | masks[a[1]])],
            "bot" => index[&0],
            _ => index[&full],
        });
        (alg, masks)
    }

    /// Standard coordinate space GF(p)^d, index = base-p encoding of coordinates.
    pub fn vect_space(p: u8, d: usize) -> Self {
        let size = (p as usize).pow(d as u32);
        let mut a = FinAlgebra::build(VarietyTag::Vect(p), size, |s, a| {
            if s == "zero" {
                return 0;
            }
            let x = gf::decode(p, d, a[0]);
            if s == "add" {
                let y = gf::decode(p, d, a[1]);
                let z: Vec<u8> = x.iter().zip(&y).map(|(&u, &v)| gf::add(p, u, v)).collect();
                gf::encode(p, &z)
            } else {
                let k: u8 = s[5..].parse().expect("scale symbol");
                let z: Vec<u8> = x.iter().map(|&u| gf::mul(p, k, u)).collect();
                gf::encode(p, &z)
            }
        });
        a.basis = Some((0..d).map(|i| (p as usize).pow(i as u32)).collect());
        a
    }

    /// Chain `0 < 1 < ... < n-1` as an algebra of a lattice-like tag.
    pub fn chain(tag: VarietyTag, n: usize) -> Result<Self> {
        FinAlgebra::from_order(tag, &(0..n).map(|i| (0..n).map(|j| i <= j).collect::<Vec<_>>()).collect::<Vec<_>>())
    }

    /// Build a lattice-like algebra (BA, DL01, JSL0, JSL, JSL01) or a poset from an order matrix.
    pub fn from_order(tag: VarietyTag, order: &[Vec<bool>]) -> Result<Self> {
        let n = order.len();
        if tag == VarietyTag::Pos {
            return Ok(FinAlgebra::poset(order.to_vec()));
        }
        let lub = |x: usize, y: usize| -> Option<usize> {
            let ubs: Vec<usize> = (0..n).filter(|&z| order[x][z] && order[y][z]).collect();
            ubs.iter().copied().find(|&z| ubs.iter().all(|&w| order[z][w]))
        };
        let glb = |x: usize, y: usize| -> Option<usize> {
            let lbs: Vec<usize> = (0..n).filter(|&z| order[z][x] && order[z][y]).collect();
            lbs.iter().copied().find(|&z| lbs.iter().all(|&w| order[w][z]))
        };
        let bot = (0..n).find(|&z| (0..n).all(|w| order[z][w]));
        let top = (0..n).find(|&z| (0..n).all(|w| order[w][z]));
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                join[x][y] = lub(x, y).ok_or_else(|| Error::Invalid("order has no joins".into()))?;
                if matches!(tag, VarietyTag::Ba | VarietyTag::Dl01) {
                    meet[x][y] = glb(x, y).ok_or_else(|| Error::Invalid("order has no meets".into()))?;
                }
            }
        }
        let need_bot = !matches!(tag, VarietyTag::Jsl);
        let need_top = matches!(tag, VarietyTag::Ba | VarietyTag::Dl01 | VarietyTag::Jsl01);
        if (need_bot && bot.is_none()) || (need_top && top.is_none()) {
            return Err(Error::Invalid("order lacks a required bound".into()));
        }
        let (b, t) = (bot.unwrap_or(0), top.unwrap_or(0));
        let mut neg = vec![0; n];
        if tag == VarietyTag::Ba {
            for x in 0..n {
                neg[x] = (0..n)
                    .find(|&y| join[x][y] == t && meet[x][y] == b)
                    .ok_or_else(|| Error::Invalid("lattice is not complemented".into()))?;
            }
        }
        Ok(FinAlgebra::build(tag, n, |s, a| match s {
            "join" => join[a[0]][a[1]],
            "meet" => meet[a[0]][a[1]],
            "neg" => neg[a[0]],
            "bot" => b,
            _ => t,
        }))
    }

    pub fn table(&self, sym: &str) -> &Table {
        self.ops.get(sym).unwrap_or_else(|| panic!("{} has no operation {sym}", self.tag))
    }

    pub fn op2(&self, sym: &str, x: usize, y: usize) -> usize {
        match self.table(sym) {
            Table::Binary(t) => t[x][y],
            _ => panic!("{sym} is not binary"),
        }
    }

    pub fn op1(&self, sym: &str, x: usize) -> usize {
        match self.table(sym) {
            Table::Unary(t) => t[x],
            _ => panic!("{sym} is not unary"),
        }
    }

    pub fn constant(&self, sym: &str) -> usize {
        match self.table(sym) {
            Table::Const(c) => *c,
            _ => panic!("{sym} is not a constant"),
        }
    }

    /// The partial order of the algebra (discrete for unordered, non-lattice tags).
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match self.tag {
            VarietyTag::Pos => self.order.as_ref().map_or(x == y, |o| o[x][y]),
            t if t.join_ordered() => self.op2("join", x, y) == y,
            VarietyTag::Br => self.op2("mul", x, y) == x,
            _ => x == y,
        }
    }

    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size).map(|x| (0..self.size).map(|y| self.leq(x, y)).collect()).collect()
    }

    /// Least element of a lattice-like algebra or boolean ring.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size).find(|&z| (0..self.size).all(|w| self.leq(z, w)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&z| (0..self.size).all(|w| self.leq(w, z)))
    }

    /// Join in the derived order (BR uses `x + y + xy`).
    pub fn join(&self, x: usize, y: usize) -> usize {
        match self.tag {
            VarietyTag::Br => {
                let xy = self.op2("mul", x, y);
                self.op2("add", self.op2("add", x, y), xy)
            }
            _ => self.op2("join", x, y),
        }
    }

    /// Greatest lower bound in the derived order, when it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        match self.tag {
            VarietyTag::Ba | VarietyTag::Dl01 => Some(self.op2("meet", x, y)),
            VarietyTag::Br => Some(self.op2("mul", x, y)),
            _ => {
                let lbs: Vec<usize> =
                    (0..self.size).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
                lbs.iter().copied().find(|&z| lbs.iter().all(|&w| self.leq(w, z)))
            }
        }
    }

    /// Join of a set of elements; `None` for the empty join when there is no bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut acc: Option<usize> = None;
        for x in xs {
            acc = Some(match acc {
                None => x,
                Some(a) => self.join(a, x),
            });
        }
        acc.or_else(|| self.bottom())
    }

    /// Meet of a set of elements; the empty meet is the top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut acc: Option<usize> = None;
        for x in xs {
            acc = Some(match acc {
                None => x,
                Some(a) => self.meet(a, x)?,
            });
        }
        acc.or_else(|| self.top())
    }

    /// Atoms of a lattice-like algebra in ascending index order.
    pub fn atoms(&self) -> Vec<usize> {
        let Some(b) = self.bottom() else { return Vec::new() };
        (0..self.size)
            .filter(|&x| x != b && (0..self.size).all(|y| y == b || y == x || !self.leq(y, x)))
            .collect()
    }

    /// Join-irreducible elements (non-bottom, exactly one lower cover).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let b = self.bottom();
        (0..self.size)
            .filter(|&x| Some(x) != b && self.lower_covers(x).len() == 1)
            .collect()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.size).filter(|&y| y != x && self.leq(y, x)).collect();
        below
            .iter()
            .copied()
            .filter(|&y| !below.iter().any(|&z| z != y && self.leq(y, z)))
            .collect()
    }

    /// Point of a pointed set.
    pub fn point(&self) -> usize {
        self.constant("point")
    }

    pub fn prime(&self) -> Option<u8> {
        match self.tag {
            VarietyTag::Vect(p) => Some(p),
            _ => None,
        }
    }

    /// Scalar multiple in a vector space.
    pub fn scale(&self, k: u8, x: usize) -> usize {
        let p = self.prime().expect("vector space");
        match k % p {
            0 => self.constant("zero"),
            1 => x,
            k => self.op1(&format!("scale{k}"), x),
        }
    }

    /// The fixed basis of a vector space (stored, or greedy by index).
    pub fn vect_basis(&self) -> Vec<usize> {
        if let Some(b) = &self.basis {
            return b.clone();
        }
        let mut basis = Vec::new();
        let mut span = vec![false; self.size];
        span[self.constant("zero")] = true;
        for x in 0..self.size {
            if !span[x] {
                basis.push(x);
                span = self.span_of(&basis);
            }
        }
        basis
    }

    fn span_of(&self, vecs: &[usize]) -> Vec<bool> {
        let mut span = vec![false; self.size];
        let zero = self.constant("zero");
        span[zero] = true;
        let mut current = vec![zero];
        for &v in vecs {
            let p = self.prime().unwrap();
            let mut next = Vec::new();
            for &c in &current {
                for k in 0..p {
                    let e = self.op2("add", c, self.scale(k, v));
                    if !span[e] {
                        span[e] = true;
                        next.push(e);
                    }
                }
            }
            current.extend(next);
        }
        span
    }

    /// Coordinates of every element relative to the fixed basis.
    pub fn coordinates(&self) -> Vec<Vec<u8>> {
        let p = self.prime().expect("vector space");
        let basis = self.vect_basis();
        let d = basis.len();
        let mut coords = vec![Vec::new(); self.size];
        for i in 0..(p as usize).pow(d as u32) {
            let c = gf::decode(p, d, i);
            let mut x = self.constant("zero");
            for (k, &b) in c.iter().zip(&basis) {
                x = self.op2("add", x, self.scale(*k, b));
            }
            coords[x] = c;
        }
        coords
    }

    /// Restrict to a sorted, operation-closed subset of the carrier.
    pub fn restrict(&self, elems: &[usize]) -> FinAlgebra {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let mut ops = BTreeMap::new();
        for (sym, t) in &self.ops {
            let nt = match t {
                Table::Const(c) => Table::Const(pos[*c]),
                Table::Unary(u) => Table::Unary(elems.iter().map(|&x| pos[u[x]]).collect()),
                Table::Binary(b) => Table::Binary(
                    elems.iter().map(|&x| elems.iter().map(|&y| pos[b[x][y]]).collect()).collect(),
                ),
            };
            ops.insert(sym.clone(), nt);
        }
        let order = self
            .order
            .as_ref()
            .map(|o| elems.iter().map(|&x| elems.iter().map(|&y| o[x][y]).collect()).collect());
        FinAlgebra { tag: self.tag, size: elems.len(), ops, order, basis: None }
    }

    /// Relabel the carrier: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FinAlgebra {
        let mut inv = vec![0; self.size];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let mut ops = BTreeMap::new();
        for (sym, t) in &self.ops {
            let nt = match t {
                Table::Const(c) => Table::Const(perm[*c]),
                Table::Unary(u) => Table::Unary(inv.iter().map(|&x| perm[u[x]]).collect()),
                Table::Binary(b) => Table::Binary(
                    inv.iter().map(|&x| inv.iter().map(|&y| perm[b[x][y]]).collect()).collect(),
                ),
            };
            ops.insert(sym.clone(), nt);
        }
        let order = self
            .order
            .as_ref()
            .map(|o| inv.iter().map(|&x| inv.iter().map(|&y| o[x][y]).collect()).collect());
        let basis = self.basis.as_ref().map(|b| b.iter().map(|&x| perm[x]).collect());
        FinAlgebra { tag: self.tag, size: self.size, ops, order, basis }
    }

    /// Repair untagged-table ambiguity for empty carriers after deserialization.
    pub fn normalize(mut self) -> Self {
        for (sym, arity) in self.tag.signature() {
            if let Some(t) = self.ops.get_mut(&sym) {
                if arity == 2 && matches!(t, Table::Unary(v) if v.is_empty()) {
                    *t = Table::Binary(Vec::new());
                }
            }
        }
        self
    }
}

/// All down-sets of the order `leq` on `0..n`, as ascending bitmasks.
pub fn downsets(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<u64> {
    assert!(n <= 24, "down-set enumeration bound");
    let below: Vec<u64> = (0..n)
        .map(|x| (0..n).filter(|&y| leq(y, x)).fold(0u64, |m, y| m | (1 << y)))
        .collect();
    let mut out = vec![0u64];
    let mut seen = std::collections::BTreeSet::from([0u64]);
    let mut i = 0;
    while i < out.len() {
        let m = out[i];
        for x in 0..n {
            let next = m | below[x];
            if seen.insert(next) {
                out.push(next);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Check the equational theory and order axioms of the algebra's tag.
pub fn validate_algebra(a: &FinAlgebra) -> Result<Vec<LawViolation>> {
    structural_check(a)?;
    let mut out = Vec::new();
    let n = a.size;
    let mut law = |name: &str, found: Option<Vec<usize>>| {
        if let Some(w) = found {
            out.push(LawViolation { law: name.to_string(), witness: w });
        }
    };
    let all2 = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let all3 = || {
        (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
    };
    let find2 = |f: &dyn Fn(usize, usize) -> bool| all2().find(|&(x, y)| !f(x, y)).map(|(x, y)| vec![x, y]);
    let find3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
        all3().find(|&(x, y, z)| !f(x, y, z)).map(|(x, y, z)| vec![x, y, z])
    };
    let find1 = |f: &dyn Fn(usize) -> bool| (0..n).find(|&x| !f(x)).map(|x| vec![x]);

    let semilattice = |sym: &str, law: &mut dyn FnMut(&str, Option<Vec<usize>>)| {
        let o = |x, y| a.op2(sym, x, y);
        law(&format!("associativity of {sym}"), find3(&|x, y, z| o(o(x, y), z) == o(x, o(y, z))));
        law(&format!("commutativity of {sym}"), find2(&|x, y| o(x, y) == o(y, x)));
        law(&format!("idempotence of {sym}"), find1(&|x| o(x, x) == x));
    };

    match a.tag {
        VarietyTag::Set | VarietyTag::SetStar => {}
        VarietyTag::Pos => {
            let o = a.order.as_ref().unwrap();
            law("reflexivity", find1(&|x| o[x][x]));
            law("antisymmetry", find2(&|x, y| !(o[x][y] && o[y][x]) || x == y));
            law("transitivity", find3(&|x, y, z| !(o[x][y] && o[y][z]) || o[x][z]));
        }
        VarietyTag::Jsl | VarietyTag::Jsl0 | VarietyTag::Jsl01 => {
            semilattice("join", &mut law);
            if a.tag != VarietyTag::Jsl {
                let b = a.constant("bot");
                law("bot is neutral for join", find1(&|x| a.op2("join", x, b) == x));
            }
            if a.tag == VarietyTag::Jsl01 {
                let t = a.constant("top");
                law("top absorbs join", find1(&|x| a.op2("join", x, t) == t));
            }
        }
        VarietyTag::Ba | VarietyTag::Dl01 => {
            semilattice("join", &mut law);
            semilattice("meet", &mut law);
            let j = |x, y| a.op2("join", x, y);
            let m = |x, y| a.op2("meet", x, y);
            law("absorption", find2(&|x, y| m(x, j(x, y)) == x && j(x, m(x, y)) == x));
            law("distributivity", find3(&|x, y, z| m(x, j(y, z)) == j(m(x, y), m(x, z))));
            let (b, t) = (a.constant("bot"), a.constant("top"));
            law("bot is neutral for join", find1(&|x| j(x, b) == x));
            law("top is neutral for meet", find1(&|x| m(x, t) == x));
            if a.tag == VarietyTag::Ba {
                let ng = |x| a.op1("neg", x);
                law("complement", find1(&|x| m(x, ng(x)) == b && j(x, ng(x)) == t));
            }
        }
        VarietyTag::Br => {
            let ad = |x, y| a.op2("add", x, y);
            let mu = |x, y| a.op2("mul", x, y);
            let z = a.constant("zero");
            law("associativity of add", find3(&|x, y, w| ad(ad(x, y), w) == ad(x, ad(y, w))));
            law("commutativity of add", find2(&|x, y| ad(x, y) == ad(y, x)));
            law("zero is neutral for add", find1(&|x| ad(x, z) == x));
            law("x + x = 0", find1(&|x| ad(x, x) == z));
            law("associativity of mul", find3(&|x, y, w| mu(mu(x, y), w) == mu(x, mu(y, w))));
            law("idempotence of mul", find1(&|x| mu(x, x) == x));
            law(
                "distributivity",
                find3(&|x, y, w| mu(x, ad(y, w)) == ad(mu(x, y), mu(x, w)) && mu(ad(y, w), x) == ad(mu(y, x), mu(w, x))),
            );
            let jn = |x, y| ad(ad(x, y), mu(x, y));
            law(
                "derived lattice (x∧y = xy, x∨y = x+y+xy)",
                find3(&|x, y, w| {
                    jn(jn(x, y), w) == jn(x, jn(y, w))
                        && jn(x, y) == jn(y, x)
                        && mu(x, jn(x, y)) == x
                        && mu(x, jn(y, w)) == jn(mu(x, y), mu(x, w))
                        && jn(x, z) == x
                }),
            );
        }
        VarietyTag::Vect(p) => {
            let ad = |x, y| a.op2("add", x, y);
            let z = a.constant("zero");
            law("associativity of add", find3(&|x, y, w| ad(ad(x, y), w) == ad(x, ad(y, w))));
            law("commutativity of add", find2(&|x, y| ad(x, y) == ad(y, x)));
            law("zero is neutral for add", find1(&|x| ad(x, z) == x));
            let multiple = |k: u8, x: usize| (0..k).fold(z, |acc, _| ad(acc, x));
            law("p·x = 0", find1(&|x| multiple(p, x) == z));
            for k in 2..p {
                let sym = format!("scale{k}");
                law(&format!("{sym} is repeated addition"), find1(&|x| a.op1(&sym, x) == multiple(k, x)));
            }
            if out.is_empty() {
                if let Some(b) = &a.basis {
                    let span = a.span_of(b);
                    let d = b.len();
                    if span.iter().any(|s| !s) || (p as usize).pow(d as u32) != n {
                        out.push(LawViolation { law: "basis spans freely".into(), witness: b.clone() });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn structural_check(a: &FinAlgebra) -> Result<()> {
    a.tag.check()?;
    let n = a.size;
    let sig = a.tag.signature();
    for (sym, arity) in &sig {
        let t = a
            .ops
            .get(sym)
            .ok_or_else(|| Error::Structural(format!("missing operation {sym}")))?;
        let ok = match t {
            Table::Const(c) => *arity == 0 && *c < n,
            Table::Unary(u) => *arity == 1 && u.len() == n && u.iter().all(|&x| x < n),
            Table::Binary(b) => {
                *arity == 2 && b.len() == n && b.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
            }
        };
        if !ok {
            return Err(Error::Structural(format!("table {sym} is malformed for size {n}")));
        }
    }
    if let Some(extra) = a.ops.keys().find(|k| !sig.iter().any(|(s, _)| s == *k)) {
        return Err(Error::Structural(format!("operation {extra} is not in the signature of {}", a.tag)));
    }
    match (&a.order, a.tag) {
        (None, VarietyTag::Pos) => return Err(Error::Structural("POS requires an order matrix".into())),
        (Some(o), VarietyTag::Pos) => {
            if o.len() != n || o.iter().any(|r| r.len() != n) {
                return Err(Error::Structural("order matrix has wrong dimensions".into()));
            }
        }
        (Some(_), t) => return Err(Error::Structural(format!("{t} carries no stored order"))),
        (None, _) => {}
    }
    if let Some(b) = &a.basis {
        if !matches!(a.tag, VarietyTag::Vect(_)) || b.iter().any(|&x| x >= n) {
            return Err(Error::Structural("basis is only valid for vector spaces".into()));
        }
    }
    Ok(())
}

/// The free algebra on `x` generators for a D-side tag, with the universal injection.
pub fn free_algebra(tag: VarietyTag, x: usize) -> Result<(FinAlgebra, Vec<usize>)> {
    match tag {
        VarietyTag::Set => Ok((FinAlgebra::set(x), (0..x).collect())),
        VarietyTag::Pos => Ok((FinAlgebra::discrete_poset(x), (0..x).collect())),
        VarietyTag::SetStar => Ok((FinAlgebra::pointed(x + 1, 0), (1..=x).collect())),
        VarietyTag::Jsl0 => {
            if x > 16 {
                return Err(Error::Bound(format!("free JSL0 on {x} generators")));
            }
            let a = FinAlgebra::build(VarietyTag::Jsl0, 1 << x, |s, a| if s == "join" { a[0] | a[1] } else { 0 });
            Ok((a, (0..x).map(|i| 1 << i).collect()))
        }
        VarietyTag::Vect(p) => {
            gf::check_prime(p)?;
            if (p as usize).pow(x as u32) > 1 << 16 {
                return Err(Error::Bound(format!("free VECT{p} on {x} generators")));
            }
            Ok((FinAlgebra::vect_space(p, x), (0..x).map(|i| (p as usize).pow(i as u32)).collect()))
        }
        t => Err(Error::Unsupported(format!("free algebras are provided for D-side tags, not {t}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_ba_is_valid() {
        assert!(validate_algebra(&FinAlgebra::powerset_ba(1)).unwrap().is_empty());
    }

    #[test]
    fn br_idempotence_violation_is_reported() {
        let mut r = FinAlgebra::powerset_br(1);
        if let Some(Table::Binary(t)) = r.ops.get_mut("mul") {
            t[1][1] = 0;
        }
        let report = validate_algebra(&r).unwrap();
        assert!(report.iter().any(|v| v.law == "idempotence of mul" && v.witness == vec![1]));
    }

    #[test]
    fn perturbed_semilattice_reports_associativity_witness() {
        // 3-chain 0 < 1 < 2 with a single corrupted entry.
        let mut a = FinAlgebra::chain(VarietyTag::Jsl0, 3).unwrap();
        if let Some(Table::Binary(t)) = a.ops.get_mut("join") {
            t[1][2] = 0;
            t[2][1] = 0;
        }
        let report = validate_algebra(&a).unwrap();
        let v = report.iter().find(|v| v.law == "associativity of join").expect("violation");
        let (x, y, z) = (v.witness[0], v.witness[1], v.witness[2]);
        let j = |p, q| a.op2("join", p, q);
        assert_ne!(j(j(x, y), z), j(x, j(y, z)));
    }

    #[test]
    fn malformed_table_is_structural() {
        let mut a = FinAlgebra::powerset_ba(1);
        a.ops.insert("neg".into(), Table::Unary(vec![1]));
        assert!(matches!(validate_algebra(&a), Err(Error::Structural(_))));
    }

    #[test]
    fn free_algebras() {
        let (j, inj) = free_algebra(VarietyTag::Jsl0, 1).unwrap();
        assert_eq!((j.size, inj), (2, vec![1]));
        let (v, _) = free_algebra(VarietyTag::Vect(2), 2).unwrap();
        assert_eq!(v.size, 4);
        let (s, inj) = free_algebra(VarietyTag::SetStar, 1).unwrap();
        assert_eq!((s.size, s.point(), inj), (2, 0, vec![1]));
        assert!(free_algebra(VarietyTag::Ba, 1).is_err());
    }

    #[test]
    fn tags_round_trip_through_strings() {
        for t in [
            VarietyTag::Set,
            VarietyTag::SetStar,
            VarietyTag::Pos,
            VarietyTag::Ba,
            VarietyTag::Br,
            VarietyTag::Dl01,
            VarietyTag::Jsl0,
            VarietyTag::Jsl01,
            VarietyTag::Jsl,
            VarietyTag::Vect(3),
        ] {
            assert_eq!(t.to_string().parse::<VarietyTag>().unwrap(), t);
        }
        assert!("VECT4".parse::<VarietyTag>().is_err());
    }

    #[test]
    fn vector_coordinates_follow_basis() {
        let v = FinAlgebra::vect_space(3, 2);
        let c = v.coordinates();
        for (x, cx) in c.iter().enumerate() {
            assert_eq!(gf::encode(3, cx), x);
        }
        assert!(validate_algebra(&v).unwrap().is_empty());
    }

    #[test]
    fn lattice_derived_structure() {
        let b = FinAlgebra::powerset_ba(2);
        assert_eq!(b.atoms(), vec![1, 2]);
        assert_eq!(b.join_irreducibles(), vec![1, 2]);
        let c = FinAlgebra::chain(VarietyTag::Dl01, 3).unwrap();
        assert_eq!(c.join_irreducibles(), vec![1, 2]);
        assert_eq!(c.meet(1, 2), Some(1));
    }
}
