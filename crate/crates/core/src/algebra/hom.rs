use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FinAlgebra, Table, VarietyTag};
use crate::error::{Error, Result};

/// A structure-preserving map between two algebras of the same tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgMorphism {
    pub source: FinAlgebra,
    pub target: FinAlgebra,
    pub map: Vec<usize>,
}

/// The operation (or the order) a map fails to preserve, with the arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub op: String,
    pub args: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationPair {
    pub epi: AlgMorphism,
    pub mono: AlgMorphism,
}

impl AlgMorphism {
    pub fn new(source: FinAlgebra, target: FinAlgebra, map: Vec<usize>) -> Self {
        AlgMorphism { source, target, map }
    }

    pub fn identity(a: &FinAlgebra) -> Self {
        AlgMorphism::new(a.clone(), a.clone(), (0..a.size).collect())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgMorphism) -> AlgMorphism {
        AlgMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&x| other.map[x]).collect(),
        )
    }
}

/// First operation or order relation that `map` fails to preserve.
pub fn is_hom(src: &FinAlgebra, dst: &FinAlgebra, map: &[usize]) -> Option<Counterexample> {
    for (sym, t) in &src.ops {
        let u = dst.table(sym);
        match t {
            Table::Const(c) => {
                if map[*c] != u.apply(&[]) {
                    return Some(Counterexample { op: sym.clone(), args: vec![] });
                }
            }
            Table::Unary(f) => {
                for x in 0..src.size {
                    if map[f[x]] != u.apply(&[map[x]]) {
                        return Some(Counterexample { op: sym.clone(), args: vec![x] });
                    }
                }
            }
            Table::Binary(f) => {
                for x in 0..src.size {
                    for y in 0..src.size {
                        if map[f[x][y]] != u.apply(&[map[x], map[y]]) {
                            return Some(Counterexample { op: sym.clone(), args: vec![x, y] });
                        }
                    }
                }
            }
        }
    }
    if src.tag.is_ordered() {
        for x in 0..src.size {
            for y in 0..src.size {
                if src.leq(x, y) && !dst.leq(map[x], map[y]) {
                    return Some(Counterexample { op: "order".into(), args: vec![x, y] });
                }
            }
        }
    }
    None
}

/// `Ok(None)` when `f` is a morphism, otherwise the first counterexample.
pub fn check_morphism(f: &AlgMorphism) -> Result<Option<Counterexample>> {
    if f.source.tag != f.target.tag {
        return Err(Error::TagMismatch(format!("{} → {}", f.source.tag, f.target.tag)));
    }
    if f.map.len() != f.source.size || f.map.iter().any(|&y| y >= f.target.size) {
        return Err(Error::Structural("morphism table does not match the carriers".into()));
    }
    Ok(is_hom(&f.source, &f.target, &f.map))
}

/// Smallest operation-closed subset containing `seeds`, ascending.
pub fn closure(a: &FinAlgebra, seeds: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; a.size];
    let mut elems = Vec::new();
    let push = |x: usize, inside: &mut Vec<bool>, elems: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            elems.push(x);
        }
    };
    for t in a.ops.values() {
        if let Table::Const(c) = t {
            push(*c, &mut inside, &mut elems);
        }
    }
    for &s in seeds {
        push(s, &mut inside, &mut elems);
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for t in a.ops.values() {
            match t {
                Table::Unary(f) => push(f[x], &mut inside, &mut elems),
                Table::Binary(f) => {
                    for j in 0..=i {
                        let y = elems[j];
                        push(f[x][y], &mut inside, &mut elems);
                        push(f[y][x], &mut inside, &mut elems);
                    }
                }
                Table::Const(_) => {}
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

/// Greedy generating set: every element not yet generated becomes a generator.
pub fn generating_set(a: &FinAlgebra) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = vec![false; a.size];
    for x in closure(a, &[]) {
        covered[x] = true;
    }
    for x in 0..a.size {
        if !covered[x] {
            gens.push(x);
            for y in closure(a, &gens) {
                covered[y] = true;
            }
        }
    }
    gens
}

/// Extend the assignment `pairs` to a partial map closed under the operations.
/// Returns `None` if the generated relation is not a function.
pub(crate) fn extend_pairs(
    src: &FinAlgebra,
    dst: &FinAlgebra,
    pairs: &[(usize, usize)],
) -> Option<Vec<Option<usize>>> {
    let mut map: Vec<Option<usize>> = vec![None; src.size];
    let mut assigned = Vec::new();
    let set = |x: usize, y: usize, map: &mut Vec<Option<usize>>, assigned: &mut Vec<usize>| -> bool {
        match map[x] {
            Some(z) => z == y,
            None => {
                map[x] = Some(y);
                assigned.push(x);
                true
            }
        }
    };
    for (sym, t) in &src.ops {
        if let Table::Const(c) = t {
            if !set(*c, dst.table(sym).apply(&[]), &mut map, &mut assigned) {
                return None;
            }
        }
    }
    for &(x, y) in pairs {
        if !set(x, y, &mut map, &mut assigned) {
            return None;
        }
    }
    let mut i = 0;
    while i < assigned.len() {
        let x = assigned[i];
        let fx = map[x].unwrap();
        for (sym, t) in &src.ops {
            let u = dst.table(sym);
            match t {
                Table::Unary(f) => {
                    if !set(f[x], u.apply(&[fx]), &mut map, &mut assigned) {
                        return None;
                    }
                }
                Table::Binary(f) => {
                    for j in 0..=i {
                        let y = assigned[j];
                        let fy = map[y].unwrap();
                        if !set(f[x][y], u.apply(&[fx, fy]), &mut map, &mut assigned)
                            || !set(f[y][x], u.apply(&[fy, fx]), &mut map, &mut assigned)
                        {
                            return None;
                        }
                    }
                }
                Table::Const(_) => {}
            }
        }
        i += 1;
    }
    Some(map)
}

/// Like [`extend_pairs`], requiring the result to be total.
pub(crate) fn extend_pairs_total(src: &FinAlgebra, dst: &FinAlgebra, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    extend_pairs(src, dst, pairs)?.into_iter().collect()
}

/// Search over generator images. `injective` restricts to injective partial assignments,
/// `visit` receives every total morphism found and returns false to stop.
fn search_homs(
    src: &FinAlgebra,
    dst: &FinAlgebra,
    injective: bool,
    candidates: &dyn Fn(usize) -> Vec<usize>,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) {
    let gens = generating_set(src);
    let ordered = src.tag.is_ordered();
    let mut images = Vec::with_capacity(gens.len());
    fn rec(
        k: usize,
        gens: &[usize],
        images: &mut Vec<usize>,
        src: &FinAlgebra,
        dst: &FinAlgebra,
        injective: bool,
        ordered: bool,
        candidates: &dyn Fn(usize) -> Vec<usize>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> bool {
        if k == gens.len() {
            let pairs: Vec<(usize, usize)> = gens.iter().copied().zip(images.iter().copied()).collect();
            let Some(map) = extend_pairs(src, dst, &pairs) else { return true };
            if map.iter().any(|m| m.is_none()) {
                return true;
            }
            let map: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
            if injective {
                let mut seen = vec![false; dst.size];
                for &y in &map {
                    if std::mem::replace(&mut seen[y], true) {
                        return true;
                    }
                }
            }
            if is_hom(src, dst, &map).is_some() {
                return true;
            }
            return visit(map);
        }
        let g = gens[k];
        for y in candidates(g) {
            if injective && images.contains(&y) {
                continue;
            }
            if ordered {
                let ok = gens[..k].iter().zip(images.iter()).all(|(&h, &z)| {
                    (!src.leq(h, g) || dst.leq(z, y)) && (!src.leq(g, h) || dst.leq(y, z))
                });
                if !ok {
                    continue;
                }
            }
            images.push(y);
            let go_on = rec(k + 1, gens, images, src, dst, injective, ordered, candidates, visit);
            images.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(0, &gens, &mut images, src, dst, injective, ordered, candidates, visit);
}

/// All morphisms `src → dst`, in lexicographic order of their tables.
pub fn homs(src: &FinAlgebra, dst: &FinAlgebra) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..dst.size).collect();
    let mut out = Vec::new();
    search_homs(src, dst, false, &|_| all.clone(), &mut |m| {
        out.push(m);
        true
    });
    out.sort();
    out.dedup();
    out
}

fn profile(a: &FinAlgebra, x: usize) -> (usize, usize, bool) {
    let below = (0..a.size).filter(|&y| a.leq(y, x)).count();
    let above = (0..a.size).filter(|&y| a.leq(x, y)).count();
    let is_const = a.ops.values().any(|t| matches!(t, Table::Const(c) if *c == x));
    (below, above, is_const)
}

/// Largest carrier accepted by the isomorphism search.
pub const ISO_BOUND: usize = 4096;

/// An isomorphism table `a → b`, if one exists.
pub fn find_isomorphism(a: &FinAlgebra, b: &FinAlgebra) -> Option<Vec<usize>> {
    if a.tag != b.tag || a.size != b.size {
        return None;
    }
    let pa: Vec<_> = (0..a.size).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..b.size).map(|x| profile(b, x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let by_profile: BTreeMap<_, Vec<usize>> = (0..b.size).fold(BTreeMap::new(), |mut m, y| {
        m.entry(pb[y]).or_insert_with(Vec::new).push(y);
        m
    });
    let mut found = None;
    search_homs(a, b, true, &|x| by_profile.get(&pa[x]).cloned().unwrap_or_default(), &mut |m| {
        let reflects = !a.tag.is_ordered()
            || (0..a.size).all(|x| (0..a.size).all(|y| a.leq(x, y) == b.leq(m[x], m[y])));
        if reflects {
            found = Some(m);
            false
        } else {
            true
        }
    });
    found
}

pub fn are_isomorphic(a: &FinAlgebra, b: &FinAlgebra) -> Result<Option<AlgMorphism>> {
    if a.tag != b.tag {
        return Err(Error::TagMismatch(format!("{} vs {}", a.tag, b.tag)));
    }
    if a.size.max(b.size) > ISO_BOUND {
        return Err(Error::Bound(format!("isomorphism search is limited to {ISO_BOUND} elements")));
    }
    Ok(find_isomorphism(a, b).map(|m| AlgMorphism::new(a.clone(), b.clone(), m)))
}

/// Direct product with its two projections; element `(x, y)` has index `x * |b| + y`.
pub fn product(a: &FinAlgebra, b: &FinAlgebra) -> Result<(FinAlgebra, AlgMorphism, AlgMorphism)> {
    if a.tag != b.tag {
        return Err(Error::TagMismatch(format!("{} × {}", a.tag, b.tag)));
    }
    let nb = b.size;
    let pair = |x: usize| (x / nb.max(1), x % nb.max(1));
    let mut p = FinAlgebra::build(a.tag, a.size * nb, |sym, args| {
        let ta = a.table(sym);
        let tb = b.table(sym);
        let xa: Vec<usize> = args.iter().map(|&x| pair(x).0).collect();
        let xb: Vec<usize> = args.iter().map(|&x| pair(x).1).collect();
        ta.apply(&xa) * nb + tb.apply(&xb)
    });
    if a.tag == VarietyTag::Pos {
        p.order = Some(
            (0..p.size)
                .map(|x| (0..p.size).map(|y| a.leq(pair(x).0, pair(y).0) && b.leq(pair(x).1, pair(y).1)).collect())
                .collect(),
        );
    }
    if let VarietyTag::Vect(_) = a.tag {
        let (za, zb) = (a.constant("zero"), b.constant("zero"));
        let mut basis: Vec<usize> = a.vect_basis().iter().map(|&x| x * nb + zb).collect();
        basis.extend(b.vect_basis().iter().map(|&y| za * nb + y));
        p.basis = Some(basis);
    }
    let p1 = AlgMorphism::new(p.clone(), a.clone(), (0..p.size).map(|x| pair(x).0).collect());
    let p2 = AlgMorphism::new(p.clone(), b.clone(), (0..p.size).map(|x| pair(x).1).collect());
    Ok((p, p1, p2))
}

/// Inclusion of the subalgebra generated by `seeds`.
pub fn generated_subalgebra(a: &FinAlgebra, seeds: &[usize]) -> AlgMorphism {
    let elems = closure(a, seeds);
    let sub = a.restrict(&elems);
    AlgMorphism::new(sub, a.clone(), elems)
}

/// Image factorization: a surjection followed by an injective order-embedding.
pub fn factorize(f: &AlgMorphism) -> FactorizationPair {
    let mut image: Vec<usize> = f.map.clone();
    image.sort_unstable();
    image.dedup();
    let sub = f.target.restrict(&image);
    let epi_map = f.map.iter().map(|y| image.binary_search(y).unwrap()).collect();
    FactorizationPair {
        epi: AlgMorphism::new(f.source.clone(), sub.clone(), epi_map),
        mono: AlgMorphism::new(sub, f.target.clone(), image),
    }
}

/// Quotient by the equivalence `class` (class id per element, ids `0..k`).
/// The quotient order is the transitive closure of the pushed-forward order.
pub fn quotient(a: &FinAlgebra, class: &[usize]) -> Result<(FinAlgebra, Vec<usize>)> {
    let k = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; k];
    for (x, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = x;
        }
    }
    if rep.contains(&usize::MAX) {
        return Err(Error::InvalidQuotient("class ids are not contiguous".into()));
    }
    for (sym, t) in &a.ops {
        let bad = match t {
            Table::Const(_) => false,
            Table::Unary(f) => (0..a.size).any(|x| class[f[x]] != class[f[rep[class[x]]]]),
            Table::Binary(f) => (0..a.size).any(|x| {
                (0..a.size).any(|y| class[f[x][y]] != class[f[rep[class[x]]][rep[class[y]]]])
            }),
        };
        if bad {
            return Err(Error::InvalidQuotient(format!("not a congruence for {sym}")));
        }
    }
    let mut q = FinAlgebra::build(a.tag, k, |sym, args| {
        let r: Vec<usize> = args.iter().map(|&c| rep[c]).collect();
        class[a.table(sym).apply(&r)]
    });
    if let Some(o) = &a.order {
        let mut rel = vec![vec![false; k]; k];
        for x in 0..a.size {
            for y in 0..a.size {
                if o[x][y] {
                    rel[class[x]][class[y]] = true;
                }
            }
        }
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if rel[i][m] && rel[m][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        if (0..k).any(|i| (0..k).any(|j| i != j && rel[i][j] && rel[j][i])) {
            return Err(Error::InvalidQuotient("pushed-forward order is not antisymmetric".into()));
        }
        q.order = Some(rel);
    }
    Ok((q, class.to_vec()))
}
