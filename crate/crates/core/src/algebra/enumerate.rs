use itertools::Itertools;

use super::{FinAlgebra, VarietyTag};
use crate::error::{Error, Result};

/// Canonical code of an order matrix: the minimum over relabelings.
fn canonical(order: &[Vec<bool>]) -> (u64, Vec<usize>) {
    let n = order.len();
    let mut best: Option<(u64, Vec<usize>)> = None;
    for perm in (0..n).permutations(n) {
        // perm[x] = new label of x
        let mut inv = vec![0; n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let mut code = 0u64;
        for i in 0..n {
            for j in 0..n {
                code = (code << 1) | u64::from(order[inv[i]][inv[j]]);
            }
        }
        if best.as_ref().map_or(true, |(c, _)| code < *c) {
            best = Some((code, perm));
        }
    }
    best.unwrap_or((0, Vec::new()))
}

/// All posets on `n` elements up to isomorphism, in canonical form.
fn posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found = std::collections::BTreeMap::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let mut o = vec![vec![false; n]; n];
        for i in 0..n {
            o[i][i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                o[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (i + 1..n).all(|j| (j + 1..n).all(|k| !(o[i][j] && o[j][k]) || o[i][k]))
        });
        if !transitive {
            continue;
        }
        let (code, perm) = canonical(&o);
        found.entry(code).or_insert_with(|| {
            let mut inv = vec![0; n];
            for (x, &y) in perm.iter().enumerate() {
                inv[y] = x;
            }
            (0..n).map(|i| (0..n).map(|j| o[inv[i]][inv[j]]).collect()).collect()
        });
    }
    found.into_values().collect()
}

fn is_distributive(a: &FinAlgebra) -> bool {
    let n = a.size;
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| a.op2("meet", x, a.op2("join", y, z)) == a.op2("join", a.op2("meet", x, y), a.op2("meet", x, z)))
        })
    })
}

/// Every algebra of the tag with exactly `n` elements, pairwise non-isomorphic,
/// in a deterministic order. Vector spaces are indexed by size `p^d`.
pub fn enumerate_algebras(tag: VarietyTag, n: usize) -> Result<Vec<FinAlgebra>> {
    tag.check()?;
    let power_of = |base: usize, limit: usize| -> Result<Option<usize>> {
        if n > limit {
            return Err(Error::Bound(format!("{tag} enumeration is limited to {limit} elements")));
        }
        let mut k = 0;
        let mut m = 1;
        while m < n {
            m *= base;
            k += 1;
        }
        Ok((m == n).then_some(k))
    };
    let order_based = |filter: &dyn Fn(&FinAlgebra) -> bool| -> Result<Vec<FinAlgebra>> {
        if n > 6 {
            return Err(Error::Bound(format!("{tag} enumeration is limited to 6 elements")));
        }
        Ok(posets(n)
            .into_iter()
            .filter_map(|o| FinAlgebra::from_order(tag, &o).ok())
            .filter(|a| filter(a))
            .collect())
    };
    match tag {
        VarietyTag::Set => Ok(vec![FinAlgebra::set(n)]),
        VarietyTag::SetStar => Ok(if n == 0 { vec![] } else { vec![FinAlgebra::pointed(n, 0)] }),
        VarietyTag::Ba => Ok(power_of(2, 16)?.map(FinAlgebra::powerset_ba).into_iter().collect()),
        VarietyTag::Br => Ok(power_of(2, 16)?.map(FinAlgebra::powerset_br).into_iter().collect()),
        VarietyTag::Vect(p) => {
            let limit = (p as usize).pow(3);
            Ok(power_of(p as usize, limit)?.map(|d| FinAlgebra::vect_space(p, d)).into_iter().collect())
        }
        VarietyTag::Pos => {
            if n > 6 {
                return Err(Error::Bound("POS enumeration is limited to 6 elements".into()));
            }
            Ok(posets(n).into_iter().map(FinAlgebra::poset).collect())
        }
        VarietyTag::Jsl => {
            if n == 0 {
                return Ok(vec![FinAlgebra::build(VarietyTag::Jsl, 0, |_, _| 0)]);
            }
            order_based(&|_| true)
        }
        VarietyTag::Jsl0 | VarietyTag::Jsl01 => {
            if n == 0 {
                return Ok(Vec::new());
            }
            order_based(&|_| true)
        }
        VarietyTag::Dl01 => {
            if n == 0 {
                return Ok(Vec::new());
            }
            order_based(&is_distributive)
        }
    }
}

/// All algebras of the tag with at most `n` elements.
pub fn enumerate_up_to(tag: VarietyTag, n: usize) -> Result<Vec<FinAlgebra>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_algebras(tag, k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{are_isomorphic, validate_algebra};

    #[test]
    fn known_counts() {
        assert_eq!(enumerate_algebras(VarietyTag::Ba, 4).unwrap().len(), 1);
        assert_eq!(enumerate_algebras(VarietyTag::Set, 2).unwrap().len(), 1);
        // finite JSL0s are lattices; the only 3-element lattice is the chain
        assert_eq!(enumerate_algebras(VarietyTag::Jsl0, 3).unwrap().len(), 1);
        // without a zero, the 3-element chain and the V with a top
        assert_eq!(enumerate_algebras(VarietyTag::Jsl, 3).unwrap().len(), 2);
        let posets: Vec<usize> = (0..=5).map(|n| enumerate_algebras(VarietyTag::Pos, n).unwrap().len()).collect();
        assert_eq!(posets, vec![1, 1, 2, 5, 16, 63]);
        let lattices: Vec<usize> = (1..=6).map(|n| enumerate_algebras(VarietyTag::Jsl0, n).unwrap().len()).collect();
        assert_eq!(lattices, vec![1, 1, 1, 2, 5, 15]);
        let dls: Vec<usize> = (1..=6).map(|n| enumerate_algebras(VarietyTag::Dl01, n).unwrap().len()).collect();
        assert_eq!(dls, vec![1, 1, 1, 2, 3, 5]);
        assert!(enumerate_algebras(VarietyTag::Ba, 6).unwrap().is_empty());
    }

    #[test]
    fn outputs_validate_and_are_pairwise_distinct() {
        for tag in [VarietyTag::Jsl0, VarietyTag::Dl01, VarietyTag::Jsl, VarietyTag::Jsl01, VarietyTag::Pos] {
            for n in 0..=5 {
                let algs = enumerate_algebras(tag, n).unwrap();
                for a in &algs {
                    assert!(validate_algebra(a).unwrap().is_empty(), "{tag} {n}");
                }
                for (i, a) in algs.iter().enumerate() {
                    for b in &algs[i + 1..] {
                        assert!(are_isomorphic(a, b).unwrap().is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_stable() {
        assert_eq!(
            enumerate_algebras(VarietyTag::Dl01, 5).unwrap(),
            enumerate_algebras(VarietyTag::Dl01, 5).unwrap()
        );
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(enumerate_algebras(VarietyTag::Pos, 7).is_err());
        assert!(enumerate_algebras(VarietyTag::Ba, 32).is_err());
        assert!(enumerate_algebras(VarietyTag::Vect(2), 16).is_err());
    }
}
