//! Arithmetic in the prime fields GF(2), GF(3) and GF(5).

use crate::error::{Error, Result};

pub const PRIMES: [u8; 3] = [2, 3, 5];

pub fn check_prime(p: u8) -> Result<()> {
    if PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("GF({p}) is not supported; use 2, 3 or 5")))
    }
}

#[inline]
pub fn add(p: u8, x: u8, y: u8) -> u8 {
    (x + y) % p
}

#[inline]
pub fn sub(p: u8, x: u8, y: u8) -> u8 {
    (x + p - y) % p
}

#[inline]
pub fn mul(p: u8, x: u8, y: u8) -> u8 {
    ((x as u16 * y as u16) % p as u16) as u8
}

pub fn inv(p: u8, x: u8) -> u8 {
    debug_assert!(x % p != 0);
    (1..p).find(|&y| mul(p, x, y) == 1).expect("nonzero element of a prime field")
}

/// Encode a coordinate vector (little endian, base p) as a carrier index.
pub fn encode(p: u8, coords: &[u8]) -> usize {
    coords.iter().rev().fold(0, |acc, &c| acc * p as usize + c as usize)
}

pub fn decode(p: u8, dim: usize, mut index: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(dim);
    for _ in 0..dim {
        out.push((index % p as usize) as u8);
        index /= p as usize;
    }
    out
}

pub fn dot(p: u8, x: &[u8], y: &[u8]) -> u8 {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| add(p, acc, mul(p, a, b)))
}

/// Dense matrix over GF(p), stored row-major.
pub type Matrix = Vec<Vec<u8>>;

pub fn mat_vec(p: u8, m: &Matrix, v: &[u8]) -> Vec<u8> {
    m.iter().map(|row| dot(p, row, v)).collect()
}

pub fn mat_mul(p: u8, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| add(p, acc, mul(p, row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect()
}

pub fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn mat_add(p: u8, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| add(p, x, y)).collect())
        .collect()
}

pub fn mat_scale(p: u8, c: u8, a: &Matrix) -> Matrix {
    a.iter().map(|r| r.iter().map(|&x| mul(p, c, x)).collect()).collect()
}

/// Incremental row-echelon basis used for span computations.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u8,
    /// (pivot column, normalized row)
    rows: Vec<(usize, Vec<u8>)>,
}

impl Echelon {
    pub fn new(p: u8) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; returns the residue.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = sub(p, *x, mul(p, c, r));
                }
            }
        }
        v
    }

    /// Insert `v`; returns true if it was independent of the basis.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let p = self.p;
        let r = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(p, r[pivot]);
        let r: Vec<u8> = r.iter().map(|&x| mul(p, s, x)).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = sub(p, *x, mul(p, c, y));
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Solve `x` with `sum_i x_i * vecs[i] = target`, if a solution exists.
pub fn solve_combination(p: u8, vecs: &[Vec<u8>], target: &[u8]) -> Option<Vec<u8>> {
    let k = vecs.len();
    let n = target.len();
    // Augmented system: columns are the vectors.
    let mut m: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut row: Vec<u8> = vecs.iter().map(|v| v[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let s = inv(p, m[r][c]);
        for x in m[r].iter_mut() {
            *x = mul(p, s, *x);
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x = sub(p, *x, mul(p, f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    if m[r..].iter().any(|row| row[k] != 0) {
        return None;
    }
    let mut x = vec![0; k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_round_trips() {
        for p in PRIMES {
            for i in 0..(p as usize).pow(3) {
                assert_eq!(encode(p, &decode(p, 3, i)), i);
            }
        }
    }

    #[test]
    fn inverses() {
        for p in PRIMES {
            for x in 1..p {
                assert_eq!(mul(p, x, inv(p, x)), 1);
            }
        }
    }

    #[test]
    fn solve_finds_combination() {
        let vecs = vec![vec![1, 0, 2], vec![0, 1, 1]];
        let target = vec![2, 1, 2];
        let x = solve_combination(3, &vecs, &target).unwrap();
        let got: Vec<u8> = (0..3)
            .map(|i| add(3, mul(3, x[0], vecs[0][i]), mul(3, x[1], vecs[1][i])))
            .collect();
        assert_eq!(got, target);
        assert!(solve_combination(2, &[vec![1, 1]], &[1, 0]).is_none());
    }
}
