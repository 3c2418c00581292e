// SPDX-License-Identifier: Apache-2.0

//! Integral lattices given by Gram matrices.

pub mod enumerate;
pub mod isometry;
pub mod linalg;
pub mod standard;
pub mod sublattice;

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

pub use enumerate::{enumerate_vectors, VectorQuery};
pub use isometry::{is_isometric_definite, Isometry};
pub use standard::standard;
pub use sublattice::{Saturation, Sublattice};

/// Counts of positive and negative directions of a non-degenerate form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize) -> Self {
        Self { positive, negative }
    }

    pub fn is_definite(&self) -> bool {
        self.positive == 0 || self.negative == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

/// A free finite-rank Z-module with a non-degenerate symmetric integral form.
#[derive(Debug, Clone)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    name: Option<String>,
    det: i64,
    even: bool,
    signature: Signature,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for Lattice {}

/// `(rank, determinant, parity, signature)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    pub det: i64,
    pub even: bool,
    pub signature: Signature,
}

impl Lattice {
    /// Validates symmetry and non-degeneracy, caching parity, determinant and
    /// signature.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    len: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let det = linalg::det(&linalg::to_big(&gram));
        if det == 0.into() {
            return Err(Error::Degenerate);
        }
        let det = det.to_i64().ok_or(Error::Overflow("determinant"))?;
        let (positive, negative, _) = linalg::inertia(&linalg::to_rational(&gram));
        let even = (0..n).all(|i| gram[i][i] % 2 == 0);
        Ok(Self {
            gram,
            name: None,
            det,
            even,
            signature: Signature { positive, negative },
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == 1
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_definite(&self) -> bool {
        self.signature.is_definite()
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            rank: self.rank(),
            det: self.det,
            even: self.even,
            signature: self.signature,
        }
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `gram * v`.
    pub fn gram_times(&self, v: &[i64]) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum::<i128>() as i64
            })
            .collect()
    }

    /// `v^T gram w` without a length check.
    pub(crate) fn dot(&self, v: &[i64], w: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut inner: i128 = 0;
            for (j, &wj) in w.iter().enumerate() {
                inner += row[j] as i128 * wj as i128;
            }
            acc += vi as i128 * inner;
        }
        acc as i64
    }

    pub fn pair(&self, v: &[i64], w: &[i64]) -> Result<i64> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(self.dot(v, w))
    }

    pub fn square(&self, v: &[i64]) -> Result<i64> {
        self.pair(v, v)
    }

    /// `gcd { v.x : x in L }`, read off from the row `gram * v`.
    pub fn divisibility(&self, v: &[i64]) -> Result<i64> {
        self.check_len(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        Ok(linalg::gcd_i64(&self.gram_times(v)))
    }

    pub fn is_primitive(&self, v: &[i64]) -> Result<bool> {
        self.check_len(v)?;
        is_primitive(v)
    }

    /// `L(n)`: the same module with the form multiplied by `n`.
    pub fn twist(&self, n: i64) -> Result<Lattice> {
        let gram = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| x.checked_mul(n).ok_or(Error::Overflow("twist")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(gram)
    }

    /// Orthogonal direct sum, blocks in the given order.
    pub fn direct_sum(blocks: &[&Lattice]) -> Result<Lattice> {
        let n: usize = blocks.iter().map(|b| b.rank()).sum();
        let mut gram = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for b in blocks {
            for (i, row) in b.gram.iter().enumerate() {
                gram[offset + i][offset..offset + b.rank()].copy_from_slice(row);
            }
            offset += b.rank();
        }
        Lattice::new(gram)
    }

    /// True iff every pairing is even, i.e. every vector has even divisibility.
    pub fn all_pairings_even(&self) -> bool {
        self.gram.iter().flatten().all(|x| x % 2 == 0)
    }
}

/// `gcd` of the coordinates is 1.
pub fn is_primitive(v: &[i64]) -> Result<bool> {
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    Ok(linalg::gcd_i64(v) == 1)
}

/// Lexicographically least between `v` and `-v`: first nonzero entry positive.
pub(crate) fn sign_normalized(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&y| -y).collect(),
        _ => v.to_vec(),
    }
}

pub(crate) fn lcm_i64(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(1i64, |acc, x| acc.lcm(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Lattice {
        Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn delta() -> Lattice {
        Lattice::new(vec![vec![-6, 3], vec![3, -2]]).unwrap()
    }

    #[test]
    fn construction_examples() {
        let u = u();
        assert!(u.is_even());
        assert_eq!(u.det(), -1);
        let d = delta();
        assert!(d.is_even());
        assert_eq!(d.det(), 3);
        assert_eq!(
            Lattice::new(vec![vec![1, 1], vec![1, 1]]),
            Err(Error::Degenerate)
        );
        assert_eq!(
            Lattice::new(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric(0, 1))
        );
    }

    #[test]
    fn invariants_of_u() {
        let inv = u().invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.det, -1);
        assert!(inv.even);
        assert_eq!(inv.signature, Signature::new(1, 1));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(u().pair(&[1, 0], &[0, 1]), Ok(1));
        assert_eq!(delta().square(&[1, 0]), Ok(-6));
        assert_eq!(delta().pair(&[0, 0], &[4, -7]), Ok(0));
        assert_eq!(
            u().pair(&[1, 0, 0], &[0, 1]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(u().divisibility(&[1, 0]), Ok(1));
        assert_eq!(delta().divisibility(&[1, 0]), Ok(3));
        assert_eq!(u().divisibility(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(is_primitive(&[2, 4]), Ok(false));
        assert_eq!(is_primitive(&[1, 0]), Ok(true));
        assert_eq!(is_primitive(&[3, 5]), Ok(true));
        assert_eq!(is_primitive(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let s = Lattice::direct_sum(&[&u(), &delta()]).unwrap();
        assert_eq!(s.rank(), 4);
        assert_eq!(s.pair(&[1, 0, 0, 0], &[0, 0, 1, 0]), Ok(0));
        assert_eq!(s.det(), -3);
    }
}
