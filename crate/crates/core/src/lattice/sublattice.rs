// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::linalg::{self, to_big};
use crate::lattice::Lattice;

/// A sublattice spanned by independent vectors of an ambient lattice.
#[derive(Debug, Clone)]
pub struct Sublattice {
    ambient: Arc<Lattice>,
    basis: Vec<Vec<i64>>,
}

/// Result of [`Sublattice::saturation`].
#[derive(Debug, Clone)]
pub struct Saturation {
    pub sublattice: Sublattice,
    /// `[sat(S) : S]`
    pub index: u64,
}

impl Sublattice {
    pub fn new(ambient: Arc<Lattice>, basis: Vec<Vec<i64>>) -> Result<Self> {
        let n = ambient.rank();
        for v in &basis {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if !basis.is_empty() && linalg::hnf(&to_big(&basis)).rank != basis.len() {
            return Err(Error::Dependent);
        }
        Ok(Self { ambient, basis })
    }

    pub fn full(ambient: Arc<Lattice>) -> Self {
        let n = ambient.rank();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { ambient, basis }
    }

    pub fn zero(ambient: Arc<Lattice>) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<Lattice> {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Restricted Gram matrix `B G B^T`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|v| self.basis.iter().map(|w| self.ambient.dot(v, w)).collect())
            .collect()
    }

    /// The sublattice as a lattice in its own right.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram())
    }

    /// `sat(S) = (S ⊗ Q) ∩ L`, returned unchanged when already saturated.
    pub fn saturation(&self) -> Saturation {
        if self.basis.is_empty() {
            return Saturation {
                sublattice: self.clone(),
                index: 1,
            };
        }
        let b = to_big(&self.basis);
        let index = linalg::snf(&b)
            .diag
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d.abs());
        let index = index.to_u64().expect("saturation index fits in u64");
        if index == 1 {
            return Saturation {
                sublattice: self.clone(),
                index,
            };
        }
        let n = self.ambient.rank();
        let kernel = linalg::right_kernel(&b, n);
        let sat = linalg::right_kernel(&kernel, n);
        let basis = linalg::to_i64(&sat).expect("saturated basis fits in i64");
        Saturation {
            sublattice: Self {
                ambient: self.ambient.clone(),
                basis,
            },
            index,
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation().index == 1
    }

    /// `{x in L : x.s = 0 for all s in S}`.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let n = self.ambient.rank();
        let rows: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|v| self.ambient.gram_times(v))
            .collect();
        let kernel = linalg::right_kernel(&to_big(&rows), n);
        Self {
            ambient: self.ambient.clone(),
            basis: linalg::to_i64(&kernel).expect("complement basis fits in i64"),
        }
    }

    /// Vectors of `S` orthogonal to every vector in `others` (ambient
    /// coordinates).
    pub fn perp_within(&self, others: &[Vec<i64>]) -> Result<Sublattice> {
        if self.basis.is_empty() {
            return Ok(self.clone());
        }
        // rows: others_j . b_i, unknowns: coefficients on the basis
        let mut rows = Vec::with_capacity(others.len());
        for o in others {
            if o.len() != self.ambient.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient.rank(),
                    got: o.len(),
                });
            }
            rows.push(
                self.basis
                    .iter()
                    .map(|b| self.ambient.dot(o, b))
                    .collect::<Vec<i64>>(),
            );
        }
        let coeffs = linalg::right_kernel(&to_big(&rows), self.rank());
        let coeffs = linalg::to_i64(&coeffs)?;
        let basis = coeffs.iter().map(|c| self.to_ambient(c)).collect();
        Sublattice::new(self.ambient.clone(), basis)
    }

    /// `S ∩ ker(g - id)` for an endomorphism given column-wise (images of the
    /// ambient basis are the columns of `map`).
    pub fn fixed_by(&self, map: &[Vec<i64>]) -> Result<Sublattice> {
        if self.basis.is_empty() {
            return Ok(self.clone());
        }
        let n = self.ambient.rank();
        // column j of the system: (g - id) b_j
        let images: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|b| {
                (0..n)
                    .map(|i| {
                        let gi: i64 = (0..n).map(|k| map[i][k] * b[k]).sum();
                        gi - b[i]
                    })
                    .collect()
            })
            .collect();
        let system = linalg::transpose(&images);
        let coeffs = linalg::right_kernel(&to_big(&system), self.rank());
        let coeffs = linalg::to_i64(&coeffs)?;
        let basis = coeffs.iter().map(|c| self.to_ambient(c)).collect();
        Sublattice::new(self.ambient.clone(), basis)
    }

    /// `sum c_i b_i`.
    pub fn to_ambient(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient.rank()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Rational coordinates of `v` on the basis, if `v` lies in `S ⊗ Q`.
    pub fn rational_coordinates(&self, v: &[i64]) -> Option<Vec<BigRational>> {
        if self.basis.is_empty() {
            return v.iter().all(|&x| x == 0).then(Vec::new);
        }
        let basis = linalg::to_rational(&self.basis);
        let x: Vec<BigRational> = v
            .iter()
            .map(|&a| BigRational::from_integer(a.into()))
            .collect();
        linalg::solve_left(&basis, &x)
    }

    /// Integer coordinates of `v` on the basis.
    pub fn coordinates(&self, v: &[i64]) -> Result<Vec<i64>> {
        let q = self.rational_coordinates(v).ok_or(Error::NotInSublattice)?;
        q.iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer()
                        .to_i64()
                        .ok_or(Error::Overflow("coordinates"))
                } else {
                    Err(Error::NotInSublattice)
                }
            })
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_ok()
    }

    /// Index `[S' : S]` of `S` in a saturated sublattice `S'` of the same
    /// rational span, or `None` when the spans differ.
    pub fn index_in(&self, outer: &Sublattice) -> Option<u64> {
        if self.rank() != outer.rank() {
            return None;
        }
        let mut rows = Vec::with_capacity(self.rank());
        for b in &self.basis {
            rows.push(outer.rational_coordinates(b)?);
        }
        let m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_integer()).collect())
            .collect();
        if rows.iter().flatten().any(|c| !c.is_integer()) {
            return None;
        }
        linalg::det(&m).abs().to_u64()
    }
}

impl PartialEq for Sublattice {
    /// Same ambient form and the same Z-span.
    fn eq(&self, other: &Self) -> bool {
        if self.ambient != other.ambient || self.rank() != other.rank() {
            return false;
        }
        if self.basis.is_empty() {
            return true;
        }
        let a = linalg::hnf(&to_big(&self.basis));
        let b = linalg::hnf(&to_big(&other.basis));
        a.h[..a.rank] == b.h[..b.rank]
    }
}
