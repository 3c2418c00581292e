// SPDX-License-Identifier: Apache-2.0

//! Mukai vectors `(r, l, s)` over a K3 Néron–Severi lattice.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{linalg, Lattice};

#[derive(Debug, Clone)]
pub struct MukaiVector {
    pub r: i64,
    pub l: Vec<i64>,
    pub s: i64,
    ns: Arc<Lattice>,
}

impl PartialEq for MukaiVector {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.l == other.l && self.s == other.s && self.ns == other.ns
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.l.iter().map(i64::to_string).collect();
        write!(f, "({}, [{}], {})", self.r, l.join(" "), self.s)
    }
}

impl MukaiVector {
    pub fn new(ns: Arc<Lattice>, r: i64, l: Vec<i64>, s: i64) -> Result<Self> {
        if l.len() != ns.rank() {
            return Err(Error::DimensionMismatch {
                expected: ns.rank(),
                got: l.len(),
            });
        }
        Ok(Self { r, l, s, ns })
    }

    /// `(r, c1, c1^2/2 - c2 + r)`.
    pub fn of_sheaf(ns: Arc<Lattice>, r: i64, c1: Vec<i64>, c2: i64) -> Result<Self> {
        let sq = ns.square(&c1)?;
        if sq % 2 != 0 {
            return Err(Error::OddSquare(sq));
        }
        Self::new(ns, r, c1, sq / 2 - c2 + r)
    }

    pub fn ns(&self) -> &Arc<Lattice> {
        &self.ns
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0 && self.l.iter().all(|&x| x == 0)
    }

    /// `v^2 = l^2 - 2 r s`.
    pub fn square(&self) -> i64 {
        self.ns.dot(&self.l, &self.l) - 2 * self.r * self.s
    }

    /// Coordinates in [`mukai_lattice`]: `r`, then `l`, then `s`.
    pub fn coordinates(&self) -> Vec<i64> {
        std::iter::once(self.r)
            .chain(self.l.iter().copied())
            .chain(std::iter::once(self.s))
            .collect()
    }

    /// `v^2 >= 2` and one of: `r > 0`; `r = 0`, `l != 0` effective;
    /// `r = l = 0`, `s > 0`.
    pub fn is_positive(&self, effective: impl Fn(&[i64]) -> bool) -> bool {
        if self.is_zero() || self.square() < 2 {
            return false;
        }
        let l_zero = self.l.iter().all(|&x| x == 0);
        self.r > 0
            || (self.r == 0 && !l_zero && effective(&self.l))
            || (self.r == 0 && l_zero && self.s > 0)
    }

    /// `v = 2w` with `w` primitive, `w^2 = 2`, and `l_w` effective when
    /// `r_w = 0`. Genericity of the polarization is the caller's assertion.
    pub fn is_ols(&self, effective: impl Fn(&[i64]) -> bool) -> bool {
        let coords = self.coordinates();
        if self.is_zero() || coords.iter().any(|x| x % 2 != 0) {
            return false;
        }
        let w = MukaiVector {
            r: self.r / 2,
            l: self.l.iter().map(|x| x / 2).collect(),
            s: self.s / 2,
            ns: self.ns.clone(),
        };
        if linalg::gcd_i64(&w.coordinates()) != 1 || w.square() != 2 || w.r < 0 {
            return false;
        }
        w.r != 0 || effective(&w.l)
    }
}

/// `-r1 s2 + l1.l2 - r2 s1`.
pub fn mukai_pair(v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
    if v.ns != w.ns {
        return Err(Error::MismatchedNSLattice);
    }
    Ok(-v.r * w.s + v.ns.dot(&v.l, &w.l) - w.r * v.s)
}

/// `U ⊕ NS` in the coordinates of [`MukaiVector::coordinates`], with
/// `(1,0,0).(0,0,1) = -1`.
pub fn mukai_lattice(ns: &Lattice) -> Result<Lattice> {
    let n = ns.rank() + 2;
    let mut g = vec![vec![0i64; n]; n];
    g[0][n - 1] = -1;
    g[n - 1][0] = -1;
    for (i, row) in ns.gram().iter().enumerate() {
        g[i + 1][1..n - 1].copy_from_slice(row);
    }
    Lattice::new(g)
}
