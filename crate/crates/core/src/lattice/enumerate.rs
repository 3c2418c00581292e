// SPDX-License-Identifier: Apache-2.0

//! Bounded vector enumeration.
//!
//! Indefinite lattices are searched inside a coordinate box; the result is
//! only complete for that box. Definite lattices with a target square use
//! Fincke–Pohst enumeration with exact rational bounds, which finds every
//! vector of that square regardless of the box.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, linalg, Lattice};

/// Default cap on the number of candidate vectors visited by a search.
pub const DEFAULT_CANDIDATE_CAP: u64 = 50_000_000;

/// Constraints for [`enumerate_vectors`]. The zero vector is never returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorQuery {
    pub square: Option<i64>,
    pub divisibility: Option<i64>,
    pub primitive: Option<bool>,
    pub radius: u32,
    pub cap: u64,
}

impl Default for VectorQuery {
    fn default() -> Self {
        Self {
            square: None,
            divisibility: None,
            primitive: None,
            radius: 3,
            cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

impl VectorQuery {
    pub fn with_square(mut self, square: i64) -> Self {
        self.square = Some(square);
        self
    }

    pub fn with_divisibility(mut self, d: i64) -> Self {
        self.divisibility = Some(d);
        self
    }

    pub fn primitive(mut self, flag: bool) -> Self {
        self.primitive = Some(flag);
        self
    }

    pub fn radius(mut self, radius: u32) -> Self {
        self.radius = radius;
        self
    }

    fn accepts(&self, l: &Lattice, v: &[i64]) -> bool {
        if let Some(sq) = self.square {
            if l.dot(v, v) != sq {
                return false;
            }
        }
        if let Some(p) = self.primitive {
            if is_primitive(v).unwrap_or(false) != p {
                return false;
            }
        }
        if let Some(d) = self.divisibility {
            if linalg::gcd_i64(&l.gram_times(v)) != d {
                return false;
            }
        }
        true
    }
}

/// All nonzero vectors satisfying `query`, sorted lexicographically.
///
/// For a definite lattice with a square constraint the search is the exact
/// norm enumeration and `radius` is ignored.
pub fn enumerate_vectors(l: &Lattice, query: &VectorQuery) -> Result<Vec<Vec<i64>>> {
    if query.radius == 0 {
        return Err(Error::Parse {
            column: 0,
            message: "radius must be at least 1".into(),
        });
    }
    let mut out = match query.square {
        Some(sq) if l.is_definite() => {
            let sign = if l.signature().positive > 0 { 1 } else { -1 };
            if sq == 0 || sq.signum() != sign {
                Vec::new()
            } else {
                definite_vectors(l, sq.abs(), true, query.cap)?
                    .into_iter()
                    .filter(|v| query.accepts(l, v))
                    .collect()
            }
        }
        _ => box_vectors(l, query)?,
    };
    out.sort();
    Ok(out)
}

fn box_vectors(l: &Lattice, query: &VectorQuery) -> Result<Vec<Vec<i64>>> {
    let n = l.rank();
    let r = query.radius as i64;
    let side = (2 * r + 1) as u64;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(side));
    match total {
        Some(t) if t <= query.cap => {}
        _ => return Err(Error::BudgetExceeded(total.unwrap_or(u64::MAX))),
    }
    let mut out = Vec::new();
    let mut v = vec![-r; n];
    loop {
        if v.iter().any(|&x| x != 0) && query.accepts(l, &v) {
            out.push(v.clone());
        }
        // odometer in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if v[i] < r {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = -r;
                }
                break;
            }
        }
    }
}

/// Nonzero vectors of a definite lattice with `|v^2| == norm` (`exact`) or
/// `0 < |v^2| <= norm`, in no particular order.
pub fn definite_vectors(l: &Lattice, norm: i64, exact: bool, cap: u64) -> Result<Vec<Vec<i64>>> {
    if !l.is_definite() {
        return Err(Error::NotDefinite);
    }
    let sign: i64 = if l.signature().positive > 0 { 1 } else { -1 };
    let n = l.rank();
    let q = quadratic_coefficients(l, sign);
    let mut search = Search {
        n,
        q: &q,
        x: vec![0; n],
        out: Vec::new(),
        visited: 0,
        cap,
        lattice: l,
        sign,
        norm,
        exact,
    };
    search.descend(n, BigRational::from_integer(norm.into()))?;
    Ok(search.out)
}

/// Coefficients with `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2` for the
/// positive definite form `sign * gram`.
fn quadratic_coefficients(l: &Lattice, sign: i64) -> Vec<Vec<BigRational>> {
    let n = l.rank();
    let mut a: Vec<Vec<BigRational>> = l
        .gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(sign * x)))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            a[j][i] = a[i][j].clone();
            a[i][j] = &a[i][j] / &a[i][i];
        }
        for k in i + 1..n {
            for m in k..n {
                let d = &a[k][i] * &a[i][m];
                a[k][m] -= d;
            }
        }
    }
    a
}

struct Search<'a> {
    n: usize,
    q: &'a [Vec<BigRational>],
    x: Vec<i64>,
    out: Vec<Vec<i64>>,
    visited: u64,
    cap: u64,
    lattice: &'a Lattice,
    sign: i64,
    norm: i64,
    exact: bool,
}

impl Search<'_> {
    /// Fill coordinate `level - 1` given the coordinates above it.
    fn descend(&mut self, level: usize, remaining: BigRational) -> Result<()> {
        if level == 0 {
            if self.x.iter().all(|&c| c == 0) {
                return Ok(());
            }
            let sq = self.sign * self.lattice.dot(&self.x, &self.x);
            if (self.exact && sq == self.norm) || (!self.exact && sq > 0 && sq <= self.norm) {
                self.out.push(self.x.clone());
            }
            return Ok(());
        }
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::BudgetExceeded(self.visited));
        }
        let i = level - 1;
        let qii = &self.q[i][i];
        let mut center = BigRational::zero();
        for j in i + 1..self.n {
            if self.x[j] != 0 {
                center -= &self.q[i][j] * BigRational::from_integer(self.x[j].into());
            }
        }
        // integers t with qii (t - center)^2 <= remaining
        let fits = |t: i64| -> Option<BigRational> {
            let d = BigRational::from_integer(t.into()) - &center;
            let used = qii * &d * &d;
            (used <= remaining).then(|| &remaining - used)
        };
        let c = center.to_f64().unwrap_or(0.0);
        let half = (remaining.to_f64().unwrap_or(0.0) / qii.to_f64().unwrap_or(1.0))
            .max(0.0)
            .sqrt();
        let lo = (c - half).floor() as i64 - 1;
        let hi = (c + half).ceil() as i64 + 1;
        for t in lo..=hi {
            if let Some(rest) = fits(t) {
                self.x[i] = t;
                self.descend(i, rest)?;
            }
        }
        self.x[i] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn e8_minus_two_has_240_vectors_of_square_minus_four() {
        let l = standard("E8(-2)").unwrap();
        let q = VectorQuery::default().with_square(-4).radius(1);
        let v = enumerate_vectors(&l, &q).unwrap();
        assert_eq!(v.len(), 240);
    }

    #[test]
    fn isotropic_primitive_vectors_of_u() {
        let l = standard("U").unwrap();
        let q = VectorQuery::default()
            .with_square(0)
            .primitive(true)
            .radius(1);
        let v = enumerate_vectors(&l, &q).unwrap();
        assert_eq!(v, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn a2_minus_one_square_minus_six_div_three() {
        let l = standard("A2(-1)").unwrap();
        let q = VectorQuery::default()
            .with_square(-6)
            .with_divisibility(3)
            .radius(2);
        let v = enumerate_vectors(&l, &q).unwrap();
        assert!(v.contains(&vec![1, -1]));
        assert!(v.contains(&vec![-1, 1]));
        // the six vectors of norm 6 in A2 are exactly 3 * (minimal dual vectors)
        assert_eq!(v.len(), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let l = standard("U^3 + E8(-1)^2 + A2(-1)").unwrap();
        let q = VectorQuery::default().with_divisibility(3).radius(1);
        assert!(matches!(
            enumerate_vectors(&l, &q),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn short_vectors_of_a2() {
        let l = standard("A2").unwrap();
        let v = definite_vectors(&l, 2, false, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(v.len(), 6);
        let v = definite_vectors(&l, 6, false, DEFAULT_CANDIDATE_CAP).unwrap();
        // norms 2 (6 vectors) and 6 (6 vectors)
        assert_eq!(v.len(), 12);
    }

    #[test]
    fn definite_enumeration_rejects_indefinite() {
        let l = standard("U").unwrap();
        assert_eq!(
            definite_vectors(&l, 2, true, DEFAULT_CANDIDATE_CAP),
            Err(Error::NotDefinite)
        );
    }
}
