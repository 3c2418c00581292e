// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::enumerate::{definite_vectors, DEFAULT_CANDIDATE_CAP};
use crate::lattice::{linalg, Lattice};

/// Rank bound for [`is_isometric_definite`].
pub const MAX_DEFINITE_ISOMETRY_RANK: usize = 12;

/// An integral map preserving the form: `map^T G_target map = G_source`.
///
/// Column `j` of `map` is the image of the `j`-th source basis vector in
/// target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    source: Lattice,
    target: Lattice,
    map: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn new(source: Lattice, target: Lattice, map: Vec<Vec<i64>>) -> Result<Self> {
        if map.len() != target.rank() {
            return Err(Error::DimensionMismatch {
                expected: target.rank(),
                got: map.len(),
            });
        }
        for row in &map {
            if row.len() != source.rank() {
                return Err(Error::DimensionMismatch {
                    expected: source.rank(),
                    got: row.len(),
                });
            }
        }
        let iso = Self {
            source,
            target,
            map,
        };
        if !iso.preserves_form() {
            return Err(Error::NotIsometry);
        }
        Ok(iso)
    }

    /// Isometry of a lattice onto itself.
    pub fn automorphism(lattice: Lattice, map: Vec<Vec<i64>>) -> Result<Self> {
        let iso = Self::new(lattice.clone(), lattice, map)?;
        let det = linalg::det(&linalg::to_big(&iso.map));
        if det.abs() != 1.into() {
            return Err(Error::NotIsometry);
        }
        Ok(iso)
    }

    pub fn identity(lattice: Lattice) -> Self {
        let n = lattice.rank();
        let map = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self {
            source: lattice.clone(),
            target: lattice,
            map,
        }
    }

    pub fn negation(lattice: Lattice) -> Self {
        let n = lattice.rank();
        let map = (0..n)
            .map(|i| (0..n).map(|j| -i64::from(i == j)).collect())
            .collect();
        Self {
            source: lattice.clone(),
            target: lattice,
            map,
        }
    }

    fn preserves_form(&self) -> bool {
        let n = self.source.rank();
        let cols: Vec<Vec<i64>> = (0..n).map(|j| self.column(j)).collect();
        (0..n).all(|i| {
            (i..n).all(|j| self.target.dot(&cols[i], &cols[j]) == self.source.gram()[i][j])
        })
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.map
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.map.iter().map(|row| row[j]).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.source.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.source.rank(),
                got: v.len(),
            });
        }
        Ok(self
            .map
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch {
                expected: self.source.rank(),
                got: other.target.rank(),
            });
        }
        let m = linalg::mul(&linalg::to_big(&self.map), &linalg::to_big(&other.map));
        Ok(Isometry {
            source: other.source.clone(),
            target: self.target.clone(),
            map: linalg::to_i64(&m)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .map
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    /// Smallest `k <= bound` with `self^k = id`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        if self.source != self.target {
            return None;
        }
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return Some(k);
            }
            power = self.compose(&power).ok()?;
        }
        None
    }

    /// Inverse of a bijective isometry.
    pub fn inverse(&self) -> Result<Isometry> {
        let inv =
            linalg::rational_inverse(&linalg::to_rational(&self.map)).ok_or(Error::NotIsometry)?;
        let map = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i64().ok_or(Error::Overflow("inverse"))
                        } else {
                            Err(Error::NotIsometry)
                        }
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Isometry::new(self.target.clone(), self.source.clone(), map)
    }
}

/// Search for an isometry `l -> m` of definite lattices.
///
/// Basis images are chosen among vectors of the right square and pruned by
/// pairings with the images already placed. The side with the smaller basis
/// norms is the one whose basis gets mapped; the witness is inverted when
/// needed so that it always runs `l -> m`.
pub fn is_isometric_definite(l: &Lattice, m: &Lattice) -> Result<Option<Isometry>> {
    for x in [l, m] {
        if !x.is_definite() {
            return Err(Error::NotDefinite);
        }
        if x.rank() > MAX_DEFINITE_ISOMETRY_RANK {
            return Err(Error::RankTooLarge(x.rank()));
        }
    }
    if l.invariants() != m.invariants() {
        return Ok(None);
    }
    if l.gram() == m.gram() {
        return Ok(Some(Isometry::identity(l.clone())));
    }
    let max_diag = |x: &Lattice| (0..x.rank()).map(|i| x.gram()[i][i].abs()).max();
    if max_diag(m) < max_diag(l) {
        return Ok(match embed_basis(m, l)? {
            Some(iso) => Some(iso.inverse()?),
            None => None,
        });
    }
    embed_basis(l, m)
}

/// Images of the basis of `source` inside `target` with matching Gram matrix.
fn embed_basis(source: &Lattice, target: &Lattice) -> Result<Option<Isometry>> {
    let n = source.rank();
    let g = source.gram();
    let sign = if target.signature().positive > 0 {
        1
    } else {
        -1
    };
    let mut by_norm: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for i in 0..n {
        let norm = g[i][i];
        if let std::collections::btree_map::Entry::Vacant(e) = by_norm.entry(norm) {
            let mut vs = definite_vectors(target, sign * norm, true, DEFAULT_CANDIDATE_CAP)?;
            vs.sort();
            e.insert(vs);
        }
    }
    // place connected vertices early so pairings prune the search
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let links = order.iter().filter(|&&j| g[i][j] != 0).count();
                (
                    links,
                    std::cmp::Reverse(by_norm[&g[i][i]].len()),
                    std::cmp::Reverse(i),
                )
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    let mut images: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut budget: u64 = DEFAULT_CANDIDATE_CAP;
    if !backtrack(
        source,
        target,
        &order,
        0,
        &by_norm,
        &mut images,
        &mut budget,
    )? {
        return Ok(None);
    }
    let cols: Vec<Vec<i64>> = images.into_iter().map(|c| c.expect("placed")).collect();
    let map = linalg::transpose(&cols);
    Isometry::new(source.clone(), target.clone(), map).map(Some)
}

fn backtrack(
    source: &Lattice,
    target: &Lattice,
    order: &[usize],
    depth: usize,
    by_norm: &BTreeMap<i64, Vec<Vec<i64>>>,
    images: &mut Vec<Option<Vec<i64>>>,
    budget: &mut u64,
) -> Result<bool> {
    if depth == order.len() {
        return Ok(true);
    }
    let i = order[depth];
    let g = source.gram();
    for cand in &by_norm[&g[i][i]] {
        if *budget == 0 {
            return Err(Error::BudgetExceeded(DEFAULT_CANDIDATE_CAP));
        }
        *budget -= 1;
        let consistent = order[..depth].iter().all(|&j| {
            let img = images[j].as_ref().expect("placed before");
            target.dot(cand, img) == g[i][j]
        });
        if !consistent {
            continue;
        }
        images[i] = Some(cand.clone());
        if backtrack(source, target, order, depth + 1, by_norm, images, budget)? {
            return Ok(true);
        }
        images[i] = None;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn identical_lattices_give_identity() {
        let e = standard("E8(-2)").unwrap();
        let w = is_isometric_definite(&e, &e).unwrap().unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn e8_is_not_d8() {
        let e = standard("E8(-2)").unwrap();
        let d = standard("D8(-2)").unwrap();
        assert_eq!(is_isometric_definite(&e, &d).unwrap(), None);
    }

    #[test]
    fn two_squares_is_not_a2() {
        let a = standard("[2] + [2]").unwrap();
        let b = standard("A2").unwrap();
        assert_eq!(is_isometric_definite(&a, &b).unwrap(), None);
    }

    #[test]
    fn rebased_e8_found() {
        // E8 in the basis b_j + b_{j+1}, b_8
        let e = standard("E8").unwrap();
        let mut change = vec![vec![0i64; 8]; 8];
        for j in 0..8 {
            change[j][j] = 1;
            if j + 1 < 8 {
                change[j + 1][j] = 1;
            }
        }
        let cols_v: Vec<Vec<i64>> = (0..8)
            .map(|j| change.iter().map(|r| r[j]).collect())
            .collect();
        let gram: Vec<Vec<i64>> = cols_v
            .iter()
            .map(|a| cols_v.iter().map(|b| e.dot(a, b)).collect())
            .collect();
        let other = Lattice::new(gram).unwrap();
        let w = is_isometric_definite(&other, &e).unwrap().unwrap();
        assert_eq!(w.source(), &other);
        assert_eq!(w.target(), &e);
    }

    #[test]
    fn indefinite_rejected() {
        let u = standard("U").unwrap();
        assert_eq!(is_isometric_definite(&u, &u), Err(Error::NotDefinite));
    }

    #[test]
    fn rank_bound() {
        let big = standard("E8 + A6").unwrap();
        assert_eq!(
            is_isometric_definite(&big, &big),
            Err(Error::RankTooLarge(14))
        );
    }

    #[test]
    fn order_of_negation() {
        let n = Isometry::negation(standard("A2").unwrap());
        assert_eq!(n.order(10), Some(2));
        assert_eq!(
            Isometry::identity(standard("A2").unwrap()).order(10),
            Some(1)
        );
    }

    #[test]
    fn non_isometry_rejected() {
        let a = standard("A2").unwrap();
        assert_eq!(
            Isometry::automorphism(a, vec![vec![1, 1], vec![0, 1]]),
            Err(Error::NotIsometry)
        );
    }
}
