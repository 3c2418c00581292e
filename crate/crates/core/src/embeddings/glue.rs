// SPDX-License-Identifier: Apache-2.0

//! Finite-index overlattices of `S ⊕ K` from isotropic glue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{linalg, Isometry, Lattice};

/// An overlattice `M ⊇ S ⊕ K` with its basis in rational `S ⊕ K`
/// coordinates.
#[derive(Debug, Clone)]
pub struct GlueData {
    pub s: Lattice,
    pub k: Lattice,
    /// Glue generators in `(S ⊕ K) ⊗ Q`, coordinates of `S` first.
    pub glue: Vec<Vec<BigRational>>,
    pub overlattice: Lattice,
    /// Row `i` is the `i`-th basis vector of `M` in `S ⊕ K` coordinates.
    pub basis: Vec<Vec<BigRational>>,
    /// `[M : S ⊕ K]`
    pub index: u64,
}

impl GlueData {
    /// Coordinates in `M` of a vector of `(S ⊕ K) ⊗ Q`, if it lies in `M`.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<i64>> {
        let c = linalg::solve_left(&self.basis, v)?;
        c.iter()
            .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
            .collect()
    }

    /// Image of `S ⊕ K` in `M`: row `i` is the `i`-th basis vector of `S ⊕ K`
    /// in `M` coordinates.
    pub fn inclusion(&self) -> Vec<Vec<i64>> {
        let n = self.basis.len();
        (0..n)
            .map(|i| {
                let e: Vec<BigRational> = (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect();
                self.coordinates(&e).expect("S ⊕ K lies in its overlattice")
            })
            .collect()
    }
}

fn pair_q(g: &[Vec<BigRational>], x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                acc += xi * &g[i][j] * yj;
            }
        }
    }
    acc
}

/// The overlattice of `S ⊕ K` generated by the glue vectors.
///
/// Every glue vector must pair integrally with `S ⊕ K` (`NotInDual`) and the
/// glue must be isotropic: `q ∈ 2Z` on generators and `b ∈ Z` on pairs.
pub fn overlattice_from_glue(
    s: &Lattice,
    k: &Lattice,
    glue: &[Vec<BigRational>],
) -> Result<GlueData> {
    let sum = Lattice::direct_sum(&[s, k])?;
    let n = sum.rank();
    let g = linalg::to_rational(sum.gram());
    for (i, v) in glue.iter().enumerate() {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let row: Vec<BigRational> = (0..n)
            .map(|a| (0..n).map(|b| &g[a][b] * &v[b]).sum())
            .collect();
        if row.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotInDual(i));
        }
    }
    let two = BigInt::from(2);
    for (i, v) in glue.iter().enumerate() {
        let q = pair_q(&g, v, v);
        if !q.is_integer() || !q.to_integer().is_multiple_of(&two) {
            return Err(Error::NotIsotropic(format!(
                "q(glue {i}) = {q} is not in 2Z"
            )));
        }
        for (j, w) in glue.iter().enumerate().skip(i + 1) {
            let b = pair_q(&g, v, w);
            if !b.is_integer() {
                return Err(Error::NotIsotropic(format!(
                    "b(glue {i}, glue {j}) = {b} is not in Z"
                )));
            }
        }
    }
    let den = glue
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { den.clone() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for v in glue {
        rows.push(v.iter().map(|x| (x * &den).to_integer()).collect());
    }
    let h = linalg::hnf(&rows);
    let scaled: Vec<Vec<BigInt>> = h.h[..n].to_vec();
    let det_scaled = linalg::det(&scaled).abs();
    let index = num_traits::pow(den.clone(), n) / &det_scaled;
    let index = index.to_u64().ok_or(Error::Overflow("glue index"))?;
    let basis: Vec<Vec<BigRational>> = scaled
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::new(x.clone(), den.clone()))
                .collect()
        })
        .collect();
    let gram = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| {
                    pair_q(&g, x, y)
                        .to_integer()
                        .to_i64()
                        .ok_or(Error::Overflow("overlattice gram"))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GlueData {
        s: s.clone(),
        k: k.clone(),
        glue: glue.to_vec(),
        overlattice: Lattice::new(gram)?,
        basis,
        index,
    })
}

/// Extend `phi_s ⊕ phi_k : S ⊕ K -> S2 ⊕ K2` to `β : M -> M2`.
///
/// `GlueMismatch(i)` names the first glue generator of `m` whose image leaves
/// `m2`; when every image lands in `m2` but the image glue is smaller, it
/// names the first generator of `m2` that is not hit.
pub fn extend_isometry(
    m: &GlueData,
    m2: &GlueData,
    phi_s: &Isometry,
    phi_k: &Isometry,
) -> Result<Isometry> {
    if phi_s.source() != &m.s
        || phi_k.source() != &m.k
        || phi_s.target() != &m2.s
        || phi_k.target() != &m2.k
    {
        return Err(Error::DimensionMismatch {
            expected: m.s.rank() + m.k.rank(),
            got: phi_s.source().rank() + phi_k.source().rank(),
        });
    }
    let (rs, rk) = (m.s.rank(), m.k.rank());
    let (rs2, rk2) = (m2.s.rank(), m2.k.rank());
    let n = rs + rk;
    let n2 = rs2 + rk2;
    // block diagonal map on S ⊕ K, column convention
    let mut phi = vec![vec![BigRational::zero(); n]; n2];
    for i in 0..rs2 {
        for j in 0..rs {
            phi[i][j] = BigRational::from_integer(phi_s.matrix()[i][j].into());
        }
    }
    for i in 0..rk2 {
        for j in 0..rk {
            phi[rs2 + i][rs + j] = BigRational::from_integer(phi_k.matrix()[i][j].into());
        }
    }
    let apply = |v: &[BigRational]| -> Vec<BigRational> {
        phi.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    };
    for (i, gl) in m.glue.iter().enumerate() {
        if m2.coordinates(&apply(gl)).is_none() {
            return Err(Error::GlueMismatch(i));
        }
    }
    let columns: Vec<Vec<i64>> = m
        .basis
        .iter()
        .map(|b| m2.coordinates(&apply(b)).ok_or(Error::GlueMismatch(0)))
        .collect::<Result<_>>()?;
    let map = linalg::transpose(&columns);
    let det = linalg::det(&linalg::to_big(&map));
    if det.abs() != BigInt::one() {
        // locate a glue generator of m2 outside the image
        let inverse =
            linalg::rational_inverse(&linalg::to_rational(&map)).ok_or(Error::NotIsometry)?;
        for (i, gl) in m2.glue.iter().enumerate() {
            let c = m2.coordinates(gl).expect("glue lies in its overlattice");
            let pre: Vec<BigRational> = inverse
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&c)
                        .map(|(a, &b)| a * BigRational::from_integer(b.into()))
                        .sum()
                })
                .collect();
            if pre.iter().any(|x| !x.is_integer()) {
                return Err(Error::GlueMismatch(i));
            }
        }
        return Err(Error::NotIsometry);
    }
    Isometry::new(m.overlattice.clone(), m2.overlattice.clone(), map)
}
