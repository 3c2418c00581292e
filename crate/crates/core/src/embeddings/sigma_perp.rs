// SPDX-License-Identifier: Apache-2.0

//! The primitive embedding of `σ^⊥ ≅ U^3 ⊕ E8(-1)^2 ⊕ [-2]` into the Mukai
//! lattice `U^4 ⊕ E8(-1)^2`.

use std::sync::Arc;

use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use super::glue::overlattice_from_glue;
use crate::disc::discriminant_group;
use crate::error::{Error, Result};
use crate::lattice::{linalg, standard, Isometry, Lattice, Signature, Sublattice};

pub const SIGMA_PERP_EXPR: &str = "U^3 + E8(-1)^2 + [-2]";
pub const MUKAI_EXPR: &str = "U^4 + E8(-1)^2";

/// How the ambient unimodular lattice was realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingModel {
    /// Input in the standard basis; the ambient is `U^4 ⊕ E8(-1)^2` and the
    /// `[-2]` generator goes to `e - f` in the fourth `U`.
    Standard,
    /// Any other basis; the ambient is `σ^⊥ ⊕ [2]` glued along `(t*, w/2)`,
    /// an even unimodular lattice of signature (4,20), hence isometric to
    /// `U^4 ⊕ E8(-1)^2`.
    Glued,
}

#[derive(Debug, Clone)]
pub struct SigmaPerpEmbedding {
    pub source: Lattice,
    pub ambient: Arc<Lattice>,
    /// Row `i` is the image of the `i`-th basis vector of `source`.
    pub images: Vec<Vec<i64>>,
    /// Generator of the orthogonal complement of the image, `w^2 = 2`.
    pub w: Vec<i64>,
    pub model: EmbeddingModel,
}

/// Facts verified on an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub w_square: i64,
    pub image_saturated: bool,
    pub complement_rank: usize,
    /// `|ambient / (image ⊕ Zw)|`
    pub quotient_order: u64,
}

impl EmbeddingCheck {
    pub fn passes(&self) -> bool {
        self.w_square == 2
            && self.image_saturated
            && self.complement_rank == 1
            && self.quotient_order == 2
    }
}

pub fn canonical_sigma_perp_embedding(sigma_perp: &Lattice) -> Result<SigmaPerpEmbedding> {
    check_invariants(sigma_perp)?;
    let standard_form = standard(SIGMA_PERP_EXPR)?;
    if sigma_perp.gram() == standard_form.gram() {
        return Ok(standard_model(sigma_perp));
    }
    glued_model(sigma_perp)
}

fn check_invariants(l: &Lattice) -> Result<()> {
    let wrong = |m: String| Err(Error::WrongInvariants(m));
    if l.rank() != 23 {
        return wrong(format!("rank {} instead of 23", l.rank()));
    }
    if !l.is_even() {
        return wrong("lattice is odd".into());
    }
    if l.signature() != Signature::new(3, 20) {
        return wrong(format!("signature {} instead of (3,20)", l.signature()));
    }
    if l.det().abs() != 2 {
        return wrong(format!("|det| = {} instead of 2", l.det().abs()));
    }
    let a = discriminant_group(l)?;
    if a.q_value(0) != Rational64::new(3, 2) {
        return wrong(format!(
            "discriminant form q = {} instead of 3/2",
            a.q_value(0)
        ));
    }
    Ok(())
}

fn standard_model(source: &Lattice) -> SigmaPerpEmbedding {
    let ambient = Arc::new(standard(MUKAI_EXPR).expect("fixed expression"));
    let mut images = Vec::with_capacity(23);
    for i in 0..22 {
        let mut v = vec![0i64; 24];
        v[if i < 6 { i } else { i + 2 }] = 1;
        images.push(v);
    }
    let mut t = vec![0i64; 24];
    t[6] = 1;
    t[7] = -1;
    images.push(t);
    let mut w = vec![0i64; 24];
    w[6] = 1;
    w[7] = 1;
    SigmaPerpEmbedding {
        source: source.clone(),
        ambient,
        images,
        w,
        model: EmbeddingModel::Standard,
    }
}

fn glued_model(source: &Lattice) -> Result<SigmaPerpEmbedding> {
    let two = standard("[2]")?;
    let a = discriminant_group(source)?;
    let mut glue = a.lift(&[1])?;
    glue.push(BigRational::new(1.into(), 2.into()));
    let m = overlattice_from_glue(source, &two, &[glue])?;
    let mut inclusion = m.inclusion();
    let w = inclusion.pop().expect("rank 24");
    Ok(SigmaPerpEmbedding {
        source: source.clone(),
        ambient: Arc::new(m.overlattice.with_name(MUKAI_EXPR)),
        images: inclusion,
        w,
        model: EmbeddingModel::Glued,
    })
}

impl SigmaPerpEmbedding {
    /// Image of a vector given in `source` coordinates.
    pub fn embed(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                got: v.len(),
            });
        }
        let mut out = vec![0i64; self.ambient.rank()];
        for (c, img) in v.iter().zip(&self.images) {
            if *c != 0 {
                for (o, x) in out.iter_mut().zip(img) {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }

    pub fn image(&self) -> Sublattice {
        Sublattice::new(self.ambient.clone(), self.images.clone())
            .expect("embedding images are independent")
    }

    pub fn check(&self) -> Result<EmbeddingCheck> {
        let image = self.image();
        for (i, img) in self.images.iter().enumerate() {
            for (j, other) in self.images.iter().enumerate() {
                if self.ambient.dot(img, other) != self.source.gram()[i][j] {
                    return Err(Error::NotIsometry);
                }
            }
        }
        let complement = image.orthogonal_complement();
        let mut rows = self.images.clone();
        rows.push(self.w.clone());
        let quotient = linalg::det(&linalg::to_big(&rows))
            .magnitude()
            .to_u64()
            .ok_or(Error::Overflow("quotient order"))?;
        Ok(EmbeddingCheck {
            w_square: self.ambient.dot(&self.w, &self.w),
            image_saturated: image.is_saturated(),
            complement_rank: complement.rank(),
            quotient_order: quotient,
        })
    }

    /// `phi ⊕ id_w` as an isometry of the ambient lattice. It exists for
    /// every isometry of `σ^⊥`, which acts trivially on `A = Z/2`.
    pub fn extend(&self, phi: &Isometry) -> Result<Isometry> {
        if phi.source() != &self.source || phi.target() != &self.source {
            return Err(Error::NotIsometry);
        }
        let n = self.ambient.rank();
        // P has columns image_0, ..., image_22, w; beta = P Phi' P^{-1}
        let mut cols = self.images.clone();
        cols.push(self.w.clone());
        let p = linalg::to_rational(&linalg::transpose(&cols));
        let p_inv = linalg::rational_inverse(&p).ok_or(Error::Dependent)?;
        let mut phi_ext = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in phi.matrix().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                phi_ext[i][j] = BigRational::from_integer(x.into());
            }
        }
        phi_ext[n - 1][n - 1] = BigRational::from_integer(1.into());
        let beta = mul_q(&mul_q(&p, &phi_ext), &p_inv);
        let map = beta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i64().ok_or(Error::Overflow("extension"))
                        } else {
                            Err(Error::NotIsometry)
                        }
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Isometry::automorphism((*self.ambient).clone(), map)
    }
}

fn mul_q(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}
