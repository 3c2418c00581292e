// SPDX-License-Identifier: Apache-2.0

use num_rational::BigRational;

use crate::disc::discriminant_group;
use crate::embeddings::{overlattice_from_glue, GlueData};
use crate::error::{Error, Result};
use crate::lattice::{standard, Lattice};

/// `Γ_v` with the image of `E`.
#[derive(Debug, Clone)]
pub struct GammaV {
    pub glue: GlueData,
    /// `σ` in the coordinates of `glue.overlattice`.
    pub e_image: Vec<i64>,
}

impl GammaV {
    pub fn lattice(&self) -> &Lattice {
        &self.glue.overlattice
    }
}

/// Overlattice of `v^⊥ ⊕ Zσ`, `σ^2 = -6`, glued along `(t*, σ/2)` where `t*`
/// generates `A_{v^⊥} = Z/2`.
pub fn gamma_v(v_perp: &Lattice) -> Result<GammaV> {
    if !v_perp.is_even() {
        return Err(Error::OddLattice);
    }
    if v_perp.det().abs() != 2 {
        return Err(Error::WrongDeterminant {
            expected: 2,
            got: v_perp.det().abs().to_string(),
        });
    }
    let k = standard("[-6]")?;
    let mut glue = discriminant_group(v_perp)?.lift(&[1])?;
    glue.push(BigRational::new(1.into(), 2.into()));
    let data = overlattice_from_glue(v_perp, &k, &[glue])?;
    let e_image = data.inclusion().pop().expect("K has rank 1");
    Ok(GammaV {
        glue: data,
        e_image,
    })
}
