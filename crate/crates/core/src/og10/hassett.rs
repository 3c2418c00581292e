// SPDX-License-Identifier: Apache-2.0

//! Hassett discriminants: admissibility, the two arithmetic conditions and
//! the lattices `L_d = (A2 ⊕ Zv)^sat`.

use num_rational::BigRational;

use crate::disc::discriminant_group;
use crate::embeddings::{overlattice_from_glue, GlueData};
use crate::error::{Error, Result};
use crate::lattice::{standard, Lattice};

/// `d > 6` and `d ≡ 0, 2 (mod 6)`.
pub fn hassett_admissible(d: u64) -> bool {
    d > 6 && matches!(d % 6, 0 | 2)
}

/// Smallest `n ∈ [0, d)` with `d | 2n^2 + 2n + 2`.
pub fn hassett_star(d: u64) -> Option<u64> {
    if d == 0 {
        return None;
    }
    let d128 = u128::from(d);
    (0..d).find(|&n| {
        let n = u128::from(n);
        (2 * n * n + 2 * n + 2) % d128 == 0
    })
}

/// Result of the prime-exponent condition on `d/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPrime {
    pub holds: bool,
    /// `(p, exponent)` of `d/2`; empty for odd `d`.
    pub factorization: Vec<(u64, u32)>,
    pub note: Option<&'static str>,
}

/// Every prime `p ≡ 2 (mod 3)` divides `d/2` to an even power.
pub fn hassett_star_prime(d: u64) -> StarPrime {
    if d == 0 || !d.is_multiple_of(2) {
        return StarPrime {
            holds: false,
            factorization: Vec::new(),
            note: Some("d is odd, so d/2 is not an integer"),
        };
    }
    let factorization = factor(d / 2);
    let holds = factorization.iter().all(|&(p, e)| p % 3 != 2 || e % 2 == 0);
    StarPrime {
        holds,
        factorization,
        note: None,
    }
}

/// Trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HassettRow {
    pub d: u64,
    pub admissible: bool,
    pub star: Option<u64>,
    pub star_prime: bool,
}

/// One row per `d` in `range`, in increasing order.
pub fn hassett_scan(range: std::ops::RangeInclusive<u64>) -> Vec<HassettRow> {
    range
        .map(|d| HassettRow {
            d,
            admissible: hassett_admissible(d),
            star: hassett_star(d),
            star_prime: hassett_star_prime(d).holds,
        })
        .collect()
}

/// How `A2 ⊕ [m]` is glued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LdGlue {
    Trivial,
    /// An isotropic element of order 3 meeting the `A2` discriminant.
    OrderThree,
    /// Explicit glue vectors in rational `A2 ⊕ [m]` coordinates.
    Custom(Vec<Vec<BigRational>>),
}

#[derive(Debug, Clone)]
pub struct Ld {
    pub glue: GlueData,
    /// `|det|`, the candidate discriminant.
    pub d: u64,
}

impl Ld {
    pub fn lattice(&self) -> &Lattice {
        &self.glue.overlattice
    }
}

/// The overlattice of `A2 ⊕ [vd_square]` with the given glue.
pub fn build_ld(vd_square: i64, glue: &LdGlue) -> Result<Ld> {
    if vd_square >= 0 || vd_square % 2 != 0 {
        return Err(Error::WrongInvariants(format!(
            "v_d^2 = {vd_square} must be even and negative"
        )));
    }
    let a2 = standard("A2")?;
    let v = standard(&format!("[{vd_square}]"))?;
    let vectors = match glue {
        LdGlue::Trivial => Vec::new(),
        LdGlue::Custom(g) => g.clone(),
        LdGlue::OrderThree => vec![order_three_glue(&a2, &v)?],
    };
    let data = overlattice_from_glue(&a2, &v, &vectors)?;
    let d = data.overlattice.det().unsigned_abs();
    Ok(Ld { glue: data, d })
}

fn order_three_glue(a2: &Lattice, v: &Lattice) -> Result<Vec<BigRational>> {
    let sum = Lattice::direct_sum(&[a2, v])?;
    let form = discriminant_group(&sum)?;
    for x in form.isotropic_elements()? {
        if form.element_order(&x) != 3 {
            continue;
        }
        let lift = form.lift(&x)?;
        if lift[..2].iter().any(|c| !c.is_integer()) {
            return Ok(lift);
        }
    }
    Err(Error::NotIsotropic(format!(
        "A2 + [{}] has no isotropic element of order 3",
        v.gram()[0][0]
    )))
}
