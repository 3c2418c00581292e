// SPDX-License-Identifier: Apache-2.0

use num_rational::Rational64;

use super::{discriminant_group, milgram_residue};
use crate::error::Result;
use crate::lattice::{Lattice, Signature};

/// Scope of [`GenusTag`] comparisons, carried in every tag.
pub const GENUS_TAG_SCOPE: &str = "equal tags are necessary for isometry; treated as sufficient \
     only for indefinite even lattices of rank >= 3 that are unique in their genus";

/// Fingerprint of the genus of an even lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTag {
    pub rank: usize,
    pub signature: Signature,
    pub even: bool,
    pub invariant_factors: Vec<i64>,
    /// `q(x)` over all `x` in `A_L`, sorted, each in `[0, 2)`.
    pub q_values: Vec<Rational64>,
    pub milgram_residue: u8,
    pub scope: &'static str,
}

pub fn genus_tag(l: &Lattice) -> Result<GenusTag> {
    let a = discriminant_group(l)?;
    Ok(GenusTag {
        rank: l.rank(),
        signature: l.signature(),
        even: l.is_even(),
        invariant_factors: a.invariant_factors().to_vec(),
        q_values: a.q_multiset()?,
        milgram_residue: milgram_residue(&a)?,
        scope: GENUS_TAG_SCOPE,
    })
}
