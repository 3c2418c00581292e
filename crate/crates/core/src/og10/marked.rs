// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_rational::Rational64;

use crate::disc::discriminant_group;
use crate::error::{Error, Result};
use crate::lattice::{linalg, Lattice, Signature, Sublattice};

/// An OG10 lattice with a designated saturated sublattice standing for the
/// (1,1) part.
#[derive(Debug, Clone)]
pub struct MarkedHodgeLattice {
    lattice: Arc<Lattice>,
    ns: Sublattice,
    ns_signature: (usize, usize, usize),
}

/// Checks rank 24, signature (3,21), `|det| = 3`, even, and
/// `A_L = Z/3` with `q = -2/3`.
pub fn check_og10_invariants(l: &Lattice) -> Result<()> {
    let wrong = |m: String| Err(Error::WrongInvariants(m));
    if l.rank() != 24 {
        return wrong(format!("rank {} instead of 24", l.rank()));
    }
    if !l.is_even() {
        return wrong("lattice is odd".into());
    }
    if l.signature() != Signature::new(3, 21) {
        return wrong(format!("signature {} instead of (3,21)", l.signature()));
    }
    if l.det().abs() != 3 {
        return wrong(format!("|det| = {} instead of 3", l.det().abs()));
    }
    let a = discriminant_group(l)?;
    if a.q_value(0) != Rational64::new(4, 3) {
        return wrong(format!(
            "discriminant form q = {} instead of 4/3",
            a.q_value(0)
        ));
    }
    Ok(())
}

impl MarkedHodgeLattice {
    pub fn new(lattice: Arc<Lattice>, ns_basis: Vec<Vec<i64>>) -> Result<Self> {
        check_og10_invariants(&lattice)?;
        let ns = Sublattice::new(lattice.clone(), ns_basis)?;
        let sat = ns.saturation();
        if sat.index != 1 {
            return Err(Error::WrongInvariants(format!(
                "NS sublattice is not saturated (index {})",
                sat.index
            )));
        }
        let ns_signature = linalg::inertia(&linalg::to_rational(&ns.gram()));
        if ns_signature.2 != 0 {
            return Err(Error::WrongInvariants(format!(
                "NS sublattice is degenerate (radical of rank {})",
                ns_signature.2
            )));
        }
        Ok(Self {
            lattice,
            ns,
            ns_signature,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn ns(&self) -> &Sublattice {
        &self.ns
    }

    /// `(positive, negative, null)` directions of the form restricted to NS.
    pub fn ns_signature(&self) -> (usize, usize, usize) {
        self.ns_signature
    }

    /// NS has exactly one positive direction.
    pub fn is_projective(&self) -> bool {
        self.ns_signature.0 == 1
    }

    pub(crate) fn require_projective(&self) -> Result<()> {
        if self.is_projective() {
            Ok(())
        } else {
            Err(Error::NotProjective(
                self.ns_signature.0,
                self.ns_signature.1,
            ))
        }
    }
}
