// SPDX-License-Identifier: Apache-2.0

//! Small marked lattices in the standard OG10 coordinates: the three `U`s at
//! 0..6, the two `E8(-1)`s at 6..14 and 14..22, `A2(-1)` at 22..24.

use std::sync::Arc;

use super::{MarkedHodgeLattice, OG10_EXPR};
use crate::lattice::{standard, Lattice};

pub fn og10_lattice() -> Arc<Lattice> {
    Arc::new(standard(OG10_EXPR).expect("fixed expression"))
}

fn unit(entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; 24];
    for &(i, x) in entries {
        v[i] = x;
    }
    v
}

/// `a - b` in `A2(-1)`: square -6, divisibility 3.
pub fn sigma_ab() -> Vec<i64> {
    unit(&[(22, 1), (23, -1)])
}

/// NS = `<σ, e1, f1>`; the induced (1,1) part is `U ⊕ [2]`.
pub fn positive_marked() -> MarkedHodgeLattice {
    MarkedHodgeLattice::new(
        og10_lattice(),
        vec![sigma_ab(), unit(&[(0, 1)]), unit(&[(1, 1)])],
    )
    .expect("saturated")
}

/// NS = `<σ, e1 + f1>` of rank 2.
pub fn definite_marked() -> MarkedHodgeLattice {
    MarkedHodgeLattice::new(og10_lattice(), vec![sigma_ab(), unit(&[(0, 1), (1, 1)])])
        .expect("saturated")
}

/// NS = `<σ, e1, 2 f1 + e2>`; the induced (1,1) part is `U(2) ⊕ [2]`.
pub fn twisted_marked() -> MarkedHodgeLattice {
    MarkedHodgeLattice::new(
        og10_lattice(),
        vec![sigma_ab(), unit(&[(0, 1)]), unit(&[(1, 2), (2, 1)])],
    )
    .expect("saturated")
}

/// Swaps the two `E8(-1)` blocks, as a column matrix.
pub fn e8_swap() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; 24]; 24];
    for j in 0..24 {
        let i = match j {
            6..=13 => j + 8,
            14..=21 => j - 8,
            _ => j,
        };
        m[i][j] = 1;
    }
    m
}
