// SPDX-License-Identifier: Apache-2.0

//! The OG10 lattice and the checks built on it.

pub mod fixtures;
mod gamma;
mod hassett;
mod involution;
mod marked;
mod mukai;
mod nms;

pub use gamma::{gamma_v, GammaV};
pub use hassett::{
    build_ld, factor, hassett_admissible, hassett_scan, hassett_star, hassett_star_prime,
    HassettRow, Ld, LdGlue, StarPrime,
};
pub use involution::{
    all_even_divisibility, classify_symplectic_involution, disc_action_trivial,
    invariant_coinvariant, involution_lattice_type, Classification, InductionWitness,
    InvolutionClass, LatticeType, TypeReport, EXCLUDED_INVARIANT_EXPR, INDUCED_COINVARIANT_EXPR,
    INDUCED_INVARIANT_EXPR, ORDER_BOUND,
};
pub use marked::{check_og10_invariants, MarkedHodgeLattice};
pub use mukai::{mukai_lattice, mukai_pair, MukaiVector};
pub use nms::{
    check_sigma, induced_hodge, is_numerical_moduli_space, is_twisted_numerical_moduli_space,
    mukai_data, sigma_candidates, InducedHodge, MukaiData, Outcome, TwistedData, Verdict,
};

pub const OG10_EXPR: &str = "U^3 + E8(-1)^2 + A2(-1)";
