// SPDX-License-Identifier: Apache-2.0

//! Invariant and coinvariant lattices of isometries, and the classification
//! of symplectic involutions of the OG10 lattice.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::nms::{induced_hodge, InducedHodge};
use super::MarkedHodgeLattice;
use crate::disc::{discriminant_group, genus_tag, GenusTag};
use crate::embeddings::{u_summand_certificate, CertificateSearch, HyperbolicCertificate};
use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_vectors, is_isometric_definite, sign_normalized, standard, Isometry, Lattice,
    Sublattice, VectorQuery,
};

/// Largest order tried before giving up on finiteness.
pub const ORDER_BOUND: u32 = 1000;

pub const INDUCED_INVARIANT_EXPR: &str = "U^3 + E8(-2) + A2(-1)";
pub const INDUCED_COINVARIANT_EXPR: &str = "E8(-2)";
pub const EXCLUDED_INVARIANT_EXPR: &str = "E6(-2) + U(2)^2 + [2] + [-2]";

fn check_source(l: &Lattice, g: &Isometry) -> Result<()> {
    if g.source() != l || g.target() != l {
        return Err(Error::NotIsometry);
    }
    Ok(())
}

/// `(L^g, (L^g)^⊥)`.
pub fn invariant_coinvariant(l: &Arc<Lattice>, g: &Isometry) -> Result<(Sublattice, Sublattice)> {
    check_source(l, g)?;
    if g.order(ORDER_BOUND).is_none() {
        return Err(Error::InfiniteOrderSuspected(ORDER_BOUND));
    }
    let invariant = Sublattice::full(l.clone()).fixed_by(g.matrix())?;
    let coinvariant = invariant.orthogonal_complement();
    Ok((invariant, coinvariant))
}

/// `g` fixes every element of `A_L`.
pub fn disc_action_trivial(l: &Lattice, g: &Isometry) -> Result<bool> {
    check_source(l, g)?;
    let form = discriminant_group(l)?;
    for y in form.generators() {
        let moved = g.matrix().iter().zip(y).map(|(row, yi)| {
            let gy: BigRational = row
                .iter()
                .zip(y)
                .map(|(&a, b)| BigRational::from_integer(a.into()) * b)
                .sum();
            gy - yi
        });
        for d in moved {
            if !d.is_integer() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every vector has even divisibility.
pub fn all_even_divisibility(l: &Lattice) -> bool {
    l.all_pairings_even()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeType {
    /// Invariant lattice in the genus of `U^3 + E8(-2) + A2(-1)`, coinvariant
    /// isometric to `E8(-2)`.
    Induced,
    /// Invariant lattice in the genus of `E6(-2) + U(2)^2 + [2] + [-2]`.
    ExcludedEvenDiv,
    Other,
}

/// What the invariant/coinvariant pair looks like.
#[derive(Debug, Clone)]
pub struct TypeReport {
    pub kind: LatticeType,
    pub invariant_tag: GenusTag,
    /// Isometry from the coinvariant lattice to `E8(-2)`.
    pub coinvariant_witness: Option<Isometry>,
}

pub fn involution_lattice_type(
    invariant: &Lattice,
    coinvariant: Option<&Lattice>,
) -> Result<TypeReport> {
    let invariant_tag = genus_tag(invariant)?;
    if invariant_tag == genus_tag(&standard(EXCLUDED_INVARIANT_EXPR)?)? {
        return Ok(TypeReport {
            kind: LatticeType::ExcludedEvenDiv,
            invariant_tag,
            coinvariant_witness: None,
        });
    }
    if invariant_tag == genus_tag(&standard(INDUCED_INVARIANT_EXPR)?)? {
        if let Some(c) = coinvariant {
            let e8 = standard(INDUCED_COINVARIANT_EXPR)?;
            if c.invariants() == e8.invariants() {
                if let Some(phi) = is_isometric_definite(c, &e8)? {
                    return Ok(TypeReport {
                        kind: LatticeType::Induced,
                        invariant_tag,
                        coinvariant_witness: Some(phi),
                    });
                }
            }
        }
    }
    Ok(TypeReport {
        kind: LatticeType::Other,
        invariant_tag,
        coinvariant_witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionClass {
    InducedType,
    ExcludedEvenDiv,
    /// Lattice type matches but no witness within the radius.
    Inconclusive {
        radius: u32,
    },
    Other,
}

impl fmt::Display for InvolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionClass::InducedType => f.write_str("INDUCED_TYPE"),
            InvolutionClass::ExcludedEvenDiv => f.write_str("EXCLUDED_EVEN_DIV"),
            InvolutionClass::Inconclusive { radius } => {
                write!(f, "INCONCLUSIVE at radius {radius}")
            }
            InvolutionClass::Other => f.write_str("OTHER"),
        }
    }
}

/// A `g`-invariant `σ` and a `U` inside the `g`-invariant part of the
/// induced (1,1) lattice.
#[derive(Debug, Clone)]
pub struct InductionWitness {
    pub sigma: Vec<i64>,
    pub ambient: Arc<Lattice>,
    /// The extension of `g|σ^⊥` to the Mukai lattice.
    pub extension: Isometry,
    /// Basis of the `g`-invariant induced (1,1) part.
    pub invariant_ns: Vec<Vec<i64>>,
    pub certificate: HyperbolicCertificate,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: InvolutionClass,
    pub invariant: Sublattice,
    pub coinvariant: Sublattice,
    pub report: TypeReport,
    pub disc_trivial: bool,
    pub witness: Option<InductionWitness>,
    pub obstruction: Option<String>,
}

pub fn classify_symplectic_involution(
    x: &MarkedHodgeLattice,
    g: &Isometry,
    radius: u32,
) -> Result<Classification> {
    let l = x.lattice();
    check_source(l, g)?;
    if g.is_identity() || g.order(2) != Some(2) {
        return Err(Error::NotInvolution);
    }
    for b in x.ns().basis() {
        if !x.ns().contains(&g.apply(b)?) {
            return Err(Error::NSNotPreserved);
        }
    }
    let (invariant, coinvariant) = invariant_coinvariant(l, g)?;
    let inv_lattice = invariant.lattice()?;
    let coinv_lattice = match coinvariant.rank() {
        0 => None,
        _ => Some(coinvariant.lattice()?),
    };
    let report = involution_lattice_type(&inv_lattice, coinv_lattice.as_ref())?;
    let disc_trivial = disc_action_trivial(l, g)?;
    let mut out = Classification {
        class: InvolutionClass::Other,
        invariant,
        coinvariant,
        report,
        disc_trivial,
        witness: None,
        obstruction: None,
    };
    match out.report.kind {
        LatticeType::ExcludedEvenDiv => {
            out.class = InvolutionClass::ExcludedEvenDiv;
            out.obstruction = Some(
                "every invariant vector has even divisibility, so no invariant σ has divisibility 3"
                    .into(),
            );
        }
        LatticeType::Other => {}
        LatticeType::Induced => match find_witness(x, g, radius)? {
            Some(w) => {
                out.class = InvolutionClass::InducedType;
                out.witness = Some(w);
            }
            None => out.class = InvolutionClass::Inconclusive { radius },
        },
    }
    Ok(out)
}

fn find_witness(
    x: &MarkedHodgeLattice,
    g: &Isometry,
    radius: u32,
) -> Result<Option<InductionWitness>> {
    let l = x.lattice();
    let fixed_ns = x.ns().fixed_by(g.matrix())?;
    if fixed_ns.rank() == 0 {
        return Ok(None);
    }
    let query = VectorQuery::default()
        .with_square(-6)
        .primitive(true)
        .radius(radius);
    let mut seen = Vec::new();
    for c in enumerate_vectors(&fixed_ns.lattice()?, &query)? {
        let c = sign_normalized(&c);
        if seen.contains(&c) {
            continue;
        }
        seen.push(c.clone());
        let sigma = fixed_ns.to_ambient(&c);
        if l.divisibility(&sigma)? != 3 || !l.is_primitive(&sigma)? {
            continue;
        }
        let t = induced_hodge(x, &sigma)?;
        let beta = extend_to_mukai(&t, g)?;
        let fixed_t = t.ns.fixed_by(beta.matrix())?;
        if let CertificateSearch::Found(certificate) =
            u_summand_certificate(&t.embedding.ambient, Some(&fixed_t), radius)?
        {
            return Ok(Some(InductionWitness {
                sigma,
                ambient: t.embedding.ambient.clone(),
                extension: beta,
                invariant_ns: fixed_t.basis().to_vec(),
                certificate,
            }));
        }
    }
    Ok(None)
}

/// `g|σ^⊥ ⊕ id_w` on the Mukai lattice.
fn extend_to_mukai(t: &InducedHodge, g: &Isometry) -> Result<Isometry> {
    let perp = &t.sigma_perp;
    let k = perp.rank();
    let mut map = vec![vec![0i64; k]; k];
    for (j, b) in perp.basis().iter().enumerate() {
        let c = perp.coordinates(&g.apply(b)?)?;
        for (i, x) in c.into_iter().enumerate() {
            map[i][j] = x;
        }
    }
    let phi = Isometry::automorphism(perp.lattice()?, map)?;
    t.embedding.extend(&phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::og10::fixtures;

    #[test]
    fn identity_and_negation() {
        let l = Arc::new(standard("U + A2(-1)").unwrap());
        let (inv, co) = invariant_coinvariant(&l, &Isometry::identity((*l).clone())).unwrap();
        assert_eq!((inv.rank(), co.rank()), (4, 0));
        let (inv, co) = invariant_coinvariant(&l, &Isometry::negation((*l).clone())).unwrap();
        assert_eq!((inv.rank(), co.rank()), (0, 4));
    }

    #[test]
    fn disc_action_examples() {
        let a2 = standard("A2(-1)").unwrap();
        assert!(disc_action_trivial(&a2, &Isometry::identity(a2.clone())).unwrap());
        assert!(!disc_action_trivial(&a2, &Isometry::negation(a2.clone())).unwrap());
        let l = fixtures::og10_lattice();
        let swap = Isometry::automorphism((*l).clone(), fixtures::e8_swap()).unwrap();
        assert!(disc_action_trivial(&l, &swap).unwrap());
    }

    #[test]
    fn even_divisibility_examples() {
        assert!(all_even_divisibility(
            &standard(EXCLUDED_INVARIANT_EXPR).unwrap()
        ));
        assert!(!all_even_divisibility(&standard("U").unwrap()));
        assert!(all_even_divisibility(&standard("E8(-2)").unwrap()));
    }

    #[test]
    fn excluded_type() {
        let m = standard(EXCLUDED_INVARIANT_EXPR).unwrap();
        let r = involution_lattice_type(&m, None).unwrap();
        assert_eq!(r.kind, LatticeType::ExcludedEvenDiv);
    }

    #[test]
    fn identity_is_not_an_involution() {
        let x = fixtures::positive_marked();
        let id = Isometry::identity((**x.lattice()).clone());
        assert_eq!(
            classify_symplectic_involution(&x, &id, 2).unwrap_err(),
            Error::NotInvolution
        );
    }

    #[test]
    fn ns_must_be_preserved() {
        // swap e1 <-> e2 moves NS = <σ, e1, f1>
        let l = fixtures::og10_lattice();
        let mut m: Vec<Vec<i64>> = (0..24)
            .map(|i| (0..24).map(|j| i64::from(i == j)).collect())
            .collect();
        for (a, b) in [(0, 2), (1, 3)] {
            m[a][a] = 0;
            m[b][b] = 0;
            m[a][b] = 1;
            m[b][a] = 1;
        }
        let g = Isometry::automorphism((*l).clone(), m).unwrap();
        let x = fixtures::positive_marked();
        assert_eq!(
            classify_symplectic_involution(&x, &g, 2).unwrap_err(),
            Error::NSNotPreserved
        );
    }

    #[test]
    fn e8_swap_is_induced_type() {
        let x = fixtures::positive_marked();
        let g = Isometry::automorphism((**x.lattice()).clone(), fixtures::e8_swap()).unwrap();
        let c = classify_symplectic_involution(&x, &g, 2).unwrap();
        assert_eq!(c.class, InvolutionClass::InducedType);
        assert!(c.disc_trivial);
        assert_eq!(c.invariant.rank(), 16);
        assert_eq!(c.coinvariant.rank(), 8);
        let phi = c.report.coinvariant_witness.unwrap();
        assert_eq!(phi.target(), &standard(INDUCED_COINVARIANT_EXPR).unwrap());
        let w = c.witness.unwrap();
        assert_eq!(w.sigma, fixtures::sigma_ab());
        assert_eq!(
            w.extension.apply(&w.certificate.e).unwrap(),
            w.certificate.e
        );
    }
}
