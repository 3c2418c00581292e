// SPDX-License-Identifier: Apache-2.0

//! Certificates for `U` and `U(n)` inside a lattice.

use std::cmp::Reverse;
use std::fmt;

use crate::disc::{discriminant_group, forms_equivalent};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, linalg, standard, Lattice, Sublattice, VectorQuery};

/// Isotropic `e`, `f` with `e.f = n`, spanning a copy of `U(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicCertificate {
    pub e: Vec<i64>,
    pub f: Vec<i64>,
    pub n: i64,
    /// `<e, f>` is an orthogonal direct summand.
    pub summand: bool,
}

/// A proof that no certificate exists at any radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// The lattice is definite, so it has no nonzero isotropic vectors.
    Definite,
    /// Every pairing is even, so no vector has divisibility 1.
    EvenDivisibility,
    /// Rank 2 and `|det| != 1`, so the lattice is not `U`.
    RankTwoDeterminant,
    /// Rank 3 and the discriminant form is not that of `[-det]`, the only
    /// possible complement of `U`.
    DiscriminantMismatch,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::Definite => "definite lattice has no isotropic vectors",
            Obstruction::EvenDivisibility => {
                "all pairings are even, so no isotropic vector has divisibility 1"
            }
            Obstruction::RankTwoDeterminant => "rank 2 lattice with |det| != 1 is not U",
            Obstruction::DiscriminantMismatch => {
                "rank 3 lattice whose discriminant form differs from that of U + [-det]"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateSearch {
    Found(HyperbolicCertificate),
    Absent(Obstruction),
    NotFound { radius: u32 },
}

impl CertificateSearch {
    pub fn certificate(&self) -> Option<&HyperbolicCertificate> {
        match self {
            CertificateSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// What counts as a `U(n)` certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SummandMode {
    /// `<e, f>` must be an orthogonal direct summand.
    #[default]
    DirectSummand,
    /// `<e, f>` only needs to be primitive.
    EmbeddingOnly,
}

impl fmt::Display for SummandMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandMode::DirectSummand => "direct-summand",
            SummandMode::EmbeddingOnly => "embedding-only",
        })
    }
}

/// Ordering of candidate vectors: small `L1` norm first, then
/// lexicographically larger first so that positive basis vectors lead.
fn search_key(v: &[i64]) -> (i64, Reverse<Vec<i64>>) {
    (v.iter().map(|x| x.abs()).sum(), Reverse(v.to_vec()))
}

/// The lattice to search in and a way back to ambient coordinates.
fn search_space(
    m: &Lattice,
    designated: Option<&Sublattice>,
) -> Result<(Lattice, Option<Sublattice>)> {
    match designated {
        None => Ok((m.clone(), None)),
        Some(s) => {
            if s.ambient().as_ref() != m {
                return Err(Error::DimensionMismatch {
                    expected: m.rank(),
                    got: s.ambient().rank(),
                });
            }
            Ok((s.lattice()?, Some(s.clone())))
        }
    }
}

fn back(space: &Option<Sublattice>, v: Vec<i64>) -> Vec<i64> {
    match space {
        Some(s) => s.to_ambient(&v),
        None => v,
    }
}

/// Search for `U` as a direct summand: a primitive isotropic `e` of
/// divisibility 1, completed by `f = f' - (f'^2/2) e` with `e.f' = 1`.
pub fn u_summand_certificate(
    m: &Lattice,
    designated: Option<&Sublattice>,
    radius: u32,
) -> Result<CertificateSearch> {
    let (t, space) = search_space(m, designated)?;
    if !t.is_even() {
        return Err(Error::OddLattice);
    }
    if let Some(o) = u_obstruction(&t)? {
        return Ok(CertificateSearch::Absent(o));
    }
    let query = VectorQuery::default()
        .with_square(0)
        .primitive(true)
        .radius(radius);
    let mut candidates: Vec<Vec<i64>> = enumerate_vectors(&t, &query)?
        .into_iter()
        .filter(|e| linalg::gcd_i64(&t.gram_times(e)) == 1)
        .collect();
    candidates.sort_by_key(|v| search_key(v));
    let Some(e) = candidates.into_iter().next() else {
        return Ok(CertificateSearch::NotFound { radius });
    };
    let f = complete_to_u(&t, &e)?;
    Ok(CertificateSearch::Found(HyperbolicCertificate {
        e: back(&space, e),
        f: back(&space, f),
        n: 1,
        summand: true,
    }))
}

/// Isotropic `f` with `e.f = 1`, for `e` isotropic of divisibility 1 in an
/// even lattice.
pub(crate) fn complete_to_u(t: &Lattice, e: &[i64]) -> Result<Vec<i64>> {
    let row = linalg::to_big(&[t.gram_times(e)]).remove(0);
    let (g, coeffs) = linalg::bezout_vector(&row);
    if g != 1.into() {
        return Err(Error::WrongInvariants(
            "isotropic vector has divisibility > 1".into(),
        ));
    }
    let fp = linalg::to_i64_vec(&coeffs)?;
    let half = t.dot(&fp, &fp) / 2;
    Ok(fp.iter().zip(e).map(|(a, b)| a - half * b).collect())
}

fn u_obstruction(t: &Lattice) -> Result<Option<Obstruction>> {
    if t.is_definite() {
        return Ok(Some(Obstruction::Definite));
    }
    if t.all_pairings_even() {
        return Ok(Some(Obstruction::EvenDivisibility));
    }
    if t.rank() == 2 && t.det().abs() != 1 {
        return Ok(Some(Obstruction::RankTwoDeterminant));
    }
    if t.rank() == 3 {
        // T = U + [m] forces m = -det T
        let m = -t.det();
        if m % 2 != 0 {
            return Ok(Some(Obstruction::DiscriminantMismatch));
        }
        let complement = standard(&format!("[{m}]"))?;
        let a = discriminant_group(t)?;
        let b = discriminant_group(&complement)?;
        let eq = forms_equivalent(&a, &b)?;
        if !eq.equivalent {
            return Ok(Some(Obstruction::DiscriminantMismatch));
        }
    }
    Ok(None)
}

/// Search for `U(n)` with `n` minimal: a primitive isotropic `e` and an
/// isotropic `f` with `e.f = n > 0`.
///
/// `<e, f>` is a direct summand iff `n^2 |det <e,f>^⊥| = |det T|`.
pub fn un_summand_certificate(
    m: &Lattice,
    designated: Option<&Sublattice>,
    radius: u32,
    mode: SummandMode,
) -> Result<CertificateSearch> {
    let (t, space) = search_space(m, designated)?;
    if t.is_definite() {
        return Ok(CertificateSearch::Absent(Obstruction::Definite));
    }
    let query = VectorQuery::default().with_square(0).radius(radius);
    let isotropic = enumerate_vectors(&t, &query)?;
    let mut pairs: Vec<(i64, usize, usize)> = Vec::new();
    for (i, e) in isotropic.iter().enumerate() {
        if linalg::gcd_i64(e) != 1 {
            continue;
        }
        for (j, f) in isotropic.iter().enumerate() {
            let n = t.dot(e, f);
            if n > 0 {
                pairs.push((n, i, j));
            }
        }
    }
    pairs.sort_by_key(|&(n, i, j)| (n, search_key(&isotropic[i]), search_key(&isotropic[j])));
    let t_arc = std::sync::Arc::new(t.clone());
    for (n, i, j) in pairs {
        let (e, f) = (&isotropic[i], &isotropic[j]);
        let plane = Sublattice::new(t_arc.clone(), vec![e.clone(), f.clone()])?;
        let saturated = plane.is_saturated();
        let summand = saturated && is_summand(&t, &plane, n)?;
        let accept = match mode {
            SummandMode::DirectSummand => summand,
            SummandMode::EmbeddingOnly => saturated,
        };
        if accept {
            return Ok(CertificateSearch::Found(HyperbolicCertificate {
                e: back(&space, e.clone()),
                f: back(&space, f.clone()),
                n,
                summand,
            }));
        }
    }
    Ok(CertificateSearch::NotFound { radius })
}

fn is_summand(t: &Lattice, plane: &Sublattice, n: i64) -> Result<bool> {
    let perp = plane.orthogonal_complement();
    if perp.rank() == 0 {
        return Ok(n * n == t.det().abs());
    }
    let d = match perp.lattice() {
        Ok(p) => p.det().abs(),
        Err(Error::Degenerate) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok((n as i128) * (n as i128) * d as i128 == t.det().abs() as i128)
}
