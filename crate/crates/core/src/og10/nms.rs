// SPDX-License-Identifier: Apache-2.0

//! Numerical moduli space checks, plain and twisted.

use std::cmp::Reverse;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::MarkedHodgeLattice;
use crate::embeddings::{
    canonical_sigma_perp_embedding, complete_to_u, u_summand_certificate, un_summand_certificate,
    CertificateSearch, EmbeddingModel, HyperbolicCertificate, SigmaPerpEmbedding, SummandMode,
};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, sign_normalized, Lattice, Sublattice, VectorQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Inconclusive { radius: u32 },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Yes => f.write_str("yes"),
            Outcome::No => f.write_str("no"),
            Outcome::Inconclusive { radius } => write!(f, "inconclusive at radius {radius}"),
        }
    }
}

/// A vector of the Mukai lattice split along a hyperbolic plane `<e, f>`:
/// `x = r e - s f + l` with `l ⊥ <e, f>`, so `(1,0,0) = e` and
/// `(0,0,1) = -f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiData {
    pub r: i64,
    /// In ambient coordinates.
    pub l: Vec<i64>,
    pub s: i64,
}

/// `f_n = γ + n f + k e`, `B = -γ/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedData {
    pub n: i64,
    pub e: Vec<i64>,
    pub f_n: Vec<i64>,
    /// Isotropic completion of `e` with `e.f = 1`.
    pub f: Vec<i64>,
    pub k: i64,
    pub gamma: Vec<i64>,
    pub b_field: Vec<BigRational>,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub sigma: Option<Vec<i64>>,
    pub model: Option<EmbeddingModel>,
    /// The Mukai lattice the certificate lives in.
    pub ambient: Option<Arc<Lattice>>,
    pub w: Option<Vec<i64>>,
    /// Basis of the induced (1,1) part in the Mukai lattice.
    pub induced_ns: Option<Vec<Vec<i64>>>,
    pub certificate: Option<HyperbolicCertificate>,
    pub mukai_w: Option<MukaiData>,
    pub twisted: Option<TwistedData>,
    pub mode: Option<SummandMode>,
    pub sigmas_tried: usize,
    pub radius: u32,
    pub reason: String,
}

impl Verdict {
    fn bare(outcome: Outcome, radius: u32, reason: String) -> Self {
        Self {
            outcome,
            sigma: None,
            model: None,
            ambient: None,
            w: None,
            induced_ns: None,
            certificate: None,
            mukai_w: None,
            twisted: None,
            mode: None,
            sigmas_tried: 0,
            radius,
            reason,
        }
    }
}

/// `σ^⊥` in `L`, its embedding into the Mukai lattice, and the induced (1,1)
/// part `sat((NS ∩ σ^⊥) ⊕ Zw)`.
#[derive(Debug, Clone)]
pub struct InducedHodge {
    pub sigma_perp: Sublattice,
    pub embedding: SigmaPerpEmbedding,
    pub ns: Sublattice,
}

impl InducedHodge {
    /// Image of a vector of `σ^⊥` (given in `L` coordinates).
    pub fn to_mukai(&self, v: &[i64]) -> Result<Vec<i64>> {
        let c = self.sigma_perp.coordinates(v)?;
        self.embedding.embed(&c)
    }
}

pub fn induced_hodge(x: &MarkedHodgeLattice, sigma: &[i64]) -> Result<InducedHodge> {
    let sigma_perp =
        Sublattice::new(x.lattice().clone(), vec![sigma.to_vec()])?.orthogonal_complement();
    let embedding = canonical_sigma_perp_embedding(&sigma_perp.lattice()?)?;
    let ns_perp = x.ns().perp_within(&[sigma.to_vec()])?;
    let mut basis = Vec::with_capacity(ns_perp.rank() + 1);
    for v in ns_perp.basis() {
        let c = sigma_perp.coordinates(v)?;
        basis.push(embedding.embed(&c)?);
    }
    basis.push(embedding.w.clone());
    let ns = Sublattice::new(embedding.ambient.clone(), basis)?
        .saturation()
        .sublattice;
    Ok(InducedHodge {
        sigma_perp,
        embedding,
        ns,
    })
}

/// Checks `σ ∈ NS`, `σ^2 = -6`, divisibility 3 and primitivity.
pub fn check_sigma(x: &MarkedHodgeLattice, sigma: &[i64]) -> Result<()> {
    let l = x.lattice();
    let wrong = |m: &str| Err(Error::WrongInvariants(format!("σ {m}")));
    if !x.ns().contains(sigma) {
        return wrong("is not in NS");
    }
    if l.square(sigma)? != -6 {
        return wrong("does not have square -6");
    }
    if l.divisibility(sigma)? != 3 {
        return wrong("does not have divisibility 3");
    }
    if !l.is_primitive(sigma)? {
        return wrong("is not primitive");
    }
    Ok(())
}

/// Primitive `σ ∈ NS` with `σ^2 = -6` and divisibility 3, up to sign, with
/// NS coordinates in `[-radius, radius]`; smallest coordinates first.
pub fn sigma_candidates(x: &MarkedHodgeLattice, radius: u32) -> Result<Vec<Vec<i64>>> {
    let ns = x.ns();
    let ns_lattice = ns.lattice()?;
    let query = VectorQuery::default()
        .with_square(-6)
        .primitive(true)
        .radius(radius);
    let mut found: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for c in enumerate_vectors(&ns_lattice, &query)? {
        let c = sign_normalized(&c);
        if found.iter().any(|(k, _)| *k == c) {
            continue;
        }
        let v = ns.to_ambient(&c);
        if x.lattice().divisibility(&v)? == 3 {
            found.push((c, v));
        }
    }
    found.sort_by_key(|(c, _)| (c.iter().map(|a| a.abs()).sum::<i64>(), Reverse(c.clone())));
    Ok(found.into_iter().map(|(_, v)| v).collect())
}

/// Reasons that rule out every `σ` at once.
fn global_obstruction(x: &MarkedHodgeLattice, sigma_given: bool) -> Option<String> {
    let rho = x.ns().rank();
    if rho <= 2 {
        return Some(format!(
            "NS has rank {rho}: the induced (1,1) part has signature (2,{}) and is positive definite",
            rho.saturating_sub(2)
        ));
    }
    if !sigma_given && rank_mod_3(x) == rho {
        return Some(
            "no vector of NS has divisibility divisible by 3 unless it is 3 times another".into(),
        );
    }
    None
}

/// Rank over F_3 of the pairings of the NS basis with `L`.
fn rank_mod_3(x: &MarkedHodgeLattice) -> usize {
    let mut rows: Vec<Vec<i64>> = x
        .ns()
        .basis()
        .iter()
        .map(|b| {
            x.lattice()
                .gram_times(b)
                .iter()
                .map(|v| v.rem_euclid(3))
                .collect()
        })
        .collect();
    let cols = x.lattice().rank();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = if rows[rank][c] == 1 { 1 } else { 2 };
        for v in rows[rank].iter_mut() {
            *v = (*v * inv) % 3;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] - f * rows[rank][j]).rem_euclid(3);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Split `x` along the hyperbolic plane `<e, f>` with `e.f = 1`.
pub fn mukai_data(ambient: &Lattice, x: &[i64], e: &[i64], f: &[i64]) -> MukaiData {
    let r = ambient.dot(x, f);
    let s = -ambient.dot(x, e);
    let l = (0..x.len()).map(|i| x[i] - r * e[i] + s * f[i]).collect();
    MukaiData { r, l, s }
}

fn twisted_data(ambient: &Lattice, cert: &HyperbolicCertificate) -> Result<TwistedData> {
    let n = cert.n;
    let (e, f_n) = (&cert.e, &cert.f);
    let f = if n == 1 {
        f_n.clone()
    } else {
        complete_to_u(ambient, e)?
    };
    let k = if n == 1 { 0 } else { ambient.dot(f_n, &f) };
    let gamma: Vec<i64> = (0..e.len()).map(|i| f_n[i] - n * f[i] - k * e[i]).collect();
    let b_field = gamma
        .iter()
        .map(|&g| BigRational::new((-g).into(), n.into()))
        .collect();
    Ok(TwistedData {
        n,
        e: e.clone(),
        f_n: f_n.clone(),
        f,
        k,
        gamma,
        b_field,
    })
}

#[derive(Clone, Copy)]
enum Flavor {
    Plain,
    Twisted(SummandMode),
}

pub fn is_numerical_moduli_space(
    x: &MarkedHodgeLattice,
    sigma: Option<&[i64]>,
    radius: u32,
) -> Result<Verdict> {
    run(x, sigma, radius, Flavor::Plain)
}

pub fn is_twisted_numerical_moduli_space(
    x: &MarkedHodgeLattice,
    sigma: Option<&[i64]>,
    radius: u32,
    mode: SummandMode,
) -> Result<Verdict> {
    run(x, sigma, radius, Flavor::Twisted(mode))
}

fn search(t: &InducedHodge, radius: u32, flavor: Flavor) -> Result<CertificateSearch> {
    let ambient = &t.embedding.ambient;
    let plain = u_summand_certificate(ambient, Some(&t.ns), radius)?;
    match (flavor, &plain) {
        (Flavor::Plain, _) | (_, CertificateSearch::Found(_)) => Ok(plain),
        (Flavor::Twisted(mode), _) => un_summand_certificate(ambient, Some(&t.ns), radius, mode),
    }
}

fn run(
    x: &MarkedHodgeLattice,
    sigma: Option<&[i64]>,
    radius: u32,
    flavor: Flavor,
) -> Result<Verdict> {
    x.require_projective()?;
    let mode = match flavor {
        Flavor::Plain => None,
        Flavor::Twisted(m) => Some(m),
    };
    if let Some(s) = sigma {
        check_sigma(x, s)?;
    }
    if let Some(reason) = global_obstruction(x, sigma.is_some()) {
        let mut v = Verdict::bare(Outcome::No, radius, reason);
        v.mode = mode;
        v.sigma = sigma.map(<[i64]>::to_vec);
        return Ok(v);
    }
    let candidates = match sigma {
        Some(s) => vec![s.to_vec()],
        None => sigma_candidates(x, radius)?,
    };
    let mut first_absent: Option<String> = None;
    for (tried, s) in candidates.iter().enumerate() {
        let t = induced_hodge(x, s)?;
        let result = search(&t, radius, flavor)?;
        match result {
            CertificateSearch::Found(cert) => {
                let ambient = t.embedding.ambient.clone();
                let twisted = match flavor {
                    Flavor::Plain => None,
                    Flavor::Twisted(_) => Some(twisted_data(&ambient, &cert)?),
                };
                let (e, f) = match &twisted {
                    Some(td) => (td.e.clone(), td.f.clone()),
                    None => (cert.e.clone(), cert.f.clone()),
                };
                let mukai_w = mukai_data(&ambient, &t.embedding.w, &e, &f);
                return Ok(Verdict {
                    outcome: Outcome::Yes,
                    sigma: Some(s.clone()),
                    model: Some(t.embedding.model),
                    ambient: Some(ambient),
                    w: Some(t.embedding.w.clone()),
                    induced_ns: Some(t.ns.basis().to_vec()),
                    certificate: Some(cert),
                    mukai_w: Some(mukai_w),
                    twisted,
                    mode,
                    sigmas_tried: tried + 1,
                    radius,
                    reason: "certificate found".into(),
                });
            }
            CertificateSearch::Absent(o) => {
                first_absent.get_or_insert_with(|| o.to_string());
            }
            CertificateSearch::NotFound { .. } => {}
        }
    }
    let mut v = match (sigma, &first_absent) {
        (Some(s), Some(reason)) => {
            let mut v = Verdict::bare(Outcome::No, radius, reason.clone());
            v.sigma = Some(s.to_vec());
            v
        }
        (Some(s), None) => {
            let mut v = Verdict::bare(
                Outcome::Inconclusive { radius },
                radius,
                "no certificate within the search radius".into(),
            );
            v.sigma = Some(s.to_vec());
            v
        }
        (None, _) if candidates.is_empty() => Verdict::bare(
            Outcome::Inconclusive { radius },
            radius,
            "no σ within the search radius".into(),
        ),
        (None, _) => Verdict::bare(
            Outcome::Inconclusive { radius },
            radius,
            format!(
                "{} σ candidates within the radius, none certified",
                candidates.len()
            ),
        ),
    };
    v.mode = mode;
    v.sigmas_tried = candidates.len();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::og10::fixtures;

    #[test]
    fn positive_fixture() {
        let x = fixtures::positive_marked();
        let v = is_numerical_moduli_space(&x, None, 3).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        assert_eq!(v.sigma.as_deref(), Some(&fixtures::sigma_ab()[..]));
        let cert = v.certificate.unwrap();
        let a = v.ambient.unwrap();
        assert_eq!(a.dot(&cert.e, &cert.f), 1);
        let w = v.mukai_w.unwrap();
        assert_eq!(a.dot(&w.l, &w.l) - 2 * w.r * w.s, 2);
    }

    #[test]
    fn definite_fixture() {
        let x = fixtures::definite_marked();
        let v = is_numerical_moduli_space(&x, None, 3).unwrap();
        assert_eq!(v.outcome, Outcome::No);
        let v = is_twisted_numerical_moduli_space(&x, None, 3, SummandMode::DirectSummand).unwrap();
        assert_eq!(v.outcome, Outcome::No);
    }

    #[test]
    fn negative_definite_ns_is_not_projective() {
        let l = fixtures::og10_lattice();
        let mut a = vec![0; 24];
        a[6] = 1;
        let x = MarkedHodgeLattice::new(l, vec![a]).unwrap();
        assert_eq!(
            is_numerical_moduli_space(&x, None, 2).unwrap_err(),
            Error::NotProjective(0, 1)
        );
    }

    #[test]
    fn degenerate_ns_is_rejected() {
        // U plus an isotropic vector orthogonal to it
        let l = fixtures::og10_lattice();
        let v = |i: usize| {
            let mut x = vec![0; 24];
            x[i] = 1;
            x
        };
        let err = MarkedHodgeLattice::new(l, vec![v(0), v(1), v(2)]).unwrap_err();
        assert!(matches!(err, Error::WrongInvariants(_)), "{err:?}");
    }

    #[test]
    fn twisted_fixture() {
        let x = fixtures::twisted_marked();
        let plain = is_numerical_moduli_space(&x, None, 3).unwrap();
        assert_ne!(plain.outcome, Outcome::Yes);
        let v = is_twisted_numerical_moduli_space(&x, None, 3, SummandMode::DirectSummand).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        let td = v.twisted.unwrap();
        assert_eq!(td.n, 2);
        let a = v.ambient.unwrap();
        let recomposed: Vec<i64> = (0..24)
            .map(|i| td.gamma[i] + td.n * td.f[i] + td.k * td.e[i])
            .collect();
        assert_eq!(recomposed, td.f_n);
        assert_eq!(a.dot(&td.gamma, &td.e), 0);
        assert_eq!(a.dot(&td.gamma, &td.f), 0);
    }

    #[test]
    fn untwisted_yes_is_twisted_yes_with_n_one() {
        let x = fixtures::positive_marked();
        let v = is_twisted_numerical_moduli_space(&x, None, 3, SummandMode::DirectSummand).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        let td = v.twisted.unwrap();
        assert_eq!(td.n, 1);
        assert!(td
            .b_field
            .iter()
            .all(|b| *b == BigRational::from_integer(0.into())));
    }

    #[test]
    fn supplied_sigma_is_validated() {
        let x = fixtures::positive_marked();
        let mut bad = vec![0; 24];
        bad[0] = 1;
        assert!(matches!(
            is_numerical_moduli_space(&x, Some(&bad), 2),
            Err(Error::WrongInvariants(_))
        ));
    }
}
