// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use og10_lattice::embeddings::{canonical_sigma_perp_embedding, EmbeddingModel, SIGMA_PERP_EXPR};
use og10_lattice::lattice::standard;
use og10_lattice::og10::{
    check_og10_invariants, fixtures, gamma_v, is_numerical_moduli_space,
    is_twisted_numerical_moduli_space, MarkedHodgeLattice, Outcome, OG10_EXPR,
};
use og10_lattice::text::{parse_document, parse_lattice, write_lattice};
use og10_lattice::{genus_tag, Lattice};

const GOLDEN_OG10: &str = include_str!("golden/og10.lattice");

/// Gram matrix in the basis `b_i = e_i + e_j` for the given `(i, j)` pairs
/// applied in order; returns it with the map on coordinates `x -> x B^{-1}`.
fn rebased(l: &Lattice, moves: &[(usize, usize)]) -> (Lattice, impl Fn(&[i64]) -> Vec<i64>) {
    let n = l.rank();
    let mut basis: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j) in moves {
        let row = basis[j].clone();
        for (a, b) in basis[i].iter_mut().zip(row) {
            *a += b;
        }
    }
    let gram = basis
        .iter()
        .map(|x| basis.iter().map(|y| l.pair(x, y).unwrap()).collect())
        .collect();
    let moves = moves.to_vec();
    let coords = move |x: &[i64]| {
        // undo the row operations in reverse: y B = x
        let mut y = x.to_vec();
        for &(i, j) in moves.iter().rev() {
            y[j] -= y[i];
        }
        y
    };
    (Lattice::new(gram).unwrap(), coords)
}

#[test]
fn golden_og10_round_trip() {
    let l = standard(OG10_EXPR).unwrap();
    assert_eq!(write_lattice("og10", &l), GOLDEN_OG10);
    let parsed = parse_lattice(GOLDEN_OG10).unwrap();
    assert_eq!(parsed.gram(), l.gram());
    let doc = parse_document(GOLDEN_OG10).unwrap();
    assert_eq!(doc.lattice("og10").unwrap(), &l);
}

#[test]
fn every_fixture_round_trips() {
    for expr in [
        "U",
        "A2(-1)",
        "E8(-2)",
        "E6(-2) + U(2)^2 + [2] + [-2]",
        SIGMA_PERP_EXPR,
        "U^4 + E8(-1)^2",
    ] {
        let l = standard(expr).unwrap();
        let text = write_lattice("x", &l);
        let back = parse_lattice(&text).unwrap();
        assert_eq!(back.gram(), l.gram(), "{expr}");
        assert_eq!(write_lattice("x", &back), text, "{expr}");
    }
}

#[test]
fn gamma_chain_over_bases() {
    let og10_tag = genus_tag(&standard(OG10_EXPR).unwrap()).unwrap();
    let base = standard(SIGMA_PERP_EXPR).unwrap();
    let variants = [
        vec![],
        vec![(22, 0)],
        vec![(22, 6), (1, 0)],
        vec![(5, 22), (14, 13)],
    ];
    for moves in variants {
        let (v_perp, _) = rebased(&base, &moves);
        let g = gamma_v(&v_perp).unwrap();
        let l = g.lattice();
        assert_eq!(l.rank(), v_perp.rank() + 1);
        assert_eq!(l.det().abs(), 3);
        assert!(l.is_even());
        assert_eq!(genus_tag(l).unwrap(), og10_tag, "{moves:?}");
        check_og10_invariants(l).unwrap();
        let e = canonical_sigma_perp_embedding(&v_perp).unwrap();
        assert!(e.check().unwrap().passes(), "{moves:?}");
        if !moves.is_empty() {
            assert_eq!(e.model, EmbeddingModel::Glued);
        }
    }
}

#[test]
fn nms_in_another_basis() {
    let og10 = standard(OG10_EXPR).unwrap();
    let (l, coords) = rebased(&og10, &[(22, 0), (23, 1), (6, 2)]);
    let l = Arc::new(l);
    let x = fixtures::positive_marked();
    let ns: Vec<Vec<i64>> = x.ns().basis().iter().map(|v| coords(v)).collect();
    for v in &ns {
        let orig = x.ns().basis().iter().find(|w| coords(w) == *v).unwrap();
        assert_eq!(l.square(v).unwrap(), og10.square(orig).unwrap());
    }
    let y = MarkedHodgeLattice::new(l, ns).unwrap();
    let v = is_numerical_moduli_space(&y, None, 3).unwrap();
    assert_eq!(v.outcome, Outcome::Yes);
    let cert = v.certificate.unwrap();
    let a = v.ambient.unwrap();
    assert_eq!(a.pair(&cert.e, &cert.f).unwrap(), 1);
    assert_eq!(a.square(&cert.e).unwrap(), 0);
    assert!(a.is_unimodular());
    let t = is_twisted_numerical_moduli_space(&y, None, 3, Default::default()).unwrap();
    assert_eq!(t.twisted.unwrap().n, 1);
}

#[test]
fn twisted_embedding_only_mode_agrees_on_fixture() {
    let x = fixtures::twisted_marked();
    let a = is_twisted_numerical_moduli_space(&x, None, 3, Default::default()).unwrap();
    let b = is_twisted_numerical_moduli_space(
        &x,
        None,
        3,
        og10_lattice::embeddings::SummandMode::EmbeddingOnly,
    )
    .unwrap();
    assert_eq!(a.outcome, Outcome::Yes);
    assert_eq!(b.outcome, Outcome::Yes);
    assert_eq!(b.twisted.unwrap().n, 2);
}
