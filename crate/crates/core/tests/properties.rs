// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use og10_lattice::disc::milgram_residue;
use og10_lattice::embeddings::{
    extend_isometry, overlattice_from_glue, u_summand_certificate, CertificateSearch,
};
use og10_lattice::lattice::{enumerate_vectors, Isometry, VectorQuery};
use og10_lattice::og10::{
    fixtures, hassett_admissible, hassett_star, hassett_star_prime, is_numerical_moduli_space,
    is_twisted_numerical_moduli_space, mukai_lattice, mukai_pair, MarkedHodgeLattice, MukaiVector,
    Outcome,
};
use og10_lattice::{discriminant_group, Lattice, Sublattice};
use proptest::prelude::*;

/// Non-degenerate even lattices of rank 1..=max with small entries.
fn even_lattice(max: usize) -> impl Strategy<Value = Lattice> {
    (1..=max)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-3i64..=3, n),
                prop::collection::vec(-2i64..=2, n * (n - 1) / 2),
            )
        })
        .prop_filter_map("degenerate", |(n, diag, off)| {
            let mut g = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                g[i][i] = 2 * diag[i];
                for j in i + 1..n {
                    g[i][j] = off[k];
                    g[j][i] = off[k];
                    k += 1;
                }
            }
            Lattice::new(g).ok()
        })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, n)
}

fn lattice_and_vector(max: usize) -> impl Strategy<Value = (Lattice, Vec<i64>)> {
    even_lattice(max).prop_flat_map(|l| {
        let n = l.rank();
        (Just(l), vector(n))
    })
}

fn pair_by_hand(l: &Lattice, v: &[i64], w: &[i64]) -> i64 {
    let g = l.gram();
    let mut s = 0;
    for i in 0..v.len() {
        for j in 0..w.len() {
            s += v[i] * g[i][j] * w[j];
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divisibility_is_gcd_of_pairings((l, v) in lattice_and_vector(6), w in vector(6)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let n = l.rank();
        let brute = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                pair_by_hand(&l, &v, &e)
            })
            .fold(0i64, |a, b| a.gcd(&b));
        let d = l.divisibility(&v).unwrap();
        prop_assert_eq!(d, brute);
        if d != 0 {
            prop_assert_eq!(pair_by_hand(&l, &v, &w[..n]) % d, 0);
        }
    }

    #[test]
    fn signature_and_determinant(l in even_lattice(6)) {
        let s = l.signature();
        prop_assert_eq!(s.positive + s.negative, l.rank());
        prop_assert_eq!(l.det().signum(), if s.negative % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn saturation_is_idempotent((l, v) in lattice_and_vector(5), k in 2i64..5) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let l = Arc::new(l);
        let scaled: Vec<i64> = v.iter().map(|x| x * k).collect();
        let s = Sublattice::new(l, vec![scaled]).unwrap();
        let sat = s.saturation();
        prop_assert_eq!(sat.index % k as u64, 0);
        let again = sat.sublattice.saturation();
        prop_assert_eq!(again.index, 1);
        prop_assert_eq!(again.sublattice.basis(), sat.sublattice.basis());
    }

    #[test]
    fn complements_are_saturated((l, v) in lattice_and_vector(6)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let n = l.rank();
        let l = Arc::new(l);
        let c = Sublattice::new(l.clone(), vec![v.clone()]).unwrap().orthogonal_complement();
        prop_assert_eq!(c.rank(), n - 1);
        prop_assert!(c.is_saturated());
        for b in c.basis() {
            prop_assert_eq!(pair_by_hand(&l, b, &v), 0);
        }
    }

    #[test]
    fn twisting_scales(l in even_lattice(5), k in prop::sample::select(vec![-3i64, -2, -1, 2, 3])) {
        let t = l.twist(k).unwrap();
        let r = l.rank() as u32;
        prop_assert_eq!(t.det(), l.det() * k.pow(r));
        let s = l.signature();
        let ts = t.signature();
        if k > 0 {
            prop_assert_eq!(ts, s);
        } else {
            prop_assert_eq!((ts.positive, ts.negative), (s.negative, s.positive));
        }
        prop_assert_eq!(discriminant_group(&t).unwrap().order().unwrap(), t.det().unsigned_abs());
    }

    #[test]
    fn direct_sums_are_orthogonal(a in even_lattice(4), b in even_lattice(4)) {
        let s = Lattice::direct_sum(&[&a, &b]).unwrap();
        let (m, n) = (a.rank(), b.rank());
        for i in 0..m {
            for j in 0..n {
                prop_assert_eq!(s.gram()[i][m + j], 0);
            }
        }
        prop_assert_eq!(s.det(), a.det() * b.det());
        let lhs = discriminant_group(&s).unwrap().q_multiset().unwrap();
        let rhs = discriminant_group(&a)
            .unwrap()
            .direct_sum(&discriminant_group(&b).unwrap())
            .q_multiset()
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn enumeration_is_symmetric(l in even_lattice(4), sq in -4i64..=4) {
        let vs = enumerate_vectors(&l, &VectorQuery::default().with_square(sq).radius(2)).unwrap();
        for v in &vs {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(vs.contains(&neg));
            prop_assert_eq!(pair_by_hand(&l, v, v), sq);
        }
    }

    #[test]
    fn discriminant_order_is_abs_det(l in even_lattice(6)) {
        let a = discriminant_group(&l).unwrap();
        prop_assert_eq!(a.order().unwrap(), l.det().unsigned_abs());
        prop_assert_eq!(a.invariant_factors().iter().product::<i64>(), l.det().abs());
    }

    #[test]
    fn milgram_matches_signature(l in even_lattice(6)) {
        let a = discriminant_group(&l).unwrap();
        let s = l.signature();
        let expected = (s.positive as i64 - s.negative as i64).rem_euclid(8) as u8;
        prop_assert_eq!(milgram_residue(&a).unwrap(), expected);
    }

    #[test]
    fn glue_determinant_and_extension(a in even_lattice(3), b in even_lattice(3), pick in any::<prop::sample::Index>()) {
        let sum = Lattice::direct_sum(&[&a, &b]).unwrap();
        let form = discriminant_group(&sum).unwrap();
        prop_assume!(form.order().unwrap() <= 4096);
        let iso: Vec<Vec<i64>> = form
            .isotropic_elements()
            .unwrap()
            .into_iter()
            .filter(|x| x.iter().any(|&c| c != 0))
            .collect();
        prop_assume!(!iso.is_empty());
        let x = pick.get(&iso);
        let glue = form.lift(x).unwrap();
        let m = overlattice_from_glue(&a, &b, &[glue]).unwrap();
        let idx = m.index as i64;
        prop_assert_eq!(idx, form.element_order(x));
        prop_assert_eq!(m.overlattice.det() * idx * idx, a.det() * b.det());
        prop_assert!(m.overlattice.is_even());
        // -id commutes with the inclusion
        let beta = extend_isometry(
            &m,
            &m,
            &Isometry::negation(a.clone()),
            &Isometry::negation(b.clone()),
        )
        .unwrap();
        for row in m.inclusion() {
            let img = beta.apply(&row).unwrap();
            let neg: Vec<i64> = row.iter().map(|x| -x).collect();
            prop_assert_eq!(img, neg);
        }
    }

    #[test]
    fn no_u_when_all_pairings_even(l in even_lattice(4)) {
        prop_assume!(!l.is_definite());
        let t = l.twist(2).unwrap();
        prop_assert!(t.all_pairings_even());
        let c = u_summand_certificate(&t, None, 2).unwrap();
        prop_assert!(!matches!(c, CertificateSearch::Found(_)), "found U in {:?}", t.gram());
    }

    #[test]
    fn mukai_pairing_is_lattice_pairing(
        ns in even_lattice(3),
        r1 in -4i64..=4, s1 in -4i64..=4, r2 in -4i64..=4, s2 in -4i64..=4,
        l1 in vector(3), l2 in vector(3),
    ) {
        let n = ns.rank();
        let ns = Arc::new(ns);
        let v = MukaiVector::new(ns.clone(), r1, l1[..n].to_vec(), s1).unwrap();
        let w = MukaiVector::new(ns.clone(), r2, l2[..n].to_vec(), s2).unwrap();
        let m = mukai_lattice(&ns).unwrap();
        prop_assert_eq!(
            mukai_pair(&v, &w).unwrap(),
            pair_by_hand(&m, &v.coordinates(), &w.coordinates())
        );
        prop_assert_eq!(mukai_pair(&v, &v).unwrap(), v.square());
    }

    #[test]
    fn star_implies_star_prime(d in 7u64..5000) {
        prop_assume!(hassett_admissible(d));
        if let Some(n) = hassett_star(d) {
            prop_assert_eq!((2 * n * n + 2 * n + 2) % d, 0);
            prop_assert!(hassett_star_prime(d).holds);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nms_yes_implies_twisted_with_n_one(extra in prop::collection::vec(-2i64..=2, 6)) {
        prop_assume!(extra.iter().any(|&x| x != 0));
        let mut u = vec![0i64; 24];
        u[..6].copy_from_slice(&extra);
        let mut e1 = vec![0i64; 24];
        e1[0] = 1;
        let l = fixtures::og10_lattice();
        let span = Sublattice::new(l.clone(), vec![fixtures::sigma_ab(), e1, u]);
        prop_assume!(span.is_ok());
        let ns = span.unwrap().saturation().sublattice;
        let x = MarkedHodgeLattice::new(l, ns.basis().to_vec());
        prop_assume!(x.is_ok(), "degenerate NS");
        let x = x.unwrap();
        prop_assume!(x.is_projective());
        let plain = is_numerical_moduli_space(&x, None, 2).unwrap();
        if plain.outcome == Outcome::Yes {
            let twisted = is_twisted_numerical_moduli_space(&x, None, 2, Default::default()).unwrap();
            prop_assert_eq!(twisted.outcome, Outcome::Yes);
            prop_assert_eq!(twisted.twisted.unwrap().n, 1);
        }
    }
}

#[test]
fn q_values_of_rank_one_lattices() {
    // [2k] has A = Z/2k generated by 1/2k with q = 1/2k
    for k in [-5i64, -3, -1, 1, 2, 7] {
        let l = Lattice::new(vec![vec![2 * k]]).unwrap();
        let a = discriminant_group(&l).unwrap();
        if k.abs() == 1 {
            assert_eq!(a.invariant_factors(), &[2]);
        }
        let q = a.q_value(0);
        let expected = Rational64::new(1, 2 * k);
        let diff = q - expected;
        // same class up to a unit: q(u g) = u^2 q(g)
        let ok = (1..2 * k.abs())
            .filter(|u| u.gcd(&(2 * k.abs())) == 1)
            .any(|u| {
                let t = expected * Rational64::from_integer(u * u) - q;
                (t / Rational64::from_integer(2)).is_integer()
            });
        assert!(ok, "[{}]: q = {q}, diff {diff}", 2 * k);
    }
}
