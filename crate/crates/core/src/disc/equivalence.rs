// SPDX-License-Identifier: Apache-2.0

use super::{milgram_residue, FiniteQuadraticForm};
use crate::error::Result;

/// Orders up to this bound are compared by an explicit isomorphism search.
pub const EXACT_ISOMORPHISM_BOUND: u64 = 64;

/// Outcome of [`forms_equivalent`]. `exact` is false when a positive answer
/// rests only on matching invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub exact: bool,
}

pub fn forms_equivalent(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm) -> Result<Equivalence> {
    let differ = Equivalence {
        equivalent: false,
        exact: true,
    };
    if a.invariant_factors() != b.invariant_factors() {
        return Ok(differ);
    }
    if a.order()? <= EXACT_ISOMORPHISM_BOUND {
        return Ok(Equivalence {
            equivalent: isomorphism(a, b)?.is_some(),
            exact: true,
        });
    }
    if a.q_multiset()? != b.q_multiset()? {
        return Ok(differ);
    }
    for p in a.primes() {
        if milgram_residue(&a.p_component(p))? != milgram_residue(&b.p_component(p))? {
            return Ok(differ);
        }
    }
    Ok(Equivalence {
        equivalent: true,
        exact: false,
    })
}

/// Images of the generators of `a` in `b` defining an isometry, if any.
///
/// A map preserving `q` on generators and `b` on pairs preserves `q`
/// everywhere; it is injective because `b` is non-degenerate, so equal orders
/// make it bijective.
pub fn isomorphism(
    a: &FiniteQuadraticForm,
    b: &FiniteQuadraticForm,
) -> Result<Option<Vec<Vec<i64>>>> {
    if a.order()? != b.order()? {
        return Ok(None);
    }
    let elements = b.elements()?;
    let k = a.invariant_factors().len();
    let candidates: Vec<Vec<&Vec<i64>>> = (0..k)
        .map(|i| {
            let d = a.invariant_factors()[i];
            elements
                .iter()
                .filter(|y| killed_by(b, y, d) && b.q_of(y).ok() == Some(a.q_value(i)))
                .collect()
        })
        .collect();
    let mut images: Vec<Vec<i64>> = Vec::with_capacity(k);
    Ok(search(a, b, &candidates, &mut images).then_some(images))
}

fn killed_by(form: &FiniteQuadraticForm, y: &[i64], d: i64) -> bool {
    y.iter()
        .zip(form.invariant_factors())
        .all(|(&c, &f)| (c * d) % f == 0)
}

fn search(
    a: &FiniteQuadraticForm,
    b: &FiniteQuadraticForm,
    candidates: &[Vec<&Vec<i64>>],
    images: &mut Vec<Vec<i64>>,
) -> bool {
    let i = images.len();
    if i == candidates.len() {
        return true;
    }
    for y in &candidates[i] {
        let fits = images
            .iter()
            .enumerate()
            .all(|(j, z)| b.b_of(y, z).ok() == Some(a.b_value(i, j)));
        if !fits {
            continue;
        }
        images.push((*y).clone());
        if search(a, b, candidates, images) {
            return true;
        }
        images.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::discriminant_group;
    use crate::lattice::standard;
    use num_rational::Rational64;

    fn cyclic(d: i64, q: Rational64) -> FiniteQuadraticForm {
        let b = q - q.floor();
        FiniteQuadraticForm::from_values(vec![d], vec![q], vec![vec![b]]).unwrap()
    }

    #[test]
    fn z3_against_itself() {
        let a = cyclic(3, Rational64::new(-2, 3));
        let e = forms_equivalent(&a, &a.clone()).unwrap();
        assert_eq!(
            e,
            Equivalence {
                equivalent: true,
                exact: true
            }
        );
    }

    #[test]
    fn z2_half_vs_minus_half() {
        let a = cyclic(2, Rational64::new(1, 2));
        let b = cyclic(2, Rational64::new(-1, 2));
        assert!(!forms_equivalent(&a, &b).unwrap().equivalent);
    }

    #[test]
    fn e8_minus_two_is_invariant_level() {
        let a = discriminant_group(&standard("E8(-2)").unwrap()).unwrap();
        let e = forms_equivalent(&a, &a).unwrap();
        assert_eq!(
            e,
            Equivalence {
                equivalent: true,
                exact: false
            }
        );
    }

    #[test]
    fn different_generators_same_form() {
        // A2(-1) disc vs the abstract Z/3 with q = 4/3
        let a = discriminant_group(&standard("A2(-1)").unwrap()).unwrap();
        let b = cyclic(3, Rational64::new(4, 3));
        assert!(forms_equivalent(&a, &b).unwrap().equivalent);
        // A2 has q = 2/3
        let c = discriminant_group(&standard("A2").unwrap()).unwrap();
        assert!(!forms_equivalent(&a, &c).unwrap().equivalent);
    }

    #[test]
    fn u2_vs_d4() {
        let u2 = discriminant_group(&standard("U(2)").unwrap()).unwrap();
        let d4 = discriminant_group(&standard("D4").unwrap()).unwrap();
        let u2u2 = u2.direct_sum(&u2);
        // (Z/2)^2 with q in {0,0,0,1} vs {0,1,1,1}
        assert!(!forms_equivalent(&u2, &d4).unwrap().equivalent);
        assert_eq!(u2u2.order(), Ok(16));
        let d4d4 = discriminant_group(&standard("D4 + D4").unwrap()).unwrap();
        assert!(forms_equivalent(&u2u2, &d4d4).unwrap().equivalent);
    }
}
