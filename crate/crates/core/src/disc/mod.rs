// SPDX-License-Identifier: Apache-2.0

//! Discriminant groups `A_L = L^∨/L` and finite quadratic forms.

mod equivalence;
mod genus;
mod milgram;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{lcm_i64, linalg, Lattice};

pub use equivalence::{forms_equivalent, Equivalence, EXACT_ISOMORPHISM_BOUND};
pub use genus::{genus_tag, GenusTag};
pub use milgram::milgram_residue;

/// Largest group whose elements are enumerated one by one.
pub const ELEMENT_ENUMERATION_CAP: u64 = 1 << 24;

/// A finite abelian group `Z/d_1 + ... + Z/d_k` with a quadratic form to
/// `Q/2Z` and its bilinear form to `Q/Z`, given on generators.
///
/// Values are kept as integer numerators over a common denominator `den`:
/// `q(g_i) = q[i] / den mod 2` and `b(g_i, g_j) = b[i][j] / den mod 1`.
#[derive(Debug, Clone)]
pub struct FiniteQuadraticForm {
    factors: Vec<i64>,
    lifts: Vec<Vec<BigRational>>,
    inverse_basis: Vec<Vec<BigInt>>,
    den: i64,
    q: Vec<i64>,
    b: Vec<Vec<i64>>,
}

impl PartialEq for FiniteQuadraticForm {
    /// Same factors and the same values on generators.
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
            && (0..self.len()).all(|i| {
                self.q_value(i) == other.q_value(i)
                    && (0..self.len()).all(|j| self.b_value(i, j) == other.b_value(i, j))
            })
    }
}

fn mod_floor(a: i128, m: i128) -> i64 {
    a.mod_floor(&m) as i64
}

fn reduce(x: Rational64, modulus: i64) -> Rational64 {
    let m = Rational64::from_integer(modulus);
    x - (x / m).floor() * m
}

impl FiniteQuadraticForm {
    /// Abstract form from its values on generators. `q` is read mod 2 and
    /// `b` mod 1.
    pub fn from_values(
        factors: Vec<i64>,
        q: Vec<Rational64>,
        b: Vec<Vec<Rational64>>,
    ) -> Result<Self> {
        let k = factors.len();
        let invalid = |m: String| Err(Error::InvalidForm(m));
        if q.len() != k || b.len() != k || b.iter().any(|r| r.len() != k) {
            return invalid("value tables do not match the number of generators".into());
        }
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return invalid(format!("invariant factor {d} is not at least 2"));
        }
        let q: Vec<Rational64> = q.into_iter().map(|x| reduce(x, 2)).collect();
        let b: Vec<Vec<Rational64>> = b
            .into_iter()
            .map(|r| r.into_iter().map(|x| reduce(x, 1)).collect())
            .collect();
        for i in 0..k {
            let d = Rational64::from_integer(factors[i]);
            for j in 0..k {
                if b[i][j] != b[j][i] {
                    return invalid(format!("b is not symmetric at ({i}, {j})"));
                }
                if !(b[i][j] * d).is_integer() {
                    return invalid(format!("b(g{i}, g{j}) is not killed by {}", factors[i]));
                }
            }
            if reduce(q[i], 1) != b[i][i] {
                return invalid(format!("q(g{i}) and b(g{i}, g{i}) disagree mod 1"));
            }
            if reduce(q[i] * d * d, 2) != Rational64::zero() {
                return invalid(format!("q is not well defined on generator {i}"));
            }
        }
        let den = lcm_i64(q.iter().chain(b.iter().flatten()).map(|x| *x.denom()));
        let num = |x: &Rational64| (x * Rational64::from_integer(den)).to_integer();
        Ok(Self {
            factors,
            lifts: Vec::new(),
            inverse_basis: Vec::new(),
            den,
            q: q.iter().map(num).collect(),
            b: b.iter().map(|r| r.iter().map(num).collect()).collect(),
        })
    }

    pub fn trivial() -> Self {
        Self {
            factors: Vec::new(),
            lifts: Vec::new(),
            inverse_basis: Vec::new(),
            den: 1,
            q: Vec::new(),
            b: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &d| {
            acc.checked_mul(d as u64)
                .ok_or(Error::Overflow("group order"))
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Lifts of the generators to `L^∨`, in lattice coordinates. Empty for
    /// abstract forms.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.lifts
    }

    /// `q(g_i)` in `[0, 2)`.
    pub fn q_value(&self, i: usize) -> Rational64 {
        Rational64::new(self.q[i], self.den)
    }

    /// `b(g_i, g_j)` in `[0, 1)`.
    pub fn b_value(&self, i: usize, j: usize) -> Rational64 {
        Rational64::new(self.b[i][j], self.den)
    }

    /// Numerator of `q(x)` over `den`, reduced mod `2 den`.
    fn q_num(&self, x: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for i in 0..self.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as i128;
            acc += xi * xi * self.q[i] as i128;
            for j in i + 1..self.len() {
                acc += 2 * xi * x[j] as i128 * self.b[i][j] as i128;
            }
        }
        mod_floor(acc, 2 * self.den as i128)
    }

    fn b_num(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                acc += x[i] as i128 * y[j] as i128 * self.b[i][j] as i128;
            }
        }
        mod_floor(acc, self.den as i128)
    }

    /// `q(sum x_i g_i)` in `[0, 2)`.
    pub fn q_of(&self, x: &[i64]) -> Result<Rational64> {
        self.check_len(x)?;
        Ok(Rational64::new(self.q_num(x), self.den))
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b_of(&self, x: &[i64], y: &[i64]) -> Result<Rational64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(Rational64::new(self.b_num(x, y), self.den))
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Visit every element as a coefficient tuple `0 <= x_i < d_i`, in
    /// mixed-radix order starting from 0.
    pub fn for_each_element(&self, mut f: impl FnMut(&[i64])) -> Result<()> {
        let order = self.order()?;
        if order > ELEMENT_ENUMERATION_CAP {
            return Err(Error::BudgetExceeded(order));
        }
        let mut x = vec![0i64; self.len()];
        loop {
            f(&x);
            let mut i = 0;
            loop {
                if i == x.len() {
                    return Ok(());
                }
                x[i] += 1;
                if x[i] < self.factors[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.for_each_element(|x| out.push(x.to_vec()))?;
        Ok(out)
    }

    /// Sorted list of `q(x)` over all elements.
    pub fn q_multiset(&self) -> Result<Vec<Rational64>> {
        let mut nums = Vec::new();
        self.for_each_element(|x| nums.push(self.q_num(x)))?;
        nums.sort_unstable();
        Ok(nums
            .into_iter()
            .map(|n| Rational64::new(n, self.den))
            .collect())
    }

    /// Nonzero elements with `q(x) = 0 mod 2`.
    pub fn isotropic_elements(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.for_each_element(|x| {
            if x.iter().any(|&c| c != 0) && self.q_num(x) == 0 {
                out.push(x.to_vec());
            }
        })?;
        Ok(out)
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.factors)
            .fold(1i64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// Lift of `sum x_i g_i` to `L^∨`.
    pub fn lift(&self, x: &[i64]) -> Result<Vec<BigRational>> {
        self.check_len(x)?;
        let Some(first) = self.lifts.first() else {
            return Err(Error::InvalidForm("abstract form has no lifts".into()));
        };
        let mut out = vec![BigRational::zero(); first.len()];
        for (c, g) in x.iter().zip(&self.lifts) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer((*c).into());
            for (o, v) in out.iter_mut().zip(g) {
                *o += &c * v;
            }
        }
        Ok(out)
    }

    /// Class of a dual vector `y` (lattice coordinates) as a coefficient
    /// tuple, `NotInDual` if `y` does not pair integrally with `L`.
    pub fn class_of(&self, y: &[BigRational]) -> Result<Vec<i64>> {
        if self.lifts.is_empty() && !self.factors.is_empty() {
            return Err(Error::InvalidForm("abstract form has no lifts".into()));
        }
        let n = self.inverse_basis.len();
        if y.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: y.len(),
            });
        }
        // c = D V^{-1} y must be integral; entries at the nontrivial factors
        // are the coefficients
        let mut out = Vec::with_capacity(self.len());
        let offset = n - self.len();
        for (i, row) in self.inverse_basis.iter().enumerate() {
            let mut c = BigRational::zero();
            for (a, b) in row.iter().zip(y) {
                c += BigRational::from_integer(a.clone()) * b;
            }
            let d = if i >= offset {
                self.factors[i - offset]
            } else {
                1
            };
            let c = c * BigRational::from_integer(d.into());
            if !c.is_integer() {
                return Err(Error::NotInDual(i));
            }
            if i >= offset {
                let v = c.to_integer().mod_floor(&BigInt::from(d));
                out.push(v.to_i64().expect("reduced below d"));
            }
        }
        Ok(out)
    }

    /// Orthogonal sum; generators of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let (s, t) = (den / self.den, den / other.den);
        let k = self.len() + other.len();
        let mut b = vec![vec![0i64; k]; k];
        for i in 0..self.len() {
            for j in 0..self.len() {
                b[i][j] = self.b[i][j] * s;
            }
        }
        for i in 0..other.len() {
            for j in 0..other.len() {
                b[self.len() + i][self.len() + j] = other.b[i][j] * t;
            }
        }
        let q = self
            .q
            .iter()
            .map(|x| x * s)
            .chain(other.q.iter().map(|x| x * t))
            .collect();
        Self {
            factors: self.factors.iter().chain(&other.factors).copied().collect(),
            lifts: Vec::new(),
            inverse_basis: Vec::new(),
            den,
            q,
            b,
        }
    }

    /// The `p`-primary part, generated by `(d_i / p^a_i) g_i`.
    pub fn p_component(&self, p: i64) -> Self {
        let mut keep = Vec::new();
        for (i, &d) in self.factors.iter().enumerate() {
            let mut pa = 1;
            let mut rest = d;
            while rest % p == 0 {
                rest /= p;
                pa *= p;
            }
            if pa > 1 {
                keep.push((i, pa, rest));
            }
        }
        let two_den = 2 * self.den as i128;
        let q = keep
            .iter()
            .map(|&(i, _, m)| mod_floor(m as i128 * m as i128 * self.q[i] as i128, two_den))
            .collect();
        let b = keep
            .iter()
            .map(|&(i, _, mi)| {
                keep.iter()
                    .map(|&(j, _, mj)| {
                        mod_floor(
                            mi as i128 * mj as i128 * self.b[i][j] as i128,
                            self.den as i128,
                        )
                    })
                    .collect()
            })
            .collect();
        Self {
            factors: keep.iter().map(|&(_, pa, _)| pa).collect(),
            lifts: Vec::new(),
            inverse_basis: Vec::new(),
            den: self.den,
            q,
            b,
        }
    }

    /// Primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<i64> {
        let mut out = Vec::new();
        let Some(&last) = self.factors.last() else {
            return out;
        };
        // every prime divides the largest invariant factor
        let mut n = last;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }
}

/// `A_L` for an even lattice, from the Smith form `U G V = D`: the columns of
/// `V D^{-1}` at the nontrivial factors generate `L^∨ / L`.
pub fn discriminant_group(l: &Lattice) -> Result<FiniteQuadraticForm> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let n = l.rank();
    let snf = linalg::snf(&linalg::to_big(l.gram()));
    let v_inv = linalg::rational_inverse(
        &snf.v
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect::<Vec<_>>(),
    )
    .expect("unimodular transform");
    let inverse_basis: Vec<Vec<BigInt>> = v_inv
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer()).collect())
        .collect();
    let diag: Vec<i64> = snf
        .diag
        .iter()
        .map(|d| d.abs().to_i64().ok_or(Error::Overflow("invariant factor")))
        .collect::<Result<_>>()?;
    // SNF puts the unit factors first
    let first = diag.iter().position(|&d| d > 1).unwrap_or(n);
    let factors = diag[first..].to_vec();
    let lifts: Vec<Vec<BigRational>> = (first..n)
        .map(|j| {
            let d = BigInt::from(diag[j]);
            (0..n)
                .map(|i| BigRational::new(snf.v[i][j].clone(), d.clone()))
                .collect()
        })
        .collect();
    let g = linalg::to_rational(l.gram());
    let pairing = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &x[i] * &g[i][j] * &y[j];
            }
        }
        acc
    };
    let small = |x: BigRational, modulus: i64| -> Result<Rational64> {
        let m = BigRational::from_integer(modulus.into());
        let r = &x - (&x / &m).floor() * &m;
        let num = r
            .numer()
            .to_i64()
            .ok_or(Error::Overflow("discriminant value"))?;
        let den = r
            .denom()
            .to_i64()
            .ok_or(Error::Overflow("discriminant value"))?;
        Ok(Rational64::new(num, den))
    };
    let k = lifts.len();
    let mut q = Vec::with_capacity(k);
    let mut b = vec![vec![Rational64::zero(); k]; k];
    for i in 0..k {
        q.push(small(pairing(&lifts[i], &lifts[i]), 2)?);
        for j in 0..k {
            b[i][j] = small(pairing(&lifts[i], &lifts[j]), 1)?;
        }
    }
    let mut form = FiniteQuadraticForm::from_values(factors, q, b)?;
    form.lifts = lifts;
    form.inverse_basis = inverse_basis;
    Ok(form)
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return writeln!(f, "group 1");
        }
        let group: Vec<String> = self.factors.iter().map(i64::to_string).collect();
        writeln!(f, "group {}", group.join(","))?;
        for i in 0..self.len() {
            writeln!(f, "q g{} = {} mod 2", i + 1, self.q_value(i))?;
        }
        Ok(())
    }
}
