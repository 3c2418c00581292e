// SPDX-License-Identifier: Apache-2.0

//! Exact integer and rational matrix kernels.
//!
//! Matrices are dense `Vec<Vec<_>>` in row-major order. Everything here works
//! over `BigInt`/`BigRational`, so results never depend on the size of the
//! intermediate entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ZMatrix = Vec<Vec<BigInt>>;
pub type QMatrix = Vec<Vec<BigRational>>;

pub fn to_big(m: &[Vec<i64>]) -> ZMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow("vector entry")))
        .collect()
}

pub fn to_i64(m: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    m.iter().map(|row| to_i64_vec(row)).collect()
}

pub fn to_rational(m: &[Vec<i64>]) -> QMatrix {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> ZMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn row_combine(rows: &mut [Vec<BigInt>], p: usize, i: usize, c: [&BigInt; 4]) {
    // (row_p, row_i) <- (c0 row_p + c1 row_i, c2 row_p + c3 row_i)
    for j in 0..rows[p].len() {
        let x = rows[p][j].clone();
        let y = rows[i][j].clone();
        rows[p][j] = c[0] * &x + c[1] * &y;
        rows[i][j] = c[2] * &x + c[3] * &y;
    }
}

fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, q: &BigInt, source: usize) {
    // row_target -= q * row_source
    for j in 0..rows[target].len() {
        let s = q * &rows[source][j];
        rows[target][j] -= s;
    }
}

/// Row Hermite normal form with transform.
#[derive(Debug, Clone)]
pub struct Hnf {
    /// `u * a`; the first `rank` rows are the nonzero echelon rows.
    pub h: ZMatrix,
    /// Unimodular row transform.
    pub u: ZMatrix,
    pub rank: usize,
}

pub fn hnf(a: &[Vec<BigInt>]) -> Hnf {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h = a.to_vec();
    let mut u = identity(m);
    let mut p = 0;
    for c in 0..n {
        if p == m {
            break;
        }
        for i in p + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            if h[p][c].is_zero() {
                h.swap(p, i);
                u.swap(p, i);
                continue;
            }
            let a_pc = h[p][c].clone();
            let a_ic = h[i][c].clone();
            let e = a_pc.extended_gcd(&a_ic);
            let ap = &a_pc / &e.gcd;
            let bp = &a_ic / &e.gcd;
            let nbp = -bp;
            let coeffs = [&e.x, &e.y, &nbp, &ap];
            row_combine(&mut h, p, i, coeffs);
            row_combine(&mut u, p, i, coeffs);
        }
        if h[p][c].is_zero() {
            continue;
        }
        if h[p][c].is_negative() {
            for x in h[p].iter_mut().chain(u[p].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..p {
            let q = h[i][c].div_floor(&h[p][c]);
            if !q.is_zero() {
                row_axpy(&mut h, i, &q, p);
                row_axpy(&mut u, i, &q, p);
            }
        }
        p += 1;
    }
    Hnf { h, u, rank: p }
}

/// Basis of `{x : x * a = 0}` (row vectors), saturated and in Hermite form.
pub fn left_kernel(a: &[Vec<BigInt>]) -> ZMatrix {
    let res = hnf(a);
    let kernel: ZMatrix = res.u[res.rank..].to_vec();
    if kernel.is_empty() {
        return kernel;
    }
    let reduced = hnf(&kernel);
    reduced.h[..reduced.rank].to_vec()
}

/// Basis of `{x : a * x = 0}`, saturated and in Hermite form.
pub fn right_kernel(a: &[Vec<BigInt>], cols: usize) -> ZMatrix {
    if a.is_empty() {
        return identity(cols);
    }
    left_kernel(&transpose(a))
}

/// Smith normal form `u * a * v = diag`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: ZMatrix,
    pub v: ZMatrix,
}

pub fn snf(a: &[Vec<BigInt>]) -> Snf {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut s = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let swap_cols = |mat: &mut ZMatrix, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };
    let col_axpy = |mat: &mut ZMatrix, target: usize, q: &BigInt, source: usize| {
        for row in mat.iter_mut() {
            let x = q * &row[source];
            row[target] -= x;
        }
    };
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut s, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                row_axpy(&mut s, i, &q, t);
                row_axpy(&mut u, i, &q, t);
                if !s[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                col_axpy(&mut s, j, &q, t);
                col_axpy(&mut v, j, &q, t);
                if !s[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t onto the diagonal
                let mut pos = (t, t);
                for i in t + 1..m {
                    if !s[i][t].is_zero() && s[i][t].abs() < s[pos.0][pos.1].abs() {
                        pos = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !s[t][j].is_zero() && s[t][j].abs() < s[pos.0][pos.1].abs() {
                        pos = (t, j);
                    }
                }
                if pos.0 != t {
                    s.swap(t, pos.0);
                    u.swap(t, pos.0);
                } else if pos.1 != t {
                    swap_cols(&mut s, t, pos.1);
                    swap_cols(&mut v, t, pos.1);
                }
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[i][j].is_multiple_of(&s[t][t]));
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -x.clone();
            }
        }
    }
    let diag = (0..m.min(n)).map(|i| s[i][i].clone()).collect();
    Snf { diag, u, v }
}

/// Inverse over the rationals, `None` for singular input.
pub fn rational_inverse(a: &[Vec<BigRational>]) -> Option<QMatrix> {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let mut inv: QMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let pivot = m[c][c].clone();
        for j in 0..n {
            m[c][j] = &m[c][j] / &pivot;
            inv[c][j] = &inv[c][j] / &pivot;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..n {
                let a = &f * &m[c][j];
                m[i][j] -= a;
                let b = &f * &inv[c][j];
                inv[i][j] -= b;
            }
        }
    }
    Some(inv)
}

/// Solve `c * basis = x` for the coefficient row `c`; `basis` must have
/// independent rows.
pub fn solve_left(basis: &[Vec<BigRational>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = x.len();
    // augmented system basis^T c = x, n equations in k unknowns
    let mut sys: QMatrix = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(x[j].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !sys[i][c].is_zero()) else {
            continue;
        };
        sys.swap(r, p);
        let pivot = sys[r][c].clone();
        for v in sys[r].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..n {
            if i == r || sys[i][c].is_zero() {
                continue;
            }
            let f = sys[i][c].clone();
            for j in 0..=k {
                let d = &f * &sys[r][j];
                sys[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < k || (r..n).any(|i| !sys[i][k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| sys[i][k].clone()).collect())
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix by
/// congruence diagonalization.
pub fn inertia(a: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        let mut pivot = (k..n).find(|&i| !m[i][i].is_zero());
        if pivot.is_none() {
            // zero diagonal: a hyperbolic pair (i, j) becomes a nonzero pivot
            // after adding e_j to e_i
            let pair = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && !m[i][j].is_zero());
            let Some((i, j)) = pair else {
                return (pos, neg, n - k);
            };
            for c in 0..n {
                let add = m[j][c].clone();
                m[i][c] += add;
            }
            for r in 0..n {
                let add = m[r][j].clone();
                m[r][i] += add;
            }
            pivot = Some(i);
        }
        let p = pivot.expect("pivot chosen above");
        m.swap(k, p);
        for row in m.iter_mut() {
            row.swap(k, p);
        }
        let d = m[k][k].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &d;
            for j in k..n {
                let s = &f * &m[k][j];
                m[i][j] -= s;
            }
        }
        for i in k + 1..n {
            m[k][i] = BigRational::zero();
            m[i][k] = BigRational::zero();
        }
    }
    (pos, neg, 0)
}

/// `gcd` of a vector, zero for the zero vector.
pub fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Integer vector `x` with `sum row_i * x_i = gcd(row)`.
pub fn bezout_vector(row: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); row.len()];
    for (i, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = a.abs();
            coeffs[i] = if a.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            continue;
        }
        let e = g.extended_gcd(a);
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    (g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: &[&[i64]]) -> ZMatrix {
        to_big(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = z(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det(&m), BigInt::from(4));
        let m = z(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&m), BigInt::from(-1));
        let m = z(&[&[1, 1], &[1, 1]]);
        assert_eq!(det(&m), BigInt::zero());
    }

    #[test]
    fn hnf_transform_reproduces_h() {
        let a = z(&[&[2, 4, 6], &[1, 3, 5], &[3, 7, 11]]);
        let res = hnf(&a);
        assert_eq!(mul(&res.u, &a), res.h);
        assert_eq!(res.rank, 2);
        assert_eq!(det(&res.u).abs(), BigInt::one());
    }

    #[test]
    fn snf_of_doubled_identity_and_transforms() {
        let a = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = snf(&a);
        assert_eq!(
            s.diag,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diag[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0
        let a = z(&[&[1], &[2], &[3]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row
                .iter()
                .zip([1, 2, 3])
                .map(|(x, c)| x * BigInt::from(c))
                .sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let u = to_rational(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(inertia(&u), (1, 1, 0));
        let m = to_rational(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]]);
        assert_eq!(inertia(&m), (1, 2, 0));
    }

    #[test]
    fn bezout_vector_hits_gcd() {
        let row: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let (g, x) = bezout_vector(&row);
        assert_eq!(g, BigInt::one());
        let s: BigInt = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        assert_eq!(s, BigInt::one());
    }
}
