// SPDX-License-Identifier: Apache-2.0

//! Gauss sums `sum_x exp(pi i q(x)) = sqrt|A| exp(2 pi i s / 8)` evaluated in
//! `Z[zeta_K]`, one primary component at a time.

use std::collections::HashMap;

use num_integer::Integer;

use super::FiniteQuadraticForm;
use crate::error::{Error, Result};

/// The residue `s mod 8`, summed over the primary components.
pub fn milgram_residue(form: &FiniteQuadraticForm) -> Result<u8> {
    let mut total = 0u8;
    let mut cache = HashMap::new();
    for p in form.primes() {
        let s = component_residue(&form.p_component(p), &mut cache)?;
        total = (total + s) % 8;
    }
    Ok(total)
}

fn component_residue(
    form: &FiniteQuadraticForm,
    cache: &mut HashMap<usize, Vec<i128>>,
) -> Result<u8> {
    let order = form.order()? as i128;
    // exp(pi i q) with q = n / den is zeta_{2 den}^n
    let two_den = 2 * form.den as usize;
    let k = two_den.lcm(&8);
    let step = k / two_den;
    let mut gauss = vec![0i128; k];
    form.for_each_element(|x| gauss[(form.q_num(x) as usize * step) % k] += 1)?;

    let square = cyclic_square(&gauss);
    let phi = cyclotomic(k, cache);
    let eighth = k / 8;
    let mut base = None;
    for s in 0..4usize {
        // G^2 = |A| zeta_8^{2s}
        let mut diff = square.clone();
        diff[(2 * s * eighth) % k] -= order;
        if reduce_mod(&diff, &phi).iter().all(|&c| c == 0) {
            base = Some(s);
            break;
        }
    }
    let s = base.ok_or_else(|| Error::InvalidForm("form is degenerate".into()))?;
    // G zeta_8^{-s} is +-sqrt|A|
    let re: f64 = gauss
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64 - (s * eighth) as f64) / k as f64;
            c as f64 * angle.cos()
        })
        .sum();
    Ok(if re > 0.0 { s as u8 } else { s as u8 + 4 })
}

/// Square in `Z[x]/(x^k - 1)`.
fn cyclic_square(a: &[i128]) -> Vec<i128> {
    let k = a.len();
    let mut out = vec![0i128; k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in a.iter().enumerate() {
            if y != 0 {
                out[(i + j) % k] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `Phi_n`, lowest degree first.
fn cyclotomic(n: usize, cache: &mut HashMap<usize, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i128; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi = cyclotomic(d, cache);
            poly = divide_exact(&poly, &phi);
        }
    }
    cache.insert(n, poly.clone());
    poly
}

/// Quotient by a monic divisor.
fn divide_exact(a: &[i128], m: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    let mut quot = vec![0i128; a.len() - dm];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dm];
        quot[i] = c;
        for (j, &mj) in m.iter().enumerate() {
            rem[i + j] -= c * mj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Remainder modulo a monic polynomial.
fn reduce_mod(a: &[i128], m: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    for i in (dm..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            rem[i - dm + j] -= c * mj;
        }
    }
    rem.truncate(dm);
    rem
}
