// SPDX-License-Identifier: Apache-2.0

//! Reading lattices, documents and inline vectors.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use og10_lattice::text::{parse_document, parse_lattice, Document};
use og10_lattice::{Error, Lattice, Result};

fn bad(token: &str, message: &str) -> Error {
    Error::Syntax {
        line: 1,
        token: token.to_string(),
        message: message.to_string(),
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| bad(path, &e.to_string()))
}

/// A file path if one exists, otherwise an inline expression or document.
pub fn lattice(arg: &str) -> Result<Lattice> {
    if Path::new(arg).is_file() {
        parse_lattice(&read(arg)?)
    } else {
        parse_lattice(arg)
    }
}

pub fn document(path: &str) -> Result<Document> {
    parse_document(&read(path)?)
}

/// `1 0 -1; 0 1 0` or `1,0,-1`.
pub fn int_rows(spec: &str) -> Result<Vec<Vec<i64>>> {
    spec.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad(t, "expected an integer")))
                .collect()
        })
        .collect()
}

pub fn rational_rows(spec: &str) -> Result<Vec<Vec<BigRational>>> {
    spec.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(rational)
                .collect()
        })
        .collect()
}

fn rational(t: &str) -> Result<BigRational> {
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let n: BigInt = n.parse().map_err(|_| bad(t, "expected a rational a/b"))?;
    let d: BigInt = d.parse().map_err(|_| bad(t, "expected a rational a/b"))?;
    if d == BigInt::from(0) {
        return Err(bad(t, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// `a..b` inclusive.
pub fn range(spec: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| bad(spec, "expected a range a..b"))?;
    let a: u64 = a
        .trim()
        .parse()
        .map_err(|_| bad(a, "expected an integer"))?;
    let b: u64 = b
        .trim()
        .parse()
        .map_err(|_| bad(b, "expected an integer"))?;
    if a > b {
        return Err(bad(spec, "empty range"));
    }
    Ok(a..=b)
}

pub fn need<'a, T: ?Sized>(x: Option<&'a T>, what: &str) -> Result<&'a T> {
    x.ok_or_else(|| bad(what, &format!("document has no `{what}` section")))
}
