// SPDX-License-Identifier: Apache-2.0

//! Plain-text documents holding lattices, vectors, matrices, glue and
//! discriminant forms.
//!
//! ```text
//! # comment
//! lattice X rank 2
//! 0 1
//! 1 0
//! lattice L = U^3 + E8(-1)^2 + A2(-1)
//! vectors ns count 1
//! 0 0 ... 1 -1
//! matrix g rows 24
//! ...
//! glue s count 1
//! 1/2 0 1/3
//! discform A gens 1
//! 3 4/3 1/3
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::disc::FiniteQuadraticForm;
use crate::error::{Error, Result};
use crate::lattice::{standard, Lattice};

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Lattice(Lattice),
    Vectors(Vec<Vec<i64>>),
    Matrix(Vec<Vec<i64>>),
    Glue(Vec<Vec<BigRational>>),
    DiscForm(FiniteQuadraticForm),
}

/// Named items in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    pub items: Vec<(String, Item)>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn lattice(&self, name: &str) -> Option<&Lattice> {
        self.items.iter().find_map(|(n, i)| match i {
            Item::Lattice(l) if n == name => Some(l),
            _ => None,
        })
    }

    /// First lattice in the document.
    pub fn first_lattice(&self) -> Option<(&str, &Lattice)> {
        self.items.iter().find_map(|(n, i)| match i {
            Item::Lattice(l) => Some((n.as_str(), l)),
            _ => None,
        })
    }

    pub fn vectors(&self, name: &str) -> Option<&[Vec<i64>]> {
        self.items.iter().find_map(|(n, i)| match i {
            Item::Vectors(v) if n == name => Some(v.as_slice()),
            _ => None,
        })
    }

    pub fn matrix(&self, name: &str) -> Option<&[Vec<i64>]> {
        self.items.iter().find_map(|(n, i)| match i {
            Item::Matrix(v) if n == name => Some(v.as_slice()),
            _ => None,
        })
    }

    pub fn glue(&self, name: &str) -> Option<&[Vec<BigRational>]> {
        self.items.iter().find_map(|(n, i)| match i {
            Item::Glue(v) if n == name => Some(v.as_slice()),
            _ => None,
        })
    }

    pub fn discform(&self, name: &str) -> Option<&FiniteQuadraticForm> {
        self.items.iter().find_map(|(n, i)| match i {
            Item::DiscForm(f) if n == name => Some(f),
            _ => None,
        })
    }

    pub fn push(&mut self, name: impl Into<String>, item: Item) {
        self.items.push((name.into(), item));
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank, non-comment line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn syntax(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

fn int(line: usize, tok: &str) -> Result<i64> {
    tok.parse()
        .map_err(|_| syntax(line, tok, "expected an integer"))
}

fn rational(line: usize, tok: &str) -> Result<BigRational> {
    let bad = || syntax(line, tok, "expected a rational a/b");
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(syntax(line, tok, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn rational64(line: usize, tok: &str) -> Result<Rational64> {
    let r = rational(line, tok)?;
    let conv = |x: &BigInt| i64::try_from(x).map_err(|_| syntax(line, tok, "value out of range"));
    Ok(Rational64::new(conv(r.numer())?, conv(r.denom())?))
}

fn rows<'a, T>(
    lines: &mut Lines<'a>,
    header_line: usize,
    header: &str,
    count: usize,
    width: Option<usize>,
    parse: impl Fn(usize, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, line) = lines
            .next()
            .ok_or_else(|| syntax(header_line, header, format!("expected {count} rows")))?;
        let row = line
            .split_whitespace()
            .map(|t| parse(no, t))
            .collect::<Result<Vec<T>>>()?;
        let expected = width.or_else(|| out.first().map(Vec::len));
        if let Some(w) = expected {
            if row.len() != w {
                return Err(syntax(
                    no,
                    line,
                    format!("expected {w} entries, found {}", row.len()),
                ));
            }
        }
        out.push(row);
    }
    Ok(out)
}

fn expect_word(line: usize, toks: &[&str], i: usize, word: &str) -> Result<()> {
    match toks.get(i) {
        Some(&t) if t == word => Ok(()),
        Some(&t) => Err(syntax(line, t, format!("expected `{word}`"))),
        None => Err(syntax(
            line,
            toks.last().copied().unwrap_or(""),
            format!("expected `{word}`"),
        )),
    }
}

fn count_at(line: usize, toks: &[&str], i: usize) -> Result<usize> {
    let t = toks
        .get(i)
        .ok_or_else(|| syntax(line, toks.last().copied().unwrap_or(""), "expected a count"))?;
    let n = int(line, t)?;
    usize::try_from(n).map_err(|_| syntax(line, t, "count must be non-negative"))
}

pub fn parse_document(input: &str) -> Result<Document> {
    let mut lines = Lines {
        inner: input.lines().enumerate(),
    };
    let mut doc = Document::default();
    while let Some((no, line)) = lines.next() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let kind = toks[0];
        let name = toks
            .get(1)
            .copied()
            .ok_or_else(|| syntax(no, kind, "missing name"))?;
        let is_expr = kind == "lattice" && toks.get(2) == Some(&"=");
        if !is_expr && toks.len() > 4 {
            return Err(syntax(no, toks[4], "unexpected token"));
        }
        if doc.get(name).is_some() {
            return Err(syntax(no, name, "duplicate name"));
        }
        let item = match kind {
            "lattice" if is_expr => {
                let expr = line.split_once('=').map(|(_, e)| e.trim()).unwrap_or("");
                let l = standard(expr).map_err(|e| match e {
                    Error::Parse { message, .. } => syntax(no, expr, message),
                    Error::UnknownToken(t) => syntax(no, &t, "unknown token"),
                    other => syntax(no, expr, other.to_string()),
                })?;
                Item::Lattice(l.with_name(name))
            }
            "lattice" => {
                expect_word(no, &toks, 2, "rank")?;
                let r = count_at(no, &toks, 3)?;
                let gram = rows(&mut lines, no, line, r, Some(r), int)?;
                let l = Lattice::new(gram).map_err(|e| syntax(no, name, e.to_string()))?;
                Item::Lattice(l.with_name(name))
            }
            "vectors" => {
                expect_word(no, &toks, 2, "count")?;
                let k = count_at(no, &toks, 3)?;
                Item::Vectors(rows(&mut lines, no, line, k, None, int)?)
            }
            "matrix" => {
                expect_word(no, &toks, 2, "rows")?;
                let k = count_at(no, &toks, 3)?;
                Item::Matrix(rows(&mut lines, no, line, k, None, int)?)
            }
            "glue" => {
                expect_word(no, &toks, 2, "count")?;
                let k = count_at(no, &toks, 3)?;
                Item::Glue(rows(&mut lines, no, line, k, None, rational)?)
            }
            "discform" => {
                expect_word(no, &toks, 2, "gens")?;
                let k = count_at(no, &toks, 3)?;
                let table = rows(&mut lines, no, line, k, Some(k + 2), |l, t| {
                    Ok((l, t.to_string()))
                })?;
                let mut factors = Vec::with_capacity(k);
                let mut q = Vec::with_capacity(k);
                let mut b = Vec::with_capacity(k);
                for row in &table {
                    factors.push(int(row[0].0, &row[0].1)?);
                    q.push(rational64(row[1].0, &row[1].1)?);
                    b.push(
                        row[2..]
                            .iter()
                            .map(|(l, t)| rational64(*l, t))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                let form = FiniteQuadraticForm::from_values(factors, q, b)
                    .map_err(|e| syntax(no, name, e.to_string()))?;
                Item::DiscForm(form)
            }
            other => return Err(syntax(no, other, "unknown section")),
        };
        doc.push(name, item);
    }
    Ok(doc)
}

/// A lattice from a document or, failing that, an expression.
pub fn parse_lattice(input: &str) -> Result<Lattice> {
    let trimmed = input.trim();
    let looks_like_document = trimmed
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| {
            l.starts_with("lattice ") || l.starts_with("vectors ") || l.starts_with("matrix ")
        });
    if looks_like_document {
        let doc = parse_document(input)?;
        return doc
            .first_lattice()
            .map(|(_, l)| l.clone())
            .ok_or_else(|| syntax(1, "", "document contains no lattice"));
    }
    standard(trimmed)
}

fn write_rows<T: std::fmt::Display>(out: &mut String, rows: &[Vec<T>]) {
    for row in rows {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
}

pub fn write_lattice(name: &str, l: &Lattice) -> String {
    let mut out = format!("lattice {name} rank {}\n", l.rank());
    write_rows(&mut out, l.gram());
    out
}

pub fn write_vectors(name: &str, vs: &[Vec<i64>]) -> String {
    let mut out = format!("vectors {name} count {}\n", vs.len());
    write_rows(&mut out, vs);
    out
}

pub fn write_matrix(name: &str, m: &[Vec<i64>]) -> String {
    let mut out = format!("matrix {name} rows {}\n", m.len());
    write_rows(&mut out, m);
    out
}

pub fn write_glue(name: &str, g: &[Vec<BigRational>]) -> String {
    let mut out = format!("glue {name} count {}\n", g.len());
    write_rows(&mut out, g);
    out
}

/// The machine-readable form: one row `d q b_1 ... b_k` per generator.
pub fn write_discform(name: &str, f: &FiniteQuadraticForm) -> String {
    let k = f.invariant_factors().len();
    let mut out = format!("discform {name} gens {k}\n");
    for i in 0..k {
        let mut row = vec![
            f.invariant_factors()[i].to_string(),
            f.q_value(i).to_string(),
        ];
        row.extend((0..k).map(|j| f.b_value(i, j).to_string()));
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_document(doc: &Document) -> String {
    let mut out = String::new();
    for (name, item) in &doc.items {
        out.push_str(&match item {
            Item::Lattice(l) => write_lattice(name, l),
            Item::Vectors(v) => write_vectors(name, v),
            Item::Matrix(m) => write_matrix(name, m),
            Item::Glue(g) => write_glue(name, g),
            Item::DiscForm(f) => write_discform(name, f),
        });
    }
    out
}
