// SPDX-License-Identifier: Apache-2.0

//! Named lattices and the small expression language used to write them.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := atom ['(' int ')'] ['^' int] ['(' int ')']
//! atom   := 'U' | 'A' n | 'D' n | 'E' n | '[' int ']'
//! ```
//!
//! `A_n`, `D_n`, `E_n` are the positive definite Cartan matrices with `-1` on
//! the edges of the Dynkin diagram, nodes numbered as in Bourbaki. A twist
//! `(k)` multiplies the form by `k`; `^j` repeats the block `j` times. The
//! optional underscore in `A_2` is accepted.

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Parse `expr` and build the orthogonal direct sum it describes.
pub fn standard(expr: &str) -> Result<Lattice> {
    let blocks = Parser::new(expr).parse()?;
    let refs: Vec<&Lattice> = blocks.iter().collect();
    Ok(Lattice::direct_sum(&refs)?.with_name(expr.trim()))
}

pub fn hyperbolic_plane() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    g
}

pub fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    from_edges(n, &edges)
}

pub fn cartan_d(n: usize) -> Vec<Vec<i64>> {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 2, n));
    from_edges(n, &edges)
}

pub fn cartan_e(n: usize) -> Vec<Vec<i64>> {
    // Bourbaki: 1-3-4-5-...-n with 2 attached to 4
    let mut edges = vec![(1, 3), (2, 4)];
    edges.extend((3..n).map(|i| (i, i + 1)));
    from_edges(n, &edges)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn parse(mut self) -> Result<Vec<Lattice>> {
        let mut blocks = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            blocks.extend(self.term()?);
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(blocks)
    }

    fn twist(&mut self) -> Result<Option<i64>> {
        if self.peek() != Some(b'(') {
            return Ok(None);
        }
        self.pos += 1;
        let k = self.integer()?;
        if k == 0 {
            return Err(self.err("twist by 0 is degenerate"));
        }
        self.expect(b')')?;
        Ok(Some(k))
    }

    fn term(&mut self) -> Result<Vec<Lattice>> {
        let mut block = self.atom()?;
        let mut twisted = false;
        if let Some(k) = self.twist()? {
            block = block.twist(k)?;
            twisted = true;
        }
        let mut copies = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let j = self.integer()?;
            if j < 1 {
                return Err(self.err("exponent must be positive"));
            }
            copies = j as usize;
        }
        if !twisted {
            if let Some(k) = self.twist()? {
                block = block.twist(k)?;
            }
        }
        Ok(vec![block; copies])
    }

    fn atom(&mut self) -> Result<Lattice> {
        let c = self
            .peek()
            .ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'[' {
            self.pos += 1;
            let m = self.integer()?;
            self.expect(b']')?;
            return Lattice::new(vec![vec![m]]);
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.err(format!("unexpected `{}`", c as char)));
        }
        let start = self.pos;
        self.pos += 1;
        if c == b'U' {
            return Lattice::new(hyperbolic_plane());
        }
        if self.bytes.get(self.pos) == Some(&b'_') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let token = &self.src[start..self.pos];
        let n: usize = self.src[digits..self.pos]
            .parse()
            .map_err(|_| Error::UnknownToken(token.to_string()))?;
        let gram = match (c, n) {
            (b'A', n) if n >= 1 => cartan_a(n),
            (b'D', n) if n >= 4 => cartan_d(n),
            (b'E', 6..=8) => cartan_e(n),
            _ => return Err(Error::UnknownToken(token.to_string())),
        };
        Lattice::new(gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Signature;

    #[test]
    fn og10_lattice_invariants() {
        let l = standard("U^3 + E8(-1)^2 + A2(-1)").unwrap();
        assert_eq!(l.rank(), 24);
        assert!(l.is_even());
        assert_eq!(l.det(), -3);
        assert_eq!(l.signature(), Signature::new(3, 21));
    }

    #[test]
    fn mukai_lattice_is_unimodular() {
        let l = standard("U^4 + E8(-1)^2").unwrap();
        assert_eq!(l.rank(), 24);
        assert!(l.is_even());
        assert!(l.is_unimodular());
        assert_eq!(l.signature(), Signature::new(4, 20));
    }

    #[test]
    fn rank_one() {
        let l = standard("[2]").unwrap();
        assert_eq!(l.gram(), &[vec![2]]);
        assert_eq!(standard("[-6]").unwrap().gram(), &[vec![-6]]);
    }

    #[test]
    fn cartan_determinants() {
        // det A_n = n+1, det D_n = 4, det E_n = 9-n
        for n in 1..8 {
            assert_eq!(Lattice::new(cartan_a(n)).unwrap().det(), n as i64 + 1);
        }
        for n in 4..10 {
            assert_eq!(Lattice::new(cartan_d(n)).unwrap().det(), 4);
        }
        for n in 6..=8 {
            assert_eq!(Lattice::new(cartan_e(n)).unwrap().det(), 9 - n as i64);
        }
    }

    #[test]
    fn e8_negative_definite() {
        let inv = standard("E8(-1)").unwrap().invariants();
        assert_eq!((inv.rank, inv.det, inv.even), (8, 1, true));
        assert_eq!(inv.signature, Signature::new(0, 8));
    }

    #[test]
    fn twist_before_or_after_power() {
        let a = standard("U(2)^2").unwrap();
        let b = standard("U^2(2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.det(), 16);
    }

    #[test]
    fn errors() {
        assert!(matches!(standard("F4"), Err(Error::UnknownToken(_))));
        assert!(matches!(standard("E9"), Err(Error::UnknownToken(_))));
        assert!(matches!(standard("U +"), Err(Error::Parse { .. })));
        assert!(matches!(standard("U(0)"), Err(Error::Parse { .. })));
        assert!(matches!(standard("[2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn underscore_names() {
        assert_eq!(standard("A_2").unwrap(), standard("A2").unwrap());
    }
}
