//! Text forms: ring expressions, element literals and matrix literals.
//!
//! ```text
//! ring   := factor ("x" factor)*          product binds loosest
//! factor := "Z" nat | "Z" nat "[x]/(" poly ")" | "(" ring ")"
//! poly   := term ("+" term)*
//! term   := nat | nat ["*"] "x" ["^" nat] | "x" ["^" nat]
//! ```
//!
//! Elements are written as residues (`3`), polynomials (`1+x`, `2x^2`) or
//! parenthesized tuples (`(1,0)`). Matrix literals separate rows by `;` and
//! entries by `,`, e.g. `2,0;0,1`.

use thiserror::Error;

use crate::matrix::Matrix;
use crate::ring::{Element, Ring, RingError, RingShape, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("entry {entry:?} is out of range: {message}")]
    OutOfRange { entry: String, message: String },
    #[error("expected a {expected}x{expected} matrix, got {message}")]
    Shape { expected: usize, message: String },
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected {c:?}, found {found:?}")),
                None => self.error(format!("expected {c:?}, found end of input")),
            }
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<(), ParseError> {
        for c in s.chars() {
            self.expect(c)?;
        }
        Ok(())
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a natural number");
        }
        self.text[start..self.pos].parse().map_err(|_| ParseError::Syntax {
            pos: start,
            message: "number too large".into(),
        })
    }

    fn at_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected {c:?}")),
        }
    }
}

/// Polynomial as `(coefficient, degree)` terms, in source order.
fn poly_terms(cur: &mut Cursor<'_>) -> Result<Vec<(u64, u64)>, ParseError> {
    let mut terms = Vec::new();
    loop {
        let coeff = if cur.at_digit() { Some(cur.nat()?) } else { None };
        let has_x = if coeff.is_some() {
            cur.eat('*');
            cur.eat('x')
        } else {
            cur.expect('x')?;
            true
        };
        let degree = if has_x {
            if cur.eat('^') {
                cur.nat()?
            } else {
                1
            }
        } else {
            0
        };
        terms.push((coeff.unwrap_or(1), degree));
        if !cur.eat('+') {
            return Ok(terms);
        }
    }
}

fn ring_expr(cur: &mut Cursor<'_>) -> Result<RingSpec, ParseError> {
    let mut factors = vec![ring_factor(cur)?];
    while cur.eat('x') || cur.eat('×') {
        factors.push(ring_factor(cur)?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        RingSpec::Product(factors)
    })
}

fn ring_factor(cur: &mut Cursor<'_>) -> Result<RingSpec, ParseError> {
    if cur.eat('(') {
        let inner = ring_expr(cur)?;
        cur.expect(')')?;
        return Ok(inner);
    }
    cur.expect('Z')?;
    let m = cur.nat()?;
    if cur.peek() != Some('[') {
        return Ok(RingSpec::Modular(m));
    }
    cur.expect_str("[x]/(")?;
    let terms = poly_terms(cur)?;
    cur.expect(')')?;
    let degree = terms.iter().map(|&(_, d)| d).max().unwrap_or(0) as usize;
    let mut modulus = vec![0u64; degree + 1];
    for (c, d) in terms {
        let slot = &mut modulus[d as usize];
        *slot = (*slot + c % m.max(1)) % m.max(1);
    }
    Ok(RingSpec::Quotient { base: m, modulus })
}

/// Parses a ring expression such as `Z2[x]/(x^3+x+1) x Z4` and validates it.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut cur = Cursor::new(text);
    let spec = ring_expr(&mut cur)?;
    cur.finish()?;
    spec.validate()?;
    Ok(spec)
}

fn element_at(ring: &Ring, cur: &mut Cursor<'_>) -> Result<Element, ParseError> {
    let start = cur.pos;
    let out_of_range = |cur: &Cursor<'_>, message: String| ParseError::OutOfRange {
        entry: cur.text[start..cur.pos].trim().to_string(),
        message,
    };
    match ring.shape() {
        RingShape::Modular { m } => {
            let r = cur.nat()?;
            if r >= m as u64 {
                return Err(out_of_range(cur, format!("residues must be below {m}")));
            }
            Ok(ring.element(r as usize)?)
        }
        RingShape::Quotient { m, degree } => {
            let terms = poly_terms(cur)?;
            let mut coeffs = vec![0u64; degree];
            for (c, d) in terms {
                if c >= m as u64 {
                    return Err(out_of_range(cur, format!("coefficients must be below {m}")));
                }
                if d as usize >= degree {
                    return Err(out_of_range(cur, format!("degree must be below {degree}")));
                }
                coeffs[d as usize] = (coeffs[d as usize] + c) % m as u64;
            }
            let index = coeffs.iter().rev().fold(0u64, |acc, &c| acc * m as u64 + c);
            Ok(ring.element(index as usize)?)
        }
        RingShape::Product { factors, strides } => {
            cur.expect('(')?;
            let mut index = 0usize;
            for (i, (factor, &stride)) in factors.iter().zip(strides).enumerate() {
                if i > 0 {
                    cur.expect(',')?;
                }
                index += element_at(factor, cur)?.index() * stride as usize;
            }
            cur.expect(')')?;
            Ok(ring.element(index)?)
        }
    }
}

/// Parses one element in the ring's literal syntax.
pub fn parse_element(ring: &Ring, text: &str) -> Result<Element, ParseError> {
    let mut cur = Cursor::new(text);
    let e = element_at(ring, &mut cur)?;
    cur.finish()?;
    Ok(e)
}

/// Splits on `sep` outside parentheses.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Parses an `n x n` matrix literal over `ring`.
pub fn parse_matrix(text: &str, ring: &Ring, n: usize) -> Result<Matrix, ParseError> {
    let rows = split_top(text.trim(), ';');
    if rows.len() != n {
        return Err(ParseError::Shape {
            expected: n,
            message: format!("{} rows", rows.len()),
        });
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let cells = split_top(row, ',');
        if cells.len() != n {
            return Err(ParseError::Shape {
                expected: n,
                message: format!("{} entries in row {}", cells.len(), i + 1),
            });
        }
        for cell in cells {
            entries.push(parse_element(ring, cell)?);
        }
    }
    Ok(Matrix::from_entries(ring, n, n, entries).expect("shape checked above"))
}
