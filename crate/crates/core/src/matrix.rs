//! Dense matrices over a finite commutative ring.
//!
//! Determinants are computed without division by Laplace expansion along rows,
//! memoized over column subsets, which stays sound in the presence of
//! zero-divisors where elimination would not.

use std::fmt;

use thiserror::Error;

use crate::ideal::Ideal;
use crate::ring::{Element, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} is outside 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("element index {0} does not belong to the ring")]
    ForeignElement(usize),
}

/// Ordered 1-based row or column selection; entries may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(indices: impl Into<Vec<usize>>) -> Self {
        IndexTuple(indices.into())
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    /// `(1, 2, .., m)`.
    pub fn leading(m: usize) -> Self {
        IndexTuple((1..=m).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, bound: usize) -> Result<(), MatrixError> {
        match self.0.iter().find(|&&i| i == 0 || i > bound) {
            Some(&index) => Err(MatrixError::IndexOutOfRange { index, bound }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]({})", self.ring, self.literal())
    }
}

impl std::hash::Hash for Matrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.entries.hash(state);
    }
}

impl Matrix {
    pub fn from_entries(
        ring: &Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Element>,
    ) -> Result<Self, MatrixError> {
        if rows * cols != entries.len() {
            return Err(MatrixError::Shape(format!(
                "{rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&a| !ring.contains(a)) {
            return Err(MatrixError::ForeignElement(bad.index()));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds from row vectors of carrier indices.
    pub fn from_indices(ring: &Ring, rows: &[&[usize]]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for &i in rows.iter().flat_map(|row| row.iter()) {
            entries.push(ring.element(i).map_err(|_| MatrixError::ForeignElement(i))?);
        }
        Matrix::from_entries(ring, r, c, entries)
    }

    pub(crate) fn from_parts_unchecked(ring: &Ring, rows: usize, cols: usize, entries: Vec<Element>) -> Self {
        debug_assert_eq!(rows * cols, entries.len());
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// Zero-based entry access.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Element {
        self.entries[row * self.cols + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.index() == 0)
    }

    /// Matrix literal: rows separated by `;`, entries by `,`.
    pub fn literal(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.ring.format_element(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    fn same_ring(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(MatrixError::RingMismatch)
        }
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix::from_parts_unchecked(&self.ring, self.rows, self.cols, entries))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|&a| self.ring.neg(a)).collect();
        Matrix::from_parts_unchecked(&self.ring, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let r = &self.ring;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = r.zero();
                for k in 0..self.cols {
                    acc = r.add(acc, r.mul(self.get(i, k), other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        Matrix::from_parts_unchecked(r, self.rows, other.cols, entries)
    }

    pub fn scalar_mul(&self, a: Element) -> Matrix {
        let entries = self.entries.iter().map(|&x| self.ring.mul(a, x)).collect();
        Matrix::from_parts_unchecked(&self.ring, self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        Matrix::from_parts_unchecked(&self.ring, self.cols, self.rows, entries)
    }

    /// `A ⊥ B`: both products vanish.
    pub fn is_orthogonal_to(&self, other: &Matrix) -> Result<bool, MatrixError> {
        Ok(self.mul(other)?.is_zero() && other.mul(self)?.is_zero())
    }

    pub fn determinant(&self) -> Result<Element, MatrixError> {
        self.require_square()?;
        Ok(det_entries(&self.ring, self.rows, &self.entries))
    }

    /// Cofactor matrix: entry `(i, j)` is `(-1)^(i+j)` times the minor with row
    /// `i` and column `j` removed.
    pub fn cofactor(&self) -> Result<Matrix, MatrixError> {
        let n = self.require_square()?;
        let r = &self.ring;
        if n == 1 {
            return Ok(Matrix::from_parts_unchecked(r, 1, 1, vec![r.one()]));
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            for j in 0..n {
                minor.clear();
                for p in (0..n).filter(|&p| p != i) {
                    for q in (0..n).filter(|&q| q != j) {
                        minor.push(self.get(p, q));
                    }
                }
                let d = det_entries(r, n - 1, &minor);
                entries.push(if (i + j) % 2 == 0 { d } else { r.neg(d) });
            }
        }
        Ok(Matrix::from_parts_unchecked(r, n, n, entries))
    }

    /// Transposed cofactor matrix; the adjugate of a 1x1 matrix is `[[1]]`.
    pub fn adjugate(&self) -> Result<Matrix, MatrixError> {
        Ok(self.cofactor()?.transpose())
    }

    /// `A^{P1}_{P2}`: entry `(l1, l2)` is `A[P1[l1], P2[l2]]`, indices 1-based.
    pub fn submatrix(&self, rows: &IndexTuple, cols: &IndexTuple) -> Result<Matrix, MatrixError> {
        rows.check(self.rows)?;
        cols.check(self.cols)?;
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows.as_slice() {
            for &j in cols.as_slice() {
                entries.push(self.get(i - 1, j - 1));
            }
        }
        Ok(Matrix::from_parts_unchecked(
            &self.ring,
            rows.len(),
            cols.len(),
            entries,
        ))
    }

    /// `det A ∈ Z_R`, equivalently `A` is a two-sided zero-divisor of `M_n(R)`.
    pub fn is_zero_divisor(&self) -> Result<bool, MatrixError> {
        Ok(self.ring.is_zero_divisor(self.determinant()?))
    }

    /// Membership in `M_n(I)`: every entry lies in `I`.
    pub fn in_matrix_ideal(&self, ideal: &Ideal) -> Result<bool, MatrixError> {
        if ideal.ring() != &self.ring {
            return Err(MatrixError::RingMismatch);
        }
        Ok(self.entries.iter().all(|&a| ideal.contains(a)))
    }

    /// Whether this is `aE` for some `a`, returning `a`.
    pub fn scalar_value(&self) -> Option<Element> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let a = self.get(0, 0);
        let n = self.rows;
        let ok = (0..n).all(|i| (0..n).all(|j| self.get(i, j) == if i == j { a } else { Element::ZERO }));
        ok.then_some(a)
    }

    // builders

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix::from_parts_unchecked(ring, rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        Matrix::scalar(ring, ring.one(), n)
    }

    /// `aE`.
    pub fn scalar(ring: &Ring, a: Element, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = a;
        }
        m
    }

    /// Nilpotent Jordan cell: ones on the superdiagonal.
    pub fn jordan(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = ring.one();
        }
        m
    }

    /// `E_{kl}` of size `n`, indices 1-based.
    pub fn matrix_unit(ring: &Ring, k: usize, l: usize, n: usize) -> Result<Matrix, MatrixError> {
        for index in [k, l] {
            if index == 0 || index > n {
                return Err(MatrixError::IndexOutOfRange { index, bound: n });
            }
        }
        let mut m = Matrix::zero(ring, n, n);
        m.entries[(k - 1) * n + (l - 1)] = ring.one();
        Ok(m)
    }

    /// Entry 1 at `(i, σ(i))`; `sigma` lists `σ(1), .., σ(n)`.
    pub fn permutation(ring: &Ring, sigma: &[usize]) -> Result<Matrix, MatrixError> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in sigma {
            if s == 0 || s > n || seen[s - 1] {
                return Err(MatrixError::InvalidPermutation(n));
            }
            seen[s - 1] = true;
        }
        let mut m = Matrix::zero(ring, n, n);
        for (i, &s) in sigma.iter().enumerate() {
            m.entries[i * n + s - 1] = ring.one();
        }
        Ok(m)
    }
}

/// Division-free determinant of the `n x n` row-major block `entries`.
///
/// `minors[mask]` holds the determinant of the rows `0..|mask|` restricted to
/// the columns in `mask`; expanding along the last of those rows gives the
/// recurrence. The empty minor is 1.
pub(crate) fn det_entries(ring: &Ring, n: usize, entries: &[Element]) -> Element {
    match n {
        0 => return ring.one(),
        1 => return entries[0],
        2 => {
            return ring.sub(
                ring.mul(entries[0], entries[3]),
                ring.mul(entries[1], entries[2]),
            )
        }
        _ => {}
    }
    let full = (1usize << n) - 1;
    let mut minors = vec![ring.zero(); full + 1];
    minors[0] = ring.one();
    for mask in 1..=full {
        let row = mask.count_ones() as usize - 1;
        let mut acc = ring.zero();
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let term = ring.mul(entries[row * n + col], minors[mask & !(1 << col)]);
            // sign is (-1)^(number of selected columns to the right of `col`)
            let above = (mask >> (col + 1)).count_ones();
            acc = if above % 2 == 0 {
                ring.add(acc, term)
            } else {
                ring.sub(acc, term)
            };
        }
        minors[mask] = acc;
    }
    minors[full]
}

pub fn determinant(a: &Matrix) -> Result<Element, MatrixError> {
    a.determinant()
}

pub fn adjugate(a: &Matrix) -> Result<Matrix, MatrixError> {
    a.adjugate()
}

pub fn submatrix(a: &Matrix, rows: &IndexTuple, cols: &IndexTuple) -> Result<Matrix, MatrixError> {
    a.submatrix(rows, cols)
}

pub fn is_zero_divisor_matrix(a: &Matrix) -> Result<bool, MatrixError> {
    a.is_zero_divisor()
}

pub fn in_matrix_ideal(a: &Matrix, ideal: &Ideal) -> Result<bool, MatrixError> {
    a.in_matrix_ideal(ideal)
}
