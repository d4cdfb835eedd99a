//! Constructive witnesses for the orthogonality graph of `M_n(R)`.
//!
//! The central routine is [`annihilating_complement`]: given `A` and a proper
//! ideal `I ∋ det A`, find `B ∉ M_n(I)` with `AB, BA ∈ M_n(I)`. It locates a
//! largest minor of `A` whose determinant escapes `I`, moves it to the leading
//! position by row and column permutations, and pads the adjugate of the
//! next-larger leading block with zeros. Everything else in this module
//! (orthogonal witnesses, families sharing a scalar neighbour, explicit short
//! paths) is built on top of it.

use std::fmt;

use thiserror::Error;

use crate::ideal::Ideal;
use crate::matrix::{det_entries, IndexTuple, Matrix, MatrixError};
use crate::ring::{Element, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("the ideal is not proper")]
    ImproperIdeal,
    #[error("det A = {0} does not lie in the ideal")]
    DeterminantOutsideIdeal(String),
    #[error("the ideal belongs to a different ring")]
    RingMismatch,
    #[error("c must be nonzero")]
    ZeroScalar,
    #[error("c = {c} does not annihilate det A = {det}")]
    ScalarDoesNotAnnihilate { c: String, det: String },
    #[error("empty matrix family")]
    EmptyFamily,
    #[error("the annihilators of the determinants intersect trivially")]
    TrivialIntersection,
    #[error("matrix {0} is not a vertex (nonzero zero-divisor)")]
    NotAVertex(String),
    #[error("{0} is not a zero-divisor of the base ring")]
    NotZeroDivisor(String),
    #[error("matrix size must be at least {min}, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("matrices have different sizes")]
    SizeMismatch,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("postcondition violated: {0}")]
    PostconditionViolated(String),
}

/// A largest square minor of `A` whose determinant lies outside an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorCertificate {
    pub k: usize,
    pub rows: IndexTuple,
    pub cols: IndexTuple,
    pub minor_det: Element,
}

impl MinorCertificate {
    /// Exhaustive check: the certified minor escapes `ideal` and every
    /// `(k+1)`-minor of `a` lies in it.
    pub fn verify(&self, a: &Matrix, ideal: &Ideal) -> bool {
        let Ok(sub) = a.submatrix(&self.rows, &self.cols) else {
            return false;
        };
        if sub.determinant() != Ok(self.minor_det) || ideal.contains(self.minor_det) {
            return false;
        }
        let n = a.rows();
        let m = self.k + 1;
        if m > n {
            return false;
        }
        combinations(n, m).iter().all(|rows| {
            combinations(n, m)
                .iter()
                .all(|cols| ideal.contains(minor_det(a, rows, cols)))
        })
    }
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn minor_det(a: &Matrix, rows: &[usize], cols: &[usize]) -> Element {
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for &i in rows {
        for &j in cols {
            entries.push(a.get(i, j));
        }
    }
    det_entries(a.ring(), rows.len(), &entries)
}

fn check_ideal_precondition(a: &Matrix, ideal: &Ideal) -> Result<usize, WitnessError> {
    if ideal.ring() != a.ring() {
        return Err(WitnessError::RingMismatch);
    }
    if !ideal.is_proper() {
        return Err(WitnessError::ImproperIdeal);
    }
    let det = a.determinant()?;
    if !ideal.contains(det) {
        return Err(WitnessError::DeterminantOutsideIdeal(
            a.ring().format_element(det),
        ));
    }
    Ok(a.rows())
}

/// Scans `k = n-1, .., 0` and, for each `k`, row tuples then column tuples in
/// lexicographic order; the first minor outside `ideal` wins. Increasing
/// tuples suffice since `I = -I` makes membership sign-blind.
pub fn maximal_minor_outside_ideal(
    a: &Matrix,
    ideal: &Ideal,
) -> Result<MinorCertificate, WitnessError> {
    let n = check_ideal_precondition(a, ideal)?;
    for k in (1..n).rev() {
        let tuples = combinations(n, k);
        for rows in &tuples {
            for cols in &tuples {
                let d = minor_det(a, rows, cols);
                if !ideal.contains(d) {
                    return Ok(MinorCertificate {
                        k,
                        rows: IndexTuple::new(rows.iter().map(|i| i + 1).collect::<Vec<_>>()),
                        cols: IndexTuple::new(cols.iter().map(|j| j + 1).collect::<Vec<_>>()),
                        minor_det: d,
                    });
                }
            }
        }
    }
    Ok(MinorCertificate {
        k: 0,
        rows: IndexTuple::empty(),
        cols: IndexTuple::empty(),
        minor_det: a.ring().one(),
    })
}

/// The selected indices first, then the remaining ones in increasing order.
fn completion(selected: &IndexTuple, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = selected.as_slice().iter().map(|i| i - 1).collect();
    let rest: Vec<usize> = (0..n).filter(|i| !order.contains(i)).collect();
    order.extend(rest);
    order
}

/// Some `B ∉ M_n(I)` with `AB, BA ∈ M_n(I)`, for a proper ideal `I ∋ det A`.
pub fn annihilating_complement(a: &Matrix, ideal: &Ideal) -> Result<Matrix, WitnessError> {
    let cert = maximal_minor_outside_ideal(a, ideal)?;
    let n = a.rows();
    let ring = a.ring();
    let m = cert.k + 1;

    // A0[i][j] = A[row_order[i]][col_order[j]] has the certified minor in its
    // leading k x k corner. With B0 the padded adjugate of A0's leading m x m
    // block, B[col_order[i]][row_order[j]] = B0[i][j] undoes the permutations.
    let row_order = completion(&cert.rows, n);
    let col_order = completion(&cert.cols, n);
    let mut block = Vec::with_capacity(m * m);
    for &i in &row_order[..m] {
        for &j in &col_order[..m] {
            block.push(a.get(i, j));
        }
    }
    let block = Matrix::from_entries(ring, m, m, block)?;
    let adj = block.adjugate()?;
    let mut entries = vec![ring.zero(); n * n];
    for i in 0..m {
        for j in 0..m {
            entries[col_order[i] * n + row_order[j]] = adj.get(i, j);
        }
    }
    let b = Matrix::from_entries(ring, n, n, entries)?;

    if b.in_matrix_ideal(ideal)?
        || !a.mul(&b)?.in_matrix_ideal(ideal)?
        || !b.mul(a)?.in_matrix_ideal(ideal)?
    {
        return Err(WitnessError::PostconditionViolated(format!(
            "complement {} of {} modulo {:?}",
            b.literal(),
            a.literal(),
            ideal
        )));
    }
    Ok(b)
}

/// `I_A = Ann(det A)`.
pub fn determinant_annihilator(a: &Matrix) -> Result<Ideal, WitnessError> {
    Ok(a.ring().annihilator(a.determinant()?))
}

/// For `c ≠ 0` with `c·det A = 0`, a nonzero `C ∈ cS` with `AC = CA = 0`.
pub fn orthogonal_witness(a: &Matrix, c: Element) -> Result<Matrix, WitnessError> {
    let ring = a.ring();
    if !ring.contains(c) {
        return Err(MatrixError::ForeignElement(c.index()).into());
    }
    if c == ring.zero() {
        return Err(WitnessError::ZeroScalar);
    }
    let det = a.determinant()?;
    if ring.mul(c, det) != ring.zero() {
        return Err(WitnessError::ScalarDoesNotAnnihilate {
            c: ring.format_element(c),
            det: ring.format_element(det),
        });
    }
    let b = annihilating_complement(a, &ring.annihilator(c))?;
    let witness = b.scalar_mul(c);
    if witness.is_zero() || !a.is_orthogonal_to(&witness)? {
        return Err(WitnessError::PostconditionViolated(format!(
            "{} is not a nonzero matrix orthogonal to {}",
            witness.literal(),
            a.literal()
        )));
    }
    Ok(witness)
}

/// A scalar `b ∈ Z_R*` together with, for each input `A`, a witness `C_A`
/// satisfying `bE ⊥ C_A ⊥ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalFamily {
    pub b: Element,
    /// The common annihilating element the witnesses were built from.
    pub c: Element,
    /// `witnesses[i]` belongs to the `i`-th input matrix.
    pub witnesses: Vec<Matrix>,
}

pub fn common_orthogonal_family(family: &[Matrix]) -> Result<OrthogonalFamily, WitnessError> {
    let first = family.first().ok_or(WitnessError::EmptyFamily)?;
    let ring = first.ring();
    let n = first.rows();
    for a in family {
        if a.ring() != ring {
            return Err(MatrixError::RingMismatch.into());
        }
        if !a.is_square() || a.rows() != n {
            return Err(WitnessError::SizeMismatch);
        }
    }
    let mut common = determinant_annihilator(first)?;
    for a in &family[1..] {
        common = common.intersection(&determinant_annihilator(a)?);
    }
    // a nonzero ideal always meets Z_R* once Z_R* is nonempty
    let c = common
        .nonzero()
        .find(|&x| ring.is_zero_divisor(x))
        .ok_or(WitnessError::TrivialIntersection)?;
    let b = ring
        .nonzero_elements()
        .find(|&y| ring.mul(y, c) == ring.zero())
        .ok_or(WitnessError::TrivialIntersection)?;
    let witnesses = family
        .iter()
        .map(|a| orthogonal_witness(a, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrthogonalFamily { b, c, witnesses })
}

/// A sequence of vertices with consecutive members orthogonal and distinct.
#[derive(Clone, PartialEq, Eq)]
pub struct OrthoPath {
    vertices: Vec<Matrix>,
}

impl fmt::Debug for OrthoPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.vertices.iter().map(Matrix::literal))
            .finish()
    }
}

impl OrthoPath {
    /// Validates and wraps a vertex sequence.
    pub fn new(vertices: Vec<Matrix>) -> Result<Self, WitnessError> {
        let path = OrthoPath { vertices };
        path.validate()?;
        Ok(path)
    }

    pub fn vertices(&self) -> &[Matrix] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> &Matrix {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Matrix {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn validate(&self) -> Result<(), WitnessError> {
        let first = self
            .vertices
            .first()
            .ok_or_else(|| WitnessError::InvalidPath("no vertices".into()))?;
        for v in &self.vertices {
            if v.ring() != first.ring() || v.rows() != first.rows() {
                return Err(WitnessError::InvalidPath("mixed rings or sizes".into()));
            }
            require_vertex(v)?;
        }
        for pair in self.vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(WitnessError::InvalidPath(format!(
                    "repeated vertex {}",
                    pair[0].literal()
                )));
            }
            if !pair[0].is_orthogonal_to(&pair[1])? {
                return Err(WitnessError::InvalidPath(format!(
                    "{} and {} are not orthogonal",
                    pair[0].literal(),
                    pair[1].literal()
                )));
            }
        }
        Ok(())
    }
}

fn require_vertex(a: &Matrix) -> Result<(), WitnessError> {
    if a.is_zero() || !a.is_zero_divisor()? {
        return Err(WitnessError::NotAVertex(a.literal()));
    }
    Ok(())
}

/// Turns a walk whose consecutive members are equal or orthogonal into a
/// simple path, skipping ahead whenever a later member is equal or adjacent.
fn shortcut(walk: Vec<Matrix>) -> Result<OrthoPath, WitnessError> {
    let mut path = vec![walk[0].clone()];
    let mut cur = 0;
    while cur + 1 < walk.len() {
        if let Some(j) = (cur + 1..walk.len()).rev().find(|&j| walk[j] == walk[cur]) {
            cur = j;
            continue;
        }
        let mut next = cur + 1;
        for j in (cur + 1..walk.len()).rev() {
            if walk[cur].is_orthogonal_to(&walk[j])? {
                next = j;
                break;
            }
        }
        path.push(walk[next].clone());
        cur = next;
    }
    OrthoPath::new(path)
}

/// A path of length at most 2 from `a` to some scalar vertex `bE`.
pub fn path_to_scalar(a: &Matrix) -> Result<OrthoPath, WitnessError> {
    require_vertex(a)?;
    if a.scalar_value().is_some() {
        return OrthoPath::new(vec![a.clone()]);
    }
    let family = common_orthogonal_family(std::slice::from_ref(a))?;
    let scalar = Matrix::scalar(a.ring(), family.b, a.rows());
    let path = shortcut(vec![a.clone(), family.witnesses[0].clone(), scalar])?;
    debug_assert!(path.len() <= 2);
    Ok(path)
}

/// A path of length at most 4 between two vertices, following the proof
/// structure: direct adjacency, then a pair `c1·c2 = 0` giving length 3, then
/// a common scalar neighbour giving length 4.
pub fn connect(a1: &Matrix, a2: &Matrix) -> Result<OrthoPath, WitnessError> {
    if a1.ring() != a2.ring() {
        return Err(MatrixError::RingMismatch.into());
    }
    if !a1.is_square() || !a2.is_square() || a1.rows() != a2.rows() {
        return Err(WitnessError::SizeMismatch);
    }
    require_vertex(a1)?;
    require_vertex(a2)?;
    if a1 == a2 {
        return OrthoPath::new(vec![a1.clone()]);
    }
    if a1.is_orthogonal_to(a2)? {
        return OrthoPath::new(vec![a1.clone(), a2.clone()]);
    }
    let ring = a1.ring();
    let i1 = determinant_annihilator(a1)?;
    let i2 = determinant_annihilator(a2)?;
    let pair = i1
        .nonzero()
        .find_map(|c1| i2.nonzero().find(|&c2| ring.mul(c1, c2) == ring.zero()).map(|c2| (c1, c2)));
    let walk = match pair {
        Some((c1, c2)) => vec![
            a1.clone(),
            orthogonal_witness(a1, c1)?,
            orthogonal_witness(a2, c2)?,
            a2.clone(),
        ],
        None => {
            let family = common_orthogonal_family(&[a1.clone(), a2.clone()])?;
            vec![
                a1.clone(),
                family.witnesses[0].clone(),
                Matrix::scalar(ring, family.b, a1.rows()),
                family.witnesses[1].clone(),
                a2.clone(),
            ]
        }
    };
    let path = shortcut(walk)?;
    debug_assert!(path.len() <= 4);
    Ok(path)
}

/// `(A, Aᵀ)` with `A = J_n + a·E_{n1}`.
pub fn extremal_pair(ring: &Ring, n: usize, a: Element) -> Result<(Matrix, Matrix), WitnessError> {
    if n < 2 {
        return Err(WitnessError::TooSmall { min: 2, got: n });
    }
    if !ring.contains(a) {
        return Err(MatrixError::ForeignElement(a.index()).into());
    }
    if !ring.is_zero_divisor(a) {
        return Err(WitnessError::NotZeroDivisor(ring.format_element(a)));
    }
    let corner = Matrix::matrix_unit(ring, n, 1, n)?.scalar_mul(a);
    let m = Matrix::jordan(ring, n).add(&corner)?;
    let t = m.transpose();
    Ok((m, t))
}
