//! Finite commutative rings with identity: `Z_m`, `Z_m[x]/(f)` for monic `f`,
//! and finite direct products.
//!
//! Every ring enumerates its carrier in a fixed order and hands out
//! [`Element`] values that are just positions in that order:
//!
//! * `Z_m`: residue `r` has index `r`;
//! * `Z_m[x]/(f)`: the coefficient tuple `(c_0, .., c_{d-1})` has index
//!   `c_0 + c_1 m + .. + c_{d-1} m^{d-1}`;
//! * `R_1 x .. x R_k`: the tuple `(a_1, .., a_k)` has index
//!   `i_1 + |R_1| (i_2 + |R_2| (..))`, so the first factor varies fastest,
//!   matching the little-endian convention of quotient rings.
//!
//! Index 0 is always the zero element. Arithmetic goes through precomputed
//! Cayley tables for small rings and is evaluated on the structured
//! representation otherwise.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::ideal::Ideal;
use crate::limits::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed ring: {0}")]
    Malformed(String),
    #[error("quotient modulus {modulus} over Z{base} is not monic")]
    NonMonic { base: u64, modulus: String },
    #[error("ring order {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: u128, cap: usize },
    #[error("element index {index} is out of range for a ring of order {order}")]
    BadElement { index: usize, order: usize },
}

/// Abstract syntax of a ring expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Integers modulo `m`.
    Modular(u64),
    /// `Z_base[x]` modulo a polynomial given by its coefficients, constant term first.
    Quotient { base: u64, modulus: Vec<u64> },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn modular(m: u64) -> Self {
        RingSpec::Modular(m)
    }

    pub fn quotient(base: u64, modulus: impl Into<Vec<u64>>) -> Self {
        RingSpec::Quotient {
            base,
            modulus: modulus.into(),
        }
    }

    pub fn product(factors: impl Into<Vec<RingSpec>>) -> Self {
        RingSpec::Product(factors.into())
    }

    /// Checks the structural invariants and returns the carrier size.
    pub fn validate(&self) -> Result<u128, RingError> {
        match self {
            RingSpec::Modular(m) => {
                if *m < 2 {
                    return Err(RingError::Malformed(format!("Z{m}: modulus must be at least 2")));
                }
                Ok(*m as u128)
            }
            RingSpec::Quotient { base, modulus } => {
                if *base < 2 {
                    return Err(RingError::Malformed(format!(
                        "Z{base}: modulus must be at least 2"
                    )));
                }
                let reduced: Vec<u64> = modulus.iter().map(|c| c % base).collect();
                let degree = match reduced.iter().rposition(|&c| c != 0) {
                    Some(d) if d >= 1 => d,
                    _ => {
                        return Err(RingError::Malformed(format!(
                            "quotient modulus over Z{base} must have degree at least 1"
                        )))
                    }
                };
                if reduced[degree] != 1 {
                    return Err(RingError::NonMonic {
                        base: *base,
                        modulus: format_poly_descending(&reduced),
                    });
                }
                let mut order: u128 = 1;
                for _ in 0..degree {
                    order = order.saturating_mul(*base as u128);
                }
                Ok(order)
            }
            RingSpec::Product(factors) => {
                if factors.len() < 2 {
                    return Err(RingError::Malformed(
                        "a product needs at least two factors".into(),
                    ));
                }
                factors
                    .iter()
                    .try_fold(1u128, |acc, f| Ok(acc.saturating_mul(f.validate()?)))
            }
        }
    }
}

fn format_poly_descending(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        terms.push(match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}x^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Modular(m) => write!(f, "Z{m}"),
            RingSpec::Quotient { base, modulus } => {
                let reduced: Vec<u64> = modulus.iter().map(|c| c % base.max(&1)).collect();
                write!(f, "Z{base}[x]/({})", format_poly_descending(&reduced))
            }
            RingSpec::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match factor {
                        RingSpec::Product(_) => write!(f, "({factor})")?,
                        _ => write!(f, "{factor}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Position of a ring member in its ring's carrier enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_index(index: usize) -> Self {
        Element(index as u32)
    }
}

#[derive(Debug)]
enum Kind {
    Modular {
        m: u32,
    },
    Quotient {
        m: u32,
        /// Monic modulus, constant term first; length is `degree + 1`.
        modulus: Vec<u32>,
    },
    Product {
        factors: Vec<Ring>,
        /// `strides[i]` is the weight of factor `i`'s digit in the element index.
        strides: Vec<u32>,
    },
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

#[derive(Debug)]
struct RingData {
    spec: RingSpec,
    order: u32,
    one: u32,
    kind: Kind,
    neg: Vec<u32>,
    tables: Option<Tables>,
    zero_divisors: OnceLock<Vec<bool>>,
}

/// A finite commutative ring with identity. Cloning is cheap; clones share
/// the same immutable carrier and tables.
#[derive(Clone)]
pub struct Ring {
    data: Arc<RingData>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("spec", &self.data.spec.to_string())
            .field("order", &self.data.order)
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.spec == other.data.spec
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.data.spec.fmt(f)
    }
}

/// Builds a ring with the default [`Limits`].
pub fn build_ring(spec: &RingSpec) -> Result<Ring, RingError> {
    Ring::build_with(spec, &Limits::default())
}

impl Ring {
    pub fn build(spec: &RingSpec) -> Result<Ring, RingError> {
        build_ring(spec)
    }

    pub fn build_with(spec: &RingSpec, limits: &Limits) -> Result<Ring, RingError> {
        let order = spec.validate()?;
        let cap = limits.max_ring_order.min(u32::MAX as usize);
        if order > cap as u128 {
            return Err(RingError::TooLarge { order, cap });
        }
        let order = order as u32;

        let (kind, one) = match spec {
            RingSpec::Modular(m) => (Kind::Modular { m: *m as u32 }, 1),
            RingSpec::Quotient { base, modulus } => {
                let m = *base as u32;
                let mut coeffs: Vec<u32> = modulus.iter().map(|c| (c % base) as u32).collect();
                let degree = coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
                coeffs.truncate(degree + 1);
                (Kind::Quotient { m, modulus: coeffs }, 1)
            }
            RingSpec::Product(specs) => {
                let mut factors = Vec::with_capacity(specs.len());
                for s in specs {
                    factors.push(Ring::build_with(s, limits)?);
                }
                let mut strides = vec![0u32; factors.len()];
                let mut weight = 1u32;
                for (i, f) in factors.iter().enumerate() {
                    strides[i] = weight;
                    weight *= f.data.order;
                }
                let one = factors
                    .iter()
                    .zip(&strides)
                    .map(|(f, s)| f.data.one * s)
                    .sum();
                (Kind::Product { factors, strides }, one)
            }
        };

        let mut data = RingData {
            spec: spec.clone(),
            order,
            one,
            kind,
            neg: Vec::new(),
            tables: None,
            zero_divisors: OnceLock::new(),
        };
        data.neg = (0..order).map(|a| data.kind_neg(a)).collect();
        if order as usize <= limits.table_order.min(1 << 16) {
            let n = order as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..order {
                for b in a..order {
                    let s = data.kind_add(a, b) as u16;
                    let p = data.kind_mul(a, b) as u16;
                    let (i, j) = (a as usize, b as usize);
                    add[i * n + j] = s;
                    add[j * n + i] = s;
                    mul[i * n + j] = p;
                    mul[j * n + i] = p;
                }
            }
            data.tables = Some(Tables { add, mul });
        }
        Ok(Ring {
            data: Arc::new(data),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.data.spec
    }

    pub fn order(&self) -> usize {
        self.data.order as usize
    }

    #[inline]
    pub fn zero(&self) -> Element {
        Element(0)
    }

    #[inline]
    pub fn one(&self) -> Element {
        Element(self.data.one)
    }

    /// The carrier in enumeration order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator {
        (0..self.data.order).map(Element)
    }

    /// Nonzero elements in enumeration order.
    pub fn nonzero_elements(&self) -> impl DoubleEndedIterator<Item = Element> {
        (1..self.data.order).map(Element)
    }

    pub fn element(&self, index: usize) -> Result<Element, RingError> {
        if index < self.order() {
            Ok(Element(index as u32))
        } else {
            Err(RingError::BadElement {
                index,
                order: self.order(),
            })
        }
    }

    /// Whether `a` could belong to this ring (index in range).
    #[inline]
    pub fn contains(&self, a: Element) -> bool {
        a.0 < self.data.order
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        let d = &*self.data;
        match &d.tables {
            Some(t) => Element(t.add[a.index() * d.order as usize + b.index()] as u32),
            None => Element(d.kind_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        let d = &*self.data;
        match &d.tables {
            Some(t) => Element(t.mul[a.index() * d.order as usize + b.index()] as u32),
            None => Element(d.kind_mul(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        Element(self.data.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// Integer multiple `k·a`.
    pub fn times(&self, k: u64, a: Element) -> Element {
        let k = k % self.data.order.max(1) as u64;
        (0..k).fold(self.zero(), |acc, _| self.add(acc, a))
    }

    pub fn is_unit(&self, a: Element) -> bool {
        self.elements().any(|x| self.mul(a, x) == self.one())
    }

    pub fn units(&self) -> Vec<Element> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    fn zero_divisor_flags(&self) -> &[bool] {
        self.data.zero_divisors.get_or_init(|| {
            self.elements()
                .map(|a| self.nonzero_elements().any(|x| self.mul(a, x) == self.zero()))
                .collect()
        })
    }

    /// Whether `a` kills some nonzero element. Zero always qualifies.
    #[inline]
    pub fn is_zero_divisor(&self, a: Element) -> bool {
        self.zero_divisor_flags()[a.index()]
    }

    /// `Z_R`, including zero, in carrier order.
    pub fn zero_divisors(&self) -> Vec<Element> {
        self.elements().filter(|&a| self.is_zero_divisor(a)).collect()
    }

    /// `Z_R` without zero.
    pub fn nonzero_zero_divisors(&self) -> Vec<Element> {
        self.nonzero_elements()
            .filter(|&a| self.is_zero_divisor(a))
            .collect()
    }

    /// `Ann(a) = {x : a x = 0}`.
    pub fn annihilator(&self, a: Element) -> Ideal {
        let members = self
            .elements()
            .filter(|&x| self.mul(a, x) == self.zero())
            .collect();
        Ideal::from_members(self.clone(), members, vec![a])
    }

    /// Smallest ideal containing `generators`.
    pub fn ideal_closure(&self, generators: &[Element]) -> Ideal {
        Ideal::closure(self, generators)
    }

    /// Canonical text of an element (residue, polynomial, or tuple).
    pub fn format_element(&self, a: Element) -> String {
        let mut out = String::new();
        self.write_element(&mut out, a.0);
        out
    }

    fn write_element(&self, out: &mut String, a: u32) {
        match &self.data.kind {
            Kind::Modular { .. } => out.push_str(&a.to_string()),
            Kind::Quotient { m, modulus } => {
                let coeffs = digits(a, *m, modulus.len() - 1);
                let mut first = true;
                for (k, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        out.push('+');
                    }
                    first = false;
                    match (k, c) {
                        (0, c) => out.push_str(&c.to_string()),
                        (1, 1) => out.push('x'),
                        (1, c) => out.push_str(&format!("{c}x")),
                        (k, 1) => out.push_str(&format!("x^{k}")),
                        (k, c) => out.push_str(&format!("{c}x^{k}")),
                    }
                }
                if first {
                    out.push('0');
                }
            }
            Kind::Product { factors, strides } => {
                out.push('(');
                for (i, (f, s)) in factors.iter().zip(strides).enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    f.write_element(out, (a / s) % f.data.order);
                }
                out.push(')');
            }
        }
    }

    /// Structured view used by the literal parser.
    pub(crate) fn shape(&self) -> RingShape<'_> {
        match &self.data.kind {
            Kind::Modular { m } => RingShape::Modular { m: *m },
            Kind::Quotient { m, modulus } => RingShape::Quotient {
                m: *m,
                degree: modulus.len() - 1,
            },
            Kind::Product { factors, strides } => RingShape::Product { factors, strides },
        }
    }
}

pub(crate) enum RingShape<'a> {
    Modular { m: u32 },
    Quotient { m: u32, degree: usize },
    Product { factors: &'a [Ring], strides: &'a [u32] },
}

fn digits(mut a: u32, m: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = a % m;
        a /= m;
    }
    out
}

fn undigits(coeffs: &[u32], m: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * m + c)
}

impl RingData {
    fn kind_add(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Modular { m } => ((a as u64 + b as u64) % *m as u64) as u32,
            Kind::Quotient { m, modulus } => {
                let d = modulus.len() - 1;
                let (x, y) = (digits(a, *m, d), digits(b, *m, d));
                let sum: Vec<u32> = x.iter().zip(&y).map(|(p, q)| (p + q) % m).collect();
                undigits(&sum, *m)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| {
                    let o = f.data.order;
                    let r = f.add(Element((a / s) % o), Element((b / s) % o));
                    r.0 * s
                })
                .sum(),
        }
    }

    fn kind_mul(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Modular { m } => ((a as u64 * b as u64) % *m as u64) as u32,
            Kind::Quotient { m, modulus } => {
                let m64 = *m as u64;
                let d = modulus.len() - 1;
                let (x, y) = (digits(a, *m, d), digits(b, *m, d));
                let mut prod = vec![0u64; 2 * d];
                for (i, &p) in x.iter().enumerate() {
                    for (j, &q) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + p as u64 * q as u64) % m64;
                    }
                }
                // x^d = -(f_0 + .. + f_{d-1} x^{d-1}) since the modulus is monic.
                for top in (d..2 * d).rev() {
                    let t = prod[top];
                    if t == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (j, &f) in modulus[..d].iter().enumerate() {
                        let idx = top - d + j;
                        prod[idx] = (prod[idx] + (m64 - t) * f as u64) % m64;
                    }
                }
                let low: Vec<u32> = prod[..d].iter().map(|&c| c as u32).collect();
                undigits(&low, *m)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| {
                    let o = f.data.order;
                    let r = f.mul(Element((a / s) % o), Element((b / s) % o));
                    r.0 * s
                })
                .sum(),
        }
    }

    fn kind_neg(&self, a: u32) -> u32 {
        match &self.kind {
            Kind::Modular { m } => (m - a) % m,
            Kind::Quotient { m, modulus } => {
                let c: Vec<u32> = digits(a, *m, modulus.len() - 1)
                    .into_iter()
                    .map(|c| (m - c) % m)
                    .collect();
                undigits(&c, *m)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| f.neg(Element((a / s) % f.data.order)).0 * s)
                .sum(),
        }
    }
}
