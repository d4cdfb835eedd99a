//! Ideals stored as explicit member sets.

use std::fmt;

use crate::ring::{Element, Ring};

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    members: Vec<Element>,
    flags: Vec<bool>,
    generators: Vec<Element>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .members
            .iter()
            .map(|&a| self.ring.format_element(a))
            .collect();
        write!(f, "Ideal{{{}}} in {}", shown.join(", "), self.ring)
    }
}

/// Member list, e.g. `{0,2}`.
impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .members
            .iter()
            .map(|&a| self.ring.format_element(a))
            .collect();
        write!(f, "{{{}}}", shown.join(","))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// Trusts the caller that `members` is an ideal; sorts and dedups them.
    pub(crate) fn from_members(ring: Ring, mut members: Vec<Element>, generators: Vec<Element>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut flags = vec![false; ring.order()];
        for a in &members {
            flags[a.index()] = true;
        }
        Ideal {
            ring,
            members,
            flags,
            generators,
        }
    }

    /// Fixed-point saturation of `generators` under addition and multiplication
    /// by ring elements. Negation comes for free from multiplying by `-1`.
    pub(crate) fn closure(ring: &Ring, generators: &[Element]) -> Self {
        let mut flags = vec![false; ring.order()];
        let mut members = Vec::new();
        let mut queue = Vec::new();
        let mut insert = |a: Element, members: &mut Vec<Element>, queue: &mut Vec<Element>| {
            if !flags[a.index()] {
                flags[a.index()] = true;
                members.push(a);
                queue.push(a);
            }
        };
        insert(ring.zero(), &mut members, &mut queue);
        for &g in generators {
            insert(g, &mut members, &mut queue);
        }
        while let Some(x) = queue.pop() {
            for r in ring.elements() {
                insert(ring.mul(r, x), &mut members, &mut queue);
            }
            let snapshot = members.len();
            for i in 0..snapshot {
                let y = members[i];
                insert(ring.add(x, y), &mut members, &mut queue);
            }
        }
        Ideal::from_members(ring.clone(), members, generators.to_vec())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Members in carrier order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, a: Element) -> bool {
        self.flags.get(a.index()).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    /// Nonzero members.
    pub fn nonzero(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().copied().filter(|a| a.index() != 0)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&a| other.contains(a))
            .collect();
        let mut generators = self.generators.clone();
        generators.extend_from_slice(&other.generators);
        Ideal::from_members(self.ring.clone(), members, generators)
    }

    /// True when some `x, y` in the ideal, both nonzero and possibly equal,
    /// satisfy `x y = 0`.
    pub fn has_zero_divisors(&self) -> bool {
        let nonzero: Vec<Element> = self.nonzero().collect();
        nonzero.iter().enumerate().any(|(i, &x)| {
            nonzero[i..]
                .iter()
                .any(|&y| self.ring.mul(x, y) == self.ring.zero())
        })
    }
}

/// Free-function form of [`Ideal::has_zero_divisors`].
pub fn ideal_has_zero_divisors(ideal: &Ideal) -> bool {
    ideal.has_zero_divisors()
}
