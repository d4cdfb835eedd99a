//! Ring-level predicates that decide the diameter of `O(M_n(R))` and bound
//! its radius, computed by exhaustive scans over the carrier.

use serde::Serialize;
use thiserror::Error;

use crate::ring::{Element, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("{0} has no nonzero zero-divisors")]
    NoZeroDivisors(String),
    #[error("matrix size must be at least 2, got {0}")]
    SizeTooSmall(usize),
}

fn require_zero_divisors(ring: &Ring) -> Result<(), CriteriaError> {
    if ring.nonzero_zero_divisors().is_empty() {
        Err(CriteriaError::NoZeroDivisors(ring.to_string()))
    } else {
        Ok(())
    }
}

/// `a0 a1 = a0 a2 = a1 a2 = 0` with `a1, a2` nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CritWitness {
    pub a0: Element,
    pub a1: Element,
    pub a2: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CritOutcome {
    pub holds: bool,
    /// One witness per zero-divisor, in carrier order, up to the first failure.
    pub witnesses: Vec<CritWitness>,
    pub failing: Option<Element>,
}

/// For every `a0 ∈ Z_R` (zero included), look for nonzero `a1, a2`, possibly
/// equal, that pairwise annihilate together with `a0`.
pub fn crit_holds(ring: &Ring) -> Result<CritOutcome, CriteriaError> {
    require_zero_divisors(ring)?;
    let zero = ring.zero();
    let mut witnesses = Vec::new();
    for a0 in ring.zero_divisors() {
        let found = ring
            .nonzero_elements()
            .filter(|&a1| ring.mul(a0, a1) == zero)
            .find_map(|a1| {
                ring.nonzero_elements()
                    .find(|&a2| ring.mul(a0, a2) == zero && ring.mul(a1, a2) == zero)
                    .map(|a2| CritWitness { a0, a1, a2 })
            });
        match found {
            Some(w) => witnesses.push(w),
            None => {
                return Ok(CritOutcome {
                    holds: false,
                    witnesses,
                    failing: Some(a0),
                })
            }
        }
    }
    Ok(CritOutcome {
        holds: true,
        witnesses,
        failing: None,
    })
}

/// First `c ≠ 0` in carrier order with `Ann(c) ∩ Ann(a) ≠ 0` for all `a ∈ Z_R`.
pub fn cond_holds(ring: &Ring) -> Result<Option<Element>, CriteriaError> {
    require_zero_divisors(ring)?;
    let annihilators: Vec<_> = ring
        .zero_divisors()
        .into_iter()
        .map(|a| ring.annihilator(a))
        .collect();
    Ok(ring.nonzero_elements().find(|&c| {
        let ann_c = ring.annihilator(c);
        annihilators
            .iter()
            .all(|ann_a| ann_c.nonzero().any(|x| ann_a.contains(x)))
    }))
}

/// First `a ∈ Z_R*` whose annihilator is a nonzero ideal without zero-divisors.
pub fn find_annihilator_without_zero_divisors(
    ring: &Ring,
) -> Result<Option<Element>, CriteriaError> {
    require_zero_divisors(ring)?;
    Ok(ring.nonzero_zero_divisors().into_iter().find(|&a| {
        let ann = ring.annihilator(a);
        !ann.is_zero() && !ann.has_zero_divisors()
    }))
}

/// Diameter and radius facts for `O(M_n(R))` derived from the ring alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionReport {
    pub ring: Ring,
    pub n: usize,
    pub crit: CritOutcome,
    pub cond: Option<Element>,
    pub bad_annihilator: Option<Element>,
    pub predicted_diameter: u32,
    /// Sorted set of possible radii.
    pub predicted_radius: Vec<u32>,
}

pub fn predict(ring: &Ring, n: usize) -> Result<PredictionReport, CriteriaError> {
    if n < 2 {
        return Err(CriteriaError::SizeTooSmall(n));
    }
    let crit = crit_holds(ring)?;
    let cond = cond_holds(ring)?;
    let bad_annihilator = find_annihilator_without_zero_divisors(ring)?;
    let predicted_diameter = if crit.holds { 3 } else { 4 };
    let predicted_radius = match (cond.is_some(), crit.holds) {
        (true, _) => vec![2],
        (false, true) => vec![3],
        (false, false) => vec![3, 4],
    };
    Ok(PredictionReport {
        ring: ring.clone(),
        n,
        crit,
        cond,
        bad_annihilator,
        predicted_diameter,
        predicted_radius,
    })
}

#[derive(Serialize)]
struct CritWitnessView {
    a0: String,
    a1: String,
    a2: String,
}

#[derive(Serialize)]
struct CritView {
    holds: bool,
    witnesses: Vec<CritWitnessView>,
    failing: String,
}

#[derive(Serialize)]
struct CondView {
    holds: bool,
    witness: String,
}

#[derive(Serialize)]
struct PredictionView {
    ring: String,
    n: usize,
    crit: CritView,
    cond: CondView,
    bad_annihilator: String,
    predicted_diameter: u32,
    predicted_radius: Vec<u32>,
}

impl PredictionReport {
    fn view(&self) -> PredictionView {
        let r = &self.ring;
        let show = |e: Option<Element>| e.map_or_else(|| "none".to_string(), |e| r.format_element(e));
        PredictionView {
            ring: r.to_string(),
            n: self.n,
            crit: CritView {
                holds: self.crit.holds,
                witnesses: self
                    .crit
                    .witnesses
                    .iter()
                    .map(|w| CritWitnessView {
                        a0: r.format_element(w.a0),
                        a1: r.format_element(w.a1),
                        a2: r.format_element(w.a2),
                    })
                    .collect(),
                failing: show(self.crit.failing),
            },
            cond: CondView {
                holds: self.cond.is_some(),
                witness: show(self.cond),
            },
            bad_annihilator: show(self.bad_annihilator),
            predicted_diameter: self.predicted_diameter,
            predicted_radius: self.predicted_radius.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.view()).expect("serializable prediction")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.view()).expect("serializable prediction")
    }

    /// Whether a measured radius is compatible with the prediction.
    pub fn admits_radius(&self, radius: u32) -> bool {
        self.predicted_radius.contains(&radius)
    }

    pub fn summary(&self) -> String {
        let r = &self.ring;
        let crit = match self.crit.failing {
            None => "crit holds".to_string(),
            Some(a0) => format!("crit fails at a0={}", r.format_element(a0)),
        };
        let cond = match self.cond {
            Some(c) => format!("cond holds with c={}", r.format_element(c)),
            None => "cond fails".to_string(),
        };
        let radius: Vec<String> = self.predicted_radius.iter().map(u32::to_string).collect();
        format!(
            "O(M_{}({})): {crit}; {cond}; predicted diameter={}, radius in {{{}}}",
            self.n,
            r,
            self.predicted_diameter,
            radius.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    fn ring(spec: RingSpec) -> Ring {
        build_ring(&spec).unwrap()
    }

    fn el(r: &Ring, i: usize) -> Element {
        r.element(i).unwrap()
    }

    fn klein() -> Ring {
        ring(RingSpec::product(vec![RingSpec::modular(2), RingSpec::modular(2)]))
    }

    #[test]
    fn crit_examples() {
        let z4 = ring(RingSpec::modular(4));
        let out = crit_holds(&z4).unwrap();
        assert!(out.holds);
        let w = out.witnesses.iter().find(|w| w.a0 == el(&z4, 2)).unwrap();
        assert_eq!((w.a1, w.a2), (el(&z4, 2), el(&z4, 2)));

        let z6 = ring(RingSpec::modular(6));
        let out = crit_holds(&z6).unwrap();
        assert!(!out.holds);
        assert_eq!(out.failing, Some(el(&z6, 2)));

        let dual = ring(RingSpec::quotient(2, vec![0, 0, 1]));
        let out = crit_holds(&dual).unwrap();
        assert!(out.holds);
        let x = el(&dual, 2);
        let w = out.witnesses.iter().find(|w| w.a0 == x).unwrap();
        assert_eq!((w.a1, w.a2), (x, x));
    }

    #[test]
    fn cond_examples() {
        let z4 = ring(RingSpec::modular(4));
        assert_eq!(cond_holds(&z4).unwrap(), Some(el(&z4, 2)));
        assert_eq!(cond_holds(&ring(RingSpec::modular(6))).unwrap(), None);
        assert_eq!(cond_holds(&klein()).unwrap(), None);
        let dual = ring(RingSpec::quotient(2, vec![0, 0, 1]));
        assert_eq!(cond_holds(&dual).unwrap(), Some(el(&dual, 2)));
    }

    #[test]
    fn bad_annihilator_examples() {
        let z6 = ring(RingSpec::modular(6));
        assert_eq!(find_annihilator_without_zero_divisors(&z6).unwrap(), Some(el(&z6, 2)));
        let z4 = ring(RingSpec::modular(4));
        assert_eq!(find_annihilator_without_zero_divisors(&z4).unwrap(), None);
        let k = klein();
        let a = find_annihilator_without_zero_divisors(&k).unwrap().unwrap();
        assert_eq!(k.format_element(a), "(1,0)");
    }

    #[test]
    fn fields_are_rejected() {
        let z5 = ring(RingSpec::modular(5));
        assert!(matches!(crit_holds(&z5), Err(CriteriaError::NoZeroDivisors(_))));
        assert!(cond_holds(&z5).is_err());
        assert!(find_annihilator_without_zero_divisors(&z5).is_err());
        assert!(predict(&z5, 2).is_err());
        assert!(matches!(
            predict(&ring(RingSpec::modular(4)), 1),
            Err(CriteriaError::SizeTooSmall(1))
        ));
    }

    #[test]
    fn predictions() {
        let p = predict(&ring(RingSpec::modular(4)), 2).unwrap();
        assert_eq!((p.predicted_diameter, p.predicted_radius.clone()), (3, vec![2]));
        let p = predict(&ring(RingSpec::modular(6)), 2).unwrap();
        assert_eq!((p.predicted_diameter, p.predicted_radius.clone()), (4, vec![3, 4]));
        let json = p.to_json();
        assert!(json.contains("\"predicted_diameter\":4"));
        assert!(json.contains("\"cond\":{\"holds\":false,\"witness\":\"none\"}"));
        assert!(json.contains("\"failing\":\"2\""));
        let p = predict(&ring(RingSpec::quotient(2, vec![0, 0, 1])), 2).unwrap();
        assert_eq!((p.predicted_diameter, p.predicted_radius.clone()), (3, vec![2]));
    }
}
