//! Finite/infinite/cyclic detection for finitely generated Möbius groups.

use std::collections::HashMap;

use serde::Serialize;

use super::mobius::{Mobius, MobiusClass, MAX_FINITE_ORDER};
use crate::error::{Error, Result};

pub const DEFAULT_WORD_BOUND: usize = 8;
pub const MAX_WORD_BOUND: usize = 12;
/// Projective equality used for deduplication.
pub const DEDUP_TOL: f64 = 1e-8;
const QUANTUM: f64 = 1e-6;
const NODE_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupClass {
    Trivial,
    FiniteCyclic { order: usize },
    FiniteNoncyclic { order: usize },
    /// Infinite and generated by one element.
    InfiniteCyclic,
    Infinite,
}

impl GroupClass {
    pub fn is_finite(&self) -> bool {
        matches!(self, GroupClass::Trivial | GroupClass::FiniteCyclic { .. } | GroupClass::FiniteNoncyclic { .. })
    }
}

impl std::fmt::Display for GroupClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupClass::Trivial => f.write_str("trivial"),
            GroupClass::FiniteCyclic { order } => write!(f, "finite-cyclic({})", order),
            GroupClass::FiniteNoncyclic { order } => write!(f, "finite-noncyclic({})", order),
            GroupClass::InfiniteCyclic => f.write_str("infinite-cyclic"),
            GroupClass::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub word: String,
    pub class: MobiusClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupEvidence {
    pub generator_classes: Vec<MobiusClass>,
    /// Distinct elements found by the enumeration.
    pub elements: usize,
    pub depth: usize,
    pub closed: bool,
    /// Element of infinite order, or the generator of a cyclic group.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusGroupReport {
    pub labels: Vec<String>,
    pub generators: Vec<Mobius>,
    pub classification: GroupClass,
    pub evidence: GroupEvidence,
}

type Key = [i64; 8];

fn key(m: &Mobius, sign: f64) -> Key {
    let mut k = [0; 8];
    for (i, z) in m.m.iter().flatten().enumerate() {
        k[2 * i] = (sign * z.re / QUANTUM).round() as i64;
        k[2 * i + 1] = (sign * z.im / QUANTUM).round() as i64;
    }
    k
}

fn element_order(m: &Mobius) -> Option<usize> {
    match m.classify() {
        MobiusClass::Identity => Some(1),
        MobiusClass::Elliptic { order } => order.map(|k| k as usize),
        _ => None,
    }
}

/// The exponent `k` with `f = h^k`, `0 < |k| ≤ bound`.
fn power_of(f: &Mobius, h: &Mobius, bound: i32) -> Option<i32> {
    let (mut p, mut n) = (*h, h.inverse());
    for k in 1..=bound {
        if p.approx_eq(f, DEDUP_TOL) {
            return Some(k);
        }
        if n.approx_eq(f, DEDUP_TOL) {
            return Some(-k);
        }
        // powers of a loxodromic element leave the representable range
        p = p.try_compose(h)?;
        n = n.try_compose(&h.inverse())?;
    }
    None
}

/// A label among the generators whose powers give all the others.
fn single_generator(labels: &[String], gens: &[Mobius]) -> Option<String> {
    let bound = MAX_FINITE_ORDER as i32;
    (0..gens.len())
        .find(|&i| gens.iter().all(|g| power_of(g, &gens[i], bound).is_some()))
        .map(|i| labels[i].clone())
}

pub fn group_classify(gens: &[Mobius], word_bound: usize) -> Result<MobiusGroupReport> {
    let labeled: Vec<(String, Mobius)> = gens.iter().enumerate().map(|(i, g)| (format!("g{}", i), *g)).collect();
    group_classify_labeled(&labeled, word_bound)
}

pub fn group_classify_labeled(gens: &[(String, Mobius)], word_bound: usize) -> Result<MobiusGroupReport> {
    if word_bound > MAX_WORD_BOUND {
        return Err(Error::OutOfRange(format!("word bound {} > {}", word_bound, MAX_WORD_BOUND)));
    }
    let labels: Vec<String> = gens.iter().map(|g| g.0.clone()).collect();
    let generators: Vec<Mobius> = gens.iter().map(|g| g.1).collect();
    let generator_classes: Vec<MobiusClass> = generators.iter().map(Mobius::classify).collect();
    let report = |classification, elements, depth, closed, witness| MobiusGroupReport {
        labels: labels.clone(),
        generators: generators.clone(),
        classification,
        evidence: GroupEvidence { generator_classes: generator_classes.clone(), elements, depth, closed, witness },
    };

    let nontrivial: Vec<(String, Mobius)> =
        gens.iter().filter(|(_, g)| !g.is_identity(DEDUP_TOL)).cloned().collect();
    if nontrivial.is_empty() {
        return Ok(report(GroupClass::Trivial, 1, 0, true, None));
    }
    let nt_labels: Vec<String> = nontrivial.iter().map(|g| g.0.clone()).collect();
    let nt_gens: Vec<Mobius> = nontrivial.iter().map(|g| g.1).collect();
    let infinite = |witness: Witness, elements: usize, depth: usize| {
        let class = match single_generator(&nt_labels, &nt_gens) {
            Some(_) => GroupClass::InfiniteCyclic,
            None => GroupClass::Infinite,
        };
        report(class, elements, depth, false, Some(witness))
    };
    for (l, g) in &nontrivial {
        let c = g.classify();
        if c.infinite_order() {
            return Ok(infinite(Witness { word: l.clone(), class: c }, nontrivial.len(), 1));
        }
    }

    // letters: generators and their inverses, with the index of the inverse letter
    let mut letters: Vec<(String, Mobius, usize)> = Vec::new();
    for (l, g) in &nontrivial {
        let i = letters.len();
        if g.inverse().approx_eq(g, DEDUP_TOL) {
            letters.push((l.clone(), *g, i));
        } else {
            letters.push((l.clone(), *g, i + 1));
            letters.push((format!("{}^-1", l), g.inverse(), i));
        }
    }
    let mut elems: Vec<(Mobius, String)> = vec![(Mobius::identity(), String::new())];
    let mut index: HashMap<Key, Vec<usize>> = HashMap::new();
    index.entry(key(&Mobius::identity(), 1.0)).or_default().push(0);
    // (element index, last letter)
    let mut frontier: Vec<(usize, Option<usize>)> = vec![(0, None)];
    for depth in 1..=word_bound {
        let mut next = Vec::new();
        for &(ei, last) in &frontier {
            for (li, (name, g, inv)) in letters.iter().enumerate() {
                if last == Some(*inv) {
                    continue;
                }
                let m = elems[ei].0.compose(g);
                let known = [key(&m, 1.0), key(&m, -1.0)].iter().any(|k| {
                    index.get(k).is_some_and(|v| v.iter().any(|&j| elems[j].0.approx_eq(&m, DEDUP_TOL)))
                });
                if known {
                    continue;
                }
                let word = if elems[ei].1.is_empty() { name.clone() } else { format!("{} {}", elems[ei].1, name) };
                let c = m.classify();
                if c.infinite_order() {
                    return Ok(infinite(Witness { word, class: c }, elems.len() + 1, depth));
                }
                index.entry(key(&m, 1.0)).or_default().push(elems.len());
                next.push((elems.len(), Some(li)));
                elems.push((m, word));
                if elems.len() > NODE_CAP {
                    return Err(Error::Inconclusive(word_bound));
                }
            }
        }
        if next.is_empty() {
            let n = elems.len();
            let gen = elems.iter().find(|(m, _)| element_order(m) == Some(n));
            let (class, witness) = match gen {
                Some((m, w)) => (
                    GroupClass::FiniteCyclic { order: n },
                    Some(Witness { word: if w.is_empty() { "id".into() } else { w.clone() }, class: m.classify() }),
                ),
                None => (GroupClass::FiniteNoncyclic { order: n }, None),
            };
            return Ok(report(class, n, depth, true, witness));
        }
        frontier = next;
    }
    Err(Error::Inconclusive(word_bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let r = group_classify(&[Mobius::identity()], 8).unwrap();
        assert_eq!(r.classification, GroupClass::Trivial);
        let r = group_classify(&[Mobius::scaling(c(0.0, 1.0))], 8).unwrap();
        assert_eq!(r.classification, GroupClass::FiniteCyclic { order: 4 });
        let r = group_classify(&[Mobius::scaling(c(0.2, 0.1)), Mobius::identity()], 8).unwrap();
        assert_eq!(r.classification, GroupClass::InfiniteCyclic);
        assert_eq!(r.evidence.witness.unwrap().class, MobiusClass::Loxodromic);
    }

    #[test]
    fn klein_four_is_not_cyclic() {
        // z ↦ −z and z ↦ 1/z
        let a = Mobius::scaling(c(-1.0, 0.0));
        let b = Mobius::from_coeffs(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let r = group_classify(&[a, b], 8).unwrap();
        assert_eq!(r.classification, GroupClass::FiniteNoncyclic { order: 4 });
    }

    #[test]
    fn two_rotations_generate_cyclic_group() {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 6.0);
        let r = group_classify(&[Mobius::scaling(w * w), Mobius::scaling(w * w * w)], 8).unwrap();
        assert_eq!(r.classification, GroupClass::FiniteCyclic { order: 6 });
    }

    #[test]
    fn noncommuting_translations_are_infinite() {
        let t = Mobius::translation(c(1.0, 0.0));
        let s = Mobius::translation(c(0.0, 1.0));
        let r = group_classify(&[t, s], 8).unwrap();
        assert_eq!(r.classification, GroupClass::Infinite);
    }

    #[test]
    fn irrational_rotation_is_inconclusive() {
        let r = group_classify(&[Mobius::scaling(Complex64::from_polar(1.0, 1.0))], 4);
        assert!(matches!(r, Err(Error::Inconclusive(4))));
        assert!(group_classify(&[Mobius::identity()], 13).is_err());
    }
}
