//! Set systems over `[n]` and the single-element operations acting on them.
//!
//! Subsets of `[n]` are bit-sets ([`ElementSet`]): element `i` (1-based) is bit
//! `i - 1`. A [`SetSystem`] keeps its feasible sets deduplicated and sorted by
//! their bit encoding, and that canonical form is its equality and hashing key.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{budget, invalid, Error, Result};
use crate::group::{Flip, Perm};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 16;

/// Default size cap for the vf-safe closure search.
pub const DEFAULT_VF_SAFE_CAP: usize = 10;

/// A subset of `[n]`, stored as a bit-set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The whole ground set `[n]`.
    pub fn full(n: usize) -> Self {
        ElementSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&i), "element {i} out of range");
        ElementSet(1 << (i - 1))
    }

    /// Builds a subset of `[n]`, rejecting out-of-range and repeated elements.
    pub fn try_from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in elements {
            if i == 0 || i > n {
                return Err(invalid(format!("element {i} is outside [{n}]")));
            }
            let b = 1u32 << (i - 1);
            if bits & b != 0 {
                return Err(invalid(format!("element {i} repeated in a set")));
            }
            bits |= b;
        }
        Ok(ElementSet(bits))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn sym_diff(self, other: ElementSet) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    pub fn with(self, i: usize) -> Self {
        self.union(ElementSet::singleton(i))
    }

    pub fn without(self, i: usize) -> Self {
        self.difference(ElementSet::singleton(i))
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The image `{p(i) : i in self}`.
    pub fn map(self, p: &Perm) -> Self {
        ElementSet(self.iter().fold(0, |acc, i| acc | 1 << (p.image(i) - 1)))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.with(i))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of the symmetric exchange check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaMatroidWitness {
    Valid,
    /// The family is empty.
    NotProper,
    /// `x`, `y` feasible and `u` in `x △ y`, but no `v` in `x △ y` makes
    /// `x △ {u, v}` feasible.
    ExchangeFails { x: ElementSet, y: ElementSet, u: usize },
}

impl DeltaMatroidWitness {
    pub fn is_valid(&self) -> bool {
        matches!(self, DeltaMatroidWitness::Valid)
    }
}

/// Ribbon-loop status of an element of a delta-matroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RibbonLoopClass {
    NotRibbonLoop,
    OrientableLoop,
    NonOrientableLoop,
}

/// Flips reaching a system, the system, and its failed exchange.
pub type VfCounterexample = (Vec<(Flip, usize)>, SetSystem, DeltaMatroidWitness);

/// Result of the vf-safe closure search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VfSafeReport {
    pub safe: bool,
    /// Number of distinct set systems visited.
    pub visited: usize,
    /// On failure: the flips (applied left to right) reaching a non-delta-matroid,
    /// the system reached, and its exchange witness.
    pub counterexample: Option<VfCounterexample>,
}

/// A set system `([n], F)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SetSystemRepr", into = "SetSystemRepr")]
pub struct SetSystem {
    n: usize,
    family: Vec<ElementSet>,
}

impl SetSystem {
    /// Builds a set system, dropping repeated sets.
    pub fn new(n: usize, sets: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        check_ground(n)?;
        let full = ElementSet::full(n);
        let mut family: Vec<ElementSet> = sets.into_iter().collect();
        if let Some(bad) = family.iter().find(|s| !s.is_subset_of(full)) {
            return Err(invalid(format!("set {bad} is not a subset of [{n}]")));
        }
        family.sort_unstable();
        family.dedup();
        Ok(SetSystem { n, family })
    }

    /// Convenience constructor from element lists.
    pub fn from_lists(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| ElementSet::try_from_elements(n, s))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(n, sets)
    }

    /// `([n], 2^[n])`.
    pub fn power_set(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(SetSystem {
            n,
            family: (0..1u32 << n).map(ElementSet).collect(),
        })
    }

    /// Builds a system from a membership vector indexed by bit encoding.
    pub fn from_indicator(n: usize, indicator: &[bool]) -> Result<Self> {
        check_ground(n)?;
        if indicator.len() != 1 << n {
            return Err(invalid(format!(
                "indicator of length {} does not match n = {n}",
                indicator.len()
            )));
        }
        Ok(Self::from_indicator_unchecked(n, indicator))
    }

    pub(crate) fn from_indicator_unchecked(n: usize, indicator: &[bool]) -> Self {
        let family = indicator
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(x, _)| ElementSet(x as u32))
            .collect();
        SetSystem { n, family }
    }

    pub fn indicator(&self) -> Vec<bool> {
        let mut ind = vec![false; 1 << self.n];
        for s in &self.family {
            ind[s.0 as usize] = true;
        }
        ind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[ElementSet] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.family.binary_search(&set).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        !self.family.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.contains(ElementSet::EMPTY)
    }

    fn check_subset(&self, set: ElementSet) -> Result<()> {
        if set.is_subset_of(self.ground()) {
            Ok(())
        } else {
            Err(invalid(format!("{set} is not a subset of [{}]", self.n)))
        }
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(invalid(format!("element {i} is outside [{}]", self.n)))
        }
    }

    /// `D * I`: every feasible set is replaced by its symmetric difference with `I`.
    pub fn twist(&self, set: ElementSet) -> Result<SetSystem> {
        self.check_subset(set)?;
        let mut family: Vec<ElementSet> = self.family.iter().map(|x| x.sym_diff(set)).collect();
        family.sort_unstable();
        Ok(SetSystem { n: self.n, family })
    }

    /// `D + I`: `X` is feasible iff an odd number of feasible `Y` satisfy
    /// `X \ I ⊆ Y ⊆ X`.
    pub fn loop_complement(&self, set: ElementSet) -> Result<SetSystem> {
        self.check_subset(set)?;
        let ind = self.indicator();
        let mask = set.0 as usize;
        let out: Vec<bool> = (0..ind.len())
            .map(|x| {
                let base = x & !mask;
                subsets_of(x & mask).filter(|&s| ind[base | s]).count() % 2 == 1
            })
            .collect();
        Ok(Self::from_indicator_unchecked(self.n, &out))
    }

    /// `D *̄ I`: `X` is feasible iff an odd number of feasible `Y` satisfy
    /// `X ⊆ Y ⊆ X ∪ I`.
    pub fn dual_twist(&self, set: ElementSet) -> Result<SetSystem> {
        self.check_subset(set)?;
        let ind = self.indicator();
        let mask = set.0 as usize;
        let out: Vec<bool> = (0..ind.len())
            .map(|x| subsets_of(mask & !x).filter(|&s| ind[x | s]).count() % 2 == 1)
            .collect();
        Ok(Self::from_indicator_unchecked(self.n, &out))
    }

    /// `D g i`: applies the reduced word of `g` at element `i`, rightmost letter first.
    pub fn apply_flip(&self, g: Flip, i: usize) -> Result<SetSystem> {
        self.check_element(i)?;
        let mut ind = self.indicator();
        flip_in_place(&mut ind, g, i);
        Ok(Self::from_indicator_unchecked(self.n, &ind))
    }

    /// `D_p`: every feasible set is mapped through `p`.
    pub fn relabel(&self, p: &Perm) -> Result<SetSystem> {
        if p.len() != self.n {
            return Err(invalid(format!(
                "permutation of length {} applied to a system with n = {}",
                p.len(),
                self.n
            )));
        }
        let mut family: Vec<ElementSet> = self.family.iter().map(|x| x.map(p)).collect();
        family.sort_unstable();
        Ok(SetSystem { n: self.n, family })
    }

    /// Symmetric exchange check; the witness is the first failure in
    /// `(X, Y, u)` order with `X`, `Y` in canonical family order.
    pub fn is_delta_matroid(&self) -> DeltaMatroidWitness {
        if self.family.is_empty() {
            return DeltaMatroidWitness::NotProper;
        }
        let ind = self.indicator();
        let n = self.n;
        let mut exchange = vec![0u32; n];
        for &x in &self.family {
            // exchange[u - 1] = { v : x △ {u, v} feasible }
            for (u0, slot) in exchange.iter_mut().enumerate() {
                let xu = x.0 ^ (1 << u0);
                *slot = (0..n)
                    .filter(|&v0| {
                        let t = if v0 == u0 { xu } else { xu ^ (1 << v0) };
                        ind[t as usize]
                    })
                    .fold(0, |acc, v0| acc | 1 << v0);
            }
            for &y in &self.family {
                let d = x.0 ^ y.0;
                for u in ElementSet(d).iter() {
                    if exchange[u - 1] & d == 0 {
                        return DeltaMatroidWitness::ExchangeFails { x, y, u };
                    }
                }
            }
        }
        DeltaMatroidWitness::Valid
    }

    /// `(D_min, D_max)`: the feasible sets of minimum and maximum size.
    pub fn min_max_matroids(&self) -> Result<(SetSystem, SetSystem)> {
        let lo = self.family.iter().map(|s| s.len()).min();
        let hi = self.family.iter().map(|s| s.len()).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::Precondition("set system is not proper".into()));
        };
        let keep = |k: usize| SetSystem {
            n: self.n,
            family: self.family.iter().copied().filter(|s| s.len() == k).collect(),
        };
        Ok((keep(lo), keep(hi)))
    }

    fn is_ribbon_loop(&self, i: usize) -> bool {
        let lo = self.family.iter().map(|s| s.len()).min().unwrap_or(0);
        !self
            .family
            .iter()
            .any(|s| s.len() == lo && s.contains(i))
    }

    /// Classifies `i` as a non-loop, orientable or non-orientable ribbon loop.
    pub fn classify_element(&self, i: usize) -> Result<RibbonLoopClass> {
        self.check_element(i)?;
        if !self.is_delta_matroid().is_valid() {
            return Err(Error::Precondition(format!("{self} is not a delta-matroid")));
        }
        if !self.is_ribbon_loop(i) {
            return Ok(RibbonLoopClass::NotRibbonLoop);
        }
        if self.twist(ElementSet::singleton(i))?.is_ribbon_loop(i) {
            Ok(RibbonLoopClass::NonOrientableLoop)
        } else {
            Ok(RibbonLoopClass::OrientableLoop)
        }
    }

    /// Whether every system reachable by single-element flips is a delta-matroid.
    pub fn is_vf_safe(&self) -> Result<bool> {
        Ok(self.vf_safe_report(DEFAULT_VF_SAFE_CAP)?.safe)
    }

    /// Breadth-first closure under `*1, +1, *2, +2, ...`, stopping at the first
    /// reachable system that is not a delta-matroid.
    pub fn vf_safe_report(&self, cap: usize) -> Result<VfSafeReport> {
        budget("vf-safe search", self.n, cap)?;
        let start = self.indicator();
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut parents: Vec<Option<(usize, Flip, usize)>> = vec![None];
        let mut states = vec![start.clone()];
        seen.insert(start, 0);
        let mut head = 0;
        while head < states.len() {
            let sys = Self::from_indicator_unchecked(self.n, &states[head]);
            let witness = sys.is_delta_matroid();
            if !witness.is_valid() {
                let mut path = Vec::new();
                let mut at = head;
                while let Some((p, g, i)) = parents[at] {
                    path.push((g, i));
                    at = p;
                }
                path.reverse();
                return Ok(VfSafeReport {
                    safe: false,
                    visited: states.len(),
                    counterexample: Some((path, sys, witness)),
                });
            }
            for i in 1..=self.n {
                for g in [Flip::Twist, Flip::Loop] {
                    let mut next = states[head].clone();
                    flip_in_place(&mut next, g, i);
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), states.len());
                        parents.push(Some((head, g, i)));
                        states.push(next);
                    }
                }
            }
            head += 1;
        }
        Ok(VfSafeReport {
            safe: true,
            visited: states.len(),
            counterexample: None,
        })
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(invalid(format!("ground size {n} exceeds {MAX_GROUND}")))
    } else {
        Ok(())
    }
}

/// All submasks of `mask`, including `0` and `mask` itself.
pub(crate) fn subsets_of(mask: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

fn twist_at(ind: &mut [bool], bit: usize) {
    for x in 0..ind.len() {
        if x & bit == 0 {
            ind.swap(x, x | bit);
        }
    }
}

fn loop_at(ind: &mut [bool], bit: usize) {
    for x in 0..ind.len() {
        if x & bit != 0 {
            ind[x] ^= ind[x ^ bit];
        }
    }
}

/// Applies `g` at element `i` to a membership vector, letter by letter.
pub(crate) fn flip_in_place(ind: &mut [bool], g: Flip, i: usize) {
    let bit = 1usize << (i - 1);
    for letter in g.word().iter().rev() {
        match letter {
            Flip::Twist => twist_at(ind, bit),
            Flip::Loop => loop_at(ind, bit),
            _ => unreachable!("reduced words only contain * and +"),
        }
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "([{}], {{", self.n)?;
        for (k, s) in self.family.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetSystemRepr {
    n: usize,
    feasible: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemRepr> for SetSystem {
    type Error = Error;

    fn try_from(repr: SetSystemRepr) -> Result<Self> {
        check_ground(repr.n)?;
        let mut sets = Vec::with_capacity(repr.feasible.len());
        for list in &repr.feasible {
            sets.push(ElementSet::try_from_elements(repr.n, list)?);
        }
        let mut sorted = sets.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("feasible set {} listed twice", w[0])));
        }
        SetSystem::new(repr.n, sets)
    }
}

impl From<SetSystem> for SetSystemRepr {
    fn from(sys: SetSystem) -> Self {
        SetSystemRepr {
            n: sys.n,
            feasible: sys.family.iter().map(|s| s.to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::from_lists(n, sets).unwrap()
    }

    fn set(elems: &[usize]) -> ElementSet {
        elems.iter().copied().collect()
    }

    /// 2^[n] minus the full set.
    fn almost_power_set(n: usize) -> SetSystem {
        SetSystem::new(n, (0..(1u32 << n) - 1).map(ElementSet::from_bits)).unwrap()
    }

    #[test]
    fn element_set_basics() {
        let s = set(&[3, 1]);
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(ElementSet::EMPTY.to_string(), "{}");
        assert_eq!(s.max_element(), Some(3));
        assert!(s.contains(3) && !s.contains(2));
        assert!(ElementSet::try_from_elements(3, &[1, 1]).is_err());
        assert!(ElementSet::try_from_elements(3, &[4]).is_err());
        assert!(ElementSet::try_from_elements(3, &[0]).is_err());
    }

    #[test]
    fn family_order_is_by_bit_encoding() {
        let d = sys(3, &[&[2, 3], &[1, 3], &[3]]);
        let lists: Vec<_> = d.family().iter().map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![3], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn twist_examples() {
        let d = sys(2, &[&[1], &[2]]);
        assert_eq!(d.twist(set(&[1, 2])).unwrap(), d);
        assert_eq!(d.twist(ElementSet::EMPTY).unwrap(), d);
        let d = sys(2, &[&[], &[1], &[1, 2]]);
        assert_eq!(d.twist(set(&[1, 2])).unwrap(), sys(2, &[&[], &[2], &[1, 2]]));
        assert!(d.twist(set(&[3])).is_err());
    }

    #[test]
    fn loop_complement_examples() {
        let d = almost_power_set(3);
        assert_eq!(
            d.loop_complement(set(&[1])).unwrap(),
            sys(3, &[&[], &[2], &[3], &[2, 3], &[1, 2, 3]])
        );
        assert_eq!(
            sys(1, &[&[]]).loop_complement(set(&[1])).unwrap(),
            sys(1, &[&[], &[1]])
        );
        assert!(d.loop_complement(set(&[4])).is_err());
    }

    #[test]
    fn dual_twist_examples() {
        let d = sys(3, &[&[], &[1], &[2]]);
        assert_eq!(d.dual_twist(set(&[1, 2, 3])).unwrap(), d);
        assert_eq!(d.dual_twist(ElementSet::EMPTY).unwrap(), d);
        let d = sys(1, &[&[]]);
        assert_eq!(d.dual_twist(set(&[1])).unwrap(), d);
    }

    #[test]
    fn apply_flip_examples() {
        let d = sys(3, &[&[3], &[1, 3], &[2, 3]]);
        assert_eq!(
            d.apply_flip(Flip::Twist, 1).unwrap(),
            sys(3, &[&[1, 3], &[3], &[1, 2, 3]])
        );
        assert_eq!(d.apply_flip(Flip::Identity, 2).unwrap(), d);
        for i in 1..=3 {
            assert_eq!(
                d.apply_flip(Flip::DualTwist, i).unwrap(),
                d.dual_twist(ElementSet::singleton(i)).unwrap()
            );
        }
        assert!(d.apply_flip(Flip::Loop, 4).is_err());
        assert!(d.apply_flip(Flip::Loop, 0).is_err());
    }

    #[test]
    fn example_almost_power_set_is_delta_matroid_but_loop_complement_is_not() {
        for n in 3..=5 {
            let d = almost_power_set(n);
            assert!(d.is_delta_matroid().is_valid());
            let w = d.loop_complement(ElementSet::singleton(1)).unwrap().is_delta_matroid();
            assert_eq!(
                w,
                DeltaMatroidWitness::ExchangeFails {
                    x: ElementSet::EMPTY,
                    y: ElementSet::full(n),
                    u: 1
                }
            );
        }
    }

    #[test]
    fn empty_family_is_not_proper() {
        let d = SetSystem::new(2, []).unwrap();
        assert_eq!(d.is_delta_matroid(), DeltaMatroidWitness::NotProper);
        assert!(d.min_max_matroids().is_err());
    }

    #[test]
    fn min_max_examples() {
        let d = sys(3, &[&[3], &[1, 3], &[2, 3]]);
        let (lo, hi) = d.min_max_matroids().unwrap();
        assert_eq!(lo, sys(3, &[&[3]]));
        assert_eq!(hi, sys(3, &[&[1, 3], &[2, 3]]));
        let d = sys(3, &[&[1], &[2]]);
        assert_eq!(d.min_max_matroids().unwrap(), (d.clone(), d));
        let d = sys(1, &[&[], &[1]]);
        assert_eq!(
            d.min_max_matroids().unwrap(),
            (sys(1, &[&[]]), sys(1, &[&[1]]))
        );
    }

    #[test]
    fn classify_examples() {
        use RibbonLoopClass::*;
        assert_eq!(sys(1, &[&[]]).classify_element(1).unwrap(), OrientableLoop);
        assert_eq!(
            sys(1, &[&[], &[1]]).classify_element(1).unwrap(),
            NonOrientableLoop
        );
        assert_eq!(sys(1, &[&[1]]).classify_element(1).unwrap(), NotRibbonLoop);
        let bad = almost_power_set(3).loop_complement(set(&[1])).unwrap();
        assert!(matches!(bad.classify_element(1), Err(Error::Precondition(_))));
        assert!(sys(1, &[&[]]).classify_element(2).is_err());
    }

    #[test]
    fn vf_safe_examples() {
        assert!(!almost_power_set(3).is_vf_safe().unwrap());
        assert!(sys(3, &[&[3], &[1, 3], &[2, 3]]).is_vf_safe().unwrap());
        assert!(sys(0, &[&[]]).is_vf_safe().unwrap());
        let report = almost_power_set(3).vf_safe_report(10).unwrap();
        let (path, reached, witness) = report.counterexample.unwrap();
        let mut replay = almost_power_set(3);
        for (g, i) in path {
            replay = replay.apply_flip(g, i).unwrap();
        }
        assert_eq!(replay, reached);
        assert!(!witness.is_valid());
    }

    #[test]
    fn vf_safe_cap_is_enforced() {
        let d = SetSystem::power_set(4).unwrap();
        assert!(matches!(d.vf_safe_report(3), Err(Error::Budget { .. })));
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let d = sys(3, &[&[3], &[1, 3], &[2, 3]]);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"n":3,"feasible":[[3],[1,3],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<SetSystem>(&text).unwrap(), d);
        assert!(serde_json::from_str::<SetSystem>(r#"{"n":2,"feasible":[[1],[1]]}"#).is_err());
        assert!(serde_json::from_str::<SetSystem>(r#"{"n":2,"feasible":[[3]]}"#).is_err());
        assert!(serde_json::from_str::<SetSystem>(r#"{"n":2,"feasible":[[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<SetSystem>(r#"{"n":17,"feasible":[]}"#).is_err());
        // unsorted input is canonicalized
        let u: SetSystem = serde_json::from_str(r#"{"n":3,"feasible":[[3,2],[3]]}"#).unwrap();
        assert_eq!(u, sys(3, &[&[3], &[2, 3]]));
    }
}
