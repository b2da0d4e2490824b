//! Tight 3-matroids on the carrier with skew classes `{(i,1), (i,2), (i,3)}`,
//! transversal triples and projections, and the lift/extraction pair linking
//! them to vf-safe delta-matroids.
//!
//! Subtransversals are packed two bits per skew class (class `i` at bits
//! `2(i-1)..2i`, value `0` for "no element", otherwise the role `r`).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{budget, invalid, Error, Result};
use crate::group::{Flip, FlipVector, Perm};
use crate::orbit::OrbitMode;
use crate::set_system::{ElementSet, SetSystem};

/// Largest carrier supported by the axiom checks.
pub const MULTIMATROID_CHECK_CAP: usize = 6;
/// Largest ground set for lifting.
pub const LIFT_CAP: usize = 8;
/// Largest ground set for the full `6^n n!` extraction sweep.
pub const ORBIT_VIA_LIFT_FULL_CAP: usize = 4;
/// Largest ground set for the `6^n` extraction sweep.
pub const ORBIT_VIA_LIFT_IOTA_CAP: usize = 7;

const MAX_CLASSES: usize = 16;

/// A subtransversal: at most one element `(i, r)` from each skew class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubTransversal(u32);

impl SubTransversal {
    pub const EMPTY: SubTransversal = SubTransversal(0);

    /// A total selection with `choice[i-1]` the role picked in class `i`.
    pub fn from_choice(choice: &[u8]) -> Result<Self> {
        let mut t = SubTransversal::EMPTY;
        for (k, &r) in choice.iter().enumerate() {
            if !(1..=3).contains(&r) {
                return Err(invalid(format!("role {r} in class {} is not 1, 2 or 3", k + 1)));
            }
            t = t.with(k + 1, r);
        }
        Ok(t)
    }

    pub fn from_elements(n: usize, elements: &[(usize, u8)]) -> Result<Self> {
        let mut t = SubTransversal::EMPTY;
        for &(i, r) in elements {
            if i == 0 || i > n {
                return Err(invalid(format!("class {i} outside [{n}]")));
            }
            if !(1..=3).contains(&r) {
                return Err(invalid(format!("role {r} is not 1, 2 or 3")));
            }
            if t.get(i).is_some() {
                return Err(invalid(format!("two elements from skew class {i}")));
            }
            t = t.with(i, r);
        }
        Ok(t)
    }

    pub fn code(self) -> u32 {
        self.0
    }

    /// Role chosen in class `i`, if any.
    pub fn get(self, i: usize) -> Option<u8> {
        match (self.0 >> (2 * (i - 1))) & 3 {
            0 => None,
            r => Some(r as u8),
        }
    }

    pub fn with(self, i: usize, r: u8) -> Self {
        let shift = 2 * (i - 1);
        SubTransversal((self.0 & !(3 << shift)) | ((r as u32) << shift))
    }

    pub fn without(self, i: usize) -> Self {
        SubTransversal(self.0 & !(3 << (2 * (i - 1))))
    }

    pub fn len(self) -> usize {
        (0..MAX_CLASSES).filter(|k| (self.0 >> (2 * k)) & 3 != 0).count()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Whether every class of `[n]` is hit.
    pub fn is_total(self, n: usize) -> bool {
        (1..=n).all(|i| self.get(i).is_some())
    }

    pub fn is_subset_of(self, other: SubTransversal) -> bool {
        (1..=MAX_CLASSES).all(|i| match self.get(i) {
            None => true,
            r => other.get(i) == r,
        })
    }

    /// Elements `(i, r)` in increasing class order.
    pub fn elements(self) -> impl Iterator<Item = (usize, u8)> {
        (1..=MAX_CLASSES).filter_map(move |i| self.get(i).map(|r| (i, r)))
    }

    /// Classes whose chosen element lies in `slot` of `tau`.
    pub fn classes_in_slot(self, tau: &TransversalTriple, slot: u8) -> ElementSet {
        self.elements()
            .filter(|&(i, r)| tau.slot_of(i, r) == slot)
            .map(|(i, _)| i)
            .collect()
    }

    /// Every total transversal of `n` classes, lexicographic in the role vector.
    pub fn all_total(n: usize) -> Vec<SubTransversal> {
        let mut out = vec![SubTransversal::EMPTY];
        for i in 1..=n {
            out = out
                .into_iter()
                .flat_map(|t| (1..=3).map(move |r| t.with(i, r)))
                .collect();
        }
        out
    }
}

impl Ord for SubTransversal {
    /// Lexicographic in the role vector, absent (0) first.
    fn cmp(&self, other: &Self) -> Ordering {
        (1..=MAX_CLASSES)
            .map(|i| (self.get(i).unwrap_or(0), other.get(i).unwrap_or(0)))
            .find(|(a, b)| a != b)
            .map_or(Ordering::Equal, |(a, b)| a.cmp(&b))
    }
}

impl PartialOrd for SubTransversal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubTransversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, r)) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{r})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubTransversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SubTransversal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements().map(|(i, r)| [i, r as usize]))
    }
}

/// An ordered partition `(T1, T2, T3)` of the carrier into transversals.
///
/// `roles[i-1][r-1]` is the slot (1, 2 or 3) holding the element `(i, r)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct TransversalTriple {
    roles: Vec<[u8; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleRepr {
    roles: Vec<[u8; 3]>,
}

impl TryFrom<TripleRepr> for TransversalTriple {
    type Error = Error;
    fn try_from(r: TripleRepr) -> Result<Self> {
        TransversalTriple::new(r.roles)
    }
}

impl From<TransversalTriple> for TripleRepr {
    fn from(t: TransversalTriple) -> Self {
        TripleRepr { roles: t.roles }
    }
}

impl TransversalTriple {
    pub fn new(roles: Vec<[u8; 3]>) -> Result<Self> {
        if roles.len() > MAX_CLASSES {
            return Err(invalid(format!("at most {MAX_CLASSES} skew classes supported")));
        }
        for (k, row) in roles.iter().enumerate() {
            let mut sorted = *row;
            sorted.sort_unstable();
            if sorted != [1, 2, 3] {
                return Err(invalid(format!("roles of class {} are not a permutation of 1,2,3", k + 1)));
            }
        }
        Ok(TransversalTriple { roles })
    }

    /// `(i, r)` sits in slot `r` for every class.
    pub fn reference(n: usize) -> Self {
        TransversalTriple {
            roles: vec![[1, 2, 3]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[[u8; 3]] {
        &self.roles
    }

    pub fn slot_of(&self, i: usize, r: u8) -> u8 {
        self.roles[i - 1][r as usize - 1]
    }

    /// The role of class `i` sitting in `slot`.
    pub fn member(&self, i: usize, slot: u8) -> u8 {
        let pos = self.roles[i - 1]
            .iter()
            .position(|&s| s == slot)
            .expect("roles are a permutation");
        pos as u8 + 1
    }

    /// `tau g i` on class `i`: `*` exchanges the T1 and T2 members, `+` the T2 and
    /// T3 members, `~` the T1 and T3 members. Composites act on the right, so
    /// flipping by `h` then `g` equals flipping by `g.mul(h)`.
    pub fn flip(&self, g: Flip, i: usize) -> Result<Self> {
        if i == 0 || i > self.n() {
            return Err(invalid(format!("class {i} outside [{}]", self.n())));
        }
        let p = g.symbol_perm();
        let mut out = self.clone();
        for s in out.roles[i - 1].iter_mut() {
            *s = p[*s as usize - 1] + 1;
        }
        Ok(out)
    }

    /// `tau Γ(g)`: on the class that `sigma` labels `j`, applies the letters of
    /// `g_j` to the triple from left to right, so that
    /// `lift(g·D, tau, sigma) = lift(D, tau Γ(g), sigma)`.
    ///
    /// Set systems take the rightmost letter first, so in terms of [`Self::flip`]
    /// this is a flip by `g_j^{-1}`.
    pub fn twist_by(&self, gvec: &FlipVector, sigma: &Projection) -> Result<Self> {
        if gvec.len() != self.n() || sigma.n() != self.n() {
            return Err(invalid("flip vector, triple and projection sizes differ"));
        }
        let inv = sigma.relabel.inverse();
        (1..=self.n()).try_fold(self.clone(), |t, j| t.flip(gvec.get(j).inverse(), inv.image(j)))
    }

    /// All `6^n` triples, flipping the reference triple class by class in flip order.
    pub fn all(n: usize) -> Vec<TransversalTriple> {
        let mut out = vec![TransversalTriple::reference(n)];
        for i in 1..=n {
            out = out
                .into_iter()
                .flat_map(|t| Flip::ALL.map(|g| t.flip(g, i).expect("class in range")))
                .collect();
        }
        out
    }

    /// The transversal in `slot`.
    pub fn slot(&self, slot: u8) -> SubTransversal {
        (1..=self.n()).fold(SubTransversal::EMPTY, |t, i| t.with(i, self.member(i, slot)))
    }
}

impl fmt::Display for TransversalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.roles).map_err(|_| fmt::Error)?)
    }
}

impl fmt::Debug for TransversalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A projection `sigma(i, r) = relabel(i)` of the carrier onto `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Projection {
    pub relabel: Perm,
}

impl Projection {
    pub fn new(relabel: Perm) -> Self {
        Projection { relabel }
    }

    pub fn identity(n: usize) -> Self {
        Projection::new(Perm::identity(n))
    }

    pub fn n(&self) -> usize {
        self.relabel.len()
    }

    /// Labels of a set of classes.
    pub fn project(&self, classes: ElementSet) -> ElementSet {
        classes.map(&self.relabel)
    }

    /// `p sigma`: relabel after projecting.
    pub fn then(&self, p: &Perm) -> Projection {
        Projection::new(p.compose(&self.relabel))
    }
}

/// Which elements of each skew class belong to a carrier subset; bit `r-1` of
/// `masks[i-1]` marks `(i, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierSubset {
    masks: Vec<u8>,
}

impl CarrierSubset {
    pub fn full(n: usize) -> Self {
        CarrierSubset { masks: vec![0b111; n] }
    }

    pub fn from_elements(n: usize, elements: &[(usize, u8)]) -> Result<Self> {
        let mut masks = vec![0u8; n];
        for &(i, r) in elements {
            if i == 0 || i > n || !(1..=3).contains(&r) {
                return Err(invalid(format!("({i},{r}) is not a carrier element for n = {n}")));
            }
            masks[i - 1] |= 1 << (r - 1);
        }
        Ok(CarrierSubset { masks })
    }

    /// Union of the given slots of `tau`.
    pub fn from_slots(tau: &TransversalTriple, slots: &[u8]) -> Self {
        let masks = (1..=tau.n())
            .map(|i| slots.iter().fold(0, |m, &s| m | 1 << (tau.member(i, s) - 1)))
            .collect();
        CarrierSubset { masks }
    }

    pub fn contains_all(&self, t: SubTransversal) -> bool {
        t.elements().all(|(i, r)| self.masks[i - 1] & (1 << (r - 1)) != 0)
    }
}

/// First failing multimatroid axiom, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultimatroidWitness {
    Valid,
    /// No independent sets at all.
    Empty,
    /// On `transversal`, `smaller` cannot be augmented from `larger`.
    Augmentation {
        transversal: SubTransversal,
        smaller: SubTransversal,
        larger: SubTransversal,
    },
    /// Neither `independent + (class, roles.0)` nor `independent + (class, roles.1)` is independent.
    SkewPair {
        independent: SubTransversal,
        class: usize,
        roles: (u8, u8),
    },
}

impl MultimatroidWitness {
    pub fn is_valid(&self) -> bool {
        matches!(self, MultimatroidWitness::Valid)
    }
}

/// First basis and class where the number of non-bases among the three
/// single-class exchanges is not one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TightnessWitness {
    Tight,
    Loose {
        basis: SubTransversal,
        class: usize,
        non_bases: usize,
    },
}

impl TightnessWitness {
    pub fn is_tight(&self) -> bool {
        matches!(self, TightnessWitness::Tight)
    }
}

/// A 3-matroid given by its bases; independents are their subsets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MultimatroidRepr", into = "MultimatroidRepr")]
pub struct Multimatroid {
    n: usize,
    bases: Vec<SubTransversal>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultimatroidRepr {
    n: usize,
    bases: Vec<Vec<(usize, u8)>>,
}

impl TryFrom<MultimatroidRepr> for Multimatroid {
    type Error = Error;
    fn try_from(r: MultimatroidRepr) -> Result<Self> {
        let mut bases = Vec::with_capacity(r.bases.len());
        for b in &r.bases {
            bases.push(SubTransversal::from_elements(r.n, b)?);
        }
        let len = bases.len();
        let z = Multimatroid::new(r.n, bases)?;
        if z.bases.len() != len {
            return Err(invalid("duplicate basis"));
        }
        Ok(z)
    }
}

impl From<Multimatroid> for MultimatroidRepr {
    fn from(z: Multimatroid) -> Self {
        MultimatroidRepr {
            n: z.n,
            bases: z.bases.iter().map(|b| b.elements().collect()).collect(),
        }
    }
}

impl Multimatroid {
    pub fn new(n: usize, bases: impl IntoIterator<Item = SubTransversal>) -> Result<Self> {
        if n > MAX_CLASSES {
            return Err(invalid(format!("at most {MAX_CLASSES} skew classes supported")));
        }
        let bases: BTreeSet<SubTransversal> = bases.into_iter().collect();
        if let Some(b) = bases.iter().find(|b| b.elements().any(|(i, _)| i > n)) {
            return Err(invalid(format!("{b} uses a class outside [{n}]")));
        }
        Ok(Multimatroid {
            n,
            bases: bases.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[SubTransversal] {
        &self.bases
    }

    pub fn is_basis(&self, t: SubTransversal) -> bool {
        self.bases.binary_search(&t).is_ok()
    }

    fn has_transversal_bases(&self) -> bool {
        self.bases.iter().all(|b| b.is_total(self.n))
    }

    /// Indicator over packed codes `0..4^n` of the down-closure of the bases.
    fn independents(&self) -> Vec<bool> {
        let mut indep = vec![false; 1 << (2 * self.n)];
        for b in &self.bases {
            let classes: Vec<usize> = b.elements().map(|(i, _)| i).collect();
            for mask in 0u32..(1 << classes.len()) {
                let t = classes
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) == 0)
                    .fold(*b, |t, (_, &i)| t.without(i));
                indep[t.code() as usize] = true;
            }
        }
        indep
    }

    /// Checks the matroid axioms on every transversal, by augmentation of
    /// independent sets, and the skew-pair axiom.
    pub fn is_multimatroid(&self) -> Result<MultimatroidWitness> {
        self.is_multimatroid_with_cap(MULTIMATROID_CHECK_CAP)
    }

    pub fn is_multimatroid_with_cap(&self, cap: usize) -> Result<MultimatroidWitness> {
        budget("multimatroid check", self.n, cap)?;
        let n = self.n;
        if self.bases.is_empty() {
            return Ok(MultimatroidWitness::Empty);
        }
        let indep = self.independents();
        let restrict = |t: SubTransversal, mask: u32| -> SubTransversal {
            (1..=n)
                .filter(|i| mask & (1 << (i - 1)) == 0)
                .fold(t, |t, i| t.without(i))
        };

        for t in SubTransversal::all_total(n) {
            let members: Vec<u32> = (0u32..(1 << n))
                .filter(|&m| indep[restrict(t, m).code() as usize])
                .collect();
            for &small in &members {
                for &large in &members {
                    if large.count_ones() <= small.count_ones() {
                        continue;
                    }
                    let extra = large & !small;
                    let grows = (0..n)
                        .map(|k| 1u32 << k)
                        .filter(|x| extra & x != 0)
                        .any(|x| indep[restrict(t, small | x).code() as usize]);
                    if !grows {
                        return Ok(MultimatroidWitness::Augmentation {
                            transversal: t,
                            smaller: restrict(t, small),
                            larger: restrict(t, large),
                        });
                    }
                }
            }
        }

        for code in 0..indep.len() as u32 {
            if !indep[code as usize] {
                continue;
            }
            let i_set = SubTransversal(code);
            for class in (1..=n).filter(|&c| i_set.get(c).is_none()) {
                for (x, y) in [(1, 2), (1, 3), (2, 3)] {
                    let ok = indep[i_set.with(class, x).code() as usize]
                        || indep[i_set.with(class, y).code() as usize];
                    if !ok {
                        return Ok(MultimatroidWitness::SkewPair {
                            independent: i_set,
                            class,
                            roles: (x, y),
                        });
                    }
                }
            }
        }
        Ok(MultimatroidWitness::Valid)
    }

    /// For every basis and class, exactly one of the three single-class
    /// exchanges must fail to be a basis.
    pub fn is_tight(&self) -> Result<TightnessWitness> {
        self.is_tight_with_cap(MULTIMATROID_CHECK_CAP)
    }

    pub fn is_tight_with_cap(&self, cap: usize) -> Result<TightnessWitness> {
        budget("tightness check", self.n, cap)?;
        if let Some(b) = self.bases.iter().find(|b| !b.is_total(self.n)) {
            return Err(invalid(format!("basis {b} is not a transversal")));
        }
        for &b in &self.bases {
            for class in 1..=self.n {
                let non_bases = (1..=3).filter(|&r| !self.is_basis(b.with(class, r))).count();
                if non_bases != 1 {
                    return Ok(TightnessWitness::Loose {
                        basis: b,
                        class,
                        non_bases,
                    });
                }
            }
        }
        Ok(TightnessWitness::Tight)
    }

    /// `Z[X]`: the maximal independent sets contained in `x`. The result may
    /// have non-transversal bases.
    pub fn restrict(&self, x: &CarrierSubset) -> Result<Multimatroid> {
        if x.masks.len() != self.n {
            return Err(invalid(format!("carrier subset over {} classes, expected {}", x.masks.len(), self.n)));
        }
        budget("restriction", self.n, LIFT_CAP)?;
        let indep = self.independents();
        let inside: Vec<SubTransversal> = (0..indep.len() as u32)
            .filter(|&c| indep[c as usize])
            .map(SubTransversal)
            .filter(|&t| x.contains_all(t))
            .collect();
        let maximal = inside
            .iter()
            .copied()
            .filter(|&t| !inside.iter().any(|&u| u != t && t.is_subset_of(u)));
        Multimatroid::new(self.n, maximal)
    }
}

impl fmt::Display for Multimatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, {{", self.n)?;
        for (k, b) in self.bases.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Debug for Multimatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_sizes(d: &SetSystem, tau: &TransversalTriple, sigma: &Projection) -> Result<()> {
    if tau.n() != d.n() || sigma.n() != d.n() {
        return Err(invalid(format!(
            "set system on [{}] with triple over {} classes and projection onto [{}]",
            d.n(),
            tau.n(),
            sigma.n()
        )));
    }
    Ok(())
}

/// The lift `Z_{D,tau,sigma}`; rejects `D` unless it is a vf-safe delta-matroid.
pub fn lift(d: &SetSystem, tau: &TransversalTriple, sigma: &Projection) -> Result<Multimatroid> {
    lift_with_cap(d, tau, sigma, LIFT_CAP)
}

pub fn lift_with_cap(d: &SetSystem, tau: &TransversalTriple, sigma: &Projection, cap: usize) -> Result<Multimatroid> {
    check_sizes(d, tau, sigma)?;
    budget("lift", d.n(), cap)?;
    let dm = d.is_delta_matroid();
    if !dm.is_valid() {
        return Err(Error::Precondition(format!("{d} is not a delta-matroid: {dm:?}")));
    }
    let report = d.vf_safe_report(cap)?;
    if let Some((path, image, witness)) = report.counterexample {
        let steps: Vec<String> = path.iter().map(|(g, i)| format!("{g}{i}")).collect();
        return Err(Error::Precondition(format!(
            "{d} is not vf-safe: {} gives {image}, which fails exchange ({witness:?})",
            steps.join(" ")
        )));
    }
    lift_formula(d, tau, sigma)
}

/// The lift formula applied without the vf-safe check.
///
/// A transversal `B` is a basis iff `sigma(B ∩ T2)` is feasible in
/// `D ~ sigma(B ∩ T3)`; each dual-twist is computed once per subset.
pub fn lift_unchecked(d: &SetSystem, tau: &TransversalTriple, sigma: &Projection) -> Result<Multimatroid> {
    lift_unchecked_with_cap(d, tau, sigma, LIFT_CAP)
}

pub fn lift_unchecked_with_cap(
    d: &SetSystem,
    tau: &TransversalTriple,
    sigma: &Projection,
    cap: usize,
) -> Result<Multimatroid> {
    check_sizes(d, tau, sigma)?;
    budget("lift", d.n(), cap)?;
    lift_formula(d, tau, sigma)
}

fn lift_formula(d: &SetSystem, tau: &TransversalTriple, sigma: &Projection) -> Result<Multimatroid> {
    let n = d.n();
    let mut dual_twists: Vec<Option<Vec<bool>>> = vec![None; 1 << n];
    let mut bases = Vec::new();
    for b in SubTransversal::all_total(n) {
        let f = sigma.project(b.classes_in_slot(tau, 2));
        let s = sigma.project(b.classes_in_slot(tau, 3));
        let ind = dual_twists[s.bits() as usize]
            .get_or_insert_with(|| d.dual_twist(s).expect("subset of ground").indicator());
        if ind[f.bits() as usize] {
            bases.push(b);
        }
    }
    Multimatroid::new(n, bases)
}

/// `D_{Z,tau,sigma}`: labels of the T2 part of the bases inside `T1 ∪ T2`.
/// An empty result is returned as an improper set system.
pub fn extract(z: &Multimatroid, tau: &TransversalTriple, sigma: &Projection) -> Result<SetSystem> {
    if tau.n() != z.n() || sigma.n() != z.n() {
        return Err(invalid("multimatroid, triple and projection sizes differ"));
    }
    if !z.has_transversal_bases() {
        return Err(invalid("extraction needs transversal bases"));
    }
    let family = z
        .bases()
        .iter()
        .filter(|b| b.classes_in_slot(tau, 3).is_empty())
        .map(|b| sigma.project(b.classes_in_slot(tau, 2)));
    SetSystem::new(z.n(), family)
}

/// Extractions of `Z_{D,tau,sigma}` over every triple (and, in full mode,
/// every projection), deduplicated and sorted.
pub fn orbit_via_lift(
    d: &SetSystem,
    tau: &TransversalTriple,
    sigma: &Projection,
    mode: OrbitMode,
) -> Result<Vec<SetSystem>> {
    let cap = match mode {
        OrbitMode::Full => ORBIT_VIA_LIFT_FULL_CAP,
        OrbitMode::Iota => ORBIT_VIA_LIFT_IOTA_CAP,
    };
    orbit_via_lift_with_cap(d, tau, sigma, mode, cap)
}

pub fn orbit_via_lift_with_cap(
    d: &SetSystem,
    tau: &TransversalTriple,
    sigma: &Projection,
    mode: OrbitMode,
    cap: usize,
) -> Result<Vec<SetSystem>> {
    budget("orbit via lift", d.n(), cap)?;
    let z = lift_with_cap(d, tau, sigma, cap)?;
    let n = d.n();
    let projections: Vec<Projection> = match mode {
        OrbitMode::Full => Perm::all(n).map(Projection::new).collect(),
        OrbitMode::Iota => vec![sigma.clone()],
    };
    let chunks: Vec<BTreeSet<SetSystem>> = TransversalTriple::all(n)
        .par_iter()
        .map(|t| {
            projections
                .iter()
                .map(|s| extract(&z, t, s))
                .collect::<Result<BTreeSet<_>>>()
        })
        .collect::<Result<_>>()?;
    let merged: BTreeSet<SetSystem> = chunks.into_iter().flatten().collect();
    Ok(merged.into_iter().collect())
}
