//! Orbits and stabilizers under flip vectors and relabellings, transport of
//! stabilizers along an orbit, uniformization of stabilizers, and the
//! normal representative with only orientable ribbon loops.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{budget, invalid, Error, Result};
use crate::group::{Flip, FlipVector, Perm, TwualityElement};
use crate::set_system::{flip_in_place, ElementSet, RibbonLoopClass, SetSystem};

/// Default size cap for orbits under the full group.
pub const FULL_ORBIT_CAP: usize = 8;
/// Default size cap for orbits under flip vectors alone.
pub const IOTA_ORBIT_CAP: usize = 10;
/// Default size cap for the exhaustive stabilizer search over all `(g, p)`.
pub const STABILIZER_ALL_CAP: usize = 5;
/// Default size cap for the uniform stabilizer search.
pub const STABILIZER_UNIFORM_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitMode {
    /// Flip vectors and permutations.
    Full,
    /// Flip vectors only (permutation fixed to the identity).
    Iota,
}

/// One generator step of an orbit search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Apply `flip` at `element`.
    Flip { flip: Flip, element: usize },
    /// Relabel by the transposition `(i i+1)`.
    Swap(usize),
}

impl Generator {
    /// Generators in search order: `*1, +1, *2, +2, ...`, then `(1 2), (2 3), ...` in full mode.
    pub fn all(n: usize, mode: OrbitMode) -> Vec<Generator> {
        let mut gens: Vec<Generator> = (1..=n)
            .flat_map(|i| {
                [Flip::Twist, Flip::Loop]
                    .map(|flip| Generator::Flip { flip, element: i })
            })
            .collect();
        if mode == OrbitMode::Full {
            gens.extend((1..n).map(Generator::Swap));
        }
        gens
    }

    fn apply_indicator(self, ind: &[bool]) -> Vec<bool> {
        match self {
            Generator::Flip { flip, element } => {
                let mut out = ind.to_vec();
                flip_in_place(&mut out, flip, element);
                out
            }
            Generator::Swap(i) => {
                let a = 1usize << (i - 1);
                let b = a << 1;
                let mut out = vec![false; ind.len()];
                for (x, &member) in ind.iter().enumerate() {
                    let y = if (x & a != 0) != (x & b != 0) { x ^ a ^ b } else { x };
                    out[y] = member;
                }
                out
            }
        }
    }

    pub fn apply(self, d: &SetSystem) -> Result<SetSystem> {
        match self {
            Generator::Flip { flip, element } => d.apply_flip(flip, element),
            Generator::Swap(i) => {
                if i == 0 || i >= d.n() {
                    return Err(invalid(format!("swap ({i} {}) outside [{}]", i + 1, d.n())));
                }
                d.relabel(&Perm::transposition(d.n(), i, i + 1)?)
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Flip { flip, element } => write!(f, "{flip}{element}"),
            Generator::Swap(i) => write!(f, "({i} {})", i + 1),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The orbit of a seed system, sorted canonically, with one generator path
/// (applied left to right to the seed) per element.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub mode: OrbitMode,
    pub size: usize,
    pub elements: Vec<SetSystem>,
    pub paths: Vec<Vec<Generator>>,
}

impl OrbitReport {
    pub fn contains(&self, d: &SetSystem) -> bool {
        self.elements.binary_search(d).is_ok()
    }

    /// Re-applies every generator to every element and checks the result is present.
    pub fn is_closed(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return true;
        };
        let gens = Generator::all(first.n(), self.mode);
        self.elements.iter().all(|d| {
            gens.iter()
                .all(|g| g.apply(d).map(|e| self.contains(&e)).unwrap_or(false))
        })
    }
}

pub fn orbit(d: &SetSystem, mode: OrbitMode) -> Result<OrbitReport> {
    let cap = match mode {
        OrbitMode::Full => FULL_ORBIT_CAP,
        OrbitMode::Iota => IOTA_ORBIT_CAP,
    };
    orbit_with_cap(d, mode, cap)
}

/// Breadth-first closure of `d` under the generators of `mode`.
///
/// Frontier expansion runs on the rayon pool; insertion is sequential in
/// frontier order, so the result does not depend on the thread count.
pub fn orbit_with_cap(d: &SetSystem, mode: OrbitMode, cap: usize) -> Result<OrbitReport> {
    budget("orbit search", d.n(), cap)?;
    let gens = Generator::all(d.n(), mode);
    let mut states = vec![d.indicator()];
    let mut parents: Vec<Option<(usize, Generator)>> = vec![None];
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    index.insert(states[0].clone(), 0);

    let mut lo = 0;
    while lo < states.len() {
        let hi = states.len();
        let expansions: Vec<Vec<Vec<bool>>> = states[lo..hi]
            .par_iter()
            .map(|s| gens.iter().map(|g| g.apply_indicator(s)).collect())
            .collect();
        for (offset, children) in expansions.into_iter().enumerate() {
            for (g, child) in gens.iter().zip(children) {
                if !index.contains_key(&child) {
                    index.insert(child.clone(), states.len());
                    parents.push(Some((lo + offset, *g)));
                    states.push(child);
                }
            }
        }
        lo = hi;
    }

    let mut entries: Vec<(SetSystem, Vec<Generator>)> = (0..states.len())
        .map(|k| {
            let mut path = Vec::new();
            let mut at = k;
            while let Some((p, g)) = parents[at] {
                path.push(g);
                at = p;
            }
            path.reverse();
            (SetSystem::from_indicator_unchecked(d.n(), &states[k]), path)
        })
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let (elements, paths): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    Ok(OrbitReport {
        mode,
        size: elements.len(),
        elements,
        paths,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerMode {
    /// Every `(g, p)` with `g` not the identity.
    All,
    /// Uniform `g` only.
    Uniform,
}

/// An element fixing the queried system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerHit {
    #[serde(flatten)]
    pub element: TwualityElement,
    pub uniform: Option<Flip>,
}

impl StabilizerHit {
    fn new(element: TwualityElement) -> Self {
        let uniform = element.gvec().uniform_flip();
        StabilizerHit { element, uniform }
    }

    /// Fixed by a permutation-free element.
    pub fn is_canonical(&self) -> bool {
        self.element.perm().is_identity()
    }
}

pub fn stabilizer_search(d: &SetSystem, mode: StabilizerMode) -> Result<Vec<StabilizerHit>> {
    let cap = match mode {
        StabilizerMode::All => STABILIZER_ALL_CAP,
        StabilizerMode::Uniform => STABILIZER_UNIFORM_CAP,
    };
    stabilizer_search_with_cap(d, mode, cap)
}

/// All `(g, p)` with `g` not the identity and `(g, p) d = d`, ordered by `p`
/// (lexicographic one-line) and then by `g` (lexicographic in flip order).
pub fn stabilizer_search_with_cap(
    d: &SetSystem,
    mode: StabilizerMode,
    cap: usize,
) -> Result<Vec<StabilizerHit>> {
    budget("stabilizer search", d.n(), cap)?;
    let n = d.n();
    let target = d.indicator();
    let perms: Vec<Perm> = Perm::all(n).collect();
    let per_perm: Vec<Vec<FlipVector>> = perms
        .par_iter()
        .map(|p| {
            let start = d
                .relabel(p)
                .expect("permutation length matches")
                .indicator();
            let mut found = Vec::new();
            match mode {
                StabilizerMode::Uniform => {
                    for g in Flip::NON_IDENTITY {
                        let mut ind = start.clone();
                        for i in 1..=n {
                            flip_in_place(&mut ind, g, i);
                        }
                        if ind == target {
                            found.push(FlipVector::uniform(n, g));
                        }
                    }
                }
                StabilizerMode::All => {
                    let mut chosen = Vec::with_capacity(n);
                    search_flips(&start, &target, n, &mut chosen, &mut found);
                }
            }
            found
        })
        .collect();

    let mut hits = Vec::new();
    for (p, gvecs) in perms.into_iter().zip(per_perm) {
        for gvec in gvecs {
            let element = TwualityElement::new(gvec, p.clone())?;
            if element.act(d)? != *d {
                return Err(Error::Internal(format!("{element} reported but does not fix {d}")));
            }
            hits.push(StabilizerHit::new(element));
        }
    }
    Ok(hits)
}

fn search_flips(
    current: &[bool],
    target: &[bool],
    n: usize,
    chosen: &mut Vec<Flip>,
    found: &mut Vec<FlipVector>,
) {
    let i = chosen.len() + 1;
    if i > n {
        if current == target && chosen.iter().any(|&g| g != Flip::Identity) {
            found.push(FlipVector::new(chosen.clone()));
        }
        return;
    }
    for g in Flip::ALL {
        let mut next = current.to_vec();
        flip_in_place(&mut next, g, i);
        chosen.push(g);
        search_flips(&next, target, n, chosen, found);
        chosen.pop();
    }
}

/// Moves `d` by `mv = (h, p)` and returns the moved system together with the
/// conjugated stabilizer `(h ∘ g p^{-1} ∘ h^{-1} μ'^{-1}, μ')`, `μ' = p μ p^{-1}`.
pub fn transport(
    d: &SetSystem,
    stab: &TwualityElement,
    mv: &TwualityElement,
) -> Result<(SetSystem, TwualityElement)> {
    if stab.act(d)? != *d {
        return Err(Error::Precondition(format!("{stab} does not fix {d}")));
    }
    let moved = mv.act(d)?;
    let p = mv.perm();
    let mu = p.compose(stab.perm()).compose(&p.inverse());
    let h = mv.gvec();
    let gvec = h
        .compose(&stab.gvec().reindex(p)?)?
        .compose(&h.inverse().reindex(&mu)?)?;
    let new_stab = TwualityElement::new(gvec, mu)?;
    if new_stab.act(&moved)? != moved {
        return Err(Error::Internal(format!("{new_stab} does not fix {moved}")));
    }
    Ok((moved, new_stab))
}

/// Product `g_{c_m} ... g_{c_1}` along a cycle `(c_1 ... c_m)`.
fn cycle_product(gvec: &FlipVector, cycle: &[usize]) -> Flip {
    cycle
        .iter()
        .fold(Flip::Identity, |acc, &c| gvec.get(c).mul(acc))
}

/// First cycle of `mu` on which `|g_{c_m} ... g_{c_1}| != |g^m|`, with both orders.
pub fn cycle_violation(
    gvec: &FlipVector,
    mu: &Perm,
    g: Flip,
) -> Result<Option<(Vec<usize>, usize, usize)>> {
    if gvec.len() != mu.len() {
        return Err(invalid(format!(
            "flip vector of length {} with permutation of length {}",
            gvec.len(),
            mu.len()
        )));
    }
    Ok(mu.cycles().into_iter().find_map(|cycle| {
        let product = cycle_product(gvec, &cycle).order();
        let target = g.pow(cycle.len()).order();
        (product != target).then_some((cycle, product, target))
    }))
}

/// Whether every cycle of `mu` satisfies the order condition for `g`.
pub fn cycle_condition(gvec: &FlipVector, mu: &Perm, g: Flip) -> Result<bool> {
    Ok(cycle_violation(gvec, mu, g)?.is_none())
}

/// A conjugating flip vector and the uniformly stabilized system it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformizationResult {
    pub hvec: FlipVector,
    pub target: SetSystem,
    pub g: Flip,
    pub mu: Perm,
}

/// Given `(gvec, mu)` fixing `dp` and satisfying the order condition for `g`,
/// builds `h` with `(h, id)(gvec, mu)(h, id)^{-1} = (g...g, mu)` and returns
/// `D = (h, id) dp`, which is then fixed by `(g...g, mu)`.
///
/// On each cycle `(c_1 ... c_m)` the last entry `h_{c_m}` is the first flip (in
/// the fixed flip order) conjugating the cycle product to `g^m`; the rest follow
/// from `h_{c_k} = g^{-1} h_{c_{k+1}} g_{c_{k+1}}`.
pub fn uniformize(
    dp: &SetSystem,
    gvec: &FlipVector,
    mu: &Perm,
    g: Flip,
) -> Result<UniformizationResult> {
    if g == Flip::Identity {
        return Err(Error::Precondition("target flip must not be the identity".into()));
    }
    let stab = TwualityElement::new(gvec.clone(), mu.clone())?;
    if stab.act(dp)? != *dp {
        return Err(Error::Precondition(format!("{stab} does not fix {dp}")));
    }
    if let Some((cycle, product_order, target_order)) = cycle_violation(gvec, mu, g)? {
        return Err(Error::CycleCondition {
            cycle,
            product_order,
            target_order,
        });
    }

    let n = dp.n();
    let mut h = vec![Flip::Identity; n];
    for cycle in mu.cycles() {
        let m = cycle.len();
        let product = cycle_product(gvec, &cycle);
        let power = g.pow(m);
        let last = Flip::ALL
            .into_iter()
            .find(|x| x.mul(product).mul(x.inverse()) == power)
            .ok_or_else(|| {
                Error::Internal(format!("no conjugator for cycle {cycle:?} despite equal orders"))
            })?;
        h[cycle[m - 1] - 1] = last;
        for k in (0..m - 1).rev() {
            let next = cycle[k + 1];
            h[cycle[k] - 1] = g.inverse().mul(h[next - 1]).mul(gvec.get(next));
        }
    }

    let hvec = FlipVector::new(h);
    let conj = TwualityElement::flips(hvec.clone());
    let uniform = TwualityElement::new(FlipVector::uniform(n, g), mu.clone())?;
    if conj.mul(&stab)?.mul(&conj.inverse())? != uniform {
        return Err(Error::Internal(format!("{hvec} does not conjugate {stab} to {uniform}")));
    }
    let target = conj.act(dp)?;
    if uniform.act(&target)? != target {
        return Err(Error::Internal(format!("{uniform} does not fix {target}")));
    }
    Ok(UniformizationResult {
        hvec,
        target,
        g,
        mu: mu.clone(),
    })
}

/// The normal representative and how it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    /// Least minimum-size feasible set, twisted away first.
    pub twist_set: ElementSet,
    /// Elements whose singletons were feasible after the twist.
    pub loop_set: ElementSet,
    /// Flip vector taking the input to `result`.
    pub element: TwualityElement,
    pub result: SetSystem,
    /// Elements of `result` that are not orientable ribbon loops.
    pub violations: Vec<usize>,
}

/// Twists by the least minimum-size feasible set `F`, then loop-complements at
/// every `i` with `{i}` feasible in `D * F`.
pub fn normalization_report(d: &SetSystem) -> Result<NormalizationReport> {
    if !d.is_delta_matroid().is_valid() {
        return Err(Error::Precondition(format!("{d} is not a delta-matroid")));
    }
    if !d.is_vf_safe()? {
        return Err(Error::Precondition(format!("{d} is not vf-safe")));
    }
    let (lower, _) = d.min_max_matroids()?;
    let twist_set = lower.family()[0];
    let twisted = d.twist(twist_set)?;
    let loop_set: ElementSet = (1..=d.n())
        .filter(|&i| twisted.contains(ElementSet::singleton(i)))
        .collect();
    let result = twisted.loop_complement(loop_set)?;
    if !result.is_normal() || (1..=d.n()).any(|i| result.contains(ElementSet::singleton(i))) {
        return Err(Error::Internal(format!("{result} is not normal without singletons")));
    }

    let gvec = FlipVector::new(
        (1..=d.n())
            .map(|i| match (twist_set.contains(i), loop_set.contains(i)) {
                (false, false) => Flip::Identity,
                (true, false) => Flip::Twist,
                (false, true) => Flip::Loop,
                (true, true) => Flip::LoopTwist,
            })
            .collect(),
    );
    let element = TwualityElement::flips(gvec);
    if element.act(d)? != result {
        return Err(Error::Internal(format!("{element} does not reach {result}")));
    }
    let mut violations = Vec::new();
    for i in 1..=d.n() {
        if result.classify_element(i)? != RibbonLoopClass::OrientableLoop {
            violations.push(i);
        }
    }
    Ok(NormalizationReport {
        twist_set,
        loop_set,
        element,
        result,
        violations,
    })
}

pub fn normalize_rep(d: &SetSystem) -> Result<SetSystem> {
    Ok(normalization_report(d)?.result)
}
