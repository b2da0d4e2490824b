//! The six invertible vertex flips, flip vectors, permutations of `[n]` and
//! their semidirect product, together with its action on set systems.
//!
//! Products follow the operator convention used throughout the crate: `g * h`
//! (written `g.mul(h)`) means "apply `h` first, then `g`". A reduced word such
//! as `*+` therefore applies `+` before `*`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::set_system::{flip_in_place, SetSystem};

/// An element of the flip group, isomorphic to the symmetric group on three symbols.
///
/// Variant order is the fixed enumeration order `1, *, +, *+, +*, ~` (`~` is the
/// dual-twist `+*+ = *+*`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Flip {
    Identity,
    Twist,
    Loop,
    TwistLoop,
    LoopTwist,
    DualTwist,
}

impl Flip {
    pub const ALL: [Flip; 6] = [
        Flip::Identity,
        Flip::Twist,
        Flip::Loop,
        Flip::TwistLoop,
        Flip::LoopTwist,
        Flip::DualTwist,
    ];

    pub const NON_IDENTITY: [Flip; 5] = [
        Flip::Twist,
        Flip::Loop,
        Flip::TwistLoop,
        Flip::LoopTwist,
        Flip::DualTwist,
    ];

    /// The permutation of the three symbols (equivalently, of the three slots of
    /// a transversal triple) that this flip induces. `*` swaps slots 0 and 1,
    /// `+` swaps slots 1 and 2.
    pub fn symbol_perm(self) -> [u8; 3] {
        match self {
            Flip::Identity => [0, 1, 2],
            Flip::Twist => [1, 0, 2],
            Flip::Loop => [0, 2, 1],
            Flip::TwistLoop => [1, 2, 0],
            Flip::LoopTwist => [2, 0, 1],
            Flip::DualTwist => [2, 1, 0],
        }
    }

    fn from_symbol_perm(p: [u8; 3]) -> Flip {
        Flip::ALL
            .into_iter()
            .find(|g| g.symbol_perm() == p)
            .expect("every permutation of three symbols is a flip")
    }

    /// `self * other`: apply `other` first, then `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Flip) -> Flip {
        let a = self.symbol_perm();
        let b = other.symbol_perm();
        Flip::from_symbol_perm([a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]])
    }

    pub fn inverse(self) -> Flip {
        let p = self.symbol_perm();
        let mut inv = [0u8; 3];
        for (k, &v) in p.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        Flip::from_symbol_perm(inv)
    }

    pub fn pow(self, k: usize) -> Flip {
        (0..k).fold(Flip::Identity, |acc, _| acc.mul(self))
    }

    pub fn order(self) -> usize {
        match self {
            Flip::Identity => 1,
            Flip::Twist | Flip::Loop | Flip::DualTwist => 2,
            Flip::TwistLoop | Flip::LoopTwist => 3,
        }
    }

    /// Reduced word over `{*, +}`; the rightmost letter acts first.
    pub fn word(self) -> &'static [Flip] {
        match self {
            Flip::Identity => &[],
            Flip::Twist => &[Flip::Twist],
            Flip::Loop => &[Flip::Loop],
            Flip::TwistLoop => &[Flip::Twist, Flip::Loop],
            Flip::LoopTwist => &[Flip::Loop, Flip::Twist],
            Flip::DualTwist => &[Flip::Loop, Flip::Twist, Flip::Loop],
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Flip::Identity => "1",
            Flip::Twist => "*",
            Flip::Loop => "+",
            Flip::TwistLoop => "*+",
            Flip::LoopTwist => "+*",
            Flip::DualTwist => "~",
        }
    }
}

/// Multiplies out a word over `{*, +}` (whitespace ignored). The empty word is the identity.
pub fn reduce_word(word: &str) -> Result<Flip> {
    word.chars()
        .filter(|c| !c.is_whitespace())
        .try_fold(Flip::Identity, |acc, c| match c {
            '*' | '∗' => Ok(acc.mul(Flip::Twist)),
            '+' => Ok(acc.mul(Flip::Loop)),
            _ => Err(invalid(format!("unexpected letter {c:?} in flip word"))),
        })
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Flip {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flip> {
        match s.trim() {
            "1" | "id" => Ok(Flip::Identity),
            "*" => Ok(Flip::Twist),
            "+" => Ok(Flip::Loop),
            "*+" => Ok(Flip::TwistLoop),
            "+*" => Ok(Flip::LoopTwist),
            "~" => Ok(Flip::DualTwist),
            other => Err(invalid(format!("unknown flip token {other:?}"))),
        }
    }
}

impl TryFrom<String> for Flip {
    type Error = Error;

    fn try_from(s: String) -> Result<Flip> {
        s.parse()
    }
}

impl From<Flip> for String {
    fn from(g: Flip) -> String {
        g.token().to_string()
    }
}

/// A permutation of `[n]` in one-line notation. The public interface is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// From 1-based one-line notation: `one_line[i - 1]` is the image of `i`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Perm> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(invalid(format!("{one_line:?} is not a permutation of 1..={n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            images: one_line.iter().map(|v| v - 1).collect(),
        })
    }

    /// From disjoint cycles over `[n]`; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<Option<usize>> = vec![None; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(invalid(format!("cycle {cycle:?} leaves [{n}]")));
                }
                if images[a - 1].is_some() {
                    return Err(invalid(format!("point {a} appears in two cycles")));
                }
                images[a - 1] = Some(b - 1);
            }
        }
        Ok(Perm {
            images: images
                .into_iter()
                .enumerate()
                .map(|(k, v)| v.unwrap_or(k))
                .collect(),
        })
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Perm> {
        Perm::from_cycles(n, &[vec![i, j]])
    }

    /// Parses one-line (`[2,1,3]`) or cycle (`(1 2)(3)`) notation. Cycle notation
    /// needs `n` unless every point is mentioned.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Perm> {
        let t = text.trim();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| invalid(format!("unterminated permutation {t:?}")))?;
            let values = parse_numbers(inner)?;
            let p = Perm::from_one_line(&values)?;
            if let Some(n) = n {
                if p.len() != n {
                    return Err(invalid(format!("permutation {t} has length {}, expected {n}", p.len())));
                }
            }
            return Ok(p);
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| invalid(format!("expected '(' in permutation {t:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| invalid(format!("unterminated cycle in {t:?}")))?;
            cycles.push(parse_numbers(&body[..close])?);
            rest = body[close + 1..].trim_start();
        }
        let largest = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = n.unwrap_or(largest);
        Perm::from_cycles(n, &cycles)
    }

    /// Every permutation of `[n]` in lexicographic one-line order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (0..n).permutations(n).map(|images| Perm { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v] = k;
        }
        Perm { images }
    }

    /// Disjoint cycles `(c1 c2 ... cm)` with `c_{k+1} = self(c_k)`, each starting
    /// at its least point, fixed points included, ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                cycle.push(at + 1);
                at = self.images[at];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_notation(&self) -> String {
        self.cycles()
            .iter()
            .map(|c| format!("({})", c.iter().join(" ")))
            .collect()
    }
}

fn parse_numbers(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| invalid(format!("{s:?} is not a positive integer")))
        })
        .collect()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line().iter().join(","))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Perm> {
        Perm::from_one_line(&v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.one_line()
    }
}

/// A vector of flips, one per element of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlipVector {
    entries: Vec<Flip>,
}

impl FlipVector {
    pub fn new(entries: Vec<Flip>) -> FlipVector {
        FlipVector { entries }
    }

    pub fn identity(n: usize) -> FlipVector {
        FlipVector::uniform(n, Flip::Identity)
    }

    pub fn uniform(n: usize, g: Flip) -> FlipVector {
        FlipVector {
            entries: vec![g; n],
        }
    }

    /// Parses tokens separated by commas or whitespace, e.g. `"*, +, +"`.
    pub fn parse(text: &str) -> Result<FlipVector> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Flip>>>()
            .map(FlipVector::new)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Flip] {
        &self.entries
    }

    /// Entry at the 1-based position `i`.
    pub fn get(&self, i: usize) -> Flip {
        self.entries[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&g| g == Flip::Identity)
    }

    /// The common entry if all entries agree and are not the identity.
    pub fn uniform_flip(&self) -> Option<Flip> {
        let first = *self.entries.first()?;
        (first != Flip::Identity && self.entries.iter().all(|&g| g == first)).then_some(first)
    }

    /// Entrywise product `self ∘ other`.
    pub fn compose(&self, other: &FlipVector) -> Result<FlipVector> {
        check_len(self.len(), other.len())?;
        Ok(FlipVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&g, &h)| g.mul(h))
                .collect(),
        })
    }

    pub fn inverse(&self) -> FlipVector {
        FlipVector {
            entries: self.entries.iter().map(|g| g.inverse()).collect(),
        }
    }

    /// Reindexing by `p^{-1}`: entry `i` of the result is entry `p^{-1}(i)` of `self`.
    pub fn reindex(&self, p: &Perm) -> Result<FlipVector> {
        check_len(self.len(), p.len())?;
        let inv = p.inverse();
        Ok(FlipVector {
            entries: (1..=self.len()).map(|i| self.get(inv.image(i))).collect(),
        })
    }

    /// Applies entry `i` at element `i` for every `i`.
    pub fn apply(&self, d: &SetSystem) -> Result<SetSystem> {
        check_len(self.len(), d.n())?;
        let mut ind = d.indicator();
        for (k, &g) in self.entries.iter().enumerate() {
            flip_in_place(&mut ind, g, k + 1);
        }
        Ok(SetSystem::from_indicator_unchecked(d.n(), &ind))
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(invalid(format!("length mismatch: {a} vs {b}")))
    }
}

impl fmt::Display for FlipVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

impl fmt::Debug for FlipVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element `(g, p)` of the semidirect product of flip vectors and permutations.
///
/// It acts on a set system by relabelling through `p` and then applying the
/// flip `g(i)` at every element `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TwualityRepr", into = "TwualityRepr")]
pub struct TwualityElement {
    gvec: FlipVector,
    perm: Perm,
}

impl TwualityElement {
    pub fn new(gvec: FlipVector, perm: Perm) -> Result<TwualityElement> {
        check_len(gvec.len(), perm.len())?;
        Ok(TwualityElement { gvec, perm })
    }

    pub fn identity(n: usize) -> TwualityElement {
        TwualityElement {
            gvec: FlipVector::identity(n),
            perm: Perm::identity(n),
        }
    }

    /// `(g, identity)`.
    pub fn flips(gvec: FlipVector) -> TwualityElement {
        let n = gvec.len();
        TwualityElement {
            gvec,
            perm: Perm::identity(n),
        }
    }

    /// `(1, p)`.
    pub fn relabelling(perm: Perm) -> TwualityElement {
        TwualityElement {
            gvec: FlipVector::identity(perm.len()),
            perm,
        }
    }

    pub fn gvec(&self) -> &FlipVector {
        &self.gvec
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.gvec.is_identity() && self.perm.is_identity()
    }

    /// `(g, p1)(h, p2) = (g ∘ h p1^{-1}, p1 p2)`.
    pub fn mul(&self, other: &TwualityElement) -> Result<TwualityElement> {
        check_len(self.n(), other.n())?;
        Ok(TwualityElement {
            gvec: self.gvec.compose(&other.gvec.reindex(&self.perm)?)?,
            perm: self.perm.compose(&other.perm),
        })
    }

    /// `(g, p)^{-1} = (g^{-1} p, p^{-1})`.
    pub fn inverse(&self) -> TwualityElement {
        let pinv = self.perm.inverse();
        TwualityElement {
            gvec: self
                .gvec
                .inverse()
                .reindex(&pinv)
                .expect("lengths agree by construction"),
            perm: pinv,
        }
    }

    /// `(g, p) D = D_p Γ(g)`.
    pub fn act(&self, d: &SetSystem) -> Result<SetSystem> {
        check_len(self.n(), d.n())?;
        self.gvec.apply(&d.relabel(&self.perm)?)
    }
}

impl fmt::Display for TwualityElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.gvec, self.perm)
    }
}

impl fmt::Debug for TwualityElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwualityRepr {
    gvec: FlipVector,
    perm: Perm,
}

impl TryFrom<TwualityRepr> for TwualityElement {
    type Error = Error;

    fn try_from(r: TwualityRepr) -> Result<Self> {
        TwualityElement::new(r.gvec, r.perm)
    }
}

impl From<TwualityElement> for TwualityRepr {
    fn from(e: TwualityElement) -> Self {
        TwualityRepr {
            gvec: e.gvec,
            perm: e.perm,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_system::ElementSet;

    fn fv(text: &str) -> FlipVector {
        FlipVector::parse(text).unwrap()
    }

    #[test]
    fn flip_multiplication_examples() {
        assert_eq!(Flip::Twist.mul(Flip::Loop).order(), 3);
        for g in Flip::ALL {
            assert_eq!(g.mul(Flip::Identity), g);
            assert_eq!(Flip::Identity.mul(g), g);
            assert_eq!(g.mul(g.inverse()), Flip::Identity);
            assert_eq!(g.pow(g.order()), Flip::Identity);
            assert!((1..g.order()).all(|k| g.pow(k) != Flip::Identity));
        }
        assert_eq!(Flip::Twist.mul(Flip::Loop.mul(Flip::Twist)), Flip::DualTwist);
        assert_eq!(Flip::Loop.mul(Flip::Twist.mul(Flip::Loop)), Flip::DualTwist);
    }

    #[test]
    fn orders_match_reduced_words() {
        let orders: Vec<usize> = Flip::ALL.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 3, 2]);
        for g in Flip::ALL {
            let word: String = g.word().iter().map(|l| l.token()).collect();
            assert_eq!(reduce_word(&word).unwrap(), g);
        }
    }

    #[test]
    fn reduce_word_examples() {
        assert_eq!(reduce_word("**").unwrap(), Flip::Identity);
        assert_eq!(reduce_word("+*+").unwrap(), Flip::DualTwist);
        assert_eq!(reduce_word("*+*+*+").unwrap(), Flip::Identity);
        assert_eq!(reduce_word("").unwrap(), Flip::Identity);
        assert!(reduce_word("*x").is_err());
    }

    #[test]
    fn word_application_matches_reduced_flip() {
        let d = SetSystem::from_lists(3, &[&[3], &[1, 3], &[2, 3], &[1, 2]]).unwrap();
        for word in ["", "*", "+", "*+", "+*", "+*+", "*+*", "**+", "+*+*"] {
            let g = reduce_word(word).unwrap();
            for i in 1..=3 {
                let mut by_letters = d.clone();
                for c in word.chars().rev() {
                    let letter = if c == '*' { Flip::Twist } else { Flip::Loop };
                    by_letters = by_letters.apply_flip(letter, i).unwrap();
                }
                assert_eq!(by_letters, d.apply_flip(g, i).unwrap(), "word {word:?} at {i}");
            }
        }
    }

    #[test]
    fn flips_form_s3() {
        // closed, associative, with the generators mapped to distinct transpositions
        for a in Flip::ALL {
            for b in Flip::ALL {
                for c in Flip::ALL {
                    assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
                }
            }
        }
        let t = Flip::Twist.symbol_perm();
        let l = Flip::Loop.symbol_perm();
        assert_ne!(t, l);
        for p in [t, l] {
            assert_eq!(p.iter().enumerate().filter(|(k, &v)| *k as u8 != v).count(), 2);
        }
    }

    #[test]
    fn perm_parsing_and_cycles() {
        let p = Perm::parse("(1 2 3)", None).unwrap();
        assert_eq!(p.one_line(), vec![2, 3, 1]);
        assert_eq!(Perm::parse("[2,3,1]", None).unwrap(), p);
        assert_eq!(Perm::parse("(1 2)", Some(3)).unwrap().one_line(), vec![2, 1, 3]);
        assert_eq!(Perm::parse("(1 2)(3)", None).unwrap().to_string(), "[2,1,3]");
        assert_eq!(p.cycles(), vec![vec![1, 2, 3]]);
        assert_eq!(Perm::parse("[3,2,1]", None).unwrap().cycle_notation(), "(1 3)(2)");
        assert!(Perm::parse("[1,1]", None).is_err());
        assert!(Perm::parse("(1 2)(2 3)", None).is_err());
        assert!(Perm::parse("[2,1]", Some(3)).is_err());
        assert_eq!(Perm::all(3).count(), 6);
        let lex: Vec<_> = Perm::all(3).map(|p| p.one_line()).collect();
        let mut sorted = lex.clone();
        sorted.sort();
        assert_eq!(lex, sorted);
    }

    #[test]
    fn reindex_examples() {
        let g = fv("*,+,~");
        let p = Perm::parse("(1 2 3)", None).unwrap();
        assert_eq!(g.reindex(&Perm::identity(3)).unwrap(), g);
        assert_eq!(g.reindex(&p).unwrap(), fv("~,*,+"));
        assert_eq!(g.reindex(&p).unwrap().reindex(&p.inverse()).unwrap(), g);
        assert!(g.reindex(&Perm::identity(2)).is_err());
    }

    #[test]
    fn semidirect_inverse_and_identity() {
        let x = TwualityElement::new(fv("*,+*,~"), Perm::parse("(1 3)", Some(3)).unwrap()).unwrap();
        assert!(x.mul(&x.inverse()).unwrap().is_identity());
        assert!(x.inverse().mul(&x).unwrap().is_identity());
        let a = TwualityElement::flips(fv("*,+,~"));
        let b = TwualityElement::flips(fv("+,+,*"));
        assert_eq!(
            a.mul(&b).unwrap(),
            TwualityElement::flips(a.gvec().compose(b.gvec()).unwrap())
        );
        assert!(a.mul(&TwualityElement::identity(2)).is_err());
    }

    #[test]
    fn action_examples() {
        let d = SetSystem::from_lists(3, &[&[3], &[1, 3], &[2, 3]]).unwrap();
        let stab = TwualityElement::flips(fv("*,+,+"));
        assert_eq!(stab.act(&d).unwrap(), d);
        assert_eq!(TwualityElement::identity(3).act(&d).unwrap(), d);

        let d = SetSystem::from_lists(2, &[&[], &[1], &[1, 2]]).unwrap();
        let swap = TwualityElement::relabelling(Perm::parse("(1 2)", None).unwrap());
        assert_eq!(
            swap.act(&d).unwrap(),
            SetSystem::from_lists(2, &[&[], &[2], &[1, 2]]).unwrap()
        );
        assert_eq!(
            swap.act(&d).unwrap(),
            d.twist(ElementSet::full(2)).unwrap()
        );
    }

    #[test]
    fn json_forms() {
        let x = TwualityElement::new(fv("*,+,~"), Perm::parse("(1 2)", Some(3)).unwrap()).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"gvec":["*","+","~"],"perm":[2,1,3]}"#);
        assert_eq!(serde_json::from_str::<TwualityElement>(&text).unwrap(), x);
        assert!(serde_json::from_str::<TwualityElement>(r#"{"gvec":["*"],"perm":[2,1]}"#).is_err());
        assert!(serde_json::from_str::<Flip>(r#""x""#).is_err());
    }
}
