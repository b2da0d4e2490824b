//! The `--ops` grammar of `apply`.
//!
//! Operations run left to right, and so do the letters inside a flip word:
//! `*+{2}` twists element 2 and then loop-complements it. A flip token is a word
//! over `*`, `+` and `~` followed by one element or a braced set (`+3`,
//! `*{1,2}`, `~{}`). Relabellings use cycle notation `(1 2)(3 4)` or one-line
//! notation `[2,1,3]`. Tokens may be separated by whitespace or commas.

use twuality::{ElementSet, Flip, FlipVector, Perm, TwualityElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Flip { flip: Flip, elements: ElementSet },
    Relabel(Perm),
}

impl Op {
    pub fn element(&self, n: usize) -> TwualityElement {
        match self {
            Op::Flip { flip, elements } => {
                let entries = (1..=n)
                    .map(|i| if elements.contains(i) { *flip } else { Flip::Identity })
                    .collect();
                TwualityElement::flips(FlipVector::new(entries))
            }
            Op::Relabel(p) => TwualityElement::relabelling(p.clone()),
        }
    }
}

/// The single group element performing `ops` in order.
pub fn compose(ops: &[Op], n: usize) -> TwualityElement {
    ops.iter().fold(TwualityElement::identity(n), |acc, op| {
        op.element(n).mul(&acc).expect("sizes agree")
    })
}

pub fn parse_ops(text: &str, n: usize) -> Result<Vec<Op>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut ops = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() || c == ',' {
            k += 1;
        } else if c == '(' || c == '[' {
            let start = k;
            k = scan_perm(&chars, k)?;
            let token: String = chars[start..k].iter().collect();
            let p = Perm::parse(&token, Some(n)).map_err(|e| format!("in {token:?}: {e}"))?;
            ops.push(Op::Relabel(p));
        } else if is_letter(c) {
            let mut flip = Flip::Identity;
            while k < chars.len() && is_letter(chars[k]) {
                flip = letter(chars[k]).mul(flip);
                k += 1;
            }
            let (elements, next) = scan_elements(&chars, k, n)?;
            k = next;
            ops.push(Op::Flip { flip, elements });
        } else {
            return Err(format!("unexpected {c:?} at position {k} of {text:?}"));
        }
    }
    Ok(ops)
}

fn is_letter(c: char) -> bool {
    matches!(c, '*' | '∗' | '+' | '~')
}

fn letter(c: char) -> Flip {
    match c {
        '*' | '∗' => Flip::Twist,
        '+' => Flip::Loop,
        _ => Flip::DualTwist,
    }
}

/// End of a run of parenthesised cycles, or of one bracketed one-line list.
fn scan_perm(chars: &[char], mut k: usize) -> Result<usize, String> {
    if chars[k] == '[' {
        let close = chars[k..].iter().position(|&c| c == ']').ok_or("unterminated '['")?;
        return Ok(k + close + 1);
    }
    while k < chars.len() && chars[k] == '(' {
        let close = chars[k..].iter().position(|&c| c == ')').ok_or("unterminated '('")?;
        k += close + 1;
    }
    Ok(k)
}

fn scan_elements(chars: &[char], k: usize, n: usize) -> Result<(ElementSet, usize), String> {
    let (body, next) = match chars.get(k) {
        Some('{') => {
            let close = chars[k..].iter().position(|&c| c == '}').ok_or("unterminated '{'")?;
            (chars[k + 1..k + close].iter().collect::<String>(), k + close + 1)
        }
        Some(c) if c.is_ascii_digit() => {
            let len = chars[k..].iter().take_while(|c| c.is_ascii_digit()).count();
            (chars[k..k + len].iter().collect(), k + len)
        }
        _ => return Err(format!("flip at position {k} needs an element or a braced set")),
    };
    let mut set = ElementSet::EMPTY;
    for part in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let i: usize = part.parse().map_err(|_| format!("bad element {part:?}"))?;
        if i == 0 || i > n {
            return Err(format!("element {i} outside [{n}]"));
        }
        set = set.with(i);
    }
    Ok((set, next))
}
