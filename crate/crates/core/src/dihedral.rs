//! The order 12 dihedral group as the symmetry group of K(2,3).
//!
//! An element is a sign (whether the two poles are swapped) together with a
//! permutation of the three points `q0, q1, q2`, written `±(cycle)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{GeneratorSymbol, RhoAxis, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DihError {
    #[error("malformed sign in `{0}`; expected `+` or `-`")]
    MalformedSign(String),
    #[error("invalid digit `{digit}` in `{text}`; points are 0, 1, 2")]
    InvalidDigit { text: String, digit: char },
    #[error("`{0}` is not a cycle (repeated point)")]
    NotACycle(String),
    #[error("malformed element `{0}`; expected `±(cycle)`")]
    Malformed(String),
    #[error("symbol `{0}` has no dihedral image")]
    NonDihedralSymbol(String),
}

/// `±(cycle)`. Ordered by sign (`+` first) then one-line notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihElement {
    swaps_poles: bool,
    perm: [u8; 3],
}

impl DihElement {
    pub const IDENTITY: DihElement = DihElement { swaps_poles: false, perm: [0, 1, 2] };

    /// `perm[i]` is the image of `q_i`.
    pub fn new(swaps_poles: bool, perm: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p as usize] {
                return None;
            }
            seen[p as usize] = true;
        }
        Some(DihElement { swaps_poles, perm })
    }

    pub fn swaps_poles(&self) -> bool {
        self.swaps_poles
    }

    pub fn perm(&self) -> [u8; 3] {
        self.perm
    }

    pub fn apply(&self, point: u8) -> u8 {
        self.perm[point as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DihElement) -> DihElement {
        DihElement {
            swaps_poles: self.swaps_poles ^ other.swaps_poles,
            perm: [
                self.perm[other.perm[0] as usize],
                self.perm[other.perm[1] as usize],
                self.perm[other.perm[2] as usize],
            ],
        }
    }

    pub fn inverse(&self) -> DihElement {
        let mut perm = [0u8; 3];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u8;
        }
        DihElement { swaps_poles: self.swaps_poles, perm }
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut n = 1;
        while x != DihElement::IDENTITY {
            x = x.compose(self);
            n += 1;
        }
        n
    }

    /// Image of a π-rotation: `ρ_e` swaps the poles only, `ρ_i` transposes
    /// the two points other than `q_i`.
    pub fn of_rho(axis: RhoAxis) -> DihElement {
        let perm = match axis {
            RhoAxis::E => return DihElement { swaps_poles: true, perm: [0, 1, 2] },
            RhoAxis::Q0 => [0, 2, 1],
            RhoAxis::Q1 => [2, 1, 0],
            RhoAxis::Q2 => [1, 0, 2],
        };
        DihElement { swaps_poles: false, perm }
    }

    /// All twelve elements in canonical order.
    pub fn all() -> Vec<DihElement> {
        const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        [false, true]
            .into_iter()
            .flat_map(|s| PERMS.into_iter().map(move |perm| DihElement { swaps_poles: s, perm }))
            .collect()
    }

    pub fn parse(text: &str) -> Result<DihElement, DihError> {
        let t = text.trim();
        let swaps_poles = match t.chars().next() {
            Some('+') => false,
            Some('-') | Some('−') => true,
            _ => return Err(DihError::MalformedSign(text.to_string())),
        };
        let rest = t[t.chars().next().unwrap().len_utf8()..].trim_start();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| DihError::Malformed(text.to_string()))?;
        let mut cycle = Vec::new();
        for c in inner.chars() {
            if c.is_whitespace() || c == ',' {
                continue;
            }
            match c {
                '0'..='2' => {
                    let d = c as u8 - b'0';
                    if cycle.contains(&d) {
                        return Err(DihError::NotACycle(text.to_string()));
                    }
                    cycle.push(d);
                }
                _ => return Err(DihError::InvalidDigit { text: text.to_string(), digit: c }),
            }
        }
        let mut perm = [0u8, 1, 2];
        if cycle.len() > 1 {
            for k in 0..cycle.len() {
                perm[cycle[k] as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(DihElement { swaps_poles, perm })
    }

    /// Evaluates a word over `re, r0, r1, r2`.
    pub fn of_word(word: &Word) -> Result<DihElement, DihError> {
        let mut acc = DihElement::IDENTITY;
        for letter in word.letters() {
            let x = match &letter.symbol {
                GeneratorSymbol::DihRho(axis) => DihElement::of_rho(*axis),
                other => return Err(DihError::NonDihedralSymbol(other.to_string())),
            };
            // each ρ is an involution, so the exponent is irrelevant
            acc = acc.compose(&x);
        }
        Ok(acc)
    }
}

impl Default for DihElement {
    fn default() -> Self {
        DihElement::IDENTITY
    }
}

impl fmt::Display for DihElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.swaps_poles { "-(" } else { "+(" })?;
        // S3 elements are single cycles; start from the smallest moved point
        if let Some(start) = (0u8..3).find(|&i| self.perm[i as usize] != i) {
            let mut p = start;
            loop {
                write!(f, "{p}")?;
                p = self.perm[p as usize];
                if p == start {
                    break;
                }
            }
        }
        f.write_str(")")
    }
}

impl FromStr for DihElement {
    type Err = DihError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DihElement::parse(s)
    }
}

/// Product of a list, left to right as written (rightmost applied first).
pub fn product<'a>(elements: impl IntoIterator<Item = &'a DihElement>) -> DihElement {
    elements.into_iter().fold(DihElement::IDENTITY, |acc, x| acc.compose(x))
}

/// Subgroup generated by `gens`, sorted canonically.
pub fn closure(gens: &[DihElement]) -> Vec<DihElement> {
    let mut seen = BTreeSet::from([DihElement::IDENTITY]);
    let mut queue = VecDeque::from([DihElement::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Intersection numbers of the labeled meridians: entry `[i][j]` counts
/// points of `a_i ∩ b_j`. Each `a_i` is disjoint from `b_i` and meets the
/// other two once.
pub const MERIDIAN_INCIDENCE: [[u8; 3]; 3] = [[0, 1, 1], [1, 0, 1], [1, 1, 0]];

/// Whether `(a_i, b_j)` is an orthogonal pair (meets in a single point).
pub fn is_orthogonal_pair(i: usize, j: usize) -> bool {
    MERIDIAN_INCIDENCE[i][j] == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DihElement {
        DihElement::parse(s).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(product(&[d("+(02)"), d("-(12)"), d("+(02)")]), d("-(01)"));
        assert_eq!(product(&[d("-(12)"), d("+(02)"), d("-(1,2)")]), d("+(01)"));
        assert_eq!(d("-()").compose(&d("+(12)")), d("-(12)"));
    }

    #[test]
    fn rho_images() {
        assert_eq!(DihElement::of_rho(RhoAxis::E), d("-()"));
        assert_eq!(DihElement::of_rho(RhoAxis::Q0), d("+(12)"));
        assert_eq!(DihElement::of_rho(RhoAxis::Q1), d("+(02)"));
        assert_eq!(DihElement::of_rho(RhoAxis::Q2), d("+(01)"));
        let w = Word::parse("r0 r2").unwrap();
        assert_eq!(DihElement::of_word(&w).unwrap(), d("+(021)"));
        let w = Word::parse("re r0").unwrap();
        assert_eq!(DihElement::of_word(&w).unwrap(), d("-(12)"));
    }

    #[test]
    fn mixed_words_rejected() {
        let w = Word::parse("r0 x1").unwrap();
        assert!(matches!(DihElement::of_word(&w), Err(DihError::NonDihedralSymbol(_))));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&[d("-(12)"), d("+(02)")]).len(), 12);
        assert_eq!(closure(&[]), vec![DihElement::IDENTITY]);
        assert_eq!(closure(&[d("+(012)")]), vec![d("+()"), d("+(012)"), d("+(021)")]);
        // vertex stabilizer of q0
        let klein = closure(&[d("-()"), d("+(12)")]);
        assert_eq!(klein, vec![d("+()"), d("+(12)"), d("-()"), d("-(12)")]);
    }

    #[test]
    fn parse_and_print() {
        let x = d("+(021)");
        assert_eq!(x.perm(), [2, 0, 1]);
        assert_eq!(x.to_string(), "+(021)");
        assert_eq!(d("+(210)").to_string(), "+(021)");
        assert_eq!(d("-()").to_string(), "-()");
        assert_eq!(d("−( )"), d("-()"));
        assert_eq!(d("+(2)"), DihElement::IDENTITY);
        assert!(matches!(DihElement::parse("+(3)"), Err(DihError::InvalidDigit { digit: '3', .. })));
        assert!(matches!(DihElement::parse("*(12)"), Err(DihError::MalformedSign(_))));
        assert!(matches!(DihElement::parse("+(121)"), Err(DihError::NotACycle(_))));
        assert!(matches!(DihElement::parse("+12"), Err(DihError::Malformed(_))));
        for x in DihElement::all() {
            assert_eq!(d(&x.to_string()), x);
        }
    }

    #[test]
    fn group_facts() {
        let all = DihElement::all();
        assert_eq!(all.len(), 12);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for x in &all {
            assert_eq!(6 % x.order(), 0);
            assert_eq!(x.compose(&x.inverse()), DihElement::IDENTITY);
        }
    }

    #[test]
    fn incidence_table() {
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(is_orthogonal_pair(i, j), i != j);
            }
        }
    }
}
