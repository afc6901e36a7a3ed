//! Permutation and framed-permutation images of words on the bubble slots.
//!
//! Framings are measured in full turns (`1` is a rotation by 2π) and are
//! attached to bubbles, not to slots: they travel with the bubble when it
//! moves. The framed model is bookkeeping for how a word spins each bubble;
//! it is not a faithful representation (two flips and the central rotation
//! look alike here).
//!
//! Per-generator framings, at genus `g`:
//!
//! | symbol | slots | framing |
//! |--------|-------|---------|
//! | `w{i}` | fixed | `+1/2` on the bubble in slot `i` |
//! | `x{i}` | swap `i`, `i+1` | `-1/g` on the bubble moving `i+1 → i`, `+1/g` on its partner |
//! | `e`    | `i → i+1 mod g` | `+1/g` on every bubble |
//! | `t(..)`| fixed | none |

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::EvalError;
use crate::words::{Exp, GeneratorSymbol, Word};

/// A permutation of the slots `1..=g`, stored 0-based: `images[s]` is where
/// the bubble in slot `s` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlotPermutation {
    images: Vec<usize>,
}

impl SlotPermutation {
    pub fn identity(g: usize) -> Self {
        SlotPermutation { images: (0..g).collect() }
    }

    /// From 1-based images, e.g. `[2, 3, 4, 1]` for the cycle `(1 2 3 4)`.
    pub fn from_images(one_based: &[usize]) -> Option<Self> {
        let g = one_based.len();
        let mut seen = vec![false; g];
        let mut images = Vec::with_capacity(g);
        for &i in one_based {
            if i == 0 || i > g || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
            images.push(i - 1);
        }
        Some(SlotPermutation { images })
    }

    /// The cycle `(1 2 … g)`.
    pub fn rotation(g: usize) -> Self {
        SlotPermutation { images: (0..g).map(|s| (s + 1) % g).collect() }
    }

    /// The transposition of slots `i` and `i+1` (1-based).
    pub fn adjacent_swap(g: usize, i: usize) -> Self {
        let mut p = Self::identity(g);
        p.images.swap(i - 1, i);
        p
    }

    pub fn genus(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based slot.
    pub fn apply(&self, slot: usize) -> usize {
        self.images[slot - 1] + 1
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &SlotPermutation) -> SlotPermutation {
        SlotPermutation { images: other.images.iter().map(|&s| self.images[s]).collect() }
    }

    pub fn inverse(&self) -> SlotPermutation {
        let mut images = vec![0; self.images.len()];
        for (s, &t) in self.images.iter().enumerate() {
            images[t] = s;
        }
        SlotPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(s, &t)| s == t)
    }

    /// Disjoint cycles of length > 1, 1-based, each starting at its
    /// smallest slot.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cycle.push(s + 1);
                s = self.images[s];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for SlotPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|s| s.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A slot permutation plus the framing each bubble picked up, indexed by the
/// slot the bubble started in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FramedPermutation {
    perm: SlotPermutation,
    framing: Vec<Rational64>,
}

impl FramedPermutation {
    pub fn identity(g: usize) -> Self {
        FramedPermutation { perm: SlotPermutation::identity(g), framing: vec![Rational64::zero(); g] }
    }

    pub fn new(perm: SlotPermutation, framing: Vec<Rational64>) -> Self {
        assert_eq!(perm.genus(), framing.len());
        FramedPermutation { perm, framing }
    }

    pub fn genus(&self) -> usize {
        self.perm.genus()
    }

    pub fn perm(&self) -> &SlotPermutation {
        &self.perm
    }

    /// Framing of the bubble that started in 1-based `slot`.
    pub fn framing_of(&self, slot: usize) -> Rational64 {
        self.framing[slot - 1]
    }

    pub fn framings(&self) -> &[Rational64] {
        &self.framing
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &FramedPermutation) -> FramedPermutation {
        let framing = (0..self.framing.len())
            .map(|s| other.framing[s] + self.framing[other.perm.images[s]])
            .collect();
        FramedPermutation { perm: self.perm.compose(&other.perm), framing }
    }

    pub fn inverse(&self) -> FramedPermutation {
        let perm = self.perm.inverse();
        let framing = perm.images.iter().map(|&s| -self.framing[s]).collect();
        FramedPermutation { perm, framing }
    }

    /// Image of a single positive generator.
    pub fn of_symbol(g: usize, symbol: &GeneratorSymbol) -> Result<FramedPermutation, EvalError> {
        if g < 2 {
            return Err(EvalError::GenusTooSmall { genus: g, min: 2 });
        }
        symbol.check_at_genus(g)?;
        let gg = g as i64;
        let mut out = FramedPermutation::identity(g);
        match symbol {
            GeneratorSymbol::Flip(slot) => {
                out.framing[slot.unwrap_or(1) - 1] = Rational64::new(1, 2);
            }
            GeneratorSymbol::Exchange(i) => {
                out.perm = SlotPermutation::adjacent_swap(g, *i);
                out.framing[*i - 1] = Rational64::new(1, gg);
                out.framing[*i] = Rational64::new(-1, gg);
            }
            GeneratorSymbol::Rotation => {
                out.perm = SlotPermutation::rotation(g);
                out.framing = vec![Rational64::new(1, gg); g];
            }
            GeneratorSymbol::Eyeglass(..) => {}
            GeneratorSymbol::DihRho(_) => unreachable!("rejected by check_at_genus"),
        }
        Ok(out)
    }
}

impl fmt::Display for FramedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.framing.iter().map(|r| r.to_string()).collect();
        write!(f, "{} [{}]", self.perm, parts.join(", "))
    }
}

pub fn perm_of_word(g: usize, word: &Word) -> Result<SlotPermutation, EvalError> {
    Ok(framed_of_word(g, word)?.perm)
}

pub fn framed_of_word(g: usize, word: &Word) -> Result<FramedPermutation, EvalError> {
    if g < 2 {
        return Err(EvalError::GenusTooSmall { genus: g, min: 2 });
    }
    let mut acc = FramedPermutation::identity(g);
    for letter in word.letters() {
        let x = FramedPermutation::of_symbol(g, &letter.symbol)?;
        let x = match letter.exp {
            Exp::Pos => x,
            Exp::Neg => x.inverse(),
        };
        acc = acc.compose(&x);
    }
    Ok(acc)
}

/// Outcome of comparing `e` against `w w x1 … x{g−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewgenReport {
    pub genus: usize,
    pub rotation: FramedPermutation,
    pub composite: FramedPermutation,
    pub perm_match: bool,
    pub framed_match: bool,
}

impl NewgenReport {
    pub fn passed(&self) -> bool {
        self.perm_match && self.framed_match
    }
}

/// Checks that the rotation agrees with two flips followed by the chain of
/// exchanges, on slots and on framings.
pub fn verify_newgen(g: usize) -> Result<NewgenReport, EvalError> {
    let rotation = framed_of_word(g, &Word::parse("e").expect("static word"))?;
    let composite_word = Word::parse("w w").expect("static word").concat(&Word::exchange_chain(g));
    let composite = framed_of_word(g, &composite_word)?;
    let chain = perm_of_word(g, &Word::exchange_chain(g))?;
    Ok(NewgenReport {
        genus: g,
        perm_match: chain == rotation.perm && composite.perm == rotation.perm,
        framed_match: composite == rotation,
        rotation,
        composite,
    })
}

/// `e^g`: every bubble returns to its slot having made one full turn.
pub fn central_framing(g: usize) -> Result<FramedPermutation, EvalError> {
    framed_of_word(g, &Word::parse("e").expect("static word").pow(g as i64))
}

/// Whether `x` is the identity permutation with every framing one full turn.
pub fn is_full_turn(x: &FramedPermutation) -> bool {
    x.perm.is_identity() && x.framing.iter().all(|r| r.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn perm_examples() {
        let cycle = SlotPermutation::from_images(&[2, 3, 4, 1]).unwrap();
        assert_eq!(perm_of_word(4, &w("e")).unwrap(), cycle);
        assert_eq!(perm_of_word(4, &w("x1 x2 x3")).unwrap(), cycle);
        assert_eq!(cycle.to_string(), "(1 2 3 4)");
        for g in 2..6 {
            assert!(perm_of_word(g, &w("w")).unwrap().is_identity());
        }
    }

    #[test]
    fn framed_examples() {
        let x = framed_of_word(4, &w("x1 x2 x3")).unwrap();
        assert_eq!(x.perm().apply(4), 1);
        assert_eq!(x.framing_of(4), r(-3, 4));
        let e = framed_of_word(4, &w("e")).unwrap();
        assert!(e.framings().iter().all(|&f| f == r(1, 4)));
        for g in 2..6 {
            let ww = framed_of_word(g, &w("w w")).unwrap();
            assert!(ww.perm().is_identity());
            assert_eq!(ww.framing_of(1), r(1, 1));
        }
    }

    #[test]
    fn newgen() {
        for g in 2..=10 {
            let rep = verify_newgen(g).unwrap();
            assert!(rep.passed(), "g={g}: {} vs {}", rep.rotation, rep.composite);
        }
        let rep = verify_newgen(4).unwrap();
        assert_eq!(rep.composite.framings(), &[r(1, 4); 4]);
    }

    #[test]
    fn central() {
        for g in 2..8 {
            assert!(is_full_turn(&central_framing(g).unwrap()));
        }
        assert_eq!(framed_of_word(3, &w("e e e w^-1 w")).unwrap(), central_framing(3).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(perm_of_word(3, &w("x3")), Err(EvalError::IndexOutOfRange { index: 3, .. })));
        assert!(matches!(perm_of_word(3, &w("w4")), Err(EvalError::IndexOutOfRange { index: 4, .. })));
        assert!(matches!(perm_of_word(3, &w("t(a1,b4)")), Err(EvalError::IndexOutOfRange { .. })));
        assert!(matches!(perm_of_word(3, &w("r0")), Err(EvalError::DihedralSymbol(_))));
        assert!(matches!(perm_of_word(1, &w("")), Err(EvalError::GenusTooSmall { .. })));
    }

    #[test]
    fn display() {
        let x = framed_of_word(4, &w("x1 x2 x3")).unwrap();
        assert_eq!(x.to_string(), "(1 2 3 4) [1/4, 1/4, 1/4, -3/4]");
        assert_eq!(FramedPermutation::identity(2).to_string(), "() [0, 0]");
    }
}
