//! Bounded search for a homology-level realization of the exchange between
//! a standard bubble and a generic bubble.
//!
//! Local model: genus two, block 1 is the standard bubble `(a_s, b_s)` and
//! block 2 the generic bubble `(x, y)`. The move list, applied in order, is
//! `τ1`, `τ2`, the standard flip, `τ1⁻¹`, then a move of the standard bubble
//! around `x`. The unknowns are the lens pair and direction of each of the two
//! eyeglasses and the sign of the final bubble move, which is modeled as
//! `T_x^ε T_x^{-ε}` and therefore has no homology action.

use std::fmt;

use crate::symplectic::{eyeglass_map, exchange_matrix, flip_matrix, transvection_pow, EyeglassSpec, HomologyClass, SymplecticMatrix};

/// Basis classes of the local model, in search order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalClass {
    As,
    Bs,
    X,
    Y,
}

impl LocalClass {
    pub fn class(self) -> HomologyClass {
        match self {
            LocalClass::As => HomologyClass::a(2, 1),
            LocalClass::Bs => HomologyClass::b(2, 1),
            LocalClass::X => HomologyClass::a(2, 2),
            LocalClass::Y => HomologyClass::b(2, 2),
        }
    }
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalClass::As => "a_s",
            LocalClass::Bs => "b_s",
            LocalClass::X => "x",
            LocalClass::Y => "y",
        })
    }
}

/// Lens pairs with zero pairing, one lens from each bubble.
pub const LENS_PAIRS: [(LocalClass, LocalClass); 4] = [
    (LocalClass::As, LocalClass::X),
    (LocalClass::As, LocalClass::Y),
    (LocalClass::Bs, LocalClass::X),
    (LocalClass::Bs, LocalClass::Y),
];

const SIGNS: [i8; 2] = [1, -1];

/// How the final product relates to the block swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlipCorrection {
    None,
    /// `F · X`
    FlipAfter,
    /// `X · F`
    FlipBefore,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convention {
    pub eta1: (LocalClass, LocalClass),
    pub dir1: i8,
    pub eta2: (LocalClass, LocalClass),
    pub dir2: i8,
    pub epsilon: i8,
    pub correction: FlipCorrection,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "eta1=({},{}) dir {:+}, eta2=({},{}) dir {:+}, bubble move eps {:+}, correction {:?}",
            self.eta1.0, self.eta1.1, self.dir1, self.eta2.0, self.eta2.1, self.dir2, self.epsilon, self.correction
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    pub candidates_tried: usize,
    pub matches: usize,
    pub found: Option<(Convention, SymplecticMatrix)>,
}

impl RealizationReport {
    /// Whether the found product squares to the identity on homology.
    pub fn squares_to_identity(&self) -> Option<bool> {
        self.found.as_ref().map(|(_, m)| m.pow(2).is_identity())
    }
}

fn twist(pair: (LocalClass, LocalClass), dir: i8) -> SymplecticMatrix {
    let spec = EyeglassSpec::new(pair.0.class(), pair.1.class(), dir).expect("lens pairs are orthogonal");
    eyeglass_map(&spec)
}

/// Product of the move list for one convention; moves listed first act first.
pub fn compose_moves(conv: &Convention) -> SymplecticMatrix {
    let tau1 = twist(conv.eta1, conv.dir1);
    let tau2 = twist(conv.eta2, conv.dir2);
    let flip = flip_matrix(2, 1).expect("genus two");
    let x = LocalClass::X.class();
    let bubble = &transvection_pow(&x, i64::from(conv.epsilon)) * &transvection_pow(&x, -i64::from(conv.epsilon));
    let moves = [tau1.clone(), tau2, flip, tau1.inverse(), bubble];
    moves.iter().fold(SymplecticMatrix::identity(2), |acc, m| m * &acc)
}

/// The three targets: the block swap, and the swap corrected by one flip.
pub fn targets() -> [(FlipCorrection, SymplecticMatrix); 3] {
    let x = exchange_matrix(2, 1, 2).expect("genus two");
    let f = flip_matrix(2, 1).expect("genus two");
    [(FlipCorrection::None, x.clone()), (FlipCorrection::FlipAfter, &f * &x), (FlipCorrection::FlipBefore, &x * &f)]
}

/// Exhausts the convention space in lexicographic order and returns the first
/// match along with how many conventions matched in total.
pub fn exchange_realization_search() -> RealizationReport {
    search_moves(compose_moves)
}

pub(crate) fn search_moves(compose: impl Fn(&Convention) -> SymplecticMatrix) -> RealizationReport {
    let targets = targets();
    let mut tried = 0;
    let mut matches = 0;
    let mut found = None;
    for &eta1 in &LENS_PAIRS {
        for &dir1 in &SIGNS {
            for &eta2 in &LENS_PAIRS {
                for &dir2 in &SIGNS {
                    for &epsilon in &SIGNS {
                        let mut conv = Convention { eta1, dir1, eta2, dir2, epsilon, correction: FlipCorrection::None };
                        let product = compose(&conv);
                        tried += 1;
                        for (correction, target) in &targets {
                            if product == *target {
                                matches += 1;
                                if found.is_none() {
                                    conv.correction = *correction;
                                    found = Some((conv.clone(), product.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    RealizationReport { candidates_tried: tried, matches, found }
}

/// The convention found by the search, frozen.
pub fn frozen_convention() -> Convention {
    Convention {
        eta1: (LocalClass::As, LocalClass::Y),
        dir1: -1,
        eta2: (LocalClass::Bs, LocalClass::X),
        dir2: 1,
        epsilon: 1,
        correction: FlipCorrection::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_finds_frozen_convention() {
        let report = exchange_realization_search();
        assert_eq!(report.candidates_tried, 128);
        let (conv, product) = report.found.clone().expect("a convention exists");
        assert_eq!(conv, frozen_convention());
        assert_eq!(product, exchange_matrix(2, 1, 2).unwrap());
        assert_eq!(report.squares_to_identity(), Some(true));
        // both eps signs, and the symmetric relabeling of the two eyeglasses
        assert_eq!(report.matches, 4);
    }

    #[test]
    fn empty_move_list_has_no_match() {
        let report = search_moves(|_| SymplecticMatrix::identity(2));
        assert!(report.found.is_none());
        assert_eq!(report.matches, 0);
    }

    #[test]
    fn frozen_product_is_symplectic() {
        let m = compose_moves(&frozen_convention());
        assert!(m.is_symplectic());
        assert_eq!(m, exchange_matrix(2, 1, 2).unwrap());
    }
}
