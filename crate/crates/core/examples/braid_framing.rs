//! Bubble permutations with framings: the rotation as two flips and a
//! chain of exchanges, and the full turn.
use powell_calc::braid::{central_framing, framed_of_word, perm_of_word, verify_newgen};
use powell_calc::Word;

fn main() {
    let g = 4;
    for text in ["x1 x2 x3", "e", "w w x1 x2 x3", "w", "x1 x1"] {
        let w = Word::parse(text).unwrap();
        println!("{text:>14}  perm {:<12} framed {}", perm_of_word(g, &w).unwrap().to_string(), framed_of_word(g, &w).unwrap());
    }
    for g in 2..=6 {
        let r = verify_newgen(g).unwrap();
        println!("genus {g}: e = w w x1…x{}: {}; e^{g} = {}", g - 1, r.passed(), central_framing(g).unwrap());
    }
}
