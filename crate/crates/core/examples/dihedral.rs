//! The twelve symmetries of the theta graph and the relations between
//! the meridian swaps.
use powell_calc::dihedral::{self, is_orthogonal_pair, DihElement};
use powell_calc::Word;

fn main() {
    let gens = [DihElement::parse("-(12)").unwrap(), DihElement::parse("+(02)").unwrap()];
    let all = dihedral::closure(&gens);
    println!("closure of {} and {}: {} elements", gens[0], gens[1], all.len());
    for x in &all {
        println!("  {:>8}  order {}", x.to_string(), x.order());
    }

    for text in ["+(02) -(12) +(02)", "-(12) +(02) -(12)"] {
        let factors: Vec<DihElement> = text.split(' ').map(|s| DihElement::parse(s).unwrap()).collect();
        println!("{text} = {}", dihedral::product(&factors));
    }

    let w = Word::parse("re r0").unwrap();
    println!("{w} = {}", DihElement::of_word(&w).unwrap());

    for i in 0..3 {
        let row: Vec<&str> = (0..3).map(|j| if is_orthogonal_pair(i, j) { "x" } else { "." }).collect();
        println!("meridian {i} meets {}", row.join(" "));
    }
}
