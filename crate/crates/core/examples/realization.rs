//! Searches the small convention space for a composition of eyeglass
//! twists, a flip and a bubble move equal to the exchange of two bubbles.
use powell_calc::realization::{compose_moves, exchange_realization_search, frozen_convention};

fn main() {
    let report = exchange_realization_search();
    println!("{} candidates, {} matches", report.candidates_tried, report.matches);
    match &report.found {
        Some((conv, product)) => {
            println!("first match: {conv}\n{product}");
            println!("squares to identity: {:?}", report.squares_to_identity());
            println!("frozen convention reproduces it: {}", compose_moves(&frozen_convention()) == *product);
        }
        None => println!("no convention realizes the exchange"),
    }
}
