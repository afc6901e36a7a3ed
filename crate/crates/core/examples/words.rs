//! Parsing, printing, reducing and inverting generator words.
use powell_calc::Word;

fn main() {
    for text in ["x1 x2 x2^-1 x1^-1 w", "t(a1+a2,b3)^2 e^-1", "w1 x2^3 r0 re"] {
        match Word::parse(text) {
            Ok(w) => println!(
                "{text:<24} -> {w}  | reduced {}  | inverse {}",
                w.reduce(),
                w.invert()
            ),
            Err(e) => println!("{text:<24} -> error: {e}"),
        }
    }
    let chain = Word::exchange_chain(5);
    println!("chain at genus 5: {chain}; squared and reduced has {} letters", chain.pow(2).reduce().len());
    if let Err(e) = Word::parse("x1 y2") {
        println!("x1 y2 -> {e}");
    }
}
