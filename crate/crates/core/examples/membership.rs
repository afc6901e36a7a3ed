//! Orders of the mod-p Powell image, and membership of exchanges, flips and
//! eyeglass twists in it.
//!
//! ```bash
//! cargo run -p powell-calc --example membership
//! ```

use std::time::Instant;

use powell_calc::modp::{full_group, powell_subgroup, reduce_mod_p, symplectic_group_order};
use powell_calc::symplectic::{exchange_matrix, flip_matrix};

fn main() {
    for (g, p) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)] {
        let start = Instant::now();
        let chain = powell_subgroup(g, p).expect("valid genus and prime");
        let built = start.elapsed();
        let mut all_in = true;
        for i in 1..=g {
            let flip = reduce_mod_p(&flip_matrix(g, i).unwrap(), p).unwrap();
            all_in &= chain.contains(&flip).unwrap();
            for j in i + 1..=g {
                let x = reduce_mod_p(&exchange_matrix(g, i, j).unwrap(), p).unwrap();
                all_in &= chain.contains(&x).unwrap();
            }
        }
        println!(
            "g={g} p={p}: |Powell image| = {} (|Sp| = {}), orbits {:?}, flips+exchanges inside: {all_in}, built in {:?}",
            chain.order(),
            symplectic_group_order(g, p),
            chain.orbit_sizes(),
            built
        );
    }
    let start = Instant::now();
    let full = full_group(3, 3).unwrap();
    println!("full Sp(6,3) order {} in {:?}", full.order(), start.elapsed());
}
