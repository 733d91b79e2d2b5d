//! Lifts basis elements one depth up: depth 1 to 2, and the shortest
//! depth-3 basis elements to depth 4.
//!
//! ```bash
//! cargo run --release --example basis_lift
//! ```

use stacksort::antichain::lift_basis_element;
use stacksort::basis::{run_length_sweep, SweepOptions};
use stacksort::perm::Permutation;

fn main() {
    let seed: Permutation = "231".parse().expect("literal");
    let lifted = lift_basis_element(&seed, 1).expect("lift");
    println!("depth 1 -> 2: {seed} -> {lifted}");

    let report = run_length_sweep(6, 3, None, SweepOptions::default()).expect("sweep");
    for rec in &report.basis {
        match lift_basis_element(&rec.perm, 3) {
            Ok(l) if l == rec.perm => println!("depth 3 -> 4: {} stays", rec.perm),
            Ok(l) => println!("depth 3 -> 4: {} -> {l}", rec.perm),
            Err(e) => println!("depth 3 -> 4: {e}"),
        }
    }
}
