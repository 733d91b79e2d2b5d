//! Sorts every one-point deletion of a family member with the explicit
//! case-by-case procedure and compares the result with the decider.
//!
//! ```bash
//! cargo run --release --example constructive_sorting -- 1
//! ```

use stacksort::antichain::{constructive_sort_deletion, generate_gi, locate};
use stacksort::machine::{decide_sortable, validate_trace};

fn main() {
    let i: usize = std::env::args()
        .nth(1)
        .map_or(1, |a| a.parse().expect("index"));
    let g = generate_gi(i);
    println!("G_{i} = {g}\n");
    for pos in 1..=g.len() {
        let reduced = g.delete_at(pos).expect("position in range");
        let (block, role) = locate(i, pos).expect("position in range");
        match constructive_sort_deletion(i, pos) {
            Ok(trace) => {
                let ok = validate_trace(&reduced, 3, &trace) && decide_sortable(&reduced, 3);
                println!("{pos:2} {block:?}/{role:<2} ok={ok} {} moves", trace.len());
            }
            Err(e) => println!("{pos:2} {block:?}/{role:<2} {e}"),
        }
    }
}
