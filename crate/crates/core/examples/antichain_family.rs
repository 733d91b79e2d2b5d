//! Builds the first few antichain members and checks that each is a basis
//! element and that no member contains another.
//!
//! ```bash
//! cargo run --release --example antichain_family -- 3
//! ```

use std::time::Instant;

use stacksort::antichain::{generate_git, membership_report};
use stacksort::perm::is_antichain;

fn main() {
    let max_index: usize = std::env::args()
        .nth(1)
        .map_or(2, |a| a.parse().expect("index"));

    for depth in [3, 4] {
        let members: Vec<_> = (0..=max_index).map(|i| generate_git(i, depth)).collect();
        for (i, g) in members.iter().enumerate() {
            let start = Instant::now();
            let r = membership_report(g, depth);
            println!(
                "depth {depth} i={i} len={:2} basis={} ({:.1?})  {g}",
                g.len(),
                r.is_basis_element(),
                start.elapsed()
            );
        }
        println!(
            "depth {depth}: pairwise incomparable = {}\n",
            is_antichain(&members)
        );
    }
}
