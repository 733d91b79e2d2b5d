//! Checks the five structural laws on their defining patterns and then
//! laws 1 and 2 over every sortable permutation of a given length.
//!
//! ```bash
//! cargo run --release --example lemma_checks -- 6
//! ```

use stacksort::laws::{check_law_all_embeddings, Law, DEFAULT_TRACE_BUDGET};
use stacksort::machine::decide_sortable;
use stacksort::perm::Permutation;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(6, |a| a.parse().expect("length"));
    let depth = 3;

    let instances = [
        (Law::LOrder, "243651"),
        (Law::No132InR, "243651"),
        (Law::Pair45InR, "243651"),
        (Law::ZigZag32514, "32514"),
        (Law::ZigZag32541, "32541"),
    ];
    for (law, text) in instances {
        let p: Permutation = text.parse().expect("literal");
        for r in check_law_all_embeddings(law, &p, depth, DEFAULT_TRACE_BUDGET).expect("check") {
            println!(
                "{law} on {p}: holds={} over {} traces",
                r.holds(),
                r.traces_checked
            );
        }
    }

    let mut level = vec![Permutation::identity(1)];
    for _ in 1..n {
        level = level
            .iter()
            .flat_map(|p| p.one_point_extensions())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
    }
    for law in [Law::LOrder, Law::No132InR] {
        let mut checks = 0;
        let mut failures = 0;
        for p in level.iter().filter(|p| decide_sortable(p, depth)) {
            for r in check_law_all_embeddings(law, p, depth, DEFAULT_TRACE_BUDGET).expect("check") {
                checks += 1;
                if !r.holds() {
                    failures += 1;
                    println!("{law} fails on {p}: {:?}", r.verdict);
                }
            }
        }
        println!("{law}, length {n}: {checks} checks, {failures} failures");
    }
}
