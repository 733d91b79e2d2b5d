//! Decides sortability and replays the sorting process step by step.
//!
//! ```bash
//! cargo run --example decide_and_trace -- "2 4 3 6 5 1" 3
//! ```

use stacksort::machine::{decide_sortable, sort_witness, MachineConfig};
use stacksort::perm::Permutation;

fn main() {
    let mut args = std::env::args().skip(1);
    let perm: Permutation = args
        .next()
        .unwrap_or_else(|| "2 4 3 6 5 1".into())
        .parse()
        .expect("permutation");
    let depth: usize = args.next().map_or(3, |a| a.parse().expect("depth"));

    for t in 1..=depth {
        let verdict = if decide_sortable(&perm, t) {
            "sortable"
        } else {
            "unsortable"
        };
        println!("{perm} at depth {t}: {verdict}");
    }

    let Some(trace) = sort_witness(&perm, depth) else {
        return;
    };
    println!("\ntrace: {trace}\n");
    let mut config = MachineConfig::new(&perm, depth);
    println!("     {config}");
    for &m in trace.moves() {
        config.apply(m).expect("witness replays");
        println!("{m}    {config}");
    }
}
