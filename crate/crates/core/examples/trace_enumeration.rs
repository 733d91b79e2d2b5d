//! Lists every sorting process of a small permutation, unpruned, in
//! lexicographic order of moves.
//!
//! ```bash
//! cargo run --example trace_enumeration -- 3142 2
//! ```

use stacksort::machine::{decide_sortable, enumerate_sorting_traces, MachineError};
use stacksort::perm::Permutation;

fn main() {
    let mut args = std::env::args().skip(1);
    let perm: Permutation = args
        .next()
        .unwrap_or_else(|| "3142".into())
        .parse()
        .expect("permutation");
    let depth: usize = args.next().map_or(2, |a| a.parse().expect("depth"));
    let limit = 50;

    let mut count = 0;
    for trace in enumerate_sorting_traces(&perm, depth, Some(limit)) {
        match trace {
            Ok(t) => {
                count += 1;
                println!("{t}");
            }
            Err(MachineError::LimitExceeded { limit }) => {
                println!("... stopped after {limit} traces");
            }
            Err(e) => panic!("{e}"),
        }
    }
    println!(
        "# {count} traces shown; decider says sortable = {}",
        decide_sortable(&perm, depth)
    );
}
