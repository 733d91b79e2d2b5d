//! Counts sortable permutations and basis elements length by length.
//!
//! ```bash
//! cargo run --release --example basis_sweep -- 9 3
//! ```
//!
//! Arguments: maximum length (default 8) and depth (default 3).

use std::time::Instant;

use stacksort::basis::{run_length_sweep, SweepOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let n_max: usize = args.next().map_or(8, |a| a.parse().expect("length"));
    let depth: usize = args.next().map_or(3, |a| a.parse().expect("depth"));

    let start = Instant::now();
    let opts = SweepOptions {
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        allow_long: false,
    };
    let report = run_length_sweep(n_max, depth, None, opts).expect("sweep");

    println!("# n sortable basis (depth {depth})");
    for row in &report.rows {
        println!("{} {} {}", row.n, row.sortable, row.basis);
    }
    let total: u64 = report.rows.iter().map(|r| r.basis).sum();
    println!("# {total} basis elements up to length {n_max}");

    if let Some(shortest) = report.basis.first() {
        println!("# shortest basis elements:");
        for rec in report
            .basis
            .iter()
            .take_while(|r| r.length == shortest.length)
        {
            println!("#   {}", rec.perm);
        }
    }
    eprintln!("elapsed {:.2?}", start.elapsed());
}
