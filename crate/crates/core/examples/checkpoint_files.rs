//! Writes sweep checkpoints to a directory, reads one back, and resumes a
//! longer sweep from them.
//!
//! ```bash
//! cargo run --release --example checkpoint_files -- /tmp/stacksort-ckpt
//! ```

use std::path::PathBuf;

use stacksort::basis::{checkpoint_path, run_length_sweep, SweepCheckpoint, SweepOptions};

fn main() {
    let dir: PathBuf = std::env::args().nth(1).map_or_else(
        || std::env::temp_dir().join("stacksort-ckpt"),
        PathBuf::from,
    );
    let opts = SweepOptions::default();

    let first = run_length_sweep(7, 3, Some(&dir), opts).expect("sweep");
    println!(
        "first run: resumed_from={:?}, rows={}",
        first.resumed_from,
        first.rows.len()
    );

    let path = checkpoint_path(&dir, 7, 3);
    let ckpt = SweepCheckpoint::load(&path).expect("load");
    println!(
        "{}: {} records, {} bytes",
        path.display(),
        ckpt.count(),
        ckpt.to_bytes().len()
    );
    for p in ckpt.permutations().take(3) {
        println!("  {p}");
    }

    let second = run_length_sweep(8, 3, Some(&dir), opts).expect("resume");
    println!("second run: resumed_from={:?}", second.resumed_from);
    for row in &second.rows {
        println!("{} {} {}", row.n, row.sortable, row.basis);
    }
}
