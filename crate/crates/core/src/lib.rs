//! Sorting permutations with a stack of bounded depth `t` followed by an
//! unbounded stack.
//!
//! - [`perm`]: permutations, pattern containment, packed 4-bit encoding.
//! - [`machine`]: the two-stack machine, a pruned decider, an unpruned trace
//!   enumerator and a naive reference search.
//! - [`laws`]: structural laws checked on every sorting trace of an instance.
//! - [`basis`]: length-by-length sweep of the sortable class and its basis,
//!   with on-disk checkpoints.
//! - [`antichain`]: an infinite antichain inside the basis, an explicit
//!   sorter for its one-point deletions, and lifting basis elements a depth up.
//! - [`cli`]: the `stacksort` command line.
//!
//! Each area has a runnable program under `examples/`:
//! `decide_and_trace`, `trace_enumeration`, `basis_sweep`,
//! `checkpoint_files`, `antichain_family`, `constructive_sorting`,
//! `lemma_checks` and `basis_lift`.
//!
//! ```
//! use stacksort::machine::decide_sortable;
//! use stacksort::perm::Permutation;
//!
//! let p: Permutation = "243651".parse().unwrap();
//! assert!(!decide_sortable(&p, 2));
//! assert!(decide_sortable(&p, 3));
//! ```

pub mod antichain;
pub mod basis;
pub mod cli;
pub mod laws;
pub mod machine;
pub mod perm;
