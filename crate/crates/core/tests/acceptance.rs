//! Acceptance criteria, one PASS/FAIL line each. Runs without the test
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use stacksort::antichain::{
    constructive_sort_deletion, generate_gi, generate_git, lift_basis_element, membership_report,
    verify_basis_membership, AntichainError,
};
use stacksort::basis::{checkpoint_path, run_length_sweep, SweepOptions};
use stacksort::cli;
use stacksort::laws::{check_law_all_embeddings, Law, DEFAULT_TRACE_BUDGET};
use stacksort::machine::{decide_sortable, reference, validate_trace};
use stacksort::perm::Permutation;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![Permutation::new(cur.clone()).unwrap()];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Permutation::new(cur.clone()).unwrap());
    }
}

fn cli_run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("stacksort").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let e = start.elapsed();
    if e <= limit {
        Ok(e)
    } else {
        Err(format!("took {e:.1?}, limit {limit:?}"))
    }
}

fn table_one() -> Outcome {
    let expected = [
        (5, 120, 0),
        (6, 711, 9),
        (7, 4700, 83),
        (8, 33039, 169),
        (9, 239800, 345),
        (10, 1769019, 638),
    ];
    let jobs = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .to_string();
    let start = Instant::now();
    let (code, out) = cli_run(&["count", "--length", "10", "--depth", "3", "--jobs", &jobs]);
    let elapsed = within(Duration::from_secs(2 * 3600), start)?;
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    for (n, s, b) in expected {
        let row = format!("{n} {s} {b}");
        if !out.lines().any(|l| l == row) {
            return Err(format!("missing row `{row}`"));
        }
    }
    Ok(format!("n=5..10 rows exact in {elapsed:.1?}"))
}

/// `p` contains 231 when some `i<j<k` has `p_k < p_i < p_j`.
fn has_231(p: &[u32]) -> bool {
    let n = p.len();
    (0..n).any(|i| (i + 1..n).any(|j| p[i] < p[j] && (j + 1..n).any(|k| p[k] < p[i])))
}

fn knuth_oracle() -> Outcome {
    let pattern: Permutation = "231".parse().unwrap();
    let mut total = 0;
    for n in 1..=8 {
        for q in all_perms(n) {
            total += 1;
            let avoid = !has_231(q.entries());
            if avoid != !q.contains(&pattern) || decide_sortable(&q, 1) != avoid {
                return Err(format!("mismatch on {q}"));
            }
        }
    }
    if total != 46233 {
        return Err(format!("checked {total} permutations"));
    }
    Ok(format!("{total} permutations, 0 mismatches"))
}

fn depth_two_basis() -> Outcome {
    let report =
        run_length_sweep(9, 2, None, SweepOptions::default()).map_err(|e| e.to_string())?;
    let dist: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("{}:{}", r.n, r.basis))
        .collect();
    let total: u64 = report.rows.iter().map(|r| r.basis).sum();
    if total != 20 {
        return Err(format!(
            "cumulative {total}, distribution {}",
            dist.join(" ")
        ));
    }
    let q: Permutation = "243651".parse().unwrap();
    if decide_sortable(&q, 2) {
        return Err("243651 sortable at depth 2".into());
    }
    Ok(format!(
        "20 elements, by length {}; 243651 unsortable",
        dist.join(" ")
    ))
}

fn pruning_soundness() -> Outcome {
    let mut cases = 0;
    for n in 1..=7 {
        for q in all_perms(n) {
            for t in 1..=3 {
                cases += 1;
                if decide_sortable(&q, t) != reference::exhaustive_sortable(&q, t) {
                    return Err(format!("disagree on {q} at depth {t}"));
                }
            }
        }
    }
    Ok(format!("{cases} cases, 0 disagreements"))
}

fn antichain_instances() -> Outcome {
    let start = Instant::now();
    let members: Vec<Permutation> = (0..=3).map(generate_gi).collect();
    for (i, g) in members.iter().enumerate() {
        let r = membership_report(g, 3);
        if r.sortable {
            return Err(format!("G_{i} sortable"));
        }
        if !r.unsortable_deletions.is_empty() || g.len() != 6 * i + 15 {
            return Err(format!(
                "G_{i} deletions {:?} unsortable",
                r.unsortable_deletions
            ));
        }
    }
    for i in 0..=2 {
        for j in 0..=2 {
            if i != j && members[i].contains(&members[j]) {
                return Err(format!("G_{i} contains G_{j}"));
            }
        }
    }
    let e = within(Duration::from_secs(300), start)?;
    Ok(format!(
        "G_0..G_3 basis elements, G_0..G_2 incomparable, {e:.1?}"
    ))
}

fn constructive_sorter() -> Outcome {
    let mut count = 0;
    for i in 0..=2 {
        let g = generate_gi(i);
        for pos in 1..=g.len() {
            let reduced = g.delete_at(pos).unwrap();
            let trace = constructive_sort_deletion(i, pos).map_err(|e| e.to_string())?;
            if !validate_trace(&reduced, 3, &trace) || !decide_sortable(&reduced, 3) {
                return Err(format!("G_{i} minus position {pos}"));
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} scripted traces validate, all agree with the decider"
    ))
}

fn generalized_family() -> Outcome {
    for i in 0..=1 {
        if !verify_basis_membership(&generate_git(i, 4), 4) {
            return Err(format!("G_{{{i},4}} not a basis element"));
        }
    }
    Ok("G_{0,4} and G_{1,4} are basis elements at depth 4".into())
}

fn lift() -> Outcome {
    let seed: Permutation = "231".parse().unwrap();
    let up = lift_basis_element(&seed, 1).map_err(|e| e.to_string())?;
    if !verify_basis_membership(&up, 2) {
        return Err(format!("{up} not in depth-2 basis"));
    }
    let report =
        run_length_sweep(6, 3, None, SweepOptions::default()).map_err(|e| e.to_string())?;
    let six: Vec<_> = report.basis.iter().filter(|r| r.length == 6).collect();
    if six.len() != 9 {
        return Err(format!("{} length-6 basis elements", six.len()));
    }
    for rec in six {
        match lift_basis_element(&rec.perm, 3) {
            Ok(l) if verify_basis_membership(&l, 4) => {}
            Ok(l) => return Err(format!("{l} not in depth-4 basis")),
            Err(e @ AntichainError::LiftFailed { .. }) => return Err(format!("LiftFailed: {e}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "231 -> {up}; 9 of 9 length-6 elements lift, 0 LiftFailed"
    ))
}

fn laws_suite() -> Outcome {
    let defining = [
        (Law::LOrder, "243651"),
        (Law::No132InR, "243651"),
        (Law::Pair45InR, "243651"),
        (Law::ZigZag32514, "32514"),
        (Law::ZigZag32541, "32541"),
    ];
    for (law, text) in defining {
        let q: Permutation = text.parse().unwrap();
        let reports = check_law_all_embeddings(law, &q, 3, DEFAULT_TRACE_BUDGET)
            .map_err(|e| e.to_string())?;
        if reports.is_empty() || reports.iter().any(|r| !r.holds()) {
            return Err(format!("{law} on {q}"));
        }
    }
    let mut checks = 0u64;
    for n in 1..=7 {
        for q in all_perms(n).into_iter().filter(|q| decide_sortable(q, 3)) {
            for law in [Law::LOrder, Law::No132InR] {
                for r in check_law_all_embeddings(law, &q, 3, DEFAULT_TRACE_BUDGET)
                    .map_err(|e| e.to_string())?
                {
                    checks += 1;
                    if !r.holds() {
                        return Err(format!("{law} fails on {q}: {:?}", r.verdict));
                    }
                }
            }
        }
    }
    Ok(format!(
        "defining instances hold; laws 1-2 over n<=7: {checks} checks, 0 counterexamples"
    ))
}

fn determinism() -> Outcome {
    let mut seen: Option<(String, Vec<Vec<u8>>)> = None;
    for jobs in ["1", "4", "8"] {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let d = dir.path().to_str().unwrap();
        let (code, out) = cli_run(&[
            "count",
            "--length",
            "9",
            "--depth",
            "3",
            "--jobs",
            jobs,
            "--checkpoint",
            d,
        ]);
        if code != 0 {
            return Err(format!("exit {code} with --jobs {jobs}"));
        }
        let files: Vec<Vec<u8>> = (1..=9)
            .map(|n| std::fs::read(checkpoint_path(dir.path(), n, 3)).unwrap())
            .collect();
        match &seen {
            None => seen = Some((out, files)),
            Some((o, f)) if *o == out && *f == files => {}
            Some(_) => return Err(format!("--jobs {jobs} differs")),
        }
    }
    Ok("--jobs 1/4/8 give identical stdout and checkpoints for n<=9".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("table reproduction", table_one),
        ("depth 1 equals 231-avoidance", knuth_oracle),
        ("depth-2 basis", depth_two_basis),
        ("pruning soundness", pruning_soundness),
        ("antichain instances", antichain_instances),
        ("constructive sorter", constructive_sorter),
        ("generalized family", generalized_family),
        ("lift", lift),
        ("laws suite", laws_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!(
                "PASS {:2} {name}: {detail} [{:.1?}]",
                k + 1,
                start.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
