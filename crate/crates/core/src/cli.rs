//! The `stacksort` command line.
//!
//! Exit codes: 0 answered or holds, 1 checked and false, 2 usage or input
//! error, 3 internal assertion failed.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::antichain::{
    g_minus_one, generate_git, lift_basis_element, membership_report, AntichainError,
};
use crate::basis::{run_length_sweep, BasisError, SweepOptions};
use crate::laws::{
    check_law, check_law_all_embeddings, Embedding, Law, LawError, LawReport, Verdict,
    DEFAULT_TRACE_BUDGET,
};
use crate::machine::{check_trace, decide_sortable, reference, sort_witness, MoveSequence};
use crate::perm::Permutation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "stacksort",
    version,
    about = "Sorting with a bounded stack followed by an unbounded stack"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a permutation is sortable at the given depth.
    Decide {
        #[arg(long)]
        perm: Permutation,
        #[arg(long, value_parser = positive)]
        depth: usize,
        /// Also print one sorting trace when sortable.
        #[arg(long)]
        trace: bool,
    },
    /// Replay a trace file (`-` for stdin) against a permutation.
    Validate {
        #[arg(long)]
        perm: Permutation,
        #[arg(long, value_parser = positive)]
        depth: usize,
        #[arg(long)]
        trace_file: PathBuf,
    },
    /// Count sortable permutations and basis elements for lengths 1..=N.
    Count {
        #[arg(long)]
        length: usize,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// List basis elements for lengths 1..=N.
    Basis {
        #[arg(long)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Generate, verify or lift members of the antichain family.
    Antichain(AntichainArgs),
    /// Check one structural law against every sorting trace.
    Laws {
        #[arg(long)]
        lemma: u8,
        #[arg(long)]
        perm: Permutation,
        #[arg(long, value_parser = positive)]
        depth: usize,
        /// 1-based positions of the law's pattern, comma-separated.
        #[arg(long, value_delimiter = ',')]
        pattern_indices: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_TRACE_BUDGET)]
        budget: u64,
    },
    /// Run the built-in property checks over lengths up to 7.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_parser = positive)]
    depth: usize,
    #[arg(long, default_value_t = 1, value_parser = positive)]
    jobs: usize,
    #[arg(long, env = "STACKSORT_CHECKPOINT_DIR")]
    checkpoint: Option<PathBuf>,
    /// Permit lengths above 10.
    #[arg(long)]
    allow_long: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Perm,
    Jsonl,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct AntichainArgs {
    #[command(subcommand)]
    action: Option<AntichainAction>,
    #[arg(long, value_enum, default_value_t = Family::G)]
    family: Family,
    #[arg(long, required_unless_present = "minus_one")]
    index: Option<usize>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Check that the member is a basis element.
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value_t = Emit::Perm)]
    emit: Emit,
    /// Use the excluded member 2 4 3 7 6 1 8 9 5 instead of --index.
    #[arg(long, hide = true, conflicts_with = "index")]
    minus_one: bool,
}

#[derive(Debug, Subcommand)]
enum AntichainAction {
    /// Lift a basis element at depth T to one at depth T + 1.
    Lift {
        #[arg(long)]
        perm: Permutation,
        #[arg(long, value_parser = positive)]
        depth: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// An error with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

impl From<BasisError> for Failure {
    fn from(e: BasisError) -> Self {
        Failure::usage(e)
    }
}

impl From<LawError> for Failure {
    fn from(e: LawError) -> Self {
        Failure::usage(e)
    }
}

/// Parses `args` (program name first) and runs the command. Results go to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Decide { perm, depth, trace } => {
            if trace {
                match sort_witness(&perm, depth) {
                    Some(w) => writeln!(out, "sortable\n{w}")?,
                    None => writeln!(out, "unsortable")?,
                }
            } else if decide_sortable(&perm, depth) {
                writeln!(out, "sortable")?;
            } else {
                writeln!(out, "unsortable")?;
            }
            Ok(EXIT_OK)
        }
        Command::Validate {
            perm,
            depth,
            trace_file,
        } => {
            let mut text = String::new();
            if trace_file.as_os_str() == "-" {
                io::stdin().read_to_string(&mut text)?;
            } else {
                text = fs::read_to_string(&trace_file)?;
            }
            let trace: MoveSequence = text.parse().map_err(Failure::usage)?;
            match check_trace(&perm, depth, &trace) {
                Ok(()) => {
                    writeln!(out, "valid")?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "invalid: {e}")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Count { length, sweep } => {
            let report = sweep_with(length, &sweep, err)?;
            writeln!(out, "# n sortable basis")?;
            for row in &report.rows {
                writeln!(out, "{} {} {}", row.n, row.sortable, row.basis)?;
            }
            Ok(EXIT_OK)
        }
        Command::Basis {
            max_length,
            format,
            sweep,
        } => {
            let report = sweep_with(max_length, &sweep, err)?;
            match format {
                Format::Text => {
                    writeln!(out, "# n perm")?;
                    for rec in &report.basis {
                        writeln!(out, "{} {}", rec.length, rec.perm)?;
                    }
                }
                Format::Jsonl => {
                    for rec in &report.basis {
                        let line =
                            serde_json::to_string(&rec.to_row()).map_err(Failure::internal)?;
                        writeln!(out, "{line}")?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "# n,depth,perm")?;
                    let mut w = csv::WriterBuilder::new()
                        .quote_style(csv::QuoteStyle::NonNumeric)
                        .from_writer(&mut *out);
                    for rec in &report.basis {
                        w.write_record([
                            rec.length.to_string(),
                            rec.depth.to_string(),
                            rec.perm.to_string(),
                        ])
                        .map_err(Failure::internal)?;
                    }
                    w.flush()?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Antichain(args) => antichain(args, out),
        Command::Laws {
            lemma,
            perm,
            depth,
            pattern_indices,
            budget,
        } => laws(lemma, &perm, depth, pattern_indices, budget, out),
        Command::Selftest { seed } => selftest(seed, out),
    }
}

fn sweep_with(
    n_max: usize,
    args: &SweepArgs,
    err: &mut dyn Write,
) -> Result<crate::basis::SweepReport, Failure> {
    let opts = SweepOptions {
        jobs: args.jobs,
        allow_long: args.allow_long,
    };
    let report = run_length_sweep(n_max, args.depth, args.checkpoint.as_deref(), opts)?;
    if let Some(k) = report.resumed_from {
        writeln!(err, "resumed lengths 1..={k} from checkpoint")?;
    }
    if let Some(bad) = report.basis.iter().find(|r| !r.verified) {
        return Err(Failure::internal(format!(
            "basis element {} failed re-verification",
            bad.perm
        )));
    }
    Ok(report)
}

#[derive(Serialize)]
struct MemberRow {
    family: &'static str,
    index: i64,
    depth: usize,
    n: usize,
    perm: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_element: Option<bool>,
}

fn antichain(args: AntichainArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(AntichainAction::Lift { perm, depth }) = args.action {
        return match lift_basis_element(&perm, depth) {
            Ok(lifted) => {
                writeln!(out, "{lifted}")?;
                Ok(EXIT_OK)
            }
            Err(e @ AntichainError::LiftFailed { .. }) => Err(Failure::internal(e)),
            Err(e) => Err(Failure::usage(e)),
        };
    }
    let Family::G = args.family;
    let (index, perm) = if args.minus_one {
        if args.depth != 3 {
            return Err(Failure::usage("the excluded member exists only at depth 3"));
        }
        (-1, g_minus_one())
    } else {
        if args.depth < 3 {
            return Err(Failure::usage(AntichainError::DepthTooSmall(args.depth)));
        }
        let i = args.index.expect("clap requires --index");
        (i as i64, generate_git(i, args.depth))
    };
    let report = args.verify.then(|| membership_report(&perm, args.depth));
    match args.emit {
        Emit::Perm => {
            writeln!(out, "{perm}")?;
            if let Some(r) = &report {
                if r.is_basis_element() {
                    writeln!(out, "basis element at depth {}", r.depth)?;
                } else if r.sortable {
                    writeln!(out, "not a basis element: sortable at depth {}", r.depth)?;
                } else {
                    let pos: Vec<String> = r
                        .unsortable_deletions
                        .iter()
                        .map(|p| p.to_string())
                        .collect();
                    writeln!(
                        out,
                        "not a basis element: deleting position(s) {} leaves it unsortable",
                        pos.join(",")
                    )?;
                }
            }
        }
        Emit::Jsonl => {
            let row = MemberRow {
                family: "g",
                index,
                depth: args.depth,
                n: perm.len(),
                perm: perm.entries().to_vec(),
                basis_element: report.as_ref().map(|r| r.is_basis_element()),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&row).map_err(Failure::internal)?
            )?;
        }
    }
    Ok(match report {
        Some(r) if !r.is_basis_element() => EXIT_NEGATIVE,
        _ => EXIT_OK,
    })
}

fn laws(
    lemma: u8,
    perm: &Permutation,
    depth: usize,
    indices: Option<Vec<usize>>,
    budget: u64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let law = Law::from_number(lemma)?;
    let reports: Vec<LawReport> = match (indices, law.pattern()) {
        (Some(_), None) => {
            return Err(Failure::usage(format!(
                "law {law} takes no pattern indices"
            )));
        }
        (Some(ix), Some(q)) => {
            let e = Embedding::new(perm, ix.clone(), &q).ok_or_else(|| {
                Failure::usage(format!(
                    "positions {ix:?} of {perm} do not form the pattern {q}"
                ))
            })?;
            vec![check_law(law, perm, depth, Some(&e), budget)?]
        }
        (None, pattern) => {
            let reports = check_law_all_embeddings(law, perm, depth, budget)?;
            if reports.is_empty() {
                let q = pattern.expect("law 1 always yields one report");
                return Err(Failure::usage(format!("{perm} does not contain {q}")));
            }
            reports
        }
    };
    let mut code = EXIT_OK;
    for r in &reports {
        let at = match &r.embedding {
            Some(e) => {
                let ix: Vec<String> = e.indices.iter().map(|i| i.to_string()).collect();
                format!(" at positions {}", ix.join(","))
            }
            None => String::new(),
        };
        match &r.verdict {
            Verdict::Holds => writeln!(
                out,
                "law {} holds{at} ({} trace{})",
                r.law.number(),
                r.traces_checked,
                if r.traces_checked == 1 { "" } else { "s" }
            )?,
            Verdict::Counterexample { trace, step } => {
                code = EXIT_NEGATIVE;
                writeln!(out, "law {} fails{at} after move {step}", r.law.number())?;
                writeln!(out, "{trace}")?;
            }
        }
    }
    Ok(code)
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut level = vec![Permutation::identity(1)];
    for _ in 1..n {
        level = level
            .iter()
            .flat_map(|p| p.one_point_extensions())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
    }
    level
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(v).expect("shuffle of 1..n")
}

fn selftest(seed: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let by_len: Vec<Vec<Permutation>> = (1..=7).map(all_perms).collect();
    let pattern_231: Permutation = "231".parse().expect("literal");
    let mut failures = 0;
    let mut report = |out: &mut dyn Write, name: &str, cases: usize, bad: Option<String>| match bad
    {
        None => writeln!(out, "PASS {name} ({cases} cases)"),
        Some(b) => {
            failures += 1;
            writeln!(out, "FAIL {name}: {b}")
        }
    };

    let mut cases = 0;
    let mut bad = None;
    'oracle: for q in by_len.iter().flatten() {
        for t in 1..=3 {
            cases += 1;
            if decide_sortable(q, t) != reference::exhaustive_sortable(q, t) {
                bad = Some(format!("{q} at depth {t}"));
                break 'oracle;
            }
        }
    }
    report(out, "decider matches exhaustive search", cases, bad)?;

    let mut cases = 0;
    let bad = by_len.iter().flatten().find_map(|q| {
        cases += 1;
        (decide_sortable(q, 1) == q.contains(&pattern_231)).then(|| q.to_string())
    });
    report(out, "depth 1 is 231-avoidance", cases, bad)?;

    let mut cases = 0;
    let mut bad = None;
    'closure: for q in by_len.iter().flatten() {
        for t in 1..=3 {
            if !decide_sortable(q, t) {
                continue;
            }
            cases += 1;
            if !decide_sortable(q, t + 1) {
                bad = Some(format!("{q} sortable at {t} but not {}", t + 1));
                break 'closure;
            }
            if let Some((i, _)) = q.deletions().find(|(_, d)| !decide_sortable(d, t)) {
                bad = Some(format!("{q} minus position {i} at depth {t}"));
                break 'closure;
            }
        }
    }
    report(
        out,
        "sortable sets are monotone and downward closed",
        cases,
        bad,
    )?;

    let samples = 200;
    let mut bad = None;
    for _ in 0..samples {
        let n = rng.gen_range(1..=7);
        let t = rng.gen_range(1..=4);
        let q = random_perm(&mut rng, n);
        let ok = match sort_witness(&q, t) {
            Some(w) => check_trace(&q, t, &w).is_ok(),
            None => !decide_sortable(&q, t),
        };
        if !ok {
            bad = Some(format!("{q} at depth {t}"));
            break;
        }
    }
    report(
        out,
        &format!("sampled witnesses replay (seed {seed})"),
        samples,
        bad,
    )?;

    Ok(if failures == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}
