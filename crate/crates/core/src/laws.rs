//! Structural properties of every successful sorting process, checked
//! instance by instance over the unpruned trace enumerator.
//!
//! | law | pattern  | property                                                        |
//! |-----|----------|-----------------------------------------------------------------|
//! | 1   | none     | in `L`, an earlier smaller entry always sits above a later larger one |
//! | 2   | `132`    | the three embedded entries are never together in `R`            |
//! | 3   | `243651` | the 4th and 5th embedded entries are together in `R` at some step |
//! | 4   | `32514`  | if the 1st and 2nd are ever together in `R`, then from that step on the `5` and `4` entries are together in `L` at some step |
//! | 5   | `32541`  | if the 1st and 2nd are ever together in `L`, then just before the 1st is output the 3rd and 4th are in `R` and every entry in `L` came before the 2nd |
//!
//! Laws 2–5 assume depth at least 3.
//!
//! The decider prunes with law 1, so these checks never touch it.

use std::fmt;

use thiserror::Error;

use crate::machine::{enumerate_sorting_traces, MachineConfig, MachineError, Move, MoveSequence};
use crate::perm::{Embeddings, Permutation};

pub const DEFAULT_TRACE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("no law {0}; laws are numbered 1 to 5")]
    UnknownLaw(u8),
    #[error("law {law} needs an embedding of {pattern}")]
    WrongPattern { law: u8, pattern: String },
    #[error("law {law} needs depth at least 3, got {depth}")]
    DepthTooSmall { law: u8, depth: usize },
    #[error("more than {budget} successful traces")]
    TraceBudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    LOrder = 1,
    No132InR = 2,
    Pair45InR = 3,
    ZigZag32514 = 4,
    ZigZag32541 = 5,
}

impl Law {
    pub const ALL: [Law; 5] = [
        Law::LOrder,
        Law::No132InR,
        Law::Pair45InR,
        Law::ZigZag32514,
        Law::ZigZag32541,
    ];

    pub fn from_number(k: u8) -> Result<Law, LawError> {
        Law::ALL
            .get((k as usize).wrapping_sub(1))
            .copied()
            .ok_or(LawError::UnknownLaw(k))
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    /// The pattern an embedding must realize; law 1 has none.
    pub fn pattern(self) -> Option<Permutation> {
        let text = match self {
            Law::LOrder => return None,
            Law::No132InR => "132",
            Law::Pair45InR => "243651",
            Law::ZigZag32514 => "32514",
            Law::ZigZag32541 => "32541",
        };
        Some(text.parse().expect("static pattern"))
    }

    fn min_depth(self) -> usize {
        match self {
            Law::LOrder => 1,
            _ => 3,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "law {}", self.number())
    }
}

/// A witness that `pattern` occurs in `target` at `indices` (1-based,
/// strictly increasing).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub target: Permutation,
    pub indices: Vec<usize>,
    pub pattern: Permutation,
}

impl Embedding {
    /// Checks the indices and returns the embedding if they realize
    /// `pattern`.
    pub fn new(
        target: &Permutation,
        indices: Vec<usize>,
        pattern: &Permutation,
    ) -> Option<Embedding> {
        if indices.len() != pattern.len() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let values: Option<Vec<u32>> = indices.iter().map(|&i| target.at(i)).collect();
        let std = Permutation::standardize(&values?).ok()?;
        (std == *pattern).then(|| Embedding {
            target: target.clone(),
            indices,
            pattern: pattern.clone(),
        })
    }

    /// Values of the target at the embedded positions.
    pub fn values(&self) -> Vec<u32> {
        self.indices
            .iter()
            .map(|&i| self.target.at(i).expect("valid embedding"))
            .collect()
    }
}

/// Every embedding of `q` in `p`, lexicographic by index tuple.
pub fn find_embeddings<'a>(
    p: &'a Permutation,
    q: &'a Permutation,
) -> impl Iterator<Item = Embedding> + 'a {
    Embeddings::new(p, q).map(move |indices| Embedding {
        target: p.clone(),
        indices,
        pattern: q.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// `step` counts moves applied before the offending configuration.
    Counterexample {
        trace: MoveSequence,
        step: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub perm: Permutation,
    pub depth: usize,
    pub embedding: Option<Embedding>,
    pub traces_checked: u64,
    pub verdict: Verdict,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Check one law on one instance against every successful trace.
///
/// Unsortable inputs have no traces and hold vacuously.
pub fn check_law(
    law: Law,
    p: &Permutation,
    depth: usize,
    embedding: Option<&Embedding>,
    budget: u64,
) -> Result<LawReport, LawError> {
    let probe = Probe::new(law, p, depth, embedding)?;
    let mut checked = 0u64;
    for trace in enumerate_sorting_traces(p, depth, Some(budget)) {
        let trace = trace.map_err(|e| match e {
            MachineError::LimitExceeded { limit } => {
                LawError::TraceBudgetExceeded { budget: limit }
            }
            other => unreachable!("enumerator only reports truncation: {other}"),
        })?;
        checked += 1;
        if let Some(step) = probe.violation(&trace) {
            return Ok(probe.report(checked, Verdict::Counterexample { trace, step }));
        }
    }
    Ok(probe.report(checked, Verdict::Holds))
}

/// Check a law for every embedding of its pattern in `p` (or once, for law
/// 1), sharing one enumeration of the traces.
pub fn check_law_all_embeddings(
    law: Law,
    p: &Permutation,
    depth: usize,
    budget: u64,
) -> Result<Vec<LawReport>, LawError> {
    let traces = collect_traces(p, depth, budget)?;
    let embeddings: Vec<Option<Embedding>> = match law.pattern() {
        None => vec![None],
        Some(q) => find_embeddings(p, &q).map(Some).collect(),
    };
    embeddings
        .iter()
        .map(|e| check_law_on_traces(law, p, depth, e.as_ref(), &traces))
        .collect()
}

pub fn collect_traces(
    p: &Permutation,
    depth: usize,
    budget: u64,
) -> Result<Vec<MoveSequence>, LawError> {
    enumerate_sorting_traces(p, depth, Some(budget))
        .map(|t| t.map_err(|_| LawError::TraceBudgetExceeded { budget }))
        .collect()
}

/// As [`check_law`], over a caller-supplied set of traces.
pub fn check_law_on_traces(
    law: Law,
    p: &Permutation,
    depth: usize,
    embedding: Option<&Embedding>,
    traces: &[MoveSequence],
) -> Result<LawReport, LawError> {
    let probe = Probe::new(law, p, depth, embedding)?;
    for (k, trace) in traces.iter().enumerate() {
        if let Some(step) = probe.violation(trace) {
            return Ok(probe.report(
                k as u64 + 1,
                Verdict::Counterexample {
                    trace: trace.clone(),
                    step,
                },
            ));
        }
    }
    Ok(probe.report(traces.len() as u64, Verdict::Holds))
}

struct Probe<'a> {
    law: Law,
    perm: &'a Permutation,
    depth: usize,
    embedding: Option<&'a Embedding>,
    values: Vec<u32>,
    /// 1-based position of each value.
    position: Vec<usize>,
}

impl<'a> Probe<'a> {
    fn new(
        law: Law,
        perm: &'a Permutation,
        depth: usize,
        embedding: Option<&'a Embedding>,
    ) -> Result<Self, LawError> {
        if depth < law.min_depth() {
            return Err(LawError::DepthTooSmall {
                law: law.number(),
                depth,
            });
        }
        let values = match law.pattern() {
            None => Vec::new(),
            Some(q) => {
                let e = embedding.ok_or_else(|| LawError::WrongPattern {
                    law: law.number(),
                    pattern: q.to_string(),
                })?;
                let ok = e.target == *perm
                    && e.pattern == q
                    && Embedding::new(perm, e.indices.clone(), &q).is_some();
                if !ok {
                    return Err(LawError::WrongPattern {
                        law: law.number(),
                        pattern: q.to_string(),
                    });
                }
                e.values()
            }
        };
        let mut position = vec![0; perm.len() + 1];
        for (k, &v) in perm.entries().iter().enumerate() {
            position[v as usize] = k + 1;
        }
        Ok(Probe {
            law,
            perm,
            depth,
            embedding: if law == Law::LOrder { None } else { embedding },
            values,
            position,
        })
    }

    fn report(&self, traces_checked: u64, verdict: Verdict) -> LawReport {
        LawReport {
            law: self.law,
            perm: self.perm.clone(),
            depth: self.depth,
            embedding: self.embedding.cloned(),
            traces_checked,
            verdict,
        }
    }

    /// Replays `trace`; configuration `k` is the state after `k` moves.
    fn configs(&self, trace: &MoveSequence) -> Vec<MachineConfig> {
        let mut c = MachineConfig::new(self.perm, self.depth);
        let mut out = Vec::with_capacity(trace.len() + 1);
        out.push(c.clone());
        for &m in trace.moves() {
            c.apply(m).expect("enumerated traces are legal");
            out.push(c.clone());
        }
        out
    }

    /// First offending configuration index, if the trace violates the law.
    fn violation(&self, trace: &MoveSequence) -> Option<usize> {
        let configs = self.configs(trace);
        let v = &self.values;
        match self.law {
            Law::LOrder => configs.iter().position(|c| self.l_out_of_order(c)),
            Law::No132InR => configs
                .iter()
                .position(|c| c.in_r(v[0]) && c.in_r(v[1]) && c.in_r(v[2])),
            Law::Pair45InR => {
                let ok = configs.iter().any(|c| c.in_r(v[3]) && c.in_r(v[4]));
                (!ok).then_some(trace.len())
            }
            Law::ZigZag32514 => {
                let first = configs.iter().position(|c| c.in_r(v[0]) && c.in_r(v[1]))?;
                // pattern 3 2 5 1 4: the entries playing 5 and 4
                let later = configs[first..]
                    .iter()
                    .any(|c| c.in_l(v[2]) && c.in_l(v[4]));
                (!later).then_some(first)
            }
            Law::ZigZag32541 => {
                configs.iter().position(|c| c.in_l(v[0]) && c.in_l(v[1]))?;
                // configuration just before v[0] leaves L
                let k = trace.moves().iter().enumerate().position(|(k, &m)| {
                    m == Move::LToOutput && configs[k].stack_l().last() == Some(&v[0])
                })?;
                let c = &configs[k];
                let both_in_r = c.in_r(v[2]) && c.in_r(v[3]);
                let i2 = self.embedding.expect("checked").indices[1];
                let l_is_early = c.stack_l().iter().all(|&x| self.position[x as usize] < i2);
                (!(both_in_r && l_is_early)).then_some(k)
            }
        }
    }

    fn l_out_of_order(&self, c: &MachineConfig) -> bool {
        let l = c.stack_l();
        for (lo, &below) in l.iter().enumerate() {
            for &above in &l[lo + 1..] {
                if self.position[below as usize] < self.position[above as usize] && below < above {
                    return true;
                }
            }
        }
        false
    }
}
