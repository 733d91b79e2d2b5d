//! The sorting machine: a stack `R` holding at most `t` items feeding an
//! unbounded stack `L`, which feeds the output.
//!
//! Items travel input → `R` → `L` → output. A permutation is sortable at
//! depth `t` when some interleaving of the three moves outputs `1 2 … n`.
//!
//! Two independent searches live here:
//!
//! * [`Decider`] answers sortability with a memoized depth-first search
//!   that uses two pruning rules (see [`Decider`] for both).
//! * [`TraceEnumerator`] walks every legal move sequence with no pruning at
//!   all and yields each successful one. The `laws` module quantifies over
//!   this stream, so it must not inherit the decider's assumptions.
//!
//! [`reference::exhaustive_sortable`] is a third, deliberately naive route
//! used as an oracle for the decider.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("illegal move {mv} at step {step}")]
    IllegalMove { step: usize, mv: Move },
    #[error("trace ended before the output was complete (next output {next_output} of {len})")]
    Unfinished { next_output: u32, len: usize },
    #[error("trace enumeration truncated after {limit} traces")]
    LimitExceeded { limit: u64 },
    #[error("unknown move token {0:?}")]
    BadToken(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    /// Next input entry onto `R`.
    InputToR,
    /// Top of `R` onto `L`.
    RToL,
    /// Top of `L` to the output.
    LToOutput,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::InputToR, Move::RToL, Move::LToOutput];

    pub fn token(self) -> char {
        match self {
            Move::InputToR => 'I',
            Move::RToL => 'T',
            Move::LToOutput => 'O',
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

impl FromStr for Move {
    type Err = MachineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" => Ok(Move::InputToR),
            "T" => Ok(Move::RToL),
            "O" => Ok(Move::LToOutput),
            other => Err(MachineError::BadToken(other.to_string())),
        }
    }
}

/// A complete or partial sorting process. Text form is one token per move
/// (`I`, `T`, `O`) separated by spaces.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn count(&self, kind: Move) -> usize {
        self.0.iter().filter(|&&m| m == kind).count()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSequence {
    type Err = MachineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(MoveSequence)
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

/// Full machine state part-way through a sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineConfig {
    input: Vec<u32>,
    /// 1-based index of the next unread entry; `n + 1` once input is empty.
    cursor: usize,
    /// Bottom to top.
    r: Vec<u32>,
    /// Bottom to top.
    l: Vec<u32>,
    next_output: u32,
    depth: usize,
}

impl MachineConfig {
    pub fn new(p: &Permutation, depth: usize) -> Self {
        assert!(depth >= 1, "depth must be positive");
        Self {
            input: p.entries().to_vec(),
            cursor: 1,
            r: Vec::with_capacity(depth),
            l: Vec::new(),
            next_output: 1,
            depth,
        }
    }

    pub fn len(&self) -> usize {
        self.input.len()
    }

    pub fn is_empty(&self) -> bool {
        self.input.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn input_cursor(&self) -> usize {
        self.cursor
    }

    pub fn remaining_input(&self) -> &[u32] {
        &self.input[self.cursor - 1..]
    }

    pub fn next_input(&self) -> Option<u32> {
        self.input.get(self.cursor - 1).copied()
    }

    pub fn stack_r(&self) -> &[u32] {
        &self.r
    }

    pub fn stack_l(&self) -> &[u32] {
        &self.l
    }

    pub fn next_output(&self) -> u32 {
        self.next_output
    }

    pub fn is_sorted(&self) -> bool {
        self.next_output as usize == self.input.len() + 1
    }

    pub fn in_r(&self, v: u32) -> bool {
        self.r.contains(&v)
    }

    pub fn in_l(&self, v: u32) -> bool {
        self.l.contains(&v)
    }

    pub fn is_legal(&self, m: Move) -> bool {
        match m {
            Move::InputToR => self.cursor <= self.input.len() && self.r.len() < self.depth,
            Move::RToL => !self.r.is_empty(),
            Move::LToOutput => self.l.last() == Some(&self.next_output),
        }
    }

    /// Legal moves in `I`, `T`, `O` order.
    pub fn legal_moves(&self) -> Vec<Move> {
        Move::ALL
            .into_iter()
            .filter(|&m| self.is_legal(m))
            .collect()
    }

    /// Applies `m` in place. On error the configuration is unchanged.
    pub fn apply(&mut self, m: Move) -> Result<(), MachineError> {
        if !self.is_legal(m) {
            return Err(MachineError::IllegalMove { step: 0, mv: m });
        }
        match m {
            Move::InputToR => {
                self.r.push(self.input[self.cursor - 1]);
                self.cursor += 1;
            }
            Move::RToL => {
                let v = self.r.pop().expect("legal");
                self.l.push(v);
            }
            Move::LToOutput => {
                self.l.pop();
                self.next_output += 1;
            }
        }
        Ok(())
    }

    pub fn apply_move(&self, m: Move) -> Result<MachineConfig, MachineError> {
        let mut next = self.clone();
        next.apply(m)?;
        Ok(next)
    }

    fn undo(&mut self, m: Move) {
        match m {
            Move::InputToR => {
                self.r.pop();
                self.cursor -= 1;
            }
            Move::RToL => {
                let v = self.l.pop().expect("undo");
                self.r.push(v);
            }
            Move::LToOutput => {
                self.next_output -= 1;
                self.l.push(self.next_output);
            }
        }
    }
}

/// Text diagram: `out ≤ k | L [..] | R [..] | input ..`.
impl fmt::Display for MachineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "out<{} | L[{}] | R[{}] | in[{}]",
            self.next_output,
            join(&self.l),
            join(&self.r),
            join(self.remaining_input())
        )
    }
}

/// Replays `ms` from the fresh configuration. `Ok` iff every move is legal
/// and the output ends up as `1 2 … n`.
pub fn check_trace(p: &Permutation, depth: usize, ms: &MoveSequence) -> Result<(), MachineError> {
    let mut c = MachineConfig::new(p, depth);
    for (step, &m) in ms.moves().iter().enumerate() {
        c.apply(m)
            .map_err(|_| MachineError::IllegalMove { step, mv: m })?;
    }
    if c.is_sorted() {
        Ok(())
    } else {
        Err(MachineError::Unfinished {
            next_output: c.next_output,
            len: p.len(),
        })
    }
}

pub fn validate_trace(p: &Permutation, depth: usize, ms: &MoveSequence) -> bool {
    check_trace(p, depth, ms).is_ok()
}

pub fn decide_sortable(p: &Permutation, depth: usize) -> bool {
    Decider::new(depth).is_sortable(p.entries())
}

pub fn sort_witness(p: &Permutation, depth: usize) -> Option<MoveSequence> {
    Decider::new(depth).witness(p.entries())
}

/// Memoized sortability search.
///
/// Pruning:
///
/// * `L` is kept strictly increasing from top to bottom. A larger value
///   on top of a smaller one in `L` can never be unstacked in order, so
///   `R → L` is refused whenever `top(R) > top(L)`.
/// * Whenever `top(L)` is the next value owed to the output it is popped
///   at once. Anything stacked above it would have to leave first, and
///   it is larger, so waiting never helps.
///
/// Under the first rule `L` is a function of the rest of the state: the
/// consumed input minus what has been output minus `R`, in decreasing
/// order. Failed states are therefore memoized on
/// `(input cursor, next output, R)` alone. Debug builds re-derive `L` from
/// that key at every node and compare.
///
/// Among the two remaining choices `R → L` is tried before reading input,
/// which fixes the witness returned.
///
/// A `Decider` may be reused across calls; the memo is cleared per call.
pub struct Decider {
    depth: usize,
    memo: FailMemo,
}

enum FailMemo {
    /// Cursor, next output and up to 14 `R` entries, 8 bits each.
    Packed(FxHashSet<u128>),
    General(FxHashSet<Box<[u32]>>),
}

struct Frame {
    /// 0: try `R → L`; 1: try input; 2: exhausted.
    choice: u8,
    /// Greedy outputs performed on entering this node.
    pops: u32,
    key: Key,
}

enum Key {
    Packed(u128),
    General(Box<[u32]>),
}

impl Decider {
    pub fn new(depth: usize) -> Self {
        assert!(depth >= 1, "depth must be positive");
        Self {
            depth,
            memo: FailMemo::Packed(FxHashSet::default()),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_sortable(&mut self, input: &[u32]) -> bool {
        self.search(input, false).is_some()
    }

    pub fn witness(&mut self, input: &[u32]) -> Option<MoveSequence> {
        self.search(input, true)
    }

    fn reset(&mut self, n: usize) {
        let packable = n < 255 && self.depth <= 14;
        match (&mut self.memo, packable) {
            (FailMemo::Packed(m), true) => m.clear(),
            (FailMemo::General(m), false) => m.clear(),
            (memo, true) => *memo = FailMemo::Packed(FxHashSet::default()),
            (memo, false) => *memo = FailMemo::General(FxHashSet::default()),
        }
    }

    fn search(&mut self, input: &[u32], record: bool) -> Option<MoveSequence> {
        let n = input.len();
        self.reset(n);
        let mut st = SearchState {
            input,
            cursor: 0,
            r: Vec::with_capacity(self.depth),
            l: Vec::with_capacity(n),
            next: 1,
            trace: Vec::new(),
            record,
        };
        let mut stack: Vec<Frame> = Vec::with_capacity(2 * n + 2);
        // Move that led into each frame, parallel to `stack` minus the root.
        let mut entered_by: Vec<Move> = Vec::with_capacity(2 * n + 2);

        match self.enter(&mut st) {
            Entered::Sorted => return Some(st.finish()),
            Entered::Known(pops) => {
                st.unpop(pops);
                return None;
            }
            Entered::Fresh(frame) => stack.push(frame),
        }

        while let Some(top) = stack.last_mut() {
            let mv = match top.choice {
                0 => {
                    top.choice = 1;
                    match (st.r.last(), st.l.last()) {
                        (Some(&a), Some(&b)) if a < b => Some(Move::RToL),
                        (Some(_), None) => Some(Move::RToL),
                        _ => None,
                    }
                }
                1 => {
                    top.choice = 2;
                    (st.cursor < n && st.r.len() < self.depth).then_some(Move::InputToR)
                }
                _ => {
                    let frame = stack.pop().expect("nonempty");
                    self.memo_insert(frame.key);
                    st.unpop(frame.pops);
                    if let Some(m) = entered_by.pop() {
                        st.undo(m);
                    }
                    continue;
                }
            };
            let Some(mv) = mv else { continue };
            st.apply(mv);
            match self.enter(&mut st) {
                Entered::Sorted => return Some(st.finish()),
                Entered::Known(pops) => {
                    st.unpop(pops);
                    st.undo(mv);
                }
                Entered::Fresh(frame) => {
                    stack.push(frame);
                    entered_by.push(mv);
                }
            }
        }
        None
    }

    /// Greedy outputs, then classify the node.
    fn enter(&self, st: &mut SearchState<'_>) -> Entered {
        let mut pops = 0;
        while st.l.last() == Some(&st.next) {
            st.l.pop();
            st.next += 1;
            pops += 1;
            if st.record {
                st.trace.push(Move::LToOutput);
            }
        }
        if st.next as usize == st.input.len() + 1 {
            return Entered::Sorted;
        }
        debug_assert_eq!(st.l, st.derived_l(), "L is not determined by the memo key");
        let key = self.key(st);
        let seen = match (&self.memo, &key) {
            (FailMemo::Packed(m), Key::Packed(k)) => m.contains(k),
            (FailMemo::General(m), Key::General(k)) => m.contains(k),
            _ => unreachable!("memo and key kinds agree"),
        };
        if seen {
            Entered::Known(pops)
        } else {
            Entered::Fresh(Frame {
                choice: 0,
                pops,
                key,
            })
        }
    }

    fn key(&self, st: &SearchState<'_>) -> Key {
        match self.memo {
            FailMemo::Packed(_) => {
                let mut k: u128 = st.cursor as u128 | (st.next as u128) << 8;
                for (slot, &v) in st.r.iter().enumerate() {
                    k |= (v as u128) << (16 + 8 * slot);
                }
                Key::Packed(k)
            }
            FailMemo::General(_) => {
                let mut k = Vec::with_capacity(st.r.len() + 2);
                k.push(st.cursor as u32);
                k.push(st.next);
                k.extend_from_slice(&st.r);
                Key::General(k.into_boxed_slice())
            }
        }
    }

    fn memo_insert(&mut self, key: Key) {
        match (&mut self.memo, key) {
            (FailMemo::Packed(m), Key::Packed(k)) => {
                m.insert(k);
            }
            (FailMemo::General(m), Key::General(k)) => {
                m.insert(k);
            }
            _ => unreachable!("memo and key kinds agree"),
        }
    }
}

enum Entered {
    Sorted,
    Known(u32),
    Fresh(Frame),
}

struct SearchState<'a> {
    input: &'a [u32],
    /// 0-based index of the next unread entry.
    cursor: usize,
    r: Vec<u32>,
    l: Vec<u32>,
    next: u32,
    trace: Vec<Move>,
    record: bool,
}

impl SearchState<'_> {
    fn apply(&mut self, m: Move) {
        match m {
            Move::InputToR => {
                self.r.push(self.input[self.cursor]);
                self.cursor += 1;
            }
            Move::RToL => {
                let v = self.r.pop().expect("nonempty R");
                self.l.push(v);
            }
            Move::LToOutput => unreachable!("outputs are greedy"),
        }
        if self.record {
            self.trace.push(m);
        }
    }

    fn undo(&mut self, m: Move) {
        match m {
            Move::InputToR => {
                self.r.pop();
                self.cursor -= 1;
            }
            Move::RToL => {
                let v = self.l.pop().expect("nonempty L");
                self.r.push(v);
            }
            Move::LToOutput => unreachable!("outputs are greedy"),
        }
        if self.record {
            self.trace.pop();
        }
    }

    fn unpop(&mut self, pops: u32) {
        for _ in 0..pops {
            self.next -= 1;
            self.l.push(self.next);
            if self.record {
                self.trace.pop();
            }
        }
    }

    fn finish(self) -> MoveSequence {
        MoveSequence(self.trace)
    }

    /// `L` reconstructed from `(cursor, next, R)`.
    fn derived_l(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self.input[..self.cursor]
            .iter()
            .copied()
            .filter(|&v| v >= self.next && !self.r.contains(&v))
            .collect();
        l.sort_unstable_by(|a, b| b.cmp(a));
        l
    }
}

/// Every successful move sequence for `p` at `depth`, with no pruning beyond
/// move legality. Traces come out in lexicographic order of moves
/// (`I < T < O` at each step).
///
/// With a limit, the stream yields at most `limit` traces; if another one
/// exists it then yields a single [`MachineError::LimitExceeded`].
pub struct TraceEnumerator {
    config: MachineConfig,
    /// (move taken to reach this level, next alternative index)
    path: Vec<(Move, usize)>,
    alternatives: usize,
    started: bool,
    yielded: u64,
    limit: Option<u64>,
    finished: bool,
}

impl TraceEnumerator {
    pub fn new(p: &Permutation, depth: usize, limit: Option<u64>) -> Self {
        Self {
            config: MachineConfig::new(p, depth),
            path: Vec::new(),
            alternatives: 0,
            started: false,
            yielded: 0,
            limit,
            finished: false,
        }
    }

    /// Advance to the next terminal configuration, depth first.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            if self.config.is_sorted() {
                return true;
            }
        } else {
            // resume: backtrack from the terminal we last returned
            if !self.backtrack() {
                return false;
            }
        }
        loop {
            let from = self.alternatives;
            let next = Move::ALL[from.min(3)..]
                .iter()
                .position(|&m| self.config.is_legal(m))
                .map(|k| from + k);
            match next {
                Some(k) => {
                    let m = Move::ALL[k];
                    self.config.apply(m).expect("legal");
                    self.path.push((m, k + 1));
                    self.alternatives = 0;
                    if self.config.is_sorted() {
                        return true;
                    }
                }
                None => {
                    if !self.backtrack() {
                        return false;
                    }
                }
            }
        }
    }

    fn backtrack(&mut self) -> bool {
        match self.path.pop() {
            Some((m, resume)) => {
                self.config.undo(m);
                self.alternatives = resume;
                true
            }
            None => false,
        }
    }

    fn current(&self) -> MoveSequence {
        self.path.iter().map(|&(m, _)| m).collect()
    }
}

impl Iterator for TraceEnumerator {
    type Item = Result<MoveSequence, MachineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        if !self.advance() {
            self.finished = true;
            return None;
        }
        if let Some(limit) = self.limit {
            if self.yielded >= limit {
                self.finished = true;
                return Some(Err(MachineError::LimitExceeded { limit }));
            }
        }
        self.yielded += 1;
        Some(Ok(self.current()))
    }
}

pub fn enumerate_sorting_traces(
    p: &Permutation,
    depth: usize,
    limit: Option<u64>,
) -> TraceEnumerator {
    TraceEnumerator::new(p, depth, limit)
}

/// Naive routes kept independent of [`Decider`] for cross-checking.
pub mod reference {
    use std::collections::HashSet;

    use super::{MachineConfig, Move};
    use crate::perm::Permutation;

    /// Depth-first search over full configurations using only move
    /// legality; visited configurations are skipped.
    pub fn exhaustive_sortable(p: &Permutation, depth: usize) -> bool {
        let start = MachineConfig::new(p, depth);
        let mut seen = HashSet::new();
        let mut todo = vec![start];
        while let Some(c) = todo.pop() {
            if c.is_sorted() {
                return true;
            }
            for m in Move::ALL {
                if let Ok(next) = c.apply_move(m) {
                    if seen.insert(next.clone()) {
                        todo.push(next);
                    }
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ms(s: &str) -> MoveSequence {
        s.parse().unwrap()
    }

    #[test]
    fn legal_moves_examples() {
        let c = MachineConfig::new(&p("243651"), 3);
        assert_eq!(c.legal_moves(), vec![Move::InputToR]);

        let mut c = MachineConfig::new(&p("243651"), 1);
        c.apply(Move::InputToR).unwrap();
        assert_eq!(c.legal_moves(), vec![Move::RToL]);

        let mut c = MachineConfig::new(&p("1"), 1);
        for m in [Move::InputToR, Move::RToL, Move::LToOutput] {
            c.apply(m).unwrap();
        }
        assert!(c.is_sorted());
        assert!(c.legal_moves().is_empty());
    }

    #[test]
    fn apply_move_examples() {
        let c = MachineConfig::new(&p("243651"), 3);
        let c = c.apply_move(Move::InputToR).unwrap();
        assert_eq!(c.stack_r(), &[2]);
        assert_eq!(c.input_cursor(), 2);
        let c = c.apply_move(Move::RToL).unwrap();
        assert_eq!(c.stack_l(), &[2]);
        assert!(c.stack_r().is_empty());
        assert!(matches!(
            c.apply_move(Move::LToOutput),
            Err(MachineError::IllegalMove { .. })
        ));

        let c = MachineConfig::new(&p("1"), 1)
            .apply_move(Move::InputToR)
            .and_then(|c| c.apply_move(Move::RToL))
            .and_then(|c| c.apply_move(Move::LToOutput))
            .unwrap();
        assert_eq!(c.next_output(), 2);
    }

    #[test]
    fn worked_trace_for_243651() {
        // 2,4 into R; 4,3,2 across to L; 6,5,1 into R; output everything
        let trace = ms("I I T I T T I I I T O O O O T O T O");
        assert!(validate_trace(&p("243651"), 3, &trace));
        assert!(!validate_trace(&p("243651"), 2, &trace));
        assert_eq!(
            check_trace(&p("243651"), 2, &trace),
            Err(MachineError::IllegalMove {
                step: 8,
                mv: Move::InputToR
            })
        );
    }

    #[test]
    fn validate_trace_examples() {
        assert!(validate_trace(&p("123"), 1, &ms("I T O I T O I T O")));
        assert!(!validate_trace(&p("123"), 1, &ms("I I T O T O I T O")));
        assert!(!validate_trace(&p("123"), 2, &ms("I I I")));
        assert!(matches!(
            check_trace(&p("12"), 1, &ms("I T O")),
            Err(MachineError::Unfinished { .. })
        ));
    }

    #[test]
    fn trace_text_round_trip() {
        let t = ms("I T O");
        assert_eq!(t.to_string(), "I T O");
        assert!("I X".parse::<MoveSequence>().is_err());
    }

    #[test]
    fn decide_examples() {
        assert!(decide_sortable(&p("243651"), 3));
        assert!(!decide_sortable(&p("243651"), 2));
        assert!(!decide_sortable(&p("231"), 1));
        assert!(decide_sortable(&p("231"), 2));
        for n in 1..=9 {
            for t in 1..=3 {
                assert!(decide_sortable(&Permutation::identity(n), t));
            }
        }
        let g0 = p("2 4 3 7 6 1 10 5 9 13 12 8 14 15 11");
        assert!(!decide_sortable(&g0, 3));
    }

    #[test]
    fn witness_examples() {
        let w = sort_witness(&p("243651"), 3).unwrap();
        assert!(validate_trace(&p("243651"), 3, &w));
        assert_eq!(sort_witness(&p("1"), 1).unwrap(), ms("I T O"));
        let g0 = p("2 4 3 7 6 1 10 5 9 13 12 8 14 15 11");
        assert!(sort_witness(&g0, 3).is_none());
    }

    #[test]
    fn large_depth_uses_general_memo() {
        let q = p("243651");
        assert!(Decider::new(20).is_sortable(q.entries()));
        let long = Permutation::new((1..=300).rev().collect()).unwrap();
        assert!(decide_sortable(&long, 1));
    }

    #[test]
    fn enumerator_small_cases() {
        let all: Vec<_> = enumerate_sorting_traces(&p("1"), 1, None)
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(all, vec![ms("I T O")]);

        let all: Vec<_> = enumerate_sorting_traces(&p("21"), 2, None)
            .collect::<Result<_, _>>()
            .unwrap();
        assert!(!all.is_empty());
        for t in &all {
            assert!(validate_trace(&p("21"), 2, t));
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all, "lexicographic order");
        // I I T O T O and I T I T O O
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn enumerator_limit() {
        let mut it = enumerate_sorting_traces(&p("21"), 2, Some(1));
        assert!(it.next().unwrap().is_ok());
        assert_eq!(
            it.next(),
            Some(Err(MachineError::LimitExceeded { limit: 1 }))
        );
        assert_eq!(it.next(), None);
        let exact: Vec<_> = enumerate_sorting_traces(&p("21"), 2, Some(2)).collect();
        assert!(exact.iter().all(Result::is_ok));
    }

    #[test]
    fn enumerator_unsortable_is_empty() {
        assert_eq!(enumerate_sorting_traces(&p("231"), 1, None).count(), 0);
    }

    #[test]
    fn every_243651_trace_holds_6_and_5_together_in_r() {
        let q = p("243651");
        let mut count = 0;
        for t in enumerate_sorting_traces(&q, 3, None) {
            let t = t.unwrap();
            count += 1;
            let mut c = MachineConfig::new(&q, 3);
            let mut together = c.in_r(6) && c.in_r(5);
            for &m in t.moves() {
                c.apply(m).unwrap();
                together |= c.in_r(6) && c.in_r(5);
            }
            assert!(together, "{t}");
        }
        assert!(count > 0);
    }

    #[test]
    fn config_diagram() {
        let c = MachineConfig::new(&p("231"), 2)
            .apply_move(Move::InputToR)
            .unwrap();
        assert_eq!(c.to_string(), "out<1 | L[] | R[2] | in[3 1]");
    }
}
