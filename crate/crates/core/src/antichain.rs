//! The infinite antichain family in the basis at depth 3, its depth-`t`
//! generalization, basis verification, an explicit (search-free) sorter for
//! every one-point deletion of a family member, and the lift of a basis
//! element from depth `t` to depth `t + 1`.
//!
//! Family members are built from
//!
//! ```text
//! P   = 2 4 3 7 6 1
//! x_j = (10 5 9)  + 6j
//! y_j = (13 12 8) + 6j
//! S_i = (14 15 11) + 6i
//! G_i = P x_0 y_0 x_1 y_1 … x_i y_i S_i          (length 6i + 15)
//! G_{i,t} = P x_0 y_0 … x_i y_i (14 15 … 12+t 11) + 6i   (length 6i + 12 + t)
//! ```

use rayon::prelude::*;
use thiserror::Error;

use crate::machine::{
    decide_sortable, validate_trace, MachineConfig, MachineError, Move, MoveSequence,
};
use crate::perm::{PermError, Permutation, ValueSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntichainError {
    #[error("family depth must be at least 3, got {0}")]
    DepthTooSmall(usize),
    #[error("position {position} out of range for G_{index} (length {len})")]
    PositionOutOfRange {
        index: usize,
        position: usize,
        len: usize,
    },
    #[error("no scripted case for deleting position {position} of G_{index}: {detail}")]
    UnhandledCase {
        index: usize,
        position: usize,
        detail: String,
    },
    #[error("{0} is not a basis element at depth {1}")]
    NotABasisElement(Permutation, usize),
    #[error("lifted permutation {lifted} is not a basis element at depth {depth}")]
    LiftFailed { lifted: Permutation, depth: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Index and depth of a family member; depth is at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AntichainSpec {
    index: usize,
    depth: usize,
}

impl AntichainSpec {
    pub fn new(index: usize, depth: usize) -> Result<Self, AntichainError> {
        if depth < 3 {
            return Err(AntichainError::DepthTooSmall(depth));
        }
        Ok(Self { index, depth })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn generate(&self) -> Permutation {
        generate_git(self.index, self.depth)
    }

    pub fn len(&self) -> usize {
        6 * self.index + 12 + self.depth
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

const PREFIX: [u32; 6] = [2, 4, 3, 7, 6, 1];
const X_BLOCK: [u32; 3] = [10, 5, 9];
const Y_BLOCK: [u32; 3] = [13, 12, 8];

fn block(base: &[u32], shift: usize) -> ValueSequence {
    ValueSequence::new(base.to_vec())
        .and_then(|v| v.shift(6 * shift as i64))
        .expect("positive shifted block")
}

/// `P x_0 y_0 … x_{k-1} y_{k-1}` for `k` block pairs.
fn prefix_with_blocks(pairs: usize) -> ValueSequence {
    let mut seq = ValueSequence::new(PREFIX.to_vec()).expect("prefix");
    for j in 0..pairs {
        seq = seq
            .concat(&block(&X_BLOCK, j))
            .and_then(|s| s.concat(&block(&Y_BLOCK, j)))
            .expect("blocks use fresh values");
    }
    seq
}

pub fn generate_gi(i: usize) -> Permutation {
    generate_git(i, 3)
}

/// The depth-`t` member: suffix `14 15 … 12+t 11`, shifted by `6i`.
pub fn generate_git(i: usize, t: usize) -> Permutation {
    assert!(t >= 3, "family depth must be at least 3");
    let mut suffix: Vec<u32> = (14..=12 + t as u32).collect();
    suffix.push(11);
    let suffix = block(&suffix, i);
    prefix_with_blocks(i + 1)
        .concat(&suffix)
        .and_then(ValueSequence::into_permutation)
        .expect("family members are permutations")
}

/// `2 4 3 7 6 1 8 9 5`: the member with no block pairs. It is a basis
/// element but is kept out of the family.
pub fn g_minus_one() -> Permutation {
    prefix_with_blocks(0)
        .concat(&block(&[14, 15, 11], 0).shift(-6).expect("positive"))
        .and_then(ValueSequence::into_permutation)
        .expect("permutation")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub perm: Permutation,
    pub depth: usize,
    pub sortable: bool,
    /// 1-based positions whose deletion is unsortable.
    pub unsortable_deletions: Vec<usize>,
}

impl MembershipReport {
    pub fn is_basis_element(&self) -> bool {
        !self.sortable && self.unsortable_deletions.is_empty()
    }
}

/// Decides the permutation and each of its one-point deletions (the latter
/// in parallel).
pub fn membership_report(p: &Permutation, t: usize) -> MembershipReport {
    let sortable = decide_sortable(p, t);
    let unsortable_deletions = (1..=p.len())
        .into_par_iter()
        .filter(|&i| match p.delete_at(i) {
            Ok(d) => !decide_sortable(&d, t),
            Err(_) => false,
        })
        .collect();
    MembershipReport {
        perm: p.clone(),
        depth: t,
        sortable,
        unsortable_deletions,
    }
}

/// Unsortable at depth `t`, with every one-point deletion sortable.
pub fn verify_basis_membership(p: &Permutation, t: usize) -> bool {
    !decide_sortable(p, t) && membership_report(p, t).is_basis_element()
}

/// Either `sigma` itself or `(2 1 3 + n) sigma`, whichever is a basis
/// element one depth up. The result is fully re-verified.
pub fn lift_basis_element(sigma: &Permutation, t: usize) -> Result<Permutation, AntichainError> {
    if !verify_basis_membership(sigma, t) {
        return Err(AntichainError::NotABasisElement(sigma.clone(), t));
    }
    let lifted = if decide_sortable(sigma, t + 1) {
        let n = sigma.len() as i64;
        let head = ValueSequence::new(vec![2, 1, 3])?.shift(n)?;
        head.concat(&ValueSequence::from(sigma))?
            .into_permutation()?
    } else {
        sigma.clone()
    };
    if !verify_basis_membership(&lifted, t + 1) {
        return Err(AntichainError::LiftFailed {
            lifted,
            depth: t + 1,
        });
    }
    Ok(lifted)
}

/// Where a position of `G_i` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Prefix,
    X(usize),
    Y(usize),
    Suffix,
}

/// Block and unshifted base value (`2..7`, `10/5/9`, `13/12/8`,
/// `14/15/11`) of 1-based `position` in `G_i`.
pub fn locate(i: usize, position: usize) -> Option<(Block, u32)> {
    let len = 6 * i + 15;
    if position == 0 || position > len {
        return None;
    }
    if position <= 6 {
        return Some((Block::Prefix, PREFIX[position - 1]));
    }
    let k = position - 7;
    let j = k / 6;
    if j <= i {
        let r = k % 6;
        return Some(if r < 3 {
            (Block::X(j), X_BLOCK[r])
        } else {
            (Block::Y(j), Y_BLOCK[r - 3])
        });
    }
    Some((Block::Suffix, [14, 15, 11][position - (13 + 6 * i)]))
}

/// One scripted instruction: bring a value (in `G_i`'s own numbering) to a
/// stage, via the shortest legal route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    /// Value is the next input: read it onto `R`.
    ToR(u32),
    /// Value is the next input or on top of `R`: move it onto `L`.
    ToL(u32),
    /// Value is the next input, top of `R` or top of `L`: output it.
    Out(u32),
    /// Named configuration the script should reach; checked, not executed.
    Expect(Snapshot),
}

/// A checkpoint in a scripted sort, in `G_i`'s numbering; values that were
/// deleted are skipped when comparing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Snapshot {
    name: Shape,
    j: usize,
    /// `R` bottom to top.
    r: [u32; 2],
    /// `L` bottom to top.
    l: [u32; 2],
    /// 1-based position in `G_i` of the next entry to be read.
    next_position: usize,
    /// Every value below this has been output, none above.
    output_below: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// `R` holds `10_j` under `9_j`; `y_j …` still to read.
    RHolds10And9,
    /// `L` holds `13_j` under `12_j`; `x_{j+1} …` (or the suffix) to read.
    LHolds13And12,
    /// `R` holds `13_{j-1}` under `12_{j-1}` (`7` under `6` for `j = 0`);
    /// `x_j …` to read.
    RHoldsPreviousPair,
    /// `L` holds `10_j` under `9_j`; `y_j …` to read.
    LHolds10And9,
}

impl Snapshot {
    fn r_holds_10_and_9(j: usize) -> Self {
        let s = 6 * j as u32;
        Snapshot {
            name: Shape::RHolds10And9,
            j,
            r: [10 + s, 9 + s],
            l: [0, 0],
            next_position: 10 + 6 * j,
            output_below: 8 + s,
        }
    }

    fn l_holds_13_and_12(j: usize) -> Self {
        let s = 6 * j as u32;
        Snapshot {
            name: Shape::LHolds13And12,
            j,
            r: [0, 0],
            l: [13 + s, 12 + s],
            next_position: 13 + 6 * j,
            output_below: 11 + s,
        }
    }

    fn r_holds_previous_pair(j: usize) -> Self {
        let s = 6 * j as u32;
        Snapshot {
            name: Shape::RHoldsPreviousPair,
            j,
            r: [7 + s, 6 + s],
            l: [0, 0],
            next_position: 7 + 6 * j,
            output_below: 5 + s,
        }
    }

    fn l_holds_10_and_9(j: usize) -> Self {
        let s = 6 * j as u32;
        Snapshot {
            name: Shape::LHolds10And9,
            j,
            r: [0, 0],
            l: [10 + s, 9 + s],
            next_position: 10 + 6 * j,
            output_below: 8 + s,
        }
    }
}

struct Script {
    i: usize,
    steps: Vec<Step>,
}

impl Script {
    fn new(i: usize) -> Self {
        Script {
            i,
            steps: Vec::new(),
        }
    }

    /// Base values shifted by `6j`.
    fn at(&mut self, j: usize, steps: &[Step]) -> &mut Self {
        let s = 6 * j as u32;
        self.steps.extend(steps.iter().map(|&st| match st {
            Step::ToR(v) => Step::ToR(v + s),
            Step::ToL(v) => Step::ToL(v + s),
            Step::Out(v) => Step::Out(v + s),
            Step::Expect(snap) => Step::Expect(snap),
        }));
        self
    }

    fn expect(&mut self, snap: Snapshot) -> &mut Self {
        self.steps.push(Step::Expect(snap));
        self
    }

    /// From `R = [10_j, 9_j]` (either may be missing) to the end.
    fn finish_from_r_pair(&mut self, j: usize) -> &mut Self {
        use Step::*;
        self.expect(Snapshot::r_holds_10_and_9(j));
        if j < self.i {
            self.at(
                j,
                &[
                    ToL(13),
                    ToL(12),
                    Out(8),
                    Out(9),
                    Out(10),
                    ToR(16),
                    Out(11),
                    Out(12),
                    Out(13),
                    ToR(15),
                ],
            );
            self.finish_from_r_pair(j + 1)
        } else {
            self.at(
                j,
                &[
                    ToL(13),
                    ToL(12),
                    Out(8),
                    Out(9),
                    Out(10),
                    ToR(14),
                    ToR(15),
                    Out(11),
                    Out(12),
                    Out(13),
                    ToL(15),
                    Out(14),
                    Out(15),
                ],
            )
        }
    }

    /// From `L = [13_j, 12_j]` (either may be missing) to the end.
    fn finish_from_l_pair(&mut self, j: usize) -> &mut Self {
        use Step::*;
        self.expect(Snapshot::l_holds_13_and_12(j));
        if j < self.i {
            self.at(j, &[ToR(16), Out(11), Out(12), Out(13), ToR(15)]);
            self.finish_from_r_pair(j + 1)
        } else {
            self.at(
                j,
                &[
                    ToR(14),
                    ToR(15),
                    Out(11),
                    Out(12),
                    Out(13),
                    ToL(15),
                    Out(14),
                    Out(15),
                ],
            )
        }
    }
}

/// Builds the sorting script for `G_i` with `position` deleted.
fn deletion_script(i: usize, position: usize) -> Result<(Script, u32), AntichainError> {
    use Step::*;
    let len = 6 * i + 15;
    let (block, role) = locate(i, position).ok_or(AntichainError::PositionOutOfRange {
        index: i,
        position,
        len,
    })?;
    let unhandled = |detail: &str| AntichainError::UnhandledCase {
        index: i,
        position,
        detail: detail.to_string(),
    };
    let mut s = Script::new(i);
    let deleted;
    match block {
        Block::Prefix => {
            deleted = role;
            match role {
                1 => s.at(
                    0,
                    &[
                        Out(2),
                        ToL(4),
                        Out(3),
                        Out(4),
                        ToL(7),
                        ToL(6),
                        ToR(10),
                        Out(5),
                        Out(6),
                        Out(7),
                        ToR(9),
                    ],
                ),
                // the remaining two of 2 4 3 go to R, then leave in order
                2 => s.at(
                    0,
                    &[
                        ToR(4),
                        ToR(3),
                        ToL(7),
                        ToL(6),
                        Out(1),
                        Out(3),
                        Out(4),
                        ToR(10),
                        Out(5),
                        Out(6),
                        Out(7),
                        ToR(9),
                    ],
                ),
                3 => s.at(
                    0,
                    &[
                        ToR(2),
                        ToR(4),
                        ToL(7),
                        ToL(6),
                        Out(1),
                        ToL(4),
                        Out(2),
                        Out(4),
                        ToR(10),
                        Out(5),
                        Out(6),
                        Out(7),
                        ToR(9),
                    ],
                ),
                4 => s.at(
                    0,
                    &[
                        ToR(2),
                        ToR(3),
                        ToL(7),
                        ToL(6),
                        Out(1),
                        ToL(3),
                        Out(2),
                        Out(3),
                        ToR(10),
                        Out(5),
                        Out(6),
                        Out(7),
                        ToR(9),
                    ],
                ),
                6 | 7 => {
                    let a = 13 - role;
                    s.at(
                        0,
                        &[
                            ToR(2),
                            ToL(4),
                            ToL(3),
                            ToL(2),
                            ToR(a),
                            Out(1),
                            Out(2),
                            Out(3),
                            Out(4),
                            ToL(a),
                            ToR(10),
                            Out(5),
                            Out(a),
                            ToR(9),
                        ],
                    )
                }
                _ => return Err(unhandled("prefix role")),
            };
            s.finish_from_r_pair(0);
        }
        Block::X(sx) => {
            deleted = role + 6 * sx as u32;
            s.at(
                0,
                &[
                    ToR(2),
                    ToL(4),
                    ToL(3),
                    ToL(2),
                    ToR(7),
                    ToR(6),
                    Out(1),
                    Out(2),
                    Out(3),
                    Out(4),
                ],
            );
            for j in 0..sx {
                s.expect(Snapshot::r_holds_previous_pair(j));
                s.at(
                    j,
                    &[
                        ToL(10),
                        Out(5),
                        Out(6),
                        Out(7),
                        ToL(9),
                        ToR(13),
                        ToR(12),
                        Out(8),
                        Out(9),
                        Out(10),
                    ],
                );
            }
            s.expect(Snapshot::r_holds_previous_pair(sx));
            match role {
                5 => {
                    s.at(sx, &[Out(6), Out(7), ToR(10), ToR(9)]);
                    s.finish_from_r_pair(sx);
                }
                10 => {
                    s.at(sx, &[Out(5), Out(6), Out(7), ToR(9)]);
                    s.finish_from_r_pair(sx);
                }
                9 => {
                    // 7 sits under 10 in R: park 13 then 10 in L so 7 can
                    // leave before 8
                    s.at(
                        sx,
                        &[
                            ToL(6),
                            ToR(10),
                            Out(5),
                            Out(6),
                            ToL(13),
                            ToL(10),
                            Out(7),
                            ToR(12),
                            Out(8),
                            Out(10),
                            ToL(12),
                        ],
                    );
                    s.finish_from_l_pair(sx);
                }
                _ => return Err(unhandled("x-block role")),
            }
        }
        Block::Y(_) | Block::Suffix => {
            let sy = match block {
                Block::Y(j) => j,
                _ => i,
            };
            deleted = role + 6 * sy as u32;
            s.at(
                0,
                &[
                    ToR(2),
                    ToL(4),
                    ToL(3),
                    ToL(2),
                    ToR(7),
                    ToR(6),
                    Out(1),
                    Out(2),
                    Out(3),
                    Out(4),
                    ToL(10),
                    Out(5),
                    Out(6),
                    Out(7),
                    ToL(9),
                ],
            );
            for j in 0..sy {
                s.expect(Snapshot::l_holds_10_and_9(j));
                s.at(
                    j,
                    &[
                        ToR(13),
                        ToR(12),
                        Out(8),
                        Out(9),
                        Out(10),
                        ToL(16),
                        Out(11),
                        Out(12),
                        Out(13),
                        ToL(15),
                    ],
                );
            }
            s.expect(Snapshot::l_holds_10_and_9(sy));
            match (block, role) {
                (Block::Y(_), 8) => {
                    s.at(sy, &[Out(9), Out(10), ToL(13), ToL(12)]);
                    s.finish_from_l_pair(sy);
                }
                (Block::Y(_), 12 | 13) => {
                    // the surviving one of 13, 12 waits in R
                    s.at(
                        sy,
                        &[ToR(13), ToR(12), Out(8), Out(9), Out(10), ToL(12), ToL(13)],
                    );
                    s.finish_from_l_pair(sy);
                }
                (Block::Suffix, 11) => {
                    s.at(
                        sy,
                        &[
                            ToR(13),
                            ToR(12),
                            Out(8),
                            Out(9),
                            Out(10),
                            Out(12),
                            Out(13),
                            Out(14),
                            Out(15),
                        ],
                    );
                }
                (Block::Suffix, 14 | 15) => {
                    s.at(
                        sy,
                        &[
                            ToR(13),
                            ToR(12),
                            Out(8),
                            Out(9),
                            Out(10),
                            ToL(12),
                            ToR(14),
                            ToR(15),
                            Out(11),
                            Out(12),
                            ToL(14),
                            ToL(15),
                            Out(13),
                            Out(14),
                            Out(15),
                        ],
                    );
                }
                _ => return Err(unhandled("y-block or suffix role")),
            }
        }
    }
    Ok((s, deleted))
}

/// Runs scripts against the machine in `G_i`'s numbering.
struct Runner {
    i: usize,
    position: usize,
    deleted: u32,
    config: MachineConfig,
    /// Rank of each surviving original value in the renormalized input.
    rank: Vec<u32>,
    moves: MoveSequence,
}

impl Runner {
    fn new(
        g: &Permutation,
        i: usize,
        position: usize,
        deleted: u32,
    ) -> Result<Self, AntichainError> {
        let reduced = g.delete_at(position)?;
        let mut rank = vec![0u32; g.len() + 1];
        for v in 1..=g.len() as u32 {
            rank[v as usize] = match v.cmp(&deleted) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => v - 1,
            };
        }
        Ok(Runner {
            i,
            position,
            deleted,
            config: MachineConfig::new(&reduced, 3),
            rank,
            moves: MoveSequence::new(),
        })
    }

    fn fail(&self, detail: String) -> AntichainError {
        AntichainError::UnhandledCase {
            index: self.i,
            position: self.position,
            detail,
        }
    }

    fn apply(&mut self, m: Move, v: u32) -> Result<(), AntichainError> {
        self.config.apply(m).map_err(|e| match e {
            MachineError::IllegalMove { .. } => {
                self.fail(format!("{m} illegal while routing {v} at {}", self.config))
            }
            other => self.fail(other.to_string()),
        })?;
        self.moves.push(m);
        Ok(())
    }

    fn run(&mut self, steps: &[Step]) -> Result<(), AntichainError> {
        for &step in steps {
            let (v, target) = match step {
                Step::Expect(snap) => {
                    self.check(snap)?;
                    continue;
                }
                Step::ToR(v) => (v, 0),
                Step::ToL(v) => (v, 1),
                Step::Out(v) => (v, 2),
            };
            if v == self.deleted {
                continue;
            }
            let x = self.rank[v as usize];
            let mut stage = if self.config.next_input() == Some(x) {
                -1
            } else if self.config.stack_r().last() == Some(&x) {
                0
            } else if self.config.stack_l().last() == Some(&x) {
                1
            } else {
                return Err(self.fail(format!("{v} is not reachable at {}", self.config)));
            };
            if stage >= target {
                return Err(self.fail(format!("{v} is already past the requested stage")));
            }
            while stage < target {
                let m = Move::ALL[(stage + 1) as usize];
                self.apply(m, v)?;
                stage += 1;
            }
        }
        Ok(())
    }

    fn present(&self, vals: &[u32]) -> Vec<u32> {
        vals.iter()
            .filter(|&&v| v != 0 && v != self.deleted)
            .map(|&v| self.rank[v as usize])
            .collect()
    }

    fn check(&self, snap: Snapshot) -> Result<(), AntichainError> {
        let c = &self.config;
        let consumed = c.input_cursor() - 1;
        let expected_consumed = (1..snap.next_position)
            .filter(|&k| k != self.position)
            .count();
        let smallest_pending = (snap.output_below..)
            .find(|&v| v != self.deleted)
            .map(|v| self.rank[v as usize])
            .expect("values are unbounded");
        let ok = c.stack_r() == self.present(&snap.r)
            && c.stack_l() == self.present(&snap.l)
            && consumed == expected_consumed
            && c.next_output() == smallest_pending.min(c.len() as u32 + 1);
        if ok {
            Ok(())
        } else {
            Err(self.fail(format!(
                "expected {:?} at j={}, found {}",
                snap.name, snap.j, c
            )))
        }
    }
}

/// Sorting process for `G_i` with 1-based `position` deleted, built from the
/// case analysis rather than by search. The trace is validated against
/// `delete_at(G_i, position)` at depth 3 before it is returned.
pub fn constructive_sort_deletion(
    i: usize,
    position: usize,
) -> Result<MoveSequence, AntichainError> {
    let g = generate_gi(i);
    let (script, deleted) = deletion_script(i, position)?;
    let mut runner = Runner::new(&g, i, position, deleted)?;
    runner.run(&script.steps)?;
    let reduced = g.delete_at(position)?;
    if !runner.config.is_sorted() || !validate_trace(&reduced, 3, &runner.moves) {
        return Err(runner.fail(format!("script ended at {}", runner.config)));
    }
    Ok(runner.moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::sort_witness;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn family_members() {
        assert_eq!(generate_gi(0), p("2 4 3 7 6 1 10 5 9 13 12 8 14 15 11"));
        assert_eq!(
            generate_gi(1),
            p("2 4 3 7 6 1 10 5 9 13 12 8 16 11 15 19 18 14 20 21 17")
        );
        assert_eq!(
            generate_gi(2),
            p("2 4 3 7 6 1 10 5 9 13 12 8 16 11 15 19 18 14 22 17 21 25 24 20 26 27 23")
        );
        for i in 0..6 {
            assert_eq!(generate_gi(i).len(), 6 * i + 15);
            assert_eq!(generate_git(i, 3), generate_gi(i));
        }
        assert_eq!(
            generate_git(0, 4),
            p("2 4 3 7 6 1 10 5 9 13 12 8 14 15 16 11")
        );
        for t in 3..7 {
            assert_eq!(generate_git(2, t).len(), 12 + 12 + t);
        }
        assert_eq!(g_minus_one(), p("2 4 3 7 6 1 8 9 5"));
    }

    #[test]
    fn spec_validates_depth() {
        assert_eq!(
            AntichainSpec::new(0, 2),
            Err(AntichainError::DepthTooSmall(2))
        );
        let s = AntichainSpec::new(1, 4).unwrap();
        assert_eq!(s.generate().len(), s.len());
    }

    #[test]
    fn basis_membership_examples() {
        assert!(verify_basis_membership(&generate_gi(0), 3));
        assert!(verify_basis_membership(&p("243761895"), 3));
        assert!(!verify_basis_membership(&Permutation::identity(7), 3));
        assert!(verify_basis_membership(&generate_git(0, 4), 4));
    }

    #[test]
    fn locate_positions() {
        assert_eq!(locate(0, 6), Some((Block::Prefix, 1)));
        assert_eq!(locate(0, 8), Some((Block::X(0), 5)));
        assert_eq!(locate(1, 15), Some((Block::X(1), 9)));
        assert_eq!(locate(1, 16), Some((Block::Y(1), 13)));
        assert_eq!(locate(1, 21), Some((Block::Suffix, 11)));
        assert_eq!(locate(1, 22), None);
        assert_eq!(locate(1, 0), None);
    }

    #[test]
    fn deleting_one_from_the_prefix() {
        let t = constructive_sort_deletion(0, 6).unwrap();
        assert!(validate_trace(&generate_gi(0).delete_at(6).unwrap(), 3, &t));
    }

    #[test]
    fn deleting_five_from_x0() {
        let t = constructive_sort_deletion(0, 8).unwrap();
        assert!(validate_trace(&generate_gi(0).delete_at(8).unwrap(), 3, &t));
    }

    #[test]
    fn every_deletion_of_g1() {
        let g = generate_gi(1);
        for pos in 1..=21 {
            let t = constructive_sort_deletion(1, pos)
                .unwrap_or_else(|e| panic!("position {pos}: {e}"));
            let reduced = g.delete_at(pos).unwrap();
            assert!(validate_trace(&reduced, 3, &t));
            assert!(sort_witness(&reduced, 3).is_some());
        }
    }

    #[test]
    fn out_of_range_position() {
        assert!(matches!(
            constructive_sort_deletion(0, 16),
            Err(AntichainError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_basis_element(&p("231"), 1).unwrap(), p("5 4 6 2 3 1"));
        assert!(matches!(
            lift_basis_element(&p("123"), 1),
            Err(AntichainError::NotABasisElement(..))
        ));
        let lifted = lift_basis_element(&p("4 2 5 6 3 1"), 3).unwrap();
        assert!(lifted.len() == 6 || lifted.len() == 9);
    }
}
