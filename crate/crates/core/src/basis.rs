//! Length-by-length enumeration of sortable permutations and of the basis
//! (minimal unsortable permutations).
//!
//! Sortability is closed under deletion, so every sortable permutation of
//! length `n` is a one-point extension of a sortable permutation of length
//! `n - 1`. A sweep step therefore only looks at extensions of the previous
//! length's sortable set. A candidate survives screening when all of its
//! deletions are sortable; each survivor is then either sortable or a basis
//! element.
//!
//! Each candidate is emitted only from its smallest deletion (in packed
//! order), so shards do not produce the same candidate from different
//! parents. Candidates are still merged, sorted and deduplicated before
//! any decision is made.
//!
//! Checkpoint files are bit-exact: magic `SPRM`, version byte `0x01`, one
//! byte `n`, one byte `t`, a little-endian `u64` record count, then the
//! records as little-endian `u64` packed permutations in ascending order.

use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::machine::{decide_sortable, Decider};
use crate::perm::{packed, Permutation};

pub const MAGIC: [u8; 4] = *b"SPRM";
pub const FORMAT_VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 4 + 1 + 1 + 1 + 8;
/// Longest length swept without `allow_long`.
pub const DESK_SCALE_MAX_LEN: usize = 10;

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("checkpoint is for n={found_n}, t={found_depth}; expected n={expected_n}, t={expected_depth}")]
    CheckpointMismatch {
        expected_n: usize,
        expected_depth: usize,
        found_n: usize,
        found_depth: usize,
    },
    #[error("length {n} not allowed: {reason}")]
    ResourceBudgetExceeded { n: usize, reason: String },
    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: String, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn corrupt(path: &str, reason: impl Into<String>) -> BasisError {
    BasisError::CorruptCheckpoint {
        path: path.to_string(),
        reason: reason.into(),
    }
}

/// Every sortable permutation of one length, packed and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCheckpoint {
    n: usize,
    depth: usize,
    records: Vec<u64>,
}

impl SweepCheckpoint {
    /// The length-0 starting point: a single empty permutation.
    pub fn seed(depth: usize) -> Self {
        Self {
            n: 0,
            depth,
            records: vec![0],
        }
    }

    /// `records` must be strictly ascending.
    pub fn new(n: usize, depth: usize, records: Vec<u64>) -> Result<Self, BasisError> {
        if n > packed::MAX_LEN {
            return Err(corrupt(
                "<memory>",
                format!("length {n} exceeds packed bound"),
            ));
        }
        if records.windows(2).any(|w| w[0] >= w[1]) {
            return Err(corrupt("<memory>", "records not strictly ascending"));
        }
        Ok(Self { n, depth, records })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn count(&self) -> u64 {
        self.records.len() as u64
    }

    pub fn records(&self) -> &[u64] {
        &self.records
    }

    pub fn contains(&self, word: u64) -> bool {
        self.records.binary_search(&word).is_ok()
    }

    pub fn permutations(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.records
            .iter()
            .map(|&w| Permutation::from_packed(w, self.n).expect("valid record"))
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(&self.header_bytes())?;
        let mut buf = Vec::with_capacity(8 * 4096);
        for chunk in self.records.chunks(4096) {
            buf.clear();
            for r in chunk {
                buf.extend_from_slice(&r.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        w.flush()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.records.len());
        self.write_to(&mut out).expect("writing to memory");
        out
    }

    fn header_bytes(&self) -> [u8; HEADER_LEN] {
        let mut h = [0u8; HEADER_LEN];
        h[..4].copy_from_slice(&MAGIC);
        h[4] = FORMAT_VERSION;
        h[5] = self.n as u8;
        h[6] = self.depth as u8;
        h[7..].copy_from_slice(&self.count().to_le_bytes());
        h
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, BasisError> {
        Self::read_from(bytes, "<memory>")
    }

    pub fn read_from<R: Read>(mut r: R, origin: &str) -> Result<Self, BasisError> {
        let header = read_header(&mut r, origin)?;
        let mut records = Vec::with_capacity(header.count.min(1 << 28) as usize);
        let mut buf = [0u8; 8];
        for _ in 0..header.count {
            r.read_exact(&mut buf)
                .map_err(|_| corrupt(origin, "fewer records than the header count"))?;
            records.push(u64::from_le_bytes(buf));
        }
        if r.read(&mut buf)? != 0 {
            return Err(corrupt(origin, "trailing bytes after the last record"));
        }
        if records.windows(2).any(|w| w[0] >= w[1]) {
            return Err(corrupt(origin, "records not strictly ascending"));
        }
        let n = header.n;
        let valid = |&w: &u64| {
            (n == 0 && w == 0)
                || (n > 0 && Permutation::from_packed(w, n).is_ok_and(|p| p.to_packed() == Ok(w)))
        };
        if let Some(bad) = records.iter().find(|w| !valid(w)) {
            return Err(corrupt(
                origin,
                format!("record {bad:#x} is not a permutation"),
            ));
        }
        Ok(Self {
            n,
            depth: header.depth,
            records,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), BasisError> {
        let tmp = path.with_extension("tmp");
        {
            let f = fs::File::create(&tmp)?;
            self.write_to(io::BufWriter::new(f))?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, BasisError> {
        let f = fs::File::open(path)?;
        Self::read_from(BufReader::new(f), &path.display().to_string())
    }
}

struct Header {
    n: usize,
    depth: usize,
    count: u64,
}

fn read_header<R: Read>(r: &mut R, origin: &str) -> Result<Header, BasisError> {
    let mut h = [0u8; HEADER_LEN];
    r.read_exact(&mut h)
        .map_err(|_| corrupt(origin, "truncated header"))?;
    if h[..4] != MAGIC {
        return Err(corrupt(origin, "bad magic"));
    }
    if h[4] != FORMAT_VERSION {
        return Err(corrupt(origin, format!("unsupported version {}", h[4])));
    }
    let n = h[5] as usize;
    if n > packed::MAX_LEN {
        return Err(corrupt(origin, format!("length {n} exceeds packed bound")));
    }
    let count = u64::from_le_bytes(h[7..].try_into().expect("8 bytes"));
    Ok(Header {
        n,
        depth: h[6] as usize,
        count,
    })
}

/// A minimal unsortable permutation at some depth.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisRecord {
    pub perm: Permutation,
    pub length: usize,
    pub depth: usize,
    /// Unsortable, and every one-point deletion sortable, as re-decided.
    pub verified: bool,
}

impl BasisRecord {
    pub fn verify(perm: Permutation, depth: usize) -> Self {
        let verified = !decide_sortable(&perm, depth)
            && perm.deletions().all(|(_, d)| decide_sortable(&d, depth));
        Self {
            length: perm.len(),
            perm,
            depth,
            verified,
        }
    }

    pub fn to_row(&self) -> BasisRow {
        BasisRow {
            n: self.length,
            depth: self.depth,
            perm: self.perm.entries().to_vec(),
        }
    }
}

/// JSONL row: `{"n":…,"depth":…,"perm":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRow {
    pub n: usize,
    pub depth: usize,
    pub perm: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub jobs: usize,
    pub allow_long: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            allow_long: false,
        }
    }
}

/// Result of extending one length.
#[derive(Debug, Clone)]
pub struct SweepStep {
    pub checkpoint: SweepCheckpoint,
    pub basis: Vec<BasisRecord>,
}

/// Extends `prev` (all sortable permutations of length `n - 1`) to length
/// `n`.
pub fn sweep_step(
    n: usize,
    depth: usize,
    prev: &SweepCheckpoint,
    opts: SweepOptions,
) -> Result<SweepStep, BasisError> {
    check_request(n, depth, opts)?;
    if prev.n + 1 != n || prev.depth != depth {
        return Err(BasisError::CheckpointMismatch {
            expected_n: n - 1,
            expected_depth: depth,
            found_n: prev.n,
            found_depth: prev.depth,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| io::Error::other(e.to_string()))?;
    let shard = prev.records.len().div_ceil(opts.jobs.max(1) * 8).max(1);

    let (sortable, unsortable) = pool.install(|| {
        let mut candidates: Vec<u64> = prev
            .records
            .par_chunks(shard)
            .map(|chunk| screened_extensions(chunk, prev))
            .flatten_iter()
            .collect();
        candidates.par_sort_unstable();
        candidates.dedup();

        let decided: Vec<(Vec<u64>, Vec<u64>)> = candidates
            .par_chunks(shard)
            .map(|chunk| {
                let mut decider = Decider::new(depth);
                let mut values = [0u32; packed::MAX_LEN];
                let (mut yes, mut no) = (Vec::new(), Vec::new());
                for &c in chunk {
                    values[..n].copy_from_slice(&packed::unpack(c, n)[..n]);
                    if decider.is_sortable(&values[..n]) {
                        yes.push(c);
                    } else {
                        no.push(c);
                    }
                }
                (yes, no)
            })
            .collect();
        let mut sortable = Vec::new();
        let mut unsortable = Vec::new();
        for (yes, no) in decided {
            sortable.extend(yes);
            unsortable.extend(no);
        }
        (sortable, unsortable)
    });

    let basis = unsortable
        .into_iter()
        .map(|w| BasisRecord::verify(Permutation::from_packed(w, n).expect("valid"), depth))
        .collect();
    Ok(SweepStep {
        checkpoint: SweepCheckpoint {
            n,
            depth,
            records: sortable,
        },
        basis,
    })
}

fn check_request(n: usize, depth: usize, opts: SweepOptions) -> Result<(), BasisError> {
    if n == 0 || n > packed::MAX_LEN {
        return Err(BasisError::ResourceBudgetExceeded {
            n,
            reason: format!("lengths 1..={} only", packed::MAX_LEN),
        });
    }
    if n > DESK_SCALE_MAX_LEN && !opts.allow_long {
        return Err(BasisError::ResourceBudgetExceeded {
            n,
            reason: format!("lengths above {DESK_SCALE_MAX_LEN} need allow_long"),
        });
    }
    if depth == 0 || depth > u8::MAX as usize {
        return Err(BasisError::ResourceBudgetExceeded {
            n,
            reason: format!("depth {depth} outside 1..=255"),
        });
    }
    Ok(())
}

/// Extensions of each parent in `chunk` whose deletions all lie in `prev`
/// and whose smallest deletion is that parent.
fn screened_extensions(chunk: &[u64], prev: &SweepCheckpoint) -> Vec<u64> {
    let m = prev.n;
    let n = m + 1;
    let mut out = Vec::new();
    let mut dels = [0u64; packed::MAX_LEN];
    for &parent in chunk {
        for pos in 0..n {
            for value in 1..=n as u32 {
                let c = if m == 0 {
                    0
                } else {
                    packed::insert(parent, m, pos, value)
                };
                let mut canonical = true;
                for (k, d) in dels.iter_mut().enumerate().take(n) {
                    *d = if m == 0 { 0 } else { packed::delete(c, n, k) };
                    if *d < parent {
                        canonical = false;
                        break;
                    }
                }
                if canonical && dels[..n].iter().all(|&d| d == parent || prev.contains(d)) {
                    out.push(c);
                }
            }
        }
    }
    out
}

pub fn count_sortable(
    n: usize,
    depth: usize,
    prev: &SweepCheckpoint,
    opts: SweepOptions,
) -> Result<(u64, SweepCheckpoint), BasisError> {
    let step = sweep_step(n, depth, prev, opts)?;
    Ok((step.checkpoint.count(), step.checkpoint))
}

pub fn enumerate_basis(
    n: usize,
    depth: usize,
    prev: &SweepCheckpoint,
    opts: SweepOptions,
) -> Result<Vec<BasisRecord>, BasisError> {
    Ok(sweep_step(n, depth, prev, opts)?.basis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub sortable: u64,
    pub basis: u64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub depth: usize,
    pub rows: Vec<SweepRow>,
    /// Basis elements of every length swept, by length then packed order.
    pub basis: Vec<BasisRecord>,
    /// Longest length loaded from disk rather than computed.
    pub resumed_from: Option<usize>,
}

pub fn checkpoint_path(dir: &Path, n: usize, depth: usize) -> PathBuf {
    dir.join(format!("sortable-t{depth}-n{n:02}.sprm"))
}

pub fn basis_path(dir: &Path, n: usize, depth: usize) -> PathBuf {
    dir.join(format!("basis-t{depth}-n{n:02}.jsonl"))
}

/// Sweeps lengths `1..=n_max`. With a checkpoint directory, lengths already
/// on disk (checkpoint plus basis list) are loaded instead of recomputed,
/// and every new length is written out before the next one starts.
pub fn run_length_sweep(
    n_max: usize,
    depth: usize,
    checkpoint_dir: Option<&Path>,
    opts: SweepOptions,
) -> Result<SweepReport, BasisError> {
    for n in 1..=n_max {
        check_request(n, depth, opts)?;
    }
    if let Some(dir) = checkpoint_dir {
        fs::create_dir_all(dir)?;
    }

    // highest k with every length 1..=k on disk
    let mut on_disk = 0;
    if let Some(dir) = checkpoint_dir {
        while on_disk < n_max
            && checkpoint_path(dir, on_disk + 1, depth).exists()
            && basis_path(dir, on_disk + 1, depth).exists()
        {
            on_disk += 1;
        }
    }

    let mut rows = Vec::with_capacity(n_max);
    let mut basis = Vec::new();
    let mut prev = SweepCheckpoint::seed(depth);
    for n in 1..=n_max {
        let (count, elements) = if n <= on_disk {
            let dir = checkpoint_dir.expect("on_disk > 0 only with a directory");
            let elements = load_basis(&basis_path(dir, n, depth), n, depth)?;
            let path = checkpoint_path(dir, n, depth);
            let count = if n == on_disk {
                prev = SweepCheckpoint::load(&path)?;
                check_loaded(&prev, &path, n, depth)?;
                prev.count()
            } else {
                peek_count(&path, n, depth)?
            };
            (count, elements)
        } else {
            let step = sweep_step(n, depth, &prev, opts)?;
            if let Some(dir) = checkpoint_dir {
                step.checkpoint.save(&checkpoint_path(dir, n, depth))?;
                save_basis(&basis_path(dir, n, depth), &step.basis)?;
            }
            prev = step.checkpoint;
            (prev.count(), step.basis)
        };
        rows.push(SweepRow {
            n,
            sortable: count,
            basis: elements.len() as u64,
        });
        basis.extend(elements);
    }
    Ok(SweepReport {
        depth,
        rows,
        basis,
        resumed_from: (on_disk > 0).then_some(on_disk),
    })
}

fn check_loaded(
    c: &SweepCheckpoint,
    path: &Path,
    n: usize,
    depth: usize,
) -> Result<(), BasisError> {
    if c.n != n || c.depth != depth {
        return Err(corrupt(
            &path.display().to_string(),
            format!("header says n={}, t={}", c.n, c.depth),
        ));
    }
    Ok(())
}

/// Header-only validation for lengths below the resume point.
fn peek_count(path: &Path, n: usize, depth: usize) -> Result<u64, BasisError> {
    let origin = path.display().to_string();
    let mut f = fs::File::open(path)?;
    let header = read_header(&mut f, &origin)?;
    if header.n != n || header.depth != depth {
        return Err(corrupt(
            &origin,
            format!("header says n={}, t={}", header.n, header.depth),
        ));
    }
    let size = f.metadata()?.len();
    if size != HEADER_LEN as u64 + 8 * header.count {
        return Err(corrupt(&origin, "file length disagrees with record count"));
    }
    Ok(header.count)
}

fn save_basis(path: &Path, records: &[BasisRecord]) -> Result<(), BasisError> {
    let tmp = path.with_extension("tmp");
    {
        let mut w = io::BufWriter::new(fs::File::create(&tmp)?);
        for r in records {
            serde_json::to_writer(&mut w, &r.to_row()).map_err(io::Error::other)?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_basis(path: &Path, n: usize, depth: usize) -> Result<Vec<BasisRecord>, BasisError> {
    let origin = path.display().to_string();
    let f = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: BasisRow =
            serde_json::from_str(&line).map_err(|e| corrupt(&origin, e.to_string()))?;
        if row.n != n || row.depth != depth || row.perm.len() != n {
            return Err(corrupt(&origin, "row for the wrong length or depth"));
        }
        let perm = Permutation::new(row.perm).map_err(|e| corrupt(&origin, e.to_string()))?;
        out.push(BasisRecord::verify(perm, depth));
    }
    Ok(out)
}
