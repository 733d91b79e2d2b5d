//! Permutations in one-line notation, pattern containment and the small
//! algebra (deletion, extension, shifting, concatenation) the rest of the
//! crate is built on.
//!
//! Indices are 1-based in every public signature.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("malformed token {token:?}")]
    Parse { token: String },
    #[error("empty permutation")]
    Empty,
    #[error("not a bijection on 1..{len}: {reason}")]
    NotABijection { len: usize, reason: String },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shifting {value} by {shift} gives a non-positive entry")]
    NonPositiveResult { value: u32, shift: i64 },
    #[error("entries of a value sequence must be distinct ({value} repeats)")]
    DuplicateValue { value: u32 },
    #[error("length {len} does not fit the packed encoding (max {max})", max = packed::MAX_LEN)]
    TooLongForPacking { len: usize },
}

/// A bijection on `{1..n}`, `n >= 1`, stored in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::Empty);
        }
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let idx = v as usize;
            if v == 0 || idx > n {
                return Err(PermError::NotABijection {
                    len: n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[idx] {
                return Err(PermError::NotABijection {
                    len: n,
                    reason: format!("value {v} repeats"),
                });
            }
            seen[idx] = true;
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have at least one entry");
        Self {
            entries: (1..=n as u32).collect(),
        }
    }

    /// Renormalizes any sequence of distinct values to `{1..n}`, keeping
    /// relative order.
    pub fn standardize(values: &[u32]) -> Result<Self, PermError> {
        let mut sorted: Vec<u32> = values.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PermError::DuplicateValue { value: w[0] });
        }
        let entries = values
            .iter()
            .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
            .collect();
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<u32> {
        i.checked_sub(1).and_then(|k| self.entries.get(k).copied())
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &v)| v as usize == k + 1)
    }

    /// Removes the entry at 1-based position `i` and renormalizes.
    pub fn delete_at(&self, i: usize) -> Result<Permutation, PermError> {
        let n = self.len();
        if i == 0 || i > n {
            return Err(PermError::IndexOutOfRange { index: i, len: n });
        }
        if n == 1 {
            return Err(PermError::Empty);
        }
        let removed = self.entries[i - 1];
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Permutation { entries })
    }

    /// Every one-point deletion, indexed by the deleted position (1-based).
    pub fn deletions(&self) -> impl Iterator<Item = (usize, Permutation)> + '_ {
        (1..=self.len()).filter_map(move |i| self.delete_at(i).ok().map(|q| (i, q)))
    }

    /// Inserts `value` (1..=n+1) before 1-based position `pos` (1..=n+1),
    /// shifting existing entries `>= value` up by one.
    pub fn insert(&self, pos: usize, value: u32) -> Result<Permutation, PermError> {
        let n = self.len();
        if pos == 0 || pos > n + 1 {
            return Err(PermError::IndexOutOfRange {
                index: pos,
                len: n + 1,
            });
        }
        if value == 0 || value as usize > n + 1 {
            return Err(PermError::IndexOutOfRange {
                index: value as usize,
                len: n + 1,
            });
        }
        let mut entries: Vec<u32> = self
            .entries
            .iter()
            .map(|&v| if v >= value { v + 1 } else { v })
            .collect();
        entries.insert(pos - 1, value);
        Ok(Permutation { entries })
    }

    /// All permutations of length `n + 1` with a one-point deletion equal to
    /// `self`.
    pub fn one_point_extensions(&self) -> BTreeSet<Permutation> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for pos in 1..=n + 1 {
            for value in 1..=n as u32 + 1 {
                out.insert(self.insert(pos, value).expect("in range"));
            }
        }
        out
    }

    pub fn to_packed(&self) -> Result<u64, PermError> {
        packed::pack(&self.entries).ok_or(PermError::TooLongForPacking { len: self.len() })
    }

    pub fn from_packed(word: u64, n: usize) -> Result<Permutation, PermError> {
        if n > packed::MAX_LEN {
            return Err(PermError::TooLongForPacking { len: n });
        }
        Permutation::new(packed::unpack(word, n)[..n].to_vec())
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        self.find_embedding(pattern).is_some()
    }

    /// First embedding of `pattern` in lexicographic index order, as
    /// 1-based positions.
    pub fn find_embedding(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        Embeddings::new(self, pattern).next()
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn concat(&self, rest: &ValueSequence) -> Result<Permutation, PermError> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(rest.entries());
        Permutation::new(entries)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.entries)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

fn write_spaced(f: &mut fmt::Formatter<'_>, entries: &[u32]) -> fmt::Result {
    for (k, v) in entries.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses whitespace- or comma-separated decimals, or a compact digit
/// string such as `243651` when every value is a single digit.
pub fn parse_permutation(text: &str) -> Result<Permutation, PermError> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(PermError::Empty);
    }
    let entries = if tokens.len() == 1 && tokens[0].len() > 1 {
        tokens[0]
            .chars()
            .map(|c| {
                c.to_digit(10).ok_or_else(|| PermError::Parse {
                    token: c.to_string(),
                })
            })
            .collect::<Result<Vec<u32>, _>>()?
    } else {
        tokens
            .iter()
            .map(|t| {
                t.parse::<u32>().map_err(|_| PermError::Parse {
                    token: (*t).to_string(),
                })
            })
            .collect::<Result<Vec<u32>, _>>()?
    };
    Permutation::new(entries)
}

/// Distinct positive values that need not form a bijection; the building
/// blocks of the antichain constructions before they are concatenated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ValueSequence {
    entries: Vec<u32>,
}

impl ValueSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self, PermError> {
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PermError::DuplicateValue { value: w[0] });
        }
        if sorted.first() == Some(&0) {
            return Err(PermError::Parse {
                token: "0".to_string(),
            });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `m` to every entry.
    pub fn shift(&self, m: i64) -> Result<ValueSequence, PermError> {
        let entries = self
            .entries
            .iter()
            .map(|&v| {
                let s = v as i64 + m;
                if s < 1 || s > u32::MAX as i64 {
                    Err(PermError::NonPositiveResult { value: v, shift: m })
                } else {
                    Ok(s as u32)
                }
            })
            .collect::<Result<Vec<u32>, _>>()?;
        Ok(ValueSequence { entries })
    }

    pub fn concat(&self, other: &ValueSequence) -> Result<ValueSequence, PermError> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ValueSequence::new(entries)
    }

    pub fn into_permutation(self) -> Result<Permutation, PermError> {
        Permutation::new(self.entries)
    }
}

impl From<&Permutation> for ValueSequence {
    fn from(p: &Permutation) -> Self {
        ValueSequence {
            entries: p.entries.clone(),
        }
    }
}

impl fmt::Display for ValueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.entries)
    }
}

impl fmt::Debug for ValueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// `shift(v, m)`: entry-wise addition.
pub fn shift(v: &ValueSequence, m: i64) -> Result<ValueSequence, PermError> {
    v.shift(m)
}

/// Iterator over every embedding of a pattern in a text permutation, in
/// lexicographic order of the (1-based) index tuples.
///
/// Backtracks over positions; the value of each new pattern entry is
/// confined to the window between the already-placed entries that are its
/// nearest neighbours in value.
pub struct Embeddings<'a> {
    text: &'a [u32],
    pattern_len: usize,
    // For pattern entry k: the earlier pattern entry just below / above it
    // in value, if any.
    lower: Vec<Option<usize>>,
    upper: Vec<Option<usize>>,
    chosen: Vec<usize>,
    next_start: usize,
    done: bool,
}

impl<'a> Embeddings<'a> {
    pub fn new(text: &'a Permutation, pattern: &Permutation) -> Self {
        let q = pattern.entries();
        let m = q.len();
        let mut lower = Vec::with_capacity(m);
        let mut upper = Vec::with_capacity(m);
        for k in 0..m {
            let below = (0..k).filter(|&j| q[j] < q[k]).max_by_key(|&j| q[j]);
            let above = (0..k).filter(|&j| q[j] > q[k]).min_by_key(|&j| q[j]);
            lower.push(below);
            upper.push(above);
        }
        Embeddings {
            text: text.entries(),
            pattern_len: m,
            lower,
            upper,
            chosen: Vec::with_capacity(m),
            next_start: 0,
            done: m > text.len(),
        }
    }

    fn fits(&self, k: usize, pos: usize) -> bool {
        let v = self.text[pos];
        if let Some(j) = self.lower[k] {
            if self.text[self.chosen[j]] >= v {
                return false;
            }
        }
        if let Some(j) = self.upper[k] {
            if self.text[self.chosen[j]] <= v {
                return false;
            }
        }
        true
    }
}

impl Iterator for Embeddings<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let n = self.text.len();
        let m = self.pattern_len;
        loop {
            let k = self.chosen.len();
            if k == m {
                let found: Vec<usize> = self.chosen.iter().map(|&p| p + 1).collect();
                // resume after the last chosen position
                self.next_start = self.chosen.pop().map_or(n, |p| p + 1);
                if m == 0 {
                    self.done = true;
                }
                return Some(found);
            }
            let last_pos = n - (m - k); // latest feasible position for entry k
            let mut placed = false;
            let mut pos = self.next_start;
            while pos <= last_pos && pos < n {
                if self.fits(k, pos) {
                    self.chosen.push(pos);
                    self.next_start = pos + 1;
                    placed = true;
                    break;
                }
                pos += 1;
            }
            if !placed {
                match self.chosen.pop() {
                    Some(p) => self.next_start = p + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

pub fn contains(p: &Permutation, q: &Permutation) -> bool {
    p.contains(q)
}

/// Checks that no member contains a different member. On failure returns
/// the offending `(container, contained)` pair.
pub fn find_antichain_violation(ps: &[Permutation]) -> Option<(&Permutation, &Permutation)> {
    for (a, p) in ps.iter().enumerate() {
        for (b, q) in ps.iter().enumerate() {
            if a != b && p != q && q.len() <= p.len() && p.contains(q) {
                return Some((p, q));
            }
        }
    }
    None
}

pub fn is_antichain(ps: &[Permutation]) -> bool {
    find_antichain_violation(ps).is_none()
}

/// Fixed-width 4-bit encoding for permutations of length at most 16.
///
/// Nibble `k` (counting from the least significant end) holds entry `k+1`
/// minus one, so value 16 fits. The length is carried out of band.
pub mod packed {
    pub const MAX_LEN: usize = 16;

    pub fn pack(entries: &[u32]) -> Option<u64> {
        if entries.len() > MAX_LEN {
            return None;
        }
        let mut word = 0u64;
        for (k, &v) in entries.iter().enumerate() {
            if v == 0 || v as usize > MAX_LEN {
                return None;
            }
            word |= ((v - 1) as u64) << (4 * k);
        }
        Some(word)
    }

    pub fn unpack(word: u64, n: usize) -> [u32; MAX_LEN] {
        let mut out = [0u32; MAX_LEN];
        for (k, slot) in out.iter_mut().enumerate().take(n) {
            *slot = ((word >> (4 * k)) & 0xf) as u32 + 1;
        }
        out
    }

    /// Deletes position `k` (0-based) of a packed length-`n` permutation.
    pub fn delete(word: u64, n: usize, k: usize) -> u64 {
        let removed = (word >> (4 * k)) & 0xf;
        let mut out = 0u64;
        let mut slot = 0;
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut v = (word >> (4 * j)) & 0xf;
            if v > removed {
                v -= 1;
            }
            out |= v << (4 * slot);
            slot += 1;
        }
        out
    }

    /// Inserts value `value` (1-based) at position `k` (0-based) into a
    /// packed length-`n` permutation; `n + 1 <= 16`.
    pub fn insert(word: u64, n: usize, k: usize, value: u32) -> u64 {
        let code = (value - 1) as u64;
        let mut out = 0u64;
        let mut slot = 0;
        for j in 0..=n {
            if j == k {
                out |= code << (4 * slot);
                slot += 1;
            }
            if j == n {
                break;
            }
            let mut v = (word >> (4 * j)) & 0xf;
            if v >= code {
                v += 1;
            }
            out |= v << (4 * slot);
            slot += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_both_text_forms() {
        assert_eq!(p("2 4 3 6 5 1").entries(), &[2, 4, 3, 6, 5, 1]);
        assert_eq!(p("243651"), p("2 4 3 6 5 1"));
        assert_eq!(p("2,4, 3,6 ,5,1"), p("243651"));
        assert_eq!(p("1").entries(), &[1]);
        assert_eq!(p("10 9 8 7 6 5 4 3 2 1").len(), 10);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_permutation("2 2 3"),
            Err(PermError::NotABijection { .. })
        ));
        assert!(matches!(
            parse_permutation("1 x 2"),
            Err(PermError::Parse { .. })
        ));
        assert!(matches!(
            parse_permutation("1 3"),
            Err(PermError::NotABijection { .. })
        ));
        assert_eq!(parse_permutation("  "), Err(PermError::Empty));
        assert!(parse_permutation("10").is_err());
    }

    #[test]
    fn containment_examples() {
        let text = p("512634");
        let pat = p("231");
        let w = text.find_embedding(&pat).unwrap();
        let values: Vec<u32> = w.iter().map(|&i| text.at(i).unwrap()).collect();
        assert_eq!(Permutation::standardize(&values).unwrap(), pat);
        // the subpermutation 5 6 3
        assert!(Embeddings::new(&text, &pat).any(|e| e == vec![1, 4, 6]));
        assert!(!p("123456").contains(&p("21")));
        assert!(text.contains(&text));
        assert!(!p("21").contains(&p("213")));
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(p("243651").delete_at(6).unwrap(), p("13254"));
        assert_eq!(p("231").delete_at(2).unwrap(), p("21"));
        for k in 1..=5 {
            assert_eq!(
                Permutation::identity(5).delete_at(k).unwrap(),
                Permutation::identity(4)
            );
        }
        assert!(matches!(
            p("231").delete_at(4),
            Err(PermError::IndexOutOfRange { .. })
        ));
        assert!(p("231").delete_at(0).is_err());
    }

    #[test]
    fn extension_examples() {
        let ext = p("1").one_point_extensions();
        assert_eq!(ext.into_iter().collect::<Vec<_>>(), vec![p("12"), p("21")]);
        assert!(p("13254").one_point_extensions().contains(&p("243651")));
        let base = p("3142");
        let ext = base.one_point_extensions();
        assert!(ext.len() <= 25);
        for q in &ext {
            assert!(q.deletions().any(|(_, d)| d == base));
        }
    }

    #[test]
    fn shift_examples() {
        let v = ValueSequence::new(vec![1, 2, 3]).unwrap();
        assert_eq!(shift(&v, 4).unwrap().entries(), &[5, 6, 7]);
        let w = ValueSequence::new(vec![13]).unwrap();
        assert_eq!(shift(&w, 6).unwrap().entries(), &[19]);
        assert_eq!(shift(&v, 0).unwrap(), v);
        assert!(matches!(
            shift(&v, -1),
            Err(PermError::NonPositiveResult { .. })
        ));
    }

    #[test]
    fn antichain_examples() {
        assert!(!is_antichain(&[p("231"), p("512634")]));
        let pair = [p("231"), p("512634")];
        let (big, small) = find_antichain_violation(&pair).unwrap();
        assert_eq!((big, small), (&p("512634"), &p("231")));
        assert!(is_antichain(&[]));
        assert!(is_antichain(&[p("231")]));
        assert!(is_antichain(&[p("231"), p("312")]));
    }

    #[test]
    fn packed_encoding_puts_first_entry_lowest() {
        assert_eq!(p("21").to_packed().unwrap(), 0x01);
        assert_eq!(p("12").to_packed().unwrap(), 0x10);
        let sixteen = Permutation::new((1..=16).rev().collect()).unwrap();
        let w = sixteen.to_packed().unwrap();
        assert_eq!(w & 0xf, 0xf);
        assert_eq!(Permutation::from_packed(w, 16).unwrap(), sixteen);
        let long = Permutation::identity(17);
        assert!(long.to_packed().is_err());
    }

    #[test]
    fn packed_delete_and_insert_match_general_form() {
        let q = p("243651");
        let w = q.to_packed().unwrap();
        for k in 0..6 {
            let d = packed::delete(w, 6, k);
            assert_eq!(
                Permutation::from_packed(d, 5).unwrap(),
                q.delete_at(k + 1).unwrap()
            );
        }
        for k in 0..=6 {
            for v in 1..=7 {
                let e = packed::insert(w, 6, k, v);
                assert_eq!(
                    Permutation::from_packed(e, 7).unwrap(),
                    q.insert(k + 1, v).unwrap()
                );
            }
        }
    }
}
