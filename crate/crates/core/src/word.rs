//! Words over the positive integers.
//!
//! A [`Word`] is the common carrier for host words, patterns and permutations.
//! Text form: contiguous digits when every entry is at most 9 (`31443`),
//! comma-separated integers otherwise (`10,2,10,1`).

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    /// Builds a word, rejecting zero entries.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        Ok(Word(entries))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(!entries.contains(&0));
        Word(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// Maximal entry, 0 for the empty word.
    pub fn arity(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn underlying_alphabet(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }

    /// True when the alphabet is exactly `{1, ..., arity}`.
    pub fn is_pattern(&self) -> bool {
        let mut seen = alloc::vec![false; self.arity() as usize];
        for &x in &self.0 {
            seen[x as usize - 1] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_permutation(&self) -> bool {
        self.arity() as usize == self.len() && self.is_pattern()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Maps every entry `x` to `q - x + 1` where `q` is this word's own maximum.
    pub fn complement(&self) -> Word {
        let q = self.arity();
        Word(self.0.iter().map(|&x| q - x + 1).collect())
    }

    /// The unique pattern order-isomorphic with this word.
    pub fn reduce(&self) -> Word {
        let distinct: Vec<u32> = self.underlying_alphabet().into_iter().collect();
        Word(
            self.0
                .iter()
                .map(|x| distinct.binary_search(x).unwrap() as u32 + 1)
                .collect(),
        )
    }

    /// Subword at the given 0-based indices.
    pub fn subword(&self, indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// Number of times `value` occurs.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.0.iter().filter(|&&x| x == value).count()
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

/// Same `<`, `=`, `>` relation between every pair of positions.
pub fn order_isomorphic(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i].cmp(&a[j]) != b[i].cmp(&b[j]) {
                return false;
            }
        }
    }
    true
}

impl Deref for Word {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Word::new(entries)
    }
}

impl TryFrom<&[u32]> for Word {
    type Error = Error;

    fn try_from(entries: &[u32]) -> Result<Self> {
        Word::new(entries.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, self.0.iter().map(|&x| Some(x)))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cells = parse_cells(s, "word", false)?;
        Ok(Word(cells.into_iter().map(|c| c.unwrap()).collect()))
    }
}

/// Shared writer for words and traces; `None` cells render as `_`.
pub(crate) fn write_entries<I>(f: &mut fmt::Formatter<'_>, cells: I) -> fmt::Result
where
    I: Iterator<Item = Option<u32>> + Clone,
{
    let compact = cells.clone().all(|c| c.is_none_or(|x| x <= 9));
    for (idx, cell) in cells.enumerate() {
        if !compact && idx > 0 {
            f.write_str(",")?;
        }
        match cell {
            Some(x) => write!(f, "{x}")?,
            None => f.write_str("_")?,
        }
    }
    Ok(())
}

pub(crate) fn parse_cells(s: &str, what: &'static str, holes: bool) -> Result<Vec<Option<u32>>> {
    let s = s.trim();
    let err = |reason| Error::Parse {
        what,
        input: s.to_string(),
        reason,
    };
    let parse_one = |tok: &str| -> Result<Option<u32>> {
        if holes && tok == "_" {
            return Ok(None);
        }
        let x: u32 = tok
            .parse()
            .map_err(|_| err("expected a positive integer"))?;
        if x == 0 {
            return Err(err("entries must be positive"));
        }
        Ok(Some(x))
    };
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',').map(|tok| parse_one(tok.trim())).collect()
    } else {
        let mut buf = [0u8; 4];
        s.chars()
            .map(|c| parse_one(c.encode_utf8(&mut buf)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(w("31443").entries(), &[3, 1, 4, 4, 3]);
        assert_eq!(w("10,2,10,1").entries(), &[10, 2, 10, 1]);
        assert_eq!(format!("{}", w("10,2,10,1")), "10,2,10,1");
        assert_eq!(format!("{}", w("31443")), "31443");
        assert_eq!(w("").len(), 0);
        assert!("1203".parse::<Word>().is_err());
        assert!("1,x".parse::<Word>().is_err());
        assert_eq!(Word::new(vec![1, 0]), Err(Error::ZeroEntry));
    }

    #[test]
    fn alphabet_examples() {
        assert_eq!(w("4313").underlying_alphabet(), [1, 3, 4].into());
        assert_eq!(w("4212").underlying_alphabet(), [1, 2, 4].into());
        assert_eq!(w("11111").underlying_alphabet(), [1].into());
    }

    #[test]
    fn reverse_and_complement() {
        assert_eq!(w("1123").complement(), w("3321"));
        assert_eq!(w("123").reverse(), w("321"));
        assert_eq!(w("4313").complement().complement(), w("4313"));
        assert_eq!(Word::empty().complement(), Word::empty());
    }

    #[test]
    fn reduction() {
        assert_eq!(w("3464").reduce(), w("1232"));
        assert_eq!(w("53").reduce(), w("21"));
        assert_eq!(w("1321").reduce(), w("1321"));
    }

    #[test]
    fn pattern_predicate() {
        assert!(w("1332").is_pattern());
        assert!(!w("1443").is_pattern());
        assert!(Word::empty().is_pattern());
        assert!(w("21354").is_permutation());
        assert!(!w("1332").is_permutation());
    }

    #[test]
    fn order_isomorphism_respects_equalities() {
        assert!(order_isomorphic(&[4, 4], &[3, 3]));
        assert!(!order_isomorphic(&[4, 5], &[3, 3]));
        assert!(order_isomorphic(&[1, 4, 3, 1], &[1, 3, 2, 1]));
    }
}
