//! Descent and ascent sets, descent words and d-equivalence.
//!
//! Positions are 1-based. Equal neighbours are neither a descent nor an ascent.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::word::Word;

/// Positions `i` with `w[i] > w[i+1]`.
pub fn descent_set(w: &[u32]) -> Vec<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

/// Positions `i` with `w[i] < w[i+1]`.
pub fn ascent_set(w: &[u32]) -> Vec<usize> {
    (1..w.len()).filter(|&i| w[i - 1] < w[i]).collect()
}

/// Bitmask form of the descent set: bit `i - 1` is set for descent `i`.
/// Words longer than 64 are not supported here.
pub(crate) fn descent_mask(w: &[u32]) -> u64 {
    let mut mask = 0u64;
    for i in 1..w.len() {
        if w[i - 1] > w[i] {
            mask |= 1 << (i - 1);
        }
    }
    mask
}

pub(crate) fn ascent_mask(w: &[u32]) -> u64 {
    let mut mask = 0u64;
    for i in 1..w.len() {
        if w[i - 1] < w[i] {
            mask |= 1 << (i - 1);
        }
    }
    mask
}

/// Same length, same descent set and same underlying alphabet.
pub fn d_equivalent(v: &Word, w: &Word) -> bool {
    descent_equivalent(v, w) && v.underlying_alphabet() == w.underlying_alphabet()
}

/// Same length and same descent set.
pub fn descent_equivalent(v: &Word, w: &Word) -> bool {
    v.len() == w.len()
        && v.windows(2)
            .zip(w.windows(2))
            .all(|(a, b)| (a[0] > a[1]) == (b[0] > b[1]))
}

/// Checks that positions are strictly increasing and inside `1..length`.
pub fn validate_descents(descents: &[usize], length: usize) -> Result<()> {
    let mut previous = 0;
    for &position in descents {
        if position == 0 || position >= length.max(1) || position <= previous {
            return Err(Error::InvalidDescentPosition { position, length });
        }
        previous = position;
    }
    Ok(())
}

/// Binary encoding `b` of a descent set; `b[n-1]` is always 0.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DescentWord(Vec<bool>);

impl DescentWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.last() == Some(&true) {
            return Err(Error::InvalidDescentWord);
        }
        Ok(DescentWord(bits))
    }

    pub fn of(w: &[u32]) -> Self {
        let mut bits = alloc::vec![false; w.len()];
        for i in descent_set(w) {
            bits[i - 1] = true;
        }
        DescentWord(bits)
    }

    pub fn from_descents(length: usize, descents: &[usize]) -> Result<Self> {
        validate_descents(descents, length)?;
        let mut bits = alloc::vec![false; length];
        for &i in descents {
            bits[i - 1] = true;
        }
        Ok(DescentWord(bits))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..=self.0.len()).filter(|&i| self.0[i - 1]).collect()
    }
}

pub fn descent_word(w: &Word) -> DescentWord {
    DescentWord::of(w)
}

impl fmt::Display for DescentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DescentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DescentWord({self})")
    }
}

impl FromStr for DescentWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    what: "descent word",
                    input: s.to_string(),
                    reason: "expected a string of 0s and 1s",
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        DescentWord::new(bits)
    }
}

/// Parses a comma-separated position list; empty input, `-` and `{}` mean the empty set.
pub fn parse_positions(s: &str) -> Result<Vec<usize>> {
    let trimmed = s
        .trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .trim();
    if trimmed.is_empty() || trimmed == "-" {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                what: "position set",
                input: s.to_string(),
                reason: "expected comma-separated positions",
            })
        })
        .collect()
}

/// Comma-separated rendering of a position set.
pub struct Positions<'a>(pub &'a [usize]);

impl fmt::Display for Positions<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, p) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn descent_examples() {
        assert_eq!(descent_set(&w("21354")), vec![1, 4]);
        assert!(descent_set(&w("12345")).is_empty());
        assert_eq!(descent_set(&w("31443")), vec![1, 4]);
        assert!(descent_set(&Word::empty()).is_empty());
        assert!(descent_set(&w("7")).is_empty());
    }

    #[test]
    fn ascent_examples() {
        assert_eq!(ascent_set(&w("1123")), vec![2, 3]);
        assert!(ascent_set(&w("54321")).is_empty());
        assert_eq!(ascent_set(&w("2213")), vec![3]);
    }

    #[test]
    fn descent_word_examples() {
        assert_eq!(descent_word(&w("432411231")).to_string(), "110100010");
        assert_eq!(descent_word(&w("111")).to_string(), "000");
        assert_eq!(descent_word(&w("1332")).to_string(), "0010");
        assert_eq!("110".parse::<DescentWord>().unwrap().descents(), vec![1, 2]);
        assert_eq!("01".parse::<DescentWord>(), Err(Error::InvalidDescentWord));
    }

    #[test]
    fn d_equivalence_examples() {
        assert!(d_equivalent(&w("31443"), &w("41131")));
        assert!(!d_equivalent(&w("31443"), &w("21332")));
        assert!(descent_equivalent(&w("31443"), &w("21332")));
        assert!(d_equivalent(&w("1332"), &w("1332")));
    }

    #[test]
    fn descent_validation() {
        assert!(validate_descents(&[1, 4], 5).is_ok());
        assert!(validate_descents(&[], 0).is_ok());
        assert!(validate_descents(&[5], 5).is_err());
        assert!(validate_descents(&[0], 5).is_err());
        assert!(validate_descents(&[3, 2], 5).is_err());
    }

    #[test]
    fn position_text() {
        assert_eq!(parse_positions("1,4").unwrap(), vec![1, 4]);
        assert_eq!(parse_positions("{2, 3}").unwrap(), vec![2, 3]);
        assert!(parse_positions("").unwrap().is_empty());
        assert!(parse_positions("a").is_err());
        assert_eq!(alloc::format!("{}", Positions(&[2, 8, 10])), "2,8,10");
    }
}
