//! Lexicographically minimal patterns with a prescribed descent word.
//!
//! * [`alpha`]: minimal arity.
//! * [`omega`]: maximal arity `n`, always a permutation. It also fixes the order
//!   in which the entries of [`beta`] are covered.
//! * [`beta`]: any arity `q` between the two.

use alloc::vec::Vec;

use crate::descent::DescentWord;
use crate::error::{Error, Result};
use crate::word::Word;

/// One plus the length of the longest block of 1s; 0 for the empty descent word.
pub fn minimal_arity(b: &DescentWord) -> u32 {
    if b.is_empty() {
        return 0;
    }
    let mut longest = 0;
    let mut current = 0;
    for &bit in b.bits() {
        current = if bit { current + 1 } else { 0 };
        longest = longest.max(current);
    }
    longest as u32 + 1
}

/// `alpha[i]` is the distance from `i` to the next 0 of `b`, plus one.
pub fn alpha(b: &DescentWord) -> Word {
    let bits = b.bits();
    let mut out = alloc::vec![0u32; bits.len()];
    let mut next_zero = bits.len();
    for i in (0..bits.len()).rev() {
        if !bits[i] {
            next_zero = i;
        }
        out[i] = (next_zero - i + 1) as u32;
    }
    Word::from_vec_unchecked(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunKind {
    Descent,
    Ascent,
}

/// A maximal factor of a descent word; `start..=end` are 1-based positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub kind: RunKind,
    pub start: usize,
    pub end: usize,
}

impl Run {
    pub fn contains(&self, position: usize) -> bool {
        (self.start..=self.end).contains(&position)
    }
}

/// Runs in left-to-right order; they tile `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    pub runs: Vec<Run>,
}

impl RunDecomposition {
    /// Index of the run holding `position`.
    pub fn run_of(&self, position: usize) -> usize {
        self.runs
            .iter()
            .position(|r| r.contains(position))
            .expect("position outside the descent word")
    }

    /// Whether two positions sit in the same descent run.
    pub fn same_descent_run(&self, i: usize, j: usize) -> bool {
        let r = self.run_of(i);
        r == self.run_of(j) && self.runs[r].kind == RunKind::Descent
    }
}

/// Splits `b` into descent runs `1...10` and maximal blocks of 0s in between.
pub fn runs(b: &DescentWord) -> RunDecomposition {
    let bits = b.bits();
    let n = bits.len();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < n {
        if bits[i] {
            let start = i;
            while bits[i] {
                i += 1;
            }
            runs.push(Run {
                kind: RunKind::Descent,
                start: start + 1,
                end: i + 1,
            });
            i += 1;
        } else {
            let start = i;
            while i < n && !bits[i] {
                i += 1;
            }
            runs.push(Run {
                kind: RunKind::Ascent,
                start: start + 1,
                end: i,
            });
        }
    }
    RunDecomposition { runs }
}

/// The precedence relation on positions induced by the runs of `b`.
pub fn precedes(decomposition: &RunDecomposition, i: usize, j: usize) -> bool {
    let (ri, rj) = (decomposition.run_of(i), decomposition.run_of(j));
    let distinct_runs = ri != rj;
    let same_ascent = !distinct_runs && decomposition.runs[ri].kind == RunKind::Ascent;
    let same_descent = !distinct_runs && decomposition.runs[ri].kind == RunKind::Descent;
    debug_assert_eq!(
        u8::from(distinct_runs) + u8::from(same_ascent) + u8::from(same_descent),
        1
    );
    (distinct_runs && i < j) || (same_ascent && i < j) || (same_descent && i > j)
}

/// `omega[i]` is the rank of `i` in the precedence order.
pub fn omega(b: &DescentWord) -> Word {
    let n = b.len();
    let decomposition = runs(b);
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&i, &j| {
        if precedes(&decomposition, i, j) {
            core::cmp::Ordering::Less
        } else if precedes(&decomposition, j, i) {
            core::cmp::Ordering::Greater
        } else {
            core::cmp::Ordering::Equal
        }
    });
    let mut rank = alloc::vec![0u32; n];
    for (r, &position) in order.iter().enumerate() {
        rank[position - 1] = r as u32 + 1;
    }
    Word::from_vec_unchecked(rank)
}

/// Lexicographically minimal `q`-ary pattern with descent word `b`.
///
/// Entries are filled in the order `omega[1], omega[2], ...`: each one copies
/// `alpha` while the running maximum of the copied `alpha` entries is at least
/// `q - (n - i)`, and takes the value `q - (n - i)` otherwise.
pub fn beta(q: u32, b: &DescentWord) -> Result<Word> {
    let n = b.len();
    let min = minimal_arity(b);
    if q < min || q as usize > n {
        return Err(Error::ArityOutOfRange {
            q,
            min,
            max: n as u32,
        });
    }
    let alpha = alpha(b);
    let omega = omega(b);
    let mut out = alloc::vec![0u32; n];
    let mut running_max = 0u32;
    for i in 1..=n {
        let position = omega[i - 1] as usize;
        running_max = running_max.max(alpha[position - 1]);
        let threshold = q as i64 - (n - i) as i64;
        out[position - 1] = if running_max as i64 >= threshold {
            alpha[position - 1]
        } else {
            threshold as u32
        };
    }
    Ok(Word::from_vec_unchecked(out))
}

fn require_pattern(p: &Word) -> Result<()> {
    if p.is_pattern() {
        Ok(())
    } else {
        Err(Error::NotAPattern(p.clone()))
    }
}

/// `beta(arity(p), descent_word(p))`, the minimum of the d-class of `p`.
pub fn beta_of(p: &Word) -> Result<Word> {
    require_pattern(p)?;
    beta(p.arity(), &DescentWord::of(p))
}

pub fn alpha_of(p: &Word) -> Result<Word> {
    require_pattern(p)?;
    Ok(alpha(&DescentWord::of(p)))
}

pub fn omega_of(p: &Word) -> Result<Word> {
    require_pattern(p)?;
    Ok(omega(&DescentWord::of(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn b(s: &str) -> DescentWord {
        s.parse().unwrap()
    }

    #[test]
    fn minimal_arity_examples() {
        assert_eq!(minimal_arity(&b("110100010")), 3);
        assert_eq!(minimal_arity(&b("000")), 1);
        assert_eq!(minimal_arity(&b("110")), 3);
        assert_eq!(minimal_arity(&b("")), 0);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&b("110100010")), w("321211121"));
        assert_eq!(alpha(&b("000")), w("111"));
        assert_eq!(alpha(&b("0010")), w("1121"));
    }

    #[test]
    fn run_examples() {
        let d = runs(&b("110100010"));
        let spans: Vec<(RunKind, usize, usize)> =
            d.runs.iter().map(|r| (r.kind, r.start, r.end)).collect();
        assert_eq!(
            spans,
            [
                (RunKind::Descent, 1, 3),
                (RunKind::Descent, 4, 5),
                (RunKind::Ascent, 6, 7),
                (RunKind::Descent, 8, 9)
            ]
        );
        assert_eq!(
            runs(&b("0000")).runs,
            [Run {
                kind: RunKind::Ascent,
                start: 1,
                end: 4
            }]
        );
        assert_eq!(
            runs(&b("10")).runs,
            [Run {
                kind: RunKind::Descent,
                start: 1,
                end: 2
            }]
        );
        assert!(d.same_descent_run(1, 3));
        assert!(!d.same_descent_run(3, 4));
        assert!(!d.same_descent_run(6, 7));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&b("110100010")), w("321546798"));
        assert_eq!(omega(&b("000")), w("123"));
        assert_eq!(omega(&b("0010")), w("1243"));
    }

    #[test]
    fn beta_examples() {
        let bw = b("110100010");
        assert_eq!(beta(7, &bw).unwrap(), w("321214576"));
        assert_eq!(beta(8, &bw).unwrap(), w("321415687"));
        assert_eq!(beta(3, &bw).unwrap(), w("321211121"));
        assert_eq!(beta(9, &bw).unwrap(), omega(&bw));
        assert_eq!(
            beta(2, &bw),
            Err(Error::ArityOutOfRange {
                q: 2,
                min: 3,
                max: 9
            })
        );
        assert!(beta(10, &bw).is_err());
        assert_eq!(beta(1, &b("000")).unwrap(), w("111"));
        assert_eq!(beta(0, &b("")).unwrap(), Word::empty());
    }

    #[test]
    fn canonical_of_patterns() {
        assert_eq!(beta_of(&w("1332")).unwrap(), w("1132"));
        assert_eq!(beta_of(&w("1132")).unwrap(), w("1132"));
        assert_eq!(omega_of(&w("1332")).unwrap(), w("1243"));
        assert_eq!(alpha_of(&w("1332")).unwrap(), w("1121"));
        assert_eq!(beta_of(&w("1443")), Err(Error::NotAPattern(w("1443"))));
        assert_eq!(beta_of(&w("432411231")).unwrap().to_string(), "321211141");
    }
}
