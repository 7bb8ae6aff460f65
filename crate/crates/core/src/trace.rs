//! Traces of patterns, the trace statistic, and interval restriction/substitution.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::occurrence::count_with_fixed;
use crate::word::{order_isomorphic, parse_cells, write_entries, Word};

/// A pattern template whose cells are symbols or holes. Text form uses `_`
/// for holes: `_44_`, or `10,_,3` when some value exceeds 9.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace(Vec<Option<u32>>);

impl Trace {
    pub fn new(cells: Vec<Option<u32>>) -> Result<Self> {
        if cells.contains(&Some(0)) {
            return Err(Error::ZeroEntry);
        }
        Ok(Trace(cells))
    }

    /// A trace with every cell a hole.
    pub fn holes(k: usize) -> Self {
        Trace(alloc::vec![None; k])
    }

    /// `w` with a hole inserted at 1-based cell `hole`.
    pub fn with_hole(values: &[u32], hole: usize) -> Self {
        let mut cells: Vec<Option<u32>> = values.iter().map(|&x| Some(x)).collect();
        cells.insert(hole - 1, None);
        Trace(cells)
    }

    pub fn cells(&self) -> &[Option<u32>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based indices of the non-hole cells.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.0.len())
            .filter(|&i| self.0[i - 1].is_some())
            .collect()
    }

    /// 1-based indices of the holes.
    pub fn hole_positions(&self) -> Vec<usize> {
        (1..=self.0.len())
            .filter(|&i| self.0[i - 1].is_none())
            .collect()
    }

    /// Values of the non-hole cells, in order.
    pub fn values(&self) -> Vec<u32> {
        self.0.iter().flatten().copied().collect()
    }

    pub fn get(&self, cell: usize) -> Option<u32> {
        self.0[cell - 1]
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, self.0.iter().copied())
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trace({self})")
    }
}

impl FromStr for Trace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Trace(parse_cells(s, "trace", true)?))
    }
}

/// The non-hole cells of `t` are order-isomorphic with the same cells of `p`.
pub fn is_trace(t: &Trace, p: &Word) -> bool {
    if t.len() != p.len() {
        return false;
    }
    let support = t.support();
    let pattern_part: Vec<u32> = support.iter().map(|&i| p[i - 1]).collect();
    order_isomorphic(&t.values(), &pattern_part)
}

fn check_positions(positions: &[usize], n: usize) -> Result<()> {
    let mut previous = 0;
    for &pos in positions {
        if pos <= previous || pos > n {
            return Err(Error::PositionsNotIncreasing);
        }
        previous = pos;
    }
    Ok(())
}

/// Number of occurrences of `p` in `w` that carry the values of `t` exactly at
/// the positions `positions` (1-based), holes being free.
pub fn trace_statistic(t: &Trace, positions: &[usize], p: &Word, w: &Word) -> Result<u64> {
    if !p.is_pattern() {
        return Err(Error::NotAPattern(p.clone()));
    }
    if t.len() != p.len() {
        return Err(Error::LengthMismatch {
            left: t.len(),
            right: p.len(),
        });
    }
    let support = t.support();
    if support.len() != positions.len() {
        return Err(Error::PositionCountMismatch {
            expected: support.len(),
            found: positions.len(),
        });
    }
    check_positions(positions, w.len())?;
    if !is_trace(t, p) {
        return Err(Error::NotATrace(p.clone()));
    }
    Ok(trace_statistic_unchecked(t, positions, p, w))
}

pub(crate) fn trace_statistic_unchecked(
    t: &Trace,
    positions: &[usize],
    p: &[u32],
    w: &[u32],
) -> u64 {
    let mut fixed = alloc::vec![None; p.len()];
    for (cell, &pos) in t.support().iter().zip(positions) {
        if w[pos - 1] != t.get(*cell).unwrap() {
            return 0;
        }
        fixed[cell - 1] = Some(pos - 1);
    }
    count_with_fixed(p, w, &fixed)
}

/// Closed integer interval `[low, high]`; empty when `low > high`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub low: usize,
    pub high: usize,
}

impl Interval {
    pub fn new(low: usize, high: usize) -> Self {
        Interval { low, high }
    }

    pub fn is_empty(&self) -> bool {
        self.low > self.high
    }

    pub fn contains(&self, x: usize) -> bool {
        self.low <= x && x <= self.high
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.low, self.high)
    }
}

/// The longest subword of `w` at positions in `span` with values in `values`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub word: Word,
    /// 1-based source positions.
    pub positions: Vec<usize>,
}

pub fn restrict(w: &Word, span: Interval, values: Interval) -> Result<Restriction> {
    if span.low == 0 {
        return Err(Error::InvalidInterval {
            low: span.low,
            high: span.high,
        });
    }
    if !span.is_empty() && span.high > w.len() {
        return Err(Error::InvalidInterval {
            low: span.low,
            high: span.high,
        });
    }
    let positions: Vec<usize> = if span.is_empty() {
        Vec::new()
    } else {
        (span.low..=span.high)
            .filter(|&i| values.contains(w[i - 1] as usize))
            .collect()
    };
    let word = Word::from_vec_unchecked(positions.iter().map(|&i| w[i - 1]).collect());
    Ok(Restriction { word, positions })
}

/// Rewrites the restricted subword of `w` to be order-isomorphic with `u`,
/// keeping its set of symbols.
pub fn substitute(w: &Word, span: Interval, values: Interval, u: &Word) -> Result<Word> {
    let restriction = restrict(w, span, values)?;
    let symbols: Vec<u32> = restriction.word.underlying_alphabet().into_iter().collect();
    if u.len() != restriction.word.len() || !u.is_pattern() || u.arity() as usize != symbols.len() {
        return Err(Error::SubstitutionMismatch(u.clone()));
    }
    let mut v = w.clone();
    for (&pos, &x) in restriction.positions.iter().zip(u.iter()) {
        v.entries_mut()[pos - 1] = symbols[x as usize - 1];
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Trace {
        s.parse().unwrap()
    }

    #[test]
    fn trace_text() {
        assert_eq!(t("_44_").cells(), &[None, Some(4), Some(4), None]);
        assert_eq!(alloc::format!("{}", t("1_54")), "1_54");
        assert_eq!(alloc::format!("{}", t("10,_,3")), "10,_,3");
        assert_eq!(t("1_81_7").support(), [1, 3, 4, 6]);
        assert_eq!(t("1_81_7").hole_positions(), [2, 5]);
        assert_eq!(Trace::with_hole(&[1, 5, 4], 2), t("1_54"));
    }

    #[test]
    fn trace_examples() {
        assert!(is_trace(&t("_44_"), &w("1332")));
        assert!(is_trace(&t("_44_"), &w("2331")));
        assert!(is_trace(&t("_55_"), &w("1332")));
        assert!(is_trace(&Trace::holes(4), &w("2331")));
        assert!(!is_trace(&t("14_"), &w("321")));
        assert!(!is_trace(&t("14"), &w("321")));
    }

    #[test]
    fn statistic_examples() {
        assert_eq!(
            trace_statistic(&t("_55_"), &[2, 4], &w("1332"), &w("154543")).unwrap(),
            2
        );
        assert_eq!(
            trace_statistic(&t("_44_"), &[3, 5], &w("1332"), &w("154543")).unwrap(),
            1
        );
        assert_eq!(
            trace_statistic(&t("1_54"), &[2, 8, 10], &w("1132"), &w("21143615441")).unwrap(),
            2
        );
        assert_eq!(
            trace_statistic(&t("1_54"), &[2, 8, 10], &w("1232"), &w("21443615441")).unwrap(),
            2
        );
        // values at A must match the trace exactly
        assert_eq!(
            trace_statistic(&t("_44_"), &[2, 4], &w("1332"), &w("154543")).unwrap(),
            0
        );
        // an all-hole trace gives the plain occurrence count
        assert_eq!(
            trace_statistic(&Trace::holes(3), &[], &w("213"), &w("21354")).unwrap(),
            3
        );
    }

    #[test]
    fn statistic_errors() {
        let host = w("154543");
        assert_eq!(
            trace_statistic(&t("_44_"), &[3], &w("1332"), &host),
            Err(Error::PositionCountMismatch {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            trace_statistic(&t("_44_"), &[5, 3], &w("1332"), &host),
            Err(Error::PositionsNotIncreasing)
        );
        assert_eq!(
            trace_statistic(&t("_45_"), &[3, 5], &w("1332"), &host),
            Err(Error::NotATrace(w("1332")))
        );
        assert!(trace_statistic(&t("_44"), &[3, 5], &w("1332"), &host).is_err());
    }

    #[test]
    fn restriction_examples() {
        let r = restrict(&w("21143615441"), Interval::new(3, 7), Interval::new(1, 4)).unwrap();
        assert_eq!(r.word, w("1431"));
        assert_eq!(r.positions, [3, 4, 5, 7]);
        let r = restrict(
            &w("217349648815371"),
            Interval::new(4, 8),
            Interval::new(3, 6),
        )
        .unwrap();
        assert_eq!(r.word, w("3464"));
        let host = w("154543");
        assert_eq!(
            restrict(&host, Interval::new(1, 6), Interval::new(1, 5))
                .unwrap()
                .word,
            host
        );
        assert!(restrict(&host, Interval::new(7, 6), Interval::new(1, 5))
            .unwrap()
            .word
            .is_empty());
        assert!(restrict(&host, Interval::new(2, 9), Interval::new(1, 5)).is_err());
    }

    #[test]
    fn substitution_examples() {
        let host = w("21143615441");
        let (span, values) = (Interval::new(3, 7), Interval::new(1, 4));
        assert_eq!(
            substitute(&host, span, values, &w("3321")).unwrap(),
            w("21443615441")
        );
        assert_eq!(substitute(&host, span, values, &w("1321")).unwrap(), host);
        let big = w("217349648815371");
        let v = substitute(&big, Interval::new(12, 13), Interval::new(3, 6), &w("12")).unwrap();
        assert_eq!((v[11], v[12]), (3, 5));
        assert!(substitute(&host, span, values, &w("1221")).is_err());
        assert!(substitute(&host, span, values, &w("132")).is_err());
    }
}
