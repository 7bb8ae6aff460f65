//! Counting occurrences of a pattern in a word, and popularity over a class.
//!
//! An occurrence is a set of positions whose subword is order-isomorphic with
//! the pattern; equal pattern entries must land on equal word entries.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::class::DClass;
use crate::error::{Error, Result};
use crate::word::Word;

/// Patterns up to this length are counted by direct enumeration.
pub const ENUMERATION_MAX_PATTERN: usize = 4;

/// Number of occurrences of `p` in `w`.
pub fn occurrences_count(p: &Word, w: &Word) -> Result<u64> {
    if !p.is_pattern() {
        return Err(Error::NotAPattern(p.clone()));
    }
    if p.len() <= ENUMERATION_MAX_PATTERN || w.len() <= 10 {
        Ok(count_by_enumeration(p, w))
    } else {
        Ok(count_by_dp(p, w))
    }
}

/// Backtracking over increasing position tuples, pruning as soon as the
/// partial value assignment contradicts the pattern.
pub fn count_by_enumeration(p: &[u32], w: &[u32]) -> u64 {
    let fixed = alloc::vec![None; p.len()];
    count_with_fixed(p, w, &fixed)
}

/// Counts occurrences where some pattern cells are pinned to given 0-based
/// positions of `w`. Free cells range over the gaps between pinned ones.
pub(crate) fn count_with_fixed(p: &[u32], w: &[u32], fixed: &[Option<usize>]) -> u64 {
    let k = p.len();
    if k > w.len() {
        return 0;
    }
    let arity = p.iter().copied().max().unwrap_or(0) as usize;
    let mut search = Search {
        p,
        w,
        fixed,
        assignment: alloc::vec![0; arity + 1],
    };
    search.run(0, 0)
}

struct Search<'a> {
    p: &'a [u32],
    w: &'a [u32],
    fixed: &'a [Option<usize>],
    /// Value of `w` assigned to each pattern symbol, 0 when unassigned.
    assignment: Vec<u32>,
}

impl Search<'_> {
    fn consistent(&self, symbol: u32, value: u32) -> bool {
        let assigned = self.assignment[symbol as usize];
        if assigned != 0 {
            return assigned == value;
        }
        // nearest assigned symbols below and above
        let below = self.assignment[1..symbol as usize]
            .iter()
            .rev()
            .find(|&&x| x != 0);
        let above = self.assignment[symbol as usize + 1..]
            .iter()
            .find(|&&x| x != 0);
        below.is_none_or(|&x| x < value) && above.is_none_or(|&x| x > value)
    }

    fn run(&mut self, cell: usize, start: usize) -> u64 {
        let k = self.p.len();
        if cell == k {
            return 1;
        }
        // the next pinned cell bounds how far this one may go
        let (lo, hi) = match self.fixed[cell] {
            Some(pos) => {
                if pos < start {
                    return 0;
                }
                (pos, pos)
            }
            None => {
                let mut hi = self.w.len() - (k - cell);
                if let Some((offset, pos)) = self.fixed[cell + 1..]
                    .iter()
                    .enumerate()
                    .find_map(|(o, f)| f.map(|pos| (o, pos)))
                {
                    match pos.checked_sub(offset + 1) {
                        Some(limit) => hi = hi.min(limit),
                        None => return 0,
                    }
                }
                (start, hi)
            }
        };
        let symbol = self.p[cell];
        let mut total = 0;
        for pos in lo..=hi.min(self.w.len().saturating_sub(1)) {
            let value = self.w[pos];
            if !self.consistent(symbol, value) {
                continue;
            }
            let fresh = self.assignment[symbol as usize] == 0;
            self.assignment[symbol as usize] = value;
            total += self.run(cell + 1, pos + 1);
            if fresh {
                self.assignment[symbol as usize] = 0;
            }
        }
        total
    }
}

/// Left-to-right dynamic programme over (matched prefix length, symbol
/// assignment) states. States reached by different position sets merge.
pub fn count_by_dp(p: &[u32], w: &[u32]) -> u64 {
    let k = p.len();
    if k == 0 {
        return 1;
    }
    let arity = p.iter().copied().max().unwrap() as usize;
    let mut states: BTreeMap<(usize, Vec<u32>), u64> = BTreeMap::new();
    states.insert((0, alloc::vec![0; arity + 1]), 1);
    let mut complete = 0u64;
    for (pos, &value) in w.iter().enumerate() {
        let remaining = w.len() - pos;
        let mut next = states.clone();
        for ((matched, assignment), &ways) in &states {
            if k - matched > remaining {
                continue;
            }
            let symbol = p[*matched] as usize;
            let assigned = assignment[symbol];
            let ok = if assigned != 0 {
                assigned == value
            } else {
                assignment[1..symbol].iter().all(|&x| x == 0 || x < value)
                    && assignment[symbol + 1..]
                        .iter()
                        .all(|&x| x == 0 || x > value)
            };
            if !ok {
                continue;
            }
            if matched + 1 == k {
                complete += ways;
            } else {
                let mut extended = assignment.clone();
                extended[symbol] = value;
                *next.entry((matched + 1, extended)).or_default() += ways;
            }
        }
        // states that can no longer finish are dropped
        next.retain(|(matched, _), _| k - matched < remaining);
        states = next;
    }
    complete
}

/// Sum of occurrence counts of `p` over the members of `c`.
pub fn popularity(p: &Word, c: &DClass) -> Result<u64> {
    if !p.is_pattern() {
        return Err(Error::NotAPattern(p.clone()));
    }
    Ok(c.members().map(|w| count_by_enumeration(p, &w)).sum())
}

/// Popularity of every pattern of length `k` that occurs in some member of `c`,
/// computed in one pass by reducing every `k`-subset of every member.
pub fn popularity_profile(k: usize, c: &DClass) -> BTreeMap<Word, u64> {
    profile_over(k, c.members())
}

/// [`popularity_profile`] over an arbitrary collection of words.
pub fn profile_over(k: usize, words: impl IntoIterator<Item = Word>) -> BTreeMap<Word, u64> {
    let mut profile = BTreeMap::new();
    let mut indices: Vec<usize> = (0..k).collect();
    for w in words {
        if k > w.len() {
            continue;
        }
        for (slot, index) in indices.iter_mut().enumerate() {
            *index = slot;
        }
        loop {
            *profile.entry(w.subword(&indices).reduce()).or_default() += 1;
            if !next_combination(&mut indices, w.len()) {
                break;
            }
        }
    }
    profile
}

/// Advances a strictly increasing index tuple over `0..n`; false when exhausted.
pub fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    for slot in (0..k).rev() {
        if indices[slot] < n - k + slot {
            indices[slot] += 1;
            for later in slot + 1..k {
                indices[later] = indices[later - 1] + 1;
            }
            return true;
        }
    }
    false
}
