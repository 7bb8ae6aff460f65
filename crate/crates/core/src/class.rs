//! d-equivalence classes and the generators that enumerate them.
//!
//! Every generator is a lexicographic backtracking search over a sorted symbol
//! list, constrained position by position by the descent word. Nothing is
//! materialized beyond the current partial word.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::descent::{validate_descents, Positions};
use crate::error::{Error, Result};
use crate::word::Word;

/// A d-equivalence class: all words of a given length, alphabet and descent set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DClass {
    length: usize,
    alphabet: BTreeSet<u32>,
    descents: Vec<usize>,
}

impl DClass {
    pub fn new(length: usize, alphabet: BTreeSet<u32>, descents: Vec<usize>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if alphabet.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        validate_descents(&descents, length)?;
        Ok(DClass {
            length,
            alphabet,
            descents,
        })
    }

    /// The class containing `w`. Panics on the empty word, whose alphabet is empty.
    pub fn of_word(w: &Word) -> Self {
        assert!(!w.is_empty(), "the empty word has no d-class");
        DClass {
            length: w.len(),
            alphabet: w.underlying_alphabet(),
            descents: crate::descent::descent_set(w),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn alphabet(&self) -> &BTreeSet<u32> {
        &self.alphabet
    }

    pub fn descents(&self) -> &[usize] {
        &self.descents
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() == self.length
            && crate::descent::descent_set(w) == self.descents
            && w.underlying_alphabet() == self.alphabet
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> ConstrainedWords {
        ConstrainedWords::new(
            self.length,
            self.alphabet.iter().copied().collect(),
            &self.descents,
            true,
            false,
        )
    }

    pub fn cardinality(&self) -> u64 {
        self.members().count() as u64
    }
}

impl fmt::Display for DClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet: Vec<usize> = self.alphabet.iter().map(|&x| x as usize).collect();
        write!(
            f,
            "n={} alphabet={{{}}} descents={{{}}}",
            self.length,
            Positions(&alphabet),
            Positions(&self.descents)
        )
    }
}

/// All `q`-ary words of length `n` with exactly the given descent set.
pub fn enumerate_descent_class(n: usize, q: u32, descents: &[usize]) -> Result<ConstrainedWords> {
    validate_descents(descents, n)?;
    Ok(ConstrainedWords::new(
        n,
        (1..=q).collect(),
        descents,
        false,
        false,
    ))
}

/// Permutations of length `n` with exactly the given descent set.
pub fn enumerate_permutation_class(n: usize, descents: &[usize]) -> Result<ConstrainedWords> {
    validate_descents(descents, n)?;
    Ok(ConstrainedWords::new(
        n,
        (1..=n as u32).collect(),
        descents,
        true,
        true,
    ))
}

/// Every d-class of length `n` whose alphabet is a non-empty subset of `[q]`.
/// Classes may be empty.
pub fn classes_within(n: usize, q: u32) -> Vec<DClass> {
    assert!((1..=64).contains(&n) && q <= 31);
    let mut out = Vec::new();
    for alphabet_mask in 1u32..(1 << q) {
        let alphabet: BTreeSet<u32> = (1..=q)
            .filter(|s| alphabet_mask >> (s - 1) & 1 == 1)
            .collect();
        for descent_mask in 0u64..(1 << (n - 1)) {
            let descents = (1..n)
                .filter(|i| descent_mask >> (i - 1) & 1 == 1)
                .collect();
            out.push(DClass {
                length: n,
                alphabet: alphabet.clone(),
                descents,
            });
        }
    }
    out
}

/// All words of `[q]^n` in lexicographic order.
pub fn all_words(n: usize, q: u32) -> impl Iterator<Item = Word> {
    let total = (q as u64).checked_pow(n as u32).expect("q^n overflows u64");
    (0..total).map(move |mut index| {
        let mut entries = alloc::vec![1u32; n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % q as u64) as u32 + 1;
            index /= q as u64;
        }
        Word::from_vec_unchecked(entries)
    })
}

/// All patterns of length `k` in lexicographic order.
pub fn patterns_of_length(k: usize) -> Vec<Word> {
    if k == 0 {
        return alloc::vec![Word::empty()];
    }
    all_words(k, k as u32).filter(|w| w.is_pattern()).collect()
}

/// Lexicographic generator of words over a symbol list with a fixed descent set.
#[derive(Clone, Debug)]
pub struct ConstrainedWords {
    n: usize,
    symbols: Vec<u32>,
    /// `descent[i]` is true when position `i + 1` must be a descent.
    descent: Vec<bool>,
    /// Length of the descent chain starting at each position.
    chain: Vec<usize>,
    cover_all: bool,
    distinct: bool,
    chosen: Vec<usize>,
    word: Vec<u32>,
    counts: Vec<usize>,
    missing: usize,
    started: bool,
    done: bool,
}

impl ConstrainedWords {
    fn new(
        n: usize,
        symbols: Vec<u32>,
        descents: &[usize],
        cover_all: bool,
        distinct: bool,
    ) -> Self {
        let mut descent = alloc::vec![false; n];
        for &d in descents {
            descent[d - 1] = true;
        }
        let mut chain = alloc::vec![0; n + 1];
        for i in (0..n).rev() {
            chain[i] = if descent[i] { chain[i + 1] + 1 } else { 0 };
        }
        let missing = if cover_all { symbols.len() } else { 0 };
        ConstrainedWords {
            n,
            counts: alloc::vec![0; symbols.len()],
            symbols,
            descent,
            chain,
            cover_all,
            distinct,
            chosen: Vec::with_capacity(n),
            word: Vec::with_capacity(n),
            missing,
            started: false,
            done: false,
        }
    }

    fn admissible(&self, level: usize, c: usize) -> bool {
        let v = self.symbols[c];
        if c < self.chain[level] {
            return false;
        }
        if level > 0 {
            let prev = self.word[level - 1];
            if self.descent[level - 1] != (prev > v) {
                return false;
            }
        }
        if self.distinct && self.counts[c] > 0 {
            return false;
        }
        if self.cover_all {
            let missing_after = self.missing - usize::from(self.counts[c] == 0);
            if missing_after > self.n - level - 1 {
                return false;
            }
        }
        true
    }

    fn push(&mut self, c: usize) {
        if self.counts[c] == 0 && self.cover_all {
            self.missing -= 1;
        }
        self.counts[c] += 1;
        self.chosen.push(c);
        self.word.push(self.symbols[c]);
    }

    fn pop(&mut self) -> Option<usize> {
        let c = self.chosen.pop()?;
        self.word.pop();
        self.counts[c] -= 1;
        if self.counts[c] == 0 && self.cover_all {
            self.missing += 1;
        }
        Some(c)
    }
}

impl Iterator for ConstrainedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let mut candidate = if self.started {
            match self.pop() {
                Some(c) => c + 1,
                None => {
                    self.done = true;
                    return None;
                }
            }
        } else {
            self.started = true;
            0
        };
        loop {
            let level = self.word.len();
            if level == self.n {
                if self.missing == 0 {
                    return Some(Word::from_vec_unchecked(self.word.clone()));
                }
                // only reachable for n = 0 with a non-empty required alphabet
                self.done = true;
                return None;
            }
            match (candidate..self.symbols.len()).find(|&c| self.admissible(level, c)) {
                Some(c) => {
                    self.push(c);
                    candidate = 0;
                }
                None => match self.pop() {
                    Some(c) => candidate = c + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{d_equivalent, descent_set};
    use alloc::string::ToString;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn class(n: usize, alphabet: &[u32], descents: &[usize]) -> DClass {
        DClass::new(n, alphabet.iter().copied().collect(), descents.to_vec()).unwrap()
    }

    #[test]
    fn class_examples() {
        let perms: Vec<Word> = class(5, &[1, 2, 3, 4, 5], &[1, 4]).members().collect();
        assert_eq!(perms.len(), 11);
        assert_eq!(perms[0], w("21354"));
        assert_eq!(
            class(3, &[1], &[]).members().collect::<Vec<_>>(),
            vec![w("111")]
        );
        assert_eq!(
            class(2, &[1, 2], &[1]).members().collect::<Vec<_>>(),
            vec![w("21")]
        );
        // alphabet too large for the length
        assert_eq!(class(2, &[1, 2, 3], &[]).cardinality(), 0);
        assert!(DClass::new(3, BTreeSet::new(), vec![]).is_err());
        assert!(DClass::new(3, [1].into(), vec![3]).is_err());
    }

    #[test]
    fn three_ary_descent_class() {
        // a <= b > c over [3]: enumerated by hand
        let words: Vec<Word> = enumerate_descent_class(3, 3, &[2]).unwrap().collect();
        let expected: Vec<Word> = ["121", "131", "132", "221", "231", "232", "331", "332"]
            .iter()
            .map(|s| w(s))
            .collect();
        assert_eq!(words, expected);
        let with_one: Vec<Word> = enumerate_descent_class(3, 3, &[1]).unwrap().collect();
        assert!(with_one.contains(&w("211")) && with_one.contains(&w("212")));
        assert!(with_one.iter().all(|x| descent_set(x) == vec![1]));
        assert_eq!(
            enumerate_descent_class(1, 1, &[])
                .unwrap()
                .collect::<Vec<_>>(),
            vec![w("1")]
        );
    }

    #[test]
    fn permutation_class_matches_class_of_full_alphabet() {
        let a: Vec<Word> = enumerate_permutation_class(5, &[1, 4]).unwrap().collect();
        let b: Vec<Word> = class(5, &[1, 2, 3, 4, 5], &[1, 4]).members().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn classes_partition_small_cubes() {
        for n in 1..=5 {
            for q in 1..=4u32 {
                let mut seen: Vec<Word> = Vec::new();
                for c in classes_within(n, q) {
                    let members: Vec<Word> = c.members().collect();
                    assert!(members.windows(2).all(|p| p[0] < p[1]), "not sorted in {c}");
                    for m in &members {
                        assert!(c.contains(m));
                        assert!(d_equivalent(m, &members[0]));
                    }
                    seen.extend(members);
                }
                seen.sort();
                let all: Vec<Word> = all_words(n, q).collect();
                assert_eq!(seen, all, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn pattern_counts_are_fubini_numbers() {
        let counts: Vec<usize> = (0..=5).map(|k| patterns_of_length(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 13, 75, 541]);
    }

    #[test]
    fn class_display() {
        assert_eq!(
            class(5, &[1, 2, 3, 4, 5], &[1, 4]).to_string(),
            "n=5 alphabet={1,2,3,4,5} descents={1,4}"
        );
    }
}
