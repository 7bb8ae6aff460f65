//! A bijection on `[q]^n` turning descent sets into ascent sets.
//!
//! Words are grouped into cells by their exact multiset of entries. Inside a
//! cell, the words with descent set `S` and the words with ascent set `S` are
//! equinumerous; the `r`-th of the former (lexicographically) is sent to the
//! `r`-th of the latter. Because cells are keyed by multiset, the image is a
//! rearrangement of the input, so the alphabet and the number of copies of
//! the largest and smallest entries are preserved.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::descent::{ascent_mask, descent_mask, descent_set};
use crate::error::{Error, Result};
use crate::word::Word;

/// Largest `q^n` for which a full table is built.
pub const DESK_TABLE_LIMIT: u64 = 10_000_000;

/// Common interface of the ways to evaluate the bijection.
pub trait DescentAscentBijection {
    /// Image of `w`, which must lie in `[q]^n`.
    fn psi(&self, w: &Word, q: u32) -> Result<Word>;
    /// Preimage of `w`.
    fn psi_inverse(&self, w: &Word, q: u32) -> Result<Word>;
}

fn check_alphabet(w: &Word, q: u32) -> Result<()> {
    if w.arity() > q {
        return Err(Error::OutOfAlphabet { word: w.clone(), q });
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Words whose descent set is the target set.
    Descents,
    /// Words whose ascent set is the target set.
    Ascents,
}

/// Words with the multiset of `w` whose descent (or ascent) set is `set`, lexicographic.
fn cell(w: &Word, set: &[usize], side: Side) -> Vec<Word> {
    let mut symbols: Vec<u32> = w.underlying_alphabet().into_iter().collect();
    symbols.sort_unstable();
    let mut counts: Vec<usize> = symbols.iter().map(|&s| w.multiplicity(s)).collect();
    let n = w.len();
    let mut marked = alloc::vec![false; n];
    for &i in set {
        marked[i - 1] = true;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(&symbols, &mut counts, &marked, side, &mut current, &mut out);
    out
}

fn fill(
    symbols: &[u32],
    counts: &mut [usize],
    marked: &[bool],
    side: Side,
    current: &mut Vec<u32>,
    out: &mut Vec<Word>,
) {
    let level = current.len();
    if level == marked.len() {
        out.push(Word::from_vec_unchecked(current.clone()));
        return;
    }
    for c in 0..symbols.len() {
        if counts[c] == 0 {
            continue;
        }
        let v = symbols[c];
        if level > 0 {
            let prev = current[level - 1];
            let relation = match side {
                Side::Descents => prev > v,
                Side::Ascents => prev < v,
            };
            if relation != marked[level - 1] {
                continue;
            }
        }
        counts[c] -= 1;
        current.push(v);
        fill(symbols, counts, marked, side, current, out);
        current.pop();
        counts[c] += 1;
    }
}

/// Evaluates the bijection by enumerating only the two cells involved.
#[derive(Clone, Copy, Debug, Default)]
pub struct CellMatching;

impl CellMatching {
    fn map(w: &Word, from: Side) -> Result<Word> {
        let set = match from {
            Side::Descents => descent_set(w),
            Side::Ascents => crate::descent::ascent_set(w),
        };
        let to = match from {
            Side::Descents => Side::Ascents,
            Side::Ascents => Side::Descents,
        };
        let source = cell(w, &set, from);
        let target = cell(w, &set, to);
        if source.len() != target.len() {
            return Err(Error::CellMismatch(w.clone()));
        }
        let rank = source
            .binary_search(w)
            .expect("a word belongs to its own cell");
        Ok(target[rank].clone())
    }
}

impl DescentAscentBijection for CellMatching {
    fn psi(&self, w: &Word, q: u32) -> Result<Word> {
        check_alphabet(w, q)?;
        CellMatching::map(w, Side::Descents)
    }

    fn psi_inverse(&self, w: &Word, q: u32) -> Result<Word> {
        check_alphabet(w, q)?;
        CellMatching::map(w, Side::Ascents)
    }
}

pub fn psi(w: &Word, q: u32) -> Result<Word> {
    CellMatching.psi(w, q)
}

pub fn psi_inverse(w: &Word, q: u32) -> Result<Word> {
    CellMatching.psi_inverse(w, q)
}

/// Complement of the image, taken at the word's own arity.
pub fn c_psi<B: DescentAscentBijection + ?Sized>(bijection: &B, w: &Word) -> Result<Word> {
    Ok(bijection.psi(w, w.arity())?.complement())
}

/// Inverse of [`c_psi`] on patterns.
pub fn c_psi_inverse<B: DescentAscentBijection + ?Sized>(bijection: &B, w: &Word) -> Result<Word> {
    bijection.psi_inverse(&w.complement(), w.arity())
}

/// The whole bijection on `[q]^n`, indexed by the base-`q` rank of a word.
#[derive(Clone, Debug)]
pub struct PsiTable {
    n: usize,
    q: u32,
    forward: Vec<u32>,
    backward: Vec<u32>,
}

impl PsiTable {
    pub fn build(n: usize, q: u32) -> Result<Self> {
        Self::build_with_limit(n, q, DESK_TABLE_LIMIT)
    }

    pub fn build_with_limit(n: usize, q: u32, limit: u64) -> Result<Self> {
        let size = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > limit || n > 64 {
            return Err(Error::TableTooLarge { size, limit });
        }
        type Key = (Vec<u8>, u64);
        let mut by_descents: BTreeMap<Key, Vec<u32>> = BTreeMap::new();
        let mut by_ascents: BTreeMap<Key, Vec<u32>> = BTreeMap::new();
        for (index, w) in crate::class::all_words(n, q).enumerate() {
            let mut counts = alloc::vec![0u8; q as usize];
            for &x in w.iter() {
                counts[x as usize - 1] += 1;
            }
            by_descents
                .entry((counts.clone(), descent_mask(&w)))
                .or_default()
                .push(index as u32);
            by_ascents
                .entry((counts, ascent_mask(&w)))
                .or_default()
                .push(index as u32);
        }
        let mut forward = alloc::vec![0u32; size as usize];
        let mut backward = alloc::vec![0u32; size as usize];
        for (key, sources) in &by_descents {
            let targets = by_ascents.get(key).map_or(&[][..], Vec::as_slice);
            if targets.len() != sources.len() {
                return Err(Error::CellMismatch(word_at(n, q, sources[0])));
            }
            for (&s, &t) in sources.iter().zip(targets) {
                forward[s as usize] = t;
                backward[t as usize] = s;
            }
        }
        Ok(PsiTable {
            n,
            q,
            forward,
            backward,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    fn index_of(&self, w: &Word) -> Result<u32> {
        if w.len() != self.n || w.arity() > self.q {
            return Err(Error::OutOfAlphabet {
                word: w.clone(),
                q: self.q,
            });
        }
        Ok(w.iter().fold(0u32, |acc, &x| acc * self.q + (x - 1)))
    }

    /// Image of the word with base-`q` rank `index`.
    pub fn image_index(&self, index: u32) -> u32 {
        self.forward[index as usize]
    }

    pub fn word_at(&self, index: u32) -> Word {
        word_at(self.n, self.q, index)
    }
}

fn word_at(n: usize, q: u32, mut index: u32) -> Word {
    let mut entries = alloc::vec![0u32; n];
    for slot in entries.iter_mut().rev() {
        *slot = index % q + 1;
        index /= q;
    }
    Word::from_vec_unchecked(entries)
}

impl DescentAscentBijection for PsiTable {
    fn psi(&self, w: &Word, q: u32) -> Result<Word> {
        check_alphabet(w, q)?;
        Ok(self.word_at(self.forward[self.index_of(w)? as usize]))
    }

    fn psi_inverse(&self, w: &Word, q: u32) -> Result<Word> {
        check_alphabet(w, q)?;
        Ok(self.word_at(self.backward[self.index_of(w)? as usize]))
    }
}
