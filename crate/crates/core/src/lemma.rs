//! Bijections on d-classes that carry one trace statistic onto another.
//!
//! [`Lemma1Instance`] covers two patterns that differ in one cell by one unit,
//! [`Lemma2Instance`] two patterns that swap two adjacent singleton values.
//! Both rewrite windows of the host word with ψ and complements. Words that
//! do not show the trace at the given positions have statistic zero for both
//! patterns and are left unchanged.

use alloc::vec::Vec;

use crate::descent::d_equivalent;
use crate::error::{Error, Result};
use crate::psi::{CellMatching, DescentAscentBijection};
use crate::trace::{is_trace, restrict, trace_statistic, Interval, Trace};
use crate::word::Word;

/// Data shared by both kinds of instance.
pub trait TraceBijection {
    fn source(&self) -> &Word;
    fn target(&self) -> &Word;
    fn trace(&self) -> &Trace;
    fn positions(&self) -> &[usize];
    /// Image of `w`, evaluating ψ through `psi`.
    fn apply_with(&self, w: &Word, psi: &dyn DescentAscentBijection) -> Result<Word>;
    /// Preimage of `v`.
    fn invert_with(&self, v: &Word, psi: &dyn DescentAscentBijection) -> Result<Word>;

    fn apply(&self, w: &Word) -> Result<Word> {
        self.apply_with(w, &CellMatching)
    }

    fn invert(&self, v: &Word) -> Result<Word> {
        self.invert_with(v, &CellMatching)
    }

    /// Statistic of the source pattern on `w`.
    fn source_statistic(&self, w: &Word) -> Result<u64> {
        trace_statistic(self.trace(), self.positions(), self.source(), w)
    }

    /// Statistic of the target pattern on `w`.
    fn target_statistic(&self, w: &Word) -> Result<u64> {
        trace_statistic(self.trace(), self.positions(), self.target(), w)
    }
}

fn check_positions(positions: &[usize], expected: usize) -> Result<()> {
    if positions.len() != expected {
        return Err(Error::PositionCountMismatch {
            expected,
            found: positions.len(),
        });
    }
    let mut previous = 0;
    for &pos in positions {
        if pos <= previous {
            return Err(Error::PositionsNotIncreasing);
        }
        previous = pos;
    }
    Ok(())
}

fn check_host(positions: &[usize], w: &Word) -> Result<()> {
    match positions.last() {
        Some(&last) if last > w.len() => Err(Error::PositionsNotIncreasing),
        _ => Ok(()),
    }
}

fn check_patterns(p: &Word, s: &Word) -> Result<()> {
    for x in [p, s] {
        if !x.is_pattern() {
            return Err(Error::NotAPattern(x.clone()));
        }
    }
    if p.len() != s.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: s.len(),
        });
    }
    if !d_equivalent(p, s) {
        return Err(Error::MalformedInstance("patterns are not d-equivalent"));
    }
    Ok(())
}

/// Value carried by `t` in the cells where `p` has value `role`; all such
/// cells must agree.
fn role_value(t: &Trace, p: &Word, role: u32) -> Result<u32> {
    let mut found = None;
    for cell in 1..=p.len() {
        if p[cell - 1] != role {
            continue;
        }
        if let Some(x) = t.get(cell) {
            match found {
                None => found = Some(x),
                Some(y) if y != x => {
                    return Err(Error::MalformedInstance(
                        "trace disagrees on a repeated value",
                    ))
                }
                _ => {}
            }
        }
    }
    found.ok_or(Error::MalformedInstance(
        "value has no cell outside the holes",
    ))
}

/// `w` shows the values of `t` at `positions`.
fn carries(t: &Trace, positions: &[usize], w: &Word) -> bool {
    t.values()
        .iter()
        .zip(positions)
        .all(|(&value, &pos)| w[pos - 1] == value)
}

/// 1-based positions in any of `spans` whose value lies in `values`.
fn window(w: &Word, spans: &[Interval], values: Interval) -> Result<Vec<usize>> {
    let mut positions = Vec::new();
    for &span in spans {
        positions.extend(restrict(w, span, values)?.positions);
    }
    Ok(positions)
}

/// Rewrites the entries of `w` at `positions`: they are ranked within the
/// sorted symbol list `symbols`, passed through `f`, and mapped back.
fn rewrite(
    w: &Word,
    positions: &[usize],
    symbols: &[u32],
    f: impl FnOnce(&Word, u32) -> Result<Word>,
) -> Result<Word> {
    let ranks: Vec<u32> = positions
        .iter()
        .map(|&i| symbols.binary_search(&w[i - 1]).unwrap() as u32 + 1)
        .collect();
    let image = f(&Word::from_vec_unchecked(ranks), symbols.len() as u32)?;
    let mut v = w.clone();
    for (&i, &r) in positions.iter().zip(image.iter()) {
        v.entries_mut()[i - 1] = symbols[r as usize - 1];
    }
    Ok(v)
}

fn symbols_at(w: &Word, positions: &[usize]) -> Vec<u32> {
    let mut symbols: Vec<u32> = positions.iter().map(|&i| w[i - 1]).collect();
    symbols.sort_unstable();
    symbols.dedup();
    symbols
}

/// Complement of a word over `[m]`.
fn mirror(u: &Word, m: u32) -> Word {
    Word::from_vec_unchecked(u.iter().map(|&x| m + 1 - x).collect())
}

/// Two patterns equal except `s_i = p_i + 1`, with a trace holed at `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Instance {
    p: Word,
    s: Word,
    t: Trace,
    positions: Vec<usize>,
    i: usize,
    x: u32,
    y: u32,
}

impl Lemma1Instance {
    pub fn new(p: Word, s: Word, t: Trace, positions: Vec<usize>) -> Result<Self> {
        check_patterns(&p, &s)?;
        let k = p.len();
        let differing: Vec<usize> = (1..=k).filter(|&c| p[c - 1] != s[c - 1]).collect();
        let i = match differing[..] {
            [i] if s[i - 1] == p[i - 1] + 1 => i,
            _ => {
                return Err(Error::MalformedInstance(
                    "patterns must differ by one unit in one cell",
                ))
            }
        };
        if p.multiplicity(p[i - 1]) < 2 {
            return Err(Error::MalformedInstance(
                "the changed value must be repeated",
            ));
        }
        if t.len() != k || t.hole_positions() != [i] {
            return Err(Error::MalformedInstance(
                "trace must have its only hole at the changed cell",
            ));
        }
        if !is_trace(&t, &p) || !is_trace(&t, &s) {
            return Err(Error::NotATrace(p));
        }
        check_positions(&positions, k - 1)?;
        let x = role_value(&t, &p, p[i - 1])?;
        let y = role_value(&t, &p, s[i - 1])?;
        Ok(Lemma1Instance {
            p,
            s,
            t,
            positions,
            i,
            x,
            y,
        })
    }

    /// The changed cell.
    pub fn cell(&self) -> usize {
        self.i
    }

    /// Position window for a host of length `n`.
    pub fn span(&self, n: usize) -> Interval {
        let (i, k, a) = (self.i, self.p.len(), &self.positions);
        if i == 1 {
            Interval::new(1, a[0] - 1)
        } else if i == k {
            Interval::new(a[k - 2] + 1, n)
        } else {
            Interval::new(a[i - 2] + 1, a[i - 1] - 1)
        }
    }

    /// Value window `[x, y]`.
    pub fn values(&self) -> Interval {
        Interval::new(self.x as usize, self.y as usize)
    }

    /// Window positions and the symbols they are ranked in. `x` and `y`
    /// always count as symbols, so that the copies of `x` and `y` inside the
    /// window are exchanged even when one of them is absent from it.
    fn window_symbols(&self, w: &Word) -> Result<(Vec<usize>, Vec<u32>)> {
        let positions = window(w, &[self.span(w.len())], self.values())?;
        let mut symbols = symbols_at(w, &positions);
        for value in [self.x, self.y] {
            if let Err(slot) = symbols.binary_search(&value) {
                symbols.insert(slot, value);
            }
        }
        Ok((positions, symbols))
    }
}

impl TraceBijection for Lemma1Instance {
    fn source(&self) -> &Word {
        &self.p
    }

    fn target(&self) -> &Word {
        &self.s
    }

    fn trace(&self) -> &Trace {
        &self.t
    }

    fn positions(&self) -> &[usize] {
        &self.positions
    }

    fn apply_with(&self, w: &Word, psi: &dyn DescentAscentBijection) -> Result<Word> {
        check_host(&self.positions, w)?;
        if !carries(&self.t, &self.positions, w) {
            return Ok(w.clone());
        }
        let (positions, symbols) = self.window_symbols(w)?;
        rewrite(w, &positions, &symbols, |u, m| {
            Ok(mirror(&psi.psi(u, m)?, m))
        })
    }

    fn invert_with(&self, v: &Word, psi: &dyn DescentAscentBijection) -> Result<Word> {
        check_host(&self.positions, v)?;
        if !carries(&self.t, &self.positions, v) {
            return Ok(v.clone());
        }
        let (positions, symbols) = self.window_symbols(v)?;
        rewrite(v, &positions, &symbols, |u, m| {
            psi.psi_inverse(&mirror(u, m), m)
        })
    }
}

pub fn lemma1_map(inst: &Lemma1Instance, w: &Word) -> Result<Word> {
    inst.apply(w)
}

pub fn lemma1_inverse(inst: &Lemma1Instance, v: &Word) -> Result<Word> {
    inst.invert(v)
}

/// Two patterns that exchange the singleton values `p_i` and `p_j = p_i + 1`,
/// with a trace holed at `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Instance {
    p: Word,
    s: Word,
    t: Trace,
    positions: Vec<usize>,
    i: usize,
    j: usize,
    /// Lower value bound, from the pattern value just below `p_i`.
    low: Option<u32>,
    /// Upper value bound, from the pattern value just above `p_j`.
    high: Option<u32>,
}

impl Lemma2Instance {
    pub fn new(p: Word, s: Word, t: Trace, positions: Vec<usize>) -> Result<Self> {
        check_patterns(&p, &s)?;
        let k = p.len();
        let differing: Vec<usize> = (1..=k).filter(|&c| p[c - 1] != s[c - 1]).collect();
        let (i, j) = match differing[..] {
            [i, j] if p[i - 1] == s[j - 1] && p[j - 1] == s[i - 1] && p[j - 1] == p[i - 1] + 1 => {
                (i, j)
            }
            _ => {
                return Err(Error::MalformedInstance(
                    "patterns must swap two consecutive values",
                ))
            }
        };
        if p.multiplicity(p[i - 1]) != 1 || p.multiplicity(p[j - 1]) != 1 {
            return Err(Error::MalformedInstance(
                "the swapped values must be singletons",
            ));
        }
        if j == i + 1 {
            return Err(Error::MalformedInstance("the swapped cells are adjacent"));
        }
        if t.len() != k || t.hole_positions() != [i, j] {
            return Err(Error::MalformedInstance(
                "trace must have its holes at the swapped cells",
            ));
        }
        if !is_trace(&t, &p) || !is_trace(&t, &s) {
            return Err(Error::NotATrace(p));
        }
        check_positions(&positions, k - 2)?;
        let low = match p[i - 1] {
            1 => None,
            v => Some(role_value(&t, &p, v - 1)? + 1),
        };
        let high = if p[j - 1] == p.arity() {
            None
        } else {
            Some(role_value(&t, &p, p[j - 1] + 1)? - 1)
        };
        Ok(Lemma2Instance {
            p,
            s,
            t,
            positions,
            i,
            j,
            low,
            high,
        })
    }

    /// The two swapped cells.
    pub fn cells(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Window between the left hole's neighbours.
    pub fn left_span(&self) -> Interval {
        let a = &self.positions;
        let low = if self.i == 1 { 1 } else { a[self.i - 2] + 1 };
        Interval::new(low, a[self.i - 1] - 1)
    }

    /// Window between the right hole's neighbours, for a host of length `n`.
    pub fn right_span(&self, n: usize) -> Interval {
        let a = &self.positions;
        let low = a[self.j - 3] + 1;
        let high = if self.j == self.p.len() {
            n
        } else {
            a[self.j - 2] - 1
        };
        Interval::new(low, high)
    }

    /// Value window; an extremal end is bounded by the host's largest value.
    pub fn values(&self, host_max: u32) -> Interval {
        Interval::new(
            self.low.unwrap_or(1) as usize,
            self.high.unwrap_or(host_max) as usize,
        )
    }

    fn windows(&self, w: &Word) -> Result<[Vec<usize>; 2]> {
        let values = self.values(w.arity());
        Ok([
            window(w, &[self.left_span()], values)?,
            window(w, &[self.right_span(w.len())], values)?,
        ])
    }
}

impl TraceBijection for Lemma2Instance {
    fn source(&self) -> &Word {
        &self.p
    }

    fn target(&self) -> &Word {
        &self.s
    }

    fn trace(&self) -> &Trace {
        &self.t
    }

    fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// ψ on each hole window, then one complement across both windows.
    fn apply_with(&self, w: &Word, psi: &dyn DescentAscentBijection) -> Result<Word> {
        check_host(&self.positions, w)?;
        if !carries(&self.t, &self.positions, w) {
            return Ok(w.clone());
        }
        let [left, right] = self.windows(w)?;
        let forward = |u: &Word, m: u32| psi.psi(u, m);
        let w1 = rewrite(w, &left, &symbols_at(w, &left), forward)?;
        let w2 = rewrite(&w1, &right, &symbols_at(&w1, &right), forward)?;
        let both = [left, right].concat();
        rewrite(&w2, &both, &symbols_at(&w2, &both), |u, m| Ok(mirror(u, m)))
    }

    fn invert_with(&self, v: &Word, psi: &dyn DescentAscentBijection) -> Result<Word> {
        check_host(&self.positions, v)?;
        if !carries(&self.t, &self.positions, v) {
            return Ok(v.clone());
        }
        let [left, right] = self.windows(v)?;
        let backward = |u: &Word, m: u32| psi.psi_inverse(u, m);
        let both = [left.clone(), right.clone()].concat();
        let w2 = rewrite(v, &both, &symbols_at(v, &both), |u, m| Ok(mirror(u, m)))?;
        let w1 = rewrite(&w2, &right, &symbols_at(&w2, &right), backward)?;
        rewrite(&w1, &left, &symbols_at(&w1, &left), backward)
    }
}

pub fn lemma2_map(inst: &Lemma2Instance, w: &Word) -> Result<Word> {
    inst.apply(w)
}

pub fn lemma2_inverse(inst: &Lemma2Instance, v: &Word) -> Result<Word> {
    inst.invert(v)
}

/// Images of `words` under `map`, in the same order.
pub fn permutation_table<M: TraceBijection + ?Sized>(
    map: &M,
    words: impl IntoIterator<Item = Word>,
) -> Result<Vec<(Word, Word)>> {
    words
        .into_iter()
        .map(|w| {
            let v = map.apply(&w)?;
            Ok((w, v))
        })
        .collect()
}
