//! Histograms of statistics over word classes.

use std::collections::BTreeMap;

use dequiv::{count_by_enumeration, is_trace, DClass, Error, Trace, Word};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Statistic value → number of words attaining it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram(pub BTreeMap<u64, u64>);

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: u64) {
        *self.0.entry(value).or_default() += 1;
    }

    pub fn get(&self, value: u64) -> u64 {
        self.0.get(&value).copied().unwrap_or(0)
    }

    /// Number of words counted.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Sum of value × count.
    pub fn weighted_sum(&self) -> u64 {
        self.0.iter().map(|(v, c)| v * c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<u64> for Histogram {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut h = Histogram::new();
        for v in iter {
            h.add(v);
        }
        h
    }
}

/// The statistic `w ↦ (t, A, p)w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStat {
    pub trace: Trace,
    pub positions: Vec<usize>,
    pub pattern: Word,
}

impl TraceStat {
    pub fn new(trace: Trace, positions: Vec<usize>, pattern: Word) -> Result<Self> {
        if !pattern.is_pattern() {
            return Err(Error::NotAPattern(pattern).into());
        }
        if !is_trace(&trace, &pattern) {
            return Err(Error::NotATrace(pattern).into());
        }
        let support = trace.support().len();
        if support != positions.len() {
            return Err(Error::PositionCountMismatch {
                expected: support,
                found: positions.len(),
            }
            .into());
        }
        Ok(TraceStat {
            trace,
            positions,
            pattern,
        })
    }

    pub fn eval(&self, w: &Word) -> Result<u64> {
        Ok(dequiv::trace_statistic(
            &self.trace,
            &self.positions,
            &self.pattern,
            w,
        )?)
    }
}

/// Histogram of `stat` over `words`.
pub fn distribution(stat: &TraceStat, words: impl IntoIterator<Item = Word>) -> Result<Histogram> {
    let mut h = Histogram::new();
    for w in words {
        h.add(stat.eval(&w)?);
    }
    Ok(h)
}

/// Histogram of `stat` over the members of `class`.
pub fn class_distribution(stat: &TraceStat, class: &DClass) -> Result<Histogram> {
    distribution(stat, class.members())
}

/// Histogram of the occurrence count of `p` over `words`.
pub fn occurrence_distribution(
    p: &Word,
    words: impl IntoIterator<Item = Word>,
) -> Result<Histogram> {
    if !p.is_pattern() {
        return Err(Error::NotAPattern(p.clone()).into());
    }
    Ok(words
        .into_iter()
        .map(|w| count_by_enumeration(p, &w))
        .collect())
}
