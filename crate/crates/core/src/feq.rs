//! f-transformations: unit changes of a pattern that stay inside its d-class.
//!
//! An f-transformation either moves one entry by ±1 or swaps two entries whose
//! values differ by one. [`lex_reduce_step`] walks any pattern strictly down in
//! lexicographic order through such moves, and iterating it ends at the
//! class minimum [`beta_of`]. Two patterns are therefore f-equivalent exactly
//! when they are d-equivalent.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{beta_of, omega_of, runs};
use crate::class::DClass;
use crate::descent::{d_equivalent, DescentWord};
use crate::error::{Error, Result};
use crate::word::Word;

/// Longest pattern the breadth-first oracle accepts by default.
pub const BFS_LENGTH_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    Increment,
    Decrement,
    Swap,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Increment => "increment",
            StepKind::Decrement => "decrement",
            StepKind::Swap => "swap",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One f-transformation. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FStep {
    pub kind: StepKind,
    pub positions: Vec<usize>,
    pub before: Word,
    pub after: Word,
}

impl FStep {
    /// Classifies `before -> after` as an f-transformation, if it is one.
    pub fn between(before: &Word, after: &Word) -> Option<FStep> {
        if before == after
            || !before.is_pattern()
            || !after.is_pattern()
            || !d_equivalent(before, after)
        {
            return None;
        }
        let diff: Vec<usize> = (0..before.len())
            .filter(|&i| before[i] != after[i])
            .collect();
        let (kind, positions) = match diff[..] {
            [i] if after[i] == before[i] + 1 => (StepKind::Increment, alloc::vec![i + 1]),
            [i] if after[i] + 1 == before[i] => (StepKind::Decrement, alloc::vec![i + 1]),
            [i, j]
                if before[i] == after[j]
                    && before[j] == after[i]
                    && before[i].abs_diff(before[j]) == 1 =>
            {
                (StepKind::Swap, alloc::vec![i + 1, j + 1])
            }
            _ => return None,
        };
        Some(FStep {
            kind,
            positions,
            before: before.clone(),
            after: after.clone(),
        })
    }
}

/// Every pattern one f-transformation away from `p`.
pub fn f_neighbors(p: &Word) -> Result<BTreeSet<Word>> {
    if !p.is_pattern() {
        return Err(Error::NotAPattern(p.clone()));
    }
    let mut out = BTreeSet::new();
    let mut keep = |candidate: Word| {
        if candidate != *p && candidate.is_pattern() && d_equivalent(p, &candidate) {
            out.insert(candidate);
        }
    };
    for i in 0..p.len() {
        let mut up = p.clone();
        up.entries_mut()[i] += 1;
        keep(up);
        if p[i] > 1 {
            let mut down = p.clone();
            down.entries_mut()[i] -= 1;
            keep(down);
        }
        for j in i + 1..p.len() {
            if p[i].abs_diff(p[j]) == 1 {
                let mut swapped = p.clone();
                swapped.entries_mut().swap(i, j);
                keep(swapped);
            }
        }
    }
    Ok(out)
}

/// Which move a reduction step used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionRule {
    /// The first deviating entry occurs twice or more; lower it by one.
    DecrementRepeated,
    /// It occurs once and its predecessor value appears later; swap the two.
    SwapWithPredecessor,
    /// A larger repeated value appears later; lower one copy.
    DecrementLargerRepeated,
    /// A smaller value appears later; raise one copy step by step, then swap.
    RaiseThenSwap,
    /// A later singleton value can trade places with an earlier successor.
    SwapWithEarlierSuccessor,
}

/// Result of one lexicographic reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub result: Word,
    pub steps: Vec<FStep>,
    pub rule: ReductionRule,
    /// 1-based index in omega order of the first entry deviating from the minimum.
    pub deviation: usize,
}

struct Chain {
    current: Word,
    steps: Vec<FStep>,
}

impl Chain {
    fn new(start: &Word) -> Self {
        Chain {
            current: start.clone(),
            steps: Vec::new(),
        }
    }

    fn apply(&mut self, next: Word) -> Result<()> {
        let step = FStep::between(&self.current, &next).ok_or_else(|| {
            Error::NoReduction(
                self.steps
                    .first()
                    .map_or(&self.current, |s| &s.before)
                    .clone(),
            )
        })?;
        self.steps.push(step);
        self.current = next;
        Ok(())
    }

    fn adjust(&mut self, position: usize, delta: i32) -> Result<()> {
        let mut next = self.current.clone();
        let slot = &mut next.entries_mut()[position - 1];
        *slot = slot
            .checked_add_signed(delta)
            .filter(|&x| x > 0)
            .ok_or_else(|| Error::NoReduction(self.current.clone()))?;
        self.apply(next)
    }

    fn swap(&mut self, i: usize, j: usize) -> Result<()> {
        let mut next = self.current.clone();
        next.entries_mut().swap(i - 1, j - 1);
        self.apply(next)
    }
}

/// One strictly lexicographically decreasing move within the d-class of `p`,
/// realised as a chain of f-transformations.
///
/// Let `i` be the first index, in omega order, where `p` differs from the class
/// minimum, and `v` the entry there. The cases are tried in this order:
/// `v` repeated; `v - 1` later in omega order; a larger repeated value later;
/// a smaller value later.
pub fn lex_reduce_step(p: &Word) -> Result<Reduction> {
    let minimum = beta_of(p)?;
    if *p == minimum {
        return Err(Error::AlreadyCanonical(p.clone()));
    }
    let n = p.len();
    let omega = omega_of(p)?;
    let at = |w: &Word, i: usize| w[omega[i - 1] as usize - 1];
    let i = (1..=n)
        .find(|&i| at(p, i) != at(&minimum, i))
        .expect("p differs from its minimum");
    let v = at(p, i);
    if v < at(&minimum, i) {
        return Err(Error::NoReduction(p.clone()));
    }
    let here = omega[i - 1] as usize;
    let later: Vec<usize> = (i + 1..=n).map(|j| omega[j - 1] as usize).collect();
    let mut chain = Chain::new(p);

    let rule = if p.multiplicity(v) >= 2 {
        chain.adjust(here, -1)?;
        ReductionRule::DecrementRepeated
    } else if let Some(&k) = later.iter().filter(|&&pos| p[pos - 1] == v - 1).max() {
        chain.swap(here, k)?;
        ReductionRule::SwapWithPredecessor
    } else if let Some(larger) = later
        .iter()
        .map(|&pos| p[pos - 1])
        .filter(|&x| x > v && p.multiplicity(x) >= 2)
        .min()
    {
        // occurrences of `larger` listed in omega order
        let occurrences: Vec<usize> = (1..=n)
            .map(|j| omega[j - 1] as usize)
            .filter(|&pos| p[pos - 1] == larger)
            .collect();
        let predecessor = (1..=n)
            .find(|&pos| p[pos - 1] == larger - 1)
            .ok_or_else(|| Error::NoReduction(p.clone()))?;
        let decomposition = runs(&DescentWord::of(p));
        let target = if decomposition.same_descent_run(occurrences[0], predecessor) {
            occurrences[1]
        } else {
            occurrences[0]
        };
        chain.adjust(target, -1)?;
        ReductionRule::DecrementLargerRepeated
    } else if let Some(smaller) = later.iter().map(|&pos| p[pos - 1]).filter(|&x| x < v).max() {
        let a = *later
            .iter()
            .filter(|&&pos| p[pos - 1] == smaller)
            .max()
            .expect("smaller value occurs later");
        if p.multiplicity(smaller) == 1 {
            let k = (1..i)
                .map(|j| omega[j - 1] as usize)
                .find(|&pos| p[pos - 1] == smaller + 1)
                .ok_or_else(|| Error::NoReduction(p.clone()))?;
            chain.swap(k, a)?;
            ReductionRule::SwapWithEarlierSuccessor
        } else {
            while chain.current[a - 1] < v - 1 {
                chain.adjust(a, 1)?;
            }
            chain.swap(here, a)?;
            ReductionRule::RaiseThenSwap
        }
    } else {
        return Err(Error::NoReduction(p.clone()));
    };

    if chain.current >= *p {
        return Err(Error::NoReduction(p.clone()));
    }
    Ok(Reduction {
        result: chain.current,
        steps: chain.steps,
        rule,
        deviation: i,
    })
}

/// The f-transformation chain from `p` down to its class minimum.
pub fn f_path_steps(p: &Word) -> Result<Vec<FStep>> {
    let minimum = beta_of(p)?;
    let budget = if p.is_empty() {
        0
    } else {
        DClass::of_word(p).cardinality() as usize
    };
    let mut steps = Vec::new();
    let mut current = p.clone();
    let mut reductions = 0;
    while current != minimum {
        if reductions >= budget {
            return Err(Error::StepBudgetExceeded(budget));
        }
        let reduction = lex_reduce_step(&current)?;
        current = reduction.result;
        steps.extend(reduction.steps);
        reductions += 1;
    }
    Ok(steps)
}

/// The patterns visited on the way from `p` to its class minimum, both ends included.
pub fn f_path_to_beta(p: &Word) -> Result<Vec<Word>> {
    let steps = f_path_steps(p)?;
    let mut path = alloc::vec![p.clone()];
    path.extend(steps.into_iter().map(|s| s.after));
    Ok(path)
}

/// Decides f-equivalence through the class minimum.
pub fn f_equivalent(p: &Word, s: &Word) -> Result<bool> {
    let (bp, bs) = (beta_of(p)?, beta_of(s)?);
    Ok(p.len() == s.len() && p.arity() == s.arity() && bp == bs)
}

/// Connected component of `p` in the f-transformation graph.
pub fn f_component(p: &Word, cap: usize) -> Result<BTreeSet<Word>> {
    if p.len() > cap {
        return Err(Error::SearchTooLarge {
            length: p.len(),
            cap,
        });
    }
    let mut seen = BTreeSet::new();
    seen.insert(p.clone());
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(cur) = queue.pop_front() {
        for next in f_neighbors(&cur)? {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Breadth-first reachability, independent of the canonical-form route.
pub fn f_equivalent_bfs(p: &Word, s: &Word) -> Result<bool> {
    if !s.is_pattern() {
        return Err(Error::NotAPattern(s.clone()));
    }
    if p.len() != s.len() {
        return Ok(false);
    }
    Ok(f_component(p, BFS_LENGTH_CAP)?.contains(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let n = f_neighbors(&w("1332")).unwrap();
        assert!(n.contains(&w("2331")));
        assert!(n.contains(&w("1232")));
        assert!(f_neighbors(&w("1")).unwrap().is_empty());
        assert!(f_neighbors(&w("12")).unwrap().is_empty());
        assert!(f_neighbors(&w("1443")).is_err());
    }

    #[test]
    fn step_classification() {
        let s = FStep::between(&w("1332"), &w("2331")).unwrap();
        assert_eq!((s.kind, s.positions), (StepKind::Swap, alloc::vec![1, 4]));
        let s = FStep::between(&w("1332"), &w("1232")).unwrap();
        assert_eq!((s.kind, s.positions), (StepKind::Decrement, alloc::vec![2]));
        assert!(FStep::between(&w("12"), &w("21")).is_none());
        assert!(FStep::between(&w("1332"), &w("1332")).is_none());
    }

    #[test]
    fn reduction_examples() {
        let r = lex_reduce_step(&w("1332")).unwrap();
        assert_eq!(r.result, w("1232"));
        assert_eq!(r.rule, ReductionRule::DecrementRepeated);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].kind, StepKind::Decrement);
        assert_eq!(r.steps[0].positions, [2]);
        let r = lex_reduce_step(&w("1232")).unwrap();
        assert_eq!(r.result, w("1132"));
        assert_eq!(r.steps[0].positions, [2]);
        assert_eq!(
            lex_reduce_step(&w("1132")),
            Err(Error::AlreadyCanonical(w("1132")))
        );
    }

    #[test]
    fn path_examples() {
        assert_eq!(
            f_path_to_beta(&w("1332")).unwrap(),
            [w("1332"), w("1232"), w("1132")]
        );
        assert_eq!(f_path_to_beta(&w("1132")).unwrap(), [w("1132")]);
        assert_eq!(f_path_to_beta(&w("321415687")).unwrap(), [w("321415687")]);
        assert_eq!(f_path_to_beta(&Word::empty()).unwrap(), [Word::empty()]);
    }

    #[test]
    fn equivalence_examples() {
        assert!(f_equivalent(&w("1332"), &w("2331")).unwrap());
        assert!(f_equivalent(&w("1332"), &w("1232")).unwrap());
        assert!(!f_equivalent(&w("12"), &w("21")).unwrap());
        assert!(f_equivalent_bfs(&w("1332"), &w("1132")).unwrap());
        assert!(f_equivalent_bfs(&w("1332"), &w("1332")).unwrap());
        assert!(!f_equivalent_bfs(&w("1332"), &w("2133")).unwrap());
        assert!(matches!(
            f_equivalent_bfs(&w("1234567"), &w("1234567")),
            Err(Error::SearchTooLarge { length: 7, cap: 6 })
        ));
    }
}
