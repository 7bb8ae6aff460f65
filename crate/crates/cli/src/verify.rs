//! Checks of popularity and distribution claims over bounded families of classes.

use std::collections::{BTreeMap, BTreeSet};

use dequiv::{
    classes_within, count_by_enumeration, d_equivalent, descent_set, enumerate_descent_class,
    enumerate_permutation_class, f_neighbors, is_trace, next_combination, patterns_of_length,
    popularity, profile_over, trace_statistic, DClass, DescentAscentBijection, Error, Positions,
    Trace, TraceBijection, Word,
};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::report::{Report, ReportBuilder, Witness};
use crate::stats::Histogram;

/// Limits of a sweep: word length, largest letter, pattern length, class size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: usize,
    pub max_q: u32,
    pub max_k: usize,
    pub max_class_size: Option<u64>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 6,
            max_q: 4,
            max_k: 4,
            max_class_size: None,
        }
    }
}

impl Bounds {
    fn describe(&self) -> serde_json::Value {
        json!({
            "max_n": self.max_n,
            "max_q": self.max_q,
            "max_k": self.max_k,
            "max_class_size": self.max_class_size,
        })
    }
}

/// Non-empty d-classes with length at most `max_n`, alphabet inside
/// `[max_q]` and at most `max_class_size` members, in a fixed order.
pub fn classes(bounds: &Bounds) -> Vec<DClass> {
    let all: Vec<DClass> = (1..=bounds.max_n)
        .flat_map(|n| classes_within(n, bounds.max_q))
        .collect();
    all.into_par_iter()
        .filter(|c| {
            let size = c.cardinality();
            size > 0 && bounds.max_class_size.is_none_or(|limit| size <= limit)
        })
        .collect()
}

fn check_pattern(p: &Word) -> Result<()> {
    if p.is_pattern() {
        Ok(())
    } else {
        Err(Error::NotAPattern(p.clone()).into())
    }
}

fn mismatch(p: &Word, s: &Word, class: &DClass, left: u64, right: u64) -> Witness {
    Witness {
        patterns: vec![p.to_string(), s.to_string()],
        class: Some(class.to_string()),
        word: None,
        detail: format!("popularity of {p} is {left}, of {s} is {right} on {class}"),
    }
}

/// Popularity of `p` and `s` on one class.
pub fn verify_equipopularity(p: &Word, s: &Word, class: &DClass) -> Result<Report> {
    check_pattern(p)?;
    check_pattern(s)?;
    let mut report = ReportBuilder::new("equipopularity")
        .param("p", p.to_string())
        .param("s", s.to_string())
        .param("class", class.to_string());
    let left = popularity(p, class)?;
    let right = popularity(s, class)?;
    report.count(1);
    report.set("popularity", json!([left, right]));
    let witness = (left != right).then(|| mismatch(p, s, class, left, right));
    Ok(report.finish(witness))
}

/// A class on which two patterns have different popularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub class: DClass,
    pub left: u64,
    pub right: u64,
}

/// For patterns that are not d-equivalent, the class of `p` or of `s` usually
/// separates them. Otherwise the classes of length up to two more than the
/// longer pattern, over its alphabet, are searched.
pub fn find_separating_class(p: &Word, s: &Word) -> Result<Separation> {
    check_pattern(p)?;
    check_pattern(s)?;
    if d_equivalent(p, s) {
        return Err(CliError::Equivalent(p.clone(), s.clone()));
    }
    let separates = |class: DClass| -> Result<Option<Separation>> {
        let left = popularity(p, &class)?;
        let right = popularity(s, &class)?;
        Ok((left != right).then_some(Separation { class, left, right }))
    };
    for host in [p, s] {
        if let Some(sep) = separates(DClass::of_word(host))? {
            return Ok(sep);
        }
    }
    let longest = p.len().max(s.len());
    let q = p.arity().max(s.arity());
    for n in 1..=longest + 2 {
        for class in classes_within(n, q) {
            if let Some(sep) = separates(class)? {
                return Ok(sep);
            }
        }
    }
    Err(CliError::NoSeparation(p.clone(), s.clone()))
}

fn sum_counts(p: &Word, words: impl Iterator<Item = Word>) -> u64 {
    words.map(|w| count_by_enumeration(p, &w)).sum()
}

/// Popularity of `p` and `s` on the `q`-ary words of length `n` with descent set `descents`.
pub fn verify_descent_equipopularity(
    p: &Word,
    s: &Word,
    n: usize,
    q: u32,
    descents: &[usize],
) -> Result<Report> {
    check_pattern(p)?;
    check_pattern(s)?;
    let mut report = ReportBuilder::new("descent-class equipopularity")
        .param("p", p.to_string())
        .param("s", s.to_string())
        .param("n", n)
        .param("q", q)
        .param("descents", Positions(descents).to_string());
    let left = sum_counts(p, enumerate_descent_class(n, q, descents)?);
    let right = sum_counts(s, enumerate_descent_class(n, q, descents)?);
    report.count(1);
    report.set("popularity", json!([left, right]));
    let witness = (left != right).then(|| Witness {
        patterns: vec![p.to_string(), s.to_string()],
        class: Some(format!("n={n} q={q} descents={{{}}}", Positions(descents))),
        word: None,
        detail: format!("popularity of {p} is {left}, of {s} is {right}"),
    });
    Ok(report.finish(witness))
}

/// Popularity of `p` and `s` on the permutations of length `n` with descent set `descents`.
pub fn verify_permutation_equipopularity(
    p: &Word,
    s: &Word,
    n: usize,
    descents: &[usize],
) -> Result<Report> {
    check_pattern(p)?;
    check_pattern(s)?;
    let mut report = ReportBuilder::new("permutation-class equipopularity")
        .param("p", p.to_string())
        .param("s", s.to_string())
        .param("n", n)
        .param("descents", Positions(descents).to_string());
    let left = sum_counts(p, enumerate_permutation_class(n, descents)?);
    let right = sum_counts(s, enumerate_permutation_class(n, descents)?);
    report.count(1);
    report.set("popularity", json!([left, right]));
    let witness = (left != right).then(|| Witness {
        patterns: vec![p.to_string(), s.to_string()],
        class: Some(format!(
            "permutations n={n} descents={{{}}}",
            Positions(descents)
        )),
        word: None,
        detail: format!("popularity of {p} is {left}, of {s} is {right}"),
    });
    Ok(report.finish(witness))
}

/// The cell where `s` exceeds `p` by one, all other cells being equal.
pub fn one_unit_cell(p: &Word, s: &Word) -> Result<usize> {
    check_pattern(p)?;
    check_pattern(s)?;
    let shape = |why| CliError::Shape(p.clone(), s.clone(), why);
    if p.len() != s.len() {
        return Err(shape("lengths differ"));
    }
    let differing: Vec<usize> = (0..p.len()).filter(|&c| p[c] != s[c]).collect();
    match differing[..] {
        [i] if s[i] == p[i] + 1 => {
            if !d_equivalent(p, s) {
                return Err(shape("patterns are not d-equivalent"));
            }
            Ok(i + 1)
        }
        _ => Err(shape("patterns must differ by one unit in one cell")),
    }
}

/// The two swapped cells `(i, j)` with `p_j = p_i + 1`, and the intermediate
/// pattern used when one of the swapped values is repeated.
pub fn swap_cells(p: &Word, s: &Word) -> Result<(usize, usize, Option<Word>)> {
    check_pattern(p)?;
    check_pattern(s)?;
    let shape = |why| CliError::Shape(p.clone(), s.clone(), why);
    if p.len() != s.len() {
        return Err(shape("lengths differ"));
    }
    let differing: Vec<usize> = (0..p.len()).filter(|&c| p[c] != s[c]).collect();
    // i holds the smaller value in p, j the larger; either may come first
    let (i, j) = match differing[..] {
        [a, b] if p[a] == s[b] && p[b] == s[a] && p[b] == p[a] + 1 => (a, b),
        [a, b] if p[a] == s[b] && p[b] == s[a] && p[a] == p[b] + 1 => (b, a),
        _ => {
            return Err(shape(
                "patterns must swap two cells holding consecutive values",
            ))
        }
    };
    if !d_equivalent(p, s) {
        return Err(shape("patterns are not d-equivalent"));
    }
    let mut tau = p.to_vec();
    if p.multiplicity(p[i]) > 1 {
        tau[i] = p[i] + 1;
    } else if p.multiplicity(p[j]) > 1 {
        tau[j] = p[j] - 1;
    } else {
        return Ok((i + 1, j + 1, None));
    }
    Ok((i + 1, j + 1, Some(Word::new(tau).map_err(CliError::Core)?)))
}

/// First class (in order) where some listed pair has different popularity.
fn equipopular_on(pairs: &[(Word, Word)], classes: &[DClass]) -> (u64, Option<Witness>) {
    let outcomes: Vec<Option<Witness>> = classes
        .par_iter()
        .map(|class| {
            pairs.iter().find_map(|(p, s)| {
                let left = popularity(p, class).unwrap();
                let right = popularity(s, class).unwrap();
                (left != right).then(|| mismatch(p, s, class, left, right))
            })
        })
        .collect();
    let checked = (classes.len() * pairs.len()) as u64;
    (checked, outcomes.into_iter().flatten().next())
}

/// Equipopularity of two patterns differing by one unit in one cell, over
/// every class within `bounds`.
pub fn verify_unit_step(p: &Word, s: &Word, bounds: &Bounds) -> Result<Report> {
    let cell = one_unit_cell(p, s)?;
    let mut report = ReportBuilder::new("one-cell equipopularity")
        .param("p", p.to_string())
        .param("s", s.to_string())
        .param("cell", cell)
        .param("bounds", bounds.describe());
    let classes = classes(bounds);
    report.set("classes", classes.len());
    let (checked, witness) = equipopular_on(&[(p.clone(), s.clone())], &classes);
    report.count(checked);
    Ok(report.finish(witness))
}

/// Equipopularity of two patterns swapping consecutive values, over every
/// class within `bounds`. When a swapped value is repeated, the intermediate
/// pattern is checked against both ends as well.
pub fn verify_value_swap(p: &Word, s: &Word, bounds: &Bounds) -> Result<Report> {
    let (i, j, tau) = swap_cells(p, s)?;
    let mut report = ReportBuilder::new("two-cell equipopularity")
        .param("p", p.to_string())
        .param("s", s.to_string())
        .param("cells", json!([i, j]))
        .param("bounds", bounds.describe());
    let mut pairs = vec![(p.clone(), s.clone())];
    if let Some(tau) = &tau {
        report.set("intermediate", tau.to_string());
        let linked = tau.is_pattern() && d_equivalent(tau, p) && d_equivalent(tau, s);
        report.count(1);
        if !linked {
            let witness = Witness {
                patterns: vec![p.to_string(), s.to_string(), tau.to_string()],
                class: None,
                word: None,
                detail: format!("intermediate pattern {tau} is not d-equivalent to both ends"),
            };
            return Ok(report.finish(Some(witness)));
        }
        pairs.push((p.clone(), tau.clone()));
        pairs.push((tau.clone(), s.clone()));
    }
    let classes = classes(bounds);
    report.set("classes", classes.len());
    let (checked, witness) = equipopular_on(&pairs, &classes);
    report.count(checked);
    Ok(report.finish(witness))
}

/// Checks that `map` permutes `class`, stays in it, inverts correctly and
/// carries the source statistic of each word to the target statistic of its
/// image. The report carries both histograms.
pub fn verify_lemma<M>(
    claim: &str,
    map: &M,
    class: &DClass,
    psi: &(dyn DescentAscentBijection + Sync),
    max_class_size: Option<u64>,
) -> Result<Report>
where
    M: TraceBijection + Sync,
{
    let members: Vec<Word> = class.members().collect();
    if let Some(limit) = max_class_size {
        if members.len() as u64 > limit {
            return Err(CliError::ClassTooLarge {
                size: members.len() as u64,
                limit,
            });
        }
    }
    let mut report = ReportBuilder::new(claim)
        .param("p", map.source().to_string())
        .param("s", map.target().to_string())
        .param("t", map.trace().to_string())
        .param("A", Positions(map.positions()).to_string())
        .param("class", class.to_string())
        .param("class_size", members.len());

    struct Row {
        image: Word,
        source: u64,
        image_target: u64,
        target: u64,
        problem: Option<String>,
    }
    let rows: Vec<Row> = members
        .par_iter()
        .map(|w| -> Result<Row> {
            let image = map.apply_with(w, psi)?;
            let source = map.source_statistic(w)?;
            let image_target = map.target_statistic(&image)?;
            let target = map.target_statistic(w)?;
            let problem = if !class.contains(&image) {
                Some(format!("{w} maps to {image}, outside the class"))
            } else if &map.invert_with(&image, psi)? != w {
                Some(format!("{w} maps to {image}, which does not invert back"))
            } else if source != image_target {
                Some(format!(
                    "{w} has source statistic {source}, its image {image} has target statistic {image_target}"
                ))
            } else {
                None
            };
            Ok(Row {
                image,
                source,
                image_target,
                target,
                problem,
            })
        })
        .collect::<Result<_>>()?;
    report.count(rows.len() as u64);

    let source: Histogram = rows.iter().map(|r| r.source).collect();
    let target: Histogram = rows.iter().map(|r| r.target).collect();
    let transported: Histogram = rows.iter().map(|r| r.image_target).collect();
    report.set("source_histogram", serde_json::to_value(&source)?);
    report.set("target_histogram", serde_json::to_value(&target)?);

    let witness_for = |word: Option<&Word>, detail: String| Witness {
        patterns: vec![map.source().to_string(), map.target().to_string()],
        class: Some(class.to_string()),
        word: word.map(Word::to_string),
        detail,
    };
    if let Some((w, row)) = members.iter().zip(&rows).find(|(_, r)| r.problem.is_some()) {
        return Ok(report.finish(Some(witness_for(Some(w), row.problem.clone().unwrap()))));
    }
    let images: BTreeSet<&Word> = rows.iter().map(|r| &r.image).collect();
    if images.len() != members.len() {
        let detail = format!("{} words have only {} images", members.len(), images.len());
        return Ok(report.finish(Some(witness_for(None, detail))));
    }
    if source != target || transported != target {
        let detail = format!(
            "histograms differ: source {:?}, target {:?}",
            source.0, target.0
        );
        return Ok(report.finish(Some(witness_for(None, detail))));
    }
    Ok(report.finish(None))
}

/// `Σ_A Σ_t (t, A, p)w` with the hole at cell `hole`: for each position set
/// `A` of size `k − 1`, only the trace reading `w` at `A` can contribute.
pub fn trace_decomposition_total(p: &Word, w: &Word, hole: usize) -> Result<u64> {
    check_pattern(p)?;
    let k = p.len();
    if hole == 0 || hole > k {
        return Err(CliError::Argument(format!(
            "hole {hole} is not a cell of {p}"
        )));
    }
    if k - 1 > w.len() {
        return Ok(0);
    }
    let mut indices: Vec<usize> = (0..k - 1).collect();
    let mut total = 0;
    loop {
        let positions: Vec<usize> = indices.iter().map(|i| i + 1).collect();
        let values: Vec<u32> = indices.iter().map(|&i| w[i]).collect();
        let t = Trace::with_hole(&values, hole);
        if is_trace(&t, p) {
            total += trace_statistic(&t, &positions, p, w)?;
        }
        if !next_combination(&mut indices, w.len()) {
            break;
        }
    }
    Ok(total)
}

/// Patterns of each length up to `max_k`, grouped by d-class.
fn pattern_groups(max_k: usize, keep: impl Fn(&Word) -> bool) -> Vec<Vec<Vec<Word>>> {
    (0..=max_k)
        .map(|k| {
            let mut groups: BTreeMap<(Vec<usize>, u32), Vec<Word>> = BTreeMap::new();
            for p in patterns_of_length(k).into_iter().filter(|p| keep(p)) {
                groups
                    .entry((descent_set(&p), p.arity()))
                    .or_default()
                    .push(p);
            }
            groups.into_values().filter(|g| g.len() > 1).collect()
        })
        .collect()
}

/// Compares popularity inside every group. Returns the number of pattern
/// pairs covered and the first pair that differs.
fn check_groups(
    profile: &BTreeMap<Word, u64>,
    groups: &[Vec<Word>],
) -> (u64, Option<(Word, Word, u64, u64)>) {
    let pop = |p: &Word| profile.get(p).copied().unwrap_or(0);
    let mut checked = 0;
    for group in groups {
        let first = pop(&group[0]);
        if let Some(other) = group[1..].iter().find(|p| pop(p) != first) {
            return (
                checked,
                Some((group[0].clone(), other.clone(), first, pop(other))),
            );
        }
        checked += (group.len() * (group.len() - 1) / 2) as u64;
    }
    (checked, None)
}

struct ClassOutcome {
    checked: u64,
    witness: Option<Witness>,
}

fn merge(report: &mut ReportBuilder, outcomes: Vec<ClassOutcome>) -> Option<Witness> {
    let mut first = None;
    for outcome in outcomes {
        report.count(outcome.checked);
        if first.is_none() {
            first = outcome.witness;
        }
    }
    first
}

/// Every pair of d-equivalent patterns of length at most `max_k` has equal
/// popularity on every class within `bounds`. Each profile entry is also
/// recounted pattern by pattern, and every f-transformation is checked.
pub fn sweep_d_classes(bounds: &Bounds) -> Report {
    let mut report = ReportBuilder::new("d-equivalent patterns are equipopular on d-classes")
        .param("bounds", bounds.describe());
    let groups = pattern_groups(bounds.max_k, |_| true);
    let neighbours: Vec<(Word, Vec<Word>)> = (1..=bounds.max_k)
        .flat_map(patterns_of_length)
        .map(|p| {
            let next = f_neighbors(&p).unwrap().into_iter().collect();
            (p, next)
        })
        .collect();
    let classes = classes(bounds);
    report.set("classes", classes.len());
    let outcomes: Vec<ClassOutcome> = classes
        .par_iter()
        .map(|class| {
            let members: Vec<Word> = class.members().collect();
            let mut checked = 0;
            let mut profiles = Vec::new();
            for (k, group) in groups.iter().enumerate().take(bounds.max_k + 1) {
                let profile = profile_over(k, members.iter().cloned());
                let (n, failure) = check_groups(&profile, group);
                checked += n;
                if let Some((p, s, left, right)) = failure {
                    return ClassOutcome {
                        checked,
                        witness: Some(mismatch(&p, &s, class, left, right)),
                    };
                }
                // recount each pattern directly
                for p in patterns_of_length(k) {
                    checked += 1;
                    let direct = sum_counts(&p, members.iter().cloned());
                    let profiled = profile.get(&p).copied().unwrap_or(0);
                    if direct != profiled {
                        return ClassOutcome {
                            checked,
                            witness: Some(Witness {
                                patterns: vec![p.to_string()],
                                class: Some(class.to_string()),
                                word: None,
                                detail: format!(
                                    "direct count {direct} differs from profile count {profiled} for {p}"
                                ),
                            }),
                        };
                    }
                }
                profiles.push(profile);
            }
            for (p, next) in &neighbours {
                let pop = |x: &Word| profiles[x.len()].get(x).copied().unwrap_or(0);
                for s in next {
                    checked += 1;
                    if pop(p) != pop(s) {
                        return ClassOutcome {
                            checked,
                            witness: Some(mismatch(p, s, class, pop(p), pop(s))),
                        };
                    }
                }
            }
            ClassOutcome {
                checked,
                witness: None,
            }
        })
        .collect();
    let witness = merge(&mut report, outcomes);
    report.finish(witness)
}

/// Every pair of d-equivalent patterns of length at most `max_k` has equal
/// popularity on every `q`-ary descent class with `q ≤ max_q`, `n ≤ max_n`.
pub fn sweep_descent_classes(bounds: &Bounds) -> Report {
    let mut report =
        ReportBuilder::new("d-equivalent patterns are equipopular on q-ary descent classes")
            .param("bounds", bounds.describe());
    let groups = pattern_groups(bounds.max_k, |_| true);
    let tasks: Vec<(usize, u32, Vec<usize>)> = (1..=bounds.max_n)
        .flat_map(|n| {
            (1..=bounds.max_q).flat_map(move |q| {
                (0u64..1 << (n - 1)).map(move |mask| {
                    let descents = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    (n, q, descents)
                })
            })
        })
        .collect();
    report.set("classes", tasks.len());
    let outcomes: Vec<ClassOutcome> = tasks
        .par_iter()
        .map(|(n, q, descents)| {
            let words: Vec<Word> = enumerate_descent_class(*n, *q, descents).unwrap().collect();
            let mut checked = 0;
            for (k, group) in groups.iter().enumerate() {
                let (m, failure) = check_groups(&profile_over(k, words.iter().cloned()), group);
                checked += m;
                if let Some((p, s, left, right)) = failure {
                    return ClassOutcome {
                        checked,
                        witness: Some(Witness {
                            patterns: vec![p.to_string(), s.to_string()],
                            class: Some(format!(
                                "n={n} q={q} descents={{{}}}",
                                Positions(descents)
                            )),
                            word: None,
                            detail: format!("popularity of {p} is {left}, of {s} is {right}"),
                        }),
                    };
                }
            }
            ClassOutcome {
                checked,
                witness: None,
            }
        })
        .collect();
    let witness = merge(&mut report, outcomes);
    report.finish(witness)
}

/// Permutation patterns of length at most `max_k` with the same descent set
/// have equal popularity on every descent class of permutations of length at
/// most `max_n`.
pub fn sweep_permutation_classes(bounds: &Bounds) -> Report {
    let mut report = ReportBuilder::new(
        "descent-equivalent permutations are equipopular on permutation classes",
    )
    .param("bounds", bounds.describe());
    let groups = pattern_groups(bounds.max_k, Word::is_permutation);
    let tasks: Vec<(usize, Vec<usize>)> = (1..=bounds.max_n)
        .flat_map(|n| {
            (0u64..1 << (n - 1))
                .map(move |mask| (n, (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect()))
        })
        .collect();
    report.set("classes", tasks.len());
    let outcomes: Vec<ClassOutcome> = tasks
        .par_iter()
        .map(|(n, descents)| {
            let words: Vec<Word> = enumerate_permutation_class(*n, descents).unwrap().collect();
            let mut checked = 0;
            for (k, group) in groups.iter().enumerate() {
                let (m, failure) = check_groups(&profile_over(k, words.iter().cloned()), group);
                checked += m;
                if let Some((p, s, left, right)) = failure {
                    return ClassOutcome {
                        checked,
                        witness: Some(Witness {
                            patterns: vec![p.to_string(), s.to_string()],
                            class: Some(format!(
                                "permutations n={n} descents={{{}}}",
                                Positions(descents)
                            )),
                            word: None,
                            detail: format!("popularity of {p} is {left}, of {s} is {right}"),
                        }),
                    };
                }
            }
            ClassOutcome {
                checked,
                witness: None,
            }
        })
        .collect();
    let witness = merge(&mut report, outcomes);
    report.finish(witness)
}
