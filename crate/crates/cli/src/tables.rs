//! The two appendix tables: a pair of equidistributed trace statistics, and a
//! pair of equipopular permutation patterns.

use std::fmt::Write as _;

use dequiv::{count_by_enumeration, enumerate_permutation_class, DClass, Positions, Trace, Word};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::stats::{Histogram, TraceStat};

/// One word with its two statistic values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub word: String,
    pub left: u64,
    pub right: u64,
}

/// Words of a class on which at least one of two statistics is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub class: String,
    pub class_size: u64,
    /// Column headers for the two statistics.
    pub columns: [String; 2],
    pub rows: Vec<Row>,
    pub totals: [u64; 2],
    pub histograms: [Histogram; 2],
}

impl Table {
    fn build(
        title: &str,
        class: String,
        columns: [String; 2],
        words: impl Iterator<Item = Word>,
        stat: impl Fn(&Word) -> Result<(u64, u64)>,
    ) -> Result<Self> {
        let mut rows = Vec::new();
        let mut histograms = [Histogram::new(), Histogram::new()];
        let mut class_size = 0;
        for w in words {
            let (left, right) = stat(&w)?;
            class_size += 1;
            histograms[0].add(left);
            histograms[1].add(right);
            if left != 0 || right != 0 {
                rows.push(Row {
                    word: w.to_string(),
                    left,
                    right,
                });
            }
        }
        let totals = [histograms[0].weighted_sum(), histograms[1].weighted_sum()];
        Ok(Table {
            title: title.to_string(),
            class,
            class_size,
            columns,
            rows,
            totals,
            histograms,
        })
    }

    /// Aligned text in the layout of the printed tables.
    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.word.len())
            .max()
            .unwrap_or(0)
            .max("popularity".len());
        let [a, b] = &self.columns;
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        writeln!(out, "{} ({} words)", self.class, self.class_size).unwrap();
        writeln!(
            out,
            "{:<width$}  {:>w1$}  {:>w2$}",
            "w",
            a,
            b,
            w1 = a.len(),
            w2 = b.len()
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:<width$}  {:>w1$}  {:>w2$}",
                r.word,
                r.left,
                r.right,
                w1 = a.len(),
                w2 = b.len()
            )
            .unwrap();
        }
        writeln!(
            out,
            "{:<width$}  {:>w1$}  {:>w2$}",
            "...",
            0,
            0,
            w1 = a.len(),
            w2 = b.len()
        )
        .unwrap();
        writeln!(
            out,
            "{:<width$}  {:>w1$}  {:>w2$}",
            "popularity",
            self.totals[0],
            self.totals[1],
            w1 = a.len(),
            w2 = b.len()
        )
        .unwrap();
        for (name, h) in self.columns.iter().zip(&self.histograms) {
            let parts: Vec<String> = h.0.iter().map(|(v, c)| format!("{v}:{c}")).collect();
            writeln!(out, "distribution of {name}: {}", parts.join(" ")).unwrap();
        }
        out
    }

    /// `word,left,right` rows with a header naming the two statistics.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(["w", &self.columns[0], &self.columns[1]])?;
        for r in &self.rows {
            writer.write_record([r.word.clone(), r.left.to_string(), r.right.to_string()])?;
        }
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// The trace statistics of `1332` and `2331` with trace `_44_` at `{3,6}`
/// over the length-8 words on `{1..5}` with descent set `{2,3,5,6,7}`.
pub fn reproduce_table1() -> Result<Table> {
    let class = DClass::new(8, (1..=5).collect(), vec![2, 3, 5, 6, 7])?;
    let trace: Trace = "_44_".parse()?;
    let positions = vec![3, 6];
    let p: Word = "1332".parse()?;
    let s: Word = "2331".parse()?;
    let left = TraceStat::new(trace.clone(), positions.clone(), p.clone())?;
    let right = TraceStat::new(trace.clone(), positions.clone(), s.clone())?;
    let name = |x: &Word| format!("({trace},{{{}}},{x})w", Positions(&positions));
    Table::build(
        "trace statistics on a d-class",
        class.to_string(),
        [name(&p), name(&s)],
        class.members(),
        |w| Ok((left.eval(w)?, right.eval(w)?)),
    )
}

/// Occurrences of `213` and `312` in the permutations of length 5 with descent set `{1,4}`.
pub fn reproduce_table2() -> Result<Table> {
    let p: Word = "213".parse()?;
    let s: Word = "312".parse()?;
    Table::build(
        "pattern occurrences on a permutation class",
        "permutations n=5 descents={1,4}".to_string(),
        [format!("({p})w"), format!("({s})w")],
        enumerate_permutation_class(5, &[1, 4])?,
        |w| Ok((count_by_enumeration(&p, w), count_by_enumeration(&s, w))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let t1 = reproduce_table1().unwrap();
        assert_eq!(t1.rows.len(), 15);
        assert_eq!(
            t1.rows[0],
            Row {
                word: "15415432".into(),
                left: 2,
                right: 0
            }
        );
        let t2 = reproduce_table2().unwrap();
        assert_eq!(t2.rows.len(), 11);
        assert_eq!(t2.totals, [20, 20]);
    }

    #[test]
    fn csv_layout() {
        let csv = reproduce_table2().unwrap().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("w,(213)w,(312)w"));
        assert_eq!(lines.next(), Some("21354,3,0"));
        assert_eq!(csv.lines().count(), 12);
    }
}
