use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dequiv::{
    alpha, alpha_of, ascent_set, beta, beta_of, count_by_dp, d_equivalent, descent_set,
    descent_word, enumerate_descent_class, enumerate_permutation_class, f_equivalent, f_path_steps,
    omega, omega_of, parse_positions, popularity, DClass, DescentAscentBijection, DescentWord,
    Lemma1Instance, Lemma2Instance, Positions, Trace, TraceBijection, Word,
};
use dequiv_cli::{
    find_separating_class, reproduce_table1, reproduce_table2, sweep_d_classes,
    sweep_descent_classes, sweep_permutation_classes, verify_descent_equipopularity,
    verify_equipopularity, verify_lemma, verify_permutation_equipopularity, Bounds, CliError,
    PsiCache, Report, Result, Table, TraceStat,
};
use serde_json::json;

/// Descent-equivalence of word patterns: canonical forms, rewriting,
/// statistics and bounded verification.
#[derive(Parser)]
#[command(name = "dequiv", version)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print CSV where a command produces rows.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Refuse classes with more words than this.
    #[arg(long, global = true)]
    max_class_size: Option<u64>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Alpha,
    Omega,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    /// d-classes
    D,
    /// descent classes of q-ary words
    Descent,
    /// descent classes of permutations
    Permutation,
}

/// A class of words: `--n` with `--alphabet` (a d-class), `--q` (all q-ary
/// words) or `--permutations`, and `--descents`.
#[derive(Args, Clone)]
struct ClassArgs {
    #[arg(long)]
    n: usize,
    /// Symbols, as `1,2,5` or a range `1..5`.
    #[arg(long, conflicts_with_all = ["q", "permutations"])]
    alphabet: Option<String>,
    #[arg(long, conflicts_with = "permutations")]
    q: Option<u32>,
    #[arg(long)]
    permutations: bool,
    /// Descent positions, as `2,3,5`; empty for none.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    descents: String,
}

enum ClassSpec {
    D(DClass),
    Descent {
        n: usize,
        q: u32,
        descents: Vec<usize>,
    },
    Permutations {
        n: usize,
        descents: Vec<usize>,
    },
}

impl ClassSpec {
    fn words(&self) -> Result<Box<dyn Iterator<Item = Word>>> {
        Ok(match self {
            ClassSpec::D(c) => Box::new(c.members()),
            ClassSpec::Descent { n, q, descents } => {
                Box::new(enumerate_descent_class(*n, *q, descents)?)
            }
            ClassSpec::Permutations { n, descents } => {
                Box::new(enumerate_permutation_class(*n, descents)?)
            }
        })
    }

    fn d_class(self) -> Result<DClass> {
        match self {
            ClassSpec::D(c) => Ok(c),
            _ => Err(CliError::Argument("this command needs --alphabet".into())),
        }
    }
}

impl ClassArgs {
    fn spec(&self) -> Result<ClassSpec> {
        let descents = parse_positions(&self.descents)?;
        let n = self.n;
        if let Some(a) = &self.alphabet {
            Ok(ClassSpec::D(DClass::new(n, parse_alphabet(a)?, descents)?))
        } else if let Some(q) = self.q {
            Ok(ClassSpec::Descent { n, q, descents })
        } else if self.permutations {
            Ok(ClassSpec::Permutations { n, descents })
        } else {
            Err(CliError::Argument(
                "give one of --alphabet, --q or --permutations".into(),
            ))
        }
    }
}

/// A trace-statistic instance.
#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long)]
    p: Word,
    #[arg(long)]
    s: Word,
    /// Trace, holes written `_`, e.g. `_44_`.
    #[arg(long, allow_hyphen_values = true)]
    t: Trace,
    /// Positions of the trace values, e.g. `3,6`.
    #[arg(long = "A", value_name = "A")]
    a: String,
}

#[derive(Subcommand)]
enum Command {
    /// Descent set, ascent set and descent word of a word.
    Descents { word: Word },
    /// Canonical pattern of a descent word (bits) or of a pattern's descent word.
    Canon {
        form: Form,
        input: String,
        /// Arity for beta; defaults to the pattern's own arity.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Whether two patterns are f-equivalent.
    Feq { p: Word, s: Word },
    /// The f-transformation steps from a pattern to its canonical form.
    Fpath { p: Word },
    /// Occurrences of a pattern in a word.
    Count { pattern: Word, word: Word },
    /// Total occurrences of a pattern over a class.
    Popularity {
        pattern: Word,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Occurrences of a pattern whose values at A follow a trace.
    Tracestat {
        trace: Trace,
        positions: String,
        pattern: Word,
        word: Word,
    },
    /// The descent-to-ascent bijection.
    Psi {
        word: Word,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        inverse: bool,
    },
    /// Apply the one-cell bijection to a word.
    Lemma1 {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        word: Word,
        #[arg(long)]
        inverse: bool,
    },
    /// Apply the two-cell bijection to a word.
    Lemma2 {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        word: Word,
        #[arg(long)]
        inverse: bool,
    },
    /// Check the one-cell bijection on a whole d-class.
    VerifyLemma1 {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Check the two-cell bijection on a whole d-class.
    VerifyLemma2 {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Compare the popularity of two patterns on a class.
    VerifyEquipop {
        p: Word,
        s: Word,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// A class on which two patterns that are not d-equivalent differ in popularity.
    Separate { p: Word, s: Word },
    /// Trace statistics of 1332 and 2331 on a class of length-8 words.
    Table1,
    /// Occurrences of 213 and 312 on a class of permutations.
    Table2,
    /// Exhaustive equipopularity check over all classes within bounds.
    Sweep {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        q: u32,
        /// Longest pattern length.
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, value_enum, default_value = "d")]
        kind: SweepKind,
    },
}

fn parse_alphabet(s: &str) -> Result<BTreeSet<u32>> {
    let bad = || CliError::Argument(format!("bad alphabet {s:?}"));
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}

struct Output {
    json: bool,
    csv: bool,
}

impl Output {
    /// Prints `value` as JSON or `text` as is.
    fn emit(&self, text: impl std::fmt::Display, value: serde_json::Value) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value)?);
        } else {
            println!("{text}");
        }
        Ok(())
    }

    fn report(&self, report: &Report) -> Result<bool> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(report)?);
        } else {
            println!("{}", report.summary());
        }
        Ok(report.holds())
    }

    fn table(&self, table: &Table) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(table)?);
        } else if self.csv {
            print!("{}", table.to_csv()?);
        } else {
            print!("{}", table.to_text());
        }
        Ok(())
    }
}

fn lemma_output<M: TraceBijection>(
    out: &Output,
    map: &M,
    word: &Word,
    inverse: bool,
) -> Result<()> {
    let psi = PsiCache::global();
    let (from, to) = if inverse {
        (map.target_statistic(word)?, map.invert_with(word, psi)?)
    } else {
        (map.source_statistic(word)?, map.apply_with(word, psi)?)
    };
    let to_stat = if inverse {
        map.source_statistic(&to)?
    } else {
        map.target_statistic(&to)?
    };
    out.emit(
        format!("{word} -> {to}\nstatistic {from} -> {to_stat}"),
        json!({"word": word.to_string(), "image": to.to_string(), "statistic": [from, to_stat]}),
    )
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Argument(e.to_string()))?;
    }
    let out = Output {
        json: cli.json,
        csv: cli.csv,
    };
    let limit = cli.max_class_size;
    match cli.command {
        Command::Descents { word } => {
            let (d, a, b) = (descent_set(&word), ascent_set(&word), descent_word(&word));
            out.emit(
                format!(
                    "descents {{{}}}\nascents {{{}}}\ndescent word {b}",
                    Positions(&d),
                    Positions(&a)
                ),
                json!({"descents": d, "ascents": a, "descent_word": b.to_string()}),
            )?;
        }
        Command::Canon { form, input, q } => {
            let result = match input.parse::<DescentWord>() {
                Ok(b) => match form {
                    Form::Alpha => alpha(&b),
                    Form::Omega => omega(&b),
                    Form::Beta => {
                        let q = q.ok_or_else(|| {
                            CliError::Argument("beta of a descent word needs --q".into())
                        })?;
                        beta(q, &b)?
                    }
                },
                Err(_) => {
                    let p: Word = input.parse()?;
                    match (form, q) {
                        (Form::Alpha, _) => alpha_of(&p)?,
                        (Form::Omega, _) => omega_of(&p)?,
                        (Form::Beta, None) => beta_of(&p)?,
                        (Form::Beta, Some(q)) => beta(q, &descent_word(&p))?,
                    }
                }
            };
            out.emit(&result, json!(result.to_string()))?;
        }
        Command::Feq { p, s } => {
            let f = f_equivalent(&p, &s)?;
            let d = d_equivalent(&p, &s);
            out.emit(
                format!("f-equivalent: {f}\nd-equivalent: {d}"),
                json!({"f_equivalent": f, "d_equivalent": d}),
            )?;
        }
        Command::Fpath { p } => {
            let steps = f_path_steps(&p)?;
            let records: Vec<_> = steps
                .iter()
                .map(|s| {
                    json!({
                        "kind": s.kind.as_str(),
                        "positions": s.positions,
                        "before": s.before.to_string(),
                        "after": s.after.to_string(),
                    })
                })
                .collect();
            let text: Vec<String> = steps
                .iter()
                .map(|s| {
                    format!(
                        "{} -> {}  {} at {{{}}}",
                        s.before,
                        s.after,
                        s.kind,
                        Positions(&s.positions)
                    )
                })
                .collect();
            let text = if text.is_empty() {
                format!("{p} is already canonical")
            } else {
                text.join("\n")
            };
            out.emit(text, json!(records))?;
        }
        Command::Count { pattern, word } => {
            let c = count_by_dp(&pattern, &word);
            out.emit(c, json!(c))?;
        }
        Command::Popularity { pattern, class } => {
            let total = match class.spec()? {
                ClassSpec::D(c) => popularity(&pattern, &c)?,
                other => other.words()?.map(|w| count_by_dp(&pattern, &w)).sum(),
            };
            out.emit(total, json!(total))?;
        }
        Command::Tracestat {
            trace,
            positions,
            pattern,
            word,
        } => {
            let stat = TraceStat::new(trace, parse_positions(&positions)?, pattern)?;
            let v = stat.eval(&word)?;
            out.emit(v, json!(v))?;
        }
        Command::Psi { word, q, inverse } => {
            let q = q.unwrap_or_else(|| word.arity());
            let psi = PsiCache::global();
            let image = if inverse {
                psi.psi_inverse(&word, q)?
            } else {
                psi.psi(&word, q)?
            };
            out.emit(&image, json!(image.to_string()))?;
        }
        Command::Lemma1 {
            instance,
            word,
            inverse,
        } => {
            let map = Lemma1Instance::new(
                instance.p,
                instance.s,
                instance.t,
                parse_positions(&instance.a)?,
            )?;
            lemma_output(&out, &map, &word, inverse)?;
        }
        Command::Lemma2 {
            instance,
            word,
            inverse,
        } => {
            let map = Lemma2Instance::new(
                instance.p,
                instance.s,
                instance.t,
                parse_positions(&instance.a)?,
            )?;
            lemma_output(&out, &map, &word, inverse)?;
        }
        Command::VerifyLemma1 { instance, class } => {
            let map = Lemma1Instance::new(
                instance.p,
                instance.s,
                instance.t,
                parse_positions(&instance.a)?,
            )?;
            let class = class.spec()?.d_class()?;
            return out.report(&verify_lemma(
                "one-cell bijection",
                &map,
                &class,
                PsiCache::global(),
                limit,
            )?);
        }
        Command::VerifyLemma2 { instance, class } => {
            let map = Lemma2Instance::new(
                instance.p,
                instance.s,
                instance.t,
                parse_positions(&instance.a)?,
            )?;
            let class = class.spec()?.d_class()?;
            return out.report(&verify_lemma(
                "two-cell bijection",
                &map,
                &class,
                PsiCache::global(),
                limit,
            )?);
        }
        Command::VerifyEquipop { p, s, class } => {
            let report = match class.spec()? {
                ClassSpec::D(c) => {
                    if let Some(limit) = limit {
                        let size = c.cardinality();
                        if size > limit {
                            return Err(CliError::ClassTooLarge { size, limit });
                        }
                    }
                    verify_equipopularity(&p, &s, &c)?
                }
                ClassSpec::Descent { n, q, descents } => {
                    verify_descent_equipopularity(&p, &s, n, q, &descents)?
                }
                ClassSpec::Permutations { n, descents } => {
                    verify_permutation_equipopularity(&p, &s, n, &descents)?
                }
            };
            return out.report(&report);
        }
        Command::Separate { p, s } => {
            let sep = find_separating_class(&p, &s)?;
            out.emit(
                format!("{}: popularity {} vs {}", sep.class, sep.left, sep.right),
                json!({"class": sep.class.to_string(), "popularity": [sep.left, sep.right]}),
            )?;
        }
        Command::Table1 => out.table(&reproduce_table1()?)?,
        Command::Table2 => out.table(&reproduce_table2()?)?,
        Command::Sweep { n, q, k, kind } => {
            let bounds = Bounds {
                max_n: n,
                max_q: q,
                max_k: k,
                max_class_size: limit,
            };
            let report = match kind {
                SweepKind::D => sweep_d_classes(&bounds),
                SweepKind::Descent => sweep_descent_classes(&bounds),
                SweepKind::Permutation => sweep_permutation_classes(&bounds),
            };
            return out.report(&report);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
