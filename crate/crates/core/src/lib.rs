//! d-equivalence of word patterns.
//!
//! Two words are d-equivalent when they have the same length, the same descent
//! set and the same underlying alphabet. This crate provides the combinatorial
//! machinery around that relation: canonical (lexicographically minimal)
//! patterns, the f-transformation rewriting system, pattern occurrences and
//! trace statistics, a descent-to-ascent bijection on words, and the two
//! class-wide bijections that transport trace statistics between patterns.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod canon;
pub mod class;
pub mod descent;
pub mod error;
pub mod feq;
pub mod lemma;
pub mod occurrence;
pub mod psi;
pub mod trace;
pub mod word;

pub use canon::{
    alpha, alpha_of, beta, beta_of, minimal_arity, omega, omega_of, precedes, runs, Run,
    RunDecomposition, RunKind,
};
pub use class::{
    all_words, classes_within, enumerate_descent_class, enumerate_permutation_class,
    patterns_of_length, ConstrainedWords, DClass,
};
pub use descent::{
    ascent_set, d_equivalent, descent_equivalent, descent_set, descent_word, parse_positions,
    DescentWord, Positions,
};
pub use error::{Error, Result};
pub use feq::{
    f_component, f_equivalent, f_equivalent_bfs, f_neighbors, f_path_steps, f_path_to_beta,
    lex_reduce_step, FStep, Reduction, ReductionRule, StepKind, BFS_LENGTH_CAP,
};
pub use lemma::{
    lemma1_inverse, lemma1_map, lemma2_inverse, lemma2_map, permutation_table, Lemma1Instance,
    Lemma2Instance, TraceBijection,
};
pub use occurrence::{
    count_by_dp, count_by_enumeration, next_combination, occurrences_count, popularity,
    popularity_profile, profile_over,
};
pub use psi::{
    c_psi, c_psi_inverse, psi, psi_inverse, CellMatching, DescentAscentBijection, PsiTable,
    DESK_TABLE_LIMIT,
};
pub use trace::{is_trace, restrict, substitute, trace_statistic, Interval, Restriction, Trace};
pub use word::{order_isomorphic, Word};
