//! Verification, table reproduction and command-line support for [`dequiv`].
//!
//! Everything here works on explicit, bounded families of classes. A report
//! that holds says that no counterexample exists within its parameters.

pub mod cache;
pub mod error;
pub mod report;
pub mod stats;
pub mod tables;
pub mod verify;

pub use cache::PsiCache;
pub use error::{CliError, Result};
pub use report::{Report, Verdict, Witness};
pub use stats::{class_distribution, distribution, occurrence_distribution, Histogram, TraceStat};
pub use tables::{reproduce_table1, reproduce_table2, Row, Table};
pub use verify::{
    classes, find_separating_class, one_unit_cell, swap_cells, sweep_d_classes,
    sweep_descent_classes, sweep_permutation_classes, trace_decomposition_total,
    verify_descent_equipopularity, verify_equipopularity, verify_lemma,
    verify_permutation_equipopularity, verify_unit_step, verify_value_swap, Bounds, Separation,
};
