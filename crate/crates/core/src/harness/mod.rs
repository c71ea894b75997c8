//! Executable reproductions of the quantitative theorems: witness
//! generation and inequality checking with machine-readable reports.

mod checks;
mod corpus;
mod report;
mod suite;

pub use checks::{
    build_prescribed_tree, check_bellenot, check_block_lp, check_linfty, check_variant_dominance,
    growth_table, strict_dominance_exhibit, BlockWitness, TOLERANCE,
};
pub use corpus::{seeded_vectors, CorpusSpec};
pub use report::{CheckReport, GrowthRow, SuiteReport};
pub use suite::{run_suite, SuiteConfig};
