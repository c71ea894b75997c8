//! Order theory and set systems of the k-dimensional Ellentuck space:
//! the well-order `≺`, ranking, maximal trees `X_v^max`, and decision
//! procedures for the finite approximations `AR^k`.

mod approx;
mod enumerate;
mod order;
mod xmax;

pub use approx::{
    certify, enumerate_approximations, is_approximation, Approximation, FinSet, TreePrefixWitness,
};
pub use enumerate::{
    interval_vertices, nondecreasing_tuples, rank_seq, rank_vertex, seqs, unrank_seq,
    unrank_vertex, vertices,
};
pub use order::{Seq, Vertex};
pub use xmax::{xmax_contains, xmax_segment, xmax_tree_value};
