//! Exact combinatorics of high-dimensional Ellentuck spaces and the
//! Tsirelson-type norms built on them, with machine-checkable certificates.
//!
//! The crate is organized around the objects themselves:
//!
//! - [`combinatorics`]: the well-order `≺` on non-decreasing sequences,
//!   ranking/unranking, the maximal members `X_v^max`, and decision
//!   procedures for the finite approximations `AR^k`;
//! - [`norm`]: exact computation of the norms `T_k(d,θ)` and `T(A_d^k,θ)`
//!   over `c_00(ω^k)`, emitting norming-tree certificates that an
//!   independent checker re-validates;
//! - [`dual`]: the functional-side description of the norm (the sets `K_n`)
//!   used as a verification oracle;
//! - [`embed`]: structure-preserving maps between dimensions and the
//!   trace/diagonal subspace generators;
//! - [`harness`]: executable reproductions of the quantitative inequalities
//!   with machine-readable reports.

pub mod combinatorics;
pub mod dual;
pub mod embed;
pub mod error;
pub mod harness;
pub mod norm;
pub mod rational;
pub mod wire;

pub use error::{Error, Result};
