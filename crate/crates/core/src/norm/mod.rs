//! Exact computation of the Tsirelson-type norms `T_k(d,θ)` and `T(A_d^k,θ)`
//! with certificate output.

mod certificate;
mod engine;
mod family;
mod params;
mod vector;

pub use certificate::{verify_certificate, NormCertificate};
pub use engine::NormEngine;
pub use family::AdmissibleFamily;
pub use params::{Params, Variant};
pub use vector::Vector;
