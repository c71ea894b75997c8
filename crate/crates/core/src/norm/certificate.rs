//! Norming-tree certificates: verifiable lower-bound proofs whose root
//! value equals the computed norm.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

use crate::combinatorics::Vertex;
use crate::error::{Error, Result};

use super::family::AdmissibleFamily;
use super::params::Params;
use super::vector::Vector;

/// One node of a norming tree. A leaf contributes `|x_v|`; an internal node
/// contributes `θ` times the sum of its children, each child normed inside
/// its block of the recorded admissible family.
#[derive(Clone, Debug, PartialEq)]
pub enum NormCertificate {
    /// Certifies the zero lower bound (used for the zero vector and for
    /// blocks that capture no support).
    Zero,
    Leaf {
        vertex: Vertex,
        value: BigRational,
    },
    Node {
        family: AdmissibleFamily,
        children: Vec<NormCertificate>,
        value: BigRational,
    },
}

impl NormCertificate {
    pub fn value(&self) -> BigRational {
        match self {
            NormCertificate::Zero => BigRational::zero(),
            NormCertificate::Leaf { value, .. } => value.clone(),
            NormCertificate::Node { value, .. } => value.clone(),
        }
    }

    /// All leaf vertices below this node.
    pub fn leaf_support(&self) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        self.collect_support(&mut out);
        out
    }

    fn collect_support(&self, out: &mut BTreeSet<Vertex>) {
        match self {
            NormCertificate::Zero => {}
            NormCertificate::Leaf { vertex, .. } => {
                out.insert(vertex.clone());
            }
            NormCertificate::Node { children, .. } => {
                for c in children {
                    c.collect_support(out);
                }
            }
        }
    }
}

/// Re-check a certificate against `x` and `params` from first principles:
/// every family admissible for the variant, supports nested in their blocks,
/// and all arithmetic exact. A passing certificate proves
/// `norm(x) ≥ certificate.value()`. The first violated condition is reported.
pub fn verify_certificate(x: &Vector, params: &Params, cert: &NormCertificate) -> Result<()> {
    if x.k() != params.k() {
        return Err(Error::DimensionMismatch {
            expected: params.k(),
            got: x.k(),
        });
    }
    check_node(x, params, cert)
}

fn check_node(x: &Vector, params: &Params, cert: &NormCertificate) -> Result<()> {
    match cert {
        NormCertificate::Zero => Ok(()),
        NormCertificate::Leaf { vertex, value } => {
            vertex.check_dim(params.k())?;
            if value < &BigRational::zero() {
                return Err(Error::Certificate(format!(
                    "negative leaf value at {vertex}"
                )));
            }
            let coeff = x.coefficient(vertex).abs();
            if *value != coeff {
                return Err(Error::Certificate(format!(
                    "leaf at {vertex} claims {value}, the coefficient has magnitude {coeff}"
                )));
            }
            Ok(())
        }
        NormCertificate::Node {
            family,
            children,
            value,
        } => {
            family.validate(params)?;
            if children.len() != family.blocks.len() {
                return Err(Error::Certificate(format!(
                    "{} children for {} blocks",
                    children.len(),
                    family.blocks.len()
                )));
            }
            let mut sum = BigRational::zero();
            for (child, block) in children.iter().zip(&family.blocks) {
                for v in child.leaf_support() {
                    if !block.set().contains(&v) {
                        return Err(Error::Certificate(format!(
                            "child support {v} escapes its block"
                        )));
                    }
                }
                check_node(x, params, child)?;
                sum += child.value();
            }
            let expect = params.theta() * sum;
            if *value != expect {
                return Err(Error::Certificate(format!(
                    "node claims {value}, children give {expect}"
                )));
            }
            Ok(())
        }
    }
}
