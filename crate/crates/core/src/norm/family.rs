//! Admissible block families: the index structure of one norming step.

use crate::combinatorics::{is_approximation, Approximation, FinSet, Vertex};
use crate::error::{Error, Result};

use super::params::{Params, Variant};

/// Up to `d` successive approximations; for the endpoint-separated variant,
/// additionally a separator tuple `v_1 ≤ E_1 < v_2 ≤ E_2 < …` whose set is
/// itself an approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFamily {
    pub blocks: Vec<Approximation>,
    pub separators: Option<Vec<Vertex>>,
}

impl AdmissibleFamily {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Re-check admissibility for `params` from scratch: block witnesses,
    /// successiveness, the branching bound, and the separator interleaving
    /// for the endpoint-separated variant.
    pub fn validate(&self, params: &Params) -> Result<()> {
        let m = self.blocks.len();
        if m == 0 {
            return Err(Error::Certificate(
                "a family must have at least one block".into(),
            ));
        }
        if m > params.d() {
            return Err(Error::Certificate(format!(
                "family has {m} blocks, more than d = {}",
                params.d()
            )));
        }
        for b in &self.blocks {
            if b.dim() != params.k() {
                return Err(Error::Certificate("block dimension mismatch".into()));
            }
            b.validate()?;
        }
        for w in self.blocks.windows(2) {
            if w[0].max() >= w[1].min() {
                return Err(Error::Certificate(format!(
                    "blocks not successive: max {} !≺ min {}",
                    w[0].max(),
                    w[1].min()
                )));
            }
        }
        match (params.variant(), &self.separators) {
            (Variant::Tk, None) => Ok(()),
            (Variant::Tk, Some(_)) => Err(Error::Certificate(
                "separators present in the plain variant".into(),
            )),
            (Variant::Ta, None) => Err(Error::Certificate(
                "separators missing in the endpoint variant".into(),
            )),
            (Variant::Ta, Some(seps)) => {
                if seps.len() != m {
                    return Err(Error::Certificate(
                        "one separator per block required".into(),
                    ));
                }
                for (i, (v, block)) in seps.iter().zip(&self.blocks).enumerate() {
                    v.check_dim(params.k())?;
                    if v > block.min() {
                        return Err(Error::Certificate(format!(
                            "separator {v} does not precede its block"
                        )));
                    }
                    if i > 0 && self.blocks[i - 1].max() >= v {
                        return Err(Error::Certificate(format!(
                            "separator {v} does not follow the previous block"
                        )));
                    }
                }
                let set = FinSet::from_vertices(seps.clone())?;
                if set.len() != m {
                    return Err(Error::Certificate("separators must be distinct".into()));
                }
                if is_approximation(&set).is_none() {
                    return Err(Error::Certificate(
                        "separator set is not a finite approximation".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}
