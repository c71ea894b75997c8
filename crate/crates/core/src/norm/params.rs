//! The space being computed in: dimension, branching bound, weight and
//! admissibility variant.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Which admissibility notion drives the norm recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `d`-admissible: up to `d` successive approximations.
    Tk,
    /// Endpoint-separated: additionally interleaved by a set in `A_d^k`.
    Ta,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Tk => write!(f, "T_k"),
            Variant::Ta => write!(f, "T_A"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    k: usize,
    d: usize,
    theta: BigRational,
    variant: Variant,
}

impl Params {
    pub fn new(k: usize, d: usize, theta: BigRational, variant: Variant) -> Result<Self> {
        if k < 1 {
            return Err(Error::BadDimension);
        }
        if d < 1 {
            return Err(Error::BadBranching);
        }
        if theta <= BigRational::zero() || theta >= BigRational::one() {
            return Err(Error::ThetaOutOfRange(theta.to_string()));
        }
        Ok(Params {
            k,
            d,
            theta,
            variant,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn with_variant(&self, variant: Variant) -> Params {
        Params {
            variant,
            ..self.clone()
        }
    }

    pub fn with_k(&self, k: usize) -> Result<Params> {
        Params::new(k, self.d, self.theta.clone(), self.variant)
    }

    /// `d·θ` as an exact rational.
    pub fn d_theta(&self) -> BigRational {
        BigRational::from_integer(self.d.into()) * &self.theta
    }

    /// The exponent `p` determined by `dθ = d^{1/p}`; defined only when
    /// `dθ > 1` (which forces `d ≥ 2`).
    pub fn lp_exponent(&self) -> Option<f64> {
        if self.d_theta() <= BigRational::one() {
            return None;
        }
        let d = self.d as f64;
        let dtheta = self.d_theta().to_f64()?;
        Some(d.ln() / dtheta.ln())
    }
}
